use std::process::{Command, Output};

use p2ext::{census_k2, census_k2_with, enumerate_dim2_orbits, FieldCtx, LocalFieldParams, Parity, RowFilter};
use p2ext_cli::{parse_json, render_json};

fn p2ext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_p2ext")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    let ok = p2ext(&["census", "-p", "2", "--ek", "1", "--fk", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).ends_with("total classes: 4, total extensions: 16\n"));

    let bad = p2ext(&["census", "-p", "4", "--ek", "1", "--fk", "1"]);
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());
    assert!(String::from_utf8_lossy(&bad.stderr).contains("4 is not prime"));

    assert_eq!(p2ext(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(p2ext(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_suites() {
    let psi = p2ext(&["verify", "--suite", "psi"]);
    assert_eq!(psi.status.code(), Some(0));
    assert_eq!(stdout(&psi), "psi: 4096 cases, 0 failures\n");

    let census = p2ext(&["verify", "--suite", "census", "--max-p", "3"]);
    assert_eq!(census.status.code(), Some(0));
    assert_eq!(stdout(&census), "census: 8 cases, 0 failures\n");

    let all = p2ext(&["verify", "--max-p", "5"]);
    assert_eq!(all.status.code(), Some(0));
    let text = stdout(&all);
    let suites: Vec<&str> = text.lines().map(|l| l.split(':').next().unwrap()).collect();
    assert_eq!(suites, ["psi", "lambda", "groups", "census"]);
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["census", "-p", "5", "--ek", "2", "--fk", "3", "--format", "json"][..],
        &["census", "-p", "13", "--ek", "4", "--fk", "2", "--all-rows"],
        &["reps", "-p", "3", "-e", "8", "-f", "8"],
        &["verify", "--suite", "groups", "--max-p", "5"],
    ] {
        let first = p2ext(args);
        let second = p2ext(args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.status.code(), Some(0));
    }
}

#[test]
fn table_and_json_agree() {
    for (p, e_k, f_k) in [(2u64, 1u32, 1u32), (3, 1, 1), (3, 2, 2), (7, 3, 1), (11, 1, 4)] {
        let (ps, es, fs) = (p.to_string(), e_k.to_string(), f_k.to_string());
        let base = ["census", "-p", &ps, "--ek", &es, "--fk", &fs];
        let table = stdout(&p2ext(&base));
        let json: serde_json::Value =
            serde_json::from_str(&stdout(&p2ext(&[&base[..], &["--format", "json"]].concat()))).unwrap();

        let rows: Vec<Vec<&str>> =
            table.lines().skip(2).filter(|l| !l.starts_with("total")).map(|l| l.split_whitespace().collect()).collect();
        let json_rows = json["rows"].as_array().unwrap();
        assert_eq!(rows.len(), json_rows.len());
        for (cols, j) in rows.iter().zip(json_rows) {
            assert_eq!(cols[0], j["group"]["kind"]);
            assert_eq!(cols[1], j["group"]["c"].to_string());
            let split = match j["group"].get("split") {
                None => "-",
                Some(v) if v == true => "split",
                Some(_) => "nonsplit",
            };
            assert_eq!(cols[2], split);
            assert_eq!(cols[3], j["group"]["order"].to_string());
            assert_eq!(cols[4], j["count"]);
        }
        let totals = format!(
            "total classes: {}, total extensions: {}",
            json["total_classes"].as_str().unwrap(),
            json["total_extensions"].as_str().unwrap()
        );
        assert_eq!(table.lines().last().unwrap(), totals);
    }
}

#[test]
fn json_round_trips() {
    for p in [2u64, 3, 5, 7, 11, 13] {
        for e_k in 1..=3 {
            for f_k in 1..=3 {
                let k = LocalFieldParams::new(p, e_k, f_k).unwrap();
                for filter in [RowFilter::NonZero, RowFilter::All] {
                    let report = census_k2_with(&k, filter).unwrap();
                    assert_eq!(parse_json(&render_json(&report)).unwrap(), report);
                }
            }
        }
    }
    let big = census_k2(&LocalFieldParams::new(13, 40, 3).unwrap()).unwrap();
    assert!(big.total_extensions.bits() > 64);
    assert_eq!(parse_json(&render_json(&big)).unwrap(), big);
    assert!(parse_json(r#"{"p":4,"e_k":1,"f_k":1,"n":1,"rows":[],"total_classes":"0","total_extensions":"0"}"#).is_err());
}

#[test]
fn reps_dim_two_rows_group_into_census_orbits() {
    let out = stdout(&p2ext(&["reps", "-p", "3", "-e", "8", "-f", "8", "--dim", "2"]));
    let rows: Vec<Vec<u64>> = out
        .lines()
        .skip(1)
        .map(|l| l.split_whitespace().take(8).map(|x| x.parse().unwrap()).collect())
        .collect();
    assert!(rows.iter().all(|r| r[6] == 2));
    // each rational class of dimension 2 shows up as d rows
    let classes: f64 = rows.iter().map(|r| 1.0 / r[7] as f64).sum();
    let ctx = FieldCtx::new(3, 2).unwrap();
    let orbits = enumerate_dim2_orbits(&ctx, Parity::Odd).unwrap().len();
    assert_eq!(classes.round() as usize, orbits);
    assert_eq!(orbits, 12);
}
