//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use p2ext::census::{total_classes_closed_form, total_extensions_closed_form};
use p2ext::matrix_groups::{make_t, make_u};
use p2ext::numtheory::{is_prime, pow_mod};
use p2ext::oracles::{verify_census, verify_groups, verify_lambda, verify_psi, VerifyOutcome};
use p2ext::rep_theory::{enumerate_irreducibles, rep_dimension, MetacyclicGroup};
use p2ext::{census_k2, census_table, CensusShape, Exec, FieldCtx, LocalFieldParams, Parity, RowFilter};

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn check(ok: bool, detail: impl Into<String>) -> Self {
        Outcome { ok, detail: detail.into() }
    }
}

impl From<VerifyOutcome> for Outcome {
    fn from(v: VerifyOutcome) -> Self {
        let mut detail = v.to_string();
        if let Some(first) = v.failures.first() {
            detail += &format!("; first: {} expected {} got {}", first.input, first.expected, first.got);
        }
        Outcome { ok: v.passed(), detail }
    }
}

fn q_checkpoint(p: u64, expected: u32) -> Outcome {
    match LocalFieldParams::new(p, 1, 1).and_then(|k| census_k2(&k)) {
        Ok(report) => Outcome::check(
            report.total_classes == BigUint::from(expected),
            format!("total_classes = {}", report.total_classes),
        ),
        Err(e) => Outcome::check(false, e.to_string()),
    }
}

fn closed_form_identity() -> Outcome {
    let mut cases = 0;
    for p in [2u64, 3, 5, 7, 11, 13] {
        for n in 1..=3 {
            for parity in [Parity::Odd, Parity::Even] {
                let table = match CensusShape::new(p, n, parity).and_then(|s| census_table(&s, RowFilter::NonZero)) {
                    Ok(t) => t,
                    Err(e) => return Outcome::check(false, format!("p={p} n={n} {parity}: {e}")),
                };
                let row_sum: BigUint = table.rows.iter().map(|r| &r.count).sum();
                let classes = total_classes_closed_form(p, n).unwrap();
                let extensions = total_extensions_closed_form(p, n).unwrap();
                // both sides spelled out here rather than trusting the helpers
                let pb = BigUint::from(p);
                let num = &pb * BigUint::from(p * p + p - 2) * (pb.pow(2 * n as u32) - 1u32);
                let den = BigUint::from(2 * (p + 1));
                if row_sum != classes
                    || classes != &num / &den
                    || table.total_extensions != extensions
                    || extensions != &num * &pb * &pb / &den
                {
                    return Outcome::check(false, format!("p={p} n={n} {parity}: row sum {row_sum}"));
                }
                cases += 1;
            }
        }
    }
    Outcome::check(true, format!("{cases} cases"))
}

/// Raw orbit of `(a, b)` in `Z/t x Z/u` under `(a, b) -> (a q, b)` and
/// `(a, b) -> (a p, b p)`.
fn raw_orbit_size(a: u64, b: u64, t: u64, u: u64, p: u64, q: u64) -> u64 {
    let mut seen = HashSet::from([(a, b)]);
    let mut stack = vec![(a, b)];
    while let Some((x, y)) = stack.pop() {
        for next in [(x * (q % t) % t, y), (x * (p % t) % t, y * p % u)] {
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    seen.len() as u64
}

fn p_free(mut n: u64, p: u64) -> u64 {
    while n % p == 0 {
        n /= p;
    }
    n
}

fn rep_dimension_formula() -> Outcome {
    let mut cases = 0;
    for p in [2u64, 3, 5, 7] {
        for f_k in [1u32, 2, 3] {
            let q = p.pow(f_k);
            for e in (1..=48).filter(|e| e % p != 0) {
                for f in (1..=12).filter(|&f| pow_mod(q, f, e) == 1 % e) {
                    let h = MetacyclicGroup::new(p, f_k, e, f).unwrap();
                    for c in enumerate_irreducibles(&h) {
                        // beta lives among the p'-th roots of unity
                        let u = p_free(c.u_tilde, p);
                        let raw = raw_orbit_size(c.a, c.b % u, c.t, u, p, q);
                        let claimed = rep_dimension(&c, f_k);
                        if raw != claimed {
                            return Outcome::check(
                                false,
                                format!("p={p} f_K={f_k} e={e} f={f} class {c:?}: raw {raw}, formula {claimed}"),
                            );
                        }
                        cases += 1;
                    }
                }
            }
        }
    }
    Outcome::check(cases > 0, format!("{cases} classes"))
}

fn group_relations() -> Outcome {
    let mut cases = 0;
    for p in (2u64..=7).filter(|&p| is_prime(p)) {
        let ctx = FieldCtx::new(p, 2).unwrap();
        for beta in ctx.prime_units() {
            let u = make_u(beta).unwrap();
            let u_inv = u.inverse().unwrap();
            if u * u != make_t(beta).unwrap() {
                return Outcome::check(false, format!("p={p}: U_beta^2 != T_beta for beta={beta}"));
            }
            for alpha in ctx.units() {
                if u * make_t(alpha).unwrap() * u_inv != make_t(alpha.frobenius()).unwrap() {
                    return Outcome::check(false, format!("p={p}: conjugation fails at ({alpha}, {beta})"));
                }
                cases += 1;
            }
        }
    }
    Outcome::check(cases > 0, format!("{cases} pairs"))
}

fn main() -> ExitCode {
    let exec = Exec::default();
    type Criterion = (&'static str, u64, Box<dyn Fn() -> Outcome>);
    let criteria: Vec<Criterion> = vec![
        ("checkpoint Q_2: 4 classes", 1, Box::new(|| q_checkpoint(2, 4))),
        ("checkpoint Q_3: 30 classes", 1, Box::new(|| q_checkpoint(3, 30))),
        ("closed-form totals, p <= 13, n <= 3, both parities", 5, Box::new(closed_form_identity)),
        ("psi against enumeration on [1, 64]^2", 5, Box::new(move || verify_psi(64, exec).into())),
        ("lambda against enumeration, p in {3,5,7,11,13}", 10, Box::new(move || verify_lambda(13, exec).into())),
        ("group classification against brute force, p <= 7", 60, Box::new(move || verify_groups(7, exec).into())),
        ("oracle census row by row, p <= 7, n in {1,2}, both parities", 120, Box::new(move || {
            verify_census(7, exec).into()
        })),
        ("representation dimension against raw Frobenius orbits", 60, Box::new(rep_dimension_formula)),
        ("U T U^-1 = T^(p) and U^2 = T_beta, p <= 7", 60, Box::new(group_relations)),
    ];

    let mut failed = 0;
    for (name, limit, run) in &criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(*limit);
        let ok = outcome.ok && in_time;
        if !ok {
            failed += 1;
        }
        let timing = if in_time { String::new() } else { format!(" over the {limit} s limit;") };
        println!(
            "{} {name} ({:.3} s;{timing} {})",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            outcome.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
