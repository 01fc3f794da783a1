//! Argument handling and rendering for the `p2ext` binary.
//!
//! Everything is a pure function of the arguments: [`run`] writes results to
//! `out`, diagnostics to `err`, and returns the exit code (0 success, 1
//! verification failure, 2 usage error).

use std::fmt::Write as _;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use p2ext::numtheory::psi;
use p2ext::oracles::{verify_census, verify_groups, verify_lambda, verify_psi, VerifyOutcome};
use p2ext::rep_theory::{enumerate_irreducibles, rep_dimension, MetacyclicGroup};
use p2ext::{census_k2_with, CensusReport, CensusRow, Exec, GroupDescriptor, LocalFieldParams, RowFilter, Splitting};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

/// Side of the psi verification grid.
const PSI_GRID: u64 = 64;

#[derive(Debug, Parser)]
#[command(name = "p2ext", version, about = "Degree-p^2 extensions of p-adic fields without intermediate fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count extension classes of K by Galois group of the normal closure.
    Census {
        #[arg(short = 'p')]
        p: u64,
        /// Ramification index of K over Q_p.
        #[arg(long = "ek")]
        e_k: u32,
        /// Inertia degree of K over Q_p.
        #[arg(long = "fk")]
        f_k: u32,
        #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
        format: OutputFormat,
        /// Also list admissible groups with no extensions.
        #[arg(long)]
        all_rows: bool,
    },
    /// List the irreducible representations of a tame metacyclic group.
    Reps {
        #[arg(short = 'p')]
        p: u64,
        /// Order of the inertia part.
        #[arg(short = 'e')]
        e: u64,
        /// Order of the Frobenius part.
        #[arg(short = 'f')]
        f: u64,
        #[arg(long = "fk", default_value_t = 1)]
        f_k: u32,
        /// Only show classes whose F_p-dimension is this.
        #[arg(long)]
        dim: Option<u64>,
    },
    /// Number of elements of order a in Z/a x Z/b.
    Psi { a: u64, b: u64 },
    /// Run brute-force oracle suites against the formulas.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long = "max-p", default_value_t = 7)]
        max_p: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Psi,
    Lambda,
    Groups,
    Census,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonGroup {
    pub kind: String,
    pub c: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub split: Option<bool>,
    pub order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonRow {
    pub group: JsonGroup,
    pub count: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JsonReport {
    pub p: u64,
    pub e_k: u32,
    pub f_k: u32,
    pub n: u64,
    pub rows: Vec<JsonRow>,
    pub total_classes: String,
    pub total_extensions: String,
}

impl From<&CensusReport> for JsonReport {
    fn from(r: &CensusReport) -> Self {
        let k = r.params;
        JsonReport {
            p: k.p(),
            e_k: k.e_k(),
            f_k: k.f_k(),
            n: k.n(),
            rows: r
                .rows
                .iter()
                .map(|row| JsonRow {
                    group: JsonGroup {
                        kind: row.group.kind().to_string(),
                        c: row.group.c(),
                        split: row.group.split(),
                        order: row.group.order(k.p()),
                    },
                    count: row.count.to_string(),
                })
                .collect(),
            total_classes: r.total_classes.to_string(),
            total_extensions: r.total_extensions.to_string(),
        }
    }
}

impl TryFrom<JsonReport> for CensusReport {
    type Error = String;

    fn try_from(j: JsonReport) -> Result<Self, String> {
        let params = LocalFieldParams::new(j.p, j.e_k, j.f_k).map_err(|e| e.to_string())?;
        if params.n() != j.n {
            return Err(format!("n = {} but e_k * f_k = {}", j.n, params.n()));
        }
        let count = |s: &str| s.parse::<BigUint>().map_err(|e| format!("bad count {s:?}: {e}"));
        let mut rows = Vec::with_capacity(j.rows.len());
        for row in j.rows {
            let g = row.group;
            let group = match (g.kind.as_str(), g.split) {
                ("cyclic", None) => GroupDescriptor::Cyclic { c: g.c },
                ("metacyclic2", Some(split)) => GroupDescriptor::Metacyclic {
                    c: g.c,
                    splitting: if split { Splitting::Split } else { Splitting::NonSplit },
                },
                (kind, split) => return Err(format!("unknown group kind {kind:?} (split = {split:?})")),
            };
            if group.order(j.p) != g.order {
                return Err(format!("group {group:?} has order {}, not {}", group.order(j.p), g.order));
            }
            rows.push(CensusRow { group, count: count(&row.count)? });
        }
        Ok(CensusReport {
            params,
            rows,
            total_classes: count(&j.total_classes)?,
            total_extensions: count(&j.total_extensions)?,
        })
    }
}

pub fn render_json(report: &CensusReport) -> String {
    serde_json::to_string_pretty(&JsonReport::from(report)).expect("plain data serializes")
}

pub fn parse_json(text: &str) -> Result<CensusReport, String> {
    let j: JsonReport = serde_json::from_str(text).map_err(|e| e.to_string())?;
    CensusReport::try_from(j)
}

pub fn render_table(report: &CensusReport) -> String {
    let k = report.params;
    let p = k.p();
    let mut s = String::new();
    writeln!(s, "p = {p}, e_K = {}, f_K = {}, n = {}", k.e_k(), k.f_k(), k.n()).unwrap();
    writeln!(s, "{:<12} {:>6} {:<9} {:>10} {:>12}  group", "kind", "c", "split", "order", "count").unwrap();
    for row in &report.rows {
        let split = match row.group.split() {
            None => "-",
            Some(true) => "split",
            Some(false) => "nonsplit",
        };
        writeln!(
            s,
            "{:<12} {:>6} {:<9} {:>10} {:>12}  {}",
            row.group.kind(),
            row.group.c(),
            split,
            row.group.order(p),
            row.count,
            row.group.name(p)
        )
        .unwrap();
    }
    writeln!(s, "total classes: {}, total extensions: {}", report.total_classes, report.total_extensions).unwrap();
    s
}

pub fn render_reps(h: &MetacyclicGroup, dim: Option<u64>) -> String {
    let f_k = h.f_k();
    let mut s = String::new();
    writeln!(s, "{:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>6} {:>4} {:>6}", "t", "a", "b", "r", "s", "w", "dim_fp", "d", "mult")
        .unwrap();
    for c in enumerate_irreducibles(h) {
        let dim_fp = rep_dimension(&c, f_k);
        if dim.is_some_and(|d| d != dim_fp) {
            continue;
        }
        // multiplicity in units of n = [K : Q_p]
        writeln!(
            s,
            "{:>4} {:>4} {:>4} {:>4} {:>4} {:>4} {:>6} {:>4} {:>5}n",
            c.t,
            c.a,
            c.b,
            c.r,
            c.s,
            c.w,
            dim_fp,
            c.def_field_degree(f_k),
            c.s
        )
        .unwrap();
    }
    s
}

fn run_suite(suite: Suite, max_p: u64, exec: Exec) -> Vec<VerifyOutcome> {
    let one = |s: Suite| match s {
        Suite::Psi => verify_psi(PSI_GRID, exec),
        Suite::Lambda => verify_lambda(max_p, exec),
        Suite::Groups => verify_groups(max_p, exec),
        Suite::Census => verify_census(max_p, exec),
        Suite::All => unreachable!(),
    };
    match suite {
        Suite::All => [Suite::Psi, Suite::Lambda, Suite::Groups, Suite::Census].into_iter().map(one).collect(),
        s => vec![one(s)],
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<u8, String> {
    let io = |e: std::io::Error| e.to_string();
    match cli.command {
        Command::Census { p, e_k, f_k, format, all_rows } => {
            let k = LocalFieldParams::new(p, e_k, f_k).map_err(|e| e.to_string())?;
            let filter = if all_rows { RowFilter::All } else { RowFilter::NonZero };
            let report = census_k2_with(&k, filter).map_err(|e| e.to_string())?;
            match format {
                OutputFormat::Table => write!(out, "{}", render_table(&report)).map_err(io)?,
                OutputFormat::Json => writeln!(out, "{}", render_json(&report)).map_err(io)?,
            }
            Ok(EXIT_OK)
        }
        Command::Reps { p, e, f, f_k, dim } => {
            let h = MetacyclicGroup::new(p, f_k, e, f).map_err(|e| e.to_string())?;
            write!(out, "{}", render_reps(&h, dim)).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Psi { a, b } => {
            let v = psi(a, b).map_err(|e| e.to_string())?;
            writeln!(out, "{v}").map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify { suite, max_p } => {
            if max_p < 2 {
                return Err(format!("--max-p must be at least 2, got {max_p}"));
            }
            let mut code = EXIT_OK;
            for outcome in run_suite(suite, max_p, Exec::default()) {
                writeln!(out, "{outcome}").map_err(io)?;
                for f in &outcome.failures {
                    writeln!(out, "  {}: expected {}, got {}", f.input, f.expected, f.got).map_err(io)?;
                }
                if !outcome.passed() {
                    code = EXIT_VERIFY_FAILED;
                }
            }
            Ok(code)
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                EXIT_USAGE
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}
