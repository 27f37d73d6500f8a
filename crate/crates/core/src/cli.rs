//! `ln-kit` command-line front end.
//!
//! Every command writes JSON lines (one object per result) or, with
//! `--format text`, one human-readable line per result. Exit status: 0 on
//! success, 1 on a verification mismatch, 2 on a usage or input error.

use crate::error::Error;
use crate::forms::class_number_imag;
use crate::lucas::{lucas_u, primitive_divisor, LucasPair};
use crate::model::{FamilySpec, LnInstance, Solution};
use crate::oracle::{brute_force, generalized_scan, SearchWindow};
use crate::solver::{solve_with, verify_solution_completeness, SolveConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};
use std::io::{self, Write};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Parser)]
#[command(name = "ln-kit", version, about = "Solve and check x^2 + 19^(2k+1) = 4y^n")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Run the full decision procedure and cross-check it with the oracle.
    Solve(SolveArgs),
    /// Brute-force search, either for an instance or for x^2 + D = lambda*y^n.
    Oracle(OracleArgs),
    /// Print a family member, or the whole classified solution set.
    Family(FamilyArgs),
    /// The Lucas number u_n(P, Q).
    Lucas(LucasArgs),
    /// Search u_n(P, Q) for a primitive prime divisor.
    Primdiv(PrimdivArgs),
    /// Class number of an imaginary quadratic discriminant.
    Classnum(ClassnumArgs),
    /// Compare the oracle with the classification inside a window.
    Verify(VerifyArgs),
}

fn parse_big(s: &str) -> Result<BigUint, String> {
    s.parse::<BigUint>().map_err(|e| format!("not a non-negative integer: {e}"))
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value_t = 30)]
    pub n_max: u32,
    #[arg(long, value_parser = parse_big, default_value = "10000000")]
    pub x_max: BigUint,
    /// Skip the brute-force comparison.
    #[arg(long)]
    pub no_oracle: bool,
    /// Emit every proof step, not just the summary.
    #[arg(long)]
    pub trace: bool,
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long, conflicts_with = "d")]
    pub k: Option<u32>,
    /// Constant D of x^2 + D = lambda*y^n (generalized scan).
    #[arg(long, value_parser = parse_big, requires = "lambda")]
    pub d: Option<BigUint>,
    #[arg(long, requires = "d")]
    pub lambda: Option<u64>,
    #[arg(long, default_value_t = 2)]
    pub n_min: u32,
    #[arg(long, default_value_t = 30)]
    pub n_max: u32,
    #[arg(long, value_parser = parse_big, default_value = "10000000")]
    pub x_max: BigUint,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long, conflicts_with_all = ["n2", "n7"])]
    pub n1: Option<u64>,
    #[arg(long, conflicts_with = "n7")]
    pub n2: Option<u32>,
    #[arg(long)]
    pub n7: Option<u32>,
    /// Used when no member is named.
    #[arg(long, default_value_t = 30)]
    pub n_max: u32,
    /// Caps the parameter of the n = 2 family when listing.
    #[arg(long)]
    pub t_max: Option<u32>,
}

#[derive(Debug, Clone, Args)]
pub struct LucasArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub p: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub q: i64,
    #[arg(long)]
    pub n: u64,
}

#[derive(Debug, Clone, Args)]
pub struct PrimdivArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub p: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub q: i64,
    #[arg(long)]
    pub n: u64,
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
}

#[derive(Debug, Clone, Args)]
pub struct ClassnumArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub disc: i64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub k: u32,
    #[arg(long, default_value_t = 2)]
    pub n_min: u32,
    #[arg(long, default_value_t = 30)]
    pub n_max: u32,
    #[arg(long, value_parser = parse_big, default_value = "10000000")]
    pub x_max: BigUint,
}

/// A result line, kept as JSON so both output formats render the same data.
struct Sink<'a, W: Write> {
    out: &'a mut W,
    format: Format,
}

impl<W: Write> Sink<'_, W> {
    fn emit(&mut self, v: Value) -> io::Result<()> {
        match self.format {
            Format::Json => writeln!(self.out, "{v}"),
            Format::Text => writeln!(self.out, "{}", text_line(&v)),
        }
    }

    fn solutions(&mut self, sols: &[Solution]) -> io::Result<()> {
        for s in sols {
            self.emit(solution_json(s))?;
        }
        Ok(())
    }
}

fn text_line(v: &Value) -> String {
    let Value::Object(map) = v else { return v.to_string() };
    let kind = map.get("type").and_then(Value::as_str).unwrap_or("result");
    let fields: Vec<String> = map
        .iter()
        .filter(|(k, _)| k.as_str() != "type")
        .map(|(k, v)| match v {
            Value::String(s) => format!("{k}={s}"),
            other => format!("{k}={other}"),
        })
        .collect();
    format!("{kind}: {}", fields.join(" "))
}

/// `{"type": kind, ...extra, ...fields of v}` with `type` first.
fn tagged(kind: &str, extra: Value, v: Value) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("type".into(), json!(kind));
    for part in [extra, v] {
        if let Value::Object(m) = part {
            map.extend(m);
        }
    }
    Value::Object(map)
}

pub fn solution_json(s: &Solution) -> Value {
    json!({"type": "solution", "x": s.x().to_string(), "y": s.y().to_string(), "n": s.n()})
}

/// Runs a parsed command. Result lines go to `out`, diagnostics to `err`.
pub fn run<W: Write, E: Write>(cli: &Cli, out: &mut W, err: &mut E) -> i32 {
    let mut sink = Sink { out, format: cli.format };
    match dispatch(&cli.command, &mut sink) {
        Ok(code) => code,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "ln-kit: write failed: {e}");
            EXIT_USAGE
        }
        Err(Failure::Domain(e)) => match e {
            Error::OracleMismatch { solver_only, oracle_only } => {
                let line = json!({
                    "type": "mismatch",
                    "solver_only": solver_only.iter().map(solution_json).collect::<Vec<_>>(),
                    "oracle_only": oracle_only.iter().map(solution_json).collect::<Vec<_>>(),
                });
                let _ = sink.emit(line);
                let _ = writeln!(err, "ln-kit: solver and oracle disagree");
                EXIT_MISMATCH
            }
            Error::CaseworkMismatch { .. } | Error::ReplayMismatch(_) => {
                let _ = writeln!(err, "ln-kit: {e}");
                EXIT_MISMATCH
            }
            other => {
                let _ = writeln!(err, "ln-kit: {other}");
                EXIT_USAGE
            }
        },
    }
}

enum Failure {
    Io(io::Error),
    Domain(Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn dispatch<W: Write>(cmd: &Command, sink: &mut Sink<'_, W>) -> Result<i32, Failure> {
    match cmd {
        Command::Solve(a) => {
            let cfg = SolveConfig {
                oracle_x_max: (!a.no_oracle).then(|| a.x_max.clone()),
                factoring_budget: a.budget,
                ..SolveConfig::new(a.k, a.n_max)
            };
            let report = solve_with(&cfg)?;
            sink.solutions(&report.solutions)?;
            if a.trace {
                for (i, s) in report.trace.steps.iter().enumerate() {
                    let v = serde_json::to_value(s).expect("trace steps serialize");
                    sink.emit(tagged("step", json!({"index": i}), v))?;
                }
            }
            sink.emit(json!({
                "type": "summary",
                "k": report.k,
                "n_max": report.n_max,
                "solutions": report.solutions.len(),
                "steps": report.trace.steps.len(),
                "procedures": report.trace.summary(),
                "matches_classification": report.matches_classification,
                "oracle": report.oracle.as_ref().map(|o| json!({
                    "x_max": o.x_max.to_string(),
                    "in_window": o.in_window,
                    "agreed": true,
                })),
            }))?;
            Ok(EXIT_OK)
        }
        Command::Oracle(a) => {
            match (&a.d, a.lambda) {
                (Some(d), Some(lambda)) => {
                    for t in generalized_scan(d, lambda, a.n_min, a.n_max, &a.x_max)? {
                        sink.emit(json!({"type": "triple", "x": t.x.to_string(), "y": t.y.to_string(), "n": t.n}))?;
                    }
                }
                _ => {
                    let Some(k) = a.k else {
                        return Err(Error::Precondition("oracle needs --k, or --d with --lambda".into()).into());
                    };
                    sink.solutions(&brute_force(&SearchWindow::new(k, a.n_min, a.n_max, a.x_max.clone())?)?)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Family(a) => {
            let inst = LnInstance::new(a.k);
            let spec = match (a.n1, a.n2, a.n7) {
                (Some(t), _, _) => Some(FamilySpec::N1(t)),
                (_, Some(t), _) => Some(FamilySpec::N2(t)),
                (_, _, Some(m)) => Some(FamilySpec::N7(m)),
                _ => None,
            };
            match spec {
                Some(spec) => sink.solutions(&[inst.instantiate_family(spec)?])?,
                None => sink.solutions(&inst.theorem_solution_set(a.n_max, a.t_max))?,
            }
            Ok(EXIT_OK)
        }
        Command::Lucas(a) => {
            let u = lucas_u(&LucasPair::new(a.p, a.q)?, a.n);
            sink.emit(json!({"type": "lucas", "p": a.p, "q": a.q, "n": a.n, "u_n": u.to_string()}))?;
            Ok(EXIT_OK)
        }
        Command::Primdiv(a) => {
            let v = primitive_divisor(&LucasPair::new(a.p, a.q)?, a.n, a.budget)?;
            let body = serde_json::to_value(&v).expect("verdict serializes");
            let extra = json!({"p": a.p, "q": a.q, "indeterminate": v.is_indeterminate()});
            sink.emit(tagged("primdiv", extra, body))?;
            Ok(EXIT_OK)
        }
        Command::Classnum(a) => {
            let c = class_number_imag(a.disc)?;
            sink.emit(json!({"type": "classnum", "disc": a.disc, "h": c.h, "forms": c.forms}))?;
            Ok(EXIT_OK)
        }
        Command::Verify(a) => {
            let w = SearchWindow::new(a.k, a.n_min, a.n_max, a.x_max.clone())?;
            let r = verify_solution_completeness(a.k, &w)?;
            sink.emit(json!({
                "type": "verify",
                "k": r.k,
                "n_min": w.n_min,
                "n_max": w.n_max,
                "x_max": w.x_max.to_string(),
                "complete": r.complete,
                "oracle": r.oracle.iter().map(solution_json).collect::<Vec<_>>(),
                "classification": r.classification.iter().map(solution_json).collect::<Vec<_>>(),
            }))?;
            Ok(if r.complete { EXIT_OK } else { EXIT_MISMATCH })
        }
    }
}
