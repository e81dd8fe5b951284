//! The `ncx` command line: argument parsing, dispatch and report output.
//!
//! Every subcommand produces JSON lines (one record per check or query) and
//! optionally an artifact (a set as JSON, or an SVG figure). Exit codes: 0 on
//! success, 1 when a check failed, 2 for bad input, 3 when an operation was
//! refused for lack of a qualification condition.

mod reproduce;
mod svg;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use reproduce::{
    golden, half_plane_minus_segment, raw_intersection, reproduce, strip_minus_segments, strip_with_corners, Example,
    Reproduction,
};
pub use svg::{render_svg, FigureSpec};

use crate::error::{Error, Result};
use crate::ncset::{
    closure, is_bounded, is_nearly_convex, nc_image, nc_intersect, nc_preimage, nc_scale, nc_sum, rec_classify,
    rel_interior, NcSet,
};
use crate::num::{parse_q, QSqrt2, QVec};
use crate::oracle::{conj_oracle, suite, Grid, OracleReport};
use crate::poly::LinMap;
use crate::subdiff::{FnJson, SubVal};

#[derive(Debug, Parser)]
#[command(name = "ncx", version, about = "Exact calculus and subdifferential checks for nearly convex sets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input file (a set or a function, as JSON).
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Where to write the artifact (set JSON or SVG).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Grid points per axis for numerical oracles.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Replacement tolerance for the numerical checks.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Seed for sampled checks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Decide near convexity of a set.
    Check,
    /// Set calculus: image, preimage, sum, intersection, recession data.
    Calc {
        #[arg(long, value_enum)]
        op: CalcOp,
        /// First operand (defaults to --in).
        #[arg(long)]
        a: Option<PathBuf>,
        /// Second operand for sum and intersect.
        #[arg(long)]
        b: Option<PathBuf>,
        /// Affine map as JSON `{matrix, offset, source_dim}`.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Factor for `scale`.
        #[arg(long)]
        lambda: Option<String>,
    },
    /// Evaluate a function, its subdifferential or its conjugate.
    Fn {
        #[arg(long, value_enum, default_value = "all")]
        op: FnOp,
        /// Points as comma separated exact numbers, e.g. `1/2,0` or `sqrt2,1`.
        #[arg(long = "at", allow_hyphen_values = true)]
        at: Vec<String>,
    },
    /// Oracle suites.
    Verify {
        #[arg(value_enum, default_value = "all")]
        suite: Suite,
    },
    /// Recompute a worked example and compare it with its golden set.
    Reproduce {
        #[arg(value_enum)]
        example: Example,
    },
    /// Draw a planar set, or the subdifferential domain of a function, as SVG.
    Plot {
        /// Viewport `xmin,xmax,ymin,ymax`.
        #[arg(long, allow_hyphen_values = true)]
        view: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CalcOp {
    Sum,
    Intersect,
    Image,
    Preimage,
    Scale,
    Closure,
    Ri,
    Rec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FnOp {
    Eval,
    Subdiff,
    Conjugate,
    Dom,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Rockafellar,
    Halfstrip,
    Catalog,
    All,
}

/// Parsed options shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub grid: Option<usize>,
    pub tol: Option<f64>,
    pub seed: u64,
}

impl From<Cli> for RunConfig {
    fn from(c: Cli) -> Self {
        RunConfig { command: c.command, input: c.input, out: c.out, grid: c.grid, tol: c.tol, seed: c.seed.unwrap_or(7) }
    }
}

/// What a run produced. `lines` go to stdout; `artifact` goes to `--out`, or to
/// stdout after the lines when no file is given.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub lines: Vec<String>,
    pub artifact: Option<String>,
    pub checks: usize,
    pub failed: usize,
}

impl Outcome {
    fn report(&mut self, r: &OracleReport) {
        self.checks += 1;
        if !r.passed {
            self.failed += 1;
        }
        self.lines.push(r.to_json_line());
    }

    fn value(&mut self, v: Value) {
        self.lines.push(v.to_string());
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed > 0 {
            1
        } else {
            0
        }
    }
}

/// Exit code for an error raised by the library or by input handling.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::CqViolated(_) => 3,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn need<'a>(p: &'a Option<PathBuf>, what: &str) -> Result<&'a PathBuf> {
    p.as_ref().ok_or_else(|| Error::Parse(format!("missing {what}")))
}

fn read_set(path: &Path) -> Result<NcSet> {
    Ok(serde_json::from_str(&read(path)?)?)
}

/// A set, or a function whose subdifferential domain is taken.
fn read_set_or_fn(path: &Path) -> Result<NcSet> {
    let text = read(path)?;
    let v: Value = serde_json::from_str(&text)?;
    if v.get("kind").is_some() {
        serde_json::from_value::<FnJson>(v)?.build()?.dom_subdiff()
    } else {
        Ok(serde_json::from_value(v)?)
    }
}

/// Finite numbers as JSON numbers, infinities as `"+inf"` / `"-inf"`.
pub fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else if v.is_nan() {
        json!("nan")
    } else if v > 0.0 {
        json!("+inf")
    } else {
        json!("-inf")
    }
}

fn subval_json(s: &SubVal) -> Value {
    json!({ "points": s.points, "rays": s.rays })
}

fn parse_point(s: &str) -> Result<Vec<QSqrt2>> {
    s.split(',').map(|c| QSqrt2::parse(c.trim())).collect()
}

fn parse_view(s: &str) -> Result<(QVec, QVec)> {
    let v: Vec<_> = s.split(',').map(|c| parse_q(c.trim())).collect::<Result<_>>()?;
    if v.len() != 4 || v[0] >= v[1] || v[2] >= v[3] {
        return Err(Error::Parse(format!("view needs xmin<xmax,ymin<ymax, got {s:?}")));
    }
    Ok((QVec(vec![v[0].clone(), v[2].clone()]), QVec(vec![v[1].clone(), v[3].clone()])))
}

fn tolerate(r: OracleReport, tol: Option<f64>) -> OracleReport {
    match tol {
        Some(t) if r.tolerance > 0.0 => r.with_tolerance(t),
        _ => r,
    }
}

/// Run one subcommand without touching stdout.
pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let mut out = Outcome::default();
    match &cfg.command {
        Command::Check => {
            let e = read_set(need(&cfg.input, "--in")?)?;
            let cert = is_nearly_convex(&e);
            out.value(json!({
                "name": "check",
                "verdict": cert.verdict,
                "witness": cert.witness,
                "core": cert.core,
            }));
        }
        Command::Calc { op, a, b, map, lambda } => {
            let a = read_set(a.as_ref().or(cfg.input.as_ref()).ok_or_else(|| Error::Parse("missing --a".into()))?)?;
            let b = || read_set(need(b, "--b")?);
            let map = || -> Result<LinMap> { Ok(serde_json::from_str(&read(need(map, "--map")?)?)?) };
            let set = match op {
                CalcOp::Sum => nc_sum(&a, &b()?),
                CalcOp::Intersect => nc_intersect(&[a, b()?])?,
                CalcOp::Image => {
                    let m = map()?;
                    if m.source_dim != a.dim {
                        return Err(Error::DimensionMismatch { expected: a.dim, got: m.source_dim });
                    }
                    nc_image(&a, &m)
                }
                CalcOp::Preimage => {
                    let m = map()?;
                    if m.target_dim() != a.dim {
                        return Err(Error::DimensionMismatch { expected: a.dim, got: m.target_dim() });
                    }
                    nc_preimage(&a, &m)?
                }
                CalcOp::Scale => {
                    let l = parse_q(lambda.as_deref().ok_or_else(|| Error::Parse("missing --lambda".into()))?)?;
                    nc_scale(&a, &l)
                }
                CalcOp::Closure => NcSet::from_piece(closure(&a)),
                CalcOp::Ri => NcSet::from_piece(rel_interior(&a)?),
                CalcOp::Rec => {
                    let rep = rec_classify(&a)?;
                    out.value(json!({
                        "name": "rec",
                        "rec_cl": rep.rec_cl,
                        "lineality": rep.lineality,
                        "span_condition": rep.span_condition,
                        "inner_bound": rep.inner_bound,
                        "membership_answers": rep.membership_answers,
                        "bounded": is_bounded(&a)?,
                    }));
                    return Ok(out);
                }
            };
            out.artifact = Some(serde_json::to_string(&set.canonicalize())?);
        }
        Command::Fn { op, at } => {
            let f = FnJson::parse(&read(need(&cfg.input, "--in")?)?)?;
            if matches!(op, FnOp::Dom | FnOp::All) {
                out.value(json!({ "name": "dom_subdiff", "kind": f.kind(), "set": f.dom_subdiff()? }));
            }
            for s in at {
                let x = parse_point(s)?;
                if x.len() != f.dim() {
                    return Err(Error::DimensionMismatch { expected: f.dim(), got: x.len() });
                }
                let xf: Vec<f64> = x.iter().map(QSqrt2::to_f64).collect();
                let mut rec = json!({ "name": "fn", "x": x });
                if matches!(op, FnOp::Eval | FnOp::All) {
                    rec["value"] = num(f.eval(&xf));
                }
                if matches!(op, FnOp::Subdiff | FnOp::All) {
                    rec["subdiff"] = subval_json(&f.subdiff_q(&x));
                }
                if matches!(op, FnOp::Conjugate | FnOp::All) {
                    let (v, method) = match f.conjugate(&xf) {
                        Ok(v) => (v, "closed_form"),
                        Err(Error::NoClosedForm(_)) => {
                            let g = Grid::cube(f.dim(), -4.0, 4.0, cfg.grid.unwrap_or(101));
                            (conj_oracle(&f, &xf, &g), "grid")
                        }
                        Err(e) => return Err(e),
                    };
                    rec["conjugate"] = json!({ "value": num(v), "method": method });
                }
                out.value(rec);
            }
        }
        Command::Verify { suite: which } => {
            let steps = cfg.grid;
            let mut reports = Vec::new();
            if matches!(which, Suite::Rockafellar | Suite::All) {
                for alpha in [crate::num::qr(1, 2), crate::num::q(1), crate::num::q(2)] {
                    reports.extend(suite::rockafellar_case_reports(&alpha, steps.unwrap_or(81))?);
                    reports.extend(suite::rockafellar_set_reports(&alpha)?);
                    reports.push(suite::rockafellar_monotone_report(&alpha)?);
                    reports.extend(suite::rockafellar_structure_reports(&alpha)?);
                    reports.extend(suite::rockafellar_conjugate_reports(&alpha, 500, 50, cfg.seed, steps.unwrap_or(200))?);
                }
            }
            if matches!(which, Suite::Halfstrip | Suite::All) {
                for alpha in [crate::num::q(0), crate::num::q(1), crate::num::q(2)] {
                    reports.extend(suite::halfstrip_reports(&alpha, steps.unwrap_or(81))?);
                }
            }
            if matches!(which, Suite::Catalog | Suite::All) {
                reports.extend(suite::catalog_monotone_reports()?);
                reports.push(suite::projection_monotone_report(50, cfg.seed)?);
            }
            for r in reports {
                out.report(&tolerate(r, cfg.tol));
            }
        }
        Command::Reproduce { example } => {
            let rep = reproduce(*example)?;
            for r in &rep.reports {
                out.report(r);
            }
            out.value(json!({ "name": format!("{}: set", example.tag()), "set": rep.set }));
            if cfg.out.is_some() {
                out.artifact = Some(render_svg(&rep.figure, &FigureSpec::fit(&rep.figure))?);
            }
        }
        Command::Plot { view } => {
            let e = read_set_or_fn(need(&cfg.input, "--in")?)?;
            let spec = match view {
                Some(v) => {
                    let (lo, hi) = parse_view(v)?;
                    FigureSpec::new(lo, hi)
                }
                None => FigureSpec::fit(&e),
            };
            out.artifact = Some(render_svg(&e, &spec)?);
        }
    }
    Ok(out)
}

fn color() -> bool {
    std::env::var("NCX_COLOR").map_or(true, |v| v != "0")
}

/// One-line human summary for stderr.
pub fn summary(o: &Outcome) -> String {
    let (good, bad, reset) = if color() { ("\x1b[32m", "\x1b[31m", "\x1b[0m") } else { ("", "", "") };
    if o.checks == 0 {
        return String::new();
    }
    if o.failed == 0 {
        format!("{good}{} checks passed{reset}", o.checks)
    } else {
        format!("{bad}{} of {} checks failed{reset}", o.failed, o.checks)
    }
}

/// Parse arguments, run, print and return the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let cfg = RunConfig::from(cli);
    match run(&cfg) {
        Ok(o) => {
            for l in &o.lines {
                println!("{l}");
            }
            if let Some(a) = &o.artifact {
                match &cfg.out {
                    Some(p) => {
                        if let Err(e) = fs::write(p, a) {
                            eprintln!("error: IO: {e}");
                            return 2;
                        }
                    }
                    None => print!("{a}{}", if a.ends_with('\n') { "" } else { "\n" }),
                }
            }
            let s = summary(&o);
            if !s.is_empty() {
                eprintln!("{s}");
            }
            o.exit_code()
        }
        Err(e) => {
            eprintln!("error: {}: {e}", e.code());
            error_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(command: Command) -> RunConfig {
        RunConfig { command, input: None, out: None, grid: None, tol: None, seed: 7 }
    }

    #[test]
    fn parses_the_documented_surface() {
        let c = Cli::try_parse_from(["ncx", "calc", "--op", "sum", "--a", "x.json", "--b", "y.json"]).unwrap();
        assert!(matches!(c.command, Command::Calc { op: CalcOp::Sum, .. }));
        let c = Cli::try_parse_from(["ncx", "reproduce", "sec2-sum", "--out", "f.svg", "--seed", "3"]).unwrap();
        assert_eq!(c.seed, Some(3));
        assert!(matches!(c.command, Command::Reproduce { example: Example::Sec2Sum }));
        assert!(Cli::try_parse_from(["ncx", "reproduce", "nope"]).is_err());
    }

    #[test]
    fn missing_input_is_an_input_error() {
        let e = run(&cfg(Command::Check)).unwrap_err();
        assert_eq!(error_code(&e), 2);
    }

    #[test]
    fn reproduce_is_deterministic() {
        let mut c = cfg(Command::Reproduce { example: Example::Sec2Sum });
        c.out = Some(PathBuf::from("unused.svg"));
        let a = run(&c).unwrap();
        let b = run(&c).unwrap();
        assert_eq!(a.lines, b.lines);
        assert_eq!(a.artifact, b.artifact);
        assert_eq!(a.exit_code(), 0);
    }

    #[test]
    fn numbers_and_infinities() {
        assert_eq!(num(1.5), json!(1.5));
        assert_eq!(num(f64::INFINITY), json!("+inf"));
    }
}
