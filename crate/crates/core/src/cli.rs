//! `multiroot solve | table | basin`.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rug::{Complex, Float};
use serde::Serialize;

use crate::basin::{self, GridSpec};
use crate::convergence::{run as run_iteration, ConvergenceReport, Tolerances};
use crate::methods::{DongSign, MethodKind, MethodSpec};
use crate::problems::{lookup, Multiplicity, Problem, PROBLEM_NAMES};
use crate::scalar::{make_scalar, Precision, Scalar, ScalarError};
use crate::table::{self, format_error, format_order};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "multiroot", version, about = "Third-order iterations for multiple roots")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iterate one method from one starting point.
    Solve(SolveArgs),
    /// Errors, COC and ACOC for f1..f5 and the third-order methods.
    Table(TableArgs),
    /// Render a basin-of-attraction image.
    Basin(BasinArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Csv,
    Ppm,
}

#[derive(Debug, Clone, Args)]
pub struct MethodArgs {
    #[arg(long, default_value = "mpp")]
    pub method: MethodKind,
    /// Multiplicity used by the method; defaults to the problem's.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: Option<u32>,
    #[arg(long, default_value_t = MethodSpec::DEFAULT_GAMMA, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, default_value = "minus")]
    pub dong_sign: DongSign,
}

impl MethodArgs {
    fn spec(&self, p: &Problem) -> MethodSpec {
        let m = self.m.and_then(|m| Multiplicity::new(m).ok()).unwrap_or(p.multiplicity());
        MethodSpec::new(self.method, m).with_gamma(self.gamma).with_dong_sign(self.dong_sign)
    }
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub problem: String,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Starting point, e.g. `1.5` or `1+0.5i`; defaults to the problem's.
    #[arg(long, allow_hyphen_values = true)]
    pub x0: Option<String>,
    #[arg(long, default_value_t = 10)]
    pub iters: usize,
    /// Decimal digits, or `double`.
    #[arg(long, default_value = "100")]
    pub precision: Precision,
    #[arg(long, default_value_t = 0.0)]
    pub tol_step: f64,
    #[arg(long, default_value_t = 0.0)]
    pub tol_residual: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the resolved configuration as JSON and exit.
    #[arg(long)]
    pub dump_config: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long, default_value = "100")]
    pub precision: Precision,
    /// Comma-separated method names.
    #[arg(long, default_value = "mpp,osada,dong,chun")]
    pub methods: String,
    /// Comma-separated problem names.
    #[arg(long, default_value = "f1,f2,f3,f4,f5")]
    pub problems: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub dump_config: bool,
}

#[derive(Debug, Clone, Args)]
pub struct BasinArgs {
    #[arg(long)]
    pub problem: String,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Iteration cap per pixel.
    #[arg(long, default_value_t = basin::DEFAULT_CAP)]
    pub iters: u32,
    /// Distance to a root that counts as converged.
    #[arg(long, default_value_t = basin::DEFAULT_TOL)]
    pub tol: f64,
    /// `re_min,re_max,im_min,im_max`.
    #[arg(long, default_value = "-3,3,-3,3", allow_hyphen_values = true)]
    pub grid: String,
    /// `WxH`.
    #[arg(long, default_value = "256x256")]
    pub size: String,
    #[arg(long, value_enum, default_value_t = Format::Ppm)]
    pub format: Format,
    /// Output file, or a directory to place `<problem>_<method>_<W>x<H>.ppm` in.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub dump_config: bool,
}

/// Resolved configuration, as printed by `--dump-config`.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub iterations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerances: Option<Tolerances>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problems: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub methods: Option<Vec<MethodKind>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    pub format: Format,
}

impl RunConfig {
    fn new(command: &'static str, format: Format) -> Self {
        RunConfig {
            command,
            problem: None,
            method: None,
            x0: None,
            precision: None,
            iterations: None,
            tolerances: None,
            tol: None,
            grid: None,
            problems: None,
            methods: None,
            out: None,
            format,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialises") + "\n"
    }
}

enum Failure {
    Usage(String),
    Runtime(String),
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn problem(name: &str) -> Result<Problem, Failure> {
    lookup(name).ok_or_else(|| usage(format!("unknown problem `{name}` (known: {})", PROBLEM_NAMES.join(", "))))
}

/// Parses `args` (including the program name) and runs one command.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => run_solve(a, out),
        Command::Table(a) => run_table(a, out),
        Command::Basin(a) => run_basin(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

fn emit(text: &[u8], path: Option<&Path>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Runtime(format!("{}: {e}", path.display()))),
        None => out.write_all(text).map_err(|e| Failure::Runtime(e.to_string())),
    }
}

fn run_solve(a: &SolveArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = problem(&a.problem)?;
    let spec = a.method.spec(&p);
    if a.iters == 0 {
        return Err(usage("--iters must be at least 1"));
    }
    if !matches!(a.format, Format::Text | Format::Csv) {
        return Err(usage("solve supports --format text or csv"));
    }
    let x0 = a.x0.clone().unwrap_or_else(|| p.default_start().to_string());
    let tol = Tolerances { step: a.tol_step, residual: a.tol_residual };
    if a.dump_config {
        let mut cfg = RunConfig::new("solve", a.format);
        cfg.problem = Some(p.name().to_string());
        cfg.method = Some(spec);
        cfg.x0 = Some(x0);
        cfg.precision = Some(a.precision.to_string());
        cfg.iterations = Some(a.iters);
        cfg.tolerances = Some(tol);
        cfg.out = a.out.as_ref().map(|p| p.display().to_string());
        emit(cfg.to_json().as_bytes(), None, out)?;
        return Ok(EXIT_OK);
    }
    let scalar_err = |e: ScalarError| usage(format!("--x0: {e}"));
    let (text, failed) = match (a.precision, p.is_complex()) {
        (Precision::Double, false) => {
            render_solve::<f64>(&p, &spec, &x0, a.precision, a.iters, tol, a.format).map_err(scalar_err)?
        }
        (Precision::Double, true) => render_solve::<Complex64>(&p, &spec, &x0, a.precision, a.iters, tol, a.format)
            .map_err(scalar_err)?,
        (_, false) => {
            render_solve::<Float>(&p, &spec, &x0, a.precision, a.iters, tol, a.format).map_err(scalar_err)?
        }
        (_, true) => {
            render_solve::<Complex>(&p, &spec, &x0, a.precision, a.iters, tol, a.format).map_err(scalar_err)?
        }
    };
    emit(text.as_bytes(), a.out.as_deref(), out)?;
    Ok(if failed { EXIT_FAILURE } else { EXIT_OK })
}

/// Converts any real scalar to an MPFR value for display.
fn to_float<R: Scalar>(r: &R) -> Float {
    let text = r.to_string();
    Float::parse(text.trim())
        .map(|v| Float::with_val(64, v))
        .unwrap_or_else(|_| Float::with_val(64, r.to_c64().re))
}

fn render_solve<S: Scalar>(
    p: &Problem,
    spec: &MethodSpec,
    x0: &str,
    precision: Precision,
    iters: usize,
    tol: Tolerances,
    format: Format,
) -> Result<(String, bool), ScalarError> {
    let start: S = make_scalar(x0, precision)?;
    let report: ConvergenceReport<S> = run_iteration(p, spec, start, iters, tol);
    let trace = &report.trace;
    let mut s = String::new();
    let err_at = |n: usize| trace.errors.as_ref().map(|e| to_float(&e[n]));
    if format == Format::Csv {
        s.push_str("n,iterate,error\n");
        for (n, x) in trace.iterates.iter().enumerate() {
            let e = err_at(n).map(|e| format_error(&e)).unwrap_or_default();
            let _ = writeln!(s, "{n},{x},{e}");
        }
        return Ok((s, trace.termination.is_failure()));
    }
    let _ = writeln!(
        s,
        "problem {}  method {} (m={}{})  precision {}  x0 {}",
        p.name(),
        spec.kind,
        spec.m,
        match spec.kind {
            MethodKind::Chun => format!(", gamma={}", spec.gamma),
            MethodKind::Dong => format!(", sign={}", spec.dong_sign.name()),
            _ => String::new(),
        },
        precision,
        x0
    );
    if let Some(root) = &trace.root {
        let _ = writeln!(s, "root {root}");
    }
    for (n, x) in trace.iterates.iter().enumerate() {
        match err_at(n) {
            Some(e) => {
                let _ = writeln!(s, "x{n} = {x}  err{n} = {}", format_error(&e));
            }
            None => {
                let _ = writeln!(s, "x{n} = {x}");
            }
        }
    }
    let _ = writeln!(s, "termination {}", trace.termination.tag());
    let order = |v: &Option<S::Real>| v.as_ref().map_or("-".to_string(), |q| format_order(&to_float(q)));
    let _ = writeln!(s, "COC {}", order(&report.coc));
    let _ = writeln!(s, "ACOC {}", order(&report.acoc));
    Ok((s, trace.termination.is_failure()))
}

fn split_list(list: &str) -> Vec<String> {
    list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn run_table(a: &TableArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let methods = table::parse_methods(&a.methods).map_err(usage)?;
    let problems = split_list(&a.problems);
    for name in &problems {
        problem(name)?;
    }
    if !matches!(a.format, Format::Text | Format::Csv) {
        return Err(usage("table supports --format text or csv"));
    }
    if a.dump_config {
        let mut cfg = RunConfig::new("table", a.format);
        cfg.precision = Some(a.precision.to_string());
        cfg.iterations = Some(table::TABLE_STEPS);
        cfg.problems = Some(problems);
        cfg.methods = Some(methods);
        cfg.out = a.out.as_ref().map(|p| p.display().to_string());
        emit(cfg.to_json().as_bytes(), None, out)?;
        return Ok(EXIT_OK);
    }
    if a.precision == Precision::Double {
        return Err(usage("table needs a decimal --precision"));
    }
    let names: Vec<&str> = problems.iter().map(String::as_str).collect();
    let report = table::table1_filtered(a.precision, &names, &methods).map_err(|e| usage(e.to_string()))?;
    let text = match a.format {
        Format::Csv => report.to_csv(),
        _ => report.to_text(),
    };
    emit(text.as_bytes(), a.out.as_deref(), out)?;
    Ok(if report.all_complete() { EXIT_OK } else { EXIT_FAILURE })
}

fn run_basin(a: &BasinArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = problem(&a.problem)?;
    if !p.is_complex() {
        return Err(usage(format!("problem `{}` is real; basin needs p1, p2, p3 or a power of them", p.name())));
    }
    if a.format != Format::Ppm {
        return Err(usage("basin supports --format ppm"));
    }
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(usage("--tol must be positive"));
    }
    let spec = a.method.spec(&p);
    let (w, h) = basin::parse_size(&a.size).map_err(|e| usage(format!("--size: {e}")))?;
    let grid = GridSpec::default()
        .with_size(w, h)
        .and_then(|g| g.with_bounds(&a.grid))
        .map_err(|e| usage(format!("--grid/--size: {e}")))?;
    let name = basin::file_name(p.name(), spec.kind, &grid);
    let path = match &a.out {
        Some(dir) if dir.is_dir() => dir.join(&name),
        Some(file) => file.clone(),
        None => PathBuf::from(&name),
    };
    if a.dump_config {
        let mut cfg = RunConfig::new("basin", a.format);
        cfg.problem = Some(p.name().to_string());
        cfg.method = Some(spec);
        cfg.iterations = Some(a.iters as usize);
        cfg.tol = Some(a.tol);
        cfg.grid = Some(grid);
        cfg.out = Some(path.display().to_string());
        emit(cfg.to_json().as_bytes(), None, out)?;
        return Ok(EXIT_OK);
    }
    let img = basin::render_with(&p, &spec, grid, a.iters, a.tol).map_err(|e| usage(e.to_string()))?;
    emit(&img.encode_ppm(), Some(&path), out)?;
    emit(format!("{} {}\n", path.display(), img.summary()).as_bytes(), None, out)?;
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut argv = vec!["multiroot".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn solve_reports_errors_and_orders() {
        let (code, out, _) = call(&["solve", "--problem", "f3", "--method", "dong", "--x0", "1.5", "--iters", "3"]);
        assert_eq!(code, 0);
        assert!(out.contains("err2 = 0.200e-6"), "{out}");
        assert!(out.contains("termination max-iters"));
    }

    #[test]
    fn solve_at_root_stops_at_zero() {
        let (code, out, _) = call(&["solve", "--problem", "f1", "--method", "mpp", "--x0", "0"]);
        assert_eq!(code, 0);
        assert!(out.contains("termination residual-tolerance"), "{out}");
        assert!(!out.contains("x1 ="));
    }

    #[test]
    fn solve_double_and_complex() {
        let (code, out, _) = call(&["solve", "--problem", "f2", "--precision", "double", "--iters", "2"]);
        assert_eq!(code, 0, "{out}");
        let (code, out, _) = call(&["solve", "--problem", "p2", "--method", "pp", "--x0", "1+1i", "--iters", "6"]);
        assert_eq!(code, 0, "{out}");
        let (code, out, _) = call(&["solve", "--problem", "p1", "--method", "pp", "--x0", "0", "--precision", "double"]);
        assert_eq!(code, 1, "{out}");
        assert!(out.contains("failure:domain-error@1"));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["solve", "--problem", "f9"]).0, 2);
        assert_eq!(call(&["solve", "--problem", "f1", "--method", "halley"]).0, 2);
        assert_eq!(call(&["solve", "--problem", "f1", "--x0", "abc"]).0, 2);
        assert_eq!(call(&["solve", "--problem", "f1", "--x0", "1+2i"]).0, 2);
        assert_eq!(call(&["solve", "--problem", "f1", "--m", "0"]).0, 2);
        assert_eq!(call(&["basin", "--problem", "f3"]).0, 2);
        assert_eq!(call(&["basin", "--problem", "p2", "--size", "0x4"]).0, 2);
        assert_eq!(call(&["table", "--methods", "mpp,nope"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn dump_config_is_json() {
        let (code, out, _) = call(&["basin", "--problem", "p2pow3", "--dump-config"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["command"], "basin");
        assert_eq!(v["method"]["m"], 3);
        assert_eq!(v["grid"]["width"], 256);
        assert_eq!(v["tol"], 1e-3);
        assert_eq!(v["iterations"], 100);
        assert_eq!(v["out"], "p2pow3_mpp_256x256.ppm");
        let (_, out, _) = call(&["table", "--dump-config"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["precision"], "100");
        assert_eq!(v["methods"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn table_filter_csv() {
        let (code, out, _) = call(&["table", "--methods", "mpp", "--precision", "60", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 6);
        assert!(out.lines().nth(1).unwrap().starts_with("f1,mpp,60,"));
    }
}
