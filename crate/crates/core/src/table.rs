//! The 5×4 error/COC/ACOC report for f1..f5 and the four third-order methods.

use std::fmt::Write as _;

use rayon::prelude::*;
use rug::float::Round;
use rug::Float;

use crate::convergence::{run, Termination, Tolerances};
use crate::methods::{MethodKind, MethodSpec};
use crate::problems::{lookup, Problem};
use crate::scalar::{Precision, Scalar};

/// Steps taken per cell: three reported errors plus one iterate for ACOC.
pub const TABLE_STEPS: usize = 4;

pub const TABLE_PROBLEMS: [&str; 5] = ["f1", "f2", "f3", "f4", "f5"];

const PLACEHOLDER: &str = "—";

#[derive(Debug, Clone)]
pub struct TableCell {
    pub problem: String,
    pub method: MethodKind,
    pub precision: Precision,
    /// `|x_1 - x*|, |x_2 - x*|, |x_3 - x*|`; shorter when the run failed early.
    pub errors: Vec<Float>,
    pub coc: Option<Float>,
    pub acoc: Option<Float>,
    pub termination: Termination,
}

impl TableCell {
    pub fn is_complete(&self) -> bool {
        self.errors.len() == 3 && !self.termination.is_failure()
    }

    /// Error `k` (1-based) in `0.ddde-k` form.
    pub fn error_text(&self, k: usize) -> String {
        self.errors.get(k - 1).map_or_else(|| self.failure_text(), format_error)
    }

    pub fn coc_text(&self) -> String {
        self.coc.as_ref().map_or_else(|| self.failure_text(), format_order)
    }

    pub fn acoc_text(&self) -> String {
        self.acoc.as_ref().map_or_else(|| self.failure_text(), format_order)
    }

    fn failure_text(&self) -> String {
        match &self.termination {
            Termination::Failure { error, .. } => format!("{PLACEHOLDER} ({})", error.flag()),
            _ => PLACEHOLDER.to_string(),
        }
    }
}

/// Runs one cell with the registry's start point and tolerances disabled.
pub fn compute_cell(problem: &Problem, method: MethodKind, precision: Precision) -> TableCell {
    let spec = MethodSpec::for_problem(method, problem);
    let x0: Float = problem.start(precision).expect("registry start points parse");
    let report = run(problem, &spec, x0, TABLE_STEPS, Tolerances::DISABLED);
    let errors = report
        .trace
        .errors
        .as_ref()
        .map(|e| e.iter().skip(1).take(3).cloned().collect())
        .unwrap_or_default();
    TableCell {
        problem: problem.name().to_string(),
        method,
        precision,
        errors,
        coc: report.coc,
        acoc: report.acoc,
        termination: report.trace.termination,
    }
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub precision: Precision,
    pub problems: Vec<String>,
    pub methods: Vec<MethodKind>,
    /// Problem-major, in the order of `problems` then `methods`.
    pub cells: Vec<TableCell>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("unknown problem `{0}`")]
pub struct UnknownProblem(pub String);

/// Computes the table for the given problems and methods, cell-parallel.
pub fn table1_filtered(
    precision: Precision,
    problems: &[&str],
    methods: &[MethodKind],
) -> Result<TableReport, UnknownProblem> {
    let resolved = problems
        .iter()
        .map(|name| lookup(name).ok_or_else(|| UnknownProblem(name.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let jobs: Vec<(&Problem, MethodKind)> =
        resolved.iter().flat_map(|p| methods.iter().map(move |&k| (p, k))).collect();
    let cells = jobs.par_iter().map(|&(p, k)| compute_cell(p, k, precision)).collect();
    Ok(TableReport {
        precision,
        problems: problems.iter().map(|s| s.to_string()).collect(),
        methods: methods.to_vec(),
        cells,
    })
}

/// The full table: f1..f5 × mpp, osada, dong, chun.
pub fn table1(precision: Precision) -> TableReport {
    table1_filtered(precision, &TABLE_PROBLEMS, &MethodKind::TABLE).expect("registry names")
}

impl TableReport {
    pub fn cell(&self, problem: &str, method: MethodKind) -> Option<&TableCell> {
        self.cells.iter().find(|c| c.problem == problem && c.method == method)
    }

    pub fn all_complete(&self) -> bool {
        self.cells.iter().all(TableCell::is_complete)
    }

    pub fn to_csv(&self) -> String {
        let digits = self.precision.decimal_digits();
        let mut out = String::from("problem,method,precision_digits,err1,err2,err3,coc,acoc,termination\n");
        for c in &self.cells {
            let full = |v: Option<&Float>| v.map(|x| full_precision(x, digits)).unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{}",
                c.problem,
                c.method,
                digits,
                full(c.errors.first()),
                full(c.errors.get(1)),
                full(c.errors.get(2)),
                full(c.coc.as_ref()),
                full(c.acoc.as_ref()),
                c.termination.tag(),
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        const LABELS: [&str; 5] = ["|x1-x*|", "|x2-x*|", "|x3-x*|", "COC", "ACOC"];
        let label_width = 9;
        let col_width = 16;
        let mut out = String::new();
        let rule = "-".repeat(label_width + col_width * self.methods.len());
        for name in &self.problems {
            let Some(p) = lookup(name) else { continue };
            let _ = writeln!(out, "{rule}");
            let _ = writeln!(
                out,
                "{}(x) = {},  m={}  x*={}  x0={}",
                name,
                formula(name),
                p.multiplicity(),
                root_text(name),
                p.default_start()
            );
            let _ = writeln!(out, "{rule}");
            let mut header = format!("{:label_width$}", "");
            for k in &self.methods {
                let _ = write!(header, "{:>col_width$}", k.name());
            }
            let _ = writeln!(out, "{}", header.trim_end());
            for (row, label) in LABELS.iter().enumerate() {
                let mut line = format!("{label:label_width$}");
                for &k in &self.methods {
                    let text = match self.cell(name, k) {
                        Some(c) => match row {
                            0..=2 => c.error_text(row + 1),
                            3 => c.coc_text(),
                            _ => c.acoc_text(),
                        },
                        None => PLACEHOLDER.to_string(),
                    };
                    let pad = col_width.saturating_sub(text.chars().count());
                    let _ = write!(line, "{}{text}", " ".repeat(pad));
                }
                let _ = writeln!(out, "{line}");
            }
        }
        let _ = writeln!(out, "{rule}");
        out
    }
}

fn formula(name: &str) -> &'static str {
    match name {
        "f1" => "(ln(1+x^2) + e^(x^2-3x) sin x)^6",
        "f2" => "(x^3 + ln(1+x))^7",
        "f3" => "(x^6-8)^2 ln(x^6-7)",
        "f4" => "(ln(x^2-x+1) + 4 sin(x-1))^10",
        "f5" => "ln^2(x-2) (e^(x-3)-1) sin(pi x/3)",
        _ => "",
    }
}

fn root_text(name: &str) -> &'static str {
    match name {
        "f1" | "f2" => "0",
        "f3" => "sqrt(2)",
        "f4" => "1",
        "f5" => "3",
        _ => "?",
    }
}

/// `0.ddde-k`: the value is rounded to five significant digits, then the
/// mantissa is truncated to three.
///
/// ```
/// # use rug::Float;
/// use multiroot::table::format_error;
/// assert_eq!(format_error(&Float::with_val(64, 0.0656106)), "0.656e-1");
/// assert_eq!(format_error(&Float::with_val(64, 0.00880917)), "0.880e-2");
/// ```
pub fn format_error(value: &Float) -> String {
    if value.is_zero() {
        return "0.000e0".to_string();
    }
    if !value.is_finite() {
        return value.to_string();
    }
    let (negative, digits, exp) = value.to_sign_string_exp_round(10, Some(5), Round::Nearest);
    let sign = if negative { "-" } else { "" };
    format!("{sign}0.{}e{}", &digits[..3], exp.unwrap_or(0))
}

/// Rounds half-even to four decimals.
///
/// ```
/// # use rug::Float;
/// use multiroot::table::format_order;
/// assert_eq!(format_order(&Float::with_val(64, 3.0996861)), "3.0997");
/// assert_eq!(format_order(&Float::with_val(64, 2.99999)), "3.0000");
/// ```
pub fn format_order(value: &Float) -> String {
    if !value.is_finite() {
        return value.to_string();
    }
    let scaled = Float::with_val(value.prec().max(64), value * 10_000u32).round_even();
    let n = scaled.to_f64() as i64;
    let sign = if n < 0 { "-" } else { "" };
    let n = n.unsigned_abs();
    format!("{sign}{}.{:04}", n / 10_000, n % 10_000)
}

fn full_precision(value: &Float, digits: u32) -> String {
    let digits = usize::try_from(digits).unwrap_or(usize::MAX);
    value.to_string_radix(10, Some(digits))
}

/// Parses a comma-separated method list such as `mpp,dong`.
pub fn parse_methods(list: &str) -> Result<Vec<MethodKind>, String> {
    list.split(',').map(|s| s.trim().parse::<MethodKind>().map_err(|e| e.to_string())).collect()
}

/// Float value of a cell entry, for tests and examples.
pub fn to_f64(value: &Float) -> f64 {
    Scalar::to_c64(value).re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_format_rounds_then_truncates() {
        let p = Precision::Digits(50).bits();
        assert_eq!(format_error(&Float::with_val(p, 0.0656106)), "0.656e-1");
        assert_eq!(format_error(&Float::with_val(p, 0.0678539)), "0.678e-1");
        assert_eq!(format_error(&Float::with_val(p, 6.96132e-9)), "0.696e-8");
        assert_eq!(format_error(&Float::with_val(p, 1.0)), "0.100e1");
        assert_eq!(format_error(&Float::with_val(p, 0.0)), "0.000e0");
        assert_eq!(format_error(&Float::with_val(p, 2.5299776e-4)), "0.253e-3");
        assert_eq!(format_error(&Float::with_val(p, 1.2659985e-4)), "0.126e-3");
        assert_eq!(format_error(&Float::with_val(p, 9.99996e-3)), "0.100e-1");
    }

    #[test]
    fn order_format_rounds_half_even() {
        let p = 200;
        assert_eq!(format_order(&Float::with_val(p, 3.00094)), "3.0009");
        assert_eq!(format_order(&Float::with_val(p, 3.10104)), "3.1010");
        assert_eq!(format_order(&Float::with_val(p, 2.5)), "2.5000");
        assert_eq!(format_order(&Float::with_val(p, -1.25)), "-1.2500");
    }

    #[test]
    fn single_cell_matches_printed_f1_mpp() {
        let p = lookup("f1").unwrap();
        let c = compute_cell(&p, MethodKind::ModifiedPotraPtak, Precision::Digits(100));
        assert!(c.is_complete());
        assert_eq!(
            [c.error_text(1), c.error_text(2), c.error_text(3)],
            ["0.656e-1", "0.128e-2", "0.696e-8"]
        );
        assert_eq!(c.coc_text(), "3.0009");
        assert_eq!(c.acoc_text(), "3.1010");
    }

    #[test]
    fn filtering_by_method() {
        let r = table1_filtered(Precision::Digits(60), &TABLE_PROBLEMS, &[MethodKind::ModifiedPotraPtak])
            .unwrap();
        assert_eq!(r.cells.len(), 5);
        assert!(r.all_complete());
        let csv = r.to_csv();
        assert_eq!(csv.lines().count(), 6);
        assert!(csv.starts_with("problem,method,precision_digits,err1,err2,err3,coc,acoc,termination\n"));
        let text = r.to_text();
        assert!(text.contains("0.656e-1"));
        assert!(text.contains("f3(x) = (x^6-8)^2 ln(x^6-7),  m=3  x*=sqrt(2)  x0=1.5"));
    }

    #[test]
    fn unknown_problem_is_reported() {
        let err = table1_filtered(Precision::Digits(60), &["f9"], &MethodKind::TABLE).unwrap_err();
        assert_eq!(err, UnknownProblem("f9".into()));
    }

    #[test]
    fn method_list_parsing() {
        assert_eq!(
            parse_methods("mpp, dong").unwrap(),
            vec![MethodKind::ModifiedPotraPtak, MethodKind::Dong]
        );
        assert!(parse_methods("mpp,halley").is_err());
    }
}
