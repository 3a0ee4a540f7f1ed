//! Iteration driver and computational order of convergence.
//!
//! COC uses three consecutive errors against a known root,
//! `ln|e_{n+1}/e_n| / ln|e_n/e_{n-1}|`; ACOC uses four consecutive
//! iterates and no root, replacing errors by successive differences.

use serde::{Deserialize, Serialize};

use crate::methods::{step, MethodSpec, StepError};
use crate::problems::Problem;
use crate::scalar::{is_resolvable, unit_scale, Real, Scalar};

/// Stopping tolerances; `0` disables a criterion.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Tolerances {
    /// Stop once `|x_{n+1} - x_n| < step`.
    pub step: f64,
    /// Stop once `|f(x_n)| < residual`. An exact zero of `f` always stops.
    pub residual: f64,
}

impl Tolerances {
    pub const DISABLED: Tolerances = Tolerances { step: 0.0, residual: 0.0 };
}

#[derive(Debug, Clone, PartialEq)]
pub enum Termination {
    MaxIterations,
    StepTolerance,
    ResidualTolerance,
    /// Step number `step` (1-based: the step that would produce `x_step`) failed.
    Failure { step: usize, error: StepError },
}

impl Termination {
    pub fn is_failure(&self) -> bool {
        matches!(self, Termination::Failure { .. })
    }

    /// Compact tag used in CSV output.
    pub fn tag(&self) -> String {
        match self {
            Termination::MaxIterations => "max-iters".into(),
            Termination::StepTolerance => "step-tolerance".into(),
            Termination::ResidualTolerance => "residual-tolerance".into(),
            Termination::Failure { step, error } => format!("failure:{}@{}", error.flag(), step),
        }
    }
}

/// Iterates `x_0..x_N` of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationTrace<S: Scalar> {
    pub problem: String,
    pub method: MethodSpec,
    pub iterates: Vec<S>,
    /// The known root nearest to the final iterate, if any is representable.
    pub root: Option<S>,
    /// `|x_n - root|` at working precision.
    pub errors: Option<Vec<S::Real>>,
    pub termination: Termination,
}

impl<S: Scalar> IterationTrace<S> {
    pub fn steps(&self) -> usize {
        self.iterates.len() - 1
    }

    pub fn last(&self) -> &S {
        self.iterates.last().expect("a trace holds at least x0")
    }
}

fn below<R: Real>(value: &R, tol: f64) -> bool {
    tol > 0.0 && *value < R::from_f64(tol, value.precision())
}

/// Runs `spec` on `p` from `x0` for at most `budget` steps.
///
/// Failures do not abort: they end the trace with [`Termination::Failure`].
pub fn iterate<S: Scalar>(
    p: &Problem,
    spec: &MethodSpec,
    x0: S,
    budget: usize,
    tol: Tolerances,
) -> IterationTrace<S> {
    let mut iterates = vec![x0];
    let mut termination = Termination::MaxIterations;
    let residual_stop = |x: &S| match p.f(x) {
        Ok(fx) => fx.is_zero() || below(&fx.abs(), tol.residual),
        Err(_) => false,
    };

    if residual_stop(&iterates[0]) {
        termination = Termination::ResidualTolerance;
    } else {
        for n in 1..=budget {
            let x = iterates.last().expect("nonempty");
            match step(p, spec, x) {
                Ok(out) => {
                    let small_step = below(&(out.next.clone() - x.clone()).abs(), tol.step);
                    iterates.push(out.next);
                    if residual_stop(iterates.last().expect("nonempty")) {
                        termination = Termination::ResidualTolerance;
                        break;
                    }
                    if small_step {
                        termination = Termination::StepTolerance;
                        break;
                    }
                }
                Err(error) => {
                    termination = Termination::Failure { step: n, error };
                    break;
                }
            }
        }
    }

    let last = iterates.last().expect("nonempty").clone();
    let root = p
        .roots::<S>(last.precision())
        .ok()
        .and_then(|roots| nearest(&roots, &last).map(|(_, r)| r.clone()));
    let errors = root
        .as_ref()
        .map(|r| iterates.iter().map(|x| (x.clone() - r.clone()).abs()).collect());
    IterationTrace { problem: p.name().to_string(), method: *spec, iterates, root, errors, termination }
}

/// Index and value of the element of `roots` closest to `x`.
pub fn nearest<'a, S: Scalar>(roots: &'a [S], x: &S) -> Option<(usize, &'a S)> {
    let mut best: Option<(usize, &S, S::Real)> = None;
    for (k, r) in roots.iter().enumerate() {
        let d = (x.clone() - r.clone()).abs();
        if best.as_ref().is_none_or(|(_, _, bd)| d < *bd) {
            best = Some((k, r, d));
        }
    }
    best.map(|(k, r, _)| (k, r))
}

/// `ln(a/b) / ln(b/c)` for positive reals, `None` when undefined.
fn log_ratio<R: Real>(a: &R, b: &R, c: &R) -> Option<R> {
    let num = a.try_div(b).ok()?.ln().ok()?;
    let den = b.try_div(c).ok()?.ln().ok()?;
    let q = num.try_div(&den).ok()?;
    q.is_finite().then_some(q)
}

/// COC from the final three of `errors` (`e_{n-1}, e_n, e_{n+1}`).
pub fn coc_from_errors<R: Real>(errors: &[R]) -> Option<R> {
    let [e0, e1, e2] = errors.get(errors.len().checked_sub(3)?..)? else {
        return None;
    };
    if e0.is_zero() || e1.is_zero() || e2.is_zero() {
        return None;
    }
    log_ratio(e2, e1, e0)
}

/// COC on the final three iterates of `iterates` against `root`.
pub fn coc<S: Scalar>(iterates: &[S], root: &S) -> Option<S::Real> {
    let errors: Vec<S::Real> = iterates.iter().map(|x| (x.clone() - root.clone()).abs()).collect();
    coc_from_errors(&errors)
}

/// ACOC on the final four iterates.
pub fn acoc<S: Scalar>(iterates: &[S]) -> Option<S::Real> {
    let tail = iterates.get(iterates.len().checked_sub(4)?..)?;
    let d: Vec<S::Real> = tail.windows(2).map(|w| (w[1].clone() - w[0].clone()).abs()).collect();
    coc_from_errors(&d)
}

/// A trace with its convergence-order estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport<S: Scalar> {
    pub trace: IterationTrace<S>,
    pub coc: Option<S::Real>,
    pub acoc: Option<S::Real>,
}

impl<S: Scalar> ConvergenceReport<S> {
    /// Estimates COC and ACOC from the deepest iterates that are still
    /// resolved at working precision.
    ///
    /// An error `|x_n - r|` counts as resolved when it exceeds
    /// `max(1,|r|) * 10^(5 - digits)`; a difference `|x_{n+1} - x_n|` when it
    /// exceeds `max(1,|x_n|) * 10^(5 - digits)`. COC uses the last three
    /// resolved errors, ACOC the last four iterates whose three differences
    /// are resolved.
    pub fn new(trace: IterationTrace<S>) -> Self {
        let coc = match (&trace.root, &trace.errors) {
            (Some(root), Some(errors)) => {
                let scale = unit_scale(root);
                let resolved = errors
                    .iter()
                    .take_while(|e| is_resolvable(*e, &scale, root.precision()))
                    .count();
                coc_from_errors(&errors[..resolved])
            }
            _ => None,
        };
        let xs = &trace.iterates;
        let resolved_diffs = xs
            .windows(2)
            .take_while(|w| {
                let d = (w[1].clone() - w[0].clone()).abs();
                is_resolvable(&d, &unit_scale(&w[0]), w[0].precision())
            })
            .count();
        let acoc = acoc(&xs[..resolved_diffs + 1]);
        ConvergenceReport { trace, coc, acoc }
    }
}

/// Runs `iterate` and attaches COC/ACOC.
pub fn run<S: Scalar>(
    p: &Problem,
    spec: &MethodSpec,
    x0: S,
    budget: usize,
    tol: Tolerances,
) -> ConvergenceReport<S> {
    ConvergenceReport::new(iterate(p, spec, x0, budget, tol))
}
