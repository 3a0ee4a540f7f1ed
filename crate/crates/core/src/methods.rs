//! One-step maps of the iteration schemes.
//!
//! | name      | scheme                                              | order |
//! |-----------|-----------------------------------------------------|-------|
//! | `mnewton` | `x - m f/f'`                                        | 2     |
//! | `pp`      | Potra-Pták, `y = x - f/f'`, `x - (f(x)+f(y))/f'`    | 3 (simple zeros) |
//! | `mpp`     | Potra-Pták modified for multiplicity `m`            | 3     |
//! | `osada`   | Osada, uses `f''`                                   | 3     |
//! | `dong`    | Dong, two substeps                                  | 3     |
//! | `chun`    | Chun's one-parameter family, uses `f''`             | 3     |
//!
//! All steppers are pure functions of `(problem, spec, x)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::problems::{EvalError, Multiplicity, Problem};
use crate::scalar::{Precision, Real, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("derivative vanished")]
    DerivativeZero,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("non-finite iterate")]
    NonFinite,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl StepError {
    /// Short machine-readable tag.
    pub fn flag(&self) -> &'static str {
        match self {
            StepError::DerivativeZero => "derivative-zero",
            StepError::Domain(_) => "domain-error",
            StepError::NonFinite => "nonfinite",
            StepError::Unsupported(_) => "unsupported",
        }
    }
}

impl From<EvalError> for StepError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::NoSecondDerivative(name) => {
                StepError::Unsupported(format!("{name} has no second derivative"))
            }
            other => StepError::Domain(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodKind {
    ModifiedNewton,
    PotraPtak,
    ModifiedPotraPtak,
    Osada,
    Dong,
    Chun,
}

impl MethodKind {
    pub const ALL: [MethodKind; 6] = [
        MethodKind::ModifiedNewton,
        MethodKind::PotraPtak,
        MethodKind::ModifiedPotraPtak,
        MethodKind::Osada,
        MethodKind::Dong,
        MethodKind::Chun,
    ];

    /// The third-order methods compared in the convergence table.
    pub const TABLE: [MethodKind; 4] =
        [MethodKind::ModifiedPotraPtak, MethodKind::Osada, MethodKind::Dong, MethodKind::Chun];

    /// Stable command-line name.
    pub fn name(self) -> &'static str {
        match self {
            MethodKind::ModifiedNewton => "mnewton",
            MethodKind::PotraPtak => "pp",
            MethodKind::ModifiedPotraPtak => "mpp",
            MethodKind::Osada => "osada",
            MethodKind::Dong => "dong",
            MethodKind::Chun => "chun",
        }
    }

    pub fn needs_second_derivative(self) -> bool {
        matches!(self, MethodKind::Osada | MethodKind::Chun)
    }
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MethodKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MethodKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown method `{s}` (expected one of mnewton, pp, mpp, osada, dong, chun)"))
    }
}

/// Sign of the first substep of Dong's method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DongSign {
    /// `y = x - sqrt(m) f/f'`; third order.
    #[default]
    CorrectedMinus,
    /// `y = x + sqrt(m) f/f'`; kept for comparison, diverges on pure powers.
    AsPrintedPlus,
}

impl DongSign {
    pub fn name(self) -> &'static str {
        match self {
            DongSign::CorrectedMinus => "minus",
            DongSign::AsPrintedPlus => "plus",
        }
    }
}

impl FromStr for DongSign {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "minus" | "corrected-minus" => Ok(DongSign::CorrectedMinus),
            "plus" | "as-printed-plus" => Ok(DongSign::AsPrintedPlus),
            _ => Err(format!("unknown Dong sign `{s}` (expected minus or plus)")),
        }
    }
}

/// A stepper together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MethodSpec {
    pub kind: MethodKind,
    pub m: Multiplicity,
    /// Chun's family parameter.
    pub gamma: f64,
    pub dong_sign: DongSign,
}

impl MethodSpec {
    pub const DEFAULT_GAMMA: f64 = -1.0;

    pub fn new(kind: MethodKind, m: Multiplicity) -> Self {
        MethodSpec { kind, m, gamma: Self::DEFAULT_GAMMA, dong_sign: DongSign::default() }
    }

    /// `kind` with the multiplicity of `problem`.
    pub fn for_problem(kind: MethodKind, problem: &Problem) -> Self {
        Self::new(kind, problem.multiplicity())
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_dong_sign(mut self, sign: DongSign) -> Self {
        self.dong_sign = sign;
        self
    }
}

/// Integer coefficients of the modified Potra-Pták step in cleared form:
/// `a = (mu - 1) mu^mu`, `b = mu^mu`, `m_pow_m = m^m` with `0^0 = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MethodCoefficients {
    pub m: Multiplicity,
    pub a: i128,
    pub b: i128,
    pub m_pow_m: i128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("multiplicity {0} is too large for exact coefficients")]
pub struct CoefficientOverflow(pub u32);

/// Coefficients for multiplicity `m`; exact up to `m = 26`.
pub fn coefficients(m: Multiplicity) -> Result<MethodCoefficients, CoefficientOverflow> {
    let mu = i128::from(m.mu());
    let too_big = CoefficientOverflow(m.m());
    let b = mu.checked_pow(m.mu()).ok_or(too_big)?;
    let a = (mu - 1).checked_mul(b).ok_or(too_big)?;
    let m_pow_m = i128::from(m.m()).checked_pow(m.m()).ok_or(too_big)?;
    Ok(MethodCoefficients { m, a, b, m_pow_m })
}

/// Result of one successful step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepOutcome<S> {
    pub next: S,
    /// The `y` of two-stage methods.
    pub intermediate: Option<S>,
}

fn real<S: Scalar>(x: &S, n: i128) -> S::Real {
    <S::Real as Real>::from_int(n, x.precision())
}

fn real_ratio<S: Scalar>(x: &S, num: i128, den: i128) -> S::Real {
    <S::Real as Real>::ratio(num, den, x.precision())
}

fn divide<S: Scalar>(num: &S, den: &S) -> Result<S, StepError> {
    num.try_div(den).map_err(|_| StepError::DerivativeZero)
}

fn finish<S: Scalar>(next: S, intermediate: Option<S>) -> Result<StepOutcome<S>, StepError> {
    if !next.is_finite() || intermediate.as_ref().is_some_and(|y| !y.is_finite()) {
        return Err(StepError::NonFinite);
    }
    Ok(StepOutcome { next, intermediate })
}

/// `x - m f(x)/f'(x)`.
pub fn step_modified_newton<S: Scalar>(p: &Problem, spec: &MethodSpec, x: &S) -> Result<StepOutcome<S>, StepError> {
    let j = p.jet(x)?;
    let u = divide(&j.value, &j.first)?;
    let m = real(x, i128::from(spec.m.m()));
    finish(x.clone() - u.scale(&m), None)
}

/// Original Potra-Pták: `y = x - f/f'`, `next = x - (f(x) + f(y))/f'(x)`.
pub fn step_potra_ptak<S: Scalar>(p: &Problem, x: &S) -> Result<StepOutcome<S>, StepError> {
    let j = p.jet(x)?;
    let y = x.clone() - divide(&j.value, &j.first)?;
    let fy = p.f(&y)?;
    let next = x.clone() - divide(&(j.value + fy), &j.first)?;
    finish(next, Some(y))
}

/// Modified Potra-Pták for multiplicity `m`:
/// `next = x + m (A f(x) - m^m f(y)) / (B f'(x))`.
///
/// At `m = 1` (`A = -1`, `B = 1`, `m^m = 1`) every rounding coincides with
/// [`step_potra_ptak`], so the two agree bit for bit.
pub fn step_modified_potra_ptak<S: Scalar>(
    p: &Problem,
    spec: &MethodSpec,
    x: &S,
) -> Result<StepOutcome<S>, StepError> {
    let c = coefficients(spec.m).map_err(|e| StepError::Unsupported(e.to_string()))?;
    let j = p.jet(x)?;
    let y = x.clone() - divide(&j.value, &j.first)?;
    let fy = p.f(&y)?;
    let num = (j.value.scale(&real(x, c.a)) - fy.scale(&real(x, c.m_pow_m)))
        .scale(&real(x, i128::from(c.m.m())));
    let den = j.first.scale(&real(x, c.b));
    let next = x.clone() + divide(&num, &den)?;
    finish(next, Some(y))
}

/// Osada: `x - m(m+1)/2 f/f' + (m-1)^2/2 f'/f''`.
pub fn step_osada<S: Scalar>(p: &Problem, spec: &MethodSpec, x: &S) -> Result<StepOutcome<S>, StepError> {
    let j = p.jet(x)?;
    let d2 = p.d2f(x)?;
    let m = i128::from(spec.m.m());
    let u = divide(&j.value, &j.first)?;
    let v = divide(&j.first, &d2)?;
    let next = x.clone() - u.scale(&real_ratio(x, m * (m + 1), 2)) + v.scale(&real_ratio(x, (m - 1) * (m - 1), 2));
    finish(next, None)
}

/// Dong: `y = x -/+ sqrt(m) f/f'`, `next = y - m (1 - 1/sqrt m)^(1-m) f(y)/f'(x)`.
pub fn step_dong<S: Scalar>(p: &Problem, spec: &MethodSpec, x: &S) -> Result<StepOutcome<S>, StepError> {
    let m = spec.m.m();
    if m == 1 && spec.dong_sign == DongSign::CorrectedMinus {
        return Err(StepError::Unsupported("Dong's method needs m >= 2".into()));
    }
    let mr = real(x, i128::from(m));
    let root_m = mr.sqrt().map_err(|e| StepError::Domain(e.to_string()))?;
    let one = mr.int(1);
    // (1 - 1/sqrt m)^(1-m) = 1 / (1 - 1/sqrt m)^(m-1), with 0^0 = 1
    let base = one.clone() - divide(&one, &root_m)?;
    let factor = divide(&mr, &base.powi(m - 1))?;

    let j = p.jet(x)?;
    let u = divide(&j.value, &j.first)?.scale(&root_m);
    let y = match spec.dong_sign {
        DongSign::CorrectedMinus => x.clone() - u,
        DongSign::AsPrintedPlus => x.clone() + u,
    };
    let fy = p.f(&y)?;
    let next = y.clone() - divide(&fy, &j.first)?.scale(&factor);
    finish(next, Some(y))
}

/// Chun's family with parameter `gamma`:
/// `x - m((2g-1)m+3-2g)/2 f/f' + g(m-1)^2/2 f'/f'' - (1-g)m^2/2 f^2 f''/f'^3`.
pub fn step_chun<S: Scalar>(p: &Problem, spec: &MethodSpec, x: &S) -> Result<StepOutcome<S>, StepError> {
    if !spec.gamma.is_finite() {
        return Err(StepError::Unsupported("gamma must be finite".into()));
    }
    let j = p.jet(x)?;
    let d2 = p.d2f(x)?;
    let prec = x.precision();
    let g = <S::Real as Real>::from_f64(spec.gamma, prec);
    let m = real(x, i128::from(spec.m.m()));
    let one = m.int(1);
    let two = m.int(2);
    let half = real_ratio(x, 1, 2);

    let c1 = m.clone() * ((two.clone() * g.clone() - one.clone()) * m.clone() + m.int(3) - two * g.clone()) * half.clone();
    let c2 = g.clone() * (m.clone() - one.clone()).square() * half.clone();
    let c3 = (one - g) * m.square() * half;

    let u = divide(&j.value, &j.first)?;
    let v = divide(&j.first, &d2)?;
    let w = divide(&d2, &j.first)?;
    let next = x.clone() - u.scale(&c1) + v.scale(&c2) - (u.square() * w).scale(&c3);
    finish(next, None)
}

/// Dispatches on `spec.kind`.
pub fn step<S: Scalar>(p: &Problem, spec: &MethodSpec, x: &S) -> Result<StepOutcome<S>, StepError> {
    match spec.kind {
        MethodKind::ModifiedNewton => step_modified_newton(p, spec, x),
        MethodKind::PotraPtak => step_potra_ptak(p, x),
        MethodKind::ModifiedPotraPtak => step_modified_potra_ptak(p, spec, x),
        MethodKind::Osada => step_osada(p, spec, x),
        MethodKind::Dong => step_dong(p, spec, x),
        MethodKind::Chun => step_chun(p, spec, x),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstantError {
    #[error("f^(m) vanishes at the root: multiplicity {0} is inconsistent")]
    InconsistentMultiplicity(u32),
    #[error("the Taylor contour needs a complex scalar type")]
    RealScalar,
    #[error("evaluation on the contour failed: {0}")]
    Eval(#[from] EvalError),
}

/// Contour used to extract Taylor coefficients at a root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorContour {
    pub radius: f64,
    pub nodes: usize,
}

impl Default for TaylorContour {
    fn default() -> Self {
        TaylorContour { radius: 1e-2, nodes: 64 }
    }
}

/// Taylor coefficients `a_0..a_{count-1}` of `p` at `center`, by the
/// trapezoid rule on the circle `|z - center| = radius`:
/// `a_k = (1/N) sum_j f(center + r w^j) w^(-jk) r^(-k)`.
pub fn taylor_coefficients<C: Scalar>(
    p: &Problem,
    center: &C,
    count: usize,
    contour: TaylorContour,
) -> Result<Vec<C>, ConstantError> {
    if !C::IS_COMPLEX {
        return Err(ConstantError::RealScalar);
    }
    let prec = center.precision();
    let n = contour.nodes;
    let radius = <C::Real as Real>::from_f64(contour.radius, prec);
    let two_pi = <C::Real as Real>::pi(prec).scale(&radius.int(2));
    let nodes: Vec<C> = (0..n)
        .map(|j| {
            let theta = two_pi.clone() * radius.int(j as i64);
            let theta = theta.try_div(&radius.int(n as i64)).expect("nodes > 0");
            C::from_parts(theta.cos(), theta.sin()).expect("complex scalar")
        })
        .collect();
    let values: Vec<C> = nodes
        .iter()
        .map(|w| p.f(&(center.clone() + w.scale(&radius))))
        .collect::<Result<_, _>>()?;
    let nn = center.int(n as i64);
    let mut coeffs = Vec::with_capacity(count);
    for k in 0..count {
        let mut acc = center.zero_like();
        for (j, v) in values.iter().enumerate() {
            // w^(-jk) = conj(w^(jk mod n))
            let w = &nodes[(j * k) % n];
            let w_conj = C::from_parts(w.re(), -w.im()).expect("complex scalar");
            acc = acc + v.clone() * w_conj;
        }
        let rk = C::from_real(radius.powi(k as u32));
        coeffs.push(acc.try_div(&(nn.clone() * rk)).expect("nonzero radius"));
    }
    Ok(coeffs)
}

/// Asymptotic error constant of the modified Potra-Pták step at `root`:
/// `C = ((2+m) c1^2 - 2 mu c0 c2) / (2 m^2 c0^2)` where
/// `c_i = m!/(m+i)! f^(m+i)(r)/f^(m)(r)` (so `c0 = 1`).
///
/// `C` is complex-valued in general; for real problems its imaginary part
/// is rounding noise.
pub fn asymptotic_error_constant<C: Scalar>(
    p: &Problem,
    root: &C,
    m: Multiplicity,
    contour: TaylorContour,
) -> Result<C, ConstantError> {
    let mm = m.m() as usize;
    let a = taylor_coefficients(p, root, mm + 3, contour)?;
    let prec = root.precision();
    // a_m r^m must stand out of the contour noise and a_0..a_{m-1} must be
    // negligible next to it (aliasing keeps them from being exactly 0)
    let radius = <C::Real as Real>::from_f64(contour.radius, prec);
    let scaled: Vec<C::Real> = a.iter().enumerate().map(|(k, ak)| ak.abs() * radius.powi(k as u32)).collect();
    let largest = scaled.iter().cloned().fold(radius.int(0), |acc, v| if v > acc { v } else { acc });
    let noise = largest * <C::Real as Real>::pow10(-(prec.decimal_digits() as i32) / 2, prec);
    let vanishing = scaled[mm].clone() * <C::Real as Real>::pow10(-10, prec);
    if scaled[mm].partial_cmp(&noise) != Some(std::cmp::Ordering::Greater) || scaled[..mm].iter().any(|v| *v > vanishing) {
        return Err(ConstantError::InconsistentMultiplicity(m.m()));
    }
    let c1 = a[mm + 1].try_div(&a[mm]).expect("checked nonzero");
    let c2 = a[mm + 2].try_div(&a[mm]).expect("checked nonzero");
    let mi = i64::from(m.m());
    let num = root.int(2 + mi) * c1.square() - root.int(2 * (mi - 1)) * c2;
    Ok(num.try_div(&root.int(2 * mi * mi)).expect("nonzero"))
}

/// Precision-aware convenience: the constant for a real root given at
/// `precision`, returned as a real.
pub fn real_error_constant(
    p: &Problem,
    root_index: usize,
    precision: Precision,
    contour: TaylorContour,
) -> Result<rug::Float, ConstantError> {
    let roots: Vec<rug::Complex> = p.roots(precision)?;
    let root = roots.get(root_index).ok_or(EvalError::Domain("root index"))?;
    let c = asymptotic_error_constant(p, root, p.multiplicity(), contour)?;
    Ok(c.real().clone())
}
