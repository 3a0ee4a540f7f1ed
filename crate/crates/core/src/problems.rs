//! Test problems with closed-form derivatives.
//!
//! Every registered problem is stored symbolically ([`Form`]) and evaluated
//! generically, so the same definition serves the 100-digit tables and the
//! double-precision basin renderer.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{Precision, Real, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("{0} is outside the domain")]
    Domain(&'static str),
    #[error("pole: division by zero")]
    Pole,
    #[error("second derivative is not available for {0}")]
    NoSecondDerivative(String),
    #[error("root {0} of {1} is not representable in a real scalar type")]
    ComplexRoot(usize, String),
}

impl From<ScalarError> for EvalError {
    fn from(e: ScalarError) -> Self {
        match e {
            ScalarError::DivisionByZero => EvalError::Pole,
            ScalarError::Domain(what) => EvalError::Domain(what),
            ScalarError::Parse(_) | ScalarError::NotReal(_) => EvalError::Domain("literal"),
        }
    }
}

/// Multiplicity `m >= 1` of a zero, with `mu = m - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Multiplicity(u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("multiplicity must be at least 1")]
pub struct ZeroMultiplicity;

impl Multiplicity {
    pub const SIMPLE: Multiplicity = Multiplicity(1);

    pub fn new(m: u32) -> Result<Self, ZeroMultiplicity> {
        if m == 0 {
            Err(ZeroMultiplicity)
        } else {
            Ok(Multiplicity(m))
        }
    }

    pub fn m(self) -> u32 {
        self.0
    }

    pub fn mu(self) -> u32 {
        self.0 - 1
    }
}

impl TryFrom<u32> for Multiplicity {
    type Error = ZeroMultiplicity;
    fn try_from(m: u32) -> Result<Self, Self::Error> {
        Multiplicity::new(m)
    }
}

impl From<Multiplicity> for u32 {
    fn from(m: Multiplicity) -> u32 {
        m.0
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A real number of the form `num * sqrt(radicand) / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Surd {
    pub num: i64,
    pub radicand: i64,
    pub den: i64,
}

impl Surd {
    pub const fn int(n: i64) -> Surd {
        Surd { num: n, radicand: 1, den: 1 }
    }

    pub const fn ratio(num: i64, den: i64) -> Surd {
        Surd { num, radicand: 1, den }
    }

    pub const fn sqrt(radicand: i64, num: i64, den: i64) -> Surd {
        Surd { num, radicand, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn value<R: Real>(&self, precision: Precision) -> R {
        let q = R::ratio(i128::from(self.num), i128::from(self.den), precision);
        if self.radicand == 1 {
            q
        } else {
            let r = R::from_int(i128::from(self.radicand), precision);
            q * r.sqrt().expect("non-negative radicand")
        }
    }
}

/// An exactly known zero `re + i*im`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Root {
    pub re: Surd,
    pub im: Surd,
}

impl Root {
    pub const fn real(re: Surd) -> Root {
        Root { re, im: Surd::int(0) }
    }

    pub const fn complex(re: Surd, im: Surd) -> Root {
        Root { re, im }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn value<S: Scalar>(&self, precision: Precision) -> Option<S> {
        S::from_parts(self.re.value(precision), self.im.value(precision))
    }
}

/// Inner functions `g` raised to a power in [`Form::Powered`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Base {
    /// `x`
    Identity,
    /// `z + 1/z`
    ZPlusInverse,
    /// `z^3 + 1`
    CubePlusOne,
    /// `z^5 + 1/z`
    FifthPlusInverse,
    /// `ln(1 + x^2) + exp(x^2 - 3x) sin x`
    LogExpSin,
    /// `x^3 + ln(1 + x)`
    CubePlusLog,
    /// `ln(x^2 - x + 1) + 4 sin(x - 1)`
    LogQuadraticSin,
}

/// Closed-form description of a problem function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Form {
    /// `g(x)^power`
    Powered { base: Base, power: u32 },
    /// `(x^6 - 8)^2 ln(x^6 - 7)`
    SexticLog,
    /// `ln^2(x - 2) (exp(x - 3) - 1) sin(pi x / 3)`
    LogExpSine,
    /// `sum coeffs[k] x^k`
    Polynomial(Vec<i64>),
}

/// Value and first two derivatives at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet<S> {
    pub value: S,
    pub first: S,
    pub second: S,
}

impl<S: Scalar> Jet<S> {
    fn new(value: S, first: S, second: S) -> Self {
        Jet { value, first, second }
    }

    fn product(self, other: Jet<S>) -> Jet<S> {
        let two = self.value.int(2);
        Jet {
            value: self.value.clone() * other.value.clone(),
            first: self.first.clone() * other.value.clone() + self.value.clone() * other.first.clone(),
            second: self.second * other.value
                + two * self.first * other.first
                + self.value * other.second,
        }
    }

    /// Chain rule for `g^k`.
    fn power(self, k: u32) -> Jet<S> {
        match k {
            0 => {
                let one = self.value.one_like();
                let zero = self.value.zero_like();
                Jet::new(one, zero.clone(), zero)
            }
            1 => self,
            _ => {
                let kk = self.value.int(i64::from(k));
                let km1 = self.value.int(i64::from(k) - 1);
                let g_km2 = self.value.powi(k - 2);
                let g_km1 = g_km2.clone() * self.value.clone();
                let value = g_km1.clone() * self.value;
                let first = kk.clone() * g_km1.clone() * self.first.clone();
                let second =
                    kk.clone() * km1 * g_km2 * self.first.square() + kk * g_km1 * self.second;
                Jet::new(value, first, second)
            }
        }
    }
}

/// A test function with known multiplicity and zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    name: String,
    form: Form,
    multiplicity: Multiplicity,
    roots: Vec<Root>,
    default_start: String,
    domain_note: &'static str,
    complex_plane: bool,
    has_second_derivative: bool,
}

impl Problem {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn multiplicity(&self) -> Multiplicity {
        self.multiplicity
    }

    /// Exact zeros in a fixed order (the order used for basin colouring).
    pub fn root_set(&self) -> &[Root] {
        &self.roots
    }

    pub fn default_start(&self) -> &str {
        &self.default_start
    }

    pub fn domain_note(&self) -> &'static str {
        self.domain_note
    }

    /// Whether the problem is posed on the complex plane (basin problems).
    pub fn is_complex(&self) -> bool {
        self.complex_plane
    }

    pub fn has_second_derivative(&self) -> bool {
        self.has_second_derivative
    }

    /// The same problem without access to `f''`.
    pub fn without_second_derivative(mut self) -> Self {
        self.has_second_derivative = false;
        self
    }

    /// The same function with another starting point.
    pub fn with_start(mut self, start: impl Into<String>) -> Self {
        self.default_start = start.into();
        self
    }

    /// `f(x) = x^m`, zero of multiplicity `m` at the origin.
    pub fn pure_power(m: Multiplicity) -> Problem {
        Problem {
            name: format!("x^{m}"),
            form: Form::Powered { base: Base::Identity, power: m.m() },
            multiplicity: m,
            roots: vec![Root::real(Surd::int(0))],
            default_start: "1".into(),
            domain_note: "entire",
            complex_plane: false,
            has_second_derivative: true,
        }
    }

    /// Polynomial with integer coefficients (lowest degree first).
    pub fn polynomial(
        name: impl Into<String>,
        coeffs: Vec<i64>,
        multiplicity: Multiplicity,
        roots: Vec<Root>,
        default_start: impl Into<String>,
    ) -> Problem {
        let complex_plane = roots.iter().any(|r| !r.is_real());
        Problem {
            name: name.into(),
            form: Form::Polynomial(coeffs),
            multiplicity,
            roots,
            default_start: default_start.into(),
            domain_note: "entire",
            complex_plane,
            has_second_derivative: true,
        }
    }

    /// The known zeros as values of `S`.
    pub fn roots<S: Scalar>(&self, precision: Precision) -> Result<Vec<S>, EvalError> {
        self.roots
            .iter()
            .enumerate()
            .map(|(k, r)| r.value::<S>(precision).ok_or_else(|| EvalError::ComplexRoot(k, self.name.clone())))
            .collect()
    }

    /// The default starting point at `precision`.
    pub fn start<S: Scalar>(&self, precision: Precision) -> Result<S, ScalarError> {
        S::parse(&self.default_start, precision)
    }

    /// `f(x)`, `f'(x)` and `f''(x)`.
    pub fn jet<S: Scalar>(&self, x: &S) -> Result<Jet<S>, EvalError> {
        match &self.form {
            Form::Powered { base, power } => Ok(base_jet(*base, x)?.power(*power)),
            Form::SexticLog => sextic_log(x),
            Form::LogExpSine => log_exp_sine(x),
            Form::Polynomial(coeffs) => Ok(polynomial(coeffs, x)),
        }
    }

    pub fn f<S: Scalar>(&self, x: &S) -> Result<S, EvalError> {
        Ok(self.jet(x)?.value)
    }

    pub fn df<S: Scalar>(&self, x: &S) -> Result<S, EvalError> {
        Ok(self.jet(x)?.first)
    }

    pub fn d2f<S: Scalar>(&self, x: &S) -> Result<S, EvalError> {
        if !self.has_second_derivative {
            return Err(EvalError::NoSecondDerivative(self.name.clone()));
        }
        Ok(self.jet(x)?.second)
    }
}

/// Real logarithm with a named domain; complex arguments only exclude 0.
fn ln_checked<S: Scalar>(arg: &S, what: &'static str) -> Result<S, EvalError> {
    arg.ln().map_err(|_| EvalError::Domain(what))
}

fn base_jet<S: Scalar>(base: Base, x: &S) -> Result<Jet<S>, EvalError> {
    let one = x.one_like();
    let zero = x.zero_like();
    let int = |n: i64| x.int(n);
    Ok(match base {
        Base::Identity => Jet::new(x.clone(), one, zero),
        Base::ZPlusInverse => {
            let inv = one.try_div(x)?;
            Jet::new(
                x.clone() + inv.clone(),
                one - inv.square(),
                int(2) * inv.powi(3),
            )
        }
        Base::CubePlusOne => Jet::new(x.powi(3) + one, int(3) * x.square(), int(6) * x.clone()),
        Base::FifthPlusInverse => {
            let inv = one.try_div(x)?;
            Jet::new(
                x.powi(5) + inv.clone(),
                int(5) * x.powi(4) - inv.square(),
                int(20) * x.powi(3) + int(2) * inv.powi(3),
            )
        }
        Base::LogExpSin => {
            let q = one.clone() + x.square();
            let l = ln_checked(&q, "1 + x^2")?;
            let e = (x.square() - int(3) * x.clone()).exp();
            let (s, c) = (x.sin(), x.cos());
            let lin = int(2) * x.clone() - int(3);
            let value = l + e.clone() * s.clone();
            let first = (int(2) * x.clone()).try_div(&q)?
                + e.clone() * (lin.clone() * s.clone() + c.clone());
            let second = (int(2) * (one - x.square())).try_div(&q.square())?
                + e * ((lin.square() + int(1)) * s + int(2) * lin * c);
            Jet::new(value, first, second)
        }
        Base::CubePlusLog => {
            let q = one.clone() + x.clone();
            let l = ln_checked(&q, "1 + x")?;
            let inv = one.try_div(&q)?;
            Jet::new(
                x.powi(3) + l,
                int(3) * x.square() + inv.clone(),
                int(6) * x.clone() - inv.square(),
            )
        }
        Base::LogQuadraticSin => {
            let q = x.square() - x.clone() + one;
            let l = ln_checked(&q, "x^2 - x + 1")?;
            let t = x.clone() - int(1);
            let (s, c) = (t.sin(), t.cos());
            let lin = int(2) * x.clone() - int(1);
            let first = lin.try_div(&q)? + int(4) * c;
            let second = (int(2) * q.clone() - lin.square()).try_div(&q.square())? - int(4) * s.clone();
            Jet::new(l + int(4) * s, first, second)
        }
    })
}

/// `(x^6 - 8)^2 ln(x^6 - 7)`.
fn sextic_log<S: Scalar>(x: &S) -> Result<Jet<S>, EvalError> {
    let int = |n: i64| x.int(n);
    let x6 = x.powi(6);
    let u = x6.clone() - int(8);
    let v = x6 - int(7);
    let l = ln_checked(&v, "x^6 - 7")?;
    let w = int(6) * x.powi(5);
    let w2 = int(30) * x.powi(4);
    let value = u.square() * l.clone();
    let first = int(2) * u.clone() * w.clone() * l.clone() + u.square() * w.try_div(&v)?;
    let second = int(2) * (w.square() + u.clone() * w2.clone()) * l
        + (int(4) * u.clone() * w.square()).try_div(&v)?
        + u.square() * (w2 * v.clone() - w.square()).try_div(&v.square())?;
    Ok(Jet::new(value, first, second))
}

/// `ln^2(x - 2) (exp(x - 3) - 1) sin(pi x / 3)`.
fn log_exp_sine<S: Scalar>(x: &S) -> Result<Jet<S>, EvalError> {
    let int = |n: i64| x.int(n);
    let p = x.precision();
    let d = x.clone() - int(2);
    let l = ln_checked(&d, "x - 2")?;
    let inv = x.one_like().try_div(&d)?;
    let log_sq = Jet::new(
        l.square(),
        int(2) * l.clone() * inv.clone(),
        int(2) * (int(1) - l) * inv.square(),
    );
    let e = (x.clone() - int(3)).exp();
    let exp_m1 = Jet::new(e.clone() - int(1), e.clone(), e);
    let k = S::from_real(S::Real::pi(p)).try_div(&int(3))?;
    let kx = k.clone() * x.clone();
    let (s, c) = (kx.sin(), kx.cos());
    let sine = Jet::new(s.clone(), k.clone() * c, -(k.square() * s));
    Ok(log_sq.product(exp_m1).product(sine))
}

fn polynomial<S: Scalar>(coeffs: &[i64], x: &S) -> Jet<S> {
    let zero = x.zero_like();
    let (mut p, mut dp, mut d2p) = (zero.clone(), zero.clone(), zero);
    for &c in coeffs.iter().rev() {
        d2p = d2p * x.clone() + x.int(2) * dp.clone();
        dp = dp * x.clone() + p.clone();
        p = p * x.clone() + x.int(c);
    }
    Jet::new(p, dp, d2p)
}

fn build(
    name: &str,
    form: Form,
    m: u32,
    roots: Vec<Root>,
    start: &str,
    domain_note: &'static str,
    complex_plane: bool,
) -> Problem {
    Problem {
        name: name.to_string(),
        form,
        multiplicity: Multiplicity::new(m).expect("registry multiplicities are positive"),
        roots,
        default_start: start.to_string(),
        domain_note,
        complex_plane,
        has_second_derivative: true,
    }
}

fn unit_pair() -> Vec<Root> {
    vec![
        Root::complex(Surd::int(0), Surd::int(1)),
        Root::complex(Surd::int(0), Surd::int(-1)),
    ]
}

fn cube_roots_of_minus_one() -> Vec<Root> {
    vec![
        Root::real(Surd::int(-1)),
        Root::complex(Surd::ratio(1, 2), Surd::sqrt(3, 1, 2)),
        Root::complex(Surd::ratio(1, 2), Surd::sqrt(3, -1, 2)),
    ]
}

fn sixth_roots_of_minus_one() -> Vec<Root> {
    vec![
        Root::complex(Surd::sqrt(3, 1, 2), Surd::ratio(1, 2)),
        Root::complex(Surd::int(0), Surd::int(1)),
        Root::complex(Surd::sqrt(3, -1, 2), Surd::ratio(1, 2)),
        Root::complex(Surd::sqrt(3, -1, 2), Surd::ratio(-1, 2)),
        Root::complex(Surd::int(0), Surd::int(-1)),
        Root::complex(Surd::sqrt(3, 1, 2), Surd::ratio(-1, 2)),
    ]
}

/// All registered problems, in the order `f1..f5, p1, p2, p3, p1pow5,
/// p2pow3, p1pow2`.
pub fn problem_registry() -> Vec<Problem> {
    use Base::*;
    let pow = |base, power| Form::Powered { base, power };
    vec![
        build("f1", pow(LogExpSin, 6), 6, vec![Root::real(Surd::int(0))], "0.35", "entire on the reals", false),
        build("f2", pow(CubePlusLog, 7), 7, vec![Root::real(Surd::int(0))], "0.2", "requires x > -1", false),
        build("f3", Form::SexticLog, 3, vec![Root::real(Surd::sqrt(2, 1, 1))], "1.5", "requires x^6 > 7", false),
        build("f4", pow(LogQuadraticSin, 10), 10, vec![Root::real(Surd::int(1))], "1.2", "entire on the reals", false),
        build("f5", Form::LogExpSine, 4, vec![Root::real(Surd::int(3))], "3.2", "requires x > 2", false),
        build("p1", pow(ZPlusInverse, 1), 1, unit_pair(), "1+0.5i", "pole at 0", true),
        build("p2", pow(CubePlusOne, 1), 1, cube_roots_of_minus_one(), "1+1i", "entire", true),
        build("p3", pow(FifthPlusInverse, 1), 1, sixth_roots_of_minus_one(), "1+1i", "pole at 0", true),
        build("p1pow5", pow(ZPlusInverse, 5), 5, unit_pair(), "1+0.5i", "pole at 0", true),
        build("p2pow3", pow(CubePlusOne, 3), 3, cube_roots_of_minus_one(), "1+1i", "entire", true),
        build("p1pow2", pow(ZPlusInverse, 2), 2, unit_pair(), "1+0.5i", "pole at 0", true),
    ]
}

/// Registered problem names.
pub const PROBLEM_NAMES: [&str; 11] =
    ["f1", "f2", "f3", "f4", "f5", "p1", "p2", "p3", "p1pow5", "p2pow3", "p1pow2"];

/// Looks a registered problem up by its stable name.
pub fn lookup(name: &str) -> Option<Problem> {
    problem_registry().into_iter().find(|p| p.name == name)
}
