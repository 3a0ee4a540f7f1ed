//! Field elements the iteration schemes are generic over.
//!
//! Four backends implement [`Scalar`]:
//!
//! * `f64` and [`Complex64`] at hardware double precision, used by the basin
//!   renderer where a `1e-3` tolerance makes extra digits pointless;
//! * [`BigReal`] and [`BigComplex`] (MPFR / MPC values) at a configurable
//!   number of decimal digits, used for the convergence tables.
//!
//! High-precision values carry their precision with them, so constants are
//! always created "next to" an existing value (see [`Scalar::int`]).

use std::f64::consts::LOG2_10;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use rug::float::Constant;
use rug::{Complex, Float};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision real (MPFR).
pub type BigReal = Float;
/// Arbitrary-precision complex (MPC).
pub type BigComplex = Complex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("malformed numeric literal `{0}`")]
    Parse(String),
    #[error("`{0}` has a nonzero imaginary part but the scalar type is real")]
    NotReal(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is outside the real domain")]
    Domain(&'static str),
}

/// Working precision of a scalar backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    /// IEEE binary64.
    Double,
    /// Significand wide enough for this many significant decimal digits.
    Digits(u32),
}

impl Precision {
    /// Precision used for the convergence tables.
    pub const TABLE_DEFAULT: Precision = Precision::Digits(100);

    pub fn bits(self) -> u32 {
        match self {
            Precision::Double => 53,
            Precision::Digits(d) => (f64::from(d) * LOG2_10).ceil() as u32,
        }
    }

    pub fn decimal_digits(self) -> u32 {
        match self {
            Precision::Double => 15,
            Precision::Digits(d) => d,
        }
    }

    fn from_bits(bits: u32) -> Precision {
        Precision::Digits((f64::from(bits) / LOG2_10).floor() as u32)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precision::Double => f.write_str("double"),
            Precision::Digits(d) => write!(f, "{d}"),
        }
    }
}

impl FromStr for Precision {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("double") {
            return Ok(Precision::Double);
        }
        match s.parse::<u32>() {
            Ok(d) if d >= 1 => Ok(Precision::Digits(d)),
            _ => Err(ScalarError::Parse(s.to_string())),
        }
    }
}

/// A real or complex field element.
///
/// Arithmetic operators consume their operands; division is only available
/// through [`Scalar::try_div`] so that an exact zero divisor is reported
/// instead of producing an infinity.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// The real type of moduli, real parts and coefficients.
    type Real: Real;

    const IS_COMPLEX: bool;

    /// Parses a signed decimal (`"-1.25e-3"`) or complex (`"-3+3i"`) literal,
    /// rounding to nearest at `precision`.
    fn parse(text: &str, precision: Precision) -> Result<Self, ScalarError>;

    fn precision(&self) -> Precision;

    fn from_real(re: Self::Real) -> Self;

    /// `None` when `im != 0` and `Self` is real.
    fn from_parts(re: Self::Real, im: Self::Real) -> Option<Self>;

    fn re(&self) -> Self::Real;

    fn im(&self) -> Self::Real;

    /// Modulus.
    fn abs(&self) -> Self::Real;

    /// Multiplication by a real factor.
    fn scale(&self, k: &Self::Real) -> Self;

    fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError>;

    fn exp(&self) -> Self;

    fn sin(&self) -> Self;

    fn cos(&self) -> Self;

    /// Natural (principal) logarithm; zero, and for real types any
    /// non-positive argument, is a domain error.
    fn ln(&self) -> Result<Self, ScalarError>;

    fn sqrt(&self) -> Result<Self, ScalarError>;

    fn is_zero(&self) -> bool;

    fn is_finite(&self) -> bool;

    /// The integer `n` at the precision of `self`.
    fn int(&self, n: i64) -> Self {
        Self::from_real(<Self::Real as Real>::from_int(i128::from(n), self.precision()))
    }

    fn zero_like(&self) -> Self {
        self.int(0)
    }

    fn one_like(&self) -> Self {
        self.int(1)
    }

    /// `self^n` by repeated squaring; `x^0 = 1` for every `x`, including 0.
    fn powi(&self, n: u32) -> Self {
        let mut result = self.one_like();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result * base.clone();
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * base;
            }
        }
        result
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    /// Conversion to hardware double (real part first, imaginary part second).
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re().to_f64(), self.im().to_f64())
    }
}

/// Ordered real scalars.
pub trait Real: Scalar<Real = Self> + PartialOrd {
    fn from_int(n: i128, precision: Precision) -> Self;

    fn from_f64(v: f64, precision: Precision) -> Self;

    fn to_f64(&self) -> f64;

    fn pi(precision: Precision) -> Self;

    /// `num / den`, rounded at `precision`.
    fn ratio(num: i128, den: i128, precision: Precision) -> Self {
        let n = Self::from_int(num, precision);
        let d = Self::from_int(den, precision);
        n.try_div(&d).expect("nonzero denominator")
    }

    /// `10^k` at `precision`, for `k` of either sign.
    fn pow10(k: i32, precision: Precision) -> Self {
        let ten = Self::from_int(10, precision);
        let p = ten.powi(k.unsigned_abs());
        if k >= 0 {
            p
        } else {
            p.int(1).try_div(&p).expect("nonzero power of ten")
        }
    }
}

/// Splits a literal into its real and imaginary decimal parts.
fn split_complex_literal(text: &str) -> Result<(String, Option<String>), ScalarError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(ScalarError::Parse(text.to_string()));
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return Ok((t, None));
    };
    // the split is the last sign that is neither leading nor an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (body[..k].to_string(), body[k..].to_string()),
        None => ("0".to_string(), body.to_string()),
    };
    let im = match im.as_str() {
        "" | "+" => "1".to_string(),
        "-" => "-1".to_string(),
        _ => im,
    };
    Ok((re, Some(im)))
}

fn parse_f64(text: &str, whole: &str) -> Result<f64, ScalarError> {
    let v: f64 = text.parse().map_err(|_| ScalarError::Parse(whole.to_string()))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ScalarError::Parse(whole.to_string()))
    }
}

fn parse_float(text: &str, whole: &str, bits: u32) -> Result<Float, ScalarError> {
    let parsed = Float::parse(text).map_err(|_| ScalarError::Parse(whole.to_string()))?;
    let v = Float::with_val(bits, parsed);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(ScalarError::Parse(whole.to_string()))
    }
}

impl Scalar for f64 {
    type Real = f64;
    const IS_COMPLEX: bool = false;

    fn parse(text: &str, _precision: Precision) -> Result<Self, ScalarError> {
        match split_complex_literal(text)? {
            (re, None) => parse_f64(&re, text),
            (re, Some(im)) => {
                if parse_f64(&im, text)? != 0.0 {
                    return Err(ScalarError::NotReal(text.to_string()));
                }
                parse_f64(&re, text)
            }
        }
    }

    fn precision(&self) -> Precision {
        Precision::Double
    }

    fn from_real(re: f64) -> Self {
        re
    }

    fn from_parts(re: f64, im: f64) -> Option<Self> {
        (im == 0.0).then_some(re)
    }

    fn re(&self) -> f64 {
        *self
    }

    fn im(&self) -> f64 {
        0.0
    }

    fn abs(&self) -> f64 {
        f64::abs(*self)
    }

    fn scale(&self, k: &f64) -> Self {
        self * k
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if *rhs == 0.0 {
            Err(ScalarError::DivisionByZero)
        } else {
            Ok(self / rhs)
        }
    }

    fn exp(&self) -> Self {
        f64::exp(*self)
    }

    fn sin(&self) -> Self {
        f64::sin(*self)
    }

    fn cos(&self) -> Self {
        f64::cos(*self)
    }

    fn ln(&self) -> Result<Self, ScalarError> {
        if *self > 0.0 {
            Ok(f64::ln(*self))
        } else {
            Err(ScalarError::Domain("logarithm argument"))
        }
    }

    fn sqrt(&self) -> Result<Self, ScalarError> {
        if *self >= 0.0 {
            Ok(f64::sqrt(*self))
        } else {
            Err(ScalarError::Domain("square-root argument"))
        }
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Real for f64 {
    fn from_int(n: i128, _precision: Precision) -> Self {
        n as f64
    }

    fn from_f64(v: f64, _precision: Precision) -> Self {
        v
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn pi(_precision: Precision) -> Self {
        std::f64::consts::PI
    }
}

impl Scalar for Complex64 {
    type Real = f64;
    const IS_COMPLEX: bool = true;

    fn parse(text: &str, _precision: Precision) -> Result<Self, ScalarError> {
        let (re, im) = split_complex_literal(text)?;
        let re = parse_f64(&re, text)?;
        let im = match im {
            Some(im) => parse_f64(&im, text)?,
            None => 0.0,
        };
        Ok(Complex64::new(re, im))
    }

    fn precision(&self) -> Precision {
        Precision::Double
    }

    fn from_real(re: f64) -> Self {
        Complex64::new(re, 0.0)
    }

    fn from_parts(re: f64, im: f64) -> Option<Self> {
        Some(Complex64::new(re, im))
    }

    fn re(&self) -> f64 {
        self.re
    }

    fn im(&self) -> f64 {
        self.im
    }

    fn abs(&self) -> f64 {
        self.norm()
    }

    fn scale(&self, k: &f64) -> Self {
        Complex64::new(self.re * k, self.im * k)
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.re == 0.0 && rhs.im == 0.0 {
            return Err(ScalarError::DivisionByZero);
        }
        let n = rhs.re * rhs.re + rhs.im * rhs.im;
        Ok(Complex64::new(
            (self.re * rhs.re + self.im * rhs.im) / n,
            (self.im * rhs.re - self.re * rhs.im) / n,
        ))
    }

    fn exp(&self) -> Self {
        Complex64::exp(*self)
    }

    fn sin(&self) -> Self {
        Complex64::sin(*self)
    }

    fn cos(&self) -> Self {
        Complex64::cos(*self)
    }

    fn ln(&self) -> Result<Self, ScalarError> {
        if Scalar::is_zero(self) {
            Err(ScalarError::Domain("logarithm argument"))
        } else {
            Ok(Complex64::ln(*self))
        }
    }

    fn sqrt(&self) -> Result<Self, ScalarError> {
        Ok(Complex64::sqrt(*self))
    }

    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

impl Scalar for Float {
    type Real = Float;
    const IS_COMPLEX: bool = false;

    fn parse(text: &str, precision: Precision) -> Result<Self, ScalarError> {
        let bits = precision.bits();
        match split_complex_literal(text)? {
            (re, None) => parse_float(&re, text, bits),
            (re, Some(im)) => {
                if !parse_float(&im, text, bits)?.is_zero() {
                    return Err(ScalarError::NotReal(text.to_string()));
                }
                parse_float(&re, text, bits)
            }
        }
    }

    fn precision(&self) -> Precision {
        Precision::from_bits(self.prec())
    }

    fn from_real(re: Float) -> Self {
        re
    }

    fn from_parts(re: Float, im: Float) -> Option<Self> {
        im.is_zero().then_some(re)
    }

    fn re(&self) -> Float {
        self.clone()
    }

    fn im(&self) -> Float {
        Float::new(self.prec())
    }

    fn abs(&self) -> Float {
        self.clone().abs()
    }

    fn scale(&self, k: &Float) -> Self {
        let mut out = self.clone();
        out *= k;
        out
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        let mut out = self.clone();
        out /= rhs;
        Ok(out)
    }

    fn exp(&self) -> Self {
        self.clone().exp()
    }

    fn sin(&self) -> Self {
        self.clone().sin()
    }

    fn cos(&self) -> Self {
        self.clone().cos()
    }

    fn ln(&self) -> Result<Self, ScalarError> {
        if self.is_sign_positive() && !self.is_zero() {
            Ok(self.clone().ln())
        } else {
            Err(ScalarError::Domain("logarithm argument"))
        }
    }

    fn sqrt(&self) -> Result<Self, ScalarError> {
        if self.is_sign_negative() && !self.is_zero() {
            Err(ScalarError::Domain("square-root argument"))
        } else {
            Ok(self.clone().sqrt())
        }
    }

    fn is_zero(&self) -> bool {
        Float::is_zero(self)
    }

    fn is_finite(&self) -> bool {
        Float::is_finite(self)
    }
}

impl Real for Float {
    fn from_int(n: i128, precision: Precision) -> Self {
        Float::with_val(precision.bits(), n)
    }

    fn from_f64(v: f64, precision: Precision) -> Self {
        Float::with_val(precision.bits(), v)
    }

    fn to_f64(&self) -> f64 {
        Float::to_f64(self)
    }

    fn pi(precision: Precision) -> Self {
        Float::with_val(precision.bits(), Constant::Pi)
    }
}

impl Scalar for Complex {
    type Real = Float;
    const IS_COMPLEX: bool = true;

    fn parse(text: &str, precision: Precision) -> Result<Self, ScalarError> {
        let bits = precision.bits();
        let (re, im) = split_complex_literal(text)?;
        let re = parse_float(&re, text, bits)?;
        let im = match im {
            Some(im) => parse_float(&im, text, bits)?,
            None => Float::new(bits),
        };
        Ok(Complex::with_val(bits, (re, im)))
    }

    fn precision(&self) -> Precision {
        Precision::from_bits(self.real().prec())
    }

    fn from_real(re: Float) -> Self {
        let bits = re.prec();
        Complex::with_val(bits, (re, Float::new(bits)))
    }

    fn from_parts(re: Float, im: Float) -> Option<Self> {
        let bits = re.prec().max(im.prec());
        Some(Complex::with_val(bits, (re, im)))
    }

    fn re(&self) -> Float {
        self.real().clone()
    }

    fn im(&self) -> Float {
        self.imag().clone()
    }

    fn abs(&self) -> Float {
        Float::with_val(self.real().prec(), self.abs_ref())
    }

    fn scale(&self, k: &Float) -> Self {
        let mut out = self.clone();
        out *= k;
        out
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        if Scalar::is_zero(rhs) {
            return Err(ScalarError::DivisionByZero);
        }
        let mut out = self.clone();
        out /= rhs;
        Ok(out)
    }

    fn exp(&self) -> Self {
        self.clone().exp()
    }

    fn sin(&self) -> Self {
        self.clone().sin()
    }

    fn cos(&self) -> Self {
        self.clone().cos()
    }

    fn ln(&self) -> Result<Self, ScalarError> {
        if Scalar::is_zero(self) {
            Err(ScalarError::Domain("logarithm argument"))
        } else {
            Ok(self.clone().ln())
        }
    }

    fn sqrt(&self) -> Result<Self, ScalarError> {
        Ok(self.clone().sqrt())
    }

    fn is_zero(&self) -> bool {
        self.real().is_zero() && self.imag().is_zero()
    }

    fn is_finite(&self) -> bool {
        self.real().is_finite() && self.imag().is_finite()
    }
}

/// Parses `text` at `precision`; see [`Scalar::parse`].
pub fn make_scalar<S: Scalar>(text: &str, precision: Precision) -> Result<S, ScalarError> {
    S::parse(text, precision)
}

/// `max(1, |x|)`, the scale against which "negligible" is judged.
pub fn unit_scale<S: Scalar>(x: &S) -> S::Real {
    let a = x.abs();
    let one = a.int(1);
    if a > one {
        a
    } else {
        one
    }
}

/// Whether `value` exceeds the rounding noise of numbers of magnitude `scale`
/// at `precision`: `value > scale * 10^(5 - digits)`.
pub fn is_resolvable<R: Real>(value: &R, scale: &R, precision: Precision) -> bool {
    let digits = precision.decimal_digits() as i32;
    let floor = scale.clone() * R::pow10(5 - digits, precision);
    *value > floor
}
