//! Third-order iterative methods for multiple roots, with convergence-order
//! estimation and basin-of-attraction rendering.
//!
//! The crate is organised by capability:
//!
//! - [`scalar`]: the [`Scalar`] abstraction over `f64`, `Complex64` and MPFR/MPC
//!   numbers at a chosen decimal precision.
//! - [`problems`]: the registry of test functions with closed-form derivatives.
//! - [`methods`]: one-step maps (modified Newton, Potra-Pták and its multiple-root
//!   modification, Osada, Dong, Chun) and the asymptotic error constant.
//! - [`convergence`]: the iteration driver, COC and ACOC.
//! - [`table`]: the 5×4 error/COC/ACOC report.
//! - [`basin`]: basin-of-attraction rasters and PPM encoding.
//! - [`cli`]: the `multiroot` command line.

pub mod basin;
pub mod cli;
pub mod convergence;
pub mod methods;
pub mod problems;
pub mod scalar;
pub mod table;

pub use convergence::{iterate, run, ConvergenceReport, IterationTrace, Termination, Tolerances};
pub use methods::{step, DongSign, MethodKind, MethodSpec};
pub use problems::{lookup, problem_registry, Multiplicity, Problem};
pub use scalar::{BigComplex, BigReal, Precision, Real, Scalar};
