//! The same run on each scalar backend: f64, Complex64, and MPFR/MPC at
//! several precisions.

use multiroot::table::format_error;
use multiroot::{iterate, lookup, BigComplex, BigReal, MethodKind, MethodSpec, Precision, Scalar, Tolerances};
use num_complex::Complex64;
use rug::Float;

fn last_error<S: Scalar>(x0: S) -> String {
    let p = lookup("f2").expect("registered");
    let trace = iterate(&p, &MethodSpec::for_problem(MethodKind::ModifiedPotraPtak, &p), x0, 3, Tolerances::DISABLED);
    let e = trace.errors.expect("root is known").pop().expect("nonempty");
    format_error(&Float::with_val(64, e.to_c64().re.max(f64::MIN_POSITIVE)))
        + &format!("  ({})", trace.termination.tag())
}

fn main() {
    println!("f64        {}", last_error(0.2f64));
    println!("Complex64  {}", last_error(Complex64::new(0.2, 0.0)));
    for digits in [30, 100, 300] {
        let p = Precision::Digits(digits);
        let x: BigReal = Scalar::parse("0.2", p).expect("literal");
        let z: BigComplex = Scalar::parse("0.2", p).expect("literal");
        println!("{digits:>3} digits {}   complex {}", last_error(x), last_error(z));
    }
}
