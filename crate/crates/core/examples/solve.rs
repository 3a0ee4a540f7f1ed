//! Iterates the modified Potra-Pták method on f3 at 100 digits and prints
//! each iterate with its error.

use multiroot::table::{format_error, format_order};
use multiroot::{lookup, run, BigReal, MethodKind, MethodSpec, Precision, Tolerances};

fn main() {
    let f3 = lookup("f3").expect("registered");
    let spec = MethodSpec::for_problem(MethodKind::ModifiedPotraPtak, &f3);
    let x0: BigReal = f3.start(Precision::Digits(100)).expect("valid literal");

    let report = run(&f3, &spec, x0, 4, Tolerances::DISABLED);
    let errors = report.trace.errors.as_ref().expect("root is known");
    for (n, (x, e)) in report.trace.iterates.iter().zip(errors).enumerate() {
        println!("x{n} = {:.30}  |x{n} - sqrt 2| = {}", x.to_f64(), format_error(e));
    }
    println!("stopped by {}", report.trace.termination.tag());
    if let (Some(coc), Some(acoc)) = (&report.coc, &report.acoc) {
        println!("COC {}  ACOC {}", format_order(coc), format_order(acoc));
    }
}
