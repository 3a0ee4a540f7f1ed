//! A user-defined polynomial with a triple root at 1 and a simple root at -2:
//! (x - 1)^3 (x + 2) = x^4 - x^3 - 3x^2 + 5x - 2.

use multiroot::problems::{Root, Surd};
use multiroot::table::{format_error, format_order};
use multiroot::{run, BigReal, MethodKind, MethodSpec, Multiplicity, Precision, Problem, Tolerances};

fn main() {
    let p = Problem::polynomial(
        "cubed",
        vec![-2, 5, -3, -1, 1],
        Multiplicity::new(3).expect("m >= 1"),
        vec![Root::real(Surd::int(1)), Root::real(Surd::int(-2))],
        "1.1",
    );
    for kind in MethodKind::ALL {
        let x0: BigReal = p.start(Precision::Digits(300)).expect("literal");
        let report = run(&p, &MethodSpec::for_problem(kind, &p), x0, 3, Tolerances::DISABLED);
        let errors = report.trace.errors.as_ref().expect("roots known");
        println!(
            "{:>8}: |x3 - 1| = {:>10}  COC {}",
            kind.name(),
            format_error(errors.last().expect("nonempty")),
            report.coc.as_ref().map_or("-".into(), format_order)
        );
    }
}
