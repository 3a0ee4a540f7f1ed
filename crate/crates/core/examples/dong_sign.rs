//! The two readings of Dong's first substep on f(x) = x^2 and on f3.

use multiroot::table::format_order;
use multiroot::{lookup, run, step, BigReal, DongSign, MethodKind, MethodSpec, Multiplicity, Precision, Problem, Tolerances};

fn main() {
    let square = Problem::pure_power(Multiplicity::new(2).expect("m >= 1"));
    let f3 = lookup("f3").expect("registered");
    for sign in [DongSign::CorrectedMinus, DongSign::AsPrintedPlus] {
        let spec = MethodSpec::new(MethodKind::Dong, square.multiplicity()).with_dong_sign(sign);
        let next = step(&square, &spec, &1.0f64).map(|o| o.next);
        println!("{:>5}: x^2 from 1 -> {next:?}", sign.name());

        let spec = MethodSpec::for_problem(MethodKind::Dong, &f3).with_dong_sign(sign);
        let x0: BigReal = f3.start(Precision::Digits(100)).expect("valid literal");
        let report = run(&f3, &spec, x0, 6, Tolerances::DISABLED);
        let coc = report.coc.as_ref().map_or("-".into(), format_order);
        println!("{:>5}: f3 from 1.5 -> {} after 6 steps, COC {coc}", sign.name(), report.trace.termination.tag());
    }
}
