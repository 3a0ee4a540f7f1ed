//! Estimates the order of every method on f1..f5: modified Newton should
//! show 2, the others 3. Potra-Pták without the multiplicity correction
//! drops to linear convergence on these multiple zeros.

use multiroot::table::format_order;
use multiroot::{lookup, run, BigReal, MethodKind, Precision, Tolerances};
use multiroot::MethodSpec;

fn main() {
    let precision = Precision::Digits(200);
    print!("{:8}", "");
    for kind in MethodKind::ALL {
        print!("{:>10}", kind.name());
    }
    println!();
    for name in ["f1", "f2", "f3", "f4", "f5"] {
        let p = lookup(name).expect("registered");
        print!("{name:8}");
        for kind in MethodKind::ALL {
            let x0: BigReal = p.start(precision).expect("valid literal");
            let steps = if kind == MethodKind::PotraPtak { 12 } else { 5 };
            let report = run(&p, &MethodSpec::for_problem(kind, &p), x0, steps, Tolerances::DISABLED);
            let coc = report.coc.as_ref().map_or("-".into(), format_order);
            print!("{coc:>10}");
        }
        println!();
    }
}
