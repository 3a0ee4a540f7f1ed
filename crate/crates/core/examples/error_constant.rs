//! Compares the asymptotic error constant C of the modified Potra-Pták
//! method with the observed ratio (x_{n+1} - r) / (x_n - r)^3.

use multiroot::methods::{real_error_constant, TaylorContour};
use multiroot::scalar::{is_resolvable, unit_scale};
use multiroot::{iterate, lookup, BigReal, MethodKind, MethodSpec, Precision, Scalar, Tolerances};

fn main() {
    let precision = Precision::Digits(100);
    for name in ["f1", "f2", "f3", "f4", "f5"] {
        let p = lookup(name).expect("registered");
        let c = real_error_constant(&p, 0, precision, TaylorContour::default()).expect("consistent multiplicity");
        let x0: BigReal = p.start(precision).expect("valid literal");
        let trace = iterate(&p, &MethodSpec::for_problem(MethodKind::ModifiedPotraPtak, &p), x0, 4, Tolerances::DISABLED);
        let root = trace.root.clone().expect("known root");
        let e: Vec<BigReal> = trace.iterates.iter().map(|x| x.clone() - root.clone()).collect();
        let n = (1..e.len())
            .rev()
            .find(|&n| is_resolvable(&Scalar::abs(&e[n]), &unit_scale(&root), precision))
            .expect("resolvable error");
        let ratio = e[n].clone() / e[n - 1].powi(3);
        println!("{name}: C = {:>14.9}   e{n}/e{}^3 = {:>14.9}", c.to_f64(), n - 1, ratio.to_f64());
    }
}
