//! With m = 1 the multiplicity-aware methods collapse to their simple-root
//! parents: mpp to Potra-Pták, and all of them take a Newton-like first substep.

use multiroot::{iterate, lookup, MethodKind, MethodSpec, Multiplicity, Tolerances};
use num_complex::Complex64;

fn main() {
    let p1 = lookup("p1").expect("registered");
    let one = Multiplicity::new(1).expect("m >= 1");
    let z0 = Complex64::new(0.7, -1.3);
    let pp = iterate(&p1, &MethodSpec::new(MethodKind::PotraPtak, one), z0, 8, Tolerances::DISABLED);
    let mpp = iterate(&p1, &MethodSpec::new(MethodKind::ModifiedPotraPtak, one), z0, 8, Tolerances::DISABLED);
    for (n, (a, b)) in pp.iterates.iter().zip(&mpp.iterates).enumerate() {
        println!("{n}: pp {a:.15}  mpp {b:.15}  identical={}", a == b);
    }
}
