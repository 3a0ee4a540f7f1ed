//! Classifies a handful of starting points for p2 = z^3 + 1 and prints the
//! per-root pixel counts of a small render.

use multiroot::basin::{classify_orbit, render, GridSpec};
use multiroot::{lookup, MethodKind, MethodSpec, Precision};
use num_complex::Complex64;

fn main() {
    let p2 = lookup("p2").expect("registered");
    let spec = MethodSpec::for_problem(MethodKind::PotraPtak, &p2);
    let roots: Vec<Complex64> = p2.roots(Precision::Double).expect("roots");
    for z0 in [Complex64::new(-1.0, 0.0), Complex64::new(2.0, 0.5), Complex64::new(0.0, 0.0), Complex64::new(-0.5, -2.0)] {
        println!("{z0:>10} -> {:?}", classify_orbit(&p2, &spec, &roots, z0, 100, 1e-3));
    }
    let img = render(&p2, &spec, GridSpec::default().with_size(64, 64).expect("size")).expect("complex problem");
    println!("{}: {}", img.file_name(), img.summary());
}
