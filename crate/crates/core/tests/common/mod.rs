#![allow(dead_code)]

use multiroot::scalar::Precision;
use multiroot::{lookup, Problem, Scalar};
use rug::{Complex, Float};

pub const DIGITS: Precision = Precision::Digits(100);

pub const TABLE_METHODS: [&str; 4] = ["mpp", "osada", "dong", "chun"];

/// Printed table: per problem, rows |x1-x*|, |x2-x*|, |x3-x*| by method,
/// then COC and ACOC by method.
pub struct PrintedRow {
    pub problem: &'static str,
    pub errors: [[&'static str; 4]; 3],
    pub coc: [f64; 4],
    pub acoc: [f64; 4],
}

pub const PRINTED: [PrintedRow; 5] = [
    PrintedRow {
        problem: "f1",
        errors: [
            ["0.656e-1", "0.678e-1", "0.552e-1", "0.736e-1"],
            ["0.128e-2", "0.178e-2", "0.511e-3", "0.118e-2"],
            ["0.696e-8", "0.247e-7", "0.273e-9", "0.186e-8"],
        ],
        coc: [3.0000, 3.0000, 3.0002, 3.0020],
        acoc: [3.1010, 3.0997, 3.0914, 3.2527],
    },
    PrintedRow {
        problem: "f2",
        errors: [
            ["0.880e-2", "0.792e-4", "0.122e-4", "0.987e-4"],
            ["0.417e-6", "0.139e-15", "0.742e-19", "0.340e-15"],
            ["0.481e-19", "0.918e-39", "0.918e-39", "0.918e-39"],
        ],
        coc: [3.0000; 4],
        acoc: [2.9921, 3.0000, 3.0000, 3.0000],
    },
    PrintedRow {
        problem: "f3",
        errors: [
            ["0.328e-2", "0.414e-2", "0.236e-2", "0.422e-2"],
            ["0.914e-6", "0.247e-5", "0.200e-6", "0.591e-5"],
            ["0.184e-17", "0.491e-15", "0.117e-16", "0.129e-16"],
        ],
        coc: [3.0000; 4],
        acoc: [3.0085, 3.0067, 3.0051, 3.0339],
    },
    PrintedRow {
        problem: "f4",
        errors: [
            ["0.102e-2", "0.182e-2", "0.126e-2", "0.102e-2"],
            ["0.583e-10", "0.175e-8", "0.393e-9", "0.583e-10"],
            ["0.107e-31", "0.155e-26", "0.119e-29", "0.107e-31"],
        ],
        coc: [3.0000; 4],
        acoc: [3.0003, 2.9998, 2.9999, 3.0003],
    },
    PrintedRow {
        problem: "f5",
        errors: [
            ["0.126e-3", "0.144e-3", "0.890e-4", "0.253e-3"],
            ["0.572e-13", "0.106e-12", "0.132e-13", "0.905e-12"],
            ["0.531e-41", "0.424e-40", "0.493e-43", "0.414e-37"],
        ],
        coc: [3.0000; 4],
        acoc: [3.0003, 3.0000, 3.0000, 3.0000],
    },
];

/// Independent high-precision reference: (problem, method, |x1-x*|..|x3-x*|, COC, ACOC).
pub const ORACLE: [(&str, &str, [f64; 3], f64, f64); 20] = [
    ("f1", "mpp", [0.0656106241756, 0.00128781175645, 6.96131812674e-9], 3.00094525479, 3.10103743356),
    ("f1", "osada", [0.0678538951419, 0.00178898923593, 2.47884570296e-8], 3.00130445464, 3.09968607976),
    ("f1", "dong", [0.0552311480892, 0.000511798958462, 2.73252270816e-10], 3.00036762534, 3.09137816618),
    ("f1", "chun", [0.073654040631, 0.00118730464182, 1.84797058317e-9], 3.00257922726, 3.25265488447),
    ("f2", "mpp", [0.00880917034066, 4.17697353173e-7, 4.81504552898e-20], 3.00000011834, 2.99213238522),
    ("f2", "osada", [0.0100224660938, 6.82014209723e-7, 2.37927344759e-19], 3.00000022676, 2.98937344155),
    ("f2", "dong", [0.00657288070045, 1.36094359064e-7, 1.26444818085e-21], 3.00000002829, 2.99576535386),
    ("f2", "chun", [0.0103889292945, 9.6741754256e-7, 8.29957111264e-19], 3.00000019361, 2.99344243974),
    ("f3", "mpp", [0.00328505531688, 9.14947592624e-7, 1.84191693683e-17], 2.99999919462, 3.0085293012),
    ("f3", "osada", [0.00417691822768, 2.47848881971e-6, 4.91626640104e-16], 2.99999835661, 3.00674687085),
    ("f3", "dong", [0.00236363837655, 2.00978795191e-7, 1.1774755848e-19], 2.99999985435, 3.00510879037),
    ("f3", "chun", [0.00422460426878, 5.91562373959e-6, 1.29431864899e-14], 2.99998500326, 3.03390554011),
    ("f4", "mpp", [0.00164848396366, 1.15927322821e-9, 4.04291658603e-28], 2.99999999995, 2.99980418681),
    ("f4", "osada", [0.0018255725534, 1.75192538805e-9, 1.55337980932e-27], 2.99999999992, 2.99976548668),
    ("f4", "dong", [0.00126321051858, 3.93879398784e-10, 1.19621595924e-29], 2.99999999999, 2.99987960236),
    ("f4", "chun", [0.00181829432481, 1.70516388002e-9, 1.4102490906e-27], 2.99999999994, 2.99979716675),
    ("f5", "mpp", [0.000126599852267, 5.72992267371e-14, 5.31086758192e-42], 3.00001390954, 3.00001390948),
    ("f5", "osada", [0.000144903813564, 1.06639892446e-13, 4.248938805e-41], 3.000017395, 3.00001739489),
    ("f5", "dong", [8.90017381101e-5, 1.32711819596e-14, 4.39902815904e-44], 3.00000877312, 3.0000087731),
    ("f5", "chun", [0.000252997768136, 9.05343530957e-13, 4.14589216064e-38], 3.00003380645, 3.0000338059),
];

pub fn problem(name: &str) -> Problem {
    lookup(name).unwrap_or_else(|| panic!("{name} is registered"))
}

pub fn float(x: f64) -> Float {
    Float::with_val(DIGITS.bits(), x)
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Central difference of `g` at `x` with step `h`.
pub fn central<S: Scalar>(g: impl Fn(&S) -> S, x: &S, h: &S) -> S {
    let two = x.int(2);
    (g(&(x.clone() + h.clone())) - g(&(x.clone() - h.clone())))
        .try_div(&(two * h.clone()))
        .expect("nonzero step")
}

/// Points used for derivative cross-checks, inside each problem's domain.
pub fn sample_points(name: &str) -> Vec<&'static str> {
    match name {
        "f1" => vec!["-0.7", "0.35", "1.3"],
        "f2" => vec!["-0.5", "0.2", "2.0"],
        "f3" => vec!["1.45", "1.5", "2.1"],
        "f4" => vec!["0.4", "1.2", "2.5"],
        "f5" => vec!["2.5", "3.2", "4.1"],
        _ => vec!["1+0.5i", "-0.7+1.1i", "0.3-2i"],
    }
}

/// Multiplicity certificate at `root`: the slope of log|f(r+t)| against
/// log t between t = 1e-3 and 1e-4 (tends to m), and |f(r+t)|/t^m at
/// t = 1e-4 and 1e-5 (tends to a nonzero constant).
pub fn certificate(p: &Problem, root: &Complex) -> (f64, f64, f64) {
    let at = |t: f64| {
        let z = root.clone() + Complex::with_val(DIGITS.bits(), (t, 0));
        Scalar::abs(&p.f(&z).expect("near root")).to_f64()
    };
    let m = p.multiplicity().m() as i32;
    let slope = (at(1e-3).ln() - at(1e-4).ln()) / (1e-3f64.ln() - 1e-4f64.ln());
    (slope, at(1e-4) / 1e-4f64.powi(m), at(1e-5) / 1e-5f64.powi(m))
}

/// Whether a certificate is consistent with multiplicity `m`.
pub fn certificate_holds((slope, q4, q5): (f64, f64, f64), m: u32) -> bool {
    (slope - f64::from(m)).abs() < 0.05 && q4.is_finite() && q5 > 0.0 && (q4 / q5 - 1.0).abs() < 0.1
}

/// Self-regression pins for the 256x256 figure panels: (problem, method, sha256 of the PPM, diverged pixels).
pub const BASIN_PINS: [(&str, &str, &str, usize); 15] = [
    ("p1", "pp", "5eab3d23c576ea446759f14517aa918bd0a944cd479f48c6baae244b6a11ce45", 0),
    ("p2", "pp", "3983627e9f90c14b137a284513d0f63760f033e4642e9bb58e790bf9dc1f05a4", 0),
    ("p3", "pp", "440a84013963702530d56de8045c31f8cd40b9d1203b1cebe580324351b501c8", 0),
    ("p1pow5", "mpp", "e5bc9ad3f24bfe07a50e8130e75f347e0a943cebcdb0e258c4843b2a73286873", 0),
    ("p2pow3", "mpp", "e5f7d9e5fcb7bd738f162aaa19b7f453aebeee6d2d117cce146b3b7ee0e59597", 80),
    ("p1pow2", "mpp", "74c5322f54f5a85a34efa3010548c1b88dfbae994e69bd52d7990a49ef07ceab", 48),
    ("p1pow5", "osada", "305941f8c5298518224a41ad9c66dd99c15d7ba8951d25ead9ee3c0be62f652b", 0),
    ("p2pow3", "osada", "a2d66096f9cdba4818c231e156b5989a201b5393676559e271f1e7a14f54d326", 0),
    ("p1pow2", "osada", "4ba9ce9c95c884c96a034ab35af7d1a3bd9416e5ce11d923ce9f8f5adb0e62c5", 0),
    ("p1pow5", "dong", "adf3e4689058fa154d961be55f24ad6bfd8fe1553cb1f64acd290610754df6e1", 4),
    ("p2pow3", "dong", "3552e53f2d7cdf90c8e5b6d6d158ecc7228b634a6cd1b4802591b8cee9819282", 116),
    ("p1pow2", "dong", "91bcb5ef4ebced07e0b5e26540fe07e337ea6cc5c9f2b180607c0d73b4c3174e", 0),
    ("p1pow5", "chun", "cf9ab77499ce127bf7ac083399df393dd68e88a5bb93ce8550cd3ff8e2a9a622", 0),
    ("p2pow3", "chun", "3c9c7b6bef8c06710671d4a5084988c1cff9dcbfef758c53716b60fc35a13db5", 0),
    ("p1pow2", "chun", "f20d4a08ed19e456fc047f11a109c83eb891c4b983002fab9b26ee6761099552", 0),
];
