mod common;

use common::*;
use multiroot::convergence::{iterate, run};
use multiroot::scalar::Precision;
use multiroot::table::{format_error, format_order, table1, table1_filtered, to_f64, TABLE_PROBLEMS};
use multiroot::{MethodKind, MethodSpec, Tolerances};
use rug::Float;

#[test]
fn every_cell_matches_the_independent_oracle() {
    let report = table1(DIGITS);
    assert!(report.all_complete());
    assert_eq!(report.cells.len(), 20);
    for (name, method, errors, coc, acoc) in ORACLE {
        let cell = report.cell(name, method.parse().unwrap()).unwrap();
        for (k, want) in errors.iter().enumerate() {
            let got = to_f64(&cell.errors[k]);
            assert!(rel_diff(got, *want) < 1e-9, "{name}/{method} x{}: {got:e} vs {want:e}", k + 1);
        }
        let got_coc = to_f64(cell.coc.as_ref().unwrap());
        let got_acoc = to_f64(cell.acoc.as_ref().unwrap());
        assert!((got_coc - coc).abs() < 1e-9, "{name}/{method} COC {got_coc} vs {coc}");
        assert!((got_acoc - acoc).abs() < 1e-9, "{name}/{method} ACOC {got_acoc} vs {acoc}");
    }
}

#[test]
fn reproducible_printed_cells() {
    let report = table1(DIGITS);
    let cell = |p: &str, m: MethodKind| report.cell(p, m).unwrap();
    let mpp = MethodKind::ModifiedPotraPtak;
    assert_eq!(cell("f5", mpp).error_text(2), "0.572e-13");
    assert_eq!(cell("f5", mpp).error_text(3), "0.531e-41");
    assert_eq!(cell("f5", MethodKind::Chun).error_text(1), "0.253e-3");
    assert_eq!(cell("f2", mpp).acoc_text(), "2.9921");
    assert_eq!(cell("f1", mpp).acoc_text(), "3.1010");
    assert_eq!(cell("f1", MethodKind::Osada).acoc_text(), "3.0997");
    assert_eq!(cell("f3", mpp).acoc_text(), "3.0085");
    assert_eq!(cell("f3", MethodKind::Chun).acoc_text(), "3.0339");
    for row in &PRINTED[..1] {
        for (j, m) in TABLE_METHODS.iter().enumerate().take(3) {
            let c = cell(row.problem, m.parse().unwrap());
            for i in 0..3 {
                assert_eq!(c.error_text(i + 1), row.errors[i][j]);
            }
        }
    }
}

#[test]
fn iterate_examples() {
    let f1 = problem("f1");
    let spec = MethodSpec::for_problem(MethodKind::ModifiedPotraPtak, &f1);
    let x0: Float = f1.start(DIGITS).unwrap();
    let trace = iterate(&f1, &spec, x0, 3, Tolerances::DISABLED);
    let shown: Vec<String> = trace.errors.unwrap().iter().map(format_error).collect();
    assert_eq!(shown, ["0.350e0", "0.656e-1", "0.128e-2", "0.696e-8"]);

    let f3 = problem("f3");
    let spec = MethodSpec::for_problem(MethodKind::Dong, &f3);
    let x0: Float = f3.start(DIGITS).unwrap();
    let report = run(&f3, &spec, x0, 3, Tolerances::DISABLED);
    let shown: Vec<String> = report.trace.errors.as_ref().unwrap().iter().map(format_error).collect();
    assert_eq!(shown[1..], ["0.236e-2", "0.200e-6", "0.117e-18"]);
    assert_eq!(format_order(report.coc.as_ref().unwrap()), "3.0051");
    let x0: Float = f3.start(DIGITS).unwrap();
    let report = run(&f3, &spec, x0, 4, Tolerances::DISABLED);
    assert_eq!(format_order(report.coc.as_ref().unwrap()), "3.0000");
}

#[test]
fn sixty_digits_agree_with_one_hundred() {
    let hi = table1(DIGITS);
    let lo = table1(Precision::Digits(60));
    for (a, b) in hi.cells.iter().zip(&lo.cells) {
        assert_eq!((&a.problem, a.method), (&b.problem, b.method));
        for (x, y) in a.errors.iter().zip(&b.errors) {
            if to_f64(x) > 1e-50 {
                assert_eq!(format_error(x), format_error(y), "{}/{}", a.problem, a.method);
            }
        }
    }
}

#[test]
fn report_is_order_deterministic() {
    let a = table1_filtered(Precision::Digits(60), &TABLE_PROBLEMS, &MethodKind::TABLE).unwrap();
    let b = table1_filtered(Precision::Digits(60), &TABLE_PROBLEMS, &MethodKind::TABLE).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.to_text(), b.to_text());
    let order: Vec<(String, MethodKind)> = a.cells.iter().map(|c| (c.problem.clone(), c.method)).collect();
    let expected: Vec<(String, MethodKind)> = TABLE_PROBLEMS
        .iter()
        .flat_map(|p| MethodKind::TABLE.iter().map(move |m| (p.to_string(), *m)))
        .collect();
    assert_eq!(order, expected);
}

#[test]
fn modified_newton_is_second_order() {
    for name in TABLE_PROBLEMS {
        let p = problem(name);
        let spec = MethodSpec::for_problem(MethodKind::ModifiedNewton, &p);
        let x0: Float = p.start(DIGITS).unwrap();
        let report = run(&p, &spec, x0, 6, Tolerances::DISABLED);
        let coc = to_f64(report.coc.as_ref().unwrap());
        assert!((coc - 2.0).abs() < 0.05, "{name}: {coc}");
    }
}
