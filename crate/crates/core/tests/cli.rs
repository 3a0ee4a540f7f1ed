use std::path::Path;
use std::process::{Command, Output};

fn multiroot(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multiroot")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("multiroot-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn solve_examples() {
    let dir = scratch("solve");
    let o = multiroot(&["solve", "--problem", "f5", "--method", "mpp", "--x0", "3.2", "--iters", "3", "--precision", "100"], &dir);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("err3 = 0.531e-41"), "{}", stdout(&o));

    let o = multiroot(&["solve", "--problem", "f3", "--method", "dong", "--x0", "1.5", "--iters", "3"], &dir);
    assert!(stdout(&o).contains("err2 = 0.200e-6"));

    let o = multiroot(&["solve", "--problem", "f1", "--method", "mpp", "--x0", "0"], &dir);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("termination residual-tolerance"));

    let o = multiroot(&["solve", "--problem", "f1", "--method", "mpp", "--x0", "0.35", "--iters", "3", "--format", "csv"], &dir);
    let out = stdout(&o);
    assert_eq!(out.lines().next(), Some("n,iterate,error"));
    assert!(out.lines().nth(1).unwrap().ends_with(",0.350e0"));
    assert!(out.lines().nth(3).unwrap().ends_with(",0.128e-2"));
}

#[test]
fn solve_stops_on_tolerances() {
    let dir = scratch("tol");
    let o = multiroot(&["solve", "--problem", "f4", "--iters", "50", "--tol-step", "1e-20"], &dir);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("termination step-tolerance"));
    let o = multiroot(&["solve", "--problem", "f4", "--iters", "50", "--tol-residual", "1e-200"], &dir);
    assert!(stdout(&o).contains("termination residual-tolerance"));
}

#[test]
fn exit_codes() {
    let dir = scratch("codes");
    assert_eq!(multiroot(&["solve", "--problem", "nope"], &dir).status.code(), Some(2));
    assert_eq!(multiroot(&["solve", "--problem", "f1", "--x0", "1..2"], &dir).status.code(), Some(2));
    assert_eq!(multiroot(&["basin", "--problem", "f1"], &dir).status.code(), Some(2));
    assert_eq!(multiroot(&["basin", "--problem", "p2", "--grid", "1,0,0,1"], &dir).status.code(), Some(2));
    assert_eq!(
        multiroot(&["solve", "--problem", "p3", "--method", "pp", "--x0", "0", "--precision", "double"], &dir).status.code(),
        Some(1)
    );
    assert_eq!(
        multiroot(&["table", "--methods", "mpp", "--out", "/nonexistent/dir/t.csv"], &dir).status.code(),
        Some(1)
    );
}

#[test]
fn table_outputs() {
    let dir = scratch("table");
    let o = multiroot(&["table", "--format", "csv", "--out", "t.csv"], &dir);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.join("t.csv")).unwrap();
    assert_eq!(csv.lines().count(), 21);
    assert!(csv.lines().all(|l| l.split(',').count() == 9));
    let o = multiroot(&["table", "--methods", "mpp"], &dir);
    let text = stdout(&o);
    assert!(text.contains("0.656e-1") && text.contains("3.1010"));
    assert!(!text.contains("osada"));
    let again = multiroot(&["table", "--methods", "mpp"], &dir);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn basin_outputs_are_reproducible() {
    let dir = scratch("basin");
    let o = multiroot(&["basin", "--problem", "p1", "--method", "pp", "--size", "64x64"], &dir);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("p1_pp_64x64.ppm root0="));
    let pp = std::fs::read(dir.join("p1_pp_64x64.ppm")).unwrap();
    multiroot(&["basin", "--problem", "p1", "--method", "mpp", "--m", "1", "--size", "64x64"], &dir);
    let mpp = std::fs::read(dir.join("p1_mpp_64x64.ppm")).unwrap();
    assert_eq!(pp, mpp);

    multiroot(&["basin", "--problem", "p2pow3", "--size", "64x64", "--out", "a.ppm"], &dir);
    multiroot(&["basin", "--problem", "p2pow3", "--size", "64x64", "--out", "b.ppm"], &dir);
    let a = std::fs::read(dir.join("a.ppm")).unwrap();
    assert_eq!(a, std::fs::read(dir.join("b.ppm")).unwrap());
    assert!(a.starts_with(b"P6\n64 64\n255\n"));

    let o = multiroot(&["basin", "--problem", "p2", "--method", "dong", "--dong-sign", "plus", "--size", "32x16", "--grid", "-2,2,-1,1"], &dir);
    assert_eq!(o.status.code(), Some(0));
    assert!(dir.join("p2_dong_32x16.ppm").exists());
}

#[test]
fn dump_config_round_trips_the_flags() {
    let dir = scratch("dump");
    let o = multiroot(&["solve", "--problem", "f4", "--method", "chun", "--gamma", "-0.5", "--dump-config"], &dir);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["method"]["kind"], "chun");
    assert_eq!(v["method"]["gamma"], -0.5);
    assert_eq!(v["method"]["m"], 10);
    assert_eq!(v["x0"], "1.2");
    assert_eq!(v["precision"], "100");
    assert_eq!(v["tolerances"]["step"], 0.0);
}
