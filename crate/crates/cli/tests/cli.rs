use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn dpp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

#[test]
fn identity_kernel_is_half() {
    let o = dpp(&["kernel", "--spec", &fixture("identity2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["K"]["data"], serde_json::json!([["1/2", "0/1"], ["0/1", "1/2"]]));
}

#[test]
fn kernel_float_and_csv() {
    let o = dpp(&["kernel", "--spec", &fixture("identity2.json"), "--scalar", "float"]);
    assert_eq!(json(&o)["K"]["data"][0][0], serde_json::json!([0.5, 0.0]));
    let o = dpp(&["kernel", "--spec", &fixture("identity2.json"), "--out", "csv"]);
    let text = stdout(&o);
    assert!(text.starts_with("mask,re,im\n0,1/1,0\n"), "{text}");
    assert!(text.contains("\n11,1/4,0\n"), "{text}");
}

#[test]
fn one_row_schur_kernel() {
    let o = dpp(&[
        "schur-kernel",
        "--spec",
        &fixture("one_row.json"),
        "--points",
        "(1,0)",
        "--tol",
        "1e-8",
        "--out",
        "csv",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(1).expect("one row").split(',').collect();
    assert_eq!(&row[..4], &["1", "0", "1", "0"]);
    let re: f64 = row[4].parse().unwrap();
    assert!((re - 3.0 / 16.0).abs() < 1e-8, "{re}");
}

#[test]
fn eynard_mehta_suite_exact() {
    let o = dpp(&["verify", "--suite", "eynard-mehta", "--tol", "exact"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("PASS eynard-mehta"), "{text}");
    assert!(text.contains("max deviation 0.000e0"), "{text}");
}

#[test]
fn failing_suite_exits_one() {
    let o = dpp(&["verify", "--suite", "contour", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("FAIL contour"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(dpp(&["kernel", "--spec", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(dpp(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(dpp(&["verify", "--suite", "symfunc", "--tol", "loose"]).status.code(), Some(2));
    let o = dpp(&["kernel", "--spec", &fixture("bad_dims.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("L:"), "names the matrix");
    assert_eq!(dpp(&["kernel"]).status.code(), Some(2));
}

#[test]
fn em_kernel_json_and_csv() {
    let o = dpp(&["em-kernel", "--spec", &fixture("em.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["ground"], serde_json::json!(["1:a", "1:b", "2:c", "2:d"]));
    assert_eq!(v["K"]["rows"], 4);
    let o = dpp(&["em-kernel", "--spec", &fixture("em.json"), "--out", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 17);
}

#[test]
fn pf_kernel_is_skew() {
    let o = dpp(&["pf-kernel", "--spec", &fixture("pf_one_point.json")]);
    assert_eq!(o.status.code(), Some(0));
    let d = &json(&o)["K"]["data"];
    assert_eq!(d[0][0], "0/1");
    let neg = |s: &str| s.strip_prefix('-').map(str::to_string).unwrap_or(format!("-{s}"));
    assert_eq!(d[1][0].as_str().unwrap(), neg(d[0][1].as_str().unwrap()));
}

#[test]
fn sampling_is_deterministic() {
    let args = ["sample", "--spec", &fixture("ensemble3.json"), "--seed", "7", "--count", "20"];
    let (a, b) = (dpp(&args), dpp(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    // c lies outside the window, so it is in every sample.
    assert!(stdout(&a).lines().all(|l| l.contains('c')));
    assert_eq!(stdout(&a).lines().count(), 20);
}

#[test]
fn point_action_flip() {
    let o = dpp(&["point-action", "--spec", &fixture("flip.json")]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["point"]["coeffs"]["0b0"], "5/3");
    assert_eq!(v["point"]["coeffs"]["0b1"], "1/1");
    assert_eq!(v["witness"]["m"], 1);
    assert_eq!(v["witness_matches"], true);
}

#[test]
fn schur_verify_report() {
    let o = dpp(&["schur-verify", "--spec", &fixture("one_row.json"), "--points", "(1,0),(1,1)", "--cutoff", "30"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",pass")));
}
