use std::process::{Command, Output};

fn bouquet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bouquet")).args(args).output().expect("spawn bouquet")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

const CONST1: &str = r#"{"prefix":[],"tail":{"kind":"const","c":1}}"#;
const FEXP10: &str = r#"{"prefix":[],"tail":{"kind":"fexp","c":10}}"#;

#[test]
fn tstar_of_constant_tail_is_ln2() {
    let o = bouquet(&["tstar", CONST1]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let lo = v["t_star"]["lo"].as_f64().unwrap();
    assert!((lo - std::f64::consts::LN_2).abs() < 1e-9);
}

#[test]
fn tmin_of_tower_tail() {
    let o = bouquet(&["tmin", FEXP10, "--format", "text"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("22026.15894"), "{}", stdout(&o));
}

#[test]
fn classify_below_endpoint_leaves_domain() {
    let o = bouquet(&["classify", CONST1, "--t", "0.6931471805599453"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("not_in_j"), "{}", stdout(&o));
}

#[test]
fn strata_and_witness_run() {
    let o = bouquet(&["strata", FEXP10, "--alpha", "[0]", "--extend-from", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("\"extension\""));
    let o = bouquet(&["witness", FEXP10, "--alpha", "[0]", "--n", "1", "--count", "2"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn cycle_of_minus_two() {
    let o = bouquet(&["cycle", "--a", "-2", "--from", "-2", "--format", "text"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("-1.84140566"), "{}", stdout(&o));
}

#[test]
fn malformed_input_is_a_usage_error() {
    assert_eq!(code(&bouquet(&["tstar", "{not json"])), 2);
    assert_eq!(code(&bouquet(&["tstar"])), 2);
    assert_eq!(code(&bouquet(&["frobnicate"])), 2);
    assert_eq!(code(&bouquet(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&bouquet(&["cycle", "--a", "40"])), 2);
}

#[test]
fn unreachable_tolerance_fails_verification() {
    assert_eq!(code(&bouquet(&["verify", "--suite", "exact_anchors"])), 0);
    assert_eq!(code(&bouquet(&["verify", "--tol", "1e-30"])), 1);
}

#[test]
fn verify_is_deterministic_per_seed() {
    let a = bouquet(&["verify", "--seed", "7", "--suite", "sandwich"]);
    let b = bouquet(&["verify", "--seed", "7", "--suite", "sandwich"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn render_writes_image_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("escape.ppm");
    let o = bouquet(&["render", "--width", "40", "--height", "30", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let bytes = std::fs::read(&path).unwrap();
    assert!(bytes.starts_with(b"P6\n40 30\n255\n"));
    assert!(stdout(&o).contains("hash"));
}

#[test]
fn report_goes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let o = bouquet(&["tstar", CONST1, "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().contains("t_star"));
}
