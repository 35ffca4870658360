//! Runs every example through cargo so a broken example fails the suite.

use std::process::Command;

const EXAMPLES: &[&str] = &[
    "potentials",
    "endpoint_heights",
    "classify_points",
    "descriptors",
    "strata",
    "witnesses",
    "plane_orbits",
    "cycles",
    "towers",
    "verify_suites",
];

#[test]
fn examples_exit_cleanly() {
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    for name in EXAMPLES {
        let out = Command::new(&cargo)
            .args(["run", "--quiet", "--example", name])
            .current_dir(env!("CARGO_MANIFEST_DIR"))
            .output()
            .expect("spawn cargo");
        assert!(out.status.success(), "example {name} failed:\n{}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn render_example_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.ppm");
    let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
    let out = Command::new(&cargo)
        .args(["run", "--quiet", "--example", "render", "--"])
        .arg(&path)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("spawn cargo");
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(std::fs::metadata(&path).unwrap().len() > 0);
}
