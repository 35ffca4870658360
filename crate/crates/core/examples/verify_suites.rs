//! Run a few of the seeded property suites and print their verdicts.

use cantor_bouquet::verify::{run_suite, RunConfig};

fn main() {
    let cfg = RunConfig { seed: 42, ..RunConfig::default() };
    for name in ["prop1_grid", "sandwich", "monotonicity", "witnesses", "plane_anchors"] {
        let r = run_suite(name, &cfg).unwrap();
        println!(
            "{:<14} {} ({} checks, worst margin {:?})",
            r.name,
            if r.passed { "ok" } else { "FAILED" },
            r.checked,
            r.worst_margin
        );
    }
}
