//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.
//!
//! Reference values below were computed once in 40-digit arithmetic and are
//! frozen here; the property criteria reuse the seeded suites.

use std::time::Instant;

use cantor_bouquet::model::{t_min, t_star, Precision};
use cantor_bouquet::plane::{find_cycle, render_escape, ComplexPoint, CycleKind, ESCAPE_RE};
use cantor_bouquet::verify::{self, anchor_viewport, RunConfig, SuiteResult};
use cantor_bouquet::{SymbolSeq, TailRule};

/// Root of e^t = t + 2.
const CONST1_HEIGHT: f64 = 1.146_193_220_620_582_6;
const LN6: f64 = 1.791_759_469_228_055;
const LN2: f64 = 0.693_147_180_559_945_3;
/// Fixed point of e^z - 2 and its multiplier.
const FIXED_A2: f64 = -1.841_405_660_436_960_6;
const MULT_A2: f64 = 0.158_594_339_563_039_36;

const SEED: u64 = 20_240_601;
const RUNTIME_BUDGET_SECS: f64 = 60.0;

struct Line {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn from_suite(name: &'static str, r: SuiteResult) -> Line {
    let mut detail = format!("{} checks, {} failed, worst margin {:?}", r.checked, r.failed, r.worst_margin);
    for f in &r.failures {
        detail.push_str(&format!("\n      {f}"));
    }
    Line { name, passed: r.passed, detail }
}

fn exact_anchors(p: &Precision) -> Line {
    let mut errors = Vec::new();
    let mut worst: f64 = 0.0;
    let mut check = |what: &str, got: Option<f64>, want: f64| match got {
        Some(v) if (v - want).abs() <= 1e-6 => worst = worst.max((v - want).abs()),
        other => errors.push(format!("{what}: got {other:?}, want {want}")),
    };
    check("t_min(Const(1))", t_min(&SymbolSeq::constant(1), p).ok().map(|i| i.mid()), CONST1_HEIGHT);
    let ln6_seq = SymbolSeq::from_ints(&[0, 5], TailRule::Const(0)).unwrap();
    check("t_min([0,5], Const(0))", t_min(&ln6_seq, p).ok().map(|i| i.mid()), LN6);
    check("t_star(Const(1))", Some(t_star(&SymbolSeq::constant(1), 0).mid()), LN2);
    Line {
        name: "exact_anchors",
        passed: errors.is_empty(),
        detail: if errors.is_empty() { format!("max deviation {worst:.2e}") } else { errors.join("; ") },
    }
}

fn plane_anchors() -> Line {
    let mut errors = Vec::new();
    match find_cycle(ComplexPoint::real(-1.0), 1, ComplexPoint::real(0.1)) {
        Ok(c) => {
            if c.points[0].abs() > 1e-6 || (c.multiplier.re - 1.0).abs() > 1e-6 || c.multiplier.im.abs() > 1e-6 {
                errors.push(format!("a = -1: z = {}, λ = {}", c.points[0], c.multiplier));
            }
            if c.kind != CycleKind::Parabolic {
                errors.push(format!("a = -1: kind {:?}", c.kind));
            }
        }
        Err(e) => errors.push(format!("a = -1: {e}")),
    }
    match find_cycle(ComplexPoint::real(-2.0), 1, ComplexPoint::real(-2.0)) {
        Ok(c) => {
            if (c.points[0].re - FIXED_A2).abs() > 1e-5 || (c.multiplier.re - MULT_A2).abs() > 1e-5 {
                errors.push(format!("a = -2: z = {}, λ = {}", c.points[0], c.multiplier));
            }
            if c.kind != CycleKind::Attracting {
                errors.push(format!("a = -2: kind {:?}", c.kind));
            }
        }
        Err(e) => errors.push(format!("a = -2: {e}")),
    }
    let vp = anchor_viewport(200);
    let runs: Vec<_> = (0..2).map(|_| render_escape(ComplexPoint::real(-1.0), &vp, 100, ESCAPE_RE, None)).collect();
    let mut detail = String::new();
    match (&runs[0], &runs[1]) {
        (Ok(a), Ok(b)) => {
            if a.escaped_pixels == 0 || a.retained_pixels == 0 {
                errors.push(format!("render counts {a:?}"));
            }
            if a.hash != b.hash {
                errors.push("render hash differs between runs".into());
            }
            detail = format!("escaped {}, retained {}, hash {}…", a.escaped_pixels, a.retained_pixels, &a.hash[..12]);
        }
        _ => errors.push("render failed".into()),
    }
    Line {
        name: "plane_anchors",
        passed: errors.is_empty(),
        detail: if errors.is_empty() { detail } else { errors.join("; ") },
    }
}

fn main() {
    let start = Instant::now();
    let cfg = RunConfig { seed: SEED, ..RunConfig::default() };
    let p = cfg.precision();

    let mut lines = vec![
        from_suite("prop1_grid", verify::prop1_grid()),
        from_suite("sandwich", verify::sandwich(&cfg, 150)),
        from_suite("monotonicity", verify::monotonicity(&cfg, 150)),
        exact_anchors(&p),
        from_suite("floor_soundness", verify::floor_soundness(&cfg, 200)),
        from_suite("witness_suite", verify::witnesses(&cfg)),
        from_suite("closure_property", verify::closure(&cfg)),
        from_suite("extension_search", verify::extensions(&cfg, 25)),
        plane_anchors(),
    ];
    let elapsed = start.elapsed().as_secs_f64();
    lines.push(Line {
        name: "runtime_budget",
        passed: elapsed < RUNTIME_BUDGET_SECS,
        detail: format!("{elapsed:.2}s of {RUNTIME_BUDGET_SECS}s"),
    });

    for l in &lines {
        println!("{} {:<18} {}", if l.passed { "PASS" } else { "FAIL" }, l.name, l.detail);
    }
    let failed = lines.iter().filter(|l| !l.passed).count();
    println!("acceptance: {} passed, {failed} failed", lines.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
