//! Seeded property suites over the whole library.
//!
//! Each suite checks one invariant on generated inputs and reports the
//! number of checks, the number of failures and the worst margin (the
//! smallest slack by which a check passed; negative when one failed).
//! Reports contain no timing data, so a fixed seed gives identical bytes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::interval::Interval;
use crate::model::{
    backward_nesting, classify, t_min, t_min_detail, t_star, Classification, ModelPoint, Precision, DEFAULT_BUDGET,
    DEFAULT_TOL,
};
use crate::plane::{self, ComplexPoint, CycleKind, Viewport};
use crate::seq::{Rational, Symbol, SymbolSeq, TailRule};
use crate::strata::{self, AlphaIndex};
use crate::tower::{f_inv_k, f_map};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

/// Shared numeric defaults for the command line and the suites.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub tol: f64,
    pub budget: usize,
    pub seed: u64,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, budget: DEFAULT_BUDGET, seed: 0, format: OutputFormat::Json }
    }
}

impl RunConfig {
    pub fn precision(&self) -> Precision {
        Precision { tol: self.tol, budget: self.budget }
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.tol > 0.0) {
            return Err(format!("tolerance must be positive, got {}", self.tol));
        }
        if self.budget == 0 {
            return Err("budget must be at least 1".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failed: usize,
    pub worst_margin: Option<f64>,
    /// First few failure descriptions.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub tol: f64,
    pub budget: usize,
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let margin = s.worst_margin.map_or("-".to_string(), |m| format!("{m:.3e}"));
            out.push_str(&format!(
                "{} {:<24} checked={:<5} failed={:<4} worst_margin={}\n",
                if s.passed { "PASS" } else { "FAIL" },
                s.name,
                s.checked,
                s.failed,
                margin
            ));
            for f in &s.failures {
                out.push_str(&format!("    {f}\n"));
            }
        }
        out.push_str(if self.passed { "all suites passed\n" } else { "some suites failed\n" });
        out
    }
}

/// Accumulates checks for one suite.
struct Tally {
    name: &'static str,
    checked: usize,
    failed: usize,
    worst: Option<f64>,
    failures: Vec<String>,
}

const MAX_LISTED_FAILURES: usize = 5;

impl Tally {
    fn new(name: &'static str) -> Self {
        Self { name, checked: 0, failed: 0, worst: None, failures: Vec::new() }
    }

    /// Record a check that passes when `margin > 0` (or `>= 0` if `inclusive`).
    fn margin(&mut self, margin: f64, inclusive: bool, what: impl FnOnce() -> String) {
        let ok = if inclusive { margin >= 0.0 } else { margin > 0.0 };
        self.worst = Some(self.worst.map_or(margin, |w| w.min(margin)));
        self.record(ok, what);
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.record(ok, what);
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED_FAILURES {
                self.failures.push(what());
            }
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name.to_string(),
            passed: self.failed == 0 && self.checked > 0,
            checked: self.checked,
            failed: self.failed,
            worst_margin: self.worst.map(|w| if w.is_finite() { w } else { f64::MAX.copysign(w) }),
            failures: self.failures,
        }
    }
}

// ---- generators --------------------------------------------------------------

fn rng_for(cfg: &RunConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn random_prefix(rng: &mut ChaCha8Rng, max_len: usize, max_abs: i64) -> Vec<i64> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(-max_abs..=max_abs)).collect()
}

/// A tail whose endpoint height stays well inside `f64` range.
pub fn random_tail(rng: &mut ChaCha8Rng) -> TailRule {
    match rng.gen_range(0..4) {
        0 => TailRule::Const(rng.gen_range(-5..=5)),
        1 => {
            let len = rng.gen_range(1..=4);
            TailRule::periodic((0..len).map(|_| rng.gen_range(-9..=9)).collect())
        }
        2 => random_divergent_tail(rng, true),
        _ => random_divergent_tail(rng, false),
    }
}

fn random_divergent_tail(rng: &mut ChaCha8Rng, fexp: bool) -> TailRule {
    if fexp {
        if rng.gen_bool(0.8) {
            TailRule::FExp { c: rng.gen_range(1..=9), offset: 0 }
        } else {
            TailRule::FExp { c: rng.gen_range(1..=2), offset: 1 }
        }
    } else {
        let c = Rational::new(rng.gen_range(1..=6), rng.gen_range(1..=3));
        TailRule::LinExp { c, offset: rng.gen_range(0..=3) }
    }
}

/// A rule-based sequence with finite `t*` and a moderate endpoint height.
pub fn random_sequence(rng: &mut ChaCha8Rng) -> SymbolSeq {
    let prefix = random_prefix(rng, 5, 30);
    SymbolSeq::from_ints(&prefix, random_tail(rng)).expect("generated tails are valid")
}

/// A sequence in `Ẽ`, i.e. with a divergent tail.
pub fn random_escaping_sequence(rng: &mut ChaCha8Rng) -> SymbolSeq {
    let prefix = random_prefix(rng, 4, 20);
    let fexp = rng.gen_bool(0.5);
    let tail = random_divergent_tail(rng, fexp);
    SymbolSeq::from_ints(&prefix, tail).expect("generated tails are valid")
}

fn bump(rng: &mut ChaCha8Rng, v: i64, room: i64) -> i64 {
    let mag = v.abs() + rng.gen_range(0..=room);
    if rng.gen_bool(0.5) {
        mag
    } else {
        -mag
    }
}

/// A pair `(s, s')` with `|s_n| <= |s'_n|` for every `n`.
pub fn random_dominated_pair(rng: &mut ChaCha8Rng) -> (SymbolSeq, SymbolSeq) {
    let small = random_sequence(rng);
    let prefix: Vec<i64> = small
        .prefix()
        .iter()
        .map(|s| match s {
            Symbol::Int(v) => bump(rng, *v, 4),
            _ => unreachable!("generated prefixes are integers"),
        })
        .collect();
    let tail = match small.tail() {
        TailRule::Const(c) => TailRule::Const(bump(rng, *c, 2)),
        TailRule::Periodic { pattern, offset } => TailRule::Periodic {
            pattern: pattern.iter().map(|v| bump(rng, *v, 3)).collect(),
            offset: *offset,
        },
        // Offset-1 towers are already near the top of the resolvable range.
        TailRule::FExp { c, offset: 0 } => TailRule::FExp { c: c + rng.gen_range(0..=1), offset: 0 },
        TailRule::FExp { c, offset } => TailRule::FExp { c: *c, offset: *offset },
        TailRule::LinExp { c, offset } => {
            TailRule::LinExp { c: c + Rational::new(rng.gen_range(0..=2), 2), offset: *offset }
        }
    };
    let big = SymbolSeq::from_ints(&prefix, tail).expect("valid");
    (small, big)
}

// ---- suites --------------------------------------------------------------------

pub const SUITES: &[&str] = &[
    "prop1_grid",
    "sandwich",
    "monotonicity",
    "exact_anchors",
    "floor_soundness",
    "shift_identity",
    "backward_nesting",
    "classification",
    "descriptor_roundtrip",
    "witnesses",
    "closure",
    "extensions",
    "strata_nesting",
    "plane_anchors",
    "plane_real_axis",
    "plane_multiplier",
    "render_determinism",
];

pub fn run_suite(name: &str, cfg: &RunConfig) -> Option<SuiteResult> {
    Some(match name {
        "prop1_grid" => prop1_grid(),
        "sandwich" => sandwich(cfg, 120),
        "monotonicity" => monotonicity(cfg, 120),
        "exact_anchors" => exact_anchors(cfg),
        "floor_soundness" => floor_soundness(cfg, 200),
        "shift_identity" => shift_identity(cfg, 60),
        "backward_nesting" => backward_nesting_suite(cfg, 40),
        "classification" => classification(cfg, 40),
        "descriptor_roundtrip" => descriptor_roundtrip(cfg, 100),
        "witnesses" => witnesses(cfg),
        "closure" => closure(cfg),
        "extensions" => extensions(cfg, 25),
        "strata_nesting" => strata_nesting(cfg, 25),
        "plane_anchors" => plane_anchors(),
        "plane_real_axis" => plane_real_axis(cfg, 50),
        "plane_multiplier" => plane_multiplier(cfg, 20),
        "render_determinism" => render_determinism(64),
        _ => return None,
    })
}

pub fn run_all(cfg: &RunConfig) -> VerifyReport {
    let suites: Vec<SuiteResult> = SUITES.iter().filter_map(|n| run_suite(n, cfg)).collect();
    VerifyReport {
        seed: cfg.seed,
        tol: cfg.tol,
        budget: cfg.budget,
        passed: suites.iter().all(|s| s.passed),
        suites,
    }
}

/// `F^{-k}(t) > F^{-(k+1)}(t)` and `F^{-k}(t - 1) > F^{-k}(t) - 1` on a
/// grid of `k ∈ [1, 20]` and 40 log-spaced `t ∈ [1, 100]`, each with margin
/// above `1e-9`.
pub fn prop1_grid() -> SuiteResult {
    let mut tally = Tally::new("prop1_grid");
    for k in 1..=20u32 {
        for i in 0..40 {
            let t = 10f64.powf(2.0 * i as f64 / 39.0);
            let a = f_inv_k(k, t).expect("finite");
            let b = f_inv_k(k + 1, t).expect("finite");
            tally.margin(a - b - 1e-9, false, || format!("F^-{k}({t}) - F^-{}({t}) = {}", k + 1, a - b));
            let c = f_inv_k(k, t - 1.0).expect("finite");
            tally.margin(c - (a - 1.0) - 1e-9, false, || format!("F^-{k}({t} - 1) vs F^-{k}({t}) - 1"));
        }
    }
    tally.finish()
}

/// `t* <= t_s <= t* + 1` for random sequences.
pub fn sandwich(cfg: &RunConfig, count: usize) -> SuiteResult {
    let mut tally = Tally::new("sandwich");
    let mut rng = rng_for(cfg, 1);
    let p = cfg.precision();
    for _ in 0..count {
        let s = random_sequence(&mut rng);
        let ts = t_star(&s, 0);
        match t_min(&s, &p) {
            Ok(enc) => {
                let m = (enc.lo - ts.lo).min(ts.hi + 1.0 - enc.hi) + 1e-6;
                tally.margin(m, true, || format!("{s}: t_min {enc} vs t* {ts}"));
            }
            Err(e) => tally.check(false, || format!("{s}: {e}")),
        }
    }
    tally.finish()
}

/// Coordinatewise domination `|s_n| <= |s'_n|` carries over to `t*` and `t_s`.
pub fn monotonicity(cfg: &RunConfig, count: usize) -> SuiteResult {
    let mut tally = Tally::new("monotonicity");
    let mut rng = rng_for(cfg, 2);
    let p = cfg.precision();
    for _ in 0..count {
        let (a, b) = random_dominated_pair(&mut rng);
        let (sa, sb) = (t_star(&a, 0), t_star(&b, 0));
        tally.margin(sb.hi - sa.lo + 1e-6, true, || format!("t*: {a} -> {sa}, {b} -> {sb}"));
        match (t_min(&a, &p), t_min(&b, &p)) {
            (Ok(ta), Ok(tb)) => tally.margin(tb.hi - ta.lo + 1e-6, true, || format!("t_min: {a} -> {ta}, {b} -> {tb}")),
            (ra, rb) => tally.check(false, || format!("t_min failed: {ra:?} / {rb:?}")),
        }
    }
    tally.finish()
}

/// Closed-form values, each against an independent scalar recomputation.
pub fn exact_anchors(cfg: &RunConfig) -> SuiteResult {
    let mut tally = Tally::new("exact_anchors");
    let p = cfg.precision();
    // Root of e^t = t + 2 by plain bisection.
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid.exp() - mid - 2.0 < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let root = 0.5 * (lo + hi);
    let anchors: [(&str, Result<Interval, crate::model::ModelError>, f64); 3] = [
        ("t_min(Const(1))", t_min(&SymbolSeq::constant(1), &p), root),
        (
            "t_min([0,5], Const(0))",
            t_min(&SymbolSeq::from_ints(&[0, 5], TailRule::Const(0)).expect("valid"), &p),
            6f64.ln(),
        ),
        ("t*(Const(1))", Ok(t_star(&SymbolSeq::constant(1), 0)), 2f64.ln()),
    ];
    for (what, got, want) in anchors {
        match got {
            Ok(iv) => tally.margin(1e-6 - (iv.mid() - want).abs(), true, || format!("{what} = {iv}, expected {want}")),
            Err(e) => tally.check(false, || format!("{what}: {e}")),
        }
    }
    tally.finish()
}

/// Potentials of `FExp` tails lie in `(F^{j+1-k}(c) - 1, F^{j+1-k}(c)]`,
/// sampled where that window is wider than the float spacing.
pub fn floor_soundness(cfg: &RunConfig, count: usize) -> SuiteResult {
    let mut tally = Tally::new("floor_soundness");
    let mut rng = rng_for(cfg, 3);
    let mut drawn = 0;
    while drawn < count {
        let c = rng.gen_range(1..=10u64);
        let j = rng.gen_range(0..=5usize);
        let k = rng.gen_range(1..=j + 6);
        let e = j as i64 + 1 - k as i64;
        // Independent scalar value of F^e(c).
        let exact = if e >= 0 {
            (0..e).try_fold(c as f64, |v, _| f_map(v).ok())
        } else {
            f_inv_k((-e) as u32, c as f64).ok()
        };
        // Beyond 1e12 the unit-width window is below the float resolution.
        let Some(exact) = exact.filter(|v| *v < 1e12) else { continue };
        drawn += 1;
        let seq = SymbolSeq::from_ints(&[], TailRule::fexp(c)).expect("valid");
        let enc = crate::model::pot(&seq, j, k as u32);
        let slack = exact * 1e-12;
        tally.margin(enc.lo - (exact - 1.0), false, || format!("pot(FExp({c}), {j}, {k}) = {enc} vs F^{e}({c}) = {exact}"));
        tally.margin(exact + slack - enc.hi, true, || format!("pot(FExp({c}), {j}, {k}) = {enc} above F^{e}({c}) = {exact}"));
    }
    tally.finish()
}

/// `t*` of `σ^n(s)` agrees whether the shift is applied to the sequence or
/// folded into the sup, and `σ^n` commutes with indexing.
pub fn shift_identity(cfg: &RunConfig, count: usize) -> SuiteResult {
    let mut tally = Tally::new("shift_identity");
    let mut rng = rng_for(cfg, 4);
    for _ in 0..count {
        let s = random_sequence(&mut rng);
        let n = rng.gen_range(0..8);
        let (a, b) = (t_star(&s, n), t_star(&s.shift(n), 0));
        tally.check(a.overlaps(&b), || format!("{s} shift {n}: {a} vs {b}"));
        let shifted = s.shift(n);
        tally.check((0..12).all(|j| shifted.seq_at(j) == s.seq_at(n + j)), || format!("{s}: shift {n} reindexes"));
    }
    tally.finish()
}

/// `u_n` is nondecreasing, bounded by `t_s` and converges to it.
pub fn backward_nesting_suite(cfg: &RunConfig, count: usize) -> SuiteResult {
    let mut tally = Tally::new("backward_nesting");
    let mut rng = rng_for(cfg, 5);
    let p = cfg.precision();
    for _ in 0..count {
        let s = random_sequence(&mut rng);
        let Ok(ts) = t_min(&s, &p) else {
            tally.check(false, || format!("{s}: t_min did not converge"));
            continue;
        };
        let mut prev = 0.0f64;
        let mut last = Interval::point(0.0);
        for n in 1..=40 {
            let u = backward_nesting(&s, n);
            tally.check(u.hi >= prev && u.lo <= ts.hi, || format!("{s}: u_{n} = {u}, t_s = {ts}"));
            prev = u.lo;
            last = u;
        }
        // Bounded tails converge geometrically; divergent tails within a few levels.
        tally.margin(1e-6 - (ts.mid() - last.mid()).abs(), true, || format!("{s}: u_40 = {last}, t_s = {ts}"));
    }
    tally.finish()
}

/// Endpoints, points above and points below `t_s` are told apart.
pub fn classification(cfg: &RunConfig, count: usize) -> SuiteResult {
    let mut tally = Tally::new("classification");
    let mut rng = rng_for(cfg, 6);
    let p = cfg.precision();
    for _ in 0..count {
        let s = random_sequence(&mut rng);
        let Ok(ts) = t_min(&s, &p) else {
            tally.check(false, || format!("{s}: t_min did not converge"));
            continue;
        };
        let endpoint = ModelPoint::new(ts.mid(), s.clone()).expect("t_s >= 0");
        let c = classify(&endpoint, 64, &p);
        tally.check(
            matches!(c, Classification::InJEndpoint | Classification::InJNonEscaping),
            || format!("{s}: endpoint classified {c:?}"),
        );
        let above = ModelPoint::new(ts.hi + 0.25, s.clone()).expect("valid");
        let c = classify(&above, 64, &p);
        tally.check(c == Classification::InJEscapeCertified, || format!("{s}: t_s + 1/4 classified {c:?}"));
        if ts.lo > 0.25 {
            let below = ModelPoint::new(ts.lo - 0.25, s.clone()).expect("valid");
            let c = classify(&below, 256, &p);
            tally.check(
                matches!(c, Classification::NotInJ { .. }),
                || format!("{s}: t_s - 1/4 classified {c:?}"),
            );
        }
    }
    tally.finish()
}

pub fn descriptor_roundtrip(cfg: &RunConfig, count: usize) -> SuiteResult {
    let mut tally = Tally::new("descriptor_roundtrip");
    let mut rng = rng_for(cfg, 7);
    for _ in 0..count {
        let s = random_sequence(&mut rng).shift(rng.gen_range(0..4));
        let back = SymbolSeq::from_json(&s.to_json());
        tally.check(back.as_ref() == Ok(&s), || format!("{s} -> {back:?}"));
    }
    tally.finish()
}

/// Bases used by the witness and closure suites: `FExp` tails with every
/// shifted potential far above the thresholds in play.
fn witness_bases() -> Vec<SymbolSeq> {
    vec![
        SymbolSeq::from_ints(&[], TailRule::fexp(10)).expect("valid"),
        SymbolSeq::from_ints(&[], TailRule::fexp(4)).expect("valid"),
        SymbolSeq::from_ints(&[30, 60], TailRule::fexp(5)).expect("valid"),
    ]
}

/// `α` of the given length built by repeated extension searches, plus the
/// next extension index `N`.
fn alpha_for(x: &ModelPoint, dom: usize, p: &Precision) -> Result<(AlphaIndex, usize), strata::StrataError> {
    let mut alpha = AlphaIndex::empty();
    for _ in 0..dom {
        let n = strata::find_extension(&alpha, x, 0, p)?;
        alpha = alpha.extend(n)?;
    }
    let n = strata::find_extension(&alpha, x, 0, p)?;
    Ok((alpha, n))
}

const WITNESS_COUNT: usize = 4;

/// Witness families for `dom(α) ∈ {1, 2, 3}`: Claims 1 and 2, the exclusion
/// margin, membership in `X_α`, and convergence of heights and distances.
pub fn witnesses(cfg: &RunConfig) -> SuiteResult {
    let mut tally = Tally::new("witnesses");
    let p = cfg.precision();
    for base in witness_bases() {
        let x = match ModelPoint::endpoint(base.clone(), &p) {
            Ok(x) => x,
            Err(e) => {
                tally.check(false, || format!("{base}: {e}"));
                continue;
            }
        };
        let base_t = t_min_detail(&base, &p).enclosure;
        for dom in 1..=3 {
            let family = alpha_for(&x, dom, &p)
                .and_then(|(alpha, n)| strata::nowhere_dense_demo(&x, &alpha, n, WITNESS_COUNT, &p).map(|r| (alpha, r)));
            let (alpha, reports) = match family {
                Ok(v) => v,
                Err(e) => {
                    tally.check(false, || format!("{base}, dom {dom}: {e}"));
                    continue;
                }
            };
            let d = 3.0 * dom as f64;
            for r in &reports {
                let tag = || format!("{base}, α = {alpha}, m = {}", r.m);
                tally.margin(r.claim1_margin.lo - (d - 1.0), false, || format!("{}: claim 1 {}", tag(), r.claim1_margin));
                tally.margin(d - r.claim2_bound.hi, true, || format!("{}: claim 2 {}", tag(), r.claim2_bound));
                tally.margin(r.exclusion_margin(&alpha) - 1.0, true, || format!("{}: exclusion margin", tag()));
                tally.check(r.member_of_alpha, || format!("{}: witness not certified in X_α", tag()));
                tally.margin(base_t.hi + p.tol - r.t_min.hi, true, || format!("{}: t_min {} above base", tag(), r.t_min));
            }
            let ordered = reports.windows(2).all(|w| w[1].m > w[0].m && w[1].distance < w[0].distance);
            tally.check(ordered, || format!("{base}, α = {alpha}: m or distance not monotone"));
            let gaps: Vec<f64> = reports.iter().map(|r| base_t.mid() - r.t_min.mid()).collect();
            let monotone = gaps.windows(2).all(|g| g[1] <= g[0] + p.tol);
            tally.check(monotone, || format!("{base}, α = {alpha}: height gaps {gaps:?}"));
            if let Some(last) = gaps.last() {
                tally.margin(1e-4 - last.abs(), false, || format!("{base}, α = {alpha}: final gap {last}"));
            }
        }
    }
    tally.finish()
}

/// Lower bounds shared by every member of a witness family pass to the
/// limit: if all `t_s` of `σ^n(s^m)` exceed `R`, so does the base, and its
/// `t*` exceeds `R - 1`.
pub fn closure(cfg: &RunConfig) -> SuiteResult {
    let mut tally = Tally::new("closure");
    let p = cfg.precision();
    for base in witness_bases() {
        let alpha = AlphaIndex::new(vec![0]).expect("valid");
        let family: Result<Vec<SymbolSeq>, _> =
            (1..=6).map(|m| strata::make_witness(&base, &alpha, m + 1, p.budget)).collect();
        let Ok(family) = family else {
            tally.check(false, || format!("{base}: witness family"));
            continue;
        };
        for n in 0..=3 {
            let r = family
                .iter()
                .map(|w| t_min_detail(&w.shift(n), &p).enclosure.lo)
                .fold(f64::INFINITY, f64::min);
            let limit = t_min_detail(&base.shift(n), &p).enclosure;
            let limit_star = t_star(&base, n);
            tally.margin(limit.hi - (r - 1e-6), true, || format!("{base} shift {n}: t_min {limit} below R = {r}"));
            tally.margin(limit_star.hi - (r - 1.0 - 1e-6), true, || format!("{base} shift {n}: t* {limit_star} below R - 1"));
        }
    }
    tally.finish()
}

fn random_member(rng: &mut ChaCha8Rng, p: &Precision) -> Option<(ModelPoint, AlphaIndex)> {
    let s = random_escaping_sequence(rng);
    let x = ModelPoint::endpoint(s, p).ok()?;
    let mut alpha = AlphaIndex::empty();
    for _ in 0..rng.gen_range(0..=2) {
        let floor = rng.gen_range(0..=3);
        let n = strata::find_extension(&alpha, &x, floor, p).ok()?;
        alpha = alpha.extend(n).ok()?;
    }
    Some((x, alpha))
}

/// Every certified member of `X_α` has a certified extension `N`.
pub fn extensions(cfg: &RunConfig, count: usize) -> SuiteResult {
    let mut tally = Tally::new("extensions");
    let mut rng = rng_for(cfg, 8);
    let p = cfg.precision();
    for _ in 0..count {
        let Some((x, alpha)) = random_member(&mut rng, &p) else {
            tally.check(false, || "could not build a member".into());
            continue;
        };
        tally.check(strata::in_x(&alpha, &x, &p).is_true(), || format!("{}: not in X_{alpha}", x.seq()));
        let floor = rng.gen_range(0..=5);
        match strata::find_extension(&alpha, &x, floor, &p) {
            Ok(n) => {
                let ok = alpha.extend(n).map(|a| strata::in_x(&a, &x, &p).is_true()).unwrap_or(false);
                tally.check(ok && n >= floor, || format!("{}: extension {n} of {alpha} not certified", x.seq()));
            }
            Err(e) => tally.check(false, || format!("{}: {e}", x.seq())),
        }
    }
    tally.finish()
}

/// Membership in `X_{α⌢N}` implies membership in `X_α`.
pub fn strata_nesting(cfg: &RunConfig, count: usize) -> SuiteResult {
    let mut tally = Tally::new("strata_nesting");
    let mut rng = rng_for(cfg, 9);
    let p = cfg.precision();
    for _ in 0..count {
        let s = random_escaping_sequence(&mut rng);
        let Ok(x) = ModelPoint::endpoint(s, &p) else {
            tally.check(false, || "endpoint failed".into());
            continue;
        };
        let mut entries: Vec<usize> = (0..8).collect();
        entries.shuffle(&mut rng);
        let mut chosen: Vec<usize> = entries[..rng.gen_range(1..=3)].to_vec();
        chosen.sort_unstable();
        let alpha = AlphaIndex::new(chosen.clone()).expect("sorted distinct");
        let parent = AlphaIndex::new(chosen[..chosen.len() - 1].to_vec()).expect("prefix");
        let child = strata::in_x(&alpha, &x, &p);
        let ok = !child.is_true() || strata::in_x(&parent, &x, &p).is_true();
        tally.check(ok, || format!("{}: in X_{alpha} but not X_{parent}", x.seq()));
    }
    tally.finish()
}

fn cp(re: f64, im: f64) -> ComplexPoint {
    ComplexPoint { re, im }
}

/// The parabolic fixed point of `e^z - 1`, the attracting one of `e^z - 2`
/// (checked against a scalar Newton solve) and a 200×200 render.
pub fn plane_anchors() -> SuiteResult {
    let mut tally = Tally::new("plane_anchors");
    match plane::find_cycle(cp(-1.0, 0.0), 1, cp(0.1, 0.0)) {
        Ok(c) => {
            tally.margin(1e-6 - c.points[0].abs(), true, || format!("a = -1 fixed point {}", c.points[0]));
            tally.margin(1e-6 - (c.multiplier.re - 1.0).hypot(c.multiplier.im), true, || {
                format!("a = -1 multiplier {}", c.multiplier)
            });
            tally.check(c.kind == CycleKind::Parabolic, || format!("a = -1 kind {:?}", c.kind));
        }
        Err(e) => tally.check(false, || format!("a = -1: {e}")),
    }
    let mut x = -2.0f64;
    for _ in 0..100 {
        x -= (x.exp() - 2.0 - x) / (x.exp() - 1.0);
    }
    match plane::find_cycle(cp(-2.0, 0.0), 1, cp(-2.0, 0.0)) {
        Ok(c) => {
            tally.margin(1e-5 - (c.points[0].re - x).hypot(c.points[0].im), true, || format!("a = -2 fixed point {}", c.points[0]));
            tally.margin(1e-5 - (c.multiplier.re - x.exp()).hypot(c.multiplier.im), true, || {
                format!("a = -2 multiplier {}", c.multiplier)
            });
            tally.check(c.kind == CycleKind::Attracting, || format!("a = -2 kind {:?}", c.kind));
        }
        Err(e) => tally.check(false, || format!("a = -2: {e}")),
    }
    let vp = anchor_viewport(200);
    let first = plane::render_escape(cp(-1.0, 0.0), &vp, 100, plane::ESCAPE_RE, None);
    let second = plane::render_escape(cp(-1.0, 0.0), &vp, 100, plane::ESCAPE_RE, None);
    match (first, second) {
        (Ok(a), Ok(b)) => {
            tally.check(a.escaped_pixels > 0 && a.retained_pixels > 0, || format!("render counts {a:?}"));
            tally.check(a.hash == b.hash, || "render hash differs between runs".into());
        }
        (a, b) => tally.check(false, || format!("render failed: {a:?} / {b:?}")),
    }
    tally.finish()
}

pub fn anchor_viewport(px: usize) -> Viewport {
    Viewport {
        re_min: -2.0,
        re_max: 4.0,
        im_min: -std::f64::consts::PI,
        im_max: std::f64::consts::PI,
        width_px: px,
        height_px: px,
    }
}

/// Real orbits stay real, and for `a = -1` positive points escape
/// monotonically while negative ones creep to the parabolic point.
pub fn plane_real_axis(cfg: &RunConfig, count: usize) -> SuiteResult {
    let mut tally = Tally::new("plane_real_axis");
    let mut rng = rng_for(cfg, 10);
    for _ in 0..count {
        let a = rng.gen_range(-3.0..1.0);
        let z = rng.gen_range(-5.0..3.0);
        let it = plane::itinerary(cp(a, 0.0), cp(z, 0.0), 30);
        tally.check(it.iter().all(|&s| s == 0), || format!("a = {a}, z = {z}: itinerary {it:?}"));

        let x = rng.gen_range(0.01..5.0);
        let orbit = plane::iterate(cp(-1.0, 0.0), cp(x, 0.0), 400);
        let increasing = orbit.points.windows(2).all(|w| w[1].re > w[0].re);
        tally.check(increasing && orbit.escaped_at.is_some(), || format!("x = {x} should escape monotonically"));

        let y = -rng.gen_range(0.01..5.0);
        let orbit = plane::iterate(cp(-1.0, 0.0), cp(y, 0.0), 2000);
        let shrinking = orbit.points.windows(2).all(|w| w[1].re.abs() <= w[0].re.abs() && w[1].re < 0.0);
        let end = orbit.points.last().expect("nonempty").re;
        tally.check(shrinking && end.abs() < 1e-2, || format!("y = {y} should creep to 0, ended at {end}"));
    }
    tally.finish()
}

/// `|λ|` equals `∏ |e^{z_i}| = exp(Σ Re z_i)` for cycles found from random
/// seeds.
pub fn plane_multiplier(cfg: &RunConfig, count: usize) -> SuiteResult {
    let mut tally = Tally::new("plane_multiplier");
    let mut rng = rng_for(cfg, 11);
    let mut attempts = 0;
    while tally.checked < count && attempts < 50 * count {
        attempts += 1;
        let a = cp(rng.gen_range(-4.0..2.0), rng.gen_range(-2.0..2.0));
        let seed = cp(rng.gen_range(-3.0..3.0), rng.gen_range(-4.0..4.0));
        let period = rng.gen_range(1..=3);
        let Ok(c) = plane::find_cycle(a, period, seed) else { continue };
        let modulus = (c.multiplier.re).hypot(c.multiplier.im);
        let product = c.points.iter().map(|z| z.re).sum::<f64>().exp();
        let rel = (modulus - product).abs() / product.max(1.0);
        tally.margin(1e-8 - rel, true, || format!("a = {a}, period {period}: |λ| = {modulus} vs {product}"));
    }
    tally.finish()
}

pub fn render_determinism(px: usize) -> SuiteResult {
    let mut tally = Tally::new("render_determinism");
    let vp = anchor_viewport(px);
    let a = plane::render_escape_bytes(cp(-1.0, 0.0), &vp, 60, plane::ESCAPE_RE);
    let b = plane::render_escape_bytes(cp(-1.0, 0.0), &vp, 60, plane::ESCAPE_RE);
    match (a, b) {
        (Ok((x, sx)), Ok((y, sy))) => {
            tally.check(x == y, || "image bytes differ".into());
            tally.check(sx == sy, || "summaries differ".into());
        }
        _ => tally.check(false, || "render failed".into()),
    }
    tally.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_rejected() {
        assert!(run_suite("nope", &RunConfig::default()).is_none());
        let r = run_suite("prop1_grid", &RunConfig::default()).unwrap();
        assert!(r.passed && r.checked == 1600);
    }

    #[test]
    fn dominated_pairs_dominate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let (a, b) = random_dominated_pair(&mut rng);
            for n in 0..20 {
                assert_eq!(a.seq_at(n).abs_le(&b.seq_at(n)), Some(true), "{a} vs {b} at {n}");
            }
        }
    }
}
