//! The model map `⟨t, s⟩ ↦ ⟨F(t) - |s_1|, σ(s)⟩` on `[0, ∞) × ℤ^ω`, the
//! potentials `t*` and the endpoint heights `t_s`.
//!
//! Two identities drive everything here:
//!
//! * the endpoint height satisfies `t_s = F^{-1}(|s_1| + t_{σ(s)})`, so
//!   `t_s` is obtained from an enclosure of `t_{σ^n(s)}` by `n` contracting
//!   steps (backward nesting);
//! * `t* <= t_s <= t* + 1`, which seeds the nesting at any depth.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::{down, up, Interval, TriBool};
use crate::seq::{Asymptotics, Symbol, SymbolSeq, TailRule};
use crate::tower::{f_interval, f_inv_interval, Magnitude, OVERFLOW_GUARD};

/// Default enclosure width for converged quantities.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default cap on scanned terms and nesting levels.
pub const DEFAULT_BUDGET: usize = 100_000;

/// Nesting levels without any narrowing before `t_min` gives up.
const STAGNATION_LEVELS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("t_min did not reach width {tol:e} after {levels} levels; best enclosure {enclosure}")]
    NonConvergence { enclosure: Interval, levels: usize, tol: f64 },
    #[error("model points need a finite t >= 0, got {0}")]
    InvalidPoint(f64),
    #[error("endpoint height {0} is not representable as a float")]
    Unrepresentable(Interval),
}

/// Numerical knobs shared by the certified routines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Precision {
    pub tol: f64,
    pub budget: usize,
}

impl Default for Precision {
    fn default() -> Self {
        Self { tol: DEFAULT_TOL, budget: DEFAULT_BUDGET }
    }
}

// ---- potentials ------------------------------------------------------------

/// Enclosure of `F^{-k}|s_n|` as a [`Magnitude`].
pub fn pot_magnitude(seq: &SymbolSeq, n: usize, k: u32) -> Magnitude {
    seq.seq_at(n).magnitude().f_inv_iter(k)
}

/// Enclosure of the single potential term `F^{-k}|s_n|`.
pub fn pot(seq: &SymbolSeq, n: usize, k: u32) -> Interval {
    pot_magnitude(seq, n, k).to_interval()
}

/// `t*` of a shifted sequence together with the number of terms inspected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TStar {
    pub value: Magnitude,
    /// Largest `k` evaluated explicitly before the tail rule closed the sup.
    pub horizon: usize,
}

/// Enclosure of `t*` of `σ^shift(s)`, i.e. `sup_{k>=1} F^{-k}|s_{shift+k}|`.
pub fn t_star(seq: &SymbolSeq, shift: usize) -> Interval {
    t_star_detail(seq, shift, DEFAULT_BUDGET).value.to_interval()
}

pub fn t_star_detail(seq: &SymbolSeq, shift: usize, budget: usize) -> TStar {
    let p = seq.prefix_len();
    let first_tail_k = p.saturating_sub(shift).max(1);
    let mut best: Option<Magnitude> = None;
    let push = |m: Magnitude, best: &mut Option<Magnitude>| {
        *best = Some(match best {
            Some(b) => b.max(&m),
            None => m,
        });
    };
    for k in 1..first_tail_k {
        push(pot_magnitude(seq, shift + k, k as u32), &mut best);
    }
    let mut horizon = first_tail_k.saturating_sub(1);
    match seq.tail() {
        TailRule::Const(_) => {
            // F^{-k}(c) decreases in k: the first tail term dominates.
            push(pot_magnitude(seq, shift + first_tail_k, first_tail_k as u32), &mut best);
            horizon = first_tail_k;
        }
        TailRule::Periodic { pattern, .. } => {
            // Each value reappears later with a larger k, hence a smaller term.
            for k in first_tail_k..first_tail_k + pattern.len() {
                push(pot_magnitude(seq, shift + k, k as u32), &mut best);
            }
            horizon = first_tail_k + pattern.len() - 1;
        }
        TailRule::FExp { c, offset } => {
            // Tail terms are F^{-k} floor(F^{k+e}(c)) with e fixed; they stay
            // below F^e(c) and converge to it, so the sup is exactly F^e(c).
            let e = shift as i64 - p as i64 + 1 + *offset as i64;
            let base = Magnitude::point(*c as f64);
            let sup = if e >= 0 {
                base.f_iter(e as u32)
            } else {
                base.f_inv_iter((-e) as u32)
            };
            push(sup, &mut best);
        }
        TailRule::LinExp { c, .. } => {
            let cf = crate::seq::rational_to_f64(c);
            let mut lower_max = best.map(|b| b.to_interval().lo).unwrap_or(0.0);
            let mut closed = false;
            let mut k = first_tail_k;
            while k < first_tail_k + budget {
                let term = pot_magnitude(seq, shift + k, k as u32);
                lower_max = lower_max.max(term.to_interval().lo);
                push(term, &mut best);
                // Upper bounds are nonincreasing from the first k where
                // ln(2 + X + c) <= X with X = c * index.
                let x = match seq.seq_at(shift + k) {
                    Symbol::CeilExp { c: cc, n } => crate::seq::scaled(&cc, n).lo,
                    _ => cf * (shift + k) as f64,
                };
                let monotone = up((2.0 + x + cf).ln()) <= down(x);
                if monotone && term.to_interval().hi <= lower_max {
                    closed = true;
                    break;
                }
                k += 1;
            }
            horizon = k;
            if !closed {
                let b = best.unwrap_or_else(Magnitude::zero);
                best = Some(Magnitude::plain(Interval::new(b.to_interval().lo, f64::INFINITY)));
            }
        }
    }
    TStar { value: best.unwrap_or_else(Magnitude::zero), horizon }
}

// ---- endpoint heights ------------------------------------------------------

/// Result of the endpoint-height computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TMin {
    pub value: Magnitude,
    pub enclosure: Interval,
    /// Nesting depth used for the final enclosure.
    pub levels: usize,
    pub converged: bool,
}

/// One backward-nesting step `F^{-1}(|s_j| + v)`.
fn nest_step(seq: &SymbolSeq, j: usize, v: &Magnitude) -> Magnitude {
    seq.seq_at(j).magnitude().add(v).f_inv()
}

/// Apply `F^{-1}(|s_1| + F^{-1}(|s_2| + ... F^{-1}(|s_n| + seed)))`.
fn nest(seq: &SymbolSeq, n: usize, seed: Magnitude) -> Magnitude {
    (1..=n).rev().fold(seed, |v, j| nest_step(seq, j, &v))
}

/// The lower bound `u_n`: least `t` whose first `n` iterates stay in
/// `[0, ∞)`. Nondecreasing in `n` with limit `t_s`.
pub fn backward_nesting(seq: &SymbolSeq, n: usize) -> Interval {
    nest(seq, n, Magnitude::zero()).to_interval()
}

/// Certified enclosure of `t_s = min{t >= 0 : ⟨t, s⟩ ∈ J}`.
///
/// Returns `NonConvergence` (with the best enclosure found) when the width
/// cannot be brought below `precision.tol`.
pub fn t_min(seq: &SymbolSeq, precision: &Precision) -> Result<Interval, ModelError> {
    let r = t_min_detail(seq, precision);
    if r.converged {
        Ok(r.enclosure)
    } else {
        Err(ModelError::NonConvergence { enclosure: r.enclosure, levels: r.levels, tol: precision.tol })
    }
}

pub fn t_min_detail(seq: &SymbolSeq, precision: &Precision) -> TMin {
    let value_and_levels = match seq.tail() {
        TailRule::Const(_) | TailRule::Periodic { .. } => bounded_t_min(seq, precision),
        TailRule::FExp { .. } | TailRule::LinExp { .. } => divergent_t_min(seq, precision),
    };
    let (value, levels) = value_and_levels;
    let enclosure = value.to_interval();
    let converged = value.is_plain() && enclosure.is_bounded() && enclosure.width() <= precision.tol;
    TMin { value, enclosure, levels, converged }
}

fn seed_from_t_star(t: &Magnitude) -> Magnitude {
    t.hull(&t.add_scalar(1.0))
}

fn bounded_t_min(seq: &SymbolSeq, precision: &Precision) -> (Magnitude, usize) {
    let p = seq.prefix_len();
    let pattern: Vec<i64> = match seq.tail() {
        TailRule::Const(c) => vec![*c],
        TailRule::Periodic { pattern, offset } => {
            let l = pattern.len();
            (0..l).map(|j| pattern[(j + *offset as usize % l) % l]).collect()
        }
        _ => unreachable!("bounded tails only"),
    };
    let periodic = seq.shift(p);
    let tail_height = periodic_endpoint(&periodic, &pattern, precision);
    (nest(seq, p, tail_height), p)
}

/// Endpoint height of a purely periodic sequence: the unique fixed point of
/// the period map `v ↦ F^{-1}(|r_1| + ... F^{-1}(|r_L| + v))`, which is
/// concave and increasing, so the sign of `Φ(v) - v` locates the root.
fn periodic_endpoint(r: &SymbolSeq, pattern: &[i64], precision: &Precision) -> Magnitude {
    if pattern.iter().all(|&v| v == 0) {
        return Magnitude::zero();
    }
    let l = pattern.len();
    let phi = |v: f64| nest(r, l, Magnitude::point(v)).to_interval();
    let ts = t_star_detail(r, 0, precision.budget).value.to_interval();
    let mut lo = ts.lo;
    let mut hi = up(ts.hi + 1.0);
    for _ in 0..200 {
        if hi - lo <= precision.tol * 0.25 {
            break;
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let img = phi(mid);
        if img.lo > mid {
            lo = mid;
        } else if img.hi < mid {
            hi = mid;
        } else {
            break;
        }
    }
    Magnitude::plain(Interval::new(lo, hi))
}

fn divergent_t_min(seq: &SymbolSeq, precision: &Precision) -> (Magnitude, usize) {
    let ts0 = t_star_detail(seq, 0, precision.budget).value;
    let mut best = seed_from_t_star(&ts0);
    let mut best_level = 0;
    let mut stale = 0;
    let max_levels = precision.budget.max(1);
    for n in 1..=max_levels {
        let tsn = t_star_detail(seq, n, precision.budget).value;
        let candidate = nest(seq, n, seed_from_t_star(&tsn));
        let narrowed = intersect(&best, &candidate);
        if improves(&narrowed, &best) {
            best = narrowed;
            best_level = n;
            stale = 0;
        } else {
            stale += 1;
        }
        let iv = best.to_interval();
        if best.is_plain() && iv.width() <= precision.tol {
            break;
        }
        if stale >= STAGNATION_LEVELS {
            break;
        }
    }
    (best, best_level)
}

fn intersect(a: &Magnitude, b: &Magnitude) -> Magnitude {
    let d = a.depth().max(b.depth());
    let (x, y) = (a.level(d), b.level(d));
    let lo_side = x.max(&y);
    let hi_side = x.min(&y);
    if lo_side.lo > hi_side.hi {
        // Sound enclosures always meet; disjointness means rounding noise.
        return Magnitude::tower(d, x.hull(&y));
    }
    Magnitude::tower(
        d,
        Interval { lo: lo_side.lo, lo_open: lo_side.lo_open, hi: hi_side.hi, hi_open: hi_side.hi_open },
    )
}

fn improves(new: &Magnitude, old: &Magnitude) -> bool {
    if new.depth() != old.depth() {
        return new.depth() < old.depth();
    }
    let (a, b) = (new.inner(), old.inner());
    a.lo > b.lo || a.hi < b.hi
}

// ---- points and the model map ------------------------------------------------

/// A point `⟨t, s⟩` with `T(x) = t` and `s(x) = s`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelPoint {
    t: f64,
    seq: SymbolSeq,
}

impl ModelPoint {
    pub fn new(t: f64, seq: SymbolSeq) -> Result<Self, ModelError> {
        if !t.is_finite() || t < 0.0 {
            return Err(ModelError::InvalidPoint(t));
        }
        Ok(Self { t, seq })
    }

    /// The endpoint `⟨t_s, s⟩`, with `t_s` rounded to the midpoint of its
    /// certified enclosure.
    pub fn endpoint(seq: SymbolSeq, precision: &Precision) -> Result<Self, ModelError> {
        let enc = t_min(&seq, precision)?;
        if !enc.is_bounded() || enc.lo >= f64::MAX {
            return Err(ModelError::Unrepresentable(enc));
        }
        Self::new(enc.mid(), seq)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn seq(&self) -> &SymbolSeq {
        &self.seq
    }
}

/// Outcome of one application of the model map.
#[derive(Debug, Clone, PartialEq)]
pub enum Step {
    Point(ModelPoint),
    /// The new `t` coordinate is certifiably negative.
    NotInDomain,
    /// `F(t)` exceeds the overflow guard; `lower` bounds the new coordinate.
    Large { lower: Magnitude, seq: SymbolSeq },
}

/// `⟨t, s⟩ ↦ ⟨F(t) - |s_1|, σ(s)⟩`.
pub fn model_step(x: &ModelPoint) -> Step {
    let s1 = x.seq.seq_at(1).magnitude();
    let next_seq = x.seq.shift(1);
    if x.t > OVERFLOW_GUARD {
        let ft = Magnitude::point(x.t).f();
        if ft.certainly_lt(&s1) {
            return Step::NotInDomain;
        }
        return Step::Large { lower: ft, seq: next_seq };
    }
    let ft = f_interval(&Interval::point(x.t));
    if !s1.is_plain() {
        if Magnitude::plain(ft).certainly_lt(&s1) {
            return Step::NotInDomain;
        }
        return Step::Large { lower: Magnitude::zero(), seq: next_seq };
    }
    let diff = ft.sub(&s1.to_interval());
    if diff.hi < 0.0 {
        return Step::NotInDomain;
    }
    let nearest = x.t.exp_m1() - s1.to_interval().mid();
    Step::Point(ModelPoint { t: nearest.max(0.0), seq: next_seq })
}

/// Up to `n` iterates of the model map, stopping when the orbit leaves the
/// domain or passes the overflow guard.
pub fn orbit(x: &ModelPoint, n: usize) -> Vec<Step> {
    let mut out = Vec::with_capacity(n);
    let mut cur = x.clone();
    for _ in 0..n {
        let step = model_step(&cur);
        let next = match &step {
            Step::Point(p) => Some(p.clone()),
            _ => None,
        };
        out.push(step);
        match next {
            Some(p) => cur = p,
            None => break,
        }
    }
    out
}

// ---- classification ----------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    /// Some iterate has certifiably negative `t`; carries the first such step.
    NotInJ { first_failing_step: usize },
    InJEscapeCertified,
    /// The escaping endpoint of an unbounded address.
    InJEndpoint,
    /// Endpoint of a bounded address; its orbit is eventually periodic.
    InJNonEscaping,
    Unknown { evidence: Interval },
}

/// Classify a point of `[0, ∞) × ℤ^ω` relative to `J` and `I`.
///
/// * within `tol` of a converged endpoint enclosure: an endpoint, whose
///   orbit runs through endpoints of shifted addresses (eventually periodic
///   for bounded tails, escaping for the others);
/// * strictly above `t_s`: escaping. If `g_n = T(F^n x) - t_{σ^n s}` then
///   `g_{n+1} >= e^{t_{σ^n s}}(e^{g_n} - 1) >= F(g_n)`, so `g_n >= F^n(g_0)`;
/// * below `t_s`: not in `J`, and the interval orbit finds a negative step.
///
/// When the endpoint enclosure is too wide the orbit is scanned for the
/// direct certificate `T(F^n x) > t*(σ^n s) + 1`.
pub fn classify(x: &ModelPoint, budget: usize, precision: &Precision) -> Classification {
    let tm = t_min_detail(&x.seq, precision);
    let enc = tm.enclosure;
    let tol = precision.tol;
    if tm.converged && x.t >= enc.lo - tol && x.t <= enc.hi + tol {
        return match x.seq.asymptotics() {
            Asymptotics::Bounded => Classification::InJNonEscaping,
            Asymptotics::DivergesToInfinity => Classification::InJEndpoint,
        };
    }
    if enc.certainly_lt(x.t) {
        return Classification::InJEscapeCertified;
    }
    scan_orbit(x, budget, precision, enc)
}

fn scan_orbit(x: &ModelPoint, budget: usize, precision: &Precision, evidence: Interval) -> Classification {
    let mut t = Magnitude::point(x.t);
    for n in 0..=budget {
        if n > 0 {
            let s = x.seq.seq_at(n).magnitude();
            let ft = t.f();
            if ft.certainly_lt(&s) {
                return Classification::NotInJ { first_failing_step: n };
            }
            if ft.is_plain() && s.is_plain() {
                let diff = ft.to_interval().sub(&s.to_interval());
                if diff.hi < 0.0 {
                    return Classification::NotInJ { first_failing_step: n };
                }
                // May straddle zero; F stays defined down to -1.
                t = Magnitude::plain(diff);
            } else {
                match ft.sub(&s) {
                    Some(m) => t = m,
                    None => break,
                }
            }
        }
        if t.to_interval().lo >= 0.0 {
            let bound = t_star_detail(&x.seq, n, precision.budget).value.add_scalar(1.0);
            if bound.certainly_lt(&t) {
                return Classification::InJEscapeCertified;
            }
        }
    }
    Classification::Unknown { evidence }
}

/// Membership in the escaping endpoints `E ∩ I`, decided from the tail
/// rule: `t*` is finite for every supported rule, and the shifted
/// potentials diverge exactly for the exponential tails.
pub fn in_e_tilde(seq: &SymbolSeq) -> TriBool {
    match seq.asymptotics() {
        Asymptotics::Bounded => TriBool::False,
        Asymptotics::DivergesToInfinity => TriBool::True,
    }
}

/// Lower bound `inf_{n >= from} t*(σ^n s)` together with the index after
/// which the tail rule certifies monotone growth.
pub fn min_shifted_potential(seq: &SymbolSeq, from: usize, budget: usize) -> (Interval, usize) {
    let p = seq.prefix_len();
    let mut acc: Option<Interval> = None;
    let fold = |iv: Interval, acc: &mut Option<Interval>| {
        *acc = Some(match acc {
            Some(a) => a.min(&iv),
            None => iv,
        });
    };
    match seq.tail() {
        TailRule::FExp { .. } => {
            // For n >= p - 1 every term is in the tail and t*(σ^n s) = F^e(c)
            // with e increasing in n.
            let stop = from.max(p.saturating_sub(1));
            for n in from..=stop {
                fold(t_star_detail(seq, n, budget).value.to_interval(), &mut acc);
            }
            (acc.expect("nonempty range"), stop)
        }
        TailRule::LinExp { .. } => {
            // For n >= p, t*(σ^n s) >= F^{-1}(ceil(F(c·idx))) >= c·idx with idx
            // the (increasing) index of s_{n+1}.
            let mut n = from;
            loop {
                let ts = t_star_detail(seq, n, budget).value.to_interval();
                fold(ts, &mut acc);
                let a = acc.expect("folded");
                if n + 1 >= p {
                    let floor = match seq.seq_at(n + 1) {
                        Symbol::CeilExp { c, n: idx } => crate::seq::scaled(&c, idx).lo,
                        s => s.magnitude().f_inv().to_interval().lo,
                    };
                    if floor >= a.lo || n >= from + budget {
                        return (a, n);
                    }
                }
                n += 1;
            }
        }
        TailRule::Const(_) | TailRule::Periodic { .. } => {
            let l = match seq.tail() {
                TailRule::Periodic { pattern, .. } => pattern.len(),
                _ => 1,
            };
            let stop = from.max(p) + l;
            for n in from..=stop {
                fold(t_star_detail(seq, n, budget).value.to_interval(), &mut acc);
            }
            (acc.expect("nonempty range"), stop)
        }
    }
}

/// Product metric `|t - t'| + Σ_{n<64} 2^{-n} min(1, |s_n - s'_n|)`; the
/// omitted tail contributes at most `2^{-63}`.
pub fn distance(a: &ModelPoint, b: &ModelPoint) -> f64 {
    let mut d = (a.t - b.t).abs();
    for n in 0..64 {
        let (x, y) = (a.seq.seq_at(n), b.seq.seq_at(n));
        let diff = match (x.abs_int(), y.abs_int(), &x, &y) {
            (_, _, Symbol::Int(u), Symbol::Int(v)) => (*u as i128 - *v as i128).unsigned_abs().min(1) as f64,
            _ if x == y => 0.0,
            _ => 1.0,
        };
        d += diff * 0.5f64.powi(n as i32);
    }
    d
}

/// `F^{-1}` applied to a plain interval; re-exported for callers that do not
/// need [`Magnitude`].
pub fn f_inv_enclosure(iv: &Interval) -> Interval {
    f_inv_interval(iv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seq::Rational;

    const LN2: f64 = std::f64::consts::LN_2;
    // Root of e^t = t + 2 (bisection in 40-digit arithmetic).
    const CONST1_HEIGHT: f64 = 1.146_193_220_620_582_6;

    fn p() -> Precision {
        Precision::default()
    }

    fn ints(prefix: &[i64], tail: TailRule) -> SymbolSeq {
        SymbolSeq::from_ints(prefix, tail).unwrap()
    }

    #[test]
    fn pot_examples() {
        let c1 = SymbolSeq::constant(1);
        assert!((pot(&c1, 3, 3).mid() - 0.423_035_857_164_402).abs() < 1e-12);
        let f3 = ints(&[0], TailRule::fexp(3));
        assert!(pot(&f3, 1, 1).contains(20f64.ln()));
        let deep = pot(&f3, 4, 4);
        assert!(deep.lo > 2.0 && deep.hi <= 3.0 + 1e-12, "{deep}");
    }

    #[test]
    fn t_star_examples() {
        assert_eq!(t_star(&SymbolSeq::constant(0), 0), Interval::point(0.0));
        let c1 = t_star(&SymbolSeq::constant(1), 0);
        assert!(c1.contains(LN2) && c1.width() < 1e-15);
        let f3 = t_star(&ints(&[0], TailRule::fexp(3)), 0);
        assert!(f3.lo >= 2.995_732 && f3.hi <= 3.0 + 1e-12, "{f3}");
    }

    #[test]
    fn t_star_linexp_is_finite() {
        let l = ints(&[], TailRule::linexp(Rational::from_integer(1)));
        let t = t_star_detail(&l, 0, DEFAULT_BUDGET);
        let iv = t.value.to_interval();
        assert!(iv.is_bounded(), "{iv}");
        // k = 1 term is F^{-1}(2) = ln 3.
        assert!(iv.lo >= 3f64.ln() - 1e-12);
    }

    #[test]
    fn t_min_examples() {
        assert_eq!(t_min(&SymbolSeq::constant(0), &p()).unwrap(), Interval::point(0.0));
        let c1 = t_min(&SymbolSeq::constant(1), &p()).unwrap();
        assert!((c1.mid() - CONST1_HEIGHT).abs() < 1e-9, "{c1}");
        let ln6 = t_min(&ints(&[0, 5], TailRule::Const(0)), &p()).unwrap();
        assert!(ln6.contains(6f64.ln()) || (ln6.mid() - 6f64.ln()).abs() < 1e-12, "{ln6}");
    }

    #[test]
    fn t_min_fexp_converges() {
        let f10 = t_min(&ints(&[], TailRule::fexp(10)), &p()).unwrap();
        // F(10) + ln 2 up to terms below e^{-22025}.
        assert!((f10.mid() - 22_026.158_941_987_276).abs() < 1e-8, "{f10}");
        let f3 = t_min(&ints(&[], TailRule::fexp(3)), &p()).unwrap();
        assert!(f3.width() <= 1e-9);
    }

    #[test]
    fn t_min_reports_nonconvergence() {
        let tight = Precision { tol: 1e-30, budget: 64 };
        match t_min(&SymbolSeq::constant(1), &tight) {
            Err(ModelError::NonConvergence { enclosure, .. }) => assert!(enclosure.contains(CONST1_HEIGHT)),
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }

    #[test]
    fn model_step_examples() {
        let zero = ModelPoint::new(0.0, SymbolSeq::constant(0)).unwrap();
        assert_eq!(model_step(&zero), Step::Point(zero.clone()));
        let x = ModelPoint::new(LN2, SymbolSeq::constant(1)).unwrap();
        match model_step(&x) {
            Step::Point(y) => assert!(y.t() < 1e-15),
            other => panic!("{other:?}"),
        }
        let fixed = ModelPoint::new(1.146193, SymbolSeq::constant(1)).unwrap();
        match model_step(&fixed) {
            Step::Point(y) => assert!((y.t() - 1.146193).abs() < 1e-6),
            other => panic!("{other:?}"),
        }
        let neg = ModelPoint::new(0.1, SymbolSeq::constant(5)).unwrap();
        assert_eq!(model_step(&neg), Step::NotInDomain);
        let huge = ModelPoint::new(800.0, SymbolSeq::constant(1)).unwrap();
        assert!(matches!(model_step(&huge), Step::Large { .. }));
    }

    #[test]
    fn classify_examples() {
        let zero = ModelPoint::new(0.0, SymbolSeq::constant(0)).unwrap();
        assert_eq!(classify(&zero, 10, &p()), Classification::InJNonEscaping);
        let x = ModelPoint::new(LN2, SymbolSeq::constant(1)).unwrap();
        assert_eq!(classify(&x, 10, &p()), Classification::NotInJ { first_failing_step: 2 });
        let esc = ModelPoint::new(2.0, SymbolSeq::constant(0)).unwrap();
        assert_eq!(classify(&esc, 10, &p()), Classification::InJEscapeCertified);
        let e = ModelPoint::endpoint(ints(&[], TailRule::fexp(3)), &p()).unwrap();
        assert_eq!(classify(&e, 10, &p()), Classification::InJEndpoint);
    }

    #[test]
    fn in_e_tilde_examples() {
        assert_eq!(in_e_tilde(&SymbolSeq::constant(1)), TriBool::False);
        assert_eq!(in_e_tilde(&ints(&[0], TailRule::fexp(3))), TriBool::True);
        assert_eq!(in_e_tilde(&ints(&[], TailRule::linexp(Rational::from_integer(1)))), TriBool::True);
    }

    #[test]
    fn backward_nesting_is_monotone() {
        let s = ints(&[3, 1, 4, 1, 5], TailRule::periodic(vec![9, 2, 6]));
        let ts = t_star(&s, 0);
        let mut prev = 0.0;
        for n in 1..30 {
            let u = backward_nesting(&s, n);
            assert!(u.hi >= prev - 1e-12);
            assert!(u.hi <= ts.hi + 1.0 + 1e-9);
            prev = u.lo;
        }
        let tm = t_min(&s, &p()).unwrap();
        assert!((prev - tm.mid()).abs() < 1e-8);
    }

    #[test]
    fn distance_basics() {
        let a = ModelPoint::new(1.0, SymbolSeq::constant(2)).unwrap();
        let b = ModelPoint::new(1.5, ints(&[2, 2, 7], TailRule::Const(2))).unwrap();
        assert!((distance(&a, &b) - (0.5 + 0.25)).abs() < 1e-15);
        assert_eq!(distance(&a, &a), 0.0);
    }
}
