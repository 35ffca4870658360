//! The stratification `X_α` of the escaping endpoints, indexed by finite
//! strictly increasing lists `α = ⟨N_0, …, N_{k-1}⟩`.
//!
//! `X_∅` is the set of escaping endpoints and
//! `X_{α⌢N} = {x ∈ X_α : t*(σ^n s(x)) > 3·dom(α) + 2 for all n >= N}`.
//! Each `X_{α⌢N}` is nowhere dense in `X_α`; [`nowhere_dense_demo`] builds
//! the explicit sequences `s^m` that approach a member from outside.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::{Interval, TriBool};
use crate::model::{
    classify, distance, min_shifted_potential, pot, t_min, t_star_detail, Classification, ModelError,
    ModelPoint, Precision,
};
use crate::seq::{Symbol, SymbolSeq, TailRule};
use crate::tower::Magnitude;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StrataError {
    #[error("alpha entries must be strictly increasing: {0:?}")]
    InvalidAlpha(Vec<usize>),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget of {budget} exhausted while {task}")]
    BudgetExceeded { budget: usize, task: String },
    #[error("cannot order |s_{index}| = {base} against {cap}")]
    IncomparableTails { index: usize, base: String, cap: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A finite strictly increasing list of naturals. Serializes as a plain list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct AlphaIndex(Vec<usize>);

impl AlphaIndex {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(entries: Vec<usize>) -> Result<Self, StrataError> {
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(StrataError::InvalidAlpha(entries));
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn dom(&self) -> usize {
        self.0.len()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// The potential threshold attached to entry `i`.
    pub fn threshold(i: usize) -> f64 {
        (3 * i + 2) as f64
    }

    pub fn extend(&self, n: usize) -> Result<Self, StrataError> {
        let mut v = self.0.clone();
        v.push(n);
        Self::new(v)
    }
}

impl TryFrom<Vec<usize>> for AlphaIndex {
    type Error = StrataError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<AlphaIndex> for Vec<usize> {
    fn from(a: AlphaIndex) -> Self {
        a.0
    }
}

impl std::fmt::Display for AlphaIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|n| n.to_string()).collect();
        write!(f, "⟨{}⟩", parts.join(", "))
    }
}

/// Decide `inf_{n >= from} t*(σ^n s) > threshold`.
fn shifted_potentials_exceed(seq: &SymbolSeq, from: usize, threshold: f64, budget: usize) -> TriBool {
    let (inf, _horizon) = min_shifted_potential(seq, from, budget);
    if inf.lo > threshold {
        TriBool::True
    } else if inf.hi <= threshold {
        TriBool::False
    } else {
        TriBool::Unknown { evidence: inf }
    }
}

/// Membership of `x` in `X_α`.
pub fn in_x(alpha: &AlphaIndex, x: &ModelPoint, precision: &Precision) -> TriBool {
    let base = match classify(x, 64, precision) {
        Classification::InJEndpoint => TriBool::True,
        Classification::Unknown { evidence } => TriBool::Unknown { evidence },
        _ => TriBool::False,
    };
    let mut verdict = base.and(crate::model::in_e_tilde(x.seq()));
    for (i, &n) in alpha.entries().iter().enumerate() {
        if verdict.is_false() {
            break;
        }
        let level = shifted_potentials_exceed(x.seq(), n, AlphaIndex::threshold(i), precision.budget);
        verdict = verdict.and(level);
    }
    verdict
}

/// Least `N >= n_floor`, above every entry of `α`, with `x ∈ X_{α⌢N}`.
///
/// Terminates for members of `X_α` because their shifted potentials tend to
/// infinity.
pub fn find_extension(
    alpha: &AlphaIndex,
    x: &ModelPoint,
    n_floor: usize,
    precision: &Precision,
) -> Result<usize, StrataError> {
    if !in_x(alpha, x, precision).is_true() {
        return Err(StrataError::Precondition(format!("point is not a certified member of X_{alpha}")));
    }
    let threshold = AlphaIndex::threshold(alpha.dom());
    let start = alpha.last().map_or(n_floor, |l| n_floor.max(l + 1));
    for n in start..start.saturating_add(precision.budget) {
        if shifted_potentials_exceed(x.seq(), n, threshold, precision.budget).is_true() {
            return Ok(n);
        }
    }
    Err(StrataError::BudgetExceeded { budget: precision.budget, task: "searching for an extension".into() })
}

/// `s^m`: entries up to `m` copied from `base`, then
/// `min(|s_n|, floor(F^{n-m}(3·dom(α))))`.
///
/// The comparison is settled for the whole tail once the two growth laws
/// are ordered, so the witness is again a finite prefix plus a tail rule.
pub fn make_witness(base: &SymbolSeq, alpha: &AlphaIndex, m: usize, budget: usize) -> Result<SymbolSeq, StrataError> {
    if alpha.dom() == 0 {
        return Err(StrataError::Precondition("witnesses need dom(alpha) >= 1".into()));
    }
    if !matches!(base.tail(), TailRule::FExp { .. } | TailRule::LinExp { .. }) {
        return Err(StrataError::Precondition("witness bases need an FExp or LinExp tail".into()));
    }
    let cap_base = 3 * alpha.dom() as u64;
    let mut prefix: Vec<Symbol> = (0..=m).map(|n| base.seq_at(n)).collect();
    let p = base.prefix_len();
    let mut n = m + 1;
    loop {
        if n >= p {
            match settle_tail(base, cap_base, m, n) {
                Some(TailChoice::Cap) => {
                    let offset = u32::try_from(n - m - 1).expect("height fits");
                    let tail = TailRule::FExp { c: cap_base, offset };
                    return Ok(SymbolSeq::new(prefix, tail).expect("valid witness"));
                }
                Some(TailChoice::Base) => {
                    // LinExp entries are indexed absolutely, FExp ones by tail position.
                    let tail = match base.tail() {
                        TailRule::LinExp { .. } => base.tail().clone(),
                        _ => base.shift(n).tail().clone(),
                    };
                    return Ok(SymbolSeq::new(prefix, tail).expect("valid witness"));
                }
                None => {}
            }
        }
        if n > m + 1 + budget {
            return Err(StrataError::BudgetExceeded { budget, task: "resolving the witness tail".into() });
        }
        let entry = base.seq_at(n).abs();
        let cap = Symbol::floor_tower(cap_base, (n - m) as u32);
        let pick = match entry.abs_le(&cap) {
            Some(true) => entry,
            Some(false) => cap,
            None => {
                return Err(StrataError::IncomparableTails {
                    index: n,
                    base: entry.to_string(),
                    cap: cap.to_string(),
                })
            }
        };
        prefix.push(pick);
        n += 1;
    }
}

enum TailChoice {
    Cap,
    Base,
}

/// From index `n >= prefix_len(base)` on, decide whether the min always
/// picks the cap `floor(F^{j-m}(d))` or always the base entry.
fn settle_tail(base: &SymbolSeq, d: u64, m: usize, n: usize) -> Option<TailChoice> {
    match base.tail() {
        TailRule::FExp { c, offset } => {
            // Base heights exceed cap heights by a constant delta, so one
            // comparison of F^delta(c) with d orders every later pair.
            let delta = (n - base.prefix_len()) as i64 + 1 + *offset as i64 - (n - m) as i64;
            let (lhs, rhs) = if delta >= 0 {
                (Magnitude::point(*c as f64).f_iter(delta as u32), Magnitude::point(d as f64))
            } else {
                (Magnitude::point(*c as f64), Magnitude::point(d as f64).f_iter((-delta) as u32))
            };
            if rhs.certainly_le(&lhs) {
                Some(TailChoice::Cap)
            } else if lhs.certainly_lt(&rhs) {
                Some(TailChoice::Base)
            } else {
                None
            }
        }
        TailRule::LinExp { c, .. } => {
            // Cap T >= F(X) + 2 with e^X >= X + c + 1 is inherited by the next
            // index, and it keeps the ceiling ceil(F(X)) below floor(T).
            let (cc, idx) = match base.seq_at(n) {
                Symbol::CeilExp { c, n } => (c, n),
                _ => return None,
            };
            let x = crate::seq::scaled(&cc, idx);
            let cf = crate::seq::rational_to_f64(c);
            let grows = x.lo.exp() >= crate::interval::up(x.hi + cf + 1.0) * (1.0 + 1e-12);
            let cap = Magnitude::point(d as f64).f_iter((n - m) as u32);
            let need = Magnitude::plain(x).f().add_scalar(2.0);
            if grows && need.certainly_le(&cap) {
                Some(TailChoice::Base)
            } else {
                None
            }
        }
        _ => None,
    }
}

/// `m = max{n + k_n : n ∈ [N, M]}`, with `k_n` the least `k` such that
/// `F^{-k}|s_{n+k}| > 3·dom(α) + 2`.
pub fn select_m(base: &SymbolSeq, alpha: &AlphaIndex, n: usize, big_m: usize, budget: usize) -> Result<usize, StrataError> {
    if big_m < n {
        return Err(StrataError::Precondition(format!("M = {big_m} is below N = {n}")));
    }
    let threshold = AlphaIndex::threshold(alpha.dom());
    let needed = n + (0..n).filter_map(|j| least_k(base, j, threshold, budget)).max().unwrap_or(0);
    if big_m < needed {
        return Err(StrataError::Precondition(format!("M = {big_m} is below N + max k_n = {needed}")));
    }
    let mut m = 0;
    for j in n..=big_m {
        let k = least_k(base, j, threshold, budget)
            .ok_or_else(|| StrataError::BudgetExceeded { budget, task: format!("finding k_{j}") })?;
        m = m.max(j + k);
    }
    Ok(m)
}

fn least_k(base: &SymbolSeq, n: usize, threshold: f64, budget: usize) -> Option<usize> {
    // Every term is bounded by the sup, so a small t* rules out any k.
    if t_star_detail(base, n, budget).value.to_interval().hi <= threshold {
        return None;
    }
    (1..=budget).find(|&k| pot(base, n + k, k as u32).lo > threshold)
}

/// Everything checked about one witness `s^m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub m: usize,
    pub witness: SymbolSeq,
    /// Enclosure of `inf_{n >= m} t*(σ^n s^m)`; must exceed `3·dom(α) - 1`.
    pub claim1_margin: Interval,
    /// Enclosure of `t*(σ^m s^m)`; must stay at or below `3·dom(α)`.
    pub claim2_bound: Interval,
    /// Distance from the witness endpoint to the base point.
    pub distance: f64,
    pub t_min: Interval,
    /// Last shift inspected explicitly for Claim 1.
    pub horizon: usize,
    pub member_of_alpha: bool,
}

impl WitnessReport {
    pub fn claim1_holds(&self, alpha: &AlphaIndex) -> bool {
        self.claim1_margin.lo > 3.0 * alpha.dom() as f64 - 1.0
    }

    pub fn claim2_holds(&self, alpha: &AlphaIndex) -> bool {
        self.claim2_bound.hi <= 3.0 * alpha.dom() as f64
    }

    /// Gap between `t*(σ^m s^m)` and the closure bound `3·dom(α) + 1` of
    /// `X_{α⌢N}`.
    pub fn exclusion_margin(&self, alpha: &AlphaIndex) -> f64 {
        3.0 * alpha.dom() as f64 + 1.0 - self.claim2_bound.hi
    }
}

/// Build `count` witnesses `s^m` with increasing `m` outside the closure of
/// `X_{α⌢N}` that converge to `base_point`, verifying each one.
pub fn nowhere_dense_demo(
    base_point: &ModelPoint,
    alpha: &AlphaIndex,
    n: usize,
    count: usize,
    precision: &Precision,
) -> Result<Vec<WitnessReport>, StrataError> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let refined = alpha.extend(n)?;
    if !in_x(&refined, base_point, precision).is_true() {
        return Err(StrataError::Precondition(format!("base point is not a certified member of X_{refined}")));
    }
    let base = base_point.seq();
    let threshold = AlphaIndex::threshold(alpha.dom());
    let budget = precision.budget;
    let mut big_m = n + (0..n).filter_map(|j| least_k(base, j, threshold, budget)).max().unwrap_or(0);
    let mut reports = Vec::with_capacity(count);
    for _ in 0..count {
        let m = select_m(base, alpha, n, big_m, budget)?;
        reports.push(witness_report(base_point, alpha, m, precision)?);
        big_m = m;
    }
    Ok(reports)
}

/// Build and check `s^m` for a fixed `m`.
pub fn witness_report(
    base_point: &ModelPoint,
    alpha: &AlphaIndex,
    m: usize,
    precision: &Precision,
) -> Result<WitnessReport, StrataError> {
    let witness = make_witness(base_point.seq(), alpha, m, precision.budget)?;
    let (claim1_margin, horizon) = min_shifted_potential(&witness, m, precision.budget);
    let claim2_bound = t_star_detail(&witness, m, precision.budget).value.to_interval();
    let t_min = t_min(&witness, precision)?;
    let endpoint = ModelPoint::endpoint(witness.clone(), precision)?;
    let member_of_alpha = in_x(alpha, &endpoint, precision).is_true();
    Ok(WitnessReport {
        m,
        distance: distance(&endpoint, base_point),
        witness,
        claim1_margin,
        claim2_bound,
        t_min,
        horizon,
        member_of_alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fexp_endpoint(prefix: &[i64], c: u64) -> ModelPoint {
        let seq = SymbolSeq::from_ints(prefix, TailRule::fexp(c)).unwrap();
        ModelPoint::endpoint(seq, &Precision::default()).unwrap()
    }

    #[test]
    fn alpha_must_increase() {
        assert!(AlphaIndex::new(vec![0, 2, 5]).is_ok());
        assert!(AlphaIndex::new(vec![1, 1]).is_err());
        let a: AlphaIndex = serde_json::from_str("[0,3]").unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), "[0,3]");
        assert!(serde_json::from_str::<AlphaIndex>("[3,0]").is_err());
    }

    #[test]
    fn membership_examples() {
        let p = Precision::default();
        let x = fexp_endpoint(&[], 3);
        assert!(in_x(&AlphaIndex::new(vec![0]).unwrap(), &x, &p).is_true());
        let c1 = ModelPoint::endpoint(SymbolSeq::constant(1), &p).unwrap();
        assert!(in_x(&AlphaIndex::new(vec![0]).unwrap(), &c1, &p).is_false());
        let zero = ModelPoint::new(0.0, SymbolSeq::constant(0)).unwrap();
        assert!(in_x(&AlphaIndex::empty(), &zero, &p).is_false());
        // Escaping but not an endpoint.
        let above = ModelPoint::new(x.t() + 1.0, x.seq().clone()).unwrap();
        assert!(in_x(&AlphaIndex::empty(), &above, &p).is_false());
    }

    #[test]
    fn extension_search() {
        let p = Precision::default();
        let x = fexp_endpoint(&[], 3);
        assert_eq!(find_extension(&AlphaIndex::empty(), &x, 0, &p).unwrap(), 0);
        // t*(σ^n) = F^{n+1}(3): 19.08 at n = 0 already exceeds 5.
        assert_eq!(find_extension(&AlphaIndex::new(vec![0]).unwrap(), &x, 0, &p).unwrap(), 1);
        let c1 = ModelPoint::endpoint(SymbolSeq::constant(1), &p).unwrap();
        assert!(matches!(find_extension(&AlphaIndex::empty(), &c1, 0, &p), Err(StrataError::Precondition(_))));
    }

    #[test]
    fn witness_for_fexp10() {
        let base = SymbolSeq::from_ints(&[], TailRule::fexp(10)).unwrap();
        let alpha = AlphaIndex::new(vec![0]).unwrap();
        let w = make_witness(&base, &alpha, 2, 100).unwrap();
        for n in 0..=2 {
            assert_eq!(w.seq_at(n), base.seq_at(n));
        }
        for n in 3..8 {
            assert_eq!(w.seq_at(n), Symbol::floor_tower(3, (n - 2) as u32));
        }
    }

    #[test]
    fn witness_keeps_small_entries() {
        let base = SymbolSeq::from_ints(&[0, 0, 0, 0, 7, 0, 1], TailRule::fexp(4)).unwrap();
        let alpha = AlphaIndex::new(vec![0]).unwrap();
        let w = make_witness(&base, &alpha, 2, 100).unwrap();
        assert_eq!(w.seq_at(3), Symbol::Int(0));
        // min(7, floor(F^2(3))) = 7 and min(0, ·) = 0.
        assert_eq!(w.seq_at(4), Symbol::Int(7));
        assert_eq!(w.seq_at(5), Symbol::Int(0));
        // From n = 7 the base tower F^{n-6}(4) sits four levels below the cap.
        assert_eq!(w.seq_at(9), Symbol::floor_tower(4, 3));
    }

    #[test]
    fn witness_over_linexp_returns_to_base() {
        let base = SymbolSeq::from_ints(&[], TailRule::linexp(crate::seq::Rational::from_integer(2))).unwrap();
        let alpha = AlphaIndex::new(vec![0]).unwrap();
        let w = make_witness(&base, &alpha, 3, 100).unwrap();
        for n in 0..40 {
            let expect = if n <= 3 {
                base.seq_at(n)
            } else {
                match base.seq_at(n).abs_le(&Symbol::floor_tower(3, (n - 3) as u32)) {
                    Some(true) => base.seq_at(n),
                    _ => Symbol::floor_tower(3, (n - 3) as u32),
                }
            };
            assert_eq!(w.seq_at(n), expect, "n = {n}");
        }
    }

    #[test]
    fn select_m_examples() {
        let base = SymbolSeq::from_ints(&[], TailRule::fexp(10)).unwrap();
        let alpha = AlphaIndex::new(vec![0]).unwrap();
        assert_eq!(select_m(&base, &alpha, 1, 3, 100).unwrap(), 4);
        assert_eq!(select_m(&base, &alpha, 1, 2, 100).unwrap(), 3);
        assert!(select_m(&base, &alpha, 2, 1, 100).is_err());
    }

    #[test]
    fn demo_for_fexp10() {
        let p = Precision::default();
        let x = fexp_endpoint(&[], 10);
        let alpha = AlphaIndex::new(vec![0]).unwrap();
        let reports = nowhere_dense_demo(&x, &alpha, 1, 3, &p).unwrap();
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert!(r.claim1_holds(&alpha), "{:?}", r.claim1_margin);
            assert!(r.claim2_holds(&alpha), "{:?}", r.claim2_bound);
            assert!(r.exclusion_margin(&alpha) >= 1.0);
            assert!(r.member_of_alpha);
        }
        assert!(reports.windows(2).all(|w| w[1].m > w[0].m && w[1].distance < w[0].distance));
        assert!(nowhere_dense_demo(&x, &alpha, 1, 0, &p).unwrap().is_empty());
    }
}
