//! The map `F(t) = e^t - 1`, its inverse `ln(t + 1)`, and [`Magnitude`],
//! an overflow-safe enclosure of numbers far beyond `f64` range.

use thiserror::Error;

use crate::interval::{down, up, Interval};

/// Largest argument accepted by [`f_map`]; beyond it callers switch to
/// [`Magnitude`] reasoning.
pub const OVERFLOW_GUARD: f64 = 700.0;

/// A depth-0 [`Magnitude`] whose upper end exceeds `F(PLAIN_LOG_LIMIT)` is
/// moved one level down the tower.
pub const PLAIN_LOG_LIMIT: f64 = 690.0;

const LN_2: f64 = std::f64::consts::LN_2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TowerError {
    #[error("F({0}) exceeds the overflow guard {OVERFLOW_GUARD}")]
    OverflowGuard(f64),
    #[error("argument {0} is outside the domain [0, inf)")]
    InvalidInput(f64),
}

/// `F(t) = e^t - 1` rounded to nearest.
pub fn f_map(t: f64) -> Result<f64, TowerError> {
    if t.is_nan() || t < 0.0 {
        return Err(TowerError::InvalidInput(t));
    }
    if t > OVERFLOW_GUARD {
        return Err(TowerError::OverflowGuard(t));
    }
    Ok(t.exp_m1())
}

/// `F^{-1}(t) = ln(t + 1)`.
pub fn f_inv(t: f64) -> f64 {
    t.ln_1p()
}

/// The `k`-fold composition `F^{-k}(t)`.
pub fn f_inv_k(k: u32, t: f64) -> Result<f64, TowerError> {
    if t.is_nan() || t < 0.0 {
        return Err(TowerError::InvalidInput(t));
    }
    Ok((0..k).fold(t, |v, _| v.ln_1p()))
}

/// Enclosure of `F` over an interval. Results that overflow saturate to a
/// lower bound of `f64::MAX` and an upper bound of `+inf`.
pub fn f_interval(iv: &Interval) -> Interval {
    let lo = iv.lo.exp_m1();
    let hi = iv.hi.exp_m1();
    Interval {
        lo: if lo.is_finite() { down(lo).max(-1.0) } else { f64::MAX },
        hi: if hi.is_finite() { up(hi) } else { f64::INFINITY },
        lo_open: iv.lo_open,
        hi_open: iv.hi_open && hi.is_finite(),
    }
}

/// Enclosure of `F^{-1}` over an interval with `lo > -1`.
pub fn f_inv_interval(iv: &Interval) -> Interval {
    iv.map_increasing(f64::ln_1p)
}

pub fn f_inv_k_interval(k: u32, iv: &Interval) -> Interval {
    (0..k).fold(*iv, |acc, _| f_inv_interval(&acc))
}

/// Enclosure of `ln(e^x + e^y - 1)` for nonnegative `x`, `y`.
///
/// With `x = F^{-1}(A)` and `y = F^{-1}(B)` this is exactly `F^{-1}(A + B)`.
fn log_sum_minus_one(x: &Interval, y: &Interval) -> Interval {
    fn eval(a: f64, b: f64) -> f64 {
        if a.is_infinite() || b.is_infinite() {
            return f64::INFINITY;
        }
        let (big, small) = if a >= b { (a, b) } else { (b, a) };
        if small <= OVERFLOW_GUARD {
            big + ((-big).exp() * small.exp_m1()).ln_1p()
        } else {
            big + ((small - big).exp() - (-big).exp()).ln_1p()
        }
    }
    Interval {
        lo: down(down(eval(x.lo, y.lo))),
        hi: up(up(eval(x.hi, y.hi))),
        lo_open: x.lo_open && y.lo_open,
        hi_open: false,
    }
}

/// Enclosure of a nonnegative real `v` written as `v` in `F^depth(inner)`.
///
/// Depth zero is a plain interval. Towers such as `F^5(3)` are held at the
/// deepest level where the argument still fits in an `f64`; the normal form
/// keeps `inner.hi > PLAIN_LOG_LIMIT` whenever `depth > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Magnitude {
    depth: u32,
    inner: Interval,
}

impl Magnitude {
    pub fn plain(iv: Interval) -> Self {
        Self { depth: 0, inner: iv }.normalize()
    }

    pub fn point(x: f64) -> Self {
        Self::plain(Interval::point(x))
    }

    pub fn zero() -> Self {
        Self::point(0.0)
    }

    /// `F^depth` applied to `inner`.
    pub fn tower(depth: u32, inner: Interval) -> Self {
        Self { depth, inner }.normalize()
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn inner(&self) -> Interval {
        self.inner
    }

    /// True when the value is held as a plain `f64` enclosure.
    pub fn is_plain(&self) -> bool {
        self.depth == 0
    }

    fn normalize(mut self) -> Self {
        while self.depth > 0 && self.inner.hi <= PLAIN_LOG_LIMIT {
            self.inner = f_interval(&self.inner);
            self.depth -= 1;
        }
        if self.depth == 0 && self.inner.hi > PLAIN_LOG_LIMIT.exp() {
            self.inner = f_inv_interval(&self.inner);
            self.depth = 1;
        }
        self
    }

    /// `F(v)`.
    pub fn f(&self) -> Self {
        if self.depth == 0 && self.inner.hi <= PLAIN_LOG_LIMIT {
            Self::plain(f_interval(&self.inner))
        } else {
            Self { depth: self.depth + 1, inner: self.inner }
        }
    }

    pub fn f_iter(&self, n: u32) -> Self {
        let mut m = *self;
        for i in 0..n {
            if m.depth > 0 {
                return Self { depth: m.depth + (n - i), inner: m.inner };
            }
            m = m.f();
        }
        m
    }

    /// `F^{-1}(v)`.
    pub fn f_inv(&self) -> Self {
        if self.depth == 0 {
            Self::plain(f_inv_interval(&self.inner))
        } else {
            Self { depth: self.depth - 1, inner: self.inner }.normalize()
        }
    }

    /// `F^{-k}(v)`.
    pub fn f_inv_iter(&self, k: u32) -> Self {
        if k <= self.depth {
            return Self { depth: self.depth - k, inner: self.inner }.normalize();
        }
        Self::plain(f_inv_k_interval(k - self.depth, &self.inner))
    }

    /// Enclosure of `F^{-d}(v)` as a plain interval. When `d < depth` the
    /// forward applications may saturate to `[f64::MAX, +inf]`.
    pub fn level(&self, d: u32) -> Interval {
        if d >= self.depth {
            f_inv_k_interval(d - self.depth, &self.inner)
        } else {
            (0..self.depth - d).fold(self.inner, |acc, _| f_interval(&acc))
        }
    }

    /// Plain enclosure of the value itself, saturating when out of range.
    pub fn to_interval(&self) -> Interval {
        self.level(0)
    }

    /// `v + w`.
    pub fn add(&self, other: &Magnitude) -> Magnitude {
        if self.depth == 0 && other.depth == 0 {
            return Self::plain(self.inner.add(&other.inner));
        }
        let x = self.f_inv();
        let y = other.f_inv();
        let log_sum = if x.depth == 0 && y.depth == 0 {
            Self::plain(log_sum_minus_one(&x.inner, &y.inner))
        } else {
            // ln(e^x + e^y - 1) lies in [max(x, y), max(x, y) + ln 2].
            x.max(&y).add(&Self::plain(Interval::new(0.0, LN_2)))
        };
        log_sum.f()
    }

    /// `v - w` when `v > w` is certain and both fit at depth at most one;
    /// `None` otherwise.
    pub fn sub(&self, other: &Magnitude) -> Option<Magnitude> {
        if self.depth == 0 && other.depth == 0 {
            let d = self.inner.sub(&other.inner);
            return (d.lo > 0.0).then(|| Self::plain(d));
        }
        if self.depth > 1 || other.depth > 1 {
            return None;
        }
        // With v = e^A - 1 and w = e^B - 1: ln(v - w) = A + ln(-expm1(B - A)).
        let (a, b) = (self.level(1), other.level(1));
        if !(a.lo > b.hi) || !a.is_bounded() || !b.is_bounded() {
            return None;
        }
        let log_lo = down(down(a.lo + (-(b.hi - a.lo).exp_m1()).ln()));
        let log_hi = up(up(a.hi + (-(b.lo - a.hi).exp_m1()).ln()));
        // F^{-1}(e^L) = L + ln(1 + e^{-L}).
        let lift = |l: f64| l + (-l).exp().ln_1p();
        let inner = Interval::new(down(lift(log_lo)), up(up(lift(log_hi))));
        Some(Self { depth: 1, inner }.normalize())
    }

    pub fn add_scalar(&self, x: f64) -> Magnitude {
        self.add(&Self::point(x))
    }

    /// Lower the bottom of the enclosure by one: encloses `v - 1` and `v`
    /// together, clamped at zero. Used for floors.
    pub fn widen_down_by_one(&self) -> Magnitude {
        if self.depth == 0 {
            let lo = down(self.inner.lo - 1.0).max(0.0);
            return Self::plain(Interval { lo, ..self.inner });
        }
        // With v = F(z): F^{-1}(v - 1) = z + ln(1 - e^{-z}).
        let z = self.f_inv();
        let z_lo = z.level(0).lo;
        let shift = if z_lo > 0.0 { (-(-z_lo).exp_m1()).ln() } else { f64::NEG_INFINITY };
        let lowered = if shift.is_finite() {
            let mut inner = z.inner;
            if z.depth == 0 {
                inner.lo = down(down(inner.lo + shift)).max(0.0);
            } else {
                inner.lo = down(inner.lo);
            }
            Magnitude { depth: z.depth, inner }
        } else {
            Magnitude::plain(Interval::new(0.0, z.level(0).hi))
        };
        lowered.f()
    }

    /// Enclosure of `max(v, w)`.
    pub fn max(&self, other: &Magnitude) -> Magnitude {
        let d = self.depth.max(other.depth);
        Self { depth: d, inner: self.level(d).max(&other.level(d)) }.normalize()
    }

    /// Enclosure of `min(v, w)`.
    pub fn min(&self, other: &Magnitude) -> Magnitude {
        let d = self.depth.max(other.depth);
        Self { depth: d, inner: self.level(d).min(&other.level(d)) }.normalize()
    }

    pub fn hull(&self, other: &Magnitude) -> Magnitude {
        let d = self.depth.max(other.depth);
        Self { depth: d, inner: self.level(d).hull(&other.level(d)) }.normalize()
    }

    /// Every element of `self` is strictly below every element of `other`.
    pub fn certainly_lt(&self, other: &Magnitude) -> bool {
        let d = self.depth.max(other.depth);
        let a = self.level(d);
        let b = other.level(d);
        a.hi < b.lo || (a.hi == b.lo && (a.hi_open || b.lo_open))
    }

    pub fn certainly_le(&self, other: &Magnitude) -> bool {
        let d = self.depth.max(other.depth);
        self.level(d).hi <= other.level(d).lo
    }

    pub fn certainly_gt_scalar(&self, x: f64) -> bool {
        self.to_interval().certainly_gt(x)
    }

    /// Upper end is unbounded (for example the tower exceeds every float).
    pub fn is_unbounded(&self) -> bool {
        self.inner.hi.is_infinite()
    }
}

impl std::fmt::Display for Magnitude {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.depth == 0 {
            write!(f, "{}", self.inner)
        } else {
            write!(f, "F^{}({})", self.depth, self.inner)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f_map_values() {
        assert_eq!(f_map(0.0).unwrap(), 0.0);
        assert!((f_map(2f64.ln()).unwrap() - 1.0).abs() < 1e-15);
        assert!((f_map(3.0).unwrap() - 19.085_536_923_187_668).abs() < 1e-12);
        assert_eq!(f_map(700.5), Err(TowerError::OverflowGuard(700.5)));
        assert!(matches!(f_map(-1.0), Err(TowerError::InvalidInput(_))));
    }

    #[test]
    fn tower_difference() {
        // e^2981 - e^2980 = e^2980 (e - 1).
        let v = Magnitude::tower(1, Interval::point(2981.0));
        let w = Magnitude::tower(1, Interval::point(2980.0));
        let d = v.sub(&w).unwrap();
        let expect = 2980.0 + (std::f64::consts::E - 1.0).ln();
        assert!(d.level(1).contains(expect), "{:?}", d);
        assert!(w.sub(&v).is_none());
        assert!(Magnitude::point(5.0).sub(&Magnitude::point(2.0)).unwrap().to_interval().contains(3.0));
    }

    #[test]
    fn f_inv_k_values() {
        assert_eq!(f_inv_k(1, 0.0).unwrap(), 0.0);
        assert!((f_inv_k(1, 1.0).unwrap() - 0.693_147_180_559_945_3).abs() < 1e-15);
        assert!((f_inv_k(3, 1.0).unwrap() - 0.423_035_857_164_402).abs() < 1e-14);
        assert!(f_inv_k(2, -0.5).is_err());
    }

    #[test]
    fn interval_f_saturates() {
        let iv = f_interval(&Interval::new(700.0, 800.0));
        assert!(iv.lo > 1e303 && iv.hi.is_infinite());
        let iv = f_interval(&Interval::new(720.0, 800.0));
        assert_eq!(iv.lo, f64::MAX);
    }

    #[test]
    fn magnitude_tower_roundtrip() {
        // F^4(3) is far beyond f64 but F^{-4}(F^4(3)) = 3.
        let m = Magnitude::point(3.0).f_iter(4);
        assert!(m.depth() >= 1);
        let back = m.f_inv_iter(4).to_interval();
        assert!(back.contains(3.0));
        assert!(back.width() < 1e-12);
        assert!(m.to_interval().hi.is_infinite());
    }

    #[test]
    fn magnitude_f_iter_matches_repeated_f() {
        let a = Magnitude::point(3.0).f_iter(5);
        let b = (0..5).fold(Magnitude::point(3.0), |m, _| m.f());
        assert_eq!(a, b);
    }

    #[test]
    fn magnitude_add_plain_and_tower() {
        let big = Magnitude::point(10.0).f_iter(2); // F(22025.47) overflows
        let sum = big.add(&Magnitude::point(5.0));
        let l = sum.f_inv().to_interval();
        assert!(l.contains(22025.465794806718));
        // Doubling a tower adds ln 2 one level down.
        let twice = big.add(&big).f_inv().to_interval();
        assert!(twice.lo > 22025.46579 + 0.6931 && twice.hi < 22025.46580 + 0.6932);
    }

    #[test]
    fn magnitude_add_exact_small() {
        let s = Magnitude::point(1.5).add(&Magnitude::point(2.25)).to_interval();
        assert!(s.contains(3.75) && s.width() < 1e-14);
    }

    #[test]
    fn magnitude_compare_across_depths() {
        let a = Magnitude::point(3.0).f_iter(3);
        let b = Magnitude::point(10.0).f_iter(2);
        // F^3(3) = F(1.94e8) dwarfs F(22025).
        assert!(b.certainly_lt(&a));
        assert!(!a.certainly_lt(&b));
        let m = a.max(&b);
        assert!(m.level(m.depth()).overlaps(&a.level(m.depth())));
    }

    #[test]
    fn widen_down_by_one_keeps_tower_tight() {
        let t = Magnitude::point(3.0).f_iter(3);
        let w = t.widen_down_by_one();
        let back = w.f_inv_iter(3).to_interval();
        assert!(back.contains(3.0));
        assert!(back.lo > 3.0 - 1e-12);
        let p = Magnitude::point(5.0).widen_down_by_one().to_interval();
        assert!(p.contains(4.0) && p.contains(5.0));
    }
}
