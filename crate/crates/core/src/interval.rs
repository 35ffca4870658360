//! Outward-rounded enclosures of real quantities.
//!
//! Every elementary operation is evaluated in round-to-nearest and then
//! widened by [`SLACK_ULPS`] units in the last place on each side. This
//! assumes the platform `exp_m1`/`ln_1p`/`exp`/`ln` are accurate to within
//! one ulp, which holds for the libm implementations Rust links against.
//! Exact zeros are kept exact because `exp_m1(0)` and `ln_1p(0)` are exact.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Units in the last place added on each side of a rounded result.
pub const SLACK_ULPS: u32 = 2;

/// Round a computed value downward by [`SLACK_ULPS`] ulps.
pub fn down(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mut y = x;
    for _ in 0..SLACK_ULPS {
        y = y.next_down();
    }
    y
}

/// Round a computed value upward by [`SLACK_ULPS`] ulps.
pub fn up(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let mut y = x;
    for _ in 0..SLACK_ULPS {
        y = y.next_up();
    }
    y
}

/// A closed or half-open enclosure `[lo, hi]` of an extended real number.
///
/// `lo_open`/`hi_open` record that the corresponding endpoint is known not to
/// be attained, which lets strict thresholds such as `t > 5` be decided when
/// the enclosure touches the threshold exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(serialize_with = "ser_ext", deserialize_with = "de_ext")]
    pub lo: f64,
    #[serde(serialize_with = "ser_ext", deserialize_with = "de_ext")]
    pub hi: f64,
    #[serde(default)]
    pub lo_open: bool,
    #[serde(default)]
    pub hi_open: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(!lo.is_nan() && !hi.is_nan(), "NaN endpoint");
        debug_assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Self { lo, hi, lo_open: false, hi_open: false }
    }

    pub fn point(x: f64) -> Self {
        Self::new(x, x)
    }

    /// `[x, x]` widened outward, for values that carry rounding error.
    pub fn around(x: f64) -> Self {
        Self::new(down(x), up(x))
    }

    pub fn open_lo(mut self) -> Self {
        self.lo_open = true;
        self
    }

    pub fn open_hi(mut self) -> Self {
        self.hi_open = true;
        self
    }

    pub fn infinite() -> Self {
        Self::new(f64::INFINITY, f64::INFINITY)
    }

    pub fn width(&self) -> f64 {
        if self.hi == self.lo {
            0.0
        } else {
            self.hi - self.lo
        }
    }

    pub fn mid(&self) -> f64 {
        if self.hi.is_infinite() {
            self.lo
        } else {
            self.lo + 0.5 * (self.hi - self.lo)
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.hi.is_finite()
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_open { x > self.lo } else { x >= self.lo };
        let below = if self.hi_open { x < self.hi } else { x <= self.hi };
        above && below
    }

    /// True when `other` is a subset of `self`.
    pub fn encloses(&self, other: &Interval) -> bool {
        let lo_ok = other.lo > self.lo || (other.lo == self.lo && (!self.lo_open || other.lo_open));
        let hi_ok = other.hi < self.hi || (other.hi == self.hi && (!self.hi_open || other.hi_open));
        lo_ok && hi_ok
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        !(self.certainly_lt_interval(other) || other.certainly_lt_interval(self))
    }

    fn certainly_lt_interval(&self, other: &Interval) -> bool {
        self.hi < other.lo || (self.hi == other.lo && (self.hi_open || other.lo_open))
    }

    /// Every element is strictly greater than `x`.
    pub fn certainly_gt(&self, x: f64) -> bool {
        self.lo > x || (self.lo == x && self.lo_open)
    }

    /// Every element is strictly less than `x`.
    pub fn certainly_lt(&self, x: f64) -> bool {
        self.hi < x || (self.hi == x && self.hi_open)
    }

    /// Every element is at most `x`.
    pub fn certainly_le(&self, x: f64) -> bool {
        self.hi <= x
    }

    /// Every element is at least `x`.
    pub fn certainly_ge(&self, x: f64) -> bool {
        self.lo >= x
    }

    /// Enclosure of `max(a, b)` for `a` in `self`, `b` in `other`.
    pub fn max(&self, other: &Interval) -> Interval {
        let (lo, lo_open) = if self.lo > other.lo {
            (self.lo, self.lo_open)
        } else if other.lo > self.lo {
            (other.lo, other.lo_open)
        } else {
            (self.lo, self.lo_open && other.lo_open)
        };
        let (hi, hi_open) = if self.hi > other.hi {
            (self.hi, self.hi_open)
        } else if other.hi > self.hi {
            (other.hi, other.hi_open)
        } else {
            (self.hi, self.hi_open && other.hi_open)
        };
        Interval { lo, hi, lo_open, hi_open }
    }

    /// Enclosure of `min(a, b)`.
    pub fn min(&self, other: &Interval) -> Interval {
        let (lo, lo_open) = if self.lo < other.lo {
            (self.lo, self.lo_open)
        } else if other.lo < self.lo {
            (other.lo, other.lo_open)
        } else {
            (self.lo, self.lo_open && other.lo_open)
        };
        let (hi, hi_open) = if self.hi < other.hi {
            (self.hi, self.hi_open)
        } else if other.hi < self.hi {
            (other.hi, other.hi_open)
        } else {
            (self.hi, self.hi_open && other.hi_open)
        };
        Interval { lo, hi, lo_open, hi_open }
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        let lo_side = self.min(other);
        let hi_side = self.max(other);
        Interval { lo: lo_side.lo, lo_open: lo_side.lo_open, hi: hi_side.hi, hi_open: hi_side.hi_open }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: down(self.lo + other.lo),
            hi: up(self.hi + other.hi),
            lo_open: self.lo_open || other.lo_open,
            hi_open: self.hi_open || other.hi_open,
        }
    }

    pub fn add_scalar(&self, x: f64) -> Interval {
        self.add(&Interval::point(x))
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval {
            lo: down(self.lo - other.hi),
            hi: up(self.hi - other.lo),
            lo_open: self.lo_open || other.hi_open,
            hi_open: self.hi_open || other.lo_open,
        }
    }

    /// Widen each side by `r >= 0`.
    pub fn inflate(&self, r: f64) -> Interval {
        Interval { lo: down(self.lo - r), hi: up(self.hi + r), lo_open: false, hi_open: false }
    }

    /// Apply a nondecreasing map given its pointwise evaluation; openness is
    /// preserved because the maps used here are strictly increasing.
    pub fn map_increasing(&self, f: impl Fn(f64) -> f64) -> Interval {
        Interval { lo: down(f(self.lo)), hi: up(f(self.hi)), lo_open: self.lo_open, hi_open: self.hi_open }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        match f.precision() {
            Some(p) => write!(f, "{l}{:.*}, {:.*}{r}", p, self.lo, p, self.hi),
            None => write!(f, "{l}{}, {}{r}", self.lo, self.hi),
        }
    }
}

/// Three-valued answer for questions decided from enclosures.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "value", rename_all = "snake_case")]
pub enum TriBool {
    True,
    False,
    Unknown { evidence: Interval },
}

impl TriBool {
    pub fn is_true(&self) -> bool {
        matches!(self, TriBool::True)
    }

    pub fn is_false(&self) -> bool {
        matches!(self, TriBool::False)
    }

    pub fn from_bool(b: bool) -> Self {
        if b {
            TriBool::True
        } else {
            TriBool::False
        }
    }

    /// Decide `value > threshold`.
    pub fn gt(value: &Interval, threshold: f64) -> Self {
        if value.certainly_gt(threshold) {
            TriBool::True
        } else if value.certainly_le(threshold) {
            TriBool::False
        } else {
            TriBool::Unknown { evidence: *value }
        }
    }

    /// Three-valued conjunction: false dominates, then unknown.
    pub fn and(self, other: TriBool) -> TriBool {
        match (self, other) {
            (TriBool::False, _) | (_, TriBool::False) => TriBool::False,
            (TriBool::True, TriBool::True) => TriBool::True,
            (TriBool::Unknown { evidence }, _) | (_, TriBool::Unknown { evidence }) => {
                TriBool::Unknown { evidence }
            }
        }
    }
}

// JSON has no infinities; unbounded endpoints are written as "inf"/"-inf".
fn ser_ext<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else if *x > 0.0 {
        s.serialize_str("inf")
    } else {
        s.serialize_str("-inf")
    }
}

fn de_ext<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Ext {
        Num(f64),
        Str(String),
    }
    match Ext::deserialize(d)? {
        Ext::Num(x) => Ok(x),
        Ext::Str(s) if s == "inf" => Ok(f64::INFINITY),
        Ext::Str(s) if s == "-inf" => Ok(f64::NEG_INFINITY),
        Ext::Str(s) => Err(serde::de::Error::custom(format!("expected number or \"inf\", got {s:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_brackets_value() {
        let x = 0.1f64 + 0.2;
        assert!(down(x) < x && x < up(x));
        assert_eq!(down(0.0), 0.0);
        assert_eq!(up(f64::INFINITY), f64::INFINITY);
    }

    #[test]
    fn strict_threshold_uses_open_flag() {
        let closed = Interval::new(5.0, 6.0);
        let open = closed.open_lo();
        assert!(!closed.certainly_gt(5.0));
        assert!(open.certainly_gt(5.0));
        assert_eq!(TriBool::gt(&Interval::new(4.0, 5.0), 5.0), TriBool::False);
        assert!(matches!(TriBool::gt(&Interval::new(4.0, 6.0), 5.0), TriBool::Unknown { .. }));
    }

    #[test]
    fn max_and_hull() {
        let a = Interval::new(1.0, 3.0);
        let b = Interval::new(2.0, 2.5);
        assert_eq!(a.max(&b), Interval::new(2.0, 3.0));
        assert_eq!(a.min(&b), Interval::new(1.0, 2.5));
        assert_eq!(a.hull(&b), a);
        assert!(a.encloses(&b));
        assert!(!b.encloses(&a));
    }

    #[test]
    fn json_uses_inf_strings() {
        let iv = Interval::new(1.5, f64::INFINITY).open_lo();
        let s = serde_json::to_string(&iv).unwrap();
        assert_eq!(s, r#"{"lo":1.5,"hi":"inf","lo_open":true,"hi_open":false}"#);
        let back: Interval = serde_json::from_str(&s).unwrap();
        assert_eq!(back, iv);
    }

    #[test]
    fn tribool_and() {
        let u = TriBool::Unknown { evidence: Interval::point(1.0) };
        assert_eq!(TriBool::True.and(TriBool::False), TriBool::False);
        assert_eq!(u.and(TriBool::False), TriBool::False);
        assert_eq!(TriBool::True.and(u), u);
    }
}
