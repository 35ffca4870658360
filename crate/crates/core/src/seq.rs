//! Finitely described integer sequences: an explicit prefix followed by a
//! tail rule whose growth is known in closed form.

use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::{down, up, Interval};
use crate::tower::Magnitude;

pub type Rational = Ratio<i64>;

/// Integers at or above this are not trusted to an exact `f64` floor.
const EXACT_LIMIT: f64 = 9_007_199_254_740_992.0; // 2^53

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DescriptorError {
    #[error("malformed sequence descriptor: {0}")]
    Json(String),
    #[error("invalid tail rule: {0}")]
    InvalidTail(String),
    #[error("invalid rational {0:?}")]
    Rational(String),
}

/// One entry of a sequence. Entries too large to write down are kept
/// symbolically and only ever consumed through [`Symbol::magnitude`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Symbol {
    Int(i64),
    /// `floor(F^height(c))`.
    FloorTower { c: u64, height: u32 },
    /// `ceil(F(c * n))`.
    CeilExp { c: Rational, n: u64 },
}

impl Symbol {
    pub fn floor_tower(c: u64, height: u32) -> Symbol {
        Symbol::FloorTower { c, height }.normalized()
    }

    pub fn ceil_exp(c: Rational, n: u64) -> Symbol {
        Symbol::CeilExp { c, n }.normalized()
    }

    /// Replace a symbolic entry by its integer value when that value can be
    /// certified from its enclosure.
    pub fn normalized(self) -> Symbol {
        match &self {
            Symbol::Int(_) => self,
            Symbol::FloorTower { c, height } => {
                let m = Magnitude::point(*c as f64).f_iter(*height);
                let iv = m.to_interval();
                if m.is_plain() && iv.hi < EXACT_LIMIT && iv.lo.floor() == iv.hi.floor() {
                    Symbol::Int(iv.lo.floor() as i64)
                } else {
                    self
                }
            }
            Symbol::CeilExp { c, n } => {
                let m = Magnitude::plain(scaled(c, *n)).f();
                let iv = m.to_interval();
                if m.is_plain() && iv.hi < EXACT_LIMIT && iv.lo.ceil() == iv.hi.ceil() {
                    Symbol::Int(iv.lo.ceil() as i64)
                } else {
                    self
                }
            }
        }
    }

    /// Enclosure of `|value|`.
    pub fn magnitude(&self) -> Magnitude {
        match self {
            Symbol::Int(v) => {
                let a = v.unsigned_abs() as f64;
                if a < EXACT_LIMIT {
                    Magnitude::point(a)
                } else {
                    Magnitude::plain(Interval::around(a))
                }
            }
            Symbol::FloorTower { c, height } => {
                Magnitude::point(*c as f64).f_iter(*height).widen_down_by_one()
            }
            Symbol::CeilExp { c, n } => Magnitude::plain(scaled(c, *n))
                .f()
                .add(&Magnitude::plain(Interval::new(0.0, 1.0))),
        }
    }

    /// `|value|` when it is an ordinary integer.
    pub fn abs_int(&self) -> Option<u64> {
        match self {
            Symbol::Int(v) => Some(v.unsigned_abs()),
            _ => None,
        }
    }

    /// Symbolic entries are always positive.
    pub fn abs(&self) -> Symbol {
        match self {
            Symbol::Int(v) => Symbol::Int(v.checked_abs().unwrap_or(i64::MAX)),
            other => other.clone(),
        }
    }

    /// Decide `|self| <= |other|`; `None` when the enclosures cannot separate
    /// two different values.
    pub fn abs_le(&self, other: &Symbol) -> Option<bool> {
        if let (Some(a), Some(b)) = (self.abs_int(), other.abs_int()) {
            return Some(a <= b);
        }
        if self.abs() == other.abs() {
            return Some(true);
        }
        let (a, b) = (self.magnitude(), other.magnitude());
        if a.certainly_le(&b) {
            Some(true)
        } else if b.certainly_lt(&a) {
            Some(false)
        } else {
            None
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Int(v) => write!(f, "{v}"),
            Symbol::FloorTower { c, height } => write!(f, "floor(F^{height}({c}))"),
            Symbol::CeilExp { c, n } => write!(f, "ceil(F({c}*{n}))"),
        }
    }
}

/// Enclosure of `c * n`.
pub(crate) fn scaled(c: &Rational, n: u64) -> Interval {
    let num = *c.numer() as i128 * n as i128;
    let den = *c.denom() as i128;
    if num % den == 0 && (num / den).unsigned_abs() < (1u128 << 53) {
        return Interval::point((num / den) as f64);
    }
    let q = num as f64 / den as f64;
    Interval::new(down(q), up(q))
}

pub(crate) fn rational_to_f64(c: &Rational) -> f64 {
    *c.numer() as f64 / *c.denom() as f64
}

/// Growth of the shifted potentials `t*` of `sigma^n(s)` as `n` grows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Asymptotics {
    Bounded,
    DivergesToInfinity,
}

/// How the sequence continues after its prefix. Every rule carries an
/// `offset` that records how far it has been shifted, so that shifting a
/// sequence never materializes tail values:
///
/// * `Const(c)`: every tail entry is `c`.
/// * `Periodic`: tail entry `j` is `pattern[(j + offset) % len]`.
/// * `FExp`: tail entry `j` is `floor(F^(j + 1 + offset)(c))`.
/// * `LinExp`: tail entry `j` of a sequence with prefix length `p` is
///   `ceil(F(c * (p + j + offset)))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TailRule {
    Const(i64),
    Periodic { pattern: Vec<i64>, offset: u64 },
    FExp { c: u64, offset: u32 },
    LinExp { c: Rational, offset: u64 },
}

impl TailRule {
    pub fn periodic(pattern: Vec<i64>) -> Self {
        TailRule::Periodic { pattern, offset: 0 }
    }

    pub fn fexp(c: u64) -> Self {
        TailRule::FExp { c, offset: 0 }
    }

    pub fn linexp(c: Rational) -> Self {
        TailRule::LinExp { c, offset: 0 }
    }

    pub fn asymptotics(&self) -> Asymptotics {
        match self {
            TailRule::Const(_) | TailRule::Periodic { .. } => Asymptotics::Bounded,
            TailRule::FExp { .. } | TailRule::LinExp { .. } => Asymptotics::DivergesToInfinity,
        }
    }

    fn validate(&self) -> Result<(), DescriptorError> {
        match self {
            TailRule::Periodic { pattern, .. } if pattern.is_empty() => {
                Err(DescriptorError::InvalidTail("periodic pattern must be nonempty".into()))
            }
            TailRule::FExp { c, .. } if *c < 1 => {
                Err(DescriptorError::InvalidTail("fexp needs c >= 1".into()))
            }
            TailRule::LinExp { c, .. } if *c <= Rational::from_integer(0) => {
                Err(DescriptorError::InvalidTail("linexp needs c > 0".into()))
            }
            _ => Ok(()),
        }
    }
}

/// An element of the integer sequence space given by a finite prefix and a
/// [`TailRule`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "SeqDescriptor", try_from = "SeqDescriptor")]
pub struct SymbolSeq {
    prefix: Vec<Symbol>,
    tail: TailRule,
}

impl SymbolSeq {
    pub fn new(prefix: Vec<Symbol>, tail: TailRule) -> Result<Self, DescriptorError> {
        tail.validate()?;
        Ok(Self { prefix, tail })
    }

    /// Shorthand for an all-integer prefix.
    pub fn from_ints(prefix: &[i64], tail: TailRule) -> Result<Self, DescriptorError> {
        Self::new(prefix.iter().map(|&v| Symbol::Int(v)).collect(), tail)
    }

    /// `c c c ...`
    pub fn constant(c: i64) -> Self {
        Self { prefix: Vec::new(), tail: TailRule::Const(c) }
    }

    pub fn prefix(&self) -> &[Symbol] {
        &self.prefix
    }

    pub fn prefix_len(&self) -> usize {
        self.prefix.len()
    }

    pub fn tail(&self) -> &TailRule {
        &self.tail
    }

    pub fn asymptotics(&self) -> Asymptotics {
        self.tail.asymptotics()
    }

    /// The entry `s_n`.
    pub fn seq_at(&self, n: usize) -> Symbol {
        if let Some(s) = self.prefix.get(n) {
            return s.clone();
        }
        let p = self.prefix.len();
        let j = (n - p) as u64;
        match &self.tail {
            TailRule::Const(c) => Symbol::Int(*c),
            TailRule::Periodic { pattern, offset } => {
                Symbol::Int(pattern[((j + offset) % pattern.len() as u64) as usize])
            }
            TailRule::FExp { c, offset } => {
                let height = u32::try_from(j + 1 + *offset as u64).unwrap_or(u32::MAX);
                Symbol::floor_tower(*c, height)
            }
            TailRule::LinExp { c, offset } => Symbol::ceil_exp(*c, p as u64 + j + offset),
        }
    }

    /// `sigma^n(s)`: drop the first `n` entries.
    pub fn shift(&self, n: usize) -> SymbolSeq {
        if n == 0 {
            return self.clone();
        }
        let p = self.prefix.len();
        if n <= p {
            let tail = match &self.tail {
                TailRule::LinExp { c, offset } => TailRule::LinExp { c: *c, offset: offset + n as u64 },
                other => other.clone(),
            };
            return SymbolSeq { prefix: self.prefix[n..].to_vec(), tail };
        }
        let past = (n - p) as u64;
        let tail = match &self.tail {
            TailRule::Const(c) => TailRule::Const(*c),
            TailRule::Periodic { pattern, offset } => TailRule::Periodic {
                pattern: pattern.clone(),
                offset: (offset + past) % pattern.len() as u64,
            },
            TailRule::FExp { c, offset } => TailRule::FExp {
                c: *c,
                offset: offset.saturating_add(u32::try_from(past).unwrap_or(u32::MAX)),
            },
            TailRule::LinExp { c, offset } => TailRule::LinExp { c: *c, offset: offset + n as u64 },
        };
        SymbolSeq { prefix: Vec::new(), tail }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SeqDescriptor::from(self)).expect("descriptor serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, DescriptorError> {
        let d: SeqDescriptor =
            serde_json::from_str(text).map_err(|e| DescriptorError::Json(e.to_string()))?;
        SymbolSeq::try_from(d)
    }
}

impl fmt::Display for SymbolSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.prefix.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "] ")?;
        match &self.tail {
            TailRule::Const(c) => write!(f, "const({c})"),
            TailRule::Periodic { pattern, offset } => write!(f, "periodic({pattern:?}, +{offset})"),
            TailRule::FExp { c, offset } => write!(f, "fexp({c}, +{offset})"),
            TailRule::LinExp { c, offset } => write!(f, "linexp({c}, +{offset})"),
        }
    }
}

// ---- JSON descriptor -------------------------------------------------------

/// Wire form of a [`SymbolSeq`]:
/// `{"prefix": [...], "tail": {"kind": ..., "c": ..., "pattern": [...], "offset": n}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeqDescriptor {
    #[serde(default)]
    pub prefix: Vec<SymbolRepr>,
    pub tail: TailDescriptor,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SymbolRepr {
    Int(i64),
    FloorTower { floor_tower: TowerArgs },
    CeilExp { ceil_exp: CeilArgs },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TowerArgs {
    pub c: u64,
    pub height: u32,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CeilArgs {
    pub c: RationalRepr,
    pub n: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TailDescriptor {
    pub kind: TailKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<RationalRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub offset: u64,
}

fn is_zero(x: &u64) -> bool {
    *x == 0
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailKind {
    Const,
    Periodic,
    Fexp,
    Linexp,
}

/// An integer, or a string `"p/q"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalRepr {
    Int(i64),
    Text(String),
}

impl RationalRepr {
    fn parse(&self) -> Result<Rational, DescriptorError> {
        match self {
            RationalRepr::Int(v) => Ok(Rational::from_integer(*v)),
            RationalRepr::Text(s) => {
                let bad = || DescriptorError::Rational(s.clone());
                match s.split_once('/') {
                    Some((p, q)) => {
                        let p: i64 = p.trim().parse().map_err(|_| bad())?;
                        let q: i64 = q.trim().parse().map_err(|_| bad())?;
                        if q == 0 {
                            return Err(bad());
                        }
                        Ok(Rational::new(p, q))
                    }
                    None => s.trim().parse().map(Rational::from_integer).map_err(|_| bad()),
                }
            }
        }
    }

    fn from_rational(c: &Rational) -> Self {
        if c.is_integer() {
            RationalRepr::Int(*c.numer())
        } else {
            RationalRepr::Text(format!("{}/{}", c.numer(), c.denom()))
        }
    }
}

impl From<&SymbolSeq> for SeqDescriptor {
    fn from(seq: &SymbolSeq) -> Self {
        let prefix = seq
            .prefix
            .iter()
            .map(|s| match s {
                Symbol::Int(v) => SymbolRepr::Int(*v),
                Symbol::FloorTower { c, height } => {
                    SymbolRepr::FloorTower { floor_tower: TowerArgs { c: *c, height: *height } }
                }
                Symbol::CeilExp { c, n } => {
                    SymbolRepr::CeilExp { ceil_exp: CeilArgs { c: RationalRepr::from_rational(c), n: *n } }
                }
            })
            .collect();
        let tail = match &seq.tail {
            TailRule::Const(c) => TailDescriptor {
                kind: TailKind::Const,
                c: Some(RationalRepr::Int(*c)),
                pattern: None,
                offset: 0,
            },
            TailRule::Periodic { pattern, offset } => TailDescriptor {
                kind: TailKind::Periodic,
                c: None,
                pattern: Some(pattern.clone()),
                offset: *offset,
            },
            TailRule::FExp { c, offset } => TailDescriptor {
                kind: TailKind::Fexp,
                c: Some(RationalRepr::Int(*c as i64)),
                pattern: None,
                offset: *offset as u64,
            },
            TailRule::LinExp { c, offset } => TailDescriptor {
                kind: TailKind::Linexp,
                c: Some(RationalRepr::from_rational(c)),
                pattern: None,
                offset: *offset,
            },
        };
        SeqDescriptor { prefix, tail }
    }
}

impl From<SymbolSeq> for SeqDescriptor {
    fn from(seq: SymbolSeq) -> Self {
        SeqDescriptor::from(&seq)
    }
}

impl TryFrom<SeqDescriptor> for SymbolSeq {
    type Error = DescriptorError;

    fn try_from(d: SeqDescriptor) -> Result<Self, Self::Error> {
        let prefix = d
            .prefix
            .iter()
            .map(|s| {
                Ok(match s {
                    SymbolRepr::Int(v) => Symbol::Int(*v),
                    SymbolRepr::FloorTower { floor_tower } => {
                        Symbol::floor_tower(floor_tower.c, floor_tower.height)
                    }
                    SymbolRepr::CeilExp { ceil_exp } => Symbol::ceil_exp(ceil_exp.c.parse()?, ceil_exp.n),
                })
            })
            .collect::<Result<Vec<_>, DescriptorError>>()?;
        let t = &d.tail;
        let need_c = || {
            t.c.as_ref()
                .ok_or_else(|| DescriptorError::InvalidTail(format!("{:?} tail needs \"c\"", t.kind)))
                .and_then(|c| c.parse())
        };
        let integer = |c: Rational| {
            if c.is_integer() {
                Ok(*c.numer())
            } else {
                Err(DescriptorError::InvalidTail(format!("{:?} tail needs an integer c", t.kind)))
            }
        };
        let tail = match t.kind {
            TailKind::Const => TailRule::Const(integer(need_c()?)?),
            TailKind::Periodic => TailRule::Periodic {
                pattern: t
                    .pattern
                    .clone()
                    .ok_or_else(|| DescriptorError::InvalidTail("periodic tail needs \"pattern\"".into()))?,
                offset: t.offset,
            },
            TailKind::Fexp => {
                let c = integer(need_c()?)?;
                if c < 1 {
                    return Err(DescriptorError::InvalidTail("fexp needs c >= 1".into()));
                }
                TailRule::FExp {
                    c: c as u64,
                    offset: u32::try_from(t.offset)
                        .map_err(|_| DescriptorError::InvalidTail("fexp offset too large".into()))?,
                }
            }
            TailKind::Linexp => TailRule::LinExp { c: need_c()?, offset: t.offset },
        };
        SymbolSeq::new(prefix, tail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fexp3() -> SymbolSeq {
        SymbolSeq::from_ints(&[0], TailRule::fexp(3)).unwrap()
    }

    #[test]
    fn seq_at_prefix_and_tail() {
        let s = SymbolSeq::from_ints(&[7, -2], TailRule::Const(0)).unwrap();
        assert_eq!(s.seq_at(1), Symbol::Int(-2));
        assert_eq!(s.seq_at(9), Symbol::Int(0));
        assert_eq!(fexp3().seq_at(1), Symbol::Int(19));
        // floor(F^2(3)) = floor(194421087.33...)
        assert_eq!(fexp3().seq_at(2), Symbol::Int(194_421_087));
        assert_eq!(fexp3().seq_at(4), Symbol::FloorTower { c: 3, height: 4 });
    }

    #[test]
    fn periodic_and_linexp_entries() {
        let p = SymbolSeq::from_ints(&[5], TailRule::periodic(vec![1, -2, 3])).unwrap();
        let got: Vec<_> = (0..6).map(|n| p.seq_at(n)).collect();
        assert_eq!(got, [5, 1, -2, 3, 1, -2].map(Symbol::Int));
        let l = SymbolSeq::from_ints(&[], TailRule::linexp(Rational::from_integer(1))).unwrap();
        // ceil(e^n - 1): 0, 2, 7, 20, 54
        let got: Vec<_> = (0..5).map(|n| l.seq_at(n)).collect();
        assert_eq!(got, [0, 2, 7, 20, 54].map(Symbol::Int));
        assert!(matches!(l.seq_at(100), Symbol::CeilExp { n: 100, .. }));
    }

    #[test]
    fn shift_examples() {
        let s = SymbolSeq::from_ints(&[4, 7], TailRule::Const(1)).unwrap();
        assert_eq!(s.shift(1), SymbolSeq::from_ints(&[7], TailRule::Const(1)).unwrap());
        assert_eq!(s.shift(0), s);
        assert_eq!(fexp3().shift(1).seq_at(0), Symbol::Int(19));
    }

    #[test]
    fn shift_commutes_with_seq_at() {
        let seqs = [
            fexp3(),
            SymbolSeq::from_ints(&[1, 2, 3], TailRule::periodic(vec![4, 0, -1])).unwrap(),
            SymbolSeq::from_ints(&[9], TailRule::linexp(Rational::new(1, 2))).unwrap(),
            SymbolSeq::from_ints(&[], TailRule::Const(-3)).unwrap(),
        ];
        for s in &seqs {
            for n in 0..6 {
                let t = s.shift(n);
                for i in 0..6 {
                    assert_eq!(t.seq_at(i), s.seq_at(n + i), "{s} shift {n} index {i}");
                }
                assert_eq!(t.shift(2), s.shift(n + 2));
            }
        }
    }

    #[test]
    fn validation() {
        assert!(SymbolSeq::from_ints(&[], TailRule::periodic(vec![])).is_err());
        assert!(SymbolSeq::from_ints(&[], TailRule::fexp(0)).is_err());
        assert!(SymbolSeq::from_ints(&[], TailRule::linexp(Rational::from_integer(0))).is_err());
    }

    #[test]
    fn descriptor_json() {
        let s = SymbolSeq::from_json(r#"{"prefix":[0],"tail":{"kind":"fexp","c":3}}"#).unwrap();
        assert_eq!(s, fexp3());
        let l = SymbolSeq::from_json(r#"{"prefix":[],"tail":{"kind":"linexp","c":"3/2"}}"#).unwrap();
        assert_eq!(l.tail(), &TailRule::linexp(Rational::new(3, 2)));
        let p = SymbolSeq::from_json(r#"{"prefix":[1],"tail":{"kind":"periodic","pattern":[1,2]}}"#).unwrap();
        assert_eq!(p.seq_at(2), Symbol::Int(2));
        for bad in [
            "{",
            r#"{"prefix":[],"tail":{"kind":"const"}}"#,
            r#"{"prefix":[],"tail":{"kind":"fexp","c":"1/2"}}"#,
            r#"{"prefix":[],"tail":{"kind":"spiral","c":1}}"#,
            r#"{"prefix":[],"tail":{"kind":"linexp","c":"1/0"}}"#,
        ] {
            assert!(SymbolSeq::from_json(bad).is_err(), "{bad}");
        }
        let tower = SymbolSeq::new(
            vec![Symbol::Int(19), Symbol::floor_tower(10, 3)],
            TailRule::FExp { c: 3, offset: 2 },
        )
        .unwrap();
        assert_eq!(SymbolSeq::from_json(&tower.to_json()).unwrap(), tower);
    }

    #[test]
    fn symbol_comparison() {
        let big = Symbol::floor_tower(10, 2);
        let bigger = Symbol::floor_tower(3, 3);
        assert_eq!(Symbol::Int(-5).abs_le(&Symbol::Int(5)), Some(true));
        assert_eq!(Symbol::Int(7).abs_le(&big), Some(true));
        assert_eq!(big.abs_le(&Symbol::Int(7)), Some(false));
        assert_eq!(big.abs_le(&bigger), Some(true));
        assert_eq!(bigger.abs_le(&big), Some(false));
        assert_eq!(big.abs_le(&big.clone()), Some(true));
    }
}
