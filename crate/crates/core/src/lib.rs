//! Certified computations for the straight-brush model of the exponential
//! Julia set `J(e^z + a)`.
//!
//! Points of the model are pairs `⟨t, s⟩` with `t >= 0` and `s` an integer
//! address, and the model map is `⟨t, s⟩ ↦ ⟨F(t) - |s_1|, σ(s)⟩` with
//! `F(t) = e^t - 1`. Every numeric answer is an [`Interval`] enclosure or a
//! three-valued [`TriBool`].

pub mod interval;
pub mod model;
pub mod plane;
pub mod seq;
pub mod strata;
pub mod tower;
pub mod verify;

pub use interval::{Interval, TriBool};
pub use model::{classify, t_min, t_star, Classification, ModelPoint, Precision};
pub use seq::{Symbol, SymbolSeq, TailRule};
pub use tower::Magnitude;
