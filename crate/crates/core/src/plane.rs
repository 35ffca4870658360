//! Dynamics of `f_a(z) = e^z + a` in the plane: orbits, itineraries, the
//! escape region, cycle finding and escape-time images.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::interval::{Interval, TriBool};

/// `Re z` above which an orbit is treated as escaped.
pub const ESCAPE_RE: f64 = 50.0;
/// Largest supported `|a|`; keeps `ESCAPE_RE` a one-step certificate.
pub const MAX_PARAMETER: f64 = 10.0;
/// Tolerance on `|λ|` for the cycle classification.
pub const MULTIPLIER_TOL: f64 = 1e-6;
/// Highest order of the roots of unity tested for parabolic multipliers.
pub const MAX_ROOT_ORDER: u32 = 12;

const NEWTON_STEPS: usize = 4000;
const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum PlaneError {
    #[error("parameter |a| = {0} exceeds the supported bound {MAX_PARAMETER}")]
    ParameterOutOfRange(f64),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("Newton iteration did not converge (last residual {residual:e})")]
    NoConvergence { residual: f64 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexPoint {
    pub re: f64,
    pub im: f64,
}

impl ComplexPoint {
    pub fn new(re: f64, im: f64) -> Result<Self, PlaneError> {
        if !re.is_finite() || !im.is_finite() {
            return Err(PlaneError::Invalid(format!("non-finite point {re} + {im}i")));
        }
        Ok(Self { re, im })
    }

    pub fn real(re: f64) -> Self {
        Self { re, im: 0.0 }
    }

    pub fn abs(&self) -> f64 {
        self.c().norm()
    }

    fn c(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

impl From<Complex64> for ComplexPoint {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl std::fmt::Display for ComplexPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.im < 0.0 {
            write!(f, "{} - {}i", self.re, -self.im)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

fn check_parameter(a: &ComplexPoint) -> Result<(), PlaneError> {
    if a.abs() > MAX_PARAMETER {
        return Err(PlaneError::ParameterOutOfRange(a.abs()));
    }
    Ok(())
}

/// `e^z - 1`, accurate near `z = 0`.
fn expm1(z: Complex64) -> Complex64 {
    let (s, c) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    Complex64::new(z.re.exp_m1() * c - 2.0 * half * half, z.re.exp() * s)
}

/// `f_a(z) = (e^z - 1) + (a + 1)`.
fn step(a: Complex64, z: Complex64) -> Complex64 {
    expm1(z) + (a + 1.0)
}

/// An orbit `z, f(z), …` cut at the first iterate with `Re > ESCAPE_RE`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Orbit {
    pub points: Vec<ComplexPoint>,
    /// Index of the iterate that passed the guard, if any.
    pub escaped_at: Option<usize>,
}

pub fn iterate(a: ComplexPoint, z: ComplexPoint, n: usize) -> Orbit {
    let ac = a.c();
    let mut cur = z.c();
    let mut points = vec![z];
    let mut escaped_at = (cur.re > ESCAPE_RE).then_some(0);
    for i in 1..=n {
        if escaped_at.is_some() {
            break;
        }
        cur = step(ac, cur);
        points.push(cur.into());
        if cur.re > ESCAPE_RE {
            escaped_at = Some(i);
        }
    }
    Orbit { points, escaped_at }
}

/// Nearest-integer strip index `round(Im(f^k z) / 2π)` for `k < n`.
///
/// Strips are centred on `2πk`. The list stops after the iterate that
/// passes the escape guard, since the next one is not representable.
pub fn itinerary(a: ComplexPoint, z: ComplexPoint, n: usize) -> Vec<i64> {
    if n == 0 {
        return Vec::new();
    }
    iterate(a, z, n - 1).points.iter().map(|p| (p.im / (2.0 * PI)).round() as i64).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EscapeRecord {
    pub escaped: bool,
    pub first_exceed: Option<usize>,
    pub itinerary: Vec<i64>,
}

pub fn escape_record(a: ComplexPoint, z: ComplexPoint, budget: usize) -> EscapeRecord {
    let orbit = iterate(a, z, budget);
    EscapeRecord {
        escaped: orbit.escaped_at.is_some(),
        first_exceed: orbit.escaped_at,
        itinerary: orbit.points.iter().map(|p| (p.im / (2.0 * PI)).round() as i64).collect(),
    }
}

/// Does `|f^n(z)| >= r` hold for every `n >= 1`?
///
/// `False` as soon as an iterate falls below `r`. `True` needs the growth
/// certificate `Re w > r + |a| + 1` at a real iterate `w` of a real
/// parameter: then `e^x - |a| >= x` keeps the orbit above `r` forever. Off
/// the real line `Re e^w` can be negative, so the answer stays `Unknown`.
pub fn escape_region_a(a: ComplexPoint, r: f64, z: ComplexPoint, budget: usize) -> Result<TriBool, PlaneError> {
    check_parameter(&a)?;
    if !(r > 0.0) {
        return Err(PlaneError::Invalid(format!("radius must be positive, got {r}")));
    }
    let ac = a.c();
    let bound = r + ac.norm() + 1.0;
    let mut cur = z.c();
    for _ in 0..budget {
        cur = step(ac, cur);
        if !cur.re.is_finite() || !cur.im.is_finite() {
            break;
        }
        if cur.norm() < r {
            return Ok(TriBool::False);
        }
        if a.im == 0.0 && cur.im == 0.0 && cur.re > bound {
            return Ok(TriBool::True);
        }
    }
    Ok(TriBool::Unknown { evidence: Interval::point(cur.norm()) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleKind {
    Attracting,
    Parabolic,
    Repelling,
    /// `|λ|` is within tolerance of 1 but `λ` is not near a low-order root
    /// of unity.
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleInfo {
    pub period: usize,
    pub points: Vec<ComplexPoint>,
    pub multiplier: ComplexPoint,
    pub kind: CycleKind,
    pub residual: f64,
}

fn near_root_of_unity(l: Complex64) -> bool {
    (1..=MAX_ROOT_ORDER).any(|q| {
        (0..q).any(|p| {
            let root = Complex64::from_polar(1.0, 2.0 * PI * p as f64 / q as f64);
            (l - root).norm() <= MULTIPLIER_TOL
        })
    })
}

pub fn classify_multiplier(l: Complex64) -> CycleKind {
    let m = l.norm();
    if m < 1.0 - MULTIPLIER_TOL {
        CycleKind::Attracting
    } else if (m - 1.0).abs() <= MULTIPLIER_TOL {
        if near_root_of_unity(l) {
            CycleKind::Parabolic
        } else {
            CycleKind::Indeterminate
        }
    } else {
        CycleKind::Repelling
    }
}

/// `(f^p(z) - z, (f^p)'(z) - 1, cycle points)`.
fn cycle_residual(a: Complex64, z: Complex64, period: usize) -> (Complex64, Complex64, Vec<Complex64>) {
    let mut pts = Vec::with_capacity(period);
    let mut w = z;
    let mut deriv = Complex64::new(1.0, 0.0);
    for _ in 0..period {
        pts.push(w);
        deriv *= w.exp();
        w = step(a, w);
    }
    let dm1 = if period == 1 { expm1(z) } else { deriv - 1.0 };
    (w - z, dm1, pts)
}

/// Newton's method on `f^period(z) - z` from `seed`.
///
/// Iterates until the Newton step stops shrinking the point, which lets
/// the linear convergence at parabolic points run to the end.
pub fn find_cycle(a: ComplexPoint, period: usize, seed: ComplexPoint) -> Result<CycleInfo, PlaneError> {
    check_parameter(&a)?;
    if period == 0 {
        return Err(PlaneError::Invalid("period must be at least 1".into()));
    }
    let ac = a.c();
    let mut z = seed.c();
    for _ in 0..NEWTON_STEPS {
        let (g, dg, _) = cycle_residual(ac, z, period);
        if g == Complex64::new(0.0, 0.0) || dg.norm() == 0.0 {
            break;
        }
        let delta = g / dg;
        if !delta.re.is_finite() || !delta.im.is_finite() {
            break;
        }
        z -= delta;
        if delta.norm() <= 1e-15 * z.norm().max(1e-300) || delta.norm() < 1e-300 {
            break;
        }
    }
    let (g, _, pts) = cycle_residual(ac, z, period);
    let residual = g.norm();
    if !(residual < RESIDUAL_TOL) {
        return Err(PlaneError::NoConvergence { residual });
    }
    let multiplier: Complex64 = pts.iter().map(|w| w.exp()).product();
    Ok(CycleInfo {
        period,
        points: pts.into_iter().map(ComplexPoint::from).collect(),
        multiplier: multiplier.into(),
        kind: classify_multiplier(multiplier),
        residual,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub width_px: usize,
    pub height_px: usize,
}

impl Viewport {
    fn validate(&self) -> Result<(), PlaneError> {
        let ok = self.re_min < self.re_max
            && self.im_min < self.im_max
            && self.width_px >= 1
            && self.height_px >= 1
            && [self.re_min, self.re_max, self.im_min, self.im_max].iter().all(|v| v.is_finite());
        if ok {
            Ok(())
        } else {
            Err(PlaneError::Invalid(format!("degenerate viewport {self:?}")))
        }
    }

    /// Centre of pixel `(col, row)`, row 0 at the top.
    pub fn pixel_center(&self, col: usize, row: usize) -> Complex64 {
        let dx = (self.re_max - self.re_min) / self.width_px as f64;
        let dy = (self.im_max - self.im_min) / self.height_px as f64;
        Complex64::new(self.re_min + (col as f64 + 0.5) * dx, self.im_max - (row as f64 + 0.5) * dy)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderSummary {
    pub escaped_pixels: usize,
    pub retained_pixels: usize,
    /// SHA-256 of the image bytes, hex encoded.
    pub hash: String,
}

/// First `n <= max_iter` with `Re f^n(z) > r`.
fn escape_time(a: Complex64, z: Complex64, max_iter: usize, r: f64) -> Option<usize> {
    let mut w = z;
    for n in 0..=max_iter {
        if w.re > r {
            return Some(n);
        }
        if n < max_iter {
            w = step(a, w);
        }
    }
    None
}

/// Escape-time image as a binary PPM (`P6`) with equal RGB channels.
///
/// A pixel escaping at step `n` gets gray level `255 - floor(254 n / max_iter)`,
/// so fast escape is bright; pixels retained for `max_iter` steps are black.
pub fn render_escape_bytes(
    a: ComplexPoint,
    viewport: &Viewport,
    max_iter: usize,
    r: f64,
) -> Result<(Vec<u8>, RenderSummary), PlaneError> {
    check_parameter(&a)?;
    viewport.validate()?;
    if !(r > 0.0) {
        return Err(PlaneError::Invalid(format!("escape guard must be positive, got {r}")));
    }
    let ac = a.c();
    let rows: Vec<Vec<Option<usize>>> = (0..viewport.height_px)
        .into_par_iter()
        .map(|row| {
            (0..viewport.width_px)
                .map(|col| escape_time(ac, viewport.pixel_center(col, row), max_iter, r))
                .collect()
        })
        .collect();
    let mut bytes = format!("P6\n{} {}\n255\n", viewport.width_px, viewport.height_px).into_bytes();
    let mut escaped = 0;
    for t in rows.iter().flatten() {
        let gray = match t {
            Some(n) => {
                escaped += 1;
                255 - (254 * n / max_iter.max(1)).min(254) as u8
            }
            None => 0,
        };
        bytes.extend_from_slice(&[gray, gray, gray]);
    }
    let hash = format!("{:x}", Sha256::digest(&bytes));
    let total = viewport.width_px * viewport.height_px;
    Ok((bytes, RenderSummary { escaped_pixels: escaped, retained_pixels: total - escaped, hash }))
}

/// Render and, when `path` is given, write the image there.
pub fn render_escape(
    a: ComplexPoint,
    viewport: &Viewport,
    max_iter: usize,
    r: f64,
    path: Option<&Path>,
) -> Result<RenderSummary, PlaneError> {
    let (bytes, summary) = render_escape_bytes(a, viewport, max_iter, r)?;
    if let Some(p) = path {
        let mut file = std::fs::File::create(p)?;
        file.write_all(&bytes)?;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXED_A2: f64 = -1.841_405_660_436_960_6;
    const MULT_A2: f64 = 0.158_594_339_563_039_36;

    fn c(re: f64, im: f64) -> ComplexPoint {
        ComplexPoint::new(re, im).unwrap()
    }

    #[test]
    fn iterate_examples() {
        let o = iterate(c(-1.0, 0.0), c(0.0, 0.0), 3);
        assert_eq!(o.points, vec![c(0.0, 0.0); 4]);
        let o = iterate(c(-2.0, 0.0), c(-1.841406, 0.0), 2);
        assert!(o.points.iter().all(|p| (p.re - FIXED_A2).abs() < 1e-5));
        let o = iterate(c(-1.0, 0.0), c(10.0, 0.0), 5);
        assert_eq!(o.escaped_at, Some(1));
        assert!((o.points[1].re - 22_025.465_794_806_718).abs() < 1e-8);
    }

    #[test]
    fn itinerary_examples() {
        assert_eq!(itinerary(c(-1.0, 0.0), c(0.5, 0.0), 5), vec![0; 5]);
        assert_eq!(itinerary(c(-1.0, 0.0), c(0.5, 2.0 * PI), 1), vec![1]);
        assert_eq!(itinerary(c(-1.0, 0.0), c(0.5, -4.0 * PI), 1), vec![-2]);
    }

    #[test]
    fn escape_region_examples() {
        let a = c(-1.0, 0.0);
        assert!(escape_region_a(a, 5.0, c(10.0, 0.0), 10).unwrap().is_true());
        assert!(escape_region_a(a, 5.0, c(0.0, 0.0), 10).unwrap().is_false());
        assert!(matches!(escape_region_a(a, 5.0, c(2.0, 0.0), 1).unwrap(), TriBool::Unknown { .. }));
        assert!(escape_region_a(a, 5.0, c(2.0, 0.0), 2).unwrap().is_true());
    }

    #[test]
    fn cycle_examples() {
        let par = find_cycle(c(-1.0, 0.0), 1, c(0.1, 0.0)).unwrap();
        assert!(par.points[0].abs() < 1e-6);
        assert!((par.multiplier.re - 1.0).abs() < 1e-6);
        assert_eq!(par.kind, CycleKind::Parabolic);

        let att = find_cycle(c(-2.0, 0.0), 1, c(-2.0, 0.0)).unwrap();
        assert!((att.points[0].re - FIXED_A2).abs() < 1e-12);
        assert!((att.multiplier.re - MULT_A2).abs() < 1e-12);
        assert_eq!(att.kind, CycleKind::Attracting);

        assert!(matches!(find_cycle(c(1.0, 0.0), 1, c(0.5, 0.0)), Err(PlaneError::NoConvergence { .. })));
    }

    #[test]
    fn complex_seed_finds_repelling_point_for_a1() {
        let cyc = find_cycle(c(1.0, 0.0), 1, c(2.0, 7.0)).unwrap();
        assert_eq!(cyc.kind, CycleKind::Repelling);
    }

    #[test]
    fn multiplier_kinds() {
        assert_eq!(classify_multiplier(Complex64::new(0.5, 0.0)), CycleKind::Attracting);
        assert_eq!(classify_multiplier(Complex64::new(-1.0, 0.0)), CycleKind::Parabolic);
        assert_eq!(classify_multiplier(Complex64::from_polar(1.0, 1.0)), CycleKind::Indeterminate);
        assert_eq!(classify_multiplier(Complex64::new(1.5, 0.0)), CycleKind::Repelling);
    }

    #[test]
    fn render_single_pixel() {
        let vp = Viewport { re_min: 9.5, re_max: 10.5, im_min: -0.5, im_max: 0.5, width_px: 1, height_px: 1 };
        let s = render_escape(c(-1.0, 0.0), &vp, 10, ESCAPE_RE, None).unwrap();
        assert_eq!((s.escaped_pixels, s.retained_pixels), (1, 0));
    }

    #[test]
    fn parameter_bound_enforced() {
        assert!(find_cycle(c(11.0, 0.0), 1, c(0.0, 0.0)).is_err());
    }
}
