//! Grid-based membership predicates for `S*_q(α)`, `S*(q_α)` and neighbouring
//! classes, plus the boundary scans of `q_α`.
//!
//! Every check samples a [`FunctionHandle`] on a [`SampleGrid`], computes a
//! real margin per point (positive means the defining inequality holds there)
//! and reports the minimum. A `HoldsOnGrid` verdict is a statement about the
//! sampled points only.

mod curve;
mod handle;

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{q_alpha_jet, Alpha, EPS_THETA};

pub use curve::{boundary_polygon, BoundaryCurve, CAP_RADIUS, INCLUSION_TOLERANCE, NEAR_CAP};
pub use handle::{FunctionHandle, Jet, PhiExtremal, PhiFamily, SeriesHandle};

pub const GRID_NOTE: &str = "grid verdict: holds at the sampled points only, not a proof";

const MIN_ANGULAR: usize = 64;
const ZERO_TOLERANCE: f64 = 1e-12;
/// Scans evaluate `q_α` on this circle instead of the unit circle.
pub const SCAN_RADIUS: f64 = 1.0 - 1e-6;

/// Concentric circles with `M` equally spaced angles `θ_k = -π + 2πk/M`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleGrid {
    radii: Vec<f64>,
    angular_count: usize,
}

impl SampleGrid {
    pub fn new(radii: Vec<f64>, angular_count: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::InvalidGrid("no radii".into()));
        }
        if angular_count < MIN_ANGULAR {
            return Err(Error::InvalidGrid(format!("M = {angular_count} is below {MIN_ANGULAR}")));
        }
        if radii.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
            return Err(Error::InvalidGrid("radii must lie in (0, 1)".into()));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGrid("radii must be strictly increasing".into()));
        }
        Ok(Self { radii, angular_count })
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    pub fn theta(&self, k: usize) -> f64 {
        -PI + 2.0 * PI * k as f64 / self.angular_count as f64
    }

    /// All sample points, circle by circle, in increasing `θ`.
    pub fn points(&self) -> Vec<Complex64> {
        self.radii
            .iter()
            .flat_map(|&r| (0..self.angular_count).map(move |k| Complex64::from_polar(r, self.theta(k))))
            .collect()
    }

    /// Radii below `limit`, with `limit` itself appended as the outermost circle.
    pub fn restricted_to(&self, limit: f64) -> Result<Self> {
        let mut radii: Vec<f64> = self.radii.iter().copied().filter(|r| *r < limit).collect();
        radii.push(limit);
        Self::new(radii, self.angular_count)
    }
}

impl Default for SampleGrid {
    fn default() -> Self {
        let mut radii: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
        radii.push(0.99);
        Self { radii, angular_count: 1024 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    HoldsOnGrid,
    Violated,
}

/// The sample at which the margin `lhs - rhs` is smallest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub z: Complex64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    pub check: String,
    pub function: String,
    pub verdict: Verdict,
    pub worst_margin: f64,
    pub witness: Witness,
    pub grid: SampleGrid,
    /// Subordination only: samples whose image lies beyond `NEAR_CAP`.
    pub low_confidence_points: usize,
    pub note: &'static str,
}

/// `z f'/f`, `1 + z f''/f'` and `f/z` at one sample.
#[derive(Debug, Clone, Copy)]
struct Sample {
    p: Complex64,
    k: Complex64,
    f_over_z: Complex64,
}

fn sample(h: &FunctionHandle, z: Complex64) -> Result<Sample> {
    let j = h.jet(z);
    if j.f.norm() < ZERO_TOLERANCE {
        return Err(Error::ZeroOfF { re: z.re, im: z.im });
    }
    Ok(Sample { p: z * j.d1 / j.f, k: 1.0 + z * j.d2 / j.d1, f_over_z: h.f_over_z(z) })
}

/// Margin, lhs, rhs at one sample; `margin = lhs - rhs` up to sign convention.
struct Point {
    z: Complex64,
    margin: f64,
    lhs: f64,
    rhs: f64,
    near_cap: bool,
}

fn run<F>(check: &str, h: &FunctionHandle, g: &SampleGrid, eval: F) -> Result<MembershipReport>
where
    F: Fn(&Sample) -> (f64, f64, f64, bool) + Sync,
{
    let points: Vec<Result<Point>> = g
        .points()
        .into_par_iter()
        .map(|z| {
            let s = sample(h, z)?;
            let (margin, lhs, rhs, near_cap) = eval(&s);
            let margin = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
            Ok(Point { z, margin, lhs, rhs, near_cap })
        })
        .collect();
    let mut worst: Option<Point> = None;
    let mut low_confidence = 0;
    for p in points {
        let p = p?;
        low_confidence += usize::from(p.near_cap);
        if worst.as_ref().is_none_or(|w| p.margin < w.margin) {
            worst = Some(p);
        }
    }
    let w = worst.expect("grids are non-empty");
    Ok(MembershipReport {
        check: check.to_string(),
        function: h.to_string(),
        verdict: if w.margin < 0.0 { Verdict::Violated } else { Verdict::HoldsOnGrid },
        worst_margin: w.margin,
        witness: Witness { z: w.z, lhs: w.lhs, rhs: w.rhs },
        grid: g.clone(),
        low_confidence_points: low_confidence,
        note: GRID_NOTE,
    })
}

/// `Re(zf'/f) > |1 + zf''/f' - zf'/f - α|`.
pub fn check_sq_inequality(h: &FunctionHandle, alpha: Alpha, g: &SampleGrid) -> Result<MembershipReport> {
    let a = alpha.value();
    run("sq", h, g, |s| {
        let (lhs, rhs) = (s.p.re, (s.k - s.p - a).norm());
        (lhs - rhs, lhs, rhs, false)
    })
}

/// The `S*_q(α)` margin at a single point.
pub fn sq_margin(h: &FunctionHandle, alpha: Alpha, z: Complex64) -> Result<f64> {
    let s = sample(h, z)?;
    Ok(s.p.re - (s.k - s.p - alpha.value()).norm())
}

/// `zf'/f ≺ q_α`, tested as containment of `zf'/f` in the polygon `curve`.
pub fn check_subordination_qalpha(
    h: &FunctionHandle,
    alpha: Alpha,
    g: &SampleGrid,
    curve: &BoundaryCurve,
) -> Result<MembershipReport> {
    if curve.alpha != alpha {
        return Err(Error::InvalidParams(format!(
            "boundary curve is for α = {}, check asked for α = {}",
            curve.alpha.value(),
            alpha.value()
        )));
    }
    let mut report = run("sqalpha", h, g, |s| {
        let m = curve.signed_margin(s.p);
        (m, m, 0.0, s.p.norm() > NEAR_CAP)
    })?;
    // Subordination also pins the value at the origin.
    let origin = Complex64::new(1e-9, 0.0);
    let at_origin = (sample(h, origin)?.p - 1.0).norm();
    if at_origin > 1e-6 && -at_origin < report.worst_margin {
        report.verdict = Verdict::Violated;
        report.worst_margin = -at_origin;
        report.witness = Witness { z: origin, lhs: -at_origin, rhs: 0.0 };
    }
    Ok(report)
}

/// `Re(1 + zf''/f') > α`.
pub fn check_convex_order(h: &FunctionHandle, alpha: Alpha, g: &SampleGrid) -> Result<MembershipReport> {
    let a = alpha.value();
    run("convex", h, g, |s| (s.k.re - a, s.k.re, a, false))
}

/// `|(1 + zf''/f')/(zf'/f) - 1| < b`.
pub fn check_gb(h: &FunctionHandle, b: f64, g: &SampleGrid) -> Result<MembershipReport> {
    if !(b > 0.0 && b <= 1.0) {
        return Err(Error::InvalidParams(format!("b = {b} must lie in (0, 1]")));
    }
    run("gb", h, g, |s| {
        let lhs = (s.k / s.p - 1.0).norm();
        (b - lhs, lhs, b, false)
    })
}

/// `Re(ρ(1 + zf''/f') + (1-ρ) zf'/f) ≥ 0`.
pub fn check_rho_convex(h: &FunctionHandle, rho: f64, g: &SampleGrid) -> Result<MembershipReport> {
    run("mocanu", h, g, |s| {
        let lhs = (rho * s.k + (1.0 - rho) * s.p).re;
        (lhs, lhs, 0.0, false)
    })
}

/// `Re f(z)/z > γ`.
pub fn check_re_f_over_z(h: &FunctionHandle, gamma: f64, g: &SampleGrid) -> Result<MembershipReport> {
    run("qgamma", h, g, |s| (s.f_over_z.re - gamma, s.f_over_z.re, gamma, false))
}

/// `Re(zf'/f) < β` with `β > 1`.
pub fn check_m_beta(h: &FunctionHandle, beta: f64, g: &SampleGrid) -> Result<MembershipReport> {
    if beta <= 1.0 {
        return Err(Error::InvalidParams(format!("β = {beta} must exceed 1")));
    }
    run("mbeta", h, g, |s| (beta - s.p.re, s.p.re, beta, false))
}

/// `Re(zf'/f) > γ`: starlike of order `γ`.
pub fn check_starlike_order(h: &FunctionHandle, gamma: f64, g: &SampleGrid) -> Result<MembershipReport> {
    run("starlike-order", h, g, |s| (s.p.re - gamma, s.p.re, gamma, false))
}

/// `|zf'/f - 1| < β`.
pub fn check_disk_about_one(h: &FunctionHandle, beta: f64, g: &SampleGrid) -> Result<MembershipReport> {
    run("disk", h, g, |s| {
        let lhs = (s.p - 1.0).norm();
        (beta - lhs, lhs, beta, false)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanResult {
    pub alpha: Alpha,
    pub minimum: f64,
    pub argmin_theta: f64,
}

fn scan_thetas(m: usize) -> impl Iterator<Item = f64> {
    (0..m).map(move |k| -PI + 2.0 * PI * k as f64 / m as f64).filter(|t| t.abs() >= EPS_THETA)
}

fn scan<F: Fn(f64) -> f64 + Sync>(alpha: Alpha, m: usize, f: F) -> ScanResult {
    let values: Vec<(f64, f64)> = scan_thetas(m).collect::<Vec<_>>().into_par_iter().map(|t| (t, f(t))).collect();
    let (argmin_theta, minimum) = values
        .into_iter()
        .fold((f64::NAN, f64::INFINITY), |acc, (t, v)| if v < acc.1 { (t, v) } else { acc });
    ScanResult { alpha, minimum, argmin_theta }
}

/// Value of `Re(z q_α'(z)/(q_α(z) - 1))` at `z = SCAN_RADIUS e^{iθ}`.
pub fn starlike_quantity(alpha: Alpha, theta: f64) -> f64 {
    let j = q_alpha_jet(alpha, Complex64::from_polar(SCAN_RADIUS, theta));
    (j.z_derivative() / (j.q - 1.0)).re
}

/// Value of `Re(1 + z q_α''/q_α')` at `z = SCAN_RADIUS e^{iθ}`.
pub fn convexity_quantity(alpha: Alpha, theta: f64) -> f64 {
    q_alpha_jet(alpha, Complex64::from_polar(SCAN_RADIUS, theta)).convexity.re
}

/// Minimum over the boundary of `Re(z q_α'/(q_α - 1))`; positive iff
/// `q_α(𝔻)` looks starlike about 1 at this sampling.
pub fn starlike_scan(alpha: Alpha, m: usize) -> ScanResult {
    scan(alpha, m, |t| starlike_quantity(alpha, t))
}

/// Minimum over the boundary of `Re(1 + z q_α''/q_α')`; non-negative iff
/// `q_α(𝔻)` looks convex at this sampling.
pub fn convexity_scan(alpha: Alpha, m: usize) -> ScanResult {
    scan(alpha, m, |t| convexity_quantity(alpha, t))
}
