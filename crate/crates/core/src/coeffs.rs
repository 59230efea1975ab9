//! Coefficient bounds for `S*(q_α)` and the two coefficient-side membership
//! conditions, each with a series-arithmetic cross-check.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::membership::convexity_scan;
use crate::series::TruncatedSeries;
use crate::special::{f_alpha_series, rho_theta, Alpha, EPS_THETA};

/// Default truncation for the summation conditions.
pub const DEFAULT_N_CHECK: usize = 32;
/// Default `θ` resolution for the `ρ(θ)` sufficiency sum.
pub const DEFAULT_THETA_GRID: usize = 512;

const FIXTURE_ORDER: usize = 8;
const CONVEXITY_SAMPLES: usize = 4096;
const CONVEXITY_TOLERANCE: f64 = -1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FeketeParams {
    pub alpha: Alpha,
    pub t: f64,
}

/// Which piece of a piecewise bound applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundBranch {
    Lower,
    Middle,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoefficientReport {
    pub bound: f64,
    /// The functional evaluated on the extremal function of the active branch.
    pub attained: Option<f64>,
    pub branch: BoundBranch,
}

/// Breakpoints `t₁ = (3-4α)/(6(1-α))`, `t₂ = (9-4α)/(6(1-α))`.
pub fn fekete_breakpoints(alpha: Alpha) -> (f64, f64) {
    let a = alpha.value();
    ((3.0 - 4.0 * a) / (6.0 * (1.0 - a)), (9.0 - 4.0 * a) / (6.0 * (1.0 - a)))
}

fn a3_extremal(a: f64) -> f64 {
    (3.0 - 2.0 * a) * (1.0 - a) / 3.0
}

/// Second and third coefficients of a series.
fn a2_a3(s: &TruncatedSeries) -> (Complex64, Complex64) {
    (s.coeff(2), s.coeff(3))
}

/// `max |a₃ - t a₂²|` over `S*(q_α)`.
pub fn fekete_szego_bound(p: FeketeParams) -> CoefficientReport {
    let a = p.alpha.value();
    let (t1, t2) = fekete_breakpoints(p.alpha);
    let sq = (1.0 - a) * (1.0 - a);
    let (bound, branch) = if p.t <= t1 {
        (a3_extremal(a) - p.t * sq, BoundBranch::Lower)
    } else if p.t <= t2 {
        ((1.0 - a) / 2.0, BoundBranch::Middle)
    } else {
        (p.t * sq - a3_extremal(a), BoundBranch::Upper)
    };
    let fixture = match branch {
        BoundBranch::Middle => odd_extremal_series(p.alpha, FIXTURE_ORDER),
        _ => f_alpha_series(p.alpha, FIXTURE_ORDER),
    };
    let (a2, a3) = a2_a3(&fixture);
    CoefficientReport { bound, attained: Some((a3 - p.t * a2 * a2).norm()), branch }
}

/// `|a₂| ≤ 1 - α`.
pub fn a2_bound(alpha: Alpha) -> f64 {
    1.0 - alpha.value()
}

/// `max |a₃|`: `(3-2α)(1-α)/3` up to `α = ¾`, then `(1-α)/2`.
pub fn a3_bound(alpha: Alpha) -> CoefficientReport {
    let a = alpha.value();
    if a <= 0.75 {
        let attained = f_alpha_series(alpha, FIXTURE_ORDER).coeff(3).norm();
        CoefficientReport { bound: a3_extremal(a), attained: Some(attained), branch: BoundBranch::Lower }
    } else {
        let attained = odd_extremal_series(alpha, FIXTURE_ORDER).coeff(3).norm();
        CoefficientReport { bound: (1.0 - a) / 2.0, attained: Some(attained), branch: BoundBranch::Upper }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InverseBounds {
    pub b2: f64,
    pub b3: f64,
    pub branch: BoundBranch,
}

/// Bounds on the first coefficients of `f⁻¹(w) = w + b₂w² + b₃w³ + …`.
/// `|b₃| = |2a₂² - a₃|`, the Fekete–Szegő functional at `t = 2`.
pub fn inverse_coeff_bounds(alpha: Alpha) -> InverseBounds {
    let a = alpha.value();
    if a <= 0.375 {
        InverseBounds { b2: 1.0 - a, b3: 2.0 * (1.0 - a) * (1.0 - a) - a3_extremal(a), branch: BoundBranch::Lower }
    } else {
        InverseBounds { b2: 1.0 - a, b3: (1.0 - a) / 2.0, branch: BoundBranch::Upper }
    }
}

/// The odd extremal `√(f_α(z²)) = z + (1-α)/2 z³ + …`.
pub fn odd_extremal_series(alpha: Alpha, order: usize) -> TruncatedSeries {
    let order = order.max(3);
    let quotient = f_alpha_series(alpha, order).div_z().expect("normalized");
    let log = quotient.log_unit().expect("unit constant term");
    let mut squared = vec![Complex64::default(); order + 1];
    for (k, c) in log.coeffs().iter().enumerate() {
        if 2 * k <= order {
            squared[2 * k] = c * 0.5;
        }
    }
    TruncatedSeries::new(squared).expect("finite").exp().expect("finite").mul_z()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LogCoeffBound {
    pub bound: f64,
    /// `α` failed the sampled convexity test for `q_α`, which the bound assumes.
    pub conditional: bool,
    pub convexity_minimum: f64,
}

/// `|β_n| ≤ (1-α)/(2n)`, flagged conditional unless `q_α(𝔻)` samples as convex.
pub fn log_coeff_bound(alpha: Alpha, n: usize) -> Result<LogCoeffBound> {
    if n == 0 {
        return Err(Error::InvalidParams("logarithmic coefficients start at n = 1".into()));
    }
    let scan = convexity_scan(alpha, CONVEXITY_SAMPLES);
    Ok(LogCoeffBound {
        bound: (1.0 - alpha.value()) / (2.0 * n as f64),
        conditional: scan.minimum < CONVEXITY_TOLERANCE,
        convexity_minimum: scan.minimum,
    })
}

/// `β_1, …, β_upto` from `log(f(z)/z) = Σ 2β_n zⁿ`.
pub fn log_coeffs(f: &TruncatedSeries, upto: usize) -> Result<Vec<Complex64>> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    if upto + 1 > f.order() {
        return Err(Error::InvalidOrder(upto));
    }
    let log = f.div_z()?.log_unit()?;
    Ok((1..=upto).map(|k| log.coeff(k) * 0.5).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumCondition {
    pub holds: bool,
    pub partial_sum: f64,
    pub limit: f64,
    /// Magnitude of the last summand, a convergence diagnostic.
    pub last_term: f64,
    /// Indices `n` whose coefficient is negative or non-real, outside the
    /// condition's hypothesis.
    pub flagged: Vec<usize>,
}

/// `Σ_{n=2}^{N} (n+α-2) c_n < 1-α` with `z/f'(z) = z + Σ c_n zⁿ`.
pub fn zf_coeff_condition(f: &TruncatedSeries, alpha: Alpha, n_check: usize) -> Result<SumCondition> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    if n_check < 2 || n_check > f.order() {
        return Err(Error::InvalidOrder(n_check));
    }
    let recip = TruncatedSeries::one(f.order()).div(&f.differentiate())?;
    let a = alpha.value();
    let mut sum = 0.0;
    let mut last = 0.0;
    let mut flagged = Vec::new();
    for n in 2..=n_check {
        let c = recip.coeff(n - 1);
        if c.im.abs() > 1e-14 || c.re < 0.0 {
            flagged.push(n);
        }
        let term = (n as f64 + a - 2.0) * c.re;
        sum += term;
        last = term.abs();
    }
    Ok(SumCondition { holds: sum < 1.0 - a, partial_sum: sum, limit: 1.0 - a, last_term: last, flagged })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RhoSufficiency {
    pub holds: bool,
    /// `sup_θ Σ_{n=2}^{N} |ρ(θ, n)| |a_n|` over the sampled angles.
    pub sup: f64,
    pub argsup_theta: f64,
}

/// `Σ |ρ(θ)||a_n| < 1` for every sampled `θ` outside the window around 0.
pub fn rho_sufficiency(
    f: &TruncatedSeries,
    alpha: Alpha,
    theta_grid: usize,
    n_check: usize,
) -> Result<RhoSufficiency> {
    if !f.is_normalized() {
        return Err(Error::NotNormalized);
    }
    if theta_grid < 2 {
        return Err(Error::InvalidGrid(format!("θ grid of {theta_grid} points")));
    }
    let n_check = n_check.min(f.order());
    let mut best = (f64::NEG_INFINITY, f64::NAN);
    for k in 0..theta_grid {
        let theta = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * k as f64 / theta_grid as f64;
        if theta.abs() < EPS_THETA {
            continue;
        }
        let mut sum = 0.0;
        for n in 2..=n_check {
            let a = f.coeff(n).norm();
            if a != 0.0 {
                sum += rho_theta(alpha, theta, n)?.norm() * a;
            }
        }
        if sum > best.0 {
            best = (sum, theta);
        }
    }
    Ok(RhoSufficiency { holds: best.0 < 1.0, sup: best.0, argsup_theta: best.1 })
}
