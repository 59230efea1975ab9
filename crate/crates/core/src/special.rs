//! Closed forms for the dominant `q_α`, the extremal function `f_α`, and the
//! constants derived from them.
//!
//! ```text
//! q_α(z) = (1-2α) z / ((1-z)(1-(1-z)^{1-2α}))      f_α(z) = (1-(1-z)^{2α-1}) / (2α-1)
//! q_½(z) = -z / ((1-z) log(1-z))                   f_½(z) = -log(1-z)
//! ```
//!
//! Both are written through `P_c(z) = (1-(1-z)^c)/c`, which tends to
//! `-log(1-z)` as `c -> 0`; inside `|α - ½| < DELTA_HALF` the logarithmic form
//! is used directly.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{clog1p, golden_max, one_minus_pow_over, DELTA_HALF};
use crate::series::TruncatedSeries;

/// Exclusion half-width around `θ = 0` (the boundary singularity `z = 1`).
pub const EPS_THETA: f64 = 1e-3;

/// Below this modulus `q_α` is evaluated from its order-8 series.
const SMALL_Z: f64 = 1e-4;
const SMALL_Z_ORDER: usize = 8;

const ROTATION_SAMPLES: usize = 4096;

/// Class parameter `α ∈ [0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        if (0.0..1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(Error::InvalidAlpha(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// `|α - ½| < DELTA_HALF`: the logarithmic formulas apply.
    pub fn near_half(self) -> bool {
        (self.0 - 0.5).abs() < DELTA_HALF
    }

    /// The exponent `1 - 2α` of `q_α`.
    pub fn q_exponent(self) -> f64 {
        1.0 - 2.0 * self.0
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.0)
    }
}

fn log_one_minus(z: Complex64) -> Complex64 {
    clog1p(-z)
}

/// `P_c(z) = (1 - (1-z)^c) / c` with the logarithmic limit at `c = 0`.
fn pow_quotient(c: f64, z: Complex64, near_zero: bool) -> Complex64 {
    let l = log_one_minus(z);
    if near_zero {
        -l
    } else {
        one_minus_pow_over(c, l)
    }
}

/// Value of `q_α(z)`.
///
/// The closed form extends continuously to the unit circle minus `z = 1`;
/// boundary samples use the same formula.
pub fn q_alpha_eval(alpha: Alpha, z: Complex64) -> Complex64 {
    if z.norm() < SMALL_Z {
        return q_alpha_series(alpha, SMALL_Z_ORDER).eval_at(z);
    }
    let p = pow_quotient(alpha.q_exponent(), z, alpha.near_half());
    z / ((1.0 - z) * p)
}

/// `q_α`, its logarithmic derivative `u = z q'/q`, and `1 + z q''/q'` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QJet {
    pub q: Complex64,
    pub log_derivative: Complex64,
    pub convexity: Complex64,
}

impl QJet {
    /// `z q'(z)`.
    pub fn z_derivative(&self) -> Complex64 {
        self.q * self.log_derivative
    }
}

/// Derivative data of `q_α` from the closed form
/// `z q'/q = 1/(1-z) - T`, `T = z (1-z)^{c-1} / P_c`.
///
/// Loses relative accuracy as `z -> 0`; intended for `|z|` bounded away from 0.
pub fn q_alpha_jet(alpha: Alpha, z: Complex64) -> QJet {
    let c = if alpha.near_half() { 0.0 } else { alpha.q_exponent() };
    let p = pow_quotient(alpha.q_exponent(), z, alpha.near_half());
    let one_minus = 1.0 - z;
    let q = z / (one_minus * p);
    let t = z * (log_one_minus(z) * (c - 1.0)).exp() / p;
    let u = 1.0 / one_minus - t;
    let z_t_prime = t * (1.0 + (1.0 - c) * z / one_minus - t);
    let z_u_prime = z / (one_minus * one_minus) - z_t_prime;
    QJet { q, log_derivative: u, convexity: u + z_u_prime / u }
}

/// Taylor series of `q_α` to order `N`, by dividing `(1-2α)` by
/// `(1-z) (1-(1-z)^{1-2α})/z`.
pub fn q_alpha_series(alpha: Alpha, order: usize) -> TruncatedSeries {
    let order = order.max(1);
    let one_minus_z = TruncatedSeries::pow_one_minus_z(1.0, order);
    let (numerator, quotient) = if alpha.near_half() {
        // -log(1-z)/z = sum z^k/(k+1)
        let coeffs = (0..=order).map(|k| Complex64::new(1.0 / (k as f64 + 1.0), 0.0)).collect();
        (1.0, TruncatedSeries::new(coeffs).expect("finite coefficients"))
    } else {
        let c = alpha.q_exponent();
        let pow = TruncatedSeries::pow_one_minus_z(c, order + 1);
        let one_minus_pow = TruncatedSeries::one(order + 1).sub(&pow).expect("same order");
        let shifted = one_minus_pow.div_z().expect("zero constant term");
        let trimmed = TruncatedSeries::with_order(shifted.coeffs().to_vec(), order)
            .expect("finite coefficients");
        (c, trimmed)
    };
    let denominator = one_minus_z.mul(&quotient).expect("same order");
    TruncatedSeries::one(order)
        .scale(Complex64::new(numerator, 0.0))
        .div(&denominator)
        .expect("unit denominator")
}

/// `f_α(z)`.
pub fn f_alpha_eval(alpha: Alpha, z: Complex64) -> Complex64 {
    pow_quotient(2.0 * alpha.value() - 1.0, z, alpha.near_half())
}

/// `f_α'(z) = (1-z)^{2α-2}`.
pub fn f_alpha_d1(alpha: Alpha, z: Complex64) -> Complex64 {
    (log_one_minus(z) * (2.0 * alpha.value() - 2.0)).exp()
}

/// `f_α''(z) = (2-2α)(1-z)^{2α-3}`.
pub fn f_alpha_d2(alpha: Alpha, z: Complex64) -> Complex64 {
    (log_one_minus(z) * (2.0 * alpha.value() - 3.0)).exp() * (2.0 - 2.0 * alpha.value())
}

/// `a_n` of `f_α`: `∏_{j=2}^{n} (j - 2α) / n!`.
pub fn f_alpha_coeff(alpha: Alpha, n: usize) -> f64 {
    assert!(n >= 2, "f_alpha_coeff needs n >= 2");
    (2..=n).map(|j| (j as f64 - 2.0 * alpha.value()) / j as f64).product()
}

/// Series of `f_α`, built from the binomial series of `(1-z)^{2α-1}`.
pub fn f_alpha_series(alpha: Alpha, order: usize) -> TruncatedSeries {
    if alpha.near_half() {
        let mut coeffs = vec![Complex64::default()];
        coeffs.extend((1..=order.max(1)).map(|k| Complex64::new(1.0 / k as f64, 0.0)));
        return TruncatedSeries::new(coeffs).expect("finite coefficients");
    }
    let c = 2.0 * alpha.value() - 1.0;
    let pow = TruncatedSeries::pow_one_minus_z(c, order);
    TruncatedSeries::one(order)
        .sub(&pow)
        .expect("same order")
        .scale(Complex64::new(1.0 / c, 0.0))
}

/// `q_α(-1) = min Re q_α`, which is also the order of starlikeness of `K(α)`.
pub fn q_min(alpha: Alpha) -> f64 {
    if alpha.near_half() {
        return 1.0 / (4f64).ln();
    }
    let a = alpha.value();
    (2.0 * a - 1.0) / (2.0 - 2f64.powf(2.0 * (1.0 - a)))
}

/// `γ(α)`, the lower bound of `Re f(z)/z` on `S*(q_α)`.
pub fn gamma_alpha(alpha: Alpha) -> f64 {
    if alpha.near_half() {
        let l4 = 2.0 * LN_2;
        return 2.0 * (1.0 - l4) / (2.0 - 3.0 * l4);
    }
    let a = alpha.value();
    (3.0 - 2.0 * a - 2f64.powf(2.0 * (1.0 - a))) / (4.0 - 2.0 * a - 3.0 * 2f64.powf(1.0 - 2.0 * a))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassConstants {
    pub alpha: Alpha,
    pub q_min: f64,
    pub gamma: f64,
    pub macgregor_order: f64,
    /// Starlike orders `γ' ∈ [0, q_min]` hold on the whole disk.
    pub starlike_order_range: (f64, f64),
}

pub fn class_constants(alpha: Alpha) -> ClassConstants {
    let qm = q_min(alpha);
    ClassConstants {
        alpha,
        q_min: qm,
        gamma: gamma_alpha(alpha),
        macgregor_order: qm,
        starlike_order_range: (0.0, qm),
    }
}

/// Classes whose radius equation switches form at `r = √2 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BranchClass {
    Exp,
    SG,
}

/// The `α` at which the radius root equals `√2 - 1`, found by bisection on
/// the small-radius branch equation evaluated at `r = √2 - 1`.
pub fn branch_threshold(class: BranchClass) -> f64 {
    let r = std::f64::consts::SQRT_2 - 1.0;
    let f = |a: f64| crate::radii::branch_equation(class, false, a, r);
    let (lo, hi) = crate::numeric::bisect(&f, 0.0, 1.0, 1e-15);
    0.5 * (lo + hi)
}

fn check_theta(theta: f64) -> Result<()> {
    if theta.abs() < EPS_THETA || theta.abs() > PI {
        return Err(Error::ThetaTooClose(theta));
    }
    Ok(())
}

/// `λ(θ)` of the convolution criterion.
pub fn lambda_theta(alpha: Alpha, theta: f64) -> Result<Complex64> {
    check_theta(theta)?;
    let e = Complex64::from_polar(1.0, theta);
    let p = pow_quotient(alpha.q_exponent(), e, alpha.near_half());
    Ok(1.0 / (1.0 - (e.conj() - 1.0) * p))
}

/// Multiplier `ρ(θ)` at index `n` in `1 ≠ Σ ρ(θ) a_n z^{n-1}`, from the direct
/// quotient formula.
pub fn rho_theta(alpha: Alpha, theta: f64, n: usize) -> Result<Complex64> {
    if n < 2 {
        return Err(Error::InvalidParams(format!("rho_theta needs n >= 2, got {n}")));
    }
    check_theta(theta)?;
    let e = Complex64::from_polar(1.0, theta);
    let p = pow_quotient(alpha.q_exponent(), e, alpha.near_half());
    let k = (e.conj() - 1.0) * p;
    Ok((k * n as f64 - 1.0) / (1.0 - k))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Envelope {
    pub growth_lo: f64,
    pub growth_hi: f64,
    pub distortion_lo: f64,
    pub distortion_hi: f64,
    pub rotation_max: f64,
}

/// Growth, distortion and rotation envelopes of `S*(q_α)` on `|z| = r`.
pub fn envelope(alpha: Alpha, r: f64) -> Result<Envelope> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParams(format!("radius {r} must lie in (0, 1)")));
    }
    let a = alpha.value();
    let growth_lo = -f_alpha_eval(alpha, Complex64::new(-r, 0.0)).re;
    let growth_hi = f_alpha_eval(alpha, Complex64::new(r, 0.0)).re;
    let rotation = |theta: f64| {
        let z = Complex64::from_polar(r, theta);
        (f_alpha_eval(alpha, z) / z).arg()
    };
    let step = 2.0 * PI / ROTATION_SAMPLES as f64;
    let (best_k, _) = (0..ROTATION_SAMPLES)
        .map(|k| (k, rotation(-PI + step * k as f64)))
        .fold((0, f64::NEG_INFINITY), |acc, (k, v)| if v > acc.1 { (k, v) } else { acc });
    let centre = -PI + step * best_k as f64;
    let (_, refined) = golden_max(&rotation, centre - step, centre + step, 1e-12);
    let sampled = rotation(centre);
    Ok(Envelope {
        growth_lo,
        growth_hi,
        distortion_lo: (1.0 + r).powf(2.0 * (a - 1.0)),
        distortion_hi: (1.0 - r).powf(2.0 * (a - 1.0)),
        rotation_max: refined.max(sampled),
    })
}
