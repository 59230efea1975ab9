//! Truncated complex power series `c_0 + c_1 z + ... + c_N z^N`.
//!
//! Every operation takes and returns series of one declared order `N`.
//! Operations that lose a term (differentiation, division of two series with
//! vanishing constant terms, `f/z`) zero-pad the top coefficient instead of
//! silently changing the order; their doc comments say which coefficients
//! remain exact.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 64;
/// Order used to recheck results computed at [`DEFAULT_ORDER`].
pub const STABILITY_ORDER: usize = 128;
/// Smallest admissible `|b_0|` for a divisor.
pub const UNIT_TOLERANCE: f64 = 1e-13;

const NORMALIZED_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

/// A point inside the disk together with the radius cap used for the tail
/// estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    z: Complex64,
    radius_cap: f64,
}

impl EvalPoint {
    pub fn new(z: Complex64, radius_cap: f64) -> Result<Self> {
        if !(radius_cap > 0.0 && radius_cap < 1.0) {
            return Err(Error::InvalidParams(format!(
                "radius cap {radius_cap} must lie in (0, 1)"
            )));
        }
        if z.norm() > radius_cap {
            return Err(Error::PointOutsideCap { modulus: z.norm(), cap: radius_cap });
        }
        Ok(Self { z, radius_cap })
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    pub fn radius_cap(&self) -> f64 {
        self.radius_cap
    }
}

/// Value of a truncated series plus a heuristic bound on the discarded tail.
///
/// `tail_estimate = |c_N| r^{N+1} / (1 - r)` treats the last retained
/// coefficient as a geometric-decay proxy. It is a diagnostic, not a
/// certified bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Evaluation {
    pub value: Complex64,
    pub tail_estimate: f64,
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

impl TruncatedSeries {
    /// Builds a series from `c_0..c_N`; requires `N >= 1` and finite entries.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidOrder(coeffs.len().saturating_sub(1)));
        }
        if let Some(i) = coeffs.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFiniteCoefficient(i));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&v| c(v)).collect())
    }

    /// Pads (with zeros) or truncates `coeffs` to exactly `order + 1` terms.
    pub fn with_order(mut coeffs: Vec<Complex64>, order: usize) -> Result<Self> {
        coeffs.resize(order + 1, Complex64::default());
        Self::new(coeffs)
    }

    fn raw(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(coeffs.len() >= 2);
        Self { coeffs }
    }

    fn checked(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::new(coeffs)
    }

    pub fn zero(order: usize) -> Self {
        Self::raw(vec![Complex64::default(); order.max(1) + 1])
    }

    /// The constant series `1`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c(1.0);
        s
    }

    /// The identity map `z`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[1] = c(1.0);
        s
    }

    /// `1/(1 - z)`.
    pub fn geometric(order: usize) -> Self {
        Self::raw(vec![c(1.0); order.max(1) + 1])
    }

    /// `z/(1 - z)`.
    pub fn shifted_geometric(order: usize) -> Self {
        let mut s = Self::geometric(order);
        s.coeffs[0] = Complex64::default();
        s
    }

    /// The Koebe function `z/(1 - z)^2`.
    pub fn koebe(order: usize) -> Self {
        Self::raw((0..=order.max(1)).map(|n| c(n as f64)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient `c_n`, zero beyond the truncation order.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.coeffs.get(n).copied().unwrap_or_default()
    }

    /// `c_0 = 0` and `c_1 = 1` within `1e-12`.
    pub fn is_normalized(&self) -> bool {
        self.coeffs[0].norm() < NORMALIZED_TOLERANCE
            && (self.coeffs[1] - 1.0).norm() < NORMALIZED_TOLERANCE
    }

    fn require_same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(())
    }

    fn require_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.require_same_order(other)?;
        Ok(Self::raw(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.require_same_order(other)?;
        Ok(Self::raw(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect()))
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::raw(self.coeffs.iter().map(|a| a * k).collect())
    }

    /// Cauchy product truncated at order `N`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.require_same_order(other)?;
        let n = self.order();
        let mut out = vec![Complex64::default(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == Complex64::default() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::checked(out)
    }

    /// Series quotient `q` with `q * b = a` through order `N`.
    pub fn div(&self, b: &Self) -> Result<Self> {
        self.require_same_order(b)?;
        let b0 = b.coeffs[0];
        if b0.norm() < UNIT_TOLERANCE {
            return Err(Error::DivisionByNonUnit(b0.norm()));
        }
        let n = self.order();
        let mut q: Vec<Complex64> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc -= q[k - j] * b.coeffs[j];
            }
            q.push(acc / b0);
        }
        Self::checked(q)
    }

    /// Term-wise derivative. Coefficients `0..N-1` are exact; `c_N` is
    /// zero-padded.
    pub fn differentiate(&self) -> Self {
        let n = self.order();
        let mut out: Vec<Complex64> =
            (1..=n).map(|k| self.coeffs[k] * k as f64).collect();
        out.push(Complex64::default());
        Self::raw(out)
    }

    /// `∫_0^z`. The term that would land at order `N+1` is dropped.
    pub fn integrate(&self) -> Self {
        let n = self.order();
        let mut out = vec![Complex64::default(); n + 1];
        for k in 1..=n {
            out[k] = self.coeffs[k - 1] / k as f64;
        }
        Self::raw(out)
    }

    /// `f(z)/z` for a series with `c_0 = 0`. The top coefficient is zero-padded.
    pub fn div_z(&self) -> Result<Self> {
        if self.coeffs[0].norm() >= NORMALIZED_TOLERANCE {
            return Err(Error::InvalidParams("f/z needs c0 = 0".into()));
        }
        let mut out = self.coeffs[1..].to_vec();
        out.push(Complex64::default());
        Ok(Self::raw(out))
    }

    /// `z f(z)`, dropping the term pushed past order `N`.
    pub fn mul_z(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(Complex64::default());
        out.extend_from_slice(&self.coeffs[..self.order()]);
        Self::raw(out)
    }

    /// `z f'(z)/f(z)` for normalized `f`.
    ///
    /// Coefficients `0..N-1` are exact (they use `c_1..c_N`); `c_N` is
    /// zero-padded because it would need `c_{N+1}`.
    pub fn z_log_derivative(&self) -> Result<Self> {
        self.require_normalized()?;
        let n = self.order();
        let a = &self.coeffs;
        // p * f = z f'  =>  sum_{k<=m} p_k a_{m+1-k} = (m+1) a_{m+1}
        let mut p: Vec<Complex64> = Vec::with_capacity(n + 1);
        for m in 0..n {
            let mut acc = a[m + 1] * (m + 1) as f64;
            for (k, pk) in p.iter().enumerate() {
                acc -= pk * a[m + 1 - k];
            }
            p.push(acc);
        }
        p.push(Complex64::default());
        Self::checked(p)
    }

    /// Binomial series of `(1 - z)^c` on the principal branch.
    pub fn pow_one_minus_z(exponent: f64, order: usize) -> Self {
        let order = order.max(1);
        let mut out = Vec::with_capacity(order + 1);
        let mut term = 1.0;
        out.push(c(term));
        for k in 0..order {
            term *= (k as f64 - exponent) / (k as f64 + 1.0);
            out.push(c(term));
        }
        Self::raw(out)
    }

    /// `log f` for a series with `c_0 = 1`, from `(log f)' = f'/f`.
    pub fn log_unit(&self) -> Result<Self> {
        if (self.coeffs[0] - 1.0).norm() >= NORMALIZED_TOLERANCE {
            return Err(Error::NonUnitConstantTerm(format!("{}", self.coeffs[0])));
        }
        let ratio = self.differentiate().div(self)?;
        let n = self.order();
        let mut out = vec![Complex64::default(); n + 1];
        for k in 1..=n {
            out[k] = ratio.coeffs[k - 1] / k as f64;
        }
        Self::checked(out)
    }

    /// `exp f`, from `E' = f' E`.
    pub fn exp(&self) -> Result<Self> {
        let n = self.order();
        let mut out = vec![Complex64::default(); n + 1];
        out[0] = self.coeffs[0].exp();
        for m in 1..=n {
            let mut acc = Complex64::default();
            for k in 1..=m {
                acc += self.coeffs[k] * out[m - k] * k as f64;
            }
            out[m] = acc / m as f64;
        }
        Self::checked(out)
    }

    /// `self(g(z))` by Horner's rule; `g` must have zero constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.require_same_order(g)?;
        if g.coeffs[0].norm() >= NORMALIZED_TOLERANCE {
            return Err(Error::InvalidParams("inner series of a composition needs c0 = 0".into()));
        }
        let n = self.order();
        let mut acc = Self::zero(n);
        for k in (0..=n).rev() {
            acc = acc.mul(g)?;
            acc.coeffs[0] += self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse of a normalized series, by Lagrange inversion:
    /// `g_n = [z^{n-1}] (z/f)^n / n`.
    pub fn revert(&self) -> Result<Self> {
        self.require_normalized()?;
        let n = self.order();
        let h = Self::one(n).div(&self.div_z()?)?;
        let mut out = vec![Complex64::default(); n + 1];
        let mut power = Self::one(n);
        for k in 1..=n {
            power = power.mul(&h)?;
            out[k] = power.coeffs[k - 1] / k as f64;
        }
        Self::checked(out)
    }

    /// Coefficient-wise (Hadamard) product, on every index.
    pub fn hadamard(&self, other: &Self) -> Result<Self> {
        self.require_same_order(other)?;
        Ok(Self::raw(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).collect()))
    }

    /// Horner evaluation with the geometric tail diagnostic.
    pub fn eval(&self, p: &EvalPoint) -> Evaluation {
        let z = p.z();
        let value = self.coeffs.iter().rev().fold(Complex64::default(), |acc, a| acc * z + a);
        let r = z.norm();
        let n = self.order() as i32;
        let tail_estimate = self.coeffs[self.order()].norm() * r.powi(n + 1) / (1.0 - r);
        Evaluation { value, tail_estimate }
    }

    /// Horner evaluation at any `z`, without the cap check or tail estimate.
    pub fn eval_at(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::default(), |acc, a| acc * z + a)
    }

    /// Largest coefficient-wise distance to `other` over the common indices.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}
