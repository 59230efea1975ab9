use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{q_alpha_eval, Alpha, EPS_THETA};

/// Modulus of the circular arc closing the curve across the `θ ≈ 0` gap.
pub const CAP_RADIUS: f64 = 1e6;
/// Image points beyond this modulus get a low-confidence flag.
pub const NEAR_CAP: f64 = 1e3;
/// Points closer than this to the polyline count as outside.
pub const INCLUSION_TOLERANCE: f64 = 1e-9;

const CAP_ARC_VERTICES: usize = 64;
const MIN_SAMPLES: usize = 256;

/// Closed polygonal approximation of `∂q_α(𝔻)`, oriented counterclockwise.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryCurve {
    pub alpha: Alpha,
    pub samples: usize,
    pub vertices: Vec<Complex64>,
    /// Vertex index range `[start, end)` of the closing cap (extensions and arc).
    pub cap_range: (usize, usize),
    /// `q_α(-1)`, the leftmost point of the image.
    pub a_min: f64,
}

/// Sample `q_α` on the unit circle and close the curve through `|w| = CAP_RADIUS`.
///
/// The samples either side of the excluded window are continued along their
/// end tangents out to the cap circle, joined by an arc through the positive
/// real axis.
pub fn boundary_polygon(alpha: Alpha, samples: usize) -> Result<BoundaryCurve> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidGrid(format!(
            "boundary needs at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }
    let q = |t: f64| q_alpha_eval(alpha, Complex64::from_polar(1.0, t));
    let thetas: Vec<f64> = (0..samples).map(|k| -PI + 2.0 * PI * k as f64 / samples as f64).collect();

    let mut vertices: Vec<Complex64> =
        thetas.iter().filter(|t| **t <= -EPS_THETA).map(|&t| q(t)).collect();
    vertices.push(q(-EPS_THETA));
    let cap_start = vertices.len();

    let lower = extend_to_cap(vertices[vertices.len() - 2], vertices[vertices.len() - 1]);
    let upper_end = q(EPS_THETA);
    let upper_next = thetas.iter().copied().find(|t| *t > EPS_THETA).map(q).unwrap_or(upper_end);
    let upper = extend_to_cap(upper_next, upper_end);

    let (a0, mut a1) = (lower.arg(), upper.arg());
    if a1 <= a0 {
        a1 += 2.0 * PI;
    }
    for j in 0..=CAP_ARC_VERTICES {
        let phi = a0 + (a1 - a0) * j as f64 / CAP_ARC_VERTICES as f64;
        vertices.push(Complex64::from_polar(CAP_RADIUS, phi));
    }
    let cap_end = vertices.len();
    vertices.push(upper_end);
    vertices.extend(thetas.iter().filter(|t| **t >= EPS_THETA).map(|&t| q(t)));

    Ok(BoundaryCurve {
        alpha,
        samples,
        vertices,
        cap_range: (cap_start, cap_end),
        a_min: q(-PI).re,
    })
}

/// Continue the ray from `from` through `to` until it meets `|w| = CAP_RADIUS`.
fn extend_to_cap(from: Complex64, to: Complex64) -> Complex64 {
    let d = to - from;
    let d = d / d.norm();
    let b = to.re * d.re + to.im * d.im;
    let t = -b + (b * b - to.norm_sqr() + CAP_RADIUS * CAP_RADIUS).sqrt();
    to + d * t
}

fn segment_distance(w: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    let t = if len2 == 0.0 { 0.0 } else { (((w - a) * ab.conj()).re / len2).clamp(0.0, 1.0) };
    (w - (a + ab * t)).norm()
}

impl BoundaryCurve {
    fn edges(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn winding_number(&self, w: Complex64) -> i32 {
        let mut wn = 0;
        for (a, b) in self.edges() {
            let cross = (b.re - a.re) * (w.im - a.im) - (w.re - a.re) * (b.im - a.im);
            if a.im <= w.im {
                if b.im > w.im && cross > 0.0 {
                    wn += 1;
                }
            } else if b.im <= w.im && cross < 0.0 {
                wn -= 1;
            }
        }
        wn
    }

    pub fn distance(&self, w: Complex64) -> f64 {
        self.edges().map(|(a, b)| segment_distance(w, a, b)).fold(f64::INFINITY, f64::min)
    }

    /// Distance beyond the inclusion tolerance for points inside, minus the
    /// distance for points outside.
    pub fn signed_margin(&self, w: Complex64) -> f64 {
        if !w.is_finite() {
            return f64::NEG_INFINITY;
        }
        let d = self.distance(w);
        if self.winding_number(w) != 0 {
            d - INCLUSION_TOLERANCE
        } else {
            -d
        }
    }

    pub fn contains(&self, w: Complex64) -> bool {
        self.signed_margin(w) > 0.0
    }

    /// The polygon vertices that sample `q_α` itself (cap excluded).
    pub fn sampled_vertices(&self) -> impl Iterator<Item = &Complex64> {
        let (s, e) = self.cap_range;
        self.vertices[..s].iter().chain(self.vertices[e..].iter())
    }
}
