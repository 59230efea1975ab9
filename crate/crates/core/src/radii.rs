//! Radius problems: for each class, the smallest root in `(0, 1)` of the
//! equation whose root bounds the disk on which class members satisfy the
//! target condition.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::membership::{
    check_disk_about_one, check_m_beta, check_sq_inequality, check_starlike_order, sq_margin, FunctionHandle,
    MembershipReport, PhiFamily, SampleGrid,
};
use crate::numeric::{bisect, one_minus_pow_over_real};
use crate::special::{branch_threshold, gamma_alpha, q_min, Alpha, BranchClass};

const SCAN_LO: f64 = 1e-6;
const SCAN_HI: f64 = 1.0 - 1e-6;
const SCAN_STEP: f64 = 1e-3;
const BISECT_TOL: f64 = 1e-13;
/// Largest accepted `|residual(root)|`.
pub const RESIDUAL_TOLERANCE: f64 = 1e-12;
/// Relative shrink applied to the root before the inside check.
const INSIDE_SHRINK: f64 = 1e-3;
/// Relative growth for the outside probe of sharp problems.
const OUTSIDE_GROWTH: f64 = 0.02;
const WHOLE_DISK_LIMIT: f64 = 0.999;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RadiusTag {
    SL,
    LogClass,
    Exp,
    SG,
    Sin,
    Cardioid,
    StarlikeOrder,
    MBeta,
    Rad2,
    Example1,
}

impl RadiusTag {
    pub const ALL: [RadiusTag; 10] = [
        Self::SL,
        Self::LogClass,
        Self::Exp,
        Self::SG,
        Self::Sin,
        Self::Cardioid,
        Self::StarlikeOrder,
        Self::MBeta,
        Self::Rad2,
        Self::Example1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::SL => "sl",
            Self::LogClass => "log",
            Self::Exp => "exp",
            Self::SG => "sg",
            Self::Sin => "sin",
            Self::Cardioid => "cardioid",
            Self::StarlikeOrder => "starlike-order",
            Self::MBeta => "mbeta",
            Self::Rad2 => "disk",
            Self::Example1 => "quadratic",
        }
    }

    /// The Ma–Minda family whose class the problem starts from, if any.
    pub fn family(self) -> Option<PhiFamily> {
        match self {
            Self::SL => Some(PhiFamily::SL),
            Self::LogClass => Some(PhiFamily::Log),
            Self::Exp => Some(PhiFamily::Exp),
            Self::SG => Some(PhiFamily::SG),
            Self::Sin => Some(PhiFamily::Sin),
            Self::Cardioid => Some(PhiFamily::Cardioid),
            _ => None,
        }
    }
}

impl fmt::Display for RadiusTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RadiusTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        Self::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .or(match s.as_str() {
                "logclass" => Some(Self::LogClass),
                "starlikeorder" | "order" => Some(Self::StarlikeOrder),
                "rad2" => Some(Self::Rad2),
                "example1" => Some(Self::Example1),
                _ => None,
            })
            .ok_or_else(|| Error::InvalidParams(format!("unknown radius class '{s}'")))
    }
}

/// A radius equation with its parameters, validated on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusProblem {
    pub tag: RadiusTag,
    pub alpha: Alpha,
    /// Target starlikeness order (StarlikeOrder only).
    pub gamma: Option<f64>,
    /// Bound `β` (MBeta, Rad2).
    pub beta: Option<f64>,
}

impl RadiusProblem {
    pub fn new(tag: RadiusTag, alpha: Alpha) -> Result<Self> {
        Self::with_params(tag, alpha, None, None)
    }

    pub fn starlike_order(alpha: Alpha, gamma: f64) -> Result<Self> {
        Self::with_params(RadiusTag::StarlikeOrder, alpha, Some(gamma), None)
    }

    pub fn m_beta(alpha: Alpha, beta: f64) -> Result<Self> {
        Self::with_params(RadiusTag::MBeta, alpha, None, Some(beta))
    }

    pub fn disk(alpha: Alpha, beta: f64) -> Result<Self> {
        Self::with_params(RadiusTag::Rad2, alpha, None, Some(beta))
    }

    pub fn with_params(tag: RadiusTag, alpha: Alpha, gamma: Option<f64>, beta: Option<f64>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        let a = alpha.value();
        match tag {
            // The cardioid equation is negative on all of [0, 1) once α ≥ ½.
            RadiusTag::Cardioid if a >= 0.5 => {
                return bad(format!("cardioid radius needs α < 1/2 (equation has no root), got {a}"))
            }
            RadiusTag::StarlikeOrder => match gamma {
                None => return bad("starlike-order radius needs γ".into()),
                Some(g) if !(g > q_min(alpha) && g < 1.0) => {
                    return bad(format!(
                        "γ = {g} must lie in (q_min(α), 1) = ({}, 1); smaller orders hold on the whole disk",
                        q_min(alpha)
                    ))
                }
                _ => {}
            },
            RadiusTag::MBeta => match beta {
                Some(b) if b > 1.0 => {}
                _ => return bad(format!("M(β) radius needs β > 1, got {beta:?}")),
            },
            RadiusTag::Rad2 => match beta {
                Some(b) if b >= 1.0 => {}
                _ => return bad(format!("disk radius needs β ≥ 1, got {beta:?}")),
            },
            _ => {}
        }
        let gamma = if tag == RadiusTag::StarlikeOrder { gamma } else { None };
        let beta = if matches!(tag, RadiusTag::MBeta | RadiusTag::Rad2) { beta } else { None };
        Ok(Self { tag, alpha, gamma, beta })
    }

    /// For Exp and SG: whether the large-radius form of the equation applies.
    pub fn branch(&self) -> Option<Branch> {
        let class = match self.tag {
            RadiusTag::Exp => BranchClass::Exp,
            RadiusTag::SG => BranchClass::SG,
            _ => return None,
        };
        Some(if self.alpha.value() < branch_threshold(class) {
            Branch::AboveThreshold
        } else {
            Branch::BelowThreshold
        })
    }
}

/// Which side of `r = √2 - 1` the root lies on, for the classes whose
/// equation changes form there.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// Root in `(0, √2 - 1]`, reached when `α ≥ branch_threshold`.
    BelowThreshold,
    /// Root in `(√2 - 1, 1)`, reached when `α < branch_threshold`.
    AboveThreshold,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadiusResult {
    pub problem: RadiusProblem,
    pub root: f64,
    pub residual: f64,
    /// Scan interval on whose ends the residual changes sign.
    pub bracket: (f64, f64),
    pub branch: Option<Branch>,
    /// No sign change on `(0, 1)`: the condition holds on the whole disk.
    pub whole_disk: bool,
    pub note: Option<String>,
}

/// The Exp/SG radius equations in their two forms; `large_r_branch` selects
/// the form used for roots above `√2 - 1`. At `r = √2 - 1` the large form is
/// `8r` times the small one.
pub fn branch_equation(class: BranchClass, large_r_branch: bool, alpha: f64, r: f64) -> f64 {
    let w = 4.0 * (1.0 - r * r);
    let s = (1.0 + r * r) * (1.0 + r * r);
    match (class, large_r_branch) {
        (BranchClass::Exp, false) => (-r).exp() - alpha - r,
        (BranchClass::Exp, true) => w * ((-r).exp() - alpha) - s,
        (BranchClass::SG, false) => (1.0 + (-r).exp()) * (2.0 - alpha * (1.0 + r.exp())) - r * (1.0 + r.exp()),
        (BranchClass::SG, true) => {
            w * (1.0 + (-r).exp()) * (2.0 - alpha * (1.0 + r.exp())) - s * (1.0 + r.exp())
        }
    }
}

/// Left side of the quadratic-example inequality at `x = cos θ = -1`.
fn example1_h(a: f64, r: f64) -> f64 {
    let (r2, r4) = (r * r, r * r * r * r);
    let num = a * a + r2 - 6.0 * a * r2 + 13.0 * a * a * r2 + 4.0 * a * a * r4
        - 2.0 * a * (3.0 * a - 1.0) * r * (1.0 + 2.0 * r2);
    let den = ((1.0 - r) * (1.0 - 2.0 * r)).powi(2);
    (2.0 * r - 1.0) / (r - 1.0) - (num / den).sqrt()
}

/// Signed residual of the problem's equation at `r`.
///
/// The starlike-order and M(β) equations are divided by `2α - 1` and
/// `1 - 2α` respectively, so that they pass continuously into their
/// logarithmic forms at `α = ½`; roots are unchanged.
pub fn residual(p: &RadiusProblem, r: f64) -> f64 {
    let a = p.alpha.value();
    let c = if p.alpha.near_half() { 0.0 } else { p.alpha.q_exponent() };
    match p.tag {
        RadiusTag::SL => 2.0 * (1.0 - r) * ((1.0 - r).sqrt() - a) - r,
        RadiusTag::LogClass => {
            let l = 1.0 - r.ln_1p();
            l * (1.0 - r) * (l - a) - r
        }
        RadiusTag::Exp | RadiusTag::SG => {
            let class = if p.tag == RadiusTag::Exp { BranchClass::Exp } else { BranchClass::SG };
            branch_equation(class, p.branch() == Some(Branch::AboveThreshold), a, r)
        }
        RadiusTag::Sin => {
            let (s, ch) = (r.sin(), r.cosh());
            (1.0 - s) * (1.0 - s * ch - a) - r * ch
        }
        RadiusTag::Cardioid => (3.0 - 2.0 * r * r) * (1.0 - r * r - 2.0 * a) - 6.0 * 3f64.sqrt() * r * (1.0 + r),
        RadiusTag::StarlikeOrder => {
            let g = p.gamma.expect("validated");
            r + g * (1.0 + r) * one_minus_pow_over_real(c, r.ln_1p())
        }
        RadiusTag::MBeta => {
            let b = p.beta.expect("validated");
            r - b * (1.0 - r) * one_minus_pow_over_real(c, (-r).ln_1p())
        }
        RadiusTag::Rad2 => {
            let b = p.beta.expect("validated");
            let g = gamma_alpha(p.alpha);
            2.0 * (1.0 - g) * r - b * (1.0 - r) * (1.0 - (1.0 - 2.0 * g).abs() * r)
        }
        RadiusTag::Example1 => example1_h(a, r),
    }
}

/// Smallest root of [`residual`] in `(0, 1)`: a uniform scan for the first
/// sign change, bisection, then a Newton step kept inside the bracket.
pub fn solve(p: &RadiusProblem) -> Result<RadiusResult> {
    let f = |r: f64| residual(p, r);
    let n = ((SCAN_HI - SCAN_LO) / SCAN_STEP).floor() as usize;
    let mut grid: Vec<f64> = (0..=n).map(|i| SCAN_LO + SCAN_STEP * i as f64).collect();
    if *grid.last().expect("non-empty") < SCAN_HI {
        grid.push(SCAN_HI);
    }

    let (mut prev_r, mut prev_f) = (grid[0], f(grid[0]));
    let mut bracket = None;
    if prev_f == 0.0 {
        bracket = Some((prev_r, prev_r));
    }
    for &r in &grid[1..] {
        if bracket.is_some() {
            break;
        }
        let v = f(r);
        if v == 0.0 || (v < 0.0) != (prev_f < 0.0) {
            bracket = Some((prev_r, r));
        }
        prev_r = r;
        prev_f = v;
    }

    let note = (p.tag == RadiusTag::Example1)
        .then(|| "root of the x = -1 reduction of the quadratic example inequality".to_string());

    let Some((lo, hi)) = bracket else {
        if p.tag == RadiusTag::MBeta {
            return Ok(RadiusResult {
                problem: *p,
                root: 1.0,
                residual: prev_f,
                bracket: (prev_r, 1.0),
                branch: None,
                whole_disk: true,
                note: Some("no sign change on (0, 1): bound holds on the whole disk".into()),
            });
        }
        return Err(Error::NoRoot(format!(
            "{} at α = {}: no sign change on [{SCAN_LO}, {SCAN_HI}] (residual {:.3e} → {:.3e})",
            p.tag,
            p.alpha.value(),
            f(grid[0]),
            prev_f
        )));
    };

    let (blo, bhi) = bisect(&f, lo, hi, BISECT_TOL);
    let mut root = 0.5 * (blo + bhi);
    let mut best = f(root);
    for cand in [blo, bhi] {
        let v = f(cand);
        if v.abs() < best.abs() {
            (root, best) = (cand, v);
        }
    }
    let h = 1e-7_f64.min(0.5 * root).min(0.5 * (1.0 - root));
    let slope = (f(root + h) - f(root - h)) / (2.0 * h);
    if slope.is_finite() && slope != 0.0 {
        let polished = root - best / slope;
        if polished > lo && polished < hi {
            let v = f(polished);
            if v.abs() < best.abs() {
                (root, best) = (polished, v);
            }
        }
    }
    if best.is_nan() || best.abs() > RESIDUAL_TOLERANCE {
        return Err(Error::NoRoot(format!(
            "{} at α = {}: bracket [{lo}, {hi}] refined to {root} but residual {best:.3e} exceeds {RESIDUAL_TOLERANCE:e}",
            p.tag,
            p.alpha.value()
        )));
    }
    Ok(RadiusResult { problem: *p, root, residual: best, bracket: (lo, hi), branch: p.branch(), whole_disk: false, note })
}

/// Outcome of checking a solved radius against sampled membership.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verification {
    /// The target condition on radii below the root, for the problem's extremal function.
    pub inside: MembershipReport,
    /// Sharp problems: the same condition on the circle slightly beyond the root.
    pub outside: Option<MembershipReport>,
    /// SL only: the `S*_q(α)` margin of the extremal function at `z = -root`.
    pub boundary_margin: Option<f64>,
}

/// Sample the problem's extremal function on radii below the root (and, for
/// sharp problems, just beyond it).
pub fn verify(p: &RadiusProblem, res: &RadiusResult, g: &SampleGrid) -> Result<Verification> {
    let limit = if res.whole_disk { WHOLE_DISK_LIMIT } else { res.root * (1.0 - INSIDE_SHRINK) };
    let inside_grid = g.restricted_to(limit)?;
    let falpha = FunctionHandle::FAlpha(p.alpha);
    let outside_grid = || -> Result<Option<SampleGrid>> {
        let r = res.root * (1.0 + OUTSIDE_GROWTH);
        if res.whole_disk || r >= 1.0 {
            return Ok(None);
        }
        SampleGrid::new(vec![r], g.angular_count()).map(Some)
    };

    match p.tag {
        RadiusTag::StarlikeOrder => {
            let gamma = p.gamma.expect("validated");
            let outside = outside_grid()?.map(|o| check_starlike_order(&falpha, gamma, &o)).transpose()?;
            Ok(Verification { inside: check_starlike_order(&falpha, gamma, &inside_grid)?, outside, boundary_margin: None })
        }
        RadiusTag::MBeta => {
            let beta = p.beta.expect("validated");
            let outside = outside_grid()?.map(|o| check_m_beta(&falpha, beta, &o)).transpose()?;
            Ok(Verification { inside: check_m_beta(&falpha, beta, &inside_grid)?, outside, boundary_margin: None })
        }
        RadiusTag::Rad2 => Ok(Verification {
            inside: check_disk_about_one(&falpha, p.beta.expect("validated"), &inside_grid)?,
            outside: None,
            boundary_margin: None,
        }),
        RadiusTag::Example1 => {
            let h = FunctionHandle::FGammaPoly(Complex64::new(limit, 0.0));
            Ok(Verification { inside: check_sq_inequality(&h, p.alpha, g)?, outside: None, boundary_margin: None })
        }
        RadiusTag::SL => {
            let h = FunctionHandle::SLSharp;
            let edge = sq_margin(&h, p.alpha, Complex64::new(-res.root, 0.0))?;
            Ok(Verification {
                inside: check_sq_inequality(&h, p.alpha, &inside_grid)?,
                outside: None,
                boundary_margin: Some(edge),
            })
        }
        tag => {
            let h = FunctionHandle::phi_extremal(tag.family().expect("Ma–Minda tag"));
            Ok(Verification { inside: check_sq_inequality(&h, p.alpha, &inside_grid)?, outside: None, boundary_margin: None })
        }
    }
}

/// `√2 - 1`, the radius at which the Exp and SG equations change form.
pub fn branch_radius() -> f64 {
    SQRT_2 - 1.0
}
