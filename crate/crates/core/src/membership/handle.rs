use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::clog1p;
use crate::series::{TruncatedSeries, DEFAULT_ORDER};
use crate::special::{f_alpha_d1, f_alpha_d2, f_alpha_eval, Alpha};

/// Ma–Minda functions `φ` whose extremal `f` solves `z f'/f = φ(z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum PhiFamily {
    /// `√(1+z)`
    SL,
    /// `1 - log(1+z)`
    Log,
    /// `e^z`
    Exp,
    /// `2/(1+e^{-z})`
    SG,
    /// `1 + sin z`
    Sin,
    /// `1 + 4z/3 + 2z²/3`
    Cardioid,
}

impl PhiFamily {
    pub const ALL: [PhiFamily; 6] =
        [Self::SL, Self::Log, Self::Exp, Self::SG, Self::Sin, Self::Cardioid];

    pub fn phi(self, z: Complex64) -> Complex64 {
        match self {
            Self::SL => (1.0 + z).sqrt(),
            Self::Log => 1.0 - clog1p(z),
            Self::Exp => z.exp(),
            Self::SG => 2.0 / (1.0 + (-z).exp()),
            Self::Sin => 1.0 + z.sin(),
            Self::Cardioid => 1.0 + z * 4.0 / 3.0 + z * z * 2.0 / 3.0,
        }
    }

    pub fn phi_prime(self, z: Complex64) -> Complex64 {
        match self {
            Self::SL => 0.5 / (1.0 + z).sqrt(),
            Self::Log => -1.0 / (1.0 + z),
            Self::Exp => z.exp(),
            Self::SG => {
                let e = (-z).exp();
                2.0 * e / ((1.0 + e) * (1.0 + e))
            }
            Self::Sin => z.cos(),
            Self::Cardioid => (4.0 + 4.0 * z) / 3.0,
        }
    }

    /// Taylor series of `φ` to the given order.
    pub fn series(self, order: usize) -> TruncatedSeries {
        let n = order.max(1);
        let re = |v: f64| Complex64::new(v, 0.0);
        let z = TruncatedSeries::identity(n);
        let one = TruncatedSeries::one(n);
        // log(1+z) = sum (-1)^{k+1} z^k / k
        let log1p = || {
            let mut c = vec![Complex64::default()];
            c.extend((1..=n).map(|k| re(if k % 2 == 1 { 1.0 } else { -1.0 } / k as f64)));
            TruncatedSeries::new(c).expect("finite")
        };
        match self {
            Self::SL => log1p().scale(re(0.5)).exp().expect("finite"),
            Self::Log => one.sub(&log1p()).expect("same order"),
            Self::Exp => z.exp().expect("finite"),
            Self::SG => {
                let denom = one.add(&z.scale(re(-1.0)).exp().expect("finite")).expect("same order");
                one.scale(re(2.0)).div(&denom).expect("unit")
            }
            Self::Sin => {
                let i = Complex64::new(0.0, 1.0);
                let plus = z.scale(i).exp().expect("finite");
                let minus = z.scale(-i).exp().expect("finite");
                let sin = plus.sub(&minus).expect("same order").scale(1.0 / (2.0 * i));
                one.add(&sin).expect("same order")
            }
            Self::Cardioid => {
                let mut c = vec![re(1.0), re(4.0 / 3.0), re(2.0 / 3.0)];
                c.resize(n + 1, Complex64::default());
                TruncatedSeries::new(c).expect("finite")
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::SL => "sl",
            Self::Log => "log",
            Self::Exp => "exp",
            Self::SG => "sg",
            Self::Sin => "sin",
            Self::Cardioid => "cardioid",
        }
    }
}

impl std::str::FromStr for PhiFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParams(format!("unknown phi family '{s}'")))
    }
}

/// `f(z) = z exp(g(z))` with `g(z) = ∫_0^z (φ(t) - 1)/t dt` held as a series.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiExtremal {
    family: PhiFamily,
    exponent: TruncatedSeries,
    exponent_slope: TruncatedSeries,
}

impl PhiExtremal {
    pub fn new(family: PhiFamily, order: usize) -> Self {
        let phi = family.series(order);
        let slope = phi
            .sub(&TruncatedSeries::one(phi.order()))
            .and_then(|s| s.div_z())
            .expect("φ(0) = 1");
        Self { family, exponent: slope.integrate(), exponent_slope: slope }
    }

    pub fn family(&self) -> PhiFamily {
        self.family
    }

    /// Taylor series of `f` itself.
    pub fn f_series(&self) -> TruncatedSeries {
        self.exponent.exp().expect("finite").mul_z()
    }

    fn exp_g(&self, z: Complex64) -> Complex64 {
        self.exponent.eval_at(z).exp()
    }

    /// `(φ(z) - 1)/z`, from the series near the origin.
    fn slope(&self, z: Complex64) -> Complex64 {
        match self.family {
            PhiFamily::SL => 1.0 / (1.0 + (1.0 + z).sqrt()),
            _ if z.norm() < 1e-2 => self.exponent_slope.eval_at(z),
            f => (f.phi(z) - 1.0) / z,
        }
    }
}

/// A normalized analytic function with value and first two derivatives.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionHandle {
    Identity,
    /// `z/(1-z)²`
    Koebe,
    /// The extremal `f_α`.
    FAlpha(Alpha),
    /// `z + γ z²`
    FGammaPoly(Complex64),
    /// `4z exp(2(√(1+z) - 1)) / (1 + √(1+z))²`
    SLSharp,
    PhiExtremal(PhiExtremal),
    FromSeries(SeriesHandle),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesHandle {
    f: TruncatedSeries,
    d1: TruncatedSeries,
    d2: TruncatedSeries,
}

/// `f`, `f'`, `f''` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub f: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
}

impl FunctionHandle {
    pub fn phi_extremal(family: PhiFamily) -> Self {
        Self::PhiExtremal(PhiExtremal::new(family, DEFAULT_ORDER))
    }

    pub fn from_series(f: TruncatedSeries) -> Result<Self> {
        if !f.is_normalized() {
            return Err(Error::NotNormalized);
        }
        let d1 = f.differentiate();
        let d2 = d1.differentiate();
        Ok(Self::FromSeries(SeriesHandle { f, d1, d2 }))
    }

    pub fn jet(&self, z: Complex64) -> Jet {
        match self {
            Self::Identity => Jet { f: z, d1: Complex64::new(1.0, 0.0), d2: Complex64::default() },
            Self::Koebe => {
                let w = 1.0 - z;
                let w2 = w * w;
                Jet { f: z / w2, d1: (1.0 + z) / (w2 * w), d2: (4.0 + 2.0 * z) / (w2 * w2) }
            }
            Self::FAlpha(a) => Jet { f: f_alpha_eval(*a, z), d1: f_alpha_d1(*a, z), d2: f_alpha_d2(*a, z) },
            Self::FGammaPoly(g) => Jet { f: z + g * z * z, d1: 1.0 + 2.0 * g * z, d2: 2.0 * g },
            Self::SLSharp => {
                let s = (1.0 + z).sqrt();
                let d1 = 4.0 * s * (2.0 * (s - 1.0)).exp() / ((1.0 + s) * (1.0 + s));
                let d2 = d1 * (0.5 / (1.0 + z) + 1.0 / (1.0 + s));
                let f = 4.0 * z * (2.0 * (s - 1.0)).exp() / ((1.0 + s) * (1.0 + s));
                Jet { f, d1, d2 }
            }
            Self::PhiExtremal(p) => {
                let eg = p.exp_g(z);
                let phi = p.family.phi(z);
                let d1 = phi * eg;
                let d2 = eg * (p.family.phi_prime(z) + phi * p.slope(z));
                Jet { f: z * eg, d1, d2 }
            }
            Self::FromSeries(s) => Jet { f: s.f.eval_at(z), d1: s.d1.eval_at(z), d2: s.d2.eval_at(z) },
        }
    }

    pub fn value(&self, z: Complex64) -> Complex64 {
        self.jet(z).f
    }

    pub fn d1(&self, z: Complex64) -> Complex64 {
        self.jet(z).d1
    }

    pub fn d2(&self, z: Complex64) -> Complex64 {
        self.jet(z).d2
    }

    /// `f(z)/z`, with the value 1 at the origin.
    pub fn f_over_z(&self, z: Complex64) -> Complex64 {
        if z == Complex64::default() {
            return Complex64::new(1.0, 0.0);
        }
        match self {
            Self::PhiExtremal(p) => p.exp_g(z),
            Self::FGammaPoly(g) => 1.0 + g * z,
            _ => self.value(z) / z,
        }
    }
}

impl fmt::Display for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Identity => write!(f, "identity"),
            Self::Koebe => write!(f, "koebe"),
            Self::FAlpha(a) => write!(f, "falpha:{}", a.value()),
            Self::FGammaPoly(g) if g.im == 0.0 => write!(f, "fgamma:{}", g.re),
            Self::FGammaPoly(g) => write!(f, "fgamma:{},{}", g.re, g.im),
            Self::SLSharp => write!(f, "slsharp"),
            Self::PhiExtremal(p) => write!(f, "phi:{}", p.family.name()),
            Self::FromSeries(s) => write!(f, "series[order {}]", s.f.order()),
        }
    }
}
