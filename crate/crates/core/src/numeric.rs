//! Small complex and scalar helpers shared by the evaluators and solvers.

use num_complex::Complex64;

/// Half-width of the window around alpha = 1/2 inside which the logarithmic
/// limit formulas replace the power formulas.
pub const DELTA_HALF: f64 = 1e-8;

/// `exp(w) - 1` without cancellation for small `|w|`.
pub fn cexpm1(w: Complex64) -> Complex64 {
    let (x, y) = (w.re, w.im);
    let s = (0.5 * y).sin();
    Complex64::new(x.exp_m1() * y.cos() - 2.0 * s * s, x.exp() * y.sin())
}

/// `log(1 + w)` on the principal branch, accurate for small `|w|`.
pub fn clog1p(w: Complex64) -> Complex64 {
    let (a, b) = (w.re, w.im);
    let re = 0.5 * (2.0 * a + a * a + b * b).ln_1p();
    Complex64::new(re, b.atan2(1.0 + a))
}

/// `(1 - e^{c L}) / c`, i.e. `(1 - base^c) / c` with `L = log(base)`.
///
/// For `|c| < 2 DELTA_HALF` the `c -> 0` limit `-L` is returned.
pub fn one_minus_pow_over(c: f64, log_base: Complex64) -> Complex64 {
    if c.abs() < 2.0 * DELTA_HALF {
        -log_base
    } else {
        -cexpm1(log_base * c) / c
    }
}

/// Real counterpart of [`one_minus_pow_over`].
pub fn one_minus_pow_over_real(c: f64, log_base: f64) -> f64 {
    if c.abs() < 2.0 * DELTA_HALF {
        -log_base
    } else {
        -(c * log_base).exp_m1() / c
    }
}

/// Bisection on a bracket with `f(lo)` and `f(hi)` of opposite sign (or zero).
/// Returns the final `(lo, hi)` bracket, of width at most `tol`.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let mut f_lo = f(lo);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return (mid, mid);
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Golden-section search for a maximum of a unimodal `f` on `[a, b]`.
pub fn golden_max<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}
