//! Property tests for the series algebra and the closed-form evaluators.

use num_complex::Complex64;
use proptest::prelude::*;

use starq::membership::{check_sq_inequality, FunctionHandle, SampleGrid, Verdict};
use starq::special::{f_alpha_series, q_alpha_eval, q_alpha_jet, q_alpha_series};
use starq::{Alpha, TruncatedSeries};

const ORDER: usize = 10;

fn coeff() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn normalized() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(coeff(), ORDER - 1).prop_map(|tail| {
        let mut c = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        c.extend(tail);
        TruncatedSeries::new(c).unwrap()
    })
}

fn unit() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(coeff(), ORDER).prop_map(|tail| {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        c.extend(tail);
        TruncatedSeries::new(c).unwrap()
    })
}

fn any_series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(coeff(), ORDER + 1).prop_map(|c| TruncatedSeries::new(c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn division_undoes_multiplication(a in any_series(), b in unit()) {
        let back = a.mul(&b).unwrap().div(&b).unwrap();
        prop_assert!(back.max_abs_diff(&a) < 1e-9);
    }

    #[test]
    fn exp_and_log_are_inverse(u in unit()) {
        let back = u.log_unit().unwrap().exp().unwrap();
        prop_assert!(back.max_abs_diff(&u) < 1e-8);
    }

    #[test]
    fn log_derivative_matches_quotient(f in normalized()) {
        // z f'/f computed two ways; both lose the top coefficient.
        let direct = f.differentiate().mul_z().div_z().unwrap().div(&f.div_z().unwrap()).unwrap();
        let rec = f.z_log_derivative().unwrap();
        for k in 0..ORDER - 1 {
            prop_assert!((direct.coeff(k) - rec.coeff(k)).norm() < 1e-8, "k={}", k);
        }
    }

    #[test]
    fn reversion_round_trips(f in normalized()) {
        let g = f.revert().unwrap();
        let id = f.compose(&g).unwrap();
        prop_assert!(id.max_abs_diff(&TruncatedSeries::identity(ORDER)) < 1e-7);
        let id2 = g.compose(&f).unwrap();
        prop_assert!(id2.max_abs_diff(&TruncatedSeries::identity(ORDER)) < 1e-7);
    }

    #[test]
    fn hadamard_with_geometric_kernels(f in normalized()) {
        prop_assert_eq!(f.hadamard(&TruncatedSeries::shifted_geometric(ORDER)).unwrap(), f.clone());
        let k = f.hadamard(&TruncatedSeries::koebe(ORDER)).unwrap();
        let zf = f.differentiate().mul_z();
        prop_assert_eq!(&k.coeffs()[..ORDER], &zf.coeffs()[..ORDER]);
    }

    #[test]
    fn hadamard_is_commutative_and_bilinear(a in any_series(), b in any_series(), c in any_series(), s in coeff()) {
        prop_assert_eq!(a.hadamard(&b).unwrap(), b.hadamard(&a).unwrap());
        let lhs = a.hadamard(&b.add(&c.scale(s)).unwrap()).unwrap();
        let rhs = a.hadamard(&b).unwrap().add(&a.hadamard(&c).unwrap().scale(s)).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-14);
    }

    #[test]
    fn dominant_series_matches_closed_form(a in 0.0..0.99f64, r in 0.0..0.4f64, t in -3.1..3.1f64) {
        let alpha = Alpha::new(a).unwrap();
        let z = Complex64::from_polar(r, t);
        let s = q_alpha_series(alpha, 64).eval_at(z);
        prop_assert!((s - q_alpha_eval(alpha, z)).norm() < 1e-12);
    }

    #[test]
    fn dominant_solves_its_differential_equation(a in 0.0..0.99f64, r in 0.05..0.99f64, t in -3.1..3.1f64) {
        // q + z q'/q = (1 + (1-2α)z)/(1-z)
        let alpha = Alpha::new(a).unwrap();
        let z = Complex64::from_polar(r, t);
        let j = q_alpha_jet(alpha, z);
        let rhs = (1.0 + (1.0 - 2.0 * a) * z) / (1.0 - z);
        prop_assert!((j.q + j.log_derivative - rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn extremal_series_is_normalized(a in 0.0..0.99f64) {
        prop_assert!(f_alpha_series(Alpha::new(a).unwrap(), 16).is_normalized());
    }

    #[test]
    fn small_quadratics_satisfy_the_defining_inequality(g in 0.0..0.2f64, phase in -3.1..3.1f64) {
        // |γ| below the α = 0 radius of 1/4.
        let h = FunctionHandle::FGammaPoly(Complex64::from_polar(g, phase));
        let grid = SampleGrid::new(vec![0.5, 0.9, 0.99], 128).unwrap();
        let r = check_sq_inequality(&h, Alpha::new(0.0).unwrap(), &grid).unwrap();
        prop_assert_eq!(r.verdict, Verdict::HoldsOnGrid);
    }
}
