//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::f64::consts::SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use starq::coeffs::{
    a3_bound, fekete_breakpoints, fekete_szego_bound, inverse_coeff_bounds, log_coeff_bound, log_coeffs,
    FeketeParams,
};
use starq::membership::{
    boundary_polygon, check_convex_order, check_gb, check_re_f_over_z, check_rho_convex, check_sq_inequality,
    check_subordination_qalpha, convexity_scan, FunctionHandle, PhiFamily, SampleGrid, Verdict,
};
use starq::radii::{residual, solve, verify, RadiusProblem, RadiusTag};
use starq::special::{branch_threshold, f_alpha_series, gamma_alpha, q_alpha_eval, q_alpha_series, q_min, BranchClass};
use starq::{Alpha, TruncatedSeries};

const FIGURE_TOL: f64 = 1e-5;
const THRESHOLD_TOL: f64 = 1e-5;
const EXTREMAL_TOL: f64 = 1e-10;
const SERIES_TOL: f64 = 1e-12;
const DUALITY_TOL: f64 = 1e-10;
const CONTINUITY_TOL: f64 = 1e-12;
const RESIDUAL_TOL: f64 = 1e-12;
const BRANCH_RADIUS_SLACK: f64 = 1e-9;
const SHARPNESS_TOL: f64 = 1e-6;
const LOG_COEFF_TOL: f64 = 1e-12;
const CONVEXITY_FLOOR: f64 = -1e-6;

const SEED: u64 = 0x5EED_2024;
const DUALITY_TRIALS: usize = 1000;
const HADAMARD_TRIALS: usize = 100;
const CONVEXITY_SAMPLES: usize = 4096;
const CURVE_SAMPLES: usize = 4096;

fn alpha(a: f64) -> Alpha {
    Alpha::new(a).unwrap()
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn random_series(rng: &mut ChaCha8Rng, order: usize) -> TruncatedSeries {
    let mut c = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    c.extend((2..=order).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))));
    TruncatedSeries::new(c).unwrap()
}

fn figure_constants() -> Outcome {
    let cases = [(0.0, 0.5), (0.5, 0.721348), (2.0 / 3.0, 0.807887), (7.0 / 9.0, 0.869128)];
    let mut worst: f64 = 0.0;
    for (a, want) in cases {
        let got = q_min(alpha(a));
        worst = worst.max((got - want).abs());
        ensure((got - want).abs() < FIGURE_TOL, format!("q_min({a}) = {got}, expected {want}"))?;
    }
    Ok(format!("max deviation {worst:.2e}"))
}

fn branch_thresholds() -> Outcome {
    let exp = branch_threshold(BranchClass::Exp);
    let sg = branch_threshold(BranchClass::SG);
    ensure((exp - 0.246646).abs() < THRESHOLD_TOL, format!("Exp threshold {exp}"))?;
    ensure((sg - 0.546407).abs() < THRESHOLD_TOL, format!("SG threshold {sg}"))?;
    Ok(format!("Exp {exp:.9}, SG {sg:.9}"))
}

fn extremal_identity() -> Outcome {
    let grid = SampleGrid::new((1..=9).map(|k| k as f64 / 10.0).collect(), 512).unwrap();
    let mut sup: f64 = 0.0;
    for k in 0..10 {
        let a = alpha(k as f64 / 10.0);
        let h = FunctionHandle::FAlpha(a);
        for z in grid.points() {
            let j = h.jet(z);
            sup = sup.max((z * j.d1 / j.f - q_alpha_eval(a, z)).norm());
        }
    }
    ensure(sup < EXTREMAL_TOL, format!("sup |zf'/f - q| = {sup:.3e}"))?;
    Ok(format!("sup |zf'/f - q| = {sup:.2e}"))
}

fn series_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    for k in 0..10 {
        let a = k as f64 / 10.0;
        let s = q_alpha_series(alpha(a), 16);
        let want = [
            1.0,
            1.0 - a,
            (3.0 - 4.0 * a + a * a) / 3.0,
            (2.0 - 3.0 * a + a * a) / 2.0,
            (45.0 - 72.0 * a + 26.0 * a * a + 2.0 * a.powi(3) - a.powi(4)) / 45.0,
        ];
        for (n, w) in want.iter().enumerate() {
            let d = (s.coeff(n) - w).norm();
            worst = worst.max(d);
            ensure(d < SERIES_TOL, format!("α={a}: coefficient {n} = {}, expected {w}", s.coeff(n)))?;
        }
    }
    let q0 = q_alpha_series(alpha(0.0), 32);
    ensure(q0.coeffs().iter().all(|c| (c - 1.0).norm() < SERIES_TOL), "q_0 series is not all ones")?;
    Ok(format!("max deviation {worst:.2e}; q_0 all ones"))
}

fn coefficient_duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..DUALITY_TRIALS {
        let f = random_series(&mut rng, 6);
        let g = f.revert().map_err(|e| e.to_string())?;
        let (a2, a3) = (f.coeff(2), f.coeff(3));
        worst = worst.max((g.coeff(2).norm() - a2.norm()).abs());
        worst = worst.max((g.coeff(3).norm() - (2.0 * a2 * a2 - a3).norm()).abs());
    }
    ensure(worst < DUALITY_TOL, format!("max duality residual {worst:.3e}"))?;
    let k = TruncatedSeries::koebe(8).revert().map_err(|e| e.to_string())?;
    for (n, want) in [(1, 1.0), (2, -2.0), (3, 5.0), (4, -14.0)] {
        ensure((k.coeff(n) - want).norm() < DUALITY_TOL, format!("Koebe inverse b_{n} = {}", k.coeff(n)))?;
    }
    Ok(format!("{DUALITY_TRIALS} trials, max residual {worst:.2e}; Koebe inverse 1,-2,5,-14"))
}

fn hadamard_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    for _ in 0..HADAMARD_TRIALS {
        let f = random_series(&mut rng, 24);
        let n = f.order();
        let zf = f.differentiate().mul_z();
        // differentiate/mul_z lose only the top coefficient; compare below it.
        let conv_k = f.hadamard(&TruncatedSeries::koebe(n)).unwrap();
        let conv_g = f.hadamard(&TruncatedSeries::shifted_geometric(n)).unwrap();
        ensure(conv_g == f, "f * z/(1-z) differs from f")?;
        ensure(conv_k.coeffs()[..n] == zf.coeffs()[..n], "f * z/(1-z)^2 differs from zf'")?;
        ensure(conv_k.coeff(n) == f.coeff(n) * n as f64, "top coefficient of f * Koebe")?;
    }
    Ok(format!("{HADAMARD_TRIALS} random series, exact equality"))
}

fn piecewise_continuity() -> Outcome {
    let nudge = |t: f64, s: f64| t + s * 1e-15 * t.abs().max(1.0);
    for k in 0..20 {
        let a = alpha(k as f64 * 0.05);
        let (t1, t2) = fekete_breakpoints(a);
        for t in [t1, t2] {
            let l = fekete_szego_bound(FeketeParams { alpha: a, t: nudge(t, -1.0) }).bound;
            let r = fekete_szego_bound(FeketeParams { alpha: a, t: nudge(t, 1.0) }).bound;
            ensure((l - r).abs() < CONTINUITY_TOL, format!("Fekete–Szegő jump {} at α={}, t={t}", l - r, a.value()))?;
        }
    }
    let a3l = a3_bound(alpha(0.75)).bound;
    let a3r = a3_bound(alpha(0.75 + 1e-15)).bound;
    ensure((a3l - 0.125).abs() < CONTINUITY_TOL && (a3r - 0.125).abs() < CONTINUITY_TOL, "a3 at 3/4")?;
    let b3l = inverse_coeff_bounds(alpha(0.375)).b3;
    let b3r = inverse_coeff_bounds(alpha(0.375 + 1e-15)).b3;
    ensure((b3l - 0.3125).abs() < CONTINUITY_TOL && (b3r - 0.3125).abs() < CONTINUITY_TOL, "b3 at 3/8")?;
    Ok("Fekete–Szegő at t1,t2 on 20 α; a3(3/4) = 0.125; b3(3/8) = 0.3125".into())
}

/// The target-class radius shrinks as α grows for every family except the
/// starlike-order and M(β) targets, where the source class S*(q_α) shrinks
/// with α and the radius grows.
fn radius_certification() -> Outcome {
    let alphas = [0.0, 0.2, 0.4, 0.6, 0.8];
    let mut checked = 0;
    let mut skipped = Vec::new();
    for tag in RadiusTag::ALL {
        let mut roots = Vec::new();
        for a in alphas {
            let p = match RadiusProblem::with_params(tag, alpha(a), Some(0.95), Some(2.0)) {
                Ok(p) => p,
                Err(_) => {
                    skipped.push(format!("{tag}@{a}"));
                    continue;
                }
            };
            let r = solve(&p).map_err(|e| e.to_string())?;
            ensure(!r.whole_disk, format!("{tag} α={a}: unexpected whole-disk result"))?;
            ensure(r.residual.abs() <= RESIDUAL_TOL, format!("{tag} α={a}: residual {:.3e}", r.residual))?;
            ensure(residual(&p, r.root).abs() <= RESIDUAL_TOL, format!("{tag} α={a}: recomputed residual"))?;
            ensure(r.root > 0.0 && r.root < 1.0, format!("{tag} α={a}: root {}", r.root))?;
            if matches!(tag, RadiusTag::Sin | RadiusTag::Cardioid) {
                ensure(r.root <= SQRT_2 - 1.0 + BRANCH_RADIUS_SLACK, format!("{tag} α={a}: root {} > √2-1", r.root))?;
            }
            roots.push(r.root);
            checked += 1;
        }
        let increasing = matches!(tag, RadiusTag::StarlikeOrder | RadiusTag::MBeta);
        let monotone = roots.windows(2).all(|w| if increasing { w[1] > w[0] } else { w[1] < w[0] });
        ensure(monotone, format!("{tag}: roots not {} in α: {roots:?}", if increasing { "increasing" } else { "decreasing" }))?;
    }
    Ok(format!(
        "{checked} solves certified; decreasing except starlike-order/mbeta (increasing); out of range: {}",
        skipped.join(" ")
    ))
}

fn sl_sharpness() -> Outcome {
    let mut margins = Vec::new();
    for a in [0.0, 0.25, 0.5] {
        let p = RadiusProblem::new(RadiusTag::SL, alpha(a)).unwrap();
        let r = solve(&p).map_err(|e| e.to_string())?;
        let v = verify(&p, &r, &SampleGrid::default()).map_err(|e| e.to_string())?;
        let edge = v.boundary_margin.expect("SL reports the boundary margin");
        ensure(edge.abs() < SHARPNESS_TOL, format!("α={a}: margin at -r = {edge:.3e}"))?;
        ensure(v.inside.verdict == Verdict::HoldsOnGrid, format!("α={a}: inside verdict {:?}", v.inside))?;
        margins.push(format!("{edge:.1e}"));
    }
    Ok(format!("boundary margins {}", margins.join(", ")))
}

fn catalog() -> Vec<FunctionHandle> {
    let mut v = vec![
        FunctionHandle::Identity,
        FunctionHandle::Koebe,
        FunctionHandle::FGammaPoly(Complex64::new(0.05, 0.0)),
        FunctionHandle::FGammaPoly(Complex64::new(0.1, 0.0)),
        FunctionHandle::FGammaPoly(Complex64::new(0.15, -0.1)),
        FunctionHandle::FGammaPoly(Complex64::new(0.3, 0.0)),
        FunctionHandle::SLSharp,
    ];
    v.extend([0.0, 0.25, 0.5, 0.75].map(|a| FunctionHandle::FAlpha(alpha(a))));
    v.extend(PhiFamily::ALL.map(FunctionHandle::phi_extremal));
    v
}

fn inclusion_chain() -> Outcome {
    let grid = SampleGrid::new(SampleGrid::default().radii().to_vec(), 256).unwrap();
    let handles = catalog();
    let mut members = 0;
    let mut violations = Vec::new();
    for a in [0.0, 0.25, 0.5, 0.75] {
        let a = alpha(a);
        let curve = boundary_polygon(a, CURVE_SAMPLES).unwrap();
        for h in &handles {
            let sq = check_sq_inequality(h, a, &grid).map_err(|e| e.to_string())?;
            if sq.verdict != Verdict::HoldsOnGrid {
                continue;
            }
            members += 1;
            let mut implied = vec![
                ("convex", check_convex_order(h, a, &grid)),
                ("sqalpha", check_subordination_qalpha(h, a, &grid, &curve)),
                ("qgamma", check_re_f_over_z(h, gamma_alpha(a), &grid)),
            ];
            if a.value() == 0.0 {
                implied.push(("gb", check_gb(h, 1.0, &grid)));
                implied.push(("mocanu", check_rho_convex(h, -1.0, &grid)));
            }
            for (name, r) in implied {
                let r = r.map_err(|e| e.to_string())?;
                if r.verdict != Verdict::HoldsOnGrid {
                    violations.push(format!("{h} α={} {name} margin {:.3e}", a.value(), r.worst_margin));
                }
            }
        }
    }
    ensure(members > 0, "no catalog handle passed the defining inequality")?;
    ensure(violations.is_empty(), violations.join("; "))?;
    Ok(format!("{members} (handle, α) members, zero implied-class violations"))
}

fn log_coefficients() -> Outcome {
    let betas = log_coeffs(&f_alpha_series(alpha(0.0), 24), 16).map_err(|e| e.to_string())?;
    for (i, b) in betas.iter().enumerate() {
        let n = i + 1;
        let bound = log_coeff_bound(alpha(0.0), n).map_err(|e| e.to_string())?.bound;
        ensure((b.norm() - bound).abs() < LOG_COEFF_TOL, format!("β_{n} = {b}, bound {bound}"))?;
        ensure((bound - 1.0 / (2.0 * n as f64)).abs() < LOG_COEFF_TOL, format!("bound {bound} at n={n}"))?;
    }
    Ok("β_n = 1/(2n) = bound for n ≤ 16".into())
}

fn convexity_probe() -> Outcome {
    let zero = convexity_scan(alpha(0.0), CONVEXITY_SAMPLES);
    ensure(zero.minimum >= CONVEXITY_FLOOR, format!("α=0 minimum {}", zero.minimum))?;
    let mut table = Vec::new();
    let mut negatives = 0;
    for k in 0..20 {
        let a = k as f64 * 0.05;
        let s = convexity_scan(alpha(a), CONVEXITY_SAMPLES);
        let sign = if s.minimum < CONVEXITY_FLOOR { '-' } else { '+' };
        if sign == '-' && a > 0.0 {
            negatives += 1;
        }
        table.push(format!("{a:.2}{sign}"));
    }
    println!("      convexity sign table: {}", table.join(" "));
    ensure(negatives > 0, "no α in (0,1) with a negative minimum")?;
    Ok(format!("α=0 minimum {:.2e}; {negatives} of 19 interior α negative", zero.minimum))
}

fn quadratic_example() -> Outcome {
    let p = RadiusProblem::new(RadiusTag::Example1, alpha(0.0)).unwrap();
    let r = solve(&p).map_err(|e| e.to_string())?;
    ensure(r.root > 0.0 && r.root <= 0.25, format!("r0 = {}", r.root))?;
    let h = FunctionHandle::FGammaPoly(Complex64::new(r.root / 2.0, 0.0));
    let rep = check_sq_inequality(&h, alpha(0.0), &SampleGrid::default()).map_err(|e| e.to_string())?;
    ensure(rep.verdict == Verdict::HoldsOnGrid, format!("z + (r0/2) z² margin {}", rep.worst_margin))?;
    Ok(format!("r0 = {:.9}; z + (r0/2)z² worst margin {:.4}", r.root, rep.worst_margin))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("figure constants q_min", figure_constants),
        ("branch thresholds", branch_thresholds),
        ("extremal identity zf'/f = q", extremal_identity),
        ("series oracle agreement", series_oracle),
        ("coefficient duality", coefficient_duality),
        ("Hadamard identities", hadamard_identities),
        ("piecewise continuity", piecewise_continuity),
        ("radius solver certification", radius_certification),
        ("SL sharpness", sl_sharpness),
        ("inclusion chain", inclusion_chain),
        ("logarithmic coefficients", log_coefficients),
        ("convexity open-problem probe", convexity_probe),
        ("quadratic example radius", quadratic_example),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
