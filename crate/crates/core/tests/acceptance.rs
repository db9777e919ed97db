//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::time::{Duration, Instant};

use diskspace::compop::{boundedness_verdict, criterion_integral, SelfMap};
use diskspace::functions::builtin_sampler;
use diskspace::majorants::{scaling_law_check, validate_majorant};
use diskspace::norms::{bloch_norm, little_bloch_limit};
use diskspace::quadrature::{circle_mean, green_identity_residual};
use diskspace::theorems::{
    characterization, default_sharpness_grid, gradient_decay, hardy_mean_bound, heinz_check, log_spaced_radii, monotone_means,
    power_mean_inequality, sharpness_fit, Characterization, HeinzCoefficients, VerifyConfig,
};
use diskspace::{BlochParams, DiskFunction, Error, Majorant, QuadratureConfig, Result, SupSearchConfig, Verdict};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_611;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Outcome of one criterion: pass flag and a one-line summary.
type Outcome = Result<(bool, String)>;

fn parseval_agreement() -> Outcome {
    const TOL: f64 = 1e-10;
    let q = QuadratureConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let degree = rng.gen_range(0..=20);
        let coeffs: Vec<Complex64> = (0..=degree).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let f = DiskFunction::power_series(coeffs.clone())?;
        for r in [0.1f64, 0.5, 0.9, 0.99] {
            let exact = coeffs.iter().enumerate().map(|(n, a)| a.norm_sqr() * r.powi(2 * n as i32)).sum::<f64>().sqrt();
            let got = circle_mean(&f, r, 2.0, &q)?;
            worst = worst.max((got - exact).abs() / exact.max(f64::MIN_POSITIVE));
        }
    }
    Ok((worst <= TOL, format!("max relative error {worst:.2e} (tol {TOL:e})")))
}

fn green_identity() -> Outcome {
    const TOL: f64 = 1e-7;
    let q = QuadratureConfig::default();
    let fs = [
        builtin_sampler("abs2")?,
        builtin_sampler("abs4")?,
        DiskFunction::real_part_of_power(3),
        DiskFunction::yukawa(1.0)?,
    ];
    let mut worst: f64 = 0.0;
    for f in &fs {
        for r in [0.3, 0.6, 0.9] {
            worst = worst.max(green_identity_residual(f, r, &q)?);
        }
    }
    Ok((worst < TOL, format!("max residual {worst:.2e} (tol {TOL:e})")))
}

fn mean_monotonicity() -> Outcome {
    let cfg = VerifyConfig::default();
    let radii = log_spaced_radii(0.02, 0.99, 50);
    let fs = [
        DiskFunction::identity(),
        DiskFunction::polynomial(&[0.0, 0.0, 1.0])?,
        DiskFunction::polynomial(&[1.0, -2.0, 0.5, 0.25])?,
        DiskFunction::lacunary(8)?,
        DiskFunction::geometric(256)?,
        DiskFunction::neg_log(256)?,
        DiskFunction::yukawa(1.0)?,
    ];
    let mut runs = 0;
    let mut worst = f64::NEG_INFINITY;
    for f in &fs {
        for p in [2.0, 3.0, 4.0] {
            let r = monotone_means(f, p, &radii, &cfg)?;
            worst = worst.max(r.max_violation);
            if !r.passed() {
                return Ok((false, format!("{} at p={p}: max violation {:.2e}", f.label(), r.max_violation)));
            }
            runs += 1;
        }
    }
    Ok((true, format!("{runs} runs on 50 radii, max violation {worst:.2e} (slack 1e-10)")))
}

fn hardy_mean_bound_battery() -> Outcome {
    const ANCHOR_TOL: f64 = 1e-3;
    let cfg = VerifyConfig::default();
    let params = BlochParams::new(2.0, 1.0, 0.0)?;
    let id = Majorant::Identity;
    let battery = [
        (DiskFunction::identity(), HeinzCoefficients::zero()),
        (DiskFunction::yukawa(1.0)?, HeinzCoefficients::constants(0.0, 1.0, 0.0)),
        (DiskFunction::lacunary(10)?, HeinzCoefficients::zero()),
    ];
    let mut lines = Vec::new();
    let mut ok = true;
    let mut anchor = f64::NAN;
    for (f, coeffs) in &battery {
        for r in [0.5, 0.9, 0.99] {
            let rep = hardy_mean_bound(f, &params, &id, coeffs, r, &cfg)?;
            let s = rep.samples[0];
            ok &= rep.passed();
            if f.label() == DiskFunction::identity().label() && r == 0.5 {
                anchor = s.rhs;
            }
            if !rep.passed() {
                lines.push(format!("{} r={r}: {:.6} > {:.6}", f.label(), s.lhs, s.rhs));
            }
        }
    }
    let closed_form = (4.0 * 0.25 * 4.0 * (2f64.ln() - 0.5)).sqrt();
    let anchor_ok = (anchor - closed_form).abs() < ANCHOR_TOL;
    Ok((
        ok && anchor_ok,
        format!(
            "9 cases; anchor RHS {anchor:.6} vs {closed_form:.6} (tol {ANCHOR_TOL:e}){}",
            if lines.is_empty() { String::new() } else { format!("; failures: {}", lines.join(", ")) }
        ),
    ))
}

fn lacunary_sharpness_fit() -> Outcome {
    let fit = sharpness_fit(14, &default_sharpness_grid())?;
    let ok = fit.band <= 2.0 && (fit.exponent - 0.5).abs() <= 0.1;
    Ok((
        ok,
        format!(
            "ratio band {:.4} (<= 2), growth exponent {:.4} (0.5 ± 0.1; whole-grid slope {:.4})",
            fit.band, fit.exponent, fit.full_range_slope
        ),
    ))
}

fn composition_criterion() -> Outcome {
    const TOL: f64 = 1e-6;
    let q = QuadratureConfig::default();
    let search = SupSearchConfig::default();
    let id = SelfMap::new(DiskFunction::identity(), &search)?;
    let contraction = SelfMap::new(DiskFunction::polynomial(&[0.0, 0.9])?, &search)?;
    let divergent = !criterion_integral(&id, 1.0, 0.0, &q)?.converged();
    let log_case = criterion_integral(&id, 1.0, 1.0, &q)?.converged();
    let half = criterion_integral(&id, 0.5, 0.0, &q)?;
    let half_ok = half.converged() && (half.value - 1.0).abs() <= TOL;
    let mut contraction_ok = true;
    for (a, b) in [(1.0, 0.0), (1.0, 1.0), (0.5, 0.0)] {
        contraction_ok &= criterion_integral(&contraction, a, b, &q)?.converged();
    }
    Ok((
        divergent && log_case && half_ok && contraction_ok,
        format!(
            "identity: (1,0) divergent={divergent}, (1,1) converged={log_case}, (1/2,0) value {:.9} (tol {TOL:e}); 0.9z all converged={contraction_ok}",
            half.value
        ),
    ))
}

fn majorant_laws() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut points: Vec<f64> = (0..10_000).map(|_| rng.gen_range(1e-6..10.0)).collect();
    points.sort_by(f64::total_cmp);
    points.dedup();
    for w in Majorant::builtins() {
        if !validate_majorant(&w, &points)?.passed() {
            return Ok((false, format!("{} fails the majorant axioms", w.label())));
        }
        for _ in 0..10_000 {
            let (nu, t) = (rng.gen_range(1e-6..=1.0), rng.gen_range(1e-6..10.0));
            if !scaling_law_check(&w, nu, t)?.passed() {
                return Ok((false, format!("{} fails the scaling law at nu={nu}, t={t}", w.label())));
            }
        }
    }
    for _ in 0..10_000 {
        let (a, b, q): (f64, f64, f64) = (rng.gen_range(0.0..=100.0), rng.gen_range(0.0..=100.0), rng.gen_range(1e-9..=5.0));
        if !power_mean_inequality(a, b, q)?.passed() {
            return Ok((false, format!("power-mean inequality fails at ({a}, {b}, {q})")));
        }
    }
    Ok((true, format!("{} built-ins on 10^4 points and 10^4 scalings; 10^4 power-mean triples", Majorant::builtins().len())))
}

fn characterizations() -> Outcome {
    let cfg = VerifyConfig::default();
    let id = Majorant::Identity;
    let neglog = DiskFunction::neg_log(1024)?;
    // (function, derivative bounded near the circle)
    let analytic = [
        (DiskFunction::identity(), true),
        (DiskFunction::polynomial(&[0.0, 0.0, 1.0])?, true),
        (neglog.clone(), false),
        (DiskFunction::constant(c(2.0, -1.0)), true),
    ];
    let mut checked = 0;
    let mut rejected = 0;
    for (f, bounded_derivative) in &analytic {
        for (s, alpha) in [(0.0, 0.5), (0.5, 0.5), (0.0, 1.0), (0.5, 1.2)] {
            match characterization(Characterization::Lipschitz, f, &id, s, alpha, &cfg) {
                Ok(rep) => {
                    // |f'| ~ 1/d for -log(1-z), so Bloch-type membership needs alpha >= 1
                    let truth = *bounded_derivative || alpha >= 1.0;
                    let bloch = bloch_norm(f, &BlochParams::sup(alpha, 0.0)?, &id, &cfg.search, &cfg.quadrature)?;
                    if !rep.passed() || bloch.is_finite() != truth {
                        return Ok((false, format!("Lipschitz: {} at (s, alpha)=({s}, {alpha}): {:?}", f.label(), rep.notes)));
                    }
                    checked += 1;
                }
                // alpha must stay below s + 1
                Err(Error::ConstraintViolated(_)) if alpha >= s + 1.0 => rejected += 1,
                Err(e) => return Err(e),
            }
        }
    }
    let harmonic = [
        DiskFunction::constant(c(1.0, 0.0)),
        DiskFunction::identity(),
        DiskFunction::real_part_of_power(1),
        DiskFunction::harmonic_pair(vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.5, 0.0)])?,
    ];
    for f in &harmonic {
        for alpha in [1.0, 1.5] {
            let rep = characterization(Characterization::Oscillation, f, &id, 0.0, alpha, &cfg)?;
            if !rep.passed() {
                return Ok((false, format!("oscillation: {} at alpha={alpha}: {:?}", f.label(), rep.notes)));
            }
            checked += 1;
        }
        let rep = characterization(Characterization::LittleBloch, f, &id, 0.5, 1.0, &cfg)?;
        let member = little_bloch_limit(f, &BlochParams::sup(1.0, 0.0)?, &id, &cfg.search)?.passed();
        if !rep.passed() || !member {
            return Ok((false, format!("little Bloch: {}: {:?}", f.label(), rep.notes)));
        }
        checked += 1;
    }
    let rep = characterization(Characterization::LittleBloch, &neglog, &id, 0.5, 1.0, &cfg)?;
    if !rep.passed() {
        return Ok((false, format!("little Bloch on -log(1-z): {:?}", rep.notes)));
    }
    checked += 1;
    Ok((true, format!("{checked} equivalences agree with known membership; {rejected} parameter pairs outside the admissible range rejected")))
}

fn explicit_gradient_bound() -> Outcome {
    let cfg = VerifyConfig::default();
    let fs = [
        DiskFunction::identity(),
        DiskFunction::polynomial(&[0.0, 0.0, 1.0])?,
        DiskFunction::real_part_of_power(1),
    ];
    let mut n = 0;
    for f in &fs {
        for gamma in [0.5, 1.0] {
            let r = gradient_decay(f, gamma, &cfg)?;
            n = r.samples.len();
            if !r.passed() {
                return Ok((false, format!("{} at gamma={gamma}: violation {:.2e}", f.label(), r.max_violation)));
            }
        }
    }
    Ok((true, format!("6 cases on a {n}-point grid")))
}

fn negative_controls() -> Outcome {
    let cfg = VerifyConfig::default();
    let abs2 = builtin_sampler("abs2")?;
    let heinz = heinz_check(&abs2, &HeinzCoefficients::constants(0.0, 0.0, 3.0), &cfg.sample_grid())?;
    let phi = SelfMap::new(DiskFunction::identity(), &cfg.search)?;
    let comp = boundedness_verdict(&phi, 1.0, 0.0, &cfg.quadrature)?;
    let little = little_bloch_limit(&DiskFunction::neg_log(1024)?, &BlochParams::sup(1.0, 0.0)?, &Majorant::Identity, &cfg.search)?;
    let ok = heinz.verdict == Verdict::Fail && !comp.bounded && little.verdict == Verdict::Fail;
    Ok((
        ok,
        format!(
            "heinz {}, composition {} (battery agrees: {}), little Bloch {}",
            heinz.verdict.label(),
            if comp.bounded { "Bounded" } else { "Unbounded" },
            comp.battery_agrees,
            little.verdict.label()
        ),
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("parseval agreement", parseval_agreement, 5),
        ("green identity", green_identity, 10),
        ("integral mean monotonicity", mean_monotonicity, 30),
        ("hardy mean bound", hardy_mean_bound_battery, 60),
        ("lacunary sharpness", lacunary_sharpness_fit, 10),
        ("composition criterion", composition_criterion, 30),
        ("majorant laws", majorant_laws, 5),
        ("characterizations", characterizations, 120),
        ("explicit gradient bound", explicit_gradient_bound, 30),
        ("negative controls", negative_controls, 30),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed < Duration::from_secs(*budget);
        let (ok, detail) = match outcome {
            Ok((ok, detail)) => (ok && in_time, detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "AC{:<2} {:<28} {}  {detail}; {:.2} s (budget {budget} s)",
            i + 1,
            name,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
