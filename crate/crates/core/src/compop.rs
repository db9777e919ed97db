//! Littlewood–Paley g-function and the boundedness criterion for composition
//! operators `C_φ f = f ∘ φ` from Bloch-type spaces into the Hardy space `H²`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functions::DiskFunction;
use crate::majorants::{check_weight_params, eta_from_distance};
use crate::norms::{Boundedness, NormValue, SupSearchConfig};
use crate::quadrature::{classify_panel_sums, schedule_panel_sums_to, Convergence, IntegralResult, QuadratureConfig};
use crate::report::{Report, Verdict};

/// Starting and largest ray counts for the criterion integral.
const START_RAYS: usize = 32;
const MAX_RAYS: usize = 1024;
/// The gap-series battery oscillates at frequency `2^GAP_TERMS` and needs many more rays.
const MAX_BATTERY_RAYS: usize = 65536;
/// The battery only decides finiteness, so its angular tolerance is loose.
const BATTERY_ANGULAR_TOL: f64 = 1e-6;
/// Last index of the truncated gap series.
pub const GAP_TERMS: usize = 16;
/// The truncated series dominates the weight up to `1 - 2^-BATTERY_DEPTH`.
pub const BATTERY_DEPTH: usize = 12;

/// An analytic self-map of the disk.
#[derive(Debug, Clone)]
pub struct SelfMap {
    pub phi: DiskFunction,
    /// Largest `|φ|` seen on the sample grid.
    pub range_margin: f64,
}

impl SelfMap {
    pub fn new(phi: DiskFunction, search: &SupSearchConfig) -> Result<Self> {
        if !phi.is_analytic() {
            return Err(Error::NotAnalytic);
        }
        let mut range_margin: f64 = 0.0;
        for z in search.grid() {
            let v = phi.eval(z)?.norm();
            if !(v < 1.0) {
                return Err(Error::ConstraintViolated(format!("|φ({z})| = {v} is not below 1")));
            }
            range_margin = range_margin.max(v);
        }
        Ok(SelfMap { phi, range_margin })
    }

    fn derivative(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.phi.wirtinger(z)?.dz)
    }
}

/// `g(f)(ζ) = (∫_0^1 |f'(rζ)|² (1-r) dr)^{1/2}`.
pub fn g_function(f: &DiskFunction, zeta: Complex64, cfg: &QuadratureConfig) -> Result<NormValue> {
    if !f.is_analytic() {
        return Err(Error::NotAnalytic);
    }
    if (zeta.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::out_of_domain(zeta, "ζ must have unit modulus"));
    }
    cfg.validate()?;
    let h = |r: f64| f.wirtinger(zeta * r).map(|w| w.dz.norm_sqr() * (1.0 - r));
    let sums = schedule_panel_sums_to(&h, cfg.schedule_depth, cfg)?;
    Ok(norm_from_panels(sums, cfg, true, zeta))
}

fn norm_from_panels(sums: Vec<f64>, cfg: &QuadratureConfig, root: bool, at: Complex64) -> NormValue {
    let res = classify_panel_sums(sums, cfg);
    let schedule = crate::quadrature::boundary_schedule(res.panel_sums.len());
    let mut acc = 0.0;
    let profile: Vec<(f64, f64)> = schedule
        .iter()
        .zip(&res.panel_sums)
        .map(|(&r, s)| {
            acc += s;
            (r, if root { acc.max(0.0).sqrt() } else { acc })
        })
        .collect();
    let (value, err) = if root {
        let v = res.value.max(0.0).sqrt();
        (v, if v > 0.0 { res.error_estimate / (2.0 * v) } else { res.error_estimate.sqrt() })
    } else {
        (res.value, res.error_estimate)
    };
    let verdict = match res.verdict {
        Convergence::Converged => Boundedness::Finite,
        Convergence::Divergent { growth_rate } => Boundedness::ApparentlyUnbounded { growth_exponent: growth_rate },
    };
    NormValue::new(value, vec![at], verdict, err, profile)
}

/// Panel sums of `(1/2π) ∫ h(r, θ) dθ` over the boundary schedule, doubling
/// the number of rays until the total changes by less than `tol·(1 + |total|)`.
fn ray_averaged_panels<H>(h: &H, depth: usize, cfg: &QuadratureConfig, tol: f64, max_rays: usize) -> Result<Vec<f64>>
where
    H: Fn(f64, Complex64) -> Result<f64> + Sync,
{
    let ray = |theta: f64| {
        let u = Complex64::from_polar(1.0, theta);
        schedule_panel_sums_to(&|r: f64| h(r, u), depth, cfg)
    };
    let add_rays = |n: usize, first: usize, stride: usize, acc: &mut Vec<f64>| -> Result<()> {
        let idx: Vec<usize> = (first..n).step_by(stride).collect();
        let rays: Vec<Vec<f64>> = idx.par_iter().map(|&j| ray(2.0 * PI * j as f64 / n as f64)).collect::<Result<_>>()?;
        for sums in rays {
            for (a, s) in acc.iter_mut().zip(sums) {
                *a += s;
            }
        }
        Ok(())
    };
    let mut n = START_RAYS;
    let mut acc = vec![0.0; depth];
    add_rays(n, 0, 1, &mut acc)?;
    let mut total: f64 = acc.iter().sum::<f64>() / n as f64;
    while n < max_rays {
        n *= 2;
        add_rays(n, 1, 2, &mut acc)?;
        let next = acc.iter().sum::<f64>() / n as f64;
        let change = (next - total).abs();
        total = next;
        if change <= tol * (1.0 + total.abs()) {
            break;
        }
    }
    Ok(acc.into_iter().map(|a| a / n as f64).collect())
}

/// `(1/2π) ∫∫ |φ'(re^{iθ})|² (1-r) / [d^{2α}(φ) (log e/d(φ))^{2β}] dr dθ` with `d(φ) = 1 - |φ|`.
pub fn criterion_integral(phi: &SelfMap, alpha: f64, beta: f64, cfg: &QuadratureConfig) -> Result<IntegralResult> {
    check_criterion_params(alpha, beta)?;
    cfg.validate()?;
    let h = |r: f64, u: Complex64| -> Result<f64> {
        let z = u * r;
        let dphi = phi.derivative(z)?;
        if dphi == Complex64::new(0.0, 0.0) {
            return Ok(0.0);
        }
        let d = 1.0 - phi.phi.eval(z)?.norm();
        Ok(dphi.norm_sqr() * (1.0 - r) / eta_from_distance(d, 2.0 * alpha, 2.0 * beta))
    };
    let sums = ray_averaged_panels(&h, cfg.schedule_depth, cfg, cfg.abs_tol, MAX_RAYS)?;
    Ok(classify_panel_sums(sums, cfg))
}

fn check_criterion_params(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) || !(beta <= alpha && beta.is_finite()) {
        return Err(Error::InvalidParameter(format!("need alpha > 0 and beta <= alpha, got alpha={alpha}, beta={beta}")));
    }
    check_weight_params(alpha, beta)
}

/// Parameters for which the gap-series battery is shipped.
pub const BATTERY_PARAMS: [(f64, f64); 3] = [(1.0, 0.0), (1.0, 1.0), (0.5, 0.0)];

/// Derivative of the gap series `Σ_{k<=GAP_TERMS} c_k z^{2^k}` whose modulus at
/// `|z| = 1 - 2^-k` is about `2^{kα} (1 + k log 2)^{-β}`.
fn gap_derivative(alpha: f64, beta: f64, w: Complex64) -> Complex64 {
    let mut power = Complex64::new(1.0, 0.0); // w^{2^k - 1}
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..=GAP_TERMS {
        let kf = k as f64;
        let coeff = 2f64.powf(kf * alpha) * (1.0 + kf * std::f64::consts::LN_2).powf(-beta);
        sum += coeff * power;
        power = power * power * w;
    }
    sum
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompositionVerdict {
    pub integral: IntegralResult,
    pub bounded: bool,
    /// Both battery functions have finite `‖g(C_φ f)‖₂`.
    pub battery_bounded: bool,
    pub battery_agrees: bool,
    /// Pass means bounded, Fail means unbounded.
    pub report: Report,
}

/// Boundedness of `C_φ` from the Bloch-type space with weight `d^α (log e/d)^β`
/// into `H²`, cross-checked against the composed g-function means of `z` and a
/// gap series whose derivative dominates the weight.
pub fn boundedness_verdict(phi: &SelfMap, alpha: f64, beta: f64, cfg: &QuadratureConfig) -> Result<CompositionVerdict> {
    check_criterion_params(alpha, beta)?;
    if !BATTERY_PARAMS.iter().any(|&(a, b)| a == alpha && b == beta) {
        return Err(Error::BatteryUnavailable { alpha, beta });
    }
    let integral = criterion_integral(phi, alpha, beta, cfg)?;
    let bounded = integral.converged();

    // one Gauss panel per schedule panel is plenty for a finiteness verdict
    let coarse = QuadratureConfig {
        radial_panels: BATTERY_DEPTH,
        ..cfg.clone()
    };
    let battery = |fprime: &(dyn Fn(Complex64) -> Complex64 + Sync)| -> Result<bool> {
        let h = |r: f64, u: Complex64| -> Result<f64> {
            let z = u * r;
            let w = phi.phi.eval(z)?;
            Ok((fprime(w) * phi.derivative(z)?).norm_sqr() * (1.0 - r))
        };
        let sums = ray_averaged_panels(&h, BATTERY_DEPTH, &coarse, BATTERY_ANGULAR_TOL, MAX_BATTERY_RAYS)?;
        Ok(classify_panel_sums(sums, cfg).converged())
    };
    let first = battery(&|_| Complex64::new(1.0, 0.0))?;
    let second = battery(&|w| gap_derivative(alpha, beta, w))?;
    let battery_bounded = first && second;
    let battery_agrees = battery_bounded == bounded;

    let label = if bounded { "Bounded" } else { "Unbounded" };
    let growth = match integral.verdict {
        Convergence::Converged => String::new(),
        Convergence::Divergent { growth_rate } => format!(", panel growth rate {growth_rate:.3}"),
    };
    let mut report = Report::new(
        "composition-boundedness",
        if bounded { Verdict::Pass } else { Verdict::Fail },
        integral.value,
        format!(
            "{label}: criterion integral {:.6e}{growth}; test battery {} ({})",
            integral.value,
            if battery_bounded { "finite" } else { "infinite" },
            if battery_agrees { "agrees" } else { "disagrees" }
        ),
    );
    report.error_estimate = integral.error_estimate;
    Ok(CompositionVerdict {
        integral,
        bounded,
        battery_bounded,
        battery_agrees,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn map(phi: DiskFunction) -> SelfMap {
        SelfMap::new(phi, &SupSearchConfig::default()).unwrap()
    }

    #[test]
    fn g_function_examples() {
        let q = QuadratureConfig::default();
        assert_eq!(g_function(&DiskFunction::constant(c(2.0, 0.0)), c(1.0, 0.0), &q).unwrap().value, 0.0);
        let z = g_function(&DiskFunction::identity(), c(0.0, 1.0), &q).unwrap();
        assert!((z.value - 0.5f64.sqrt()).abs() < 1e-9, "{}", z.value);
        let z2 = g_function(&DiskFunction::polynomial(&[0.0, 0.0, 1.0]).unwrap(), c(1.0, 0.0), &q).unwrap();
        assert!((z2.value - (1.0f64 / 3.0).sqrt()).abs() < 1e-9);
        assert!(g_function(&DiskFunction::identity(), c(0.5, 0.0), &q).is_err());
    }

    #[test]
    fn g_function_detects_divergence() {
        // f' = (1-z)^{-1} up to truncation: |f'(r)|²(1-r) ~ 1/(1-r)
        let f = DiskFunction::neg_log(100_000).unwrap();
        let g = g_function(&f, c(1.0, 0.0), &QuadratureConfig::default()).unwrap();
        assert!(!g.is_finite());
    }

    #[test]
    fn self_map_rejects_non_maps() {
        let s = SupSearchConfig::default();
        assert!(matches!(SelfMap::new(DiskFunction::polynomial(&[0.0, 2.0]).unwrap(), &s), Err(Error::ConstraintViolated(_))));
        let abs2 = crate::functions::builtin_sampler("abs2").unwrap();
        assert_eq!(SelfMap::new(abs2, &s).unwrap_err(), Error::NotAnalytic);
    }

    #[test]
    fn criterion_examples() {
        let q = QuadratureConfig::default();
        let cst = map(DiskFunction::constant(c(0.5, 0.0)));
        let r = criterion_integral(&cst, 1.0, 0.0, &q).unwrap();
        assert!(r.converged() && r.value == 0.0);
        let id = map(DiskFunction::identity());
        let half = criterion_integral(&id, 0.5, 0.0, &q).unwrap();
        assert!(half.converged());
        assert!((half.value - 1.0).abs() < 1e-6, "{}", half.value);
        assert!(!criterion_integral(&id, 1.0, 0.0, &q).unwrap().converged());
        let log = criterion_integral(&id, 1.0, 1.0, &q).unwrap();
        assert!(log.converged());
        // ∫ du/u² over [1, ∞) after u = log e/(1-r)
        assert!((log.value - 1.0).abs() < 2e-2, "{}", log.value);
        assert!((log.value - 1.0).abs() <= log.error_estimate, "{:?}", log);
        assert!(criterion_integral(&id, 1.0, 2.0, &q).is_err());
    }

    #[test]
    fn criterion_monotone_in_beta() {
        let q = QuadratureConfig::default();
        let id = map(DiskFunction::identity());
        let mut seen_converged = false;
        for beta in [0.0, 0.5, 1.0] {
            let conv = criterion_integral(&id, 1.0, beta, &q).unwrap().converged();
            assert!(!seen_converged || conv);
            seen_converged |= conv;
        }
    }

    #[test]
    fn contractions_always_converge() {
        let q = QuadratureConfig::default();
        for rho in [0.3, 0.9] {
            let phi = map(DiskFunction::polynomial(&[0.0, rho]).unwrap());
            for (a, b) in BATTERY_PARAMS {
                assert!(criterion_integral(&phi, a, b, &q).unwrap().converged());
            }
        }
    }

    #[test]
    fn verdicts_and_battery() {
        let q = QuadratureConfig::default();
        let id = map(DiskFunction::identity());
        let unb = boundedness_verdict(&id, 1.0, 0.0, &q).unwrap();
        assert!(!unb.bounded && unb.battery_agrees);
        assert_eq!(unb.report.verdict, Verdict::Fail);
        let b = boundedness_verdict(&id, 1.0, 1.0, &q).unwrap();
        assert!(b.bounded && b.battery_agrees, "{:?}", b.report);
        let small = map(DiskFunction::constant(c(0.3, 0.0)));
        assert!(boundedness_verdict(&small, 0.5, 0.0, &q).unwrap().bounded);
        assert_eq!(
            boundedness_verdict(&id, 0.7, 0.0, &q).unwrap_err(),
            Error::BatteryUnavailable { alpha: 0.7, beta: 0.0 }
        );
    }
}
