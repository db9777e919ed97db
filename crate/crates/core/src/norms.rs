//! Function-space functionals: Hardy, Bloch-type, little-Bloch, Dirichlet-type,
//! the weighted Lipschitz quotient and mean oscillation.
//!
//! Suprema over the disk are searched on the boundary-schedule grid with local
//! golden-section refinement; every result records where its sup was found.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functions::{boundary_distance, DiskFunction};
use crate::majorants::{eta, BlochParams, Majorant};
use crate::quadrature::{
    boundary_schedule, circle_mean_field, ls_slope, polar_rule, radial_improper_integral, Convergence, QuadratureConfig,
};
use crate::report::{Report, Verdict};

/// Reported values are capped here; anything larger is ApparentlyUnbounded.
pub const VALUE_CAP: f64 = 1e12;
/// Growth exponents above this count as genuine growth.
pub const GROWTH_THRESHOLD: f64 = 0.1;
/// A weighted quantity is treated as vanishing at the boundary once its last
/// annulus sup drops below this, or once it decays with exponent `<= -GROWTH_THRESHOLD`.
pub const VANISHING_TOL: f64 = 1e-3;
/// Number of trailing radii used for growth fits.
pub const FIT_WINDOW: usize = 6;
const GOLDEN_ITERATIONS: usize = 40;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupSearchConfig {
    /// Boundary-schedule radii `1 - 2^-k`, `k = 1..=radii`.
    pub radii: usize,
    pub angles: usize,
    pub refinement_rounds: usize,
    /// Random pairs drawn by the Lipschitz-quotient search.
    pub pair_samples: usize,
    pub seed: u64,
}

impl Default for SupSearchConfig {
    fn default() -> Self {
        SupSearchConfig {
            radii: 14,
            angles: 64,
            refinement_rounds: 3,
            pair_samples: 10_000,
            seed: 0x5eed,
        }
    }
}

impl SupSearchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.radii < 4 || self.radii > 50 {
            return Err(Error::InvalidParameter(format!("sup search needs 4..=50 radii, got {}", self.radii)));
        }
        if self.angles < 8 {
            return Err(Error::InvalidParameter(format!("sup search needs at least 8 angles, got {}", self.angles)));
        }
        Ok(())
    }

    pub fn schedule(&self) -> Vec<f64> {
        boundary_schedule(self.radii)
    }

    /// The origin followed by every schedule radius crossed with every angle.
    pub fn grid(&self) -> Vec<Complex64> {
        polar_grid(&self.schedule(), self.angles, true)
    }
}

/// Points `r e^{2πik/angles}` for every radius, optionally preceded by the origin.
pub fn polar_grid(radii: &[f64], angles: usize, with_origin: bool) -> Vec<Complex64> {
    let mut pts = Vec::with_capacity(radii.len() * angles + 1);
    if with_origin {
        pts.push(Complex64::new(0.0, 0.0));
    }
    for &r in radii {
        for k in 0..angles {
            pts.push(Complex64::from_polar(r, 2.0 * PI * k as f64 / angles as f64));
        }
    }
    pts
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Boundedness {
    Finite,
    ApparentlyUnbounded { growth_exponent: f64 },
}

impl Boundedness {
    pub fn is_finite(&self) -> bool {
        matches!(self, Boundedness::Finite)
    }

    pub fn label(&self) -> String {
        match self {
            Boundedness::Finite => "Finite".into(),
            Boundedness::ApparentlyUnbounded { growth_exponent } => format!("ApparentlyUnbounded({growth_exponent:.4})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NormValue {
    pub value: f64,
    /// Point(s) realizing the reported sup: one point, or the pair `(z, w)`.
    pub attained_at: Vec<Complex64>,
    pub verdict: Boundedness,
    pub error_estimate: f64,
    /// `(r, sup)` along the boundary schedule, as used for the growth fit.
    pub profile: Vec<(f64, f64)>,
}

impl NormValue {
    pub(crate) fn new(value: f64, attained_at: Vec<Complex64>, verdict: Boundedness, error_estimate: f64, profile: Vec<(f64, f64)>) -> Self {
        if !value.is_finite() || value > VALUE_CAP {
            let growth_exponent = match verdict {
                Boundedness::ApparentlyUnbounded { growth_exponent } => growth_exponent,
                Boundedness::Finite => f64::INFINITY,
            };
            return NormValue {
                value: VALUE_CAP,
                attained_at,
                verdict: Boundedness::ApparentlyUnbounded { growth_exponent },
                error_estimate,
                profile,
            };
        }
        NormValue {
            value,
            attained_at,
            verdict,
            error_estimate,
            profile,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.verdict.is_finite()
    }
}

/// Least-squares exponent of `value ~ (1/(1-r))^e` over the profile.
pub fn growth_exponent(profile: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = profile
        .iter()
        .filter(|(r, v)| *r > 0.0 && *r < 1.0 && *v > 0.0 && v.is_finite())
        .map(|(r, v)| (-(-r).ln_1p(), v.ln()))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
    Some(ls_slope(&xs, &ys))
}

/// Trailing window of the profile on radii the function resolves.
fn resolvable_tail(profile: &[(f64, f64)], limit: f64) -> Vec<(f64, f64)> {
    let usable: Vec<(f64, f64)> = profile.iter().copied().filter(|(r, _)| *r > 0.0 && *r <= limit).collect();
    let start = usable.len().saturating_sub(FIT_WINDOW);
    usable[start..].to_vec()
}

/// Finite unless the tail grows with exponent above [`GROWTH_THRESHOLD`] and is
/// still increasing at the last resolvable radius.
pub fn classify_growth(profile: &[(f64, f64)], limit: f64) -> Boundedness {
    let tail = resolvable_tail(profile, limit);
    let Some(e) = growth_exponent(&tail) else {
        return Boundedness::Finite;
    };
    let n = tail.len();
    let rising = tail[n - 1].1 > tail[n - 2].1 * (1.0 + 1e-9);
    if e > GROWTH_THRESHOLD && rising {
        Boundedness::ApparentlyUnbounded { growth_exponent: e }
    } else {
        Boundedness::Finite
    }
}

/// Whether a boundary profile tends to zero: nonincreasing over the last three
/// entries and either already below [`VANISHING_TOL`] or decaying algebraically.
pub fn vanishes_at_boundary(profile: &[(f64, f64)], limit: f64) -> bool {
    let tail = resolvable_tail(profile, limit);
    let n = tail.len();
    if n < 3 {
        return false;
    }
    let last3 = &tail[n - 3..];
    let nonincreasing = last3.windows(2).all(|w| w[1].1 <= w[0].1 * (1.0 + 1e-9) + 1e-15);
    if !nonincreasing {
        return false;
    }
    if tail[n - 1].1 < VANISHING_TOL {
        return true;
    }
    matches!(growth_exponent(&tail), Some(e) if e <= -GROWTH_THRESHOLD)
}

/// Maximizes `h` on `[a, b]` by golden-section search (exact for unimodal `h`).
fn golden_max<H: Fn(f64) -> Result<f64>>(h: &H, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    let inv = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv * (b - a);
    let mut d = a + inv * (b - a);
    let (mut fc, mut fd) = (h(c)?, h(d)?);
    for _ in 0..GOLDEN_ITERATIONS {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv * (b - a);
            fc = h(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv * (b - a);
            fd = h(d)?;
        }
    }
    Ok(if fc >= fd { (c, fc) } else { (d, fd) })
}

struct GridSup {
    value: f64,
    at: Complex64,
    grid_value: f64,
    per_radius: Vec<(f64, f64)>,
}

/// Sup of a pointwise field over the search grid, refined around the best node.
fn grid_sup<Q>(q: &Q, search: &SupSearchConfig) -> Result<GridSup>
where
    Q: Fn(Complex64) -> Result<f64> + Sync,
{
    search.validate()?;
    let radii = search.schedule();
    let pts = search.grid();
    let vals: Vec<f64> = pts.par_iter().map(|&z| q(z)).collect::<Result<_>>()?;
    let mut per_radius = vec![(0.0, vals[0])];
    for (k, &r) in radii.iter().enumerate() {
        let chunk = &vals[1 + k * search.angles..1 + (k + 1) * search.angles];
        per_radius.push((r, chunk.iter().copied().fold(f64::NEG_INFINITY, f64::max)));
    }
    let (mut best_i, mut best) = (0, vals[0]);
    for (i, &v) in vals.iter().enumerate() {
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let grid_value = best;
    let mut at = pts[best_i];
    let mut all_r = vec![0.0];
    all_r.extend(&radii);
    for _ in 0..search.refinement_rounds {
        let r0 = at.norm();
        let idx = all_r.iter().position(|&r| r >= r0 - 1e-15).unwrap_or(all_r.len() - 1);
        let lo = all_r[idx.saturating_sub(1)];
        let hi = if idx + 1 < all_r.len() { all_r[idx + 1] } else { all_r[idx] };
        let theta = at.arg();
        if hi > lo {
            let (r, v) = golden_max(&|r| q(Complex64::from_polar(r, theta)), lo, hi)?;
            if v > best {
                best = v;
                at = Complex64::from_polar(r, theta);
            }
        }
        let r = at.norm();
        if r > 0.0 {
            let dt = 2.0 * PI / search.angles as f64;
            let (t, v) = golden_max(&|t| q(Complex64::from_polar(r, t)), theta - dt, theta + dt)?;
            if v > best {
                best = v;
                at = Complex64::from_polar(r, t);
            }
        }
    }
    Ok(GridSup {
        value: best,
        at,
        grid_value,
        per_radius,
    })
}

/// Same as [`grid_sup`] but for a quantity depending only on the radius.
fn radial_sup<Q>(q: &Q, search: &SupSearchConfig) -> Result<GridSup>
where
    Q: Fn(f64) -> Result<f64> + Sync,
{
    search.validate()?;
    let mut radii = vec![0.0];
    radii.extend(search.schedule());
    let vals: Vec<f64> = radii.par_iter().map(|&r| q(r)).collect::<Result<_>>()?;
    let per_radius: Vec<(f64, f64)> = radii.iter().copied().zip(vals.iter().copied()).collect();
    let (mut best_i, mut best) = (0, vals[0]);
    for (i, &v) in vals.iter().enumerate() {
        if v > best {
            best = v;
            best_i = i;
        }
    }
    let grid_value = best;
    let mut at_r = radii[best_i];
    if search.refinement_rounds > 0 {
        let lo = radii[best_i.saturating_sub(1)];
        let hi = radii[(best_i + 1).min(radii.len() - 1)];
        if hi > lo {
            let (r, v) = golden_max(q, lo, hi)?;
            if v > best {
                best = v;
                at_r = r;
            }
        }
    }
    Ok(GridSup {
        value: best,
        at: Complex64::new(at_r, 0.0),
        grid_value,
        per_radius,
    })
}

/// Hardy norm `sup_r M_p(r, f)`; `p = ∞` takes the sup of `|f|`.
pub fn hardy_norm(f: &DiskFunction, p: f64, search: &SupSearchConfig, cfg: &QuadratureConfig) -> Result<NormValue> {
    if !(p > 0.0) {
        return Err(Error::InvalidParameter(format!("p must be positive, got {p}")));
    }
    let sup = if p.is_infinite() {
        grid_sup(&|z| f.eval(z).map(|v| v.norm()), search)?
    } else {
        let modulus = |z: Complex64| f.eval(z).map(|v| v.norm());
        radial_sup(&|r| circle_mean_field(&modulus, r, p, cfg), &SupSearchConfig { refinement_rounds: 0, ..search.clone() })?
    };
    let verdict = classify_growth(&sup.per_radius, f.resolvable_radius());
    Ok(NormValue::new(sup.value, vec![sup.at], verdict, (sup.value - sup.grid_value).abs(), sup.per_radius))
}

/// `ω(η(r))` for the given parameters.
pub fn bloch_weight(r: f64, params: &BlochParams, w: &Majorant) -> Result<f64> {
    Ok(w.value(eta(r, params.alpha, params.beta)?))
}

/// Generalized Bloch-type norm. For finite `p` the weighted quantity
/// `M_p(|z|, ‖D_f‖) ω(η(|z|))` depends on `|z|` only, so the sup is radial.
pub fn bloch_norm(f: &DiskFunction, params: &BlochParams, w: &Majorant, search: &SupSearchConfig, cfg: &QuadratureConfig) -> Result<NormValue> {
    let f0 = f.eval(Complex64::new(0.0, 0.0))?.norm();
    let sup = if params.is_sup() {
        let q = |z: Complex64| Ok(f.jacobian_norms(z)?.op_norm * bloch_weight(z.norm(), params, w)?);
        grid_sup(&q, search)?
    } else {
        let op = |z: Complex64| f.jacobian_norms(z).map(|n| n.op_norm);
        let q = |r: f64| Ok(circle_mean_field(&op, r, params.p, cfg)? * bloch_weight(r, params, w)?);
        radial_sup(&q, search)?
    };
    let verdict = classify_growth(&sup.per_radius, f.resolvable_radius());
    Ok(NormValue::new(f0 + sup.value, vec![sup.at], verdict, (sup.value - sup.grid_value).abs(), sup.per_radius))
}

/// Sups of `‖D_f‖ ω(η(|z|))` over the annuli `[r_k, r_{k+1}]` of the schedule,
/// keyed by the inner radius.
pub fn bloch_annulus_profile(f: &DiskFunction, params: &BlochParams, w: &Majorant, search: &SupSearchConfig) -> Result<Vec<(f64, f64)>> {
    search.validate()?;
    let radii = search.schedule();
    radii
        .windows(2)
        .map(|pair| {
            let (a, b) = (pair[0], pair[1]);
            let ring: Vec<f64> = (0..4).map(|j| a + (b - a) * j as f64 / 4.0).collect();
            let sups: Vec<f64> = polar_grid(&ring, search.angles, false)
                .par_iter()
                .map(|&z| Ok(f.jacobian_norms(z)?.op_norm * bloch_weight(z.norm(), params, w)?))
                .collect::<Result<_>>()?;
            Ok((a, sups.into_iter().fold(0.0, f64::max)))
        })
        .collect()
}

/// Membership in the little Bloch-type space: the weighted derivative must
/// vanish at the boundary. Pass means member, Fail means not.
pub fn little_bloch_limit(f: &DiskFunction, params: &BlochParams, w: &Majorant, search: &SupSearchConfig) -> Result<Report> {
    if !params.is_sup() {
        return Err(Error::InvalidParameter("the little Bloch-type condition is defined for p = ∞ only".into()));
    }
    let profile = bloch_annulus_profile(f, params, w, search)?;
    let limit = f.resolvable_radius();
    let member = vanishes_at_boundary(&profile, limit);
    let tail = resolvable_tail(&profile, limit);
    let last = tail.last().map(|p| p.1).unwrap_or(0.0);
    let shown: Vec<String> = tail.iter().map(|(r, v)| format!("{r:.6}:{v:.3e}")).collect();
    Ok(Report::new(
        "little-bloch",
        if member { Verdict::Pass } else { Verdict::Fail },
        last,
        format!(
            "annulus sups [{}], decay exponent {}",
            shown.join(", "),
            growth_exponent(&tail).map_or("n/a".into(), |e| format!("{e:.3}"))
        ),
    ))
}

/// Dirichlet-type norm `|f(0)| + ∫ d^γ ‖D_f‖^μ dσ`.
pub fn dirichlet_norm(f: &DiskFunction, gamma: f64, mu: f64, cfg: &QuadratureConfig) -> Result<NormValue> {
    if !(gamma > 0.0 && mu > 0.0 && gamma.is_finite() && mu.is_finite()) {
        return Err(Error::InvalidParameter(format!("gamma and mu must be positive, got {gamma}, {mu}")));
    }
    let origin = Complex64::new(0.0, 0.0);
    let f0 = f.eval(origin)?.norm();
    let n = cfg.angular_nodes;
    let radial = |rho: f64| -> Result<f64> {
        let mut acc = 0.0;
        for k in 0..n {
            let z = Complex64::from_polar(rho, 2.0 * PI * k as f64 / n as f64);
            acc += f.jacobian_norms(z)?.op_norm.powf(mu);
        }
        Ok(2.0 * rho * (1.0 - rho).powf(gamma) * acc / n as f64)
    };
    let res = radial_improper_integral(&radial, cfg)?;
    let profile: Vec<(f64, f64)> = boundary_schedule(res.panel_sums.len()).into_iter().zip(res.panel_sums.iter().copied()).collect();
    match res.verdict {
        Convergence::Converged => Ok(NormValue::new(f0 + res.value, vec![origin], Boundedness::Finite, res.error_estimate, profile)),
        Convergence::Divergent { growth_rate } => Ok(NormValue::new(
            f0 + res.value,
            vec![origin],
            Boundedness::ApparentlyUnbounded {
                growth_exponent: 1.0 + growth_rate.log2(),
            },
            res.error_estimate,
            profile,
        )),
    }
}

fn check_lipschitz_range(s: f64, alpha: f64) -> Result<()> {
    if !(0.0..1.0).contains(&s) || !(alpha >= s && alpha < s + 1.0) {
        return Err(Error::ConstraintViolated(format!(
            "need 0 <= s < 1 and s <= alpha < s + 1, got s={s}, alpha={alpha}"
        )));
    }
    Ok(())
}

/// `|f(z) - f(w)| ω(d^s(z) d^{α-s}(w)) / |z - w|`.
fn quotient(fz: Complex64, fw: Complex64, z: Complex64, w: Complex64, om: &Majorant, s: f64, alpha: f64) -> f64 {
    let arg = boundary_distance(z).powf(s) * boundary_distance(w).powf(alpha - s);
    (fz - fw).norm() * om.value(arg) / (z - w).norm()
}

/// Structured pair scan over the search grid.
pub struct PairScan {
    pub best: f64,
    pub best_pair: (Complex64, Complex64),
    /// Sup over partners `w` for each first argument `z` on schedule radius `k`, keyed by radius.
    pub first_argument_profile: Vec<(f64, f64)>,
    /// Cumulative sup over pairs with `max(|z|, |w|) <= r_k`.
    pub cumulative_profile: Vec<(f64, f64)>,
}

fn radius_bin(r: f64, radii: &[f64]) -> usize {
    // bin 0 is the origin; bin k covers (r_{k-1}, r_k]
    radii.iter().position(|&rk| r <= rk + 1e-15).map_or(radii.len(), |k| k + 1)
}

/// Evaluates the Lipschitz quotient on all grid pairs plus the diagonal limit
/// `‖D_f(z)‖ ω(d^α(z))` and short radial/tangential offsets at every grid point.
pub fn scan_pairs(f: &DiskFunction, om: &Majorant, s: f64, alpha: f64, search: &SupSearchConfig) -> Result<PairScan> {
    check_lipschitz_range(s, alpha)?;
    search.validate()?;
    let radii = search.schedule();
    let pts = search.grid();
    let vals: Vec<Complex64> = pts.par_iter().map(|&z| f.eval(z)).collect::<Result<_>>()?;
    let nb = radii.len() + 1;
    let bins: Vec<usize> = pts.iter().map(|z| radius_bin(z.norm(), &radii)).collect();

    // For each z: (best over w, its partner, per-bin max by max(|z|,|w|)).
    let rows: Vec<(f64, Complex64, Vec<f64>)> = (0..pts.len())
        .into_par_iter()
        .map(|i| {
            let z = pts[i];
            let mut per_bin = vec![0.0; nb];
            let mut best = 0.0;
            let mut partner = z;
            for j in 0..pts.len() {
                if j == i {
                    continue;
                }
                let q = quotient(vals[i], vals[j], z, pts[j], om, s, alpha);
                let b = bins[i].max(bins[j]);
                if q > per_bin[b] {
                    per_bin[b] = q;
                }
                if q > best {
                    best = q;
                    partner = pts[j];
                }
            }
            let d = boundary_distance(z);
            let diag = f.jacobian_norms(z)?.op_norm * om.value(d.powf(alpha));
            let eps = 1e-3 * d;
            let unit = if z.norm() > 0.0 { z / z.norm() } else { Complex64::new(1.0, 0.0) };
            for dir in [unit, -unit, unit * Complex64::i()] {
                let w = z + dir * eps;
                let q = quotient(vals[i], f.eval(w)?, z, w, om, s, alpha);
                if q > best {
                    best = q;
                    partner = w;
                }
                per_bin[bins[i]] = per_bin[bins[i]].max(q);
            }
            if diag > best {
                best = diag;
                partner = z;
            }
            per_bin[bins[i]] = per_bin[bins[i]].max(diag);
            Ok((best, partner, per_bin))
        })
        .collect::<Result<_>>()?;

    let mut best = 0.0;
    let mut best_pair = (pts[0], pts[0]);
    let mut per_bin = vec![0.0f64; nb];
    let mut first_arg = vec![0.0f64; nb];
    for (i, (b, w, row)) in rows.iter().enumerate() {
        if *b > best {
            best = *b;
            best_pair = (pts[i], *w);
        }
        for (acc, v) in per_bin.iter_mut().zip(row) {
            *acc = acc.max(*v);
        }
        first_arg[bins[i]] = first_arg[bins[i]].max(*b);
    }
    let mut keys = vec![0.0];
    keys.extend(&radii);
    let mut running = 0.0f64;
    let cumulative = keys
        .iter()
        .zip(&per_bin)
        .map(|(&r, &v)| {
            running = running.max(v);
            (r, running)
        })
        .collect();
    Ok(PairScan {
        best,
        best_pair,
        first_argument_profile: keys.iter().copied().zip(first_arg).collect(),
        cumulative_profile: cumulative,
    })
}

/// A point of the disk whose boundary distance is spread over the schedule range.
fn random_point(rng: &mut ChaCha8Rng, max_depth: f64) -> Complex64 {
    let d = 2f64.powf(-rng.gen::<f64>() * max_depth);
    Complex64::from_polar(1.0 - d, rng.gen::<f64>() * 2.0 * PI)
}

/// `sup_{z≠w} |f(z) - f(w)| ω(d^s(z) d^{α-s}(w)) / |z - w|`.
pub fn lipschitz_quotient_sup(f: &DiskFunction, om: &Majorant, s: f64, alpha: f64, search: &SupSearchConfig) -> Result<NormValue> {
    let scan = scan_pairs(f, om, s, alpha, search)?;
    let radii = search.schedule();
    let depth = search.radii as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(search.seed);
    let mut pairs = Vec::with_capacity(search.pair_samples);
    for i in 0..search.pair_samples {
        let (z, w) = match i % 10 {
            // near-diagonal: |z - w| < 0.01
            0..=3 => {
                let z = random_point(&mut rng, depth);
                let room = boundary_distance(z).min(0.01);
                let w = z + Complex64::from_polar(room * rng.gen_range(1e-3..0.999), rng.gen::<f64>() * 2.0 * PI);
                (z, w)
            }
            // mid-range
            4..=6 => (
                Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen::<f64>() * 2.0 * PI),
                Complex64::from_polar(rng.gen::<f64>().sqrt(), rng.gen::<f64>() * 2.0 * PI),
            ),
            // cross-boundary: one point close to the circle, one deep inside
            _ => {
                let near = random_point(&mut rng, depth);
                let deep = Complex64::from_polar(0.5 * rng.gen::<f64>(), rng.gen::<f64>() * 2.0 * PI);
                if rng.gen::<bool>() {
                    (near, deep)
                } else {
                    (deep, near)
                }
            }
        };
        if z != w && w.norm() < 1.0 {
            pairs.push((z, w));
        }
    }
    let qs: Vec<f64> = pairs
        .par_iter()
        .map(|&(z, w)| Ok(quotient(f.eval(z)?, f.eval(w)?, z, w, om, s, alpha)))
        .collect::<Result<_>>()?;

    let mut best = scan.best;
    let mut best_pair = scan.best_pair;
    let mut cumulative: Vec<(f64, f64)> = scan.cumulative_profile.clone();
    for (&(z, w), &q) in pairs.iter().zip(&qs) {
        let b = radius_bin(z.norm().max(w.norm()), &radii);
        for entry in cumulative.iter_mut().skip(b) {
            entry.1 = entry.1.max(q);
        }
        if q > best {
            best = q;
            best_pair = (z, w);
        }
    }
    let grid_best = best;

    // Seeded local search around the best pair.
    let (mut z, mut w) = best_pair;
    for round in 0..search.refinement_rounds {
        let scale = 0.1 * 0.5f64.powi(round as i32);
        for _ in 0..64 {
            let dz = scale * boundary_distance(z) * Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let dw = scale * boundary_distance(w) * Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let (z1, w1) = (z + dz, w + dw);
            if z1.norm() >= 1.0 || w1.norm() >= 1.0 || z1 == w1 {
                continue;
            }
            let q = quotient(f.eval(z1)?, f.eval(w1)?, z1, w1, om, s, alpha);
            if q > best {
                best = q;
                z = z1;
                w = w1;
            }
        }
    }
    let verdict = classify_growth(&cumulative, f.resolvable_radius());
    Ok(NormValue::new(best, vec![z, w], verdict, best - grid_best, cumulative))
}

/// L¹ mean oscillation of `f` over the disk `𝔻(z, r)` with Lebesgue area `πr²`.
pub fn mean_oscillation(f: &DiskFunction, z: Complex64, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(r > 0.0) || r > boundary_distance(z) {
        return Err(Error::OutOfDomain {
            re: z.re,
            im: z.im,
            reason: format!("disk of radius {r} is not contained in the unit disk"),
        });
    }
    let rule = polar_rule(z, r, cfg.angular_nodes, cfg.radial_panels, cfg.gauss_nodes, false);
    let vals: Vec<Complex64> = rule.par_iter().map(|&(p, _)| f.eval(p)).collect::<Result<_>>()?;
    // The discrete weights stand in for the area πr², so constants are reproduced exactly.
    let area: f64 = rule.iter().map(|(_, w)| w).sum();
    let avg = rule.iter().zip(&vals).map(|(&(_, w), v)| w * v).sum::<Complex64>() / area;
    Ok(rule.iter().zip(&vals).map(|(&(_, w), v)| w * (v - avg).norm()).sum::<f64>() / area)
}

/// Coarse quadrature used for the many small disks of the oscillation profile.
pub fn profile_quadrature() -> QuadratureConfig {
    QuadratureConfig {
        angular_nodes: 64,
        radial_panels: 8,
        gauss_nodes: 8,
        ..QuadratureConfig::default()
    }
}

/// `sup_{z, r<=d(z)} MO(f, z, r) ω(r^α) / r` for harmonic `f`, with `r = d(z) 2^-j`.
pub fn oscillation_profile(f: &DiskFunction, om: &Majorant, alpha: f64, search: &SupSearchConfig, cfg: &QuadratureConfig) -> Result<NormValue> {
    if !f.is_harmonic() {
        return Err(Error::NotHarmonic);
    }
    if !(1.0..2.0).contains(&alpha) {
        return Err(Error::ConstraintViolated(format!("need 1 <= alpha < 2, got {alpha}")));
    }
    search.validate()?;
    let radii = search.schedule();
    let pts = polar_grid(&radii, (search.angles / 4).max(8), true);
    let scales = [1.0, 0.5, 0.25, 0.125];
    let rows: Vec<(f64, f64)> = pts
        .par_iter()
        .map(|&z| {
            let d = boundary_distance(z);
            let mut best = (0.0, 0.0);
            for s in scales {
                let r = d * s;
                let v = mean_oscillation(f, z, r, cfg)? * om.value(r.powf(alpha)) / r;
                if v > best.0 {
                    best = (v, r);
                }
            }
            Ok(best)
        })
        .collect::<Result<_>>()?;
    let mut per_radius = vec![(0.0, rows[0].0)];
    let per = (pts.len() - 1) / radii.len();
    for (k, &r) in radii.iter().enumerate() {
        let v = rows[1 + k * per..1 + (k + 1) * per].iter().map(|x| x.0).fold(0.0, f64::max);
        per_radius.push((r, v));
    }
    let (i, &(value, r)) = rows
        .iter()
        .enumerate()
        .fold((0, &rows[0]), |acc, (i, row)| if row.0 > acc.1 .0 { (i, row) } else { acc });
    let verdict = classify_growth(&per_radius, f.resolvable_radius());
    Ok(NormValue::new(value, vec![pts[i], Complex64::new(r, 0.0)], verdict, 0.0, per_radius))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::builtin_sampler;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn q() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    fn sup_bloch(alpha: f64, beta: f64) -> BlochParams {
        BlochParams::sup(alpha, beta).unwrap()
    }

    #[test]
    fn hardy_examples() {
        let s = SupSearchConfig::default();
        let cst = DiskFunction::constant(c(3.0, 4.0));
        assert!((hardy_norm(&cst, 2.0, &s, &q()).unwrap().value - 5.0).abs() < 1e-12);
        let z = hardy_norm(&DiskFunction::identity(), 2.0, &s, &q()).unwrap();
        assert!(z.is_finite());
        assert!((z.value - 1.0).abs() < 1e-4);
        let g = hardy_norm(&DiskFunction::geometric(60).unwrap(), 2.0, &s, &q()).unwrap();
        match g.verdict {
            Boundedness::ApparentlyUnbounded { growth_exponent } => assert!((growth_exponent - 0.5).abs() < 0.1, "{growth_exponent}"),
            Boundedness::Finite => panic!("geometric series reported bounded"),
        }
    }

    #[test]
    fn bloch_examples() {
        let s = SupSearchConfig::default();
        let id = Majorant::Identity;
        let cst = DiskFunction::constant(c(0.0, -2.0));
        assert!((bloch_norm(&cst, &sup_bloch(1.0, 0.0), &id, &s, &q()).unwrap().value - 2.0).abs() < 1e-15);
        let z = bloch_norm(&DiskFunction::identity(), &sup_bloch(1.0, 0.0), &id, &s, &q()).unwrap();
        assert!((z.value - 1.0).abs() < 1e-12);
        assert_eq!(z.attained_at[0], c(0.0, 0.0));
        let log = DiskFunction::neg_log(200).unwrap();
        let v = bloch_norm(&log, &sup_bloch(1.0, 0.0), &id, &s, &q()).unwrap();
        assert!((v.value - 1.0).abs() < 0.01, "{}", v.value);
        assert!(v.is_finite());
    }

    #[test]
    fn bloch_with_finite_p_is_radial() {
        let s = SupSearchConfig::default();
        let params = BlochParams::new(2.0, 1.0, 0.0).unwrap();
        let v = bloch_norm(&DiskFunction::identity(), &params, &Majorant::Identity, &s, &q()).unwrap();
        assert!((v.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn little_bloch_examples() {
        let s = SupSearchConfig::default();
        let p = sup_bloch(1.0, 0.0);
        assert!(little_bloch_limit(&DiskFunction::identity(), &p, &Majorant::Identity, &s).unwrap().passed());
        assert!(little_bloch_limit(&DiskFunction::constant(c(1.0, 0.0)), &p, &Majorant::Identity, &s).unwrap().passed());
        let log = DiskFunction::neg_log(200).unwrap();
        let r = little_bloch_limit(&log, &p, &Majorant::Identity, &s).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let finite_p = BlochParams::new(2.0, 1.0, 0.0).unwrap();
        assert!(little_bloch_limit(&log, &finite_p, &Majorant::Identity, &s).is_err());
    }

    #[test]
    fn dirichlet_examples() {
        let cst = dirichlet_norm(&DiskFunction::constant(c(0.6, 0.8)), 1.0, 2.0, &q()).unwrap();
        assert!((cst.value - 1.0).abs() < 1e-12);
        let z = dirichlet_norm(&DiskFunction::identity(), 1.0, 2.0, &q()).unwrap();
        assert!((z.value - 1.0 / 3.0).abs() < 1e-9, "{}", z.value);
        let z2 = dirichlet_norm(&DiskFunction::polynomial(&[0.0, 0.0, 1.0]).unwrap(), 1.0, 2.0, &q()).unwrap();
        assert!((z2.value - 0.4).abs() < 1e-9, "{}", z2.value);
        assert!(dirichlet_norm(&DiskFunction::identity(), 0.0, 2.0, &q()).is_err());
    }

    #[test]
    fn lipschitz_examples() {
        let s = SupSearchConfig {
            pair_samples: 2000,
            ..SupSearchConfig::default()
        };
        let id = Majorant::Identity;
        let cst = lipschitz_quotient_sup(&DiskFunction::constant(c(1.0, 1.0)), &id, 0.0, 0.5, &s).unwrap();
        assert_eq!(cst.value, 0.0);
        let a = lipschitz_quotient_sup(&DiskFunction::identity(), &id, 0.0, 0.5, &s).unwrap();
        assert!((a.value - 1.0).abs() < 1e-12);
        let b = lipschitz_quotient_sup(&DiskFunction::identity(), &id, 0.5, 0.5, &s).unwrap();
        assert!((b.value - 1.0).abs() < 1e-12);
        assert!(matches!(
            lipschitz_quotient_sup(&DiskFunction::identity(), &id, 0.0, 1.0, &s),
            Err(Error::ConstraintViolated(_))
        ));
    }

    #[test]
    fn mean_oscillation_examples() {
        let cfg = q();
        let cst = DiskFunction::constant(c(2.0, 0.0));
        assert!(mean_oscillation(&cst, c(0.1, 0.2), 0.3, &cfg).unwrap() < 1e-14);
        for r in [0.2, 0.5, 0.9] {
            let v = mean_oscillation(&DiskFunction::identity(), c(0.0, 0.0), r, &cfg).unwrap();
            assert!((v - 2.0 * r / 3.0).abs() < 1e-12);
        }
        let re = DiskFunction::real_part_of_power(1);
        let v = mean_oscillation(&re, c(0.0, 0.0), 0.5, &cfg).unwrap();
        assert!((v - 4.0 * 0.5 / (3.0 * PI)).abs() < 1e-5, "{v}");
        assert!(matches!(mean_oscillation(&re, c(0.5, 0.0), 0.6, &cfg), Err(Error::OutOfDomain { .. })));
    }

    #[test]
    fn oscillation_profile_examples() {
        let s = SupSearchConfig::default();
        let cfg = profile_quadrature();
        let id = Majorant::Identity;
        let cst = oscillation_profile(&DiskFunction::constant(c(1.0, 0.0)), &id, 1.0, &s, &cfg).unwrap();
        assert!(cst.value < 1e-14);
        let z = oscillation_profile(&DiskFunction::identity(), &id, 1.0, &s, &cfg).unwrap();
        assert!((z.value - 2.0 / 3.0).abs() < 1e-9, "{}", z.value);
        let re = oscillation_profile(&DiskFunction::real_part_of_power(1), &id, 1.0, &s, &cfg).unwrap();
        assert!((re.value - 4.0 / (3.0 * PI)).abs() < 5e-3, "{}", re.value);
        let abs2 = builtin_sampler("abs2").unwrap();
        assert_eq!(oscillation_profile(&abs2, &id, 1.0, &s, &cfg).unwrap_err(), Error::NotHarmonic);
    }

    #[test]
    fn homogeneity_of_functionals() {
        let s = SupSearchConfig {
            pair_samples: 500,
            ..SupSearchConfig::default()
        };
        let cfg = q();
        let f = DiskFunction::polynomial(&[0.5, 1.0, -0.25]).unwrap();
        let p = sup_bloch(1.0, 0.0);
        for k in [c(2.0, 0.0), c(-3.0, 0.0), c(0.0, 1.0)] {
            let g = f.scaled(k);
            let m = k.norm();
            let pairs = [
                (bloch_norm(&f, &p, &Majorant::Identity, &s, &cfg).unwrap().value, bloch_norm(&g, &p, &Majorant::Identity, &s, &cfg).unwrap().value),
                (hardy_norm(&f, 3.0, &s, &cfg).unwrap().value, hardy_norm(&g, 3.0, &s, &cfg).unwrap().value),
                (dirichlet_norm(&f, 1.0, 1.0, &cfg).unwrap().value, dirichlet_norm(&g, 1.0, 1.0, &cfg).unwrap().value),
                (
                    mean_oscillation(&f, c(0.2, 0.1), 0.4, &cfg).unwrap(),
                    mean_oscillation(&g, c(0.2, 0.1), 0.4, &cfg).unwrap(),
                ),
            ];
            for (a, b) in pairs {
                assert!((b - m * a).abs() <= 1e-9 * (1.0 + b.abs()), "{a} {b} {m}");
            }
        }
    }

    #[test]
    fn growth_classifier() {
        let radii = boundary_schedule(14);
        let growing: Vec<(f64, f64)> = radii.iter().map(|&r| (r, (1.0 - r).powf(-0.7))).collect();
        match classify_growth(&growing, 1.0) {
            Boundedness::ApparentlyUnbounded { growth_exponent } => assert!((growth_exponent - 0.7).abs() < 1e-9),
            Boundedness::Finite => panic!(),
        }
        let flat: Vec<(f64, f64)> = radii.iter().map(|&r| (r, 2.0 - r)).collect();
        assert!(classify_growth(&flat, 1.0).is_finite());
        let decaying: Vec<(f64, f64)> = radii.iter().map(|&r| (r, 1.0 - r)).collect();
        assert!(vanishes_at_boundary(&decaying, 1.0));
        assert!(!vanishes_at_boundary(&flat, 1.0));
    }
}
