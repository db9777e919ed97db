//! Integration primitives: circle means, area integrals against the
//! normalized measure `dσ = dA/π`, improper radial integrals with an explicit
//! divergence test, and the Green-identity residual.
//!
//! Node evaluations run on the rayon pool but are always reduced in index
//! order, so results are bit-reproducible for a given configuration.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::functions::DiskFunction;

/// Largest angular node count reached by trapezoid doubling.
const MAX_ANGULAR_NODES: usize = 1 << 20;

/// Panel sums decaying like `k^(-s)` in the panel index are treated as
/// summable only when `s` exceeds this exponent.
pub const SUMMABLE_EXPONENT: f64 = 1.25;

/// Number of geometric refinement levels toward a logarithmic singularity at the origin.
const ORIGIN_GRADING_LEVELS: usize = 24;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureConfig {
    /// Trapezoid points on a circle; doubled until `abs_tol` for circle means.
    pub angular_nodes: usize,
    /// Total Gauss–Legendre panels along a radius.
    pub radial_panels: usize,
    /// Gauss–Legendre nodes per panel.
    pub gauss_nodes: usize,
    /// Depth `K` of the boundary schedule `r_k = 1 - 2^-k`, `k = 1..=K`.
    pub schedule_depth: usize,
    pub abs_tol: f64,
    /// Panel sums that each stay above `previous / factor` count as non-decaying.
    pub divergence_growth_factor: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            angular_nodes: 512,
            radial_panels: 64,
            gauss_nodes: 16,
            schedule_depth: 14,
            abs_tol: 1e-10,
            divergence_growth_factor: 1.5,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.angular_nodes < 16 || self.angular_nodes % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "angular node count must be even and at least 16, got {}",
                self.angular_nodes
            )));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter(format!("abs_tol must be positive, got {}", self.abs_tol)));
        }
        if self.schedule_depth < 4 || self.schedule_depth > 50 {
            return Err(Error::InvalidParameter(format!(
                "schedule depth must lie in 4..=50, got {}",
                self.schedule_depth
            )));
        }
        if self.radial_panels == 0 || self.gauss_nodes < 2 || self.gauss_nodes > 64 {
            return Err(Error::InvalidParameter("radial rule needs >= 1 panel and 2..=64 Gauss nodes".into()));
        }
        if !(self.divergence_growth_factor > 1.0) {
            return Err(Error::InvalidParameter("divergence growth factor must exceed 1".into()));
        }
        Ok(())
    }

    pub fn schedule(&self) -> Vec<f64> {
        boundary_schedule(self.schedule_depth)
    }
}

/// Radii `1 - 2^-k` for `k = 1..=depth`.
pub fn boundary_schedule(depth: usize) -> Vec<f64> {
    (1..=depth).map(|k| 1.0 - 0.5f64.powi(k as i32)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Convergence {
    Converged,
    Divergent { growth_rate: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub verdict: Convergence,
    /// Contributions of the boundary-schedule panels, innermost first.
    pub panel_sums: Vec<f64>,
}

impl IntegralResult {
    pub fn converged(&self) -> bool {
        matches!(self.verdict, Convergence::Converged)
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, 0.0);
            for j in 0..n {
                let p2 = p1;
                p1 = p0;
                p0 = ((2 * j + 1) as f64 * z * p1 - j as f64 * p2) / (j + 1) as f64;
            }
            dp = n as f64 * (z * p0 - p1) / (z * z - 1.0);
            let dz = p0 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Nodes and weights of a composite Gauss rule over the given panel breakpoints.
fn composite_rule(breaks: &[f64], gauss: usize) -> Vec<(f64, f64)> {
    let (gx, gw) = gauss_legendre(gauss);
    let mut out = Vec::with_capacity((breaks.len().saturating_sub(1)) * gauss);
    for pair in breaks.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (x, w) in gx.iter().zip(&gw) {
            out.push((mid + half * x, half * w));
        }
    }
    out
}

/// Breakpoints for `[0, r]`: uniform panels with the first one graded
/// geometrically toward the origin.
fn origin_graded_breaks(r: f64, panels: usize) -> Vec<f64> {
    let h = r / panels as f64;
    let mut breaks = vec![0.0];
    for j in (1..=ORIGIN_GRADING_LEVELS).rev() {
        breaks.push(h * 0.5f64.powi(j as i32));
    }
    for i in 1..=panels {
        breaks.push(h * i as f64);
    }
    *breaks.last_mut().unwrap() = r;
    breaks
}

fn evaluate_all<F>(points: &[f64], f: &F) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    points.par_iter().map(|&x| f(x)).collect()
}

/// Mean of `g` over `n` equispaced angles on the circle of radius `r` about `center`.
fn trapezoid_sum<G>(g: &G, center: Complex64, r: f64, n: usize, offset: usize, stride: usize) -> Result<f64>
where
    G: Fn(Complex64) -> Result<f64> + Sync,
{
    let idx: Vec<usize> = (offset..n).step_by(stride).collect();
    let step = 2.0 * PI / n as f64;
    let vals: Vec<f64> = if idx.len() >= 256 {
        idx.par_iter()
            .map(|&k| g(center + Complex64::from_polar(r, step * k as f64)))
            .collect::<Result<_>>()?
    } else {
        idx.iter()
            .map(|&k| g(center + Complex64::from_polar(r, step * k as f64)))
            .collect::<Result<_>>()?
    };
    Ok(vals.iter().sum())
}

/// Angular average at a fixed node count (no refinement).
pub(crate) fn fixed_circle_average<G>(g: &G, center: Complex64, r: f64, n: usize) -> Result<f64>
where
    G: Fn(Complex64) -> Result<f64> + Sync,
{
    if r == 0.0 {
        return g(center);
    }
    Ok(trapezoid_sum(g, center, r, n, 0, 1)? / n as f64)
}

/// `(1/2π) ∫ g(c + r e^{iθ}) dθ` by the periodic trapezoid rule, doubling the
/// node count (reusing previous nodes) until successive values agree to `abs_tol`.
pub fn circle_average<G>(g: &G, center: Complex64, r: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    G: Fn(Complex64) -> Result<f64> + Sync,
{
    if r == 0.0 {
        return g(center);
    }
    let mut n = cfg.angular_nodes;
    let mut sum = trapezoid_sum(g, center, r, n, 0, 1)?;
    let mut mean = sum / n as f64;
    while n < MAX_ANGULAR_NODES {
        n *= 2;
        sum += trapezoid_sum(g, center, r, n, 1, 2)?;
        let next = sum / n as f64;
        let change = (next - mean).abs();
        mean = next;
        if change <= cfg.abs_tol * (1.0 + mean.abs()) {
            return Ok(mean);
        }
    }
    Err(Error::NonConvergence(format!(
        "circle average at r={r} still changing after {MAX_ANGULAR_NODES} nodes"
    )))
}

/// `M_p^p(r, g) = (1/2π) ∫ |g(re^{iθ})|^p dθ` for a nonnegative scalar field.
pub fn circle_power_mean_field<G>(g: &G, r: f64, p: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    G: Fn(Complex64) -> Result<f64> + Sync,
{
    check_radius(r)?;
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidParameter(format!("circle mean exponent must be finite and positive, got {p}")));
    }
    let pow = |z: Complex64| g(z).map(|v| v.abs().powf(p));
    circle_average(&pow, Complex64::new(0.0, 0.0), r, cfg)
}

/// `M_p(r, g)` for a scalar field.
pub fn circle_mean_field<G>(g: &G, r: f64, p: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    G: Fn(Complex64) -> Result<f64> + Sync,
{
    Ok(circle_power_mean_field(g, r, p, cfg)?.powf(1.0 / p))
}

/// Integral mean `M_p(r, f)`.
pub fn circle_mean(f: &DiskFunction, r: f64, p: f64, cfg: &QuadratureConfig) -> Result<f64> {
    circle_mean_field(&|z| f.eval(z).map(|v| v.norm()), r, p, cfg)
}

/// `M_p^p(r, f)`.
pub fn circle_power_mean(f: &DiskFunction, r: f64, p: f64, cfg: &QuadratureConfig) -> Result<f64> {
    circle_power_mean_field(&|z| f.eval(z).map(|v| v.norm()), r, p, cfg)
}

fn check_radius(r: f64) -> Result<()> {
    if !(r >= 0.0 && r < 1.0) {
        return Err(Error::OutOfDomain {
            re: r,
            im: 0.0,
            reason: "radius must lie in [0, 1)".into(),
        });
    }
    Ok(())
}

/// Nodes and weights of the tensor rule on the disk of radius `radius` about
/// `center`; weights sum to the Lebesgue area `π radius²`. With `graded` the
/// innermost radial panel is refined geometrically toward the centre, for
/// integrands with a logarithmic singularity there.
pub(crate) fn polar_rule(center: Complex64, radius: f64, angular: usize, panels: usize, gauss: usize, graded: bool) -> Vec<(Complex64, f64)> {
    let breaks = if graded {
        origin_graded_breaks(radius, panels)
    } else {
        (0..=panels).map(|i| radius * i as f64 / panels as f64).collect()
    };
    let step = 2.0 * PI / angular as f64;
    let mut out = Vec::new();
    for (rho, w) in composite_rule(&breaks, gauss) {
        for k in 0..angular {
            out.push((center + Complex64::from_polar(rho, step * k as f64), w * rho * step));
        }
    }
    out
}

/// `∫∫ g(c + ρe^{iθ}) ρ dρ dθ` over the disk of radius `radius` about `center`
/// (Lebesgue area measure), graded toward the centre, fixed angular node count.
pub(crate) fn polar_area_integral<G>(g: &G, center: Complex64, radius: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    G: Fn(Complex64) -> Result<f64> + Sync,
{
    let rule = composite_rule(&origin_graded_breaks(radius, cfg.radial_panels), cfg.gauss_nodes);
    let radii: Vec<f64> = rule.iter().map(|&(x, _)| x).collect();
    let ring = |rho: f64| fixed_circle_average(g, center, rho, cfg.angular_nodes).map(|m| 2.0 * PI * rho * m);
    let vals = evaluate_all(&radii, &ring)?;
    Ok(rule.iter().zip(&vals).map(|(&(_, w), v)| w * v).sum())
}

/// `∫_{𝔻_r} g dσ` with `dσ = dA/π`. For `r = 1` the integral is improper and
/// is evaluated over the boundary schedule; a divergent result is reported as
/// `NonConvergence` (use [`disk_integral_improper`] to inspect the verdict).
pub fn disk_integral<G>(g: &G, r: f64, cfg: &QuadratureConfig) -> Result<f64>
where
    G: Fn(Complex64) -> Result<f64> + Sync,
{
    if !(r > 0.0 && r <= 1.0) {
        return Err(Error::InvalidParameter(format!("disk integral radius must lie in (0, 1], got {r}")));
    }
    if r == 1.0 {
        let res = disk_integral_improper(g, cfg)?;
        return match res.verdict {
            Convergence::Converged => Ok(res.value),
            Convergence::Divergent { growth_rate } => Err(Error::NonConvergence(format!(
                "area integral over the disk diverges (panel growth rate {growth_rate:.3})"
            ))),
        };
    }
    Ok(polar_area_integral(g, Complex64::new(0.0, 0.0), r, cfg)? / PI)
}

/// `∫_𝔻 g dσ` as an improper radial integral of `2ρ · mean_θ g(ρe^{iθ})`.
pub fn disk_integral_improper<G>(g: &G, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    G: Fn(Complex64) -> Result<f64> + Sync,
{
    let radial = |rho: f64| fixed_circle_average(g, Complex64::new(0.0, 0.0), rho, cfg.angular_nodes).map(|m| 2.0 * rho * m);
    radial_improper_integral(&radial, cfg)
}

/// Residual of Green's identity
/// `mean_θ g(re^{iθ}) = g(0) + ½ ∫_{𝔻_r} Δg log(r/|z|) dσ`,
/// applied to the real and imaginary parts separately.
pub fn green_identity_residual(g: &DiskFunction, r: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::InvalidParameter(format!("Green identity radius must lie in (0, 1), got {r}")));
    }
    let origin = Complex64::new(0.0, 0.0);
    let lhs_re = circle_average(&|z| g.eval(z).map(|v| v.re), origin, r, cfg)?;
    let lhs_im = circle_average(&|z| g.eval(z).map(|v| v.im), origin, r, cfg)?;
    let g0 = g.eval(origin)?;
    let weight = |z: Complex64| (r / z.norm()).ln();
    let rhs_re = g0.re + 0.5 * disk_integral(&|z| g.laplacian(z).map(|l| l.re * weight(z)), r, cfg)?;
    let rhs_im = g0.im + 0.5 * disk_integral(&|z| g.laplacian(z).map(|l| l.im * weight(z)), r, cfg)?;
    Ok(Complex64::new(lhs_re - rhs_re, lhs_im - rhs_im).norm())
}

/// Per-panel integrals of `h` over `[0, r_1], [r_1, r_2], …, [r_{K-1}, r_K]`.
pub fn schedule_panel_sums<H>(h: &H, cfg: &QuadratureConfig) -> Result<Vec<f64>>
where
    H: Fn(f64) -> Result<f64> + Sync,
{
    schedule_panel_sums_to(h, cfg.schedule_depth, cfg)
}

pub(crate) fn schedule_panel_sums_to<H>(h: &H, depth: usize, cfg: &QuadratureConfig) -> Result<Vec<f64>>
where
    H: Fn(f64) -> Result<f64> + Sync,
{
    let mut edges = vec![0.0];
    edges.extend(boundary_schedule(depth));
    let sub = (cfg.radial_panels / depth.max(1)).max(1);
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut owner = Vec::new();
    for (k, pair) in edges.windows(2).enumerate() {
        let breaks: Vec<f64> = (0..=sub).map(|i| pair[0] + (pair[1] - pair[0]) * i as f64 / sub as f64).collect();
        for (x, w) in composite_rule(&breaks, cfg.gauss_nodes) {
            points.push(x);
            weights.push(w);
            owner.push(k);
        }
    }
    let vals = evaluate_all(&points, h)?;
    let mut sums = vec![0.0; depth];
    for ((v, w), k) in vals.iter().zip(&weights).zip(&owner) {
        sums[*k] += w * v;
    }
    Ok(sums)
}

/// `∫_0^1 h(t) dt` for `h` continuous on `[0, 1)`, possibly unbounded at 1.
pub fn radial_improper_integral<H>(h: &H, cfg: &QuadratureConfig) -> Result<IntegralResult>
where
    H: Fn(f64) -> Result<f64> + Sync,
{
    cfg.validate()?;
    let sums = schedule_panel_sums(h, cfg)?;
    Ok(classify_panel_sums(sums, cfg))
}

/// Least-squares slope of `ys` against `xs`.
pub(crate) fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
    }
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

/// Wynn's epsilon acceleration of the partial sums of `terms`; returns the
/// highest even-column estimate and its change from the previous one.
fn wynn_epsilon(terms: &[f64]) -> Option<(f64, f64)> {
    let start = terms.len().saturating_sub(10);
    let mut partial: f64 = terms[..start].iter().sum();
    let mut prev: Vec<f64> = Vec::new();
    let mut cur: Vec<f64> = terms[start..]
        .iter()
        .map(|t| {
            partial += t;
            partial
        })
        .collect();
    let mut estimates = vec![*cur.last()?];
    let mut column = 0;
    while cur.len() > 1 {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let diff = cur[i + 1] - cur[i];
            if diff == 0.0 {
                // Even columns hold estimates: equal neighbours mean exact convergence.
                return if column % 2 == 0 { Some((cur[i + 1], 0.0)) } else { None };
            }
            let base = if prev.is_empty() { 0.0 } else { prev[i + 1] };
            next.push(base + 1.0 / diff);
        }
        column += 1;
        prev = cur;
        cur = next;
        if column % 2 == 0 {
            estimates.push(*cur.last()?);
        }
    }
    let n = estimates.len();
    if n < 2 || !estimates[n - 1].is_finite() {
        return None;
    }
    Some((estimates[n - 1], (estimates[n - 1] - estimates[n - 2]).abs()))
}

/// Decides convergence of `Σ S_k` from the panel sums of the boundary schedule.
///
/// The tail is non-decaying when each of the last three sums is at least
/// `previous / divergence_growth_factor`. A non-decaying tail is still accepted
/// when the sums fall off like `k^-s` with `s > SUMMABLE_EXPONENT` in the panel
/// index; everything else is divergent.
pub fn classify_panel_sums(sums: Vec<f64>, cfg: &QuadratureConfig) -> IntegralResult {
    let k = sums.len();
    let partial: f64 = sums.iter().sum();
    let mags: Vec<f64> = sums.iter().map(|s| s.abs()).collect();
    let last = mags[k - 1];
    if last <= cfg.abs_tol * (1.0 + partial.abs()) {
        return IntegralResult {
            value: partial,
            error_estimate: last,
            verdict: Convergence::Converged,
            panel_sums: sums,
        };
    }
    let ratio = |j: usize| if mags[j - 1] > 0.0 { mags[j] / mags[j - 1] } else { f64::INFINITY };
    let (q_last, q_prev) = (ratio(k - 1), ratio(k - 2));
    let non_decaying = (k - 3..k).all(|j| ratio(j) >= 1.0 / cfg.divergence_growth_factor);
    let sign = sums[k - 1].signum();
    let geometric_tail = |q: f64| sign * last * q / (1.0 - q);

    if !non_decaying && q_last < 1.0 && q_prev < 1.0 {
        let tail = geometric_tail(q_last);
        let (value, error_estimate) = match wynn_epsilon(&sums) {
            // Only trust the accelerated value when it agrees with the plain geometric tail.
            Some((v, e)) if (v - partial - tail).abs() <= tail.abs() => (v, e),
            _ => (partial + tail, (tail - geometric_tail(q_prev)).abs()),
        };
        return IntegralResult {
            value,
            error_estimate,
            verdict: Convergence::Converged,
            panel_sums: sums,
        };
    }

    let idx: Vec<f64> = (k - 4..k).map(|j| ((j + 1) as f64).ln()).collect();
    let logs: Vec<f64> = (k - 4..k).map(|j| mags[j].max(f64::MIN_POSITIVE).ln()).collect();
    let s = -ls_slope(&idx, &logs);
    if s > SUMMABLE_EXPONENT && q_last < 1.0 {
        let kk = k as f64;
        let algebraic = sign * last * kk.powf(s) * (kk + 0.5).powf(1.0 - s) / (s - 1.0);
        let geometric = geometric_tail(q_last);
        let steady = (q_last - q_prev).abs() <= 0.01 * q_last;
        let tail = if steady { geometric } else { algebraic };
        let error_estimate = if steady {
            (geometric - geometric_tail(q_prev)).abs()
        } else {
            (algebraic - geometric).abs()
        };
        return IntegralResult {
            value: partial + tail,
            error_estimate,
            verdict: Convergence::Converged,
            panel_sums: sums,
        };
    }
    IntegralResult {
        value: partial,
        error_estimate: f64::INFINITY,
        verdict: Convergence::Divergent { growth_rate: q_last },
        panel_sums: sums,
    }
}
