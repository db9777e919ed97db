//! Concrete complex-valued functions on the unit disk and their Wirtinger calculus.
//!
//! Every closed-form family carries exact first and second Wirtinger derivatives.
//! Functions supplied only as samplers fall back to fourth-order central
//! differences whose step shrinks with the distance to the unit circle.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest differencing step used by the numeric fallback.
pub const MIN_STEP: f64 = 1e-6;
/// Differencing step as a fraction of the boundary distance.
pub const RELATIVE_STEP: f64 = 1e-3;

/// Largest admissible estimated root-test ratio for the tail of a power series.
const MAX_TAIL_RATIO: f64 = 1.1;

/// Boundary distance `d(z) = 1 - |z|`.
#[inline]
pub fn boundary_distance(z: Complex64) -> f64 {
    1.0 - z.norm()
}

pub(crate) fn check_in_disk(z: Complex64) -> Result<()> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::out_of_domain(z, "non-finite point"));
    }
    if z.norm() >= 1.0 {
        return Err(Error::out_of_domain(z, "|z| >= 1"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Capabilities {
    pub analytic: bool,
    pub harmonic: bool,
    pub exact_derivatives: bool,
}

/// A pair of first-order Wirtinger derivatives `(∂f/∂z, ∂f/∂z̄)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wirtinger {
    pub dz: Complex64,
    pub dzbar: Complex64,
}

impl Wirtinger {
    fn scale(self, c: Complex64) -> Self {
        Wirtinger {
            dz: self.dz * c,
            dzbar: self.dzbar * c,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecondWirtinger {
    pub zz: Complex64,
    pub zzbar: Complex64,
    pub zbarzbar: Complex64,
}

/// Operator norm and co-norm of the real Jacobian of `f` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobianNorms {
    /// `|f_z| + |f_z̄|`
    pub op_norm: f64,
    /// `||f_z| - |f_z̄||`
    pub co_norm: f64,
}

type SamplerFn = dyn Fn(Complex64) -> Complex64 + Send + Sync;

/// A function known only through point evaluations.
#[derive(Clone)]
pub struct Sampler {
    name: String,
    f: Arc<SamplerFn>,
}

impl Sampler {
    pub fn new(name: impl Into<String>, f: impl Fn(Complex64) -> Complex64 + Send + Sync + 'static) -> Self {
        Sampler {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl fmt::Debug for Sampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sampler").field("name", &self.name).finish()
    }
}

#[derive(Debug, Clone)]
pub enum Family {
    /// `Σ a_n z^n`
    PowerSeries(Vec<Complex64>),
    /// `Σ_{n=0}^{N-1} z^(2^n)`
    Lacunary(usize),
    /// `h + conj(g)` with both parts power series.
    HarmonicPair { h: Vec<Complex64>, g: Vec<Complex64> },
    /// `exp(√λ · Re z)`, a solution of `Δf = λ f`.
    YukawaExp(f64),
    Numeric(Sampler),
}

#[derive(Debug, Clone)]
pub struct DiskFunction {
    family: Family,
    scale: Complex64,
    caps: Capabilities,
    truncation_degree: Option<usize>,
}

impl DiskFunction {
    pub fn power_series(coeffs: Vec<Complex64>) -> Result<Self> {
        check_series(&coeffs)?;
        Ok(DiskFunction {
            family: Family::PowerSeries(coeffs),
            scale: Complex64::new(1.0, 0.0),
            caps: Capabilities {
                analytic: true,
                harmonic: true,
                exact_derivatives: true,
            },
            truncation_degree: None,
        })
    }

    pub fn polynomial(coeffs: &[f64]) -> Result<Self> {
        Self::power_series(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::power_series(vec![c]).expect("finite constant")
    }

    pub fn identity() -> Self {
        Self::polynomial(&[0.0, 1.0]).expect("valid coefficients")
    }

    pub fn lacunary(terms: usize) -> Result<Self> {
        if terms < 1 {
            return Err(Error::MalformedSpec("lacunary term count must be at least 1".into()));
        }
        if terms > 40 {
            return Err(Error::MalformedSpec(format!(
                "lacunary term count {terms} exceeds the supported maximum of 40"
            )));
        }
        Ok(DiskFunction {
            family: Family::Lacunary(terms),
            scale: Complex64::new(1.0, 0.0),
            caps: Capabilities {
                analytic: true,
                harmonic: true,
                exact_derivatives: true,
            },
            truncation_degree: Some(1usize << (terms - 1)),
        })
    }

    pub fn harmonic_pair(h: Vec<Complex64>, g: Vec<Complex64>) -> Result<Self> {
        check_series(&h)?;
        check_series(&g)?;
        let analytic = g.iter().skip(1).all(|c| *c == Complex64::new(0.0, 0.0));
        Ok(DiskFunction {
            family: Family::HarmonicPair { h, g },
            scale: Complex64::new(1.0, 0.0),
            caps: Capabilities {
                analytic,
                harmonic: true,
                exact_derivatives: true,
            },
            truncation_degree: None,
        })
    }

    pub fn yukawa(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::MalformedSpec(format!("yukawa lambda must be finite and >= 0, got {lambda}")));
        }
        let trivial = lambda == 0.0;
        Ok(DiskFunction {
            family: Family::YukawaExp(lambda),
            scale: Complex64::new(1.0, 0.0),
            caps: Capabilities {
                analytic: trivial,
                harmonic: trivial,
                exact_derivatives: true,
            },
            truncation_degree: None,
        })
    }

    /// Wraps a sampler; derivatives come from finite differences.
    pub fn numeric(sampler: Sampler) -> Self {
        Self::numeric_with(sampler, false, false)
    }

    /// Wraps a sampler the caller asserts to be analytic and/or harmonic.
    pub fn numeric_with(sampler: Sampler, analytic: bool, harmonic: bool) -> Self {
        DiskFunction {
            family: Family::Numeric(sampler),
            scale: Complex64::new(1.0, 0.0),
            caps: Capabilities {
                analytic,
                harmonic: harmonic || analytic,
                exact_derivatives: false,
            },
            truncation_degree: None,
        }
    }

    /// `Σ_{n<terms} z^n`, the truncated expansion of `1/(1-z)`.
    pub fn geometric(terms: usize) -> Result<Self> {
        if terms < 1 {
            return Err(Error::MalformedSpec("geometric term count must be at least 1".into()));
        }
        Self::power_series(vec![Complex64::new(1.0, 0.0); terms])?.truncated()
    }

    /// `Σ_{1<=n<terms} z^n / n`, the truncated expansion of `-log(1-z)`.
    pub fn neg_log(terms: usize) -> Result<Self> {
        if terms < 2 {
            return Err(Error::MalformedSpec("neg-log term count must be at least 2".into()));
        }
        let coeffs = (0..terms)
            .map(|n| if n == 0 { Complex64::new(0.0, 0.0) } else { Complex64::new(1.0 / n as f64, 0.0) })
            .collect();
        Self::power_series(coeffs)?.truncated()
    }

    /// `Re(z^k)` as the harmonic pair `h = g = z^k / 2`.
    pub fn real_part_of_power(k: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); k + 1];
        c[k] = Complex64::new(0.5, 0.0);
        Self::harmonic_pair(c.clone(), c).expect("finite coefficients")
    }

    /// Marks a power series as the truncation of an infinite expansion, which
    /// limits the radii on which growth diagnostics are trusted. Coefficients
    /// growing geometrically are rejected: the expansion would diverge on the disk.
    pub fn truncated(mut self) -> Result<Self> {
        let len = match &self.family {
            Family::PowerSeries(c) => {
                check_truncation(c)?;
                c.len()
            }
            Family::HarmonicPair { h, g } => {
                check_truncation(h)?;
                check_truncation(g)?;
                h.len().max(g.len())
            }
            _ => return Ok(self),
        };
        self.truncation_degree = Some(len.saturating_sub(1).max(1));
        Ok(self)
    }

    /// Returns `c · f`.
    pub fn scaled(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        out.scale *= c;
        out
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn capabilities(&self) -> Capabilities {
        self.caps
    }

    pub fn is_analytic(&self) -> bool {
        self.caps.analytic
    }

    pub fn is_harmonic(&self) -> bool {
        self.caps.harmonic
    }

    /// Degree of the underlying truncated expansion, if the function stands in
    /// for an infinite series.
    pub fn truncation_degree(&self) -> Option<usize> {
        self.truncation_degree
    }

    /// Largest radius on which the truncated expansion still tracks its limit:
    /// `1 - 1/degree`. Closed-form and exact polynomial families return 1.
    pub fn resolvable_radius(&self) -> f64 {
        match self.truncation_degree {
            Some(d) => 1.0 - 1.0 / d as f64,
            None => 1.0,
        }
    }

    pub fn label(&self) -> String {
        let base = match &self.family {
            Family::PowerSeries(c) => format!("power(deg={})", c.len().saturating_sub(1)),
            Family::Lacunary(n) => format!("lacunary({n})"),
            Family::HarmonicPair { h, g } => format!("harmonic(deg_h={},deg_g={})", h.len().saturating_sub(1), g.len().saturating_sub(1)),
            Family::YukawaExp(l) => format!("yukawa({l})"),
            Family::Numeric(s) => format!("numeric({})", s.name()),
        };
        if self.scale == Complex64::new(1.0, 0.0) {
            base
        } else {
            format!("({}{:+}i)*{base}", self.scale.re, self.scale.im)
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_in_disk(z)?;
        Ok(self.scale * self.eval_unscaled(z))
    }

    fn eval_unscaled(&self, z: Complex64) -> Complex64 {
        match &self.family {
            Family::PowerSeries(c) => horner(c, z).0,
            Family::Lacunary(n) => lacunary_terms(*n, z).0,
            Family::HarmonicPair { h, g } => horner(h, z).0 + horner(g, z).0.conj(),
            Family::YukawaExp(l) => Complex64::new((l.sqrt() * z.re).exp(), 0.0),
            Family::Numeric(s) => (s.f)(z),
        }
    }

    pub fn wirtinger(&self, z: Complex64) -> Result<Wirtinger> {
        check_in_disk(z)?;
        let w = match &self.family {
            Family::PowerSeries(c) => Wirtinger {
                dz: horner(c, z).1,
                dzbar: Complex64::new(0.0, 0.0),
            },
            Family::Lacunary(n) => Wirtinger {
                dz: lacunary_terms(*n, z).1,
                dzbar: Complex64::new(0.0, 0.0),
            },
            Family::HarmonicPair { h, g } => Wirtinger {
                dz: horner(h, z).1,
                dzbar: horner(g, z).1.conj(),
            },
            Family::YukawaExp(l) => {
                let k = l.sqrt();
                let v = Complex64::new(0.5 * k * (k * z.re).exp(), 0.0);
                Wirtinger { dz: v, dzbar: v }
            }
            Family::Numeric(_) => return self.numeric_wirtinger(z),
        };
        Ok(w.scale(self.scale))
    }

    /// First Wirtinger derivatives by central differences regardless of family.
    pub fn numeric_wirtinger(&self, z: Complex64) -> Result<Wirtinger> {
        check_in_disk(z)?;
        let h = step_for(z, 1)?;
        let f = |p: Complex64| self.eval_unscaled(p);
        let (fx, fy) = gradient(&f, z, h);
        Ok(from_partials(fx, fy).scale(self.scale))
    }

    pub fn second_wirtinger(&self, z: Complex64) -> Result<SecondWirtinger> {
        check_in_disk(z)?;
        let zero = Complex64::new(0.0, 0.0);
        let s = match &self.family {
            Family::PowerSeries(c) => SecondWirtinger {
                zz: horner(c, z).2,
                zzbar: zero,
                zbarzbar: zero,
            },
            Family::Lacunary(n) => SecondWirtinger {
                zz: lacunary_terms(*n, z).2,
                zzbar: zero,
                zbarzbar: zero,
            },
            Family::HarmonicPair { h, g } => SecondWirtinger {
                zz: horner(h, z).2,
                zzbar: zero,
                zbarzbar: horner(g, z).2.conj(),
            },
            Family::YukawaExp(l) => {
                let v = Complex64::new(0.25 * l * (l.sqrt() * z.re).exp(), 0.0);
                SecondWirtinger {
                    zz: v,
                    zzbar: v,
                    zbarzbar: v,
                }
            }
            Family::Numeric(_) => {
                let h = step_for(z, 2)?;
                let f = |p: Complex64| self.eval_unscaled(p);
                let fx = |p: Complex64| partial_x(&f, p, h);
                let fy = |p: Complex64| partial_y(&f, p, h);
                let fxx = partial_x(&fx, z, h);
                let fyy = partial_y(&fy, z, h);
                let fxy = partial_x(&fy, z, h);
                let i = Complex64::i();
                SecondWirtinger {
                    zz: 0.25 * (fxx - 2.0 * i * fxy - fyy),
                    zzbar: 0.25 * (fxx + fyy),
                    zbarzbar: 0.25 * (fxx + 2.0 * i * fxy - fyy),
                }
            }
        };
        Ok(SecondWirtinger {
            zz: s.zz * self.scale,
            zzbar: s.zzbar * self.scale,
            zbarzbar: s.zbarzbar * self.scale,
        })
    }

    /// `Δf = 4 ∂²f/∂z∂z̄`.
    pub fn laplacian(&self, z: Complex64) -> Result<Complex64> {
        Ok(4.0 * self.second_wirtinger(z)?.zzbar)
    }

    /// Wirtinger derivatives of `Δf`, needed by the subharmonicity identity.
    pub fn laplacian_wirtinger(&self, z: Complex64) -> Result<Wirtinger> {
        check_in_disk(z)?;
        let zero = Complex64::new(0.0, 0.0);
        let w = match &self.family {
            Family::PowerSeries(_) | Family::Lacunary(_) | Family::HarmonicPair { .. } => Wirtinger { dz: zero, dzbar: zero },
            Family::YukawaExp(l) => {
                let k = l.sqrt();
                let v = Complex64::new(0.5 * l * k * (k * z.re).exp(), 0.0);
                Wirtinger { dz: v, dzbar: v }
            }
            Family::Numeric(_) => {
                let h = step_for(z, 3)?;
                let f = |p: Complex64| self.eval_unscaled(p);
                let lap = |p: Complex64| {
                    let fx = |q: Complex64| partial_x(&f, q, h);
                    let fy = |q: Complex64| partial_y(&f, q, h);
                    partial_x(&fx, p, h) + partial_y(&fy, p, h)
                };
                let (lx, ly) = gradient(&lap, z, h);
                from_partials(lx, ly)
            }
        };
        Ok(w.scale(self.scale))
    }

    pub fn jacobian_norms(&self, z: Complex64) -> Result<JacobianNorms> {
        let w = self.wirtinger(z)?;
        let (a, b) = (w.dz.norm(), w.dzbar.norm());
        Ok(JacobianNorms {
            op_norm: a + b,
            co_norm: (a - b).abs(),
        })
    }
}

/// Step for a stencil nested `levels` deep; each level reaches `2h` from its centre.
/// Deeper nesting divides by a higher power of `h`, so the step grows tenfold per
/// level to keep roundoff in check.
pub(crate) fn step_for(z: Complex64, levels: u32) -> Result<f64> {
    let d = boundary_distance(z);
    let h = MIN_STEP.max(RELATIVE_STEP * d * 10f64.powi(levels as i32 - 1));
    if z.norm() + 2.0 * levels as f64 * h >= 1.0 {
        return Err(Error::StepUnderflow { distance: d });
    }
    Ok(h)
}

#[inline]
fn from_partials(fx: Complex64, fy: Complex64) -> Wirtinger {
    let i = Complex64::i();
    Wirtinger {
        dz: 0.5 * (fx - i * fy),
        dzbar: 0.5 * (fx + i * fy),
    }
}

/// Fourth-order central difference along `dir`.
#[inline]
fn directional<F: Fn(Complex64) -> Complex64 + ?Sized>(f: &F, z: Complex64, dir: Complex64) -> Complex64 {
    (f(z - 2.0 * dir) - 8.0 * f(z - dir) + 8.0 * f(z + dir) - f(z + 2.0 * dir)) / (12.0 * dir.norm())
}

pub(crate) fn partial_x<F: Fn(Complex64) -> Complex64 + ?Sized>(f: &F, z: Complex64, h: f64) -> Complex64 {
    directional(f, z, Complex64::new(h, 0.0))
}

pub(crate) fn partial_y<F: Fn(Complex64) -> Complex64 + ?Sized>(f: &F, z: Complex64, h: f64) -> Complex64 {
    directional(f, z, Complex64::new(0.0, h))
}

fn gradient<F: Fn(Complex64) -> Complex64 + ?Sized>(f: &F, z: Complex64, h: f64) -> (Complex64, Complex64) {
    (partial_x(f, z, h), partial_y(f, z, h))
}

/// Laplacian of a real field by the five-point-per-axis fourth-order stencil.
pub(crate) fn real_laplacian<F: Fn(Complex64) -> f64>(g: &F, z: Complex64, h: f64) -> f64 {
    let axis = |dir: Complex64| {
        (-g(z + 2.0 * dir) + 16.0 * g(z + dir) - 30.0 * g(z) + 16.0 * g(z - dir) - g(z - 2.0 * dir)) / (12.0 * h * h)
    };
    axis(Complex64::new(h, 0.0)) + axis(Complex64::new(0.0, h))
}

/// Value, first and second derivative of a power series by Horner's scheme.
fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let (mut p, mut dp, mut ddp) = (zero, zero, zero);
    for &a in c.iter().rev() {
        ddp = ddp * z + 2.0 * dp;
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp, ddp)
}

/// Value, first and second derivative of `Σ_{n<terms} z^(2^n)` by repeated squaring.
fn lacunary_terms(terms: usize, z: Complex64) -> (Complex64, Complex64, Complex64) {
    let one = Complex64::new(1.0, 0.0);
    let mut value = Complex64::new(0.0, 0.0);
    let mut d1 = Complex64::new(0.0, 0.0);
    let mut d2 = Complex64::new(0.0, 0.0);
    // power = z^(2^n), below = z^(2^n - 1), below2 = z^(2^n - 2)
    let mut power = z;
    let mut below = one;
    let mut below2 = one;
    for n in 0..terms {
        let m = (1u64 << n) as f64;
        value += power;
        d1 += m * below;
        if n >= 1 {
            d2 += m * (m - 1.0) * below2;
            below2 *= power;
        }
        below *= power;
        power = power * power;
    }
    (value, d1, d2)
}

fn check_series(c: &[Complex64]) -> Result<()> {
    if c.is_empty() {
        return Err(Error::MalformedSpec("power series needs at least one coefficient".into()));
    }
    if let Some(n) = c.iter().position(|a| !(a.re.is_finite() && a.im.is_finite())) {
        return Err(Error::MalformedSpec(format!("coefficient {n} is not finite")));
    }
    Ok(())
}

/// A truncation must come from a series converging on the disk.
fn check_truncation(c: &[Complex64]) -> Result<()> {
    if let Some(rho) = tail_growth_ratio(c) {
        if rho > MAX_TAIL_RATIO {
            return Err(Error::MalformedSpec(format!(
                "coefficients grow geometrically with ratio {rho:.3} > 1; the series would not converge on the disk"
            )));
        }
    }
    Ok(())
}

/// Geometric growth ratio of the coefficient tail, comparing the largest
/// modulus in the last quarter against the first quarter. `None` when the
/// series is too short to say anything.
pub(crate) fn tail_growth_ratio(c: &[Complex64]) -> Option<f64> {
    let n = c.len();
    if n < 8 {
        return None;
    }
    let q = n / 4;
    let head = c[..q].iter().map(|a| a.norm()).fold(0.0, f64::max);
    let tail = c[n - q..].iter().map(|a| a.norm()).fold(0.0, f64::max);
    if tail == 0.0 {
        return Some(0.0);
    }
    if head == 0.0 {
        // Leading block vanishes: compare against the first nonzero coefficient.
        let (k, a) = c.iter().enumerate().find(|(_, a)| a.norm() > 0.0)?;
        let gap = (n - q - k) as f64;
        if gap <= 0.0 {
            return None;
        }
        return Some((tail / a.norm()).powf(1.0 / gap));
    }
    Some((tail / head).powf(1.0 / (n - q) as f64))
}

/// JSON description of a function, as accepted by the command-line tool.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase", deny_unknown_fields)]
pub enum FamilySpec {
    Power {
        coeffs: Vec<Coefficient>,
        #[serde(default)]
        truncated: bool,
    },
    Lacunary {
        terms: usize,
    },
    Harmonic {
        h: Vec<Coefficient>,
        g: Vec<Coefficient>,
    },
    Yukawa {
        lambda: f64,
    },
    Constant {
        value: Coefficient,
    },
    Identity,
    Geometric {
        terms: usize,
    },
    Neglog {
        terms: usize,
    },
    /// `Re(z^k)`
    Realpower {
        k: usize,
    },
    Numeric {
        name: String,
    },
}

/// A coefficient written either as a real number or as `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficient {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Coefficient> for Complex64 {
    fn from(c: Coefficient) -> Self {
        match c {
            Coefficient::Real(r) => Complex64::new(r, 0.0),
            Coefficient::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

/// Names accepted by `{"family": "numeric", "name": ...}`.
pub const NUMERIC_SAMPLERS: &[&str] = &["abs2", "abs4", "zbar", "re_z3"];

pub fn builtin_sampler(name: &str) -> Result<DiskFunction> {
    let f = match name {
        "abs2" => DiskFunction::numeric(Sampler::new("abs2", |z: Complex64| Complex64::new(z.norm_sqr(), 0.0))),
        "abs4" => DiskFunction::numeric(Sampler::new("abs4", |z: Complex64| Complex64::new(z.norm_sqr().powi(2), 0.0))),
        "zbar" => DiskFunction::numeric_with(Sampler::new("zbar", |z: Complex64| z.conj()), false, true),
        "re_z3" => DiskFunction::numeric_with(Sampler::new("re_z3", |z: Complex64| Complex64::new(z.powu(3).re, 0.0)), false, true),
        other => {
            return Err(Error::MalformedSpec(format!(
                "unknown numeric sampler '{other}' (expected one of {NUMERIC_SAMPLERS:?})"
            )))
        }
    };
    Ok(f)
}

impl FamilySpec {
    pub fn build(&self) -> Result<DiskFunction> {
        let conv = |v: &[Coefficient]| v.iter().map(|&c| Complex64::from(c)).collect::<Vec<_>>();
        match self {
            FamilySpec::Power { coeffs, truncated } => {
                let f = DiskFunction::power_series(conv(coeffs))?;
                if *truncated { f.truncated() } else { Ok(f) }
            }
            FamilySpec::Lacunary { terms } => DiskFunction::lacunary(*terms),
            FamilySpec::Harmonic { h, g } => DiskFunction::harmonic_pair(conv(h), conv(g)),
            FamilySpec::Yukawa { lambda } => DiskFunction::yukawa(*lambda),
            FamilySpec::Constant { value } => {
                let c = Complex64::from(*value);
                if !(c.re.is_finite() && c.im.is_finite()) {
                    return Err(Error::MalformedSpec("constant must be finite".into()));
                }
                Ok(DiskFunction::constant(c))
            }
            FamilySpec::Identity => Ok(DiskFunction::identity()),
            FamilySpec::Geometric { terms } => DiskFunction::geometric(*terms),
            FamilySpec::Neglog { terms } => DiskFunction::neg_log(*terms),
            FamilySpec::Realpower { k } => Ok(DiskFunction::real_part_of_power(*k)),
            FamilySpec::Numeric { name } => builtin_sampler(name),
        }
    }

    pub fn from_json(s: &str) -> Result<DiskFunction> {
        let spec: FamilySpec = serde_json::from_str(s).map_err(|e| Error::MalformedSpec(e.to_string()))?;
        spec.build()
    }
}
