//! Majorant weights ω and the boundary weight η(r) = (1-r)^α (log e/(1-r))^β.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Report, Verdict};

/// Majorants are only ever evaluated on the range of η and its relatives,
/// which stays inside `[0, 1]`; anything above this is a caller bug.
pub const MAX_ARGUMENT: f64 = 10.0;

const AXIOM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum Majorant {
    /// ω(t) = t
    Identity,
    /// ω(t) = t^s, 0 < s <= 1
    Power(f64),
    /// ω(t) = t (1 + log 1/t) on [0, 1], constant 1 beyond.
    LogSmoothed,
    /// Piecewise-linear through `(0, 0)` and the knots, constant after the last knot.
    Table(Vec<(f64, f64)>),
}

impl Majorant {
    pub fn power(s: f64) -> Result<Self> {
        if !(s > 0.0 && s <= 1.0) {
            return Err(Error::InvalidParameter(format!("power majorant exponent must lie in (0, 1], got {s}")));
        }
        Ok(Majorant::Power(s))
    }

    /// A table majorant whose knots satisfy the majorant axioms.
    pub fn table(knots: Vec<(f64, f64)>) -> Result<Self> {
        let m = Self::table_unchecked(knots)?;
        if let Majorant::Table(k) = &m {
            let mut prev = (0.0, 0.0);
            let mut prev_ratio = f64::INFINITY;
            for &(t, w) in k {
                let ratio = w / t;
                if w < prev.1 - AXIOM_TOL || ratio > prev_ratio + AXIOM_TOL {
                    return Err(Error::InvalidParameter(format!(
                        "table knot ({t}, {w}) breaks monotonicity of ω or ω(t)/t"
                    )));
                }
                prev = (t, w);
                prev_ratio = ratio;
            }
        }
        Ok(m)
    }

    /// A table majorant checked only for well-formed knots; the axioms are
    /// left to [`validate_majorant`].
    pub fn table_unchecked(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::InvalidParameter("table majorant needs at least one knot".into()));
        }
        let mut last = 0.0;
        for &(t, w) in &knots {
            if !(t.is_finite() && w.is_finite()) || t <= last || w < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "table knots must be finite, strictly increasing in t > 0, with nonnegative values; bad knot ({t}, {w})"
                )));
            }
            last = t;
        }
        Ok(Majorant::Table(knots))
    }

    pub fn builtins() -> Vec<Majorant> {
        vec![
            Majorant::Identity,
            Majorant::Power(0.5),
            Majorant::Power(0.25),
            Majorant::LogSmoothed,
            Majorant::Table(vec![(0.5, 0.8), (1.0, 1.2), (4.0, 2.0)]),
        ]
    }

    pub fn value(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0, "majorant argument must be nonnegative, got {t}");
        debug_assert!(t <= MAX_ARGUMENT, "majorant argument {t} exceeds the guarded range");
        if t <= 0.0 {
            return 0.0;
        }
        match self {
            Majorant::Identity => t,
            Majorant::Power(s) => t.powf(*s),
            Majorant::LogSmoothed => {
                if t <= 1.0 {
                    t * (1.0 - t.ln())
                } else {
                    1.0
                }
            }
            Majorant::Table(knots) => {
                let mut prev = (0.0, 0.0);
                for &(tk, wk) in knots {
                    if t <= tk {
                        return prev.1 + (wk - prev.1) * (t - prev.0) / (tk - prev.0);
                    }
                    prev = (tk, wk);
                }
                prev.1
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            Majorant::Identity => "identity".into(),
            Majorant::Power(s) => format!("power({s})"),
            Majorant::LogSmoothed => "logsmoothed".into(),
            Majorant::Table(k) => format!("table({} knots)", k.len()),
        }
    }
}

/// JSON form: `{"kind": "identity" | "power" | "logsmoothed" | "table", ...}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MajorantSpec {
    Identity,
    Power { s: f64 },
    Logsmoothed,
    Table { knots: Vec<[f64; 2]> },
}

impl MajorantSpec {
    pub fn build(&self) -> Result<Majorant> {
        match self {
            MajorantSpec::Identity => Ok(Majorant::Identity),
            MajorantSpec::Power { s } => Majorant::power(*s),
            MajorantSpec::Logsmoothed => Ok(Majorant::LogSmoothed),
            MajorantSpec::Table { knots } => Majorant::table(knots.iter().map(|k| (k[0], k[1])).collect()),
        }
    }
}

/// Parameters `(p, α, β)` of the weighted Bloch-type norm; `p = ∞` is `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochParams {
    pub p: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl BlochParams {
    pub fn new(p: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(p > 0.0) {
            return Err(Error::InvalidParameter(format!("p must be positive (or infinite), got {p}")));
        }
        check_weight_params(alpha, beta)?;
        Ok(BlochParams { p, alpha, beta })
    }

    pub fn sup(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(f64::INFINITY, alpha, beta)
    }

    pub fn is_sup(&self) -> bool {
        self.p.is_infinite()
    }
}

pub(crate) fn check_weight_params(alpha: f64, beta: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::InvalidParameter(format!("alpha must be positive, got {alpha}")));
    }
    if !(beta <= alpha) {
        return Err(Error::InvalidParameter(format!("beta must not exceed alpha, got beta={beta}, alpha={alpha}")));
    }
    Ok(())
}

/// `log(e/d) = 1 - log d`.
#[inline]
pub fn log_weight(d: f64) -> f64 {
    1.0 - d.ln()
}

/// `η` as a function of the boundary distance `d`, evaluated in log space.
#[inline]
pub fn eta_from_distance(d: f64, alpha: f64, beta: f64) -> f64 {
    (alpha * d.ln() + beta * log_weight(d).ln()).exp()
}

/// `η(r) = (1-r)^α (log e/(1-r))^β`.
pub fn eta(r: f64, alpha: f64, beta: f64) -> Result<f64> {
    check_weight_params(alpha, beta)?;
    if !(r >= 0.0) || r >= 1.0 || !r.is_finite() {
        return Err(Error::OutOfDomain {
            re: r,
            im: 0.0,
            reason: "eta needs 0 <= r < 1".into(),
        });
    }
    let ln_d = (-r).ln_1p();
    Ok((alpha * ln_d + beta * (1.0 - ln_d).ln()).exp())
}

fn check_grid(grid: &[f64], open_unit: bool) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut last = 0.0;
    for (i, &t) in grid.iter().enumerate() {
        if !(t > 0.0 && t.is_finite()) || (open_unit && t >= 1.0) || (i > 0 && t < last) {
            return Err(Error::InvalidParameter(format!("grid must be sorted ascending and positive; bad entry {t}")));
        }
        last = t;
    }
    Ok(())
}

/// Checks `ω(0) = 0`, `ω` nondecreasing and `ω(t)/t` nonincreasing along `grid`.
pub fn validate_majorant(w: &Majorant, grid: &[f64]) -> Result<Report> {
    check_grid(grid, false)?;
    let w0 = w.value(0.0);
    if w0 != 0.0 {
        return Ok(Report::new("majorant-axioms", Verdict::Fail, w0, format!("ω(0) = {w0} != 0")));
    }
    for pair in grid.windows(2) {
        let (t1, t2) = (pair[0], pair[1]);
        let (w1, w2) = (w.value(t1), w.value(t2));
        if w2 < w1 - AXIOM_TOL * (1.0 + w1.abs()) {
            return Ok(Report::new(
                "majorant-axioms",
                Verdict::Fail,
                w1 - w2,
                format!("ω decreases between t={t1} and t={t2}: {w1} > {w2}"),
            ));
        }
        let (q1, q2) = (w1 / t1, w2 / t2);
        if q2 > q1 + AXIOM_TOL * (1.0 + q1.abs()) {
            return Ok(Report::new(
                "majorant-axioms",
                Verdict::Fail,
                q2 - q1,
                format!("ω(t)/t increases between t={t1} and t={t2}: {q1} < {q2}"),
            ));
        }
    }
    Ok(Report::new(
        "majorant-axioms",
        Verdict::Pass,
        0.0,
        format!("{} on {} grid points", w.label(), grid.len()),
    ))
}

/// Checks `ω(νt) >= ν ω(t)`, a consequence of `ω(t)/t` being nonincreasing.
pub fn scaling_law_check(w: &Majorant, nu: f64, t: f64) -> Result<Report> {
    if !(nu > 0.0 && nu <= 1.0) {
        return Err(Error::InvalidParameter(format!("nu must lie in (0, 1], got {nu}")));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidParameter(format!("t must be positive, got {t}")));
    }
    let lhs = w.value(nu * t);
    let rhs = nu * w.value(t);
    let verdict = if lhs >= rhs - AXIOM_TOL { Verdict::Pass } else { Verdict::Fail };
    Ok(Report::new(
        "majorant-scaling",
        verdict,
        rhs - lhs,
        format!("ω({}) = {lhs}, ν·ω({t}) = {rhs}", nu * t),
    ))
}

/// Checks that `η` and `η/ω(η)` are nonincreasing on a grid in `(0, 1)`.
pub fn eta_monotonicity_check(alpha: f64, beta: f64, w: &Majorant, grid: &[f64]) -> Result<Report> {
    check_grid(grid, true)?;
    check_weight_params(alpha, beta)?;
    let mut prev: Option<(f64, f64, f64)> = None;
    for &r in grid {
        let e = eta(r, alpha, beta)?;
        let q = e / w.value(e);
        if let Some((r0, e0, q0)) = prev {
            if e > e0 + AXIOM_TOL {
                return Ok(Report::new("eta-monotone", Verdict::Fail, e - e0, format!("η increases from r={r0} to r={r}")));
            }
            if q > q0 + AXIOM_TOL {
                return Ok(Report::new(
                    "eta-monotone",
                    Verdict::Fail,
                    q - q0,
                    format!("η/ω(η) increases from r={r0} to r={r}"),
                ));
            }
        }
        prev = Some((r, e, q));
    }
    Ok(Report::new("eta-monotone", Verdict::Pass, 0.0, format!("alpha={alpha}, beta={beta}, {}", w.label())))
}
