//! Verdicts and reports shared by every check in the crate.

use num_complex::Complex64;
use serde::Serialize;

/// Absolute slack for inequality checks, scaled by `1 + |rhs|`.
pub const INEQUALITY_SLACK: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "Pass",
            Verdict::Fail => "Fail",
            Verdict::Inconclusive(_) => "Inconclusive",
        }
    }
}

/// Outcome of a scalar check: a value, its uncertainty and a verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub verdict: Verdict,
    pub value: f64,
    pub error_estimate: f64,
    pub detail: String,
}

impl Report {
    pub fn new(check: impl Into<String>, verdict: Verdict, value: f64, detail: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            verdict,
            value,
            error_estimate: 0.0,
            detail: detail.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}

/// One evaluated instance of an inequality `lhs <= rhs`. For radial checks
/// the radius is stored in `at.re`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sample {
    pub at: Complex64,
    pub lhs: f64,
    pub rhs: f64,
}

impl Sample {
    pub fn new(at: Complex64, lhs: f64, rhs: f64) -> Self {
        Sample { at, lhs, rhs }
    }

    pub fn radial(r: f64, lhs: f64, rhs: f64) -> Self {
        Sample::new(Complex64::new(r, 0.0), lhs, rhs)
    }

    /// `lhs - rhs - slack`; positive means the inequality is violated.
    pub fn violation(&self, slack: f64) -> f64 {
        self.lhs - self.rhs - slack * (1.0 + self.rhs.abs())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem_id: String,
    pub samples: Vec<Sample>,
    /// Largest slack-adjusted violation; `<= 0` means every sample passed.
    pub max_violation: f64,
    pub worst: Option<Sample>,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl TheoremReport {
    /// Builds a report whose verdict is Pass iff every sample satisfies
    /// `lhs <= rhs + slack·(1 + |rhs|)`.
    pub fn from_samples(theorem_id: impl Into<String>, samples: Vec<Sample>, slack: f64) -> Self {
        let mut worst: Option<Sample> = None;
        let mut max_violation = f64::NEG_INFINITY;
        for s in &samples {
            let v = s.violation(slack);
            if v > max_violation || v.is_nan() {
                max_violation = if v.is_nan() { f64::INFINITY } else { v };
                worst = Some(*s);
            }
        }
        if samples.is_empty() {
            max_violation = 0.0;
        }
        let verdict = if max_violation <= 0.0 { Verdict::Pass } else { Verdict::Fail };
        TheoremReport {
            theorem_id: theorem_id.into(),
            samples,
            max_violation,
            worst,
            verdict,
            notes: Vec::new(),
        }
    }

    pub fn inconclusive(theorem_id: impl Into<String>, reason: impl Into<String>) -> Self {
        let reason = reason.into();
        TheoremReport {
            theorem_id: theorem_id.into(),
            samples: Vec::new(),
            max_violation: 0.0,
            worst: None,
            verdict: Verdict::Inconclusive(reason.clone()),
            notes: vec![reason],
        }
    }

    /// Report for an equivalence check: Pass iff both sides reached the same verdict.
    pub fn agreement(theorem_id: impl Into<String>, agree: bool, notes: Vec<String>) -> Self {
        TheoremReport {
            theorem_id: theorem_id.into(),
            samples: Vec::new(),
            max_violation: if agree { 0.0 } else { 1.0 },
            worst: None,
            verdict: if agree { Verdict::Pass } else { Verdict::Fail },
            notes,
        }
    }

    /// Lifts a scalar [`Report`] into a theorem report.
    pub fn from_report(report: Report) -> Self {
        TheoremReport {
            theorem_id: report.check,
            samples: Vec::new(),
            max_violation: if report.verdict.is_pass() { 0.0 } else { report.value.abs().max(f64::MIN_POSITIVE) },
            worst: None,
            verdict: report.verdict,
            notes: vec![report.detail],
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }
}
