use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed function spec: {0}")]
    MalformedSpec(String),

    #[error("point {re}+{im}i is outside the admissible domain ({reason})")]
    OutOfDomain { re: f64, im: f64, reason: String },

    #[error("differencing step does not fit inside the disk at distance {distance:e} from the boundary")]
    StepUnderflow { distance: f64 },

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("grid is empty")]
    EmptyGrid,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("parameters outside the admissible range: {0}")]
    ConstraintViolated(String),

    #[error("function is not harmonic")]
    NotHarmonic,

    #[error("function is not analytic")]
    NotAnalytic,

    #[error("derivatives of the required order are unavailable: {0}")]
    DerivativeUnavailable(String),

    #[error("Dirichlet-type norm diverges")]
    DivergentDirichletNorm,

    #[error("radius {radius} exceeds the range {limit} resolvable by the truncated series")]
    ResolutionExceeded { radius: f64, limit: f64 },

    #[error("no test battery available for alpha={alpha}, beta={beta}")]
    BatteryUnavailable { alpha: f64, beta: f64 },
}

impl Error {
    pub(crate) fn out_of_domain(z: num_complex::Complex64, reason: impl Into<String>) -> Self {
        Error::OutOfDomain {
            re: z.re,
            im: z.im,
            reason: reason.into(),
        }
    }
}
