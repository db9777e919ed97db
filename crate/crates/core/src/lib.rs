//! Numerical toolkit for weighted function spaces on the unit disk: Hardy,
//! Bloch-type, Dirichlet-type and Lipschitz functionals, integral means, and
//! executable checks of the inequalities that connect them.

pub mod compop;
pub mod error;
pub mod functions;
pub mod majorants;
pub mod norms;
pub mod quadrature;
pub mod report;
pub mod theorems;

pub use error::{Error, Result};
pub use functions::{DiskFunction, FamilySpec};
pub use majorants::{BlochParams, Majorant, MajorantSpec};
pub use norms::{Boundedness, NormValue, SupSearchConfig};
pub use quadrature::{Convergence, IntegralResult, QuadratureConfig};
pub use report::{Report, Sample, TheoremReport, Verdict};
