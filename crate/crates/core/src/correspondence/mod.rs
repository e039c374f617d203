//! From cuspidal modules to representations of the derivation algebra and back.

pub mod analyze;
pub mod extract;
pub mod fit;
pub mod rep;

pub use extract::{extract_d_operators, DSamples};
pub use fit::{fit_polynomials, fit_samples, Coefficients, PolynomialFamily, DEFAULT_DEGREE_CAP};

use crate::modules::ModuleError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorrespondenceError {
    #[error("window bound {0} is too small to sample D-operators")]
    WindowTooSmall(i64),
    #[error("not polynomial within degree cap {cap}")]
    NotPolynomial { cap: usize },
    #[error("inconsistent module action: {0}")]
    Inconsistent(String),
    #[error("representation violates a bracket: {0}")]
    BracketViolation(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
}
pub use rep::{divided_power, module_from_rep, rep_from_family, verify_p_brackets, LRepresentation, RepAction};
pub use analyze::{analyze_rep, induced_gln_module, nilpotent_rep, tensor_rep, Classification, RepAnalysis};
