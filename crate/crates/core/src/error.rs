use thiserror::Error;

/// Errors raised by the numerical kernels.
///
/// The variants split into two families: precondition violations (bad
/// input, out-of-domain points, malformed samples) and numeric failures
/// (a fit that cannot reach its tolerance, quadrature that does not
/// converge). [`Error::is_numeric_failure`] tells them apart.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("denominator is identically zero")]
    InvalidDenominator,
    #[error("denominator vanishes at the expansion center {0}")]
    PoleAtCenter(num_complex::Complex64),
    #[error("series has order {available}, but order {needed} is required")]
    InsufficientSeries { needed: usize, available: usize },
    #[error("function is singular at center {0}")]
    SingularCenter(num_complex::Complex64),
    #[error("unknown builtin `{0}`")]
    UnknownBuiltin(String),
    #[error("both Jacobi determinant polynomials vanish identically")]
    DegeneratePade,
    #[error("invalid sample: {0}")]
    InvalidSample(String),
    #[error("numerator and denominator both vanish at {0}")]
    IndeterminateValue(num_complex::Complex64),
    #[error("rounding to 2^-{0} collapses the denominator")]
    PrecisionTooCoarse(u32),
    #[error("polynomial fit failed; best residual {best_residual:e} at degree {degree}")]
    FitFailure { best_residual: f64, degree: usize },
    #[error("degree violation: {0}")]
    DegreeViolation(String),
    #[error("perturbation produced a non-coprime pair")]
    PerturbationDegenerate,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("root finding failed: {0}")]
    RootFinding(String),
    #[error("pole {0} lies on the region boundary")]
    PoleOnBoundary(num_complex::Complex64),
    #[error("pole {0} is not in the supplied pole list")]
    PoleNotInList(num_complex::Complex64),
    #[error("point {0} lies outside the domain")]
    OutsideDomain(num_complex::Complex64),
    #[error("quadrature did not converge after {0} bisection levels")]
    NonConvergence(usize),
    #[error("map is singular at {0}")]
    SingularPoint(num_complex::Complex64),
    #[error("argument {0} outside the admissible range")]
    DomainError(f64),
    #[error("series centers differ: {0} vs {1}")]
    MismatchedCenters(num_complex::Complex64, num_complex::Complex64),
    #[error("principal log branch cut approached at t = {0}")]
    BranchCut(f64),
    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numeric_failure(&self) -> bool {
        matches!(
            self,
            Error::FitFailure { .. }
                | Error::NonConvergence(_)
                | Error::RootFinding(_)
                | Error::NonFinite(_)
                | Error::PerturbationDegenerate
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
