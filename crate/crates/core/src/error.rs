use thiserror::Error;

/// Failures in evaluating a material response.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("{what} is not defined at xi = {xi}")]
    Domain { what: &'static str, xi: f64 },
    #[error("invalid parameter {name} = {value}")]
    InvalidParameter { name: &'static str, value: f64 },
    #[error("non-finite value produced by {0}")]
    NonFinite(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// Failures of the reflection solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ReflectionError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("degenerate eigenvalues in the biaxial solver (|X1 - X2| = {gap:e})")]
    DegenerateRoots { gap: f64 },
    #[error("medium is not uniaxial: eps_xx = {xx}, eps_yy = {yy}")]
    NotUniaxial { xx: f64, yy: f64 },
    #[error("zero-frequency reflection unsupported for {0}")]
    UnsupportedZeroMode(String),
    #[error("invalid wave: {0}")]
    InvalidWave(String),
    #[error("non-finite reflection coefficient")]
    NonFinite,
    #[error("reflection coefficient has imaginary residue {residue:e} on the imaginary axis")]
    NonReal { residue: f64 },
}

/// Failures of numerical integration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("tolerance not met: estimate {value:e} with error {error:e} after {evaluations} evaluations")]
    ToleranceNotMet { value: f64, error: f64, evaluations: usize },
    #[error("integrand returned a non-finite value at x = {at}")]
    NonFinite { at: f64 },
    #[error("invalid interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("Matsubara series not converged after {terms} terms")]
    TruncationFailed { terms: usize },
}

/// Failures of the Lifshitz-level operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LifshitzError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Reflection(#[from] ReflectionError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("det(1 - M) = {0:e} is not positive; the configuration is unstable")]
    Unstable(f64),
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}
