//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by model construction, density evaluation and simulation.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// A result exceeds the representable range; use the scaled variant instead.
    #[error("overflow in {op}: {detail}")]
    Overflow { op: &'static str, detail: String },

    /// |rho| is too close to 1 for the covariance factor to be inverted.
    #[error("singular covariance factor: |rho| = {rho_abs} exceeds 1 - 1e-6")]
    SingularSigma { rho_abs: f64 },

    /// A computed state violates a structural invariant (numerical pathology).
    #[error("invalid state: {detail}")]
    InvalidState { detail: String },

    /// Adaptive quadrature hit its depth cap before meeting the error target.
    /// The best available estimate is attached.
    #[error(
        "quadrature failed to converge: value {value}, error estimate {estimate} > tolerance {tolerance}"
    )]
    QuadratureFailure {
        value: f64,
        estimate: f64,
        tolerance: f64,
    },

    /// A conditional-probability denominator fell below the guard threshold.
    #[error("degenerate conditioning in {op}: denominator {denominator} < 1e-14")]
    DegenerateConditioning { op: &'static str, denominator: f64 },

    /// A Monte Carlo conditioning set is too small for a meaningful estimate.
    #[error("insufficient sample: {have} paths satisfy the conditioning, need {need}")]
    InsufficientSample { have: usize, need: usize },

    /// An `InformationState` contradicts itself.
    #[error("inconsistent information state: {detail}")]
    InconsistentState { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
