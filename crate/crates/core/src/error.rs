use thiserror::Error;

/// Failures raised by the simulation core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid configuration: {field} {reason}")]
    InvalidConfig {
        field: &'static str,
        reason: &'static str,
    },

    #[error("input qubit {qubit} is not normalized (|.|^2 sum = {norm_sq})")]
    NotNormalized { qubit: &'static str, norm_sq: f64 },

    #[error("interaction time must be finite and non-negative, got {0}")]
    NegativeTime(f64),

    #[error("RK4 needs at least {required} steps for this Hamiltonian and time, got {steps}")]
    TooFewSteps { steps: usize, required: usize },

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("Hermitian eigensolver did not converge")]
    NoConvergence,

    #[error("observable {0} is undefined for this input (amplitude below guard)")]
    Undefined(&'static str),

    #[error("composition count must be at least 1")]
    ZeroComposition,
}
