use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is singular (pivot {pivot:e})")]
    Singular { pivot: f64 },

    #[error("invalid axis {0}, expected 1, 2 or 3")]
    InvalidAxis(usize),

    #[error("not a Lorentz algebra element in the (boost, rotation) basis: {detail}")]
    NotLieElement { detail: String },

    #[error("matrix norm {norm:e} exceeds the exponential accuracy limit {limit}")]
    NormOverflow { norm: f64, limit: f64 },

    #[error("superluminal frame velocity |v| = {speed}")]
    Superluminal { speed: f64 },

    #[error("field singularity at radius {radius:e} (minimum radius {r_min:e})")]
    FieldSingularity { radius: f64, r_min: f64 },

    #[error("linear system is underdetermined: {0}")]
    Underdetermined(String),

    #[error("linear system is inconsistent: residual {residual:e} exceeds {tolerance:e}")]
    InconsistentSystem { residual: f64, tolerance: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("four-velocity is not unit-normalized: u.u - 1 = {deviation:e}")]
    NotNormalized { deviation: f64 },

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("step {step} failed: {source}")]
    StepFailed {
        step: usize,
        #[source]
        source: Box<Error>,
    },
}
