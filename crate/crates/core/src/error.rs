use thiserror::Error;

/// Errors produced by the simulation library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: usize, got: usize },
    #[error("wave packet too narrow: sigma {sigma} < 3 * dx ({min})")]
    PacketTooNarrow { sigma: f64, min: f64 },
    #[error("wave packet does not fit in the domain along axis {axis}")]
    PacketOutOfDomain { axis: usize },
    #[error("state has zero norm ({0:e})")]
    ZeroNorm(f64),
    #[error("step-size guard violated: k * dt / m = {ratio} exceeds {limit}")]
    StepSizeGuard { ratio: f64, limit: f64 },
    #[error("unsupported moment order {0}; expected one of 0, 1, 2, 4")]
    UnsupportedOrder(u32),
    #[error("quadrature did not converge: last refinement changed the result by {rel_change:e} (relative)")]
    QuadratureFailure { rel_change: f64 },
    #[error("singular linear system: pivot {pivot:e} at row {row}")]
    SingularSystem { row: usize, pivot: f64 },
    #[error("non-finite value detected at t = {time}")]
    NonFinite { time: f64 },
    #[error("gradient unavailable at {0:?}: outside the sampled domain")]
    GradientUnavailable(Vec<f64>),
    #[error("time grids do not match at sample {index}: {left} vs {right}")]
    TimeGridMismatch { index: usize, left: f64, right: f64 },
    #[error("operation requires a {expected}-dimensional grid, got {got}")]
    Dimension { expected: usize, got: usize },
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::QuadratureFailure { .. }
                | Error::SingularSystem { .. }
                | Error::NonFinite { .. }
                | Error::ZeroNorm(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
