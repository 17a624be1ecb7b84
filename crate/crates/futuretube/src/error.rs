//! Crate-wide error type.
//!
//! Data-dependent failures (a point outside the tube, an unreachable tolerance,
//! a truncation tail above threshold) are reported through [`Error`]; contract
//! violations that can only arise from caller bugs (mismatched vector
//! dimensions) panic instead, like slice indexing does.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error)]
pub enum Error {
    /// The imaginary part of a complexified point is not timelike, so the point
    /// lies outside the causal tube and the complex length is undefined.
    #[error("outside causal tube: imaginary part is not timelike")]
    OutsideTube,

    /// The imaginary part must lie in the open *future* cone for this
    /// operation; past-tube arguments make the defining integrals diverge.
    #[error("past tube diverges: y must lie in the future cone")]
    PastTube,

    /// Lightlike or zero interval where a proper time/distance was requested.
    #[error("degenerate interval: lightlike or zero vector has no proper time or distance")]
    DegenerateInterval,

    /// Level surface request with σ < λ: the surface does not intersect the
    /// slice.
    #[error("empty level surface: sigma = {sigma} is below lambda = {lambda}")]
    EmptySurface { sigma: f64, lambda: f64 },

    /// Spatial dimension not supported by the requested operation.
    #[error("unsupported spatial dimension d = {0}")]
    UnsupportedDimension(usize),

    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The quadrature could not reach its accuracy target; the best value and
    /// its honest error estimate are attached.
    #[error("tolerance unreachable: best estimate {value} with absolute error {estimated_abs_error:.3e}")]
    ToleranceUnreachable {
        value: Complex64,
        estimated_abs_error: f64,
    },

    /// Truncation tail above the acceptable threshold for a slice integral.
    #[error("truncation tail {estimate:.3e} exceeds threshold {threshold:.3e}")]
    Truncation { estimate: f64, threshold: f64 },

    /// Phase-space calibration failed (flatness deviation above threshold).
    #[error("calibration failure: {0}")]
    Calibration(String),

    /// A slice operation was invoked before `calibrate`.
    #[error("slice is not calibrated; call calibrate first")]
    NotCalibrated,

    /// Position expectation requires the state to sit on the t = 0 slice.
    #[error("state has x0 = {0}; translate to x0 = 0 before taking position expectations")]
    NonzeroTime(f64),

    /// Fiber metric singular (or a gauge function vanishing) at a sample point.
    #[error("singular fiber metric or vanishing gauge function at a sample point")]
    SingularMetric,

    /// A finite-difference stencil would leave the future tube.
    #[error("stencil exits the future tube; reduce the step or move the base point")]
    StencilExitsTube,
}
