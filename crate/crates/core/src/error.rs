// SPDX-License-Identifier: MIT

use thiserror::Error;

/// Errors raised by grid, transform and verification operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrwtError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("signal values invalid: {0}")]
    InvalidSignal(String),

    #[error("grids differ")]
    GridMismatch,

    #[error("order {alpha} is a multiple of pi; the kernel is a delta distribution (use the identity/parity dispatch)")]
    DeltaKernel { alpha: f64 },

    #[error("identity/parity order requested on an output grid that is not the (reflected) input grid")]
    DomainMismatch,

    #[error("axis {axis} has {count} samples; the fast path needs a power of two")]
    NonPowerOfTwo { axis: usize, count: usize },

    #[error("shift {shift} along axis {axis} is not a whole number of grid steps")]
    OffGridShift { axis: usize, shift: f64 },

    #[error("invalid operator: {0}")]
    InvalidOperator(String),

    #[error("operand grids have different steps or misaligned origins")]
    StepMismatch,

    #[error("scale vector has a zero component")]
    ZeroScaleComponent,

    #[error("daughter support spills past the grid on axis {axis}")]
    GridTooSmall { axis: usize },

    #[error("wavelet is not admissible (divergent admissibility integral)")]
    InadmissibleWavelet { trace: Vec<(f64, f64)> },

    #[error("cross admissibility constant {value:e} is too close to zero")]
    ZeroCrossAdmissibility { value: f64 },

    #[error("moment is tail dominated: last-octave share {share:.3e}")]
    TailDominated { share: f64 },

    #[error("angles {alpha} and {beta} differ by a multiple of pi")]
    InvalidAnglePair { alpha: f64, beta: f64 },

    #[error("theta {theta} is at the n/2 boundary")]
    ThetaAtBoundary { theta: f64 },

    #[error("empty center or radius scan")]
    EmptyScan,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unknown wavelet {0:?}")]
    UnknownWavelet(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, FrwtError>;
