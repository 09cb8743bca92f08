//! Error type shared by all modules.

use crate::bounds::{Extremum, MaskKind};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Aligned addition requires both trains to share one shift step.
    #[error("shift steps differ: {left} vs {right}")]
    ShiftMismatch { left: Rational, right: Rational },

    /// The operation is outside the supported domain.
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// An infinite train cannot be expanded without a bounding window, or the
    /// requested expansion has no finite description.
    #[error("cannot expand an unbounded impulse train; supply a finite window")]
    UnboundedExpansion,

    /// Infinitely many impulses accumulate at a single point, so sums of
    /// amplitudes diverge and no extremum exists.
    #[error("degenerate train: infinitely many impulses accumulate (summand {summand}, factor {factor})")]
    DegenerateTrain { summand: usize, factor: usize },

    /// Bound analysis requires non-negative amplitudes.
    #[error("negative amplitude {amplitude} at position {position}")]
    NegativeAmplitude {
        position: Rational,
        amplitude: Rational,
    },

    /// An amplitude vector does not match its paired degree.
    #[error("amplitude vector has {amplitudes} entries but the paired degree is {degree}")]
    DimensionMismatch { amplitudes: usize, degree: usize },

    /// The construction grids are ragged or disagree at a cell.
    #[error("construction grids disagree at cell ({row}, {col}): {detail}")]
    MalformedGrid {
        row: usize,
        col: usize,
        detail: String,
    },

    /// The finite test-set analysis covers three mask kinds per extremum;
    /// this combination is not one of them.
    #[error("{extremum} over {kind} masks is not covered by the finite test-set analysis")]
    UnsupportedMaskKind { kind: MaskKind, extremum: Extremum },

    /// A window or mask was given with its bounds out of order.
    #[error("invalid interval: lower bound {lo} exceeds upper bound {hi}")]
    InvalidInterval { lo: Rational, hi: Rational },
}

pub type Result<T> = std::result::Result<T, Error>;
