//! Tabular construction of interferences.
//!
//! A trace specification is three dense `L1 x L2` grids: amplitude vectors,
//! shift vectors and degrees. The per-cell dot product turns an amplitude
//! vector and a shift vector into a train; convolving each row yields one
//! density; summing the rows yields the interference.

use crate::error::{Error, Result};
use crate::impulse::{ImpulseInterference, ImpulseSpectralDensity, ImpulseSpectralTrain};
use crate::rational::Rational;

/// Non-empty vector of amplitudes for one cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmplitudeVector(Vec<Rational>);

impl AmplitudeVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Unsupported(
                "an amplitude vector needs at least one entry".into(),
            ));
        }
        Ok(AmplitudeVector(entries))
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)] // never empty by construction
    pub fn len(&self) -> usize {
        self.0.len()
    }
}

/// The arithmetic progression of shifts `(delta(x), delta(x-s), ...,
/// delta(x-(N-1)s))`, described by its step and degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftVector {
    shift_step: Rational,
    degree: usize,
}

impl ShiftVector {
    pub fn new(shift_step: Rational, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Unsupported(
                "a shift vector needs degree at least 1".into(),
            ));
        }
        Ok(ShiftVector { shift_step, degree })
    }

    pub fn shift_step(&self) -> &Rational {
        &self.shift_step
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

/// The three grids of a trace specification. Construction validates that all
/// grids are dense with identical dimensions and that every cell's amplitude
/// count, degree entry and shift-vector degree agree, so malformed
/// specifications fail loudly up front.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionMatrices {
    amplitudes: Vec<Vec<AmplitudeVector>>,
    shifts: Vec<Vec<ShiftVector>>,
    degrees: Vec<Vec<usize>>,
}

impl ConstructionMatrices {
    pub fn new(
        amplitudes: Vec<Vec<AmplitudeVector>>,
        shifts: Vec<Vec<ShiftVector>>,
        degrees: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::MalformedGrid {
                row: 0,
                col: 0,
                detail: "grids must have at least one row".into(),
            });
        }
        let rows = amplitudes.len();
        if shifts.len() != rows || degrees.len() != rows {
            return Err(Error::MalformedGrid {
                row: 0,
                col: 0,
                detail: format!(
                    "row counts differ: {} amplitude, {} shift, {} degree",
                    rows,
                    shifts.len(),
                    degrees.len()
                ),
            });
        }
        let cols = amplitudes[0].len();
        if cols == 0 {
            return Err(Error::MalformedGrid {
                row: 0,
                col: 0,
                detail: "grids must have at least one column".into(),
            });
        }
        for k in 0..rows {
            if amplitudes[k].len() != cols || shifts[k].len() != cols || degrees[k].len() != cols {
                return Err(Error::MalformedGrid {
                    row: k,
                    col: 0,
                    detail: format!(
                        "ragged row: {} amplitude, {} shift, {} degree cells (expected {})",
                        amplitudes[k].len(),
                        shifts[k].len(),
                        degrees[k].len(),
                        cols
                    ),
                });
            }
            for j in 0..cols {
                let n = degrees[k][j];
                if n == 0 {
                    return Err(Error::MalformedGrid {
                        row: k,
                        col: j,
                        detail: "degree must be at least 1".into(),
                    });
                }
                if amplitudes[k][j].len() != n || shifts[k][j].degree() != n {
                    return Err(Error::MalformedGrid {
                        row: k,
                        col: j,
                        detail: format!(
                            "amplitude count {} / shift degree {} / degree entry {}",
                            amplitudes[k][j].len(),
                            shifts[k][j].degree(),
                            n
                        ),
                    });
                }
            }
        }
        Ok(ConstructionMatrices {
            amplitudes,
            shifts,
            degrees,
        })
    }

    pub fn rows(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn cols(&self) -> usize {
        self.amplitudes[0].len()
    }

    pub fn amplitudes(&self) -> &[Vec<AmplitudeVector>] {
        &self.amplitudes
    }

    pub fn shifts(&self) -> &[Vec<ShiftVector>] {
        &self.shifts
    }

    pub fn degrees(&self) -> &[Vec<usize>] {
        &self.degrees
    }
}

/// Dot product of one amplitude vector with one shift vector: the train
/// whose `n`-th impulse is `a_n * delta(x - n*s)`.
pub fn vector_dot(
    amplitudes: &AmplitudeVector,
    shifts: &ShiftVector,
) -> Result<ImpulseSpectralTrain> {
    if amplitudes.len() != shifts.degree() {
        return Err(Error::DimensionMismatch {
            amplitudes: amplitudes.len(),
            degree: shifts.degree(),
        });
    }
    ImpulseSpectralTrain::finite(shifts.shift_step().clone(), amplitudes.entries().to_vec())
}

/// Cell-wise dot product of the two grids: the spectral matrix holding every
/// train of the interference.
pub fn matrix_dot(m: &ConstructionMatrices) -> Result<Vec<Vec<ImpulseSpectralTrain>>> {
    m.amplitudes()
        .iter()
        .zip(m.shifts())
        .map(|(arow, srow)| {
            arow.iter()
                .zip(srow)
                .map(|(a, s)| vector_dot(a, s))
                .collect()
        })
        .collect()
}

/// Convolves the cells of each row, left to right, into one density per row.
/// The convolution is deferred; each row is held as a factor list.
pub fn inner_convolve(grid: Vec<Vec<ImpulseSpectralTrain>>) -> Vec<ImpulseSpectralDensity> {
    grid.into_iter()
        .filter(|row| !row.is_empty())
        .map(|row| ImpulseSpectralDensity::new(row).expect("rows are non-empty"))
        .collect()
}

/// Sums the row densities into the interference, order preserved.
pub fn inner_sum(rows: Vec<ImpulseSpectralDensity>) -> ImpulseInterference {
    ImpulseInterference::new(rows)
}

/// The whole pipeline: dot product, inner convolution, inner sum.
pub fn build_interference(m: &ConstructionMatrices) -> Result<ImpulseInterference> {
    Ok(inner_sum(inner_convolve(matrix_dot(m)?)))
}
