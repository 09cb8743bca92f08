//! Instance builders shared by the benchmarks.

use shirac_core::{
    AmplitudeVector, ConstructionMatrices, ImpulseInterference, ImpulseSpectralDensity,
    ImpulseSpectralTrain, Rational, ShiftVector,
};

/// A dense `rows x cols` construction with the given per-cell degree.
/// Steps and amplitudes are small deterministic rationals.
pub fn dense_matrices(rows: usize, cols: usize, degree: usize) -> ConstructionMatrices {
    let mut amplitudes = Vec::with_capacity(rows);
    let mut shifts = Vec::with_capacity(rows);
    let mut degrees = Vec::with_capacity(rows);
    for k in 0..rows {
        let mut arow = Vec::with_capacity(cols);
        let mut srow = Vec::with_capacity(cols);
        let mut drow = Vec::with_capacity(cols);
        for j in 0..cols {
            let amps: Vec<Rational> = (0..degree)
                .map(|n| Rational::new((1 + (n + k + j) % 7) as i64, 1 + (n % 3) as i64))
                .collect();
            arow.push(AmplitudeVector::new(amps).expect("non-empty"));
            srow.push(
                ShiftVector::new(
                    Rational::new((2 + 3 * k + 5 * j) as i64, 1 + (j % 2) as i64),
                    degree,
                )
                .expect("degree >= 1"),
            );
            drow.push(degree);
        }
        amplitudes.push(arow);
        shifts.push(srow);
        degrees.push(drow);
    }
    ConstructionMatrices::new(amplitudes, shifts, degrees).expect("grids are dense")
}

/// A superposition of endless combs with coprime-ish steps, shifted bursts
/// riding on each.
pub fn periodic_mix() -> ImpulseInterference {
    let combs = [(3i64, 2i64), (5, 1), (7, 3)];
    let densities = combs
        .iter()
        .map(|&(step, amp)| {
            let carrier = ImpulseSpectralTrain::infinite(
                Rational::integer(step),
                vec![Rational::integer(amp)],
            )
            .expect("one amplitude");
            let burst = ImpulseSpectralTrain::finite(
                Rational::new(1, 2),
                vec![Rational::integer(1), Rational::integer(2)],
            )
            .expect("two amplitudes");
            ImpulseSpectralDensity::new(vec![carrier, burst]).expect("two factors")
        })
        .collect();
    ImpulseInterference::new(densities)
}
