//! Seeded random instances for differential testing.
//!
//! Used by the `verify` command and the acceptance suite. Everything is
//! driven by a caller-supplied RNG, so a fixed seed reproduces the exact
//! same instances everywhere.

use rand::Rng;

use crate::impulse::{
    ImpulseInterference, ImpulseSpectralDensity, ImpulseSpectralTrain,
};
use crate::rational::Rational;

/// Shape limits for generated instances.
#[derive(Debug, Clone)]
pub struct GenConfig {
    /// Summand count is drawn from `0..=max_summands`.
    pub max_summands: usize,
    /// Factor count per summand is drawn from `1..=max_factors`.
    pub max_factors: usize,
    /// Degree per factor is drawn from `1..=max_degree`.
    pub max_degree: usize,
    /// Numerator magnitude bound for shifts and amplitudes.
    pub max_numerator: i64,
    /// Denominator bound for shifts and amplitudes.
    pub max_denominator: i64,
    /// Allow negative amplitudes (algebra yes, bound analysis no).
    pub negative_amplitudes: bool,
    /// Allow negative shift steps.
    pub negative_steps: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_summands: 3,
            max_factors: 3,
            max_degree: 4,
            max_numerator: 8,
            max_denominator: 4,
            negative_amplitudes: true,
            negative_steps: true,
        }
    }
}

impl GenConfig {
    /// Positive amplitudes and steps only, as bound analysis requires.
    pub fn positive() -> Self {
        GenConfig {
            negative_amplitudes: false,
            negative_steps: false,
            ..GenConfig::default()
        }
    }
}

/// A rational with numerator in `1..=max_numerator` (negated with
/// probability 1/2 when allowed) and denominator in `1..=max_denominator`.
pub fn rational<R: Rng>(rng: &mut R, cfg: &GenConfig, allow_negative: bool) -> Rational {
    let num = rng.gen_range(1..=cfg.max_numerator);
    let den = rng.gen_range(1..=cfg.max_denominator);
    let sign = if allow_negative && rng.gen_bool(0.5) {
        -1
    } else {
        1
    };
    Rational::new(sign * num, den)
}

/// Amplitude values; zero shows up occasionally so canonicalization paths
/// get exercised.
fn amplitude<R: Rng>(rng: &mut R, cfg: &GenConfig) -> Rational {
    if rng.gen_bool(0.1) {
        return Rational::zero();
    }
    rational(rng, cfg, cfg.negative_amplitudes)
}

/// A finite train with random step, degree and amplitudes.
pub fn finite_train<R: Rng>(rng: &mut R, cfg: &GenConfig) -> ImpulseSpectralTrain {
    let degree = rng.gen_range(1..=cfg.max_degree);
    let step = if rng.gen_bool(0.1) {
        Rational::zero()
    } else {
        rational(rng, cfg, cfg.negative_steps)
    };
    let amplitudes = (0..degree).map(|_| amplitude(rng, cfg)).collect();
    ImpulseSpectralTrain::finite(step, amplitudes).expect("degree >= 1")
}

/// A finite interference (possibly the empty one).
pub fn finite_interference<R: Rng>(rng: &mut R, cfg: &GenConfig) -> ImpulseInterference {
    let summands = rng.gen_range(0..=cfg.max_summands);
    let densities = (0..summands)
        .map(|_| {
            let factors = rng.gen_range(1..=cfg.max_factors);
            ImpulseSpectralDensity::new((0..factors).map(|_| finite_train(rng, cfg)).collect())
                .expect("at least one factor")
        })
        .collect();
    ImpulseInterference::new(densities)
}

/// A non-empty finite interference with strictly positive amplitudes and
/// non-negative steps, suitable for bound analysis.
pub fn positive_interference<R: Rng>(rng: &mut R, cfg: &GenConfig) -> ImpulseInterference {
    let summands = rng.gen_range(1..=cfg.max_summands.max(1));
    let densities = (0..summands)
        .map(|_| {
            let factors = rng.gen_range(1..=cfg.max_factors);
            let trains = (0..factors)
                .map(|_| {
                    let degree = rng.gen_range(1..=cfg.max_degree);
                    let step = if rng.gen_bool(0.1) {
                        Rational::zero()
                    } else {
                        rational(rng, cfg, false)
                    };
                    let amplitudes = (0..degree).map(|_| rational(rng, cfg, false)).collect();
                    ImpulseSpectralTrain::finite(step, amplitudes).expect("degree >= 1")
                })
                .collect();
            ImpulseSpectralDensity::new(trains).expect("at least one factor")
        })
        .collect();
    ImpulseInterference::new(densities)
}

/// A fully periodic interference: every summand is a single endless comb
/// with a positive step and one constant positive amplitude. Returns the
/// interference together with its repetition stride (the lcm of the steps).
pub fn periodic_interference<R: Rng>(
    rng: &mut R,
    cfg: &GenConfig,
) -> (ImpulseInterference, Rational) {
    let summands = rng.gen_range(1..=cfg.max_summands.max(1));
    let mut densities = Vec::with_capacity(summands);
    let mut period: Option<Rational> = None;
    for _ in 0..summands {
        let step = rational(rng, cfg, false);
        let amplitude = rational(rng, cfg, false);
        period = Some(match period {
            None => step.clone(),
            Some(p) => p.lcm_positive(&step),
        });
        let comb = ImpulseSpectralTrain::infinite(step, vec![amplitude]).expect("one amplitude");
        densities.push(ImpulseSpectralDensity::from_train(comb));
    }
    (
        ImpulseInterference::new(densities),
        period.expect("at least one summand"),
    )
}
