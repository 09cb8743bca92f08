//! Value types for impulse trains and the operations of the impulse algebra.
//!
//! An [`ImpulseSpectralTrain`] is one periodic burst `sum a_n * delta(x - n*s)`.
//! Convolving trains nests them into an [`ImpulseSpectralDensity`]; superposing
//! densities yields an [`ImpulseInterference`], the universal trace model. All
//! three are held symbolically. [`ImpulseInterference::flatten`] expands any of
//! them into the canonical [`FlatTrain`] on which equality is decidable.
//!
//! Everything here is an immutable value and every operation is a pure
//! function, so values can be shared and moved across threads freely.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Hard cap on the number of impulses a single expansion may produce.
const EXPANSION_CAP: usize = 4_000_000;

/// Number of impulses in a train: a finite count or an endless cyclic repeat.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    Finite(usize),
    Infinite,
}

impl Degree {
    pub fn is_infinite(self) -> bool {
        matches!(self, Degree::Infinite)
    }
}

/// A closed interval `[lo, hi]` used to bound expansions and analyses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Window {
    lo: Rational,
    hi: Rational,
}

impl Window {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(Window { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn contains(&self, p: &Rational) -> bool {
        &self.lo <= p && p <= &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// One periodic impulse burst `sum_{n=0}^{N-1} a_n * delta(x - n*s)`.
///
/// For an infinite degree the amplitude sequence is applied cyclically, which
/// keeps the description finite while covering constant and bursty loads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpulseSpectralTrain {
    shift_step: Rational,
    degree: Degree,
    amplitudes: Vec<Rational>,
}

impl ImpulseSpectralTrain {
    pub fn new(shift_step: Rational, degree: Degree, amplitudes: Vec<Rational>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::Unsupported(
                "a train needs at least one amplitude".into(),
            ));
        }
        if let Degree::Finite(n) = degree {
            if n != amplitudes.len() {
                return Err(Error::DimensionMismatch {
                    amplitudes: amplitudes.len(),
                    degree: n,
                });
            }
        }
        Ok(ImpulseSpectralTrain {
            shift_step,
            degree,
            amplitudes,
        })
    }

    /// Finite train whose degree is the amplitude count.
    pub fn finite(shift_step: Rational, amplitudes: Vec<Rational>) -> Result<Self> {
        let degree = Degree::Finite(amplitudes.len());
        Self::new(shift_step, degree, amplitudes)
    }

    /// Endless train repeating `cycle` along the step grid.
    pub fn infinite(shift_step: Rational, cycle: Vec<Rational>) -> Result<Self> {
        Self::new(shift_step, Degree::Infinite, cycle)
    }

    /// A single impulse `amplitude * delta(x - position)`, expressed on an
    /// arithmetic shift grid (zero-padded when the position is not 0).
    pub fn single_impulse(position: Rational, amplitude: Rational) -> Self {
        if position.is_zero() {
            ImpulseSpectralTrain {
                shift_step: Rational::zero(),
                degree: Degree::Finite(1),
                amplitudes: vec![amplitude],
            }
        } else {
            ImpulseSpectralTrain {
                shift_step: position,
                degree: Degree::Finite(2),
                amplitudes: vec![Rational::zero(), amplitude],
            }
        }
    }

    pub fn shift_step(&self) -> &Rational {
        &self.shift_step
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn amplitudes(&self) -> &[Rational] {
        &self.amplitudes
    }

    /// Amplitude of the `n`-th impulse (cyclic for infinite trains).
    pub fn amplitude_at(&self, n: usize) -> &Rational {
        match self.degree {
            Degree::Finite(_) => &self.amplitudes[n],
            Degree::Infinite => &self.amplitudes[n % self.amplitudes.len()],
        }
    }

    /// Adds two finite trains on the same shift grid into a single train,
    /// summing amplitudes where the index ranges overlap and zero-padding
    /// where they do not.
    pub fn add_aligned(&self, other: &Self) -> Result<Self> {
        if self.shift_step != other.shift_step {
            return Err(Error::ShiftMismatch {
                left: self.shift_step.clone(),
                right: other.shift_step.clone(),
            });
        }
        let (n, m) = match (self.degree, other.degree) {
            (Degree::Finite(n), Degree::Finite(m)) => (n, m),
            _ => {
                return Err(Error::Unsupported(
                    "aligned addition of infinite trains".into(),
                ))
            }
        };
        let len = n.max(m);
        let zero = Rational::zero();
        let mut amplitudes = Vec::with_capacity(len);
        for i in 0..len {
            let a = self.amplitudes.get(i).unwrap_or(&zero);
            let b = other.amplitudes.get(i).unwrap_or(&zero);
            amplitudes.push(a + b);
        }
        ImpulseSpectralTrain::finite(self.shift_step.clone(), amplitudes)
    }
}

/// A nested train: the convolution of its factor trains, held symbolically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImpulseSpectralDensity {
    factors: Vec<ImpulseSpectralTrain>,
}

impl ImpulseSpectralDensity {
    pub fn new(factors: Vec<ImpulseSpectralTrain>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Unsupported(
                "a density needs at least one factor train".into(),
            ));
        }
        Ok(ImpulseSpectralDensity { factors })
    }

    pub fn from_train(train: ImpulseSpectralTrain) -> Self {
        ImpulseSpectralDensity {
            factors: vec![train],
        }
    }

    pub fn factors(&self) -> &[ImpulseSpectralTrain] {
        &self.factors
    }

    /// Nesting depth (number of convolved trains).
    pub fn dimension(&self) -> usize {
        self.factors.len()
    }
}

/// A superposition of densities; the empty superposition is the zero element.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ImpulseInterference {
    summands: Vec<ImpulseSpectralDensity>,
}

/// One expanded impulse `amplitude * delta(x - position)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatImpulse {
    pub position: Rational,
    pub amplitude: Rational,
}

/// Fully expanded, canonical impulse list: positions strictly increasing,
/// ties merged by amplitude addition, exact zeros dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FlatTrain(Vec<FlatImpulse>);

impl FlatTrain {
    pub fn empty() -> Self {
        FlatTrain(Vec::new())
    }

    /// Canonicalizes an arbitrary list of `(position, amplitude)` terms.
    pub fn from_pairs(pairs: Vec<(Rational, Rational)>) -> Self {
        let mut merged: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (position, amplitude) in pairs {
            let slot = merged.entry(position).or_insert_with(Rational::zero);
            *slot = &*slot + &amplitude;
        }
        FlatTrain(
            merged
                .into_iter()
                .filter(|(_, a)| !a.is_zero())
                .map(|(position, amplitude)| FlatImpulse {
                    position,
                    amplitude,
                })
                .collect(),
        )
    }

    pub fn impulses(&self) -> &[FlatImpulse] {
        &self.0
    }

    pub fn positions(&self) -> impl Iterator<Item = &Rational> {
        self.0.iter().map(|i| &i.position)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Pointwise merge of two canonical trains.
    pub fn merge(&self, other: &Self) -> Self {
        let pairs = self
            .0
            .iter()
            .chain(other.0.iter())
            .map(|i| (i.position.clone(), i.amplitude.clone()))
            .collect();
        FlatTrain::from_pairs(pairs)
    }
}

impl ImpulseInterference {
    /// The zero element: no summands at all.
    pub fn zero() -> Self {
        ImpulseInterference::default()
    }

    pub fn new(summands: Vec<ImpulseSpectralDensity>) -> Self {
        ImpulseInterference { summands }
    }

    pub fn from_density(density: ImpulseSpectralDensity) -> Self {
        ImpulseInterference {
            summands: vec![density],
        }
    }

    pub fn from_train(train: ImpulseSpectralTrain) -> Self {
        Self::from_density(ImpulseSpectralDensity::from_train(train))
    }

    pub fn summands(&self) -> &[ImpulseSpectralDensity] {
        &self.summands
    }

    /// Superposition: summand sequences concatenated. The canonical flatten of
    /// the result is the pointwise merge of the operands' flattens.
    pub fn add(&self, other: &Self) -> Self {
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        ImpulseInterference { summands }
    }

    /// Scales every impulse by `lambda`. Multiplying one convolution factor
    /// scales the whole product, so only the first factor of each summand is
    /// touched.
    pub fn scalar_mul(&self, lambda: &Rational) -> Self {
        let summands = self
            .summands
            .iter()
            .map(|density| {
                let mut factors = density.factors.clone();
                for a in &mut factors[0].amplitudes {
                    *a = &*a * lambda;
                }
                ImpulseSpectralDensity { factors }
            })
            .collect();
        ImpulseInterference { summands }
    }

    /// Convolution, distributed over both summand lists: positions add,
    /// amplitudes multiply. Held symbolically as factor concatenation.
    pub fn convolve(&self, other: &Self) -> Self {
        let mut summands = Vec::with_capacity(self.summands.len() * other.summands.len());
        for left in &self.summands {
            for right in &other.summands {
                let mut factors = left.factors.clone();
                factors.extend(right.factors.iter().cloned());
                summands.push(ImpulseSpectralDensity { factors });
            }
        }
        ImpulseInterference { summands }
    }

    /// Translates every impulse by `shift`, realized as convolution with a
    /// unit impulse at `shift`.
    pub fn offset(&self, shift: &Rational) -> Self {
        let unit = ImpulseInterference::from_train(ImpulseSpectralTrain::single_impulse(
            shift.clone(),
            Rational::one(),
        ));
        self.convolve(&unit)
    }

    /// Expands into the canonical flat train, restricted to the closed
    /// `window` when one is given. Any infinite train requires a window.
    pub fn flatten(&self, window: Option<&Window>) -> Result<FlatTrain> {
        self.check_expandable(window.is_some())?;
        let mut pairs = Vec::new();
        for density in &self.summands {
            expand_density(density, window, &mut pairs)?;
        }
        Ok(FlatTrain::from_pairs(pairs))
    }

    /// True iff both sides expand to identical canonical trains.
    pub fn equals_canonical(&self, other: &Self, window: Option<&Window>) -> Result<bool> {
        Ok(self.flatten(window)? == other.flatten(window)?)
    }

    fn check_expandable(&self, has_window: bool) -> Result<()> {
        for (si, density) in self.summands.iter().enumerate() {
            let mut inf_sign: Option<bool> = None;
            for (fi, factor) in density.factors.iter().enumerate() {
                if factor.degree().is_infinite() {
                    if factor.shift_step().is_zero() {
                        return Err(Error::DegenerateTrain {
                            summand: si,
                            factor: fi,
                        });
                    }
                    if !has_window {
                        return Err(Error::UnboundedExpansion);
                    }
                    // Two endless trains stepping in opposite directions pile
                    // infinitely many impulses onto single points.
                    let positive = factor.shift_step().is_positive();
                    match inf_sign {
                        Some(prev) if prev != positive => {
                            return Err(Error::DegenerateTrain {
                                summand: si,
                                factor: fi,
                            });
                        }
                        _ => inf_sign = Some(positive),
                    }
                }
            }
        }
        Ok(())
    }
}

impl std::ops::Add<&ImpulseInterference> for &ImpulseInterference {
    type Output = ImpulseInterference;
    fn add(self, rhs: &ImpulseInterference) -> ImpulseInterference {
        ImpulseInterference::add(self, rhs)
    }
}

/// Position range one factor can contribute; `None` bounds are unbounded.
struct FactorRange {
    min: Option<Rational>,
    max: Option<Rational>,
}

fn factor_range(factor: &ImpulseSpectralTrain) -> FactorRange {
    let zero = Rational::zero();
    match factor.degree() {
        Degree::Finite(n) => {
            let last = factor.shift_step() * Rational::integer((n - 1) as i64);
            if last >= zero {
                FactorRange {
                    min: Some(zero),
                    max: Some(last),
                }
            } else {
                FactorRange {
                    min: Some(last),
                    max: Some(zero),
                }
            }
        }
        Degree::Infinite => {
            if factor.shift_step().is_positive() {
                FactorRange {
                    min: Some(zero),
                    max: None,
                }
            } else {
                FactorRange {
                    min: None,
                    max: Some(zero),
                }
            }
        }
    }
}

fn opt_add(a: &Option<Rational>, b: &Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    }
}

/// Expands one density into raw `(position, amplitude)` terms, depth-first
/// over the factor indices with window pruning on partial sums.
fn expand_density(
    density: &ImpulseSpectralDensity,
    window: Option<&Window>,
    out: &mut Vec<(Rational, Rational)>,
) -> Result<()> {
    let factors = density.factors();
    let ranges: Vec<FactorRange> = factors.iter().map(factor_range).collect();

    // suffix_min[j] / suffix_max[j]: bounds on what factors j.. can add.
    let mut suffix_min = vec![Some(Rational::zero()); factors.len() + 1];
    let mut suffix_max = vec![Some(Rational::zero()); factors.len() + 1];
    for j in (0..factors.len()).rev() {
        suffix_min[j] = opt_add(&ranges[j].min, &suffix_min[j + 1]);
        suffix_max[j] = opt_add(&ranges[j].max, &suffix_max[j + 1]);
    }

    struct Dfs<'a> {
        factors: &'a [ImpulseSpectralTrain],
        window: Option<&'a Window>,
        suffix_min: Vec<Option<Rational>>,
        suffix_max: Vec<Option<Rational>>,
        out: &'a mut Vec<(Rational, Rational)>,
    }

    impl Dfs<'_> {
        fn run(&mut self, j: usize, position: Rational, amplitude: Rational) -> Result<()> {
            if j == self.factors.len() {
                if self.window.is_none_or(|w| w.contains(&position)) {
                    if self.out.len() >= EXPANSION_CAP {
                        return Err(Error::Unsupported(format!(
                            "expansion exceeds {EXPANSION_CAP} impulses"
                        )));
                    }
                    self.out.push((position, amplitude));
                }
                return Ok(());
            }
            let factor = &self.factors[j];
            let step = factor.shift_step().clone();
            // The remaining factors contribute within [suffix_min, suffix_max],
            // so this factor's position must land in [need_lo, need_hi].
            let (need_lo, need_hi) = match self.window {
                Some(w) => (
                    self.suffix_max[j + 1]
                        .as_ref()
                        .map(|s| w.lo() - &position - s),
                    self.suffix_min[j + 1]
                        .as_ref()
                        .map(|s| w.hi() - &position - s),
                ),
                None => (None, None),
            };
            let admissible = |p: &Rational| {
                need_lo.as_ref().is_none_or(|lo| p >= lo) && need_hi.as_ref().is_none_or(|hi| p <= hi)
            };
            match factor.degree() {
                Degree::Finite(n) => {
                    for i in 0..n {
                        let amp = factor.amplitude_at(i);
                        if amp.is_zero() {
                            continue;
                        }
                        let p = &step * Rational::integer(i as i64);
                        if admissible(&p) {
                            self.run(j + 1, &position + &p, &amplitude * amp)?;
                        }
                    }
                }
                Degree::Infinite => {
                    // need_hi is finite for positive steps, need_lo for
                    // negative ones; opposite-sign pairs were rejected up
                    // front.
                    let last = if step.is_positive() {
                        let hi = need_hi.clone().expect("windowed expansion");
                        (&hi / &step).floor_u64()
                    } else {
                        let lo = need_lo.clone().expect("windowed expansion");
                        (&lo / &step).floor_u64()
                    };
                    let Some(last) = last else {
                        return Ok(());
                    };
                    if last >= EXPANSION_CAP as u64 {
                        return Err(Error::Unsupported(format!(
                            "expansion exceeds {EXPANSION_CAP} impulses"
                        )));
                    }
                    for i in 0..=last {
                        let amp = factor.amplitude_at(i as usize);
                        if amp.is_zero() {
                            continue;
                        }
                        let p = &step * Rational::from_bigint(i.into());
                        if admissible(&p) {
                            self.run(j + 1, &position + &p, &amplitude * amp)?;
                        }
                    }
                }
            }
            Ok(())
        }
    }

    Dfs {
        factors,
        window,
        suffix_min,
        suffix_max,
        out,
    }
    .run(0, Rational::zero(), Rational::one())
}
