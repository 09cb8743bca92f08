//! Distance sets and the graph of the interval transformation.
//!
//! The extremal duration, viewed as a function of the interval length `d`,
//! is piece-wise constant and changes value only at lengths that occur as
//! differences of impulse positions (or of a position and a window bound).
//! Collecting those lengths — the distance set — and evaluating the extremum
//! at each of them therefore yields the complete graph.

use std::collections::BTreeSet;

use crate::bounds::{max_duration, min_duration, existence_check, BoundResult, Extremum, MaskKind};
use crate::error::{Error, Result};
use crate::impulse::{Degree, ImpulseInterference, Window};
use crate::rational::Rational;

/// All absolute differences of impulse positions and window bounds,
/// strictly increasing. Always contains 0 and the window width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSet(Vec<Rational>);

impl DistanceSet {
    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, d: &Rational) -> bool {
        self.0.binary_search(d).is_ok()
    }
}

/// One evaluated point of the interval transformation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphPoint {
    pub d: Rational,
    pub value: Rational,
    pub witness: Rational,
}

/// The interval transformation of a window: extremal duration as a function
/// of the interval length, evaluated on the window's distance set. Values at
/// intermediate lengths follow from piece-wise constancy; the raw points are
/// the authoritative data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalTransformGraph {
    pub window: Window,
    pub extremum: Extremum,
    pub mask_kind: MaskKind,
    pub points: Vec<GraphPoint>,
}

impl IntervalTransformGraph {
    /// Value at an exact distance-set member, if present.
    pub fn value_at(&self, d: &Rational) -> Option<&Rational> {
        self.points
            .binary_search_by(|p| p.d.cmp(d))
            .ok()
            .map(|i| &self.points[i].value)
    }
}

/// The distance set of `x` over `[a, b]`: `|p - q|` for all `p, q` drawn from
/// the impulse positions inside the window together with the window bounds.
pub fn distance_set(x: &ImpulseInterference, window: &Window) -> Result<DistanceSet> {
    existence_check(x)?;
    let flat = x.flatten(Some(window))?;
    let mut points: Vec<Rational> = flat.positions().cloned().collect();
    points.push(window.lo().clone());
    points.push(window.hi().clone());
    let mut distances = BTreeSet::new();
    for i in 0..points.len() {
        for j in i..points.len() {
            distances.insert((&points[i] - &points[j]).abs());
        }
    }
    Ok(DistanceSet(distances.into_iter().collect()))
}

/// Evaluates the chosen extremum at every distance-set length of the window.
pub fn transform_graph(
    x: &ImpulseInterference,
    window: &Window,
    extremum: Extremum,
    kind: MaskKind,
) -> Result<IntervalTransformGraph> {
    let distances = distance_set(x, window)?;
    let mut points = Vec::with_capacity(distances.len());
    for d in distances.values() {
        let BoundResult { value, witness, .. } = match extremum {
            Extremum::Max => max_duration(x, d, window, kind)?,
            Extremum::Min => min_duration(x, d, window, kind)?,
        };
        points.push(GraphPoint {
            d: d.clone(),
            value,
            witness,
        });
    }
    Ok(IntervalTransformGraph {
        window: window.clone(),
        extremum,
        mask_kind: kind,
        points,
    })
}

/// The stride after which a fully periodic interference repeats: the least
/// common multiple over all endless trains of `|step| * cycle length`.
/// Absent unless every summand contains at least one endless train — a
/// finite interference has no period.
pub fn hyperperiod(x: &ImpulseInterference) -> Result<Option<Rational>> {
    let mut periods: Vec<Rational> = Vec::new();
    let mut every_summand_periodic = !x.summands().is_empty();
    for (si, density) in x.summands().iter().enumerate() {
        let mut summand_has_infinite = false;
        for (fi, factor) in density.factors().iter().enumerate() {
            if factor.degree() == Degree::Infinite {
                if factor.shift_step().is_zero() {
                    return Err(Error::DegenerateTrain {
                        summand: si,
                        factor: fi,
                    });
                }
                summand_has_infinite = true;
                let cycle = Rational::integer(factor.amplitudes().len() as i64);
                periods.push(factor.shift_step().abs() * cycle);
            }
        }
        if !summand_has_infinite {
            every_summand_periodic = false;
        }
    }
    if !every_summand_periodic {
        return Ok(None);
    }
    let mut iter = periods.into_iter();
    let first = iter.next().expect("at least one endless train");
    Ok(Some(iter.fold(first, |acc, p| acc.lcm_positive(&p))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::impulse::{ImpulseSpectralDensity, ImpulseSpectralTrain};

    fn r(n: i64) -> Rational {
        Rational::integer(n)
    }

    fn burst() -> ImpulseInterference {
        let train =
            ImpulseSpectralTrain::finite(r(1), vec![r(0), r(4), r(5), r(6)]).unwrap();
        ImpulseInterference::from_train(train)
    }

    fn window(lo: i64, hi: i64) -> Window {
        Window::new(r(lo), r(hi)).unwrap()
    }

    #[test]
    fn distance_set_of_the_burst() {
        let ds = distance_set(&burst(), &window(0, 4)).unwrap();
        assert_eq!(ds.values(), &[r(0), r(1), r(2), r(3), r(4)]);
    }

    #[test]
    fn distance_set_of_the_empty_interference() {
        let ds = distance_set(&ImpulseInterference::zero(), &window(2, 5)).unwrap();
        assert_eq!(ds.values(), &[r(0), r(3)]);
    }

    #[test]
    fn distance_set_with_a_single_impulse_at_the_window_start() {
        let x = ImpulseInterference::from_train(ImpulseSpectralTrain::single_impulse(
            r(2),
            r(1),
        ));
        let ds = distance_set(&x, &window(2, 5)).unwrap();
        assert_eq!(ds.values(), &[r(0), r(3)]);
    }

    #[test]
    fn max_graph_of_the_burst() {
        let graph =
            transform_graph(&burst(), &window(0, 4), Extremum::Max, MaskKind::ClosedClosed)
                .unwrap();
        let got: Vec<(Rational, Rational, Rational)> = graph
            .points
            .iter()
            .map(|p| (p.d.clone(), p.value.clone(), p.witness.clone()))
            .collect();
        assert_eq!(
            got,
            vec![
                (r(0), r(6), r(3)),
                (r(1), r(11), r(2)),
                (r(2), r(15), r(1)),
                (r(3), r(15), r(0)),
                (r(4), r(15), r(0)),
            ]
        );
    }

    #[test]
    fn graph_of_the_empty_interference_is_zero_everywhere() {
        let graph = transform_graph(
            &ImpulseInterference::zero(),
            &window(0, 4),
            Extremum::Min,
            MaskKind::OpenOpen,
        )
        .unwrap();
        assert!(graph.points.iter().all(|p| p.value == r(0)));
        assert_eq!(graph.points.len(), 2);
    }

    #[test]
    fn graph_values_are_monotone_for_left_anchored_kinds() {
        // Longer masks of the same kind contain shorter ones anchored at the
        // same point, so both the max and the min can only grow with d.
        let cases = [
            (Extremum::Max, MaskKind::ClosedClosed),
            (Extremum::Max, MaskKind::ClosedOpen),
            (Extremum::Min, MaskKind::OpenOpen),
            (Extremum::Min, MaskKind::OpenClosed),
        ];
        for (extremum, kind) in cases {
            let graph = transform_graph(&burst(), &window(0, 4), extremum, kind).unwrap();
            for pair in graph.points.windows(2) {
                assert!(
                    pair[0].value <= pair[1].value,
                    "{extremum} over {kind} masks dipped at d={}",
                    pair[1].d
                );
            }
        }
    }

    #[test]
    fn hyperperiod_of_a_single_comb_is_its_step() {
        let comb = ImpulseSpectralTrain::infinite(r(3), vec![r(1)]).unwrap();
        let x = ImpulseInterference::from_train(comb);
        assert_eq!(hyperperiod(&x).unwrap(), Some(r(3)));
    }

    #[test]
    fn hyperperiod_takes_the_lcm_across_summands() {
        let a = ImpulseSpectralTrain::infinite(r(4), vec![r(1)]).unwrap();
        let b = ImpulseSpectralTrain::infinite(r(6), vec![r(1)]).unwrap();
        let x = ImpulseInterference::new(vec![
            ImpulseSpectralDensity::from_train(a),
            ImpulseSpectralDensity::from_train(b),
        ]);
        assert_eq!(hyperperiod(&x).unwrap(), Some(r(12)));
    }

    #[test]
    fn hyperperiod_multiplies_in_the_cycle_length() {
        let comb = ImpulseSpectralTrain::infinite(r(3), vec![r(1), r(2)]).unwrap();
        let x = ImpulseInterference::from_train(comb);
        assert_eq!(hyperperiod(&x).unwrap(), Some(r(6)));
    }

    #[test]
    fn finite_interferences_have_no_hyperperiod() {
        assert_eq!(hyperperiod(&burst()).unwrap(), None);
        // A summand without any endless factor breaks periodicity.
        let comb = ImpulseSpectralTrain::infinite(r(3), vec![r(1)]).unwrap();
        let x = ImpulseInterference::new(vec![
            ImpulseSpectralDensity::from_train(comb),
            ImpulseSpectralDensity::from_train(
                ImpulseSpectralTrain::finite(r(1), vec![r(1)]).unwrap(),
            ),
        ]);
        assert_eq!(hyperperiod(&x).unwrap(), None);
        assert_eq!(hyperperiod(&ImpulseInterference::zero()).unwrap(), None);
    }

    #[test]
    fn hyperperiod_rejects_stuck_endless_trains() {
        let stuck = ImpulseSpectralTrain::infinite(r(0), vec![r(1)]).unwrap();
        let x = ImpulseInterference::from_train(stuck);
        assert!(matches!(
            hyperperiod(&x),
            Err(Error::DegenerateTrain { .. })
        ));
    }

    #[test]
    fn rational_steps_compose_into_rational_periods() {
        let a = ImpulseSpectralTrain::infinite(Rational::new(3, 2), vec![r(1)]).unwrap();
        let b = ImpulseSpectralTrain::infinite(Rational::new(1, 4), vec![r(1)]).unwrap();
        let x = ImpulseInterference::new(vec![
            ImpulseSpectralDensity::from_train(a),
            ImpulseSpectralDensity::from_train(b),
        ]);
        assert_eq!(hyperperiod(&x).unwrap(), Some(Rational::new(3, 2)));
    }
}
