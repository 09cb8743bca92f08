//! Naive reference implementations for differential testing.
//!
//! Both functions here recompute their answers from first principles —
//! full index enumeration and exhaustive anchor scans — without touching the
//! pruned expansion or the test-set selection they are used to check. They
//! are quadratic or worse on purpose; keep them that way.

use crate::bounds::{existence_check, BoundResult, Extremum, MaskKind};
use crate::error::{Error, Result};
use crate::impulse::{Degree, FlatTrain, ImpulseInterference, ImpulseSpectralTrain, Window};
use crate::rational::Rational;

/// Expands an interference by looping over every summand, factor and index,
/// then sorting and merging at the end. Must agree with
/// [`ImpulseInterference::flatten`] wherever both are defined.
pub fn oracle_flatten(x: &ImpulseInterference, window: Option<&Window>) -> Result<FlatTrain> {
    let mut terms: Vec<(Rational, Rational)> = Vec::new();
    for (si, density) in x.summands().iter().enumerate() {
        let factors = density.factors();

        let mut sign: Option<bool> = None;
        for (fi, factor) in factors.iter().enumerate() {
            if factor.degree().is_infinite() {
                if factor.shift_step().is_zero() {
                    return Err(Error::DegenerateTrain {
                        summand: si,
                        factor: fi,
                    });
                }
                let positive = factor.shift_step().is_positive();
                if sign.is_some_and(|prev| prev != positive) {
                    return Err(Error::DegenerateTrain {
                        summand: si,
                        factor: fi,
                    });
                }
                sign = Some(positive);
                if window.is_none() {
                    return Err(Error::UnboundedExpansion);
                }
            }
        }

        // Materialize every factor's impulse list, then take the full
        // Cartesian product and filter by the window afterwards.
        let mut lists: Vec<Vec<(Rational, Rational)>> = Vec::with_capacity(factors.len());
        for (fi, factor) in factors.iter().enumerate() {
            lists.push(factor_impulses(factor, fi, factors, window)?);
        }
        let mut stack: Vec<(Rational, Rational)> = vec![(Rational::zero(), Rational::one())];
        for list in &lists {
            let mut next = Vec::with_capacity(stack.len() * list.len());
            for (pos, amp) in &stack {
                for (p, a) in list {
                    next.push((pos + p, amp * a));
                }
            }
            stack = next;
        }
        for (pos, amp) in stack {
            if window.is_none_or(|w| w.contains(&pos)) {
                terms.push((pos, amp));
            }
        }
    }

    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(Rational, Rational)> = Vec::new();
    for (pos, amp) in terms {
        match merged.last_mut() {
            Some((last_pos, last_amp)) if *last_pos == pos => {
                *last_amp = &*last_amp + &amp;
            }
            _ => merged.push((pos, amp)),
        }
    }
    merged.retain(|(_, amp)| !amp.is_zero());
    Ok(FlatTrain::from_pairs(merged))
}

/// Every impulse one factor can contribute to a sum landing in the window.
/// For endless trains the index range is capped by how little the other
/// factors can contribute.
fn factor_impulses(
    factor: &ImpulseSpectralTrain,
    index: usize,
    all: &[ImpulseSpectralTrain],
    window: Option<&Window>,
) -> Result<Vec<(Rational, Rational)>> {
    let step = factor.shift_step();
    let last = match factor.degree() {
        Degree::Finite(n) => n as u64 - 1,
        Degree::Infinite => {
            let w = window.expect("checked above");
            let quotient = if step.is_positive() {
                let mut others_min = Rational::zero();
                for (k, other) in all.iter().enumerate() {
                    if k != index {
                        others_min = others_min + finite_min_position(other);
                    }
                }
                (w.hi() - &others_min) / step
            } else {
                let mut others_max = Rational::zero();
                for (k, other) in all.iter().enumerate() {
                    if k != index {
                        others_max = others_max + finite_max_position(other);
                    }
                }
                (w.lo() - &others_max) / step
            };
            match quotient.floor_u64() {
                Some(n) => n,
                None => return Ok(Vec::new()),
            }
        }
    };
    let mut out = Vec::new();
    for n in 0..=last {
        let position = step * Rational::from_bigint(n.into());
        out.push((position, factor.amplitude_at(n as usize).clone()));
    }
    Ok(out)
}

fn finite_min_position(factor: &ImpulseSpectralTrain) -> Rational {
    match factor.degree() {
        Degree::Finite(n) => {
            let last = factor.shift_step() * Rational::integer(n as i64 - 1);
            if last.is_negative() {
                last
            } else {
                Rational::zero()
            }
        }
        // Same-sign requirement makes 0 the floor for positive combs.
        Degree::Infinite => Rational::zero(),
    }
}

fn finite_max_position(factor: &ImpulseSpectralTrain) -> Rational {
    match factor.degree() {
        Degree::Finite(n) => {
            let last = factor.shift_step() * Rational::integer(n as i64 - 1);
            if last.is_positive() {
                last
            } else {
                Rational::zero()
            }
        }
        Degree::Infinite => Rational::zero(),
    }
}

fn in_mask(position: &Rational, lo: &Rational, hi: &Rational, kind: MaskKind) -> bool {
    let lo_ok = if kind.lo_closed() {
        position >= lo
    } else {
        position > lo
    };
    let hi_ok = if kind.hi_closed() {
        position <= hi
    } else {
        position < hi
    };
    lo_ok && hi_ok
}

fn duration_at(flat: &FlatTrain, anchor: &Rational, d: &Rational, kind: MaskKind) -> Rational {
    let hi = anchor + d;
    let mut total = Rational::zero();
    for imp in flat.impulses() {
        if in_mask(&imp.position, anchor, &hi, kind) {
            total = total + &imp.amplitude;
        }
    }
    total
}

/// Exhaustive extremum scan over every critical anchor — impulse positions,
/// positions shifted left by `d`, the window edges — and the midpoint of
/// each consecutive pair. The duration is constant between critical anchors,
/// so this sweep sees every value the duration takes. Accepts all four mask
/// kinds.
pub fn oracle_extremum(
    x: &ImpulseInterference,
    d: &Rational,
    window: &Window,
    kind: MaskKind,
    extremum: Extremum,
) -> Result<BoundResult> {
    if d.is_negative() {
        return Err(Error::Unsupported(
            "interval length must be non-negative".into(),
        ));
    }
    existence_check(x)?;
    let (w1, w2) = (window.lo(), window.hi());
    let clamped = d > &window.width();
    let enum_hi = if clamped { w1 + d } else { w2.clone() };
    let flat = oracle_flatten(x, Some(&Window::new(w1.clone(), enum_hi)?))?;
    for imp in flat.impulses() {
        if imp.amplitude.is_negative() {
            return Err(Error::NegativeAmplitude {
                position: imp.position.clone(),
                amplitude: imp.amplitude.clone(),
            });
        }
    }

    if clamped {
        return Ok(BoundResult {
            value: duration_at(&flat, w1, d, kind),
            witness: w1.clone(),
            window_clamped: true,
        });
    }

    let last_anchor = w2 - d;
    let mut critical: Vec<Rational> = vec![w1.clone(), last_anchor.clone()];
    for p in flat.positions() {
        critical.push(p.clone());
        critical.push(p - d);
    }
    critical.retain(|a| a >= w1 && a <= &last_anchor);
    critical.sort();
    critical.dedup();

    let mut anchors = Vec::with_capacity(critical.len() * 2);
    for pair in critical.windows(2) {
        anchors.push(pair[0].clone());
        anchors.push((&pair[0] + &pair[1]) / Rational::integer(2));
    }
    anchors.push(critical.last().expect("window edges present").clone());

    let mut best: Option<BoundResult> = None;
    for anchor in anchors {
        let value = duration_at(&flat, &anchor, d, kind);
        let better = match &best {
            None => true,
            Some(b) => match extremum {
                Extremum::Max => value > b.value,
                Extremum::Min => value < b.value,
            },
        };
        if better {
            best = Some(BoundResult {
                value,
                witness: anchor,
                window_clamped: false,
            });
        }
    }
    Ok(best.expect("anchor list is never empty"))
}
