//! Window masks, the discretized event bound, and its window extrema.
//!
//! The discretized bound of an interference over a mask is simply the sum of
//! the amplitudes of the impulses inside the mask; see
//! [`heaviside_duration`]. Its extremum over all mask placements inside an
//! analysis window is found exactly by evaluating finitely many candidate
//! anchors: the impulse positions themselves (suitably shifted for
//! right-anchored kinds) plus the window edges. Between those candidates the
//! bound is constant, so the scan is exhaustive, not heuristic.
//!
//! Maxima are supported for `[x, x+d]`, `[x, x+d)` and `(x, x+d]` masks,
//! minima for `(x, x+d)`, `(x, x+d]` and `[x, x+d)`. The remaining two
//! combinations have no finite test set here and are rejected.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::impulse::{FlatTrain, ImpulseInterference, Window};
use crate::rational::Rational;

/// The four open/closed endpoint combinations of a mask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MaskKind {
    ClosedClosed,
    ClosedOpen,
    OpenClosed,
    OpenOpen,
}

impl MaskKind {
    pub const ALL: [MaskKind; 4] = [
        MaskKind::ClosedClosed,
        MaskKind::ClosedOpen,
        MaskKind::OpenClosed,
        MaskKind::OpenOpen,
    ];

    pub fn lo_closed(self) -> bool {
        matches!(self, MaskKind::ClosedClosed | MaskKind::ClosedOpen)
    }

    pub fn hi_closed(self) -> bool {
        matches!(self, MaskKind::ClosedClosed | MaskKind::OpenClosed)
    }

    /// Two-letter code used on the command line: `cc`, `co`, `oc`, `oo`.
    pub fn code(self) -> &'static str {
        match self {
            MaskKind::ClosedClosed => "cc",
            MaskKind::ClosedOpen => "co",
            MaskKind::OpenClosed => "oc",
            MaskKind::OpenOpen => "oo",
        }
    }
}

impl std::str::FromStr for MaskKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "cc" => Ok(MaskKind::ClosedClosed),
            "co" => Ok(MaskKind::ClosedOpen),
            "oc" => Ok(MaskKind::OpenClosed),
            "oo" => Ok(MaskKind::OpenOpen),
            other => Err(format!(
                "unknown mask kind '{other}': expected cc, co, oc or oo"
            )),
        }
    }
}

impl std::fmt::Display for MaskKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            MaskKind::ClosedClosed => "closed-closed",
            MaskKind::ClosedOpen => "closed-open",
            MaskKind::OpenClosed => "open-closed",
            MaskKind::OpenOpen => "open-open",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extremum {
    Max,
    Min,
}

impl std::fmt::Display for Extremum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Extremum::Max => "the maximum",
            Extremum::Min => "the minimum",
        })
    }
}

/// A window `[a, b]` with per-endpoint open/closed flags, selecting the
/// impulses whose positions it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeavisideMask {
    lo: Rational,
    hi: Rational,
    lo_closed: bool,
    hi_closed: bool,
}

impl HeavisideMask {
    pub fn new(lo: Rational, hi: Rational, kind: MaskKind) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInterval { lo, hi });
        }
        Ok(HeavisideMask {
            lo,
            hi,
            lo_closed: kind.lo_closed(),
            hi_closed: kind.hi_closed(),
        })
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, MaskKind::ClosedClosed)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn kind(&self) -> MaskKind {
        match (self.lo_closed, self.hi_closed) {
            (true, true) => MaskKind::ClosedClosed,
            (true, false) => MaskKind::ClosedOpen,
            (false, true) => MaskKind::OpenClosed,
            (false, false) => MaskKind::OpenOpen,
        }
    }

    /// Samples the mask at `position`: 1 inside, 0 outside, with the
    /// endpoint flags deciding the boundary.
    pub fn contains(&self, position: &Rational) -> bool {
        let lo_ok = if self.lo_closed {
            position >= &self.lo
        } else {
            position > &self.lo
        };
        let hi_ok = if self.hi_closed {
            position <= &self.hi
        } else {
            position < &self.hi
        };
        lo_ok && hi_ok
    }
}

/// An extremal bound value together with an anchor that attains it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub value: Rational,
    /// Smallest anchor in `[w1, w2 - d]` attaining the extremum.
    pub witness: Rational,
    /// Set when `d` exceeded the window width and the single mask anchored at
    /// the window start was evaluated instead.
    pub window_clamped: bool,
}

/// Extrema exist only when no point accumulates infinitely many impulses:
/// every factor train must have a finite degree or a non-zero shift step.
pub fn existence_check(x: &ImpulseInterference) -> Result<()> {
    for (si, density) in x.summands().iter().enumerate() {
        for (fi, factor) in density.factors().iter().enumerate() {
            if factor.degree().is_infinite() && factor.shift_step().is_zero() {
                return Err(Error::DegenerateTrain {
                    summand: si,
                    factor: fi,
                });
            }
        }
    }
    Ok(())
}

fn check_non_negative(flat: &FlatTrain) -> Result<()> {
    for imp in flat.impulses() {
        if imp.amplitude.is_negative() {
            return Err(Error::NegativeAmplitude {
                position: imp.position.clone(),
                amplitude: imp.amplitude.clone(),
            });
        }
    }
    Ok(())
}

fn sum_in_mask(flat: &FlatTrain, mask: &HeavisideMask) -> Rational {
    let mut total = Rational::zero();
    for imp in flat.impulses() {
        if mask.contains(&imp.position) {
            total = total + &imp.amplitude;
        }
    }
    total
}

/// The discretized event bound: the sum of the amplitudes of the impulses of
/// `x` inside `mask`. Exactly equal to the integral form it replaces.
pub fn heaviside_duration(x: &ImpulseInterference, mask: &HeavisideMask) -> Result<Rational> {
    existence_check(x)?;
    let window = Window::new(mask.lo().clone(), mask.hi().clone())?;
    let flat = x.flatten(Some(&window))?;
    for imp in flat.impulses() {
        if mask.contains(&imp.position) && imp.amplitude.is_negative() {
            return Err(Error::NegativeAmplitude {
                position: imp.position.clone(),
                amplitude: imp.amplitude.clone(),
            });
        }
    }
    Ok(sum_in_mask(&flat, mask))
}

/// Maximum of the duration over all masks of length `d` and the given kind
/// anchored inside `window`. Supported kinds: closed-closed, closed-open
/// (left-anchored test set) and open-closed (right-anchored test set).
pub fn max_duration(
    x: &ImpulseInterference,
    d: &Rational,
    window: &Window,
    kind: MaskKind,
) -> Result<BoundResult> {
    if kind == MaskKind::OpenOpen {
        return Err(Error::UnsupportedMaskKind {
            kind,
            extremum: Extremum::Max,
        });
    }
    extremal_duration(x, d, window, kind, Extremum::Max)
}

/// Minimum of the duration over all masks of length `d` and the given kind
/// anchored inside `window`. Supported kinds: open-open, open-closed
/// (left-anchored test set) and closed-open (right-anchored test set).
pub fn min_duration(
    x: &ImpulseInterference,
    d: &Rational,
    window: &Window,
    kind: MaskKind,
) -> Result<BoundResult> {
    if kind == MaskKind::ClosedClosed {
        return Err(Error::UnsupportedMaskKind {
            kind,
            extremum: Extremum::Min,
        });
    }
    extremal_duration(x, d, window, kind, Extremum::Min)
}

/// For these (extremum, kind) pairs the candidate anchors are the impulse
/// positions shifted left by `d` (the mask's right edge sweeps the
/// impulses); for the others the positions themselves are the anchors.
fn right_anchored(extremum: Extremum, kind: MaskKind) -> bool {
    matches!(
        (extremum, kind),
        (Extremum::Max, MaskKind::OpenClosed) | (Extremum::Min, MaskKind::ClosedOpen)
    )
}

fn extremal_duration(
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
    let flat = x.flatten(Some(&Window::new(w1.clone(), enum_hi)?))?;
    check_non_negative(&flat)?;

    if clamped {
        // Not a single full mask fits; report the one anchored at the start.
        let mask = HeavisideMask::new(w1.clone(), w1 + d, kind)?;
        return Ok(BoundResult {
            value: sum_in_mask(&flat, &mask),
            witness: w1.clone(),
            window_clamped: true,
        });
    }

    let last_anchor = w2 - d;
    let mut anchors: BTreeSet<Rational> = BTreeSet::new();
    anchors.insert(w1.clone());
    anchors.insert(last_anchor.clone());
    for p in flat.positions() {
        let anchor = if right_anchored(extremum, kind) {
            p - d
        } else {
            p.clone()
        };
        if &anchor >= w1 && anchor <= last_anchor {
            anchors.insert(anchor);
        }
    }

    let mut best: Option<BoundResult> = None;
    for anchor in anchors {
        let mask = HeavisideMask::new(anchor.clone(), &anchor + d, kind)?;
        let value = sum_in_mask(&flat, &mask);
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
    Ok(best.expect("anchor set is never empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::impulse::{ImpulseSpectralDensity, ImpulseSpectralTrain};

    fn r(n: i64) -> Rational {
        Rational::integer(n)
    }

    /// 4 d@1 + 5 d@2 + 6 d@3.
    fn burst() -> ImpulseInterference {
        let train =
            ImpulseSpectralTrain::finite(r(1), vec![r(0), r(4), r(5), r(6)]).unwrap();
        ImpulseInterference::from_train(train)
    }

    fn window(lo: i64, hi: i64) -> Window {
        Window::new(r(lo), r(hi)).unwrap()
    }

    #[test]
    fn mask_sampling_respects_endpoint_flags() {
        let closed = HeavisideMask::closed(r(2), r(4)).unwrap();
        assert!(!closed.contains(&r(1)));
        assert!(closed.contains(&r(2)));
        assert!(closed.contains(&r(3)));
        assert!(closed.contains(&r(4)));

        let open_lo = HeavisideMask::new(r(2), r(4), MaskKind::OpenClosed).unwrap();
        assert!(!open_lo.contains(&r(2)));

        for kind in MaskKind::ALL {
            let mask = HeavisideMask::new(r(2), r(4), kind).unwrap();
            assert!(mask.contains(&r(3)));
        }
    }

    #[test]
    fn mask_rejects_reversed_bounds() {
        assert!(matches!(
            HeavisideMask::closed(r(4), r(2)),
            Err(Error::InvalidInterval { .. })
        ));
    }

    #[test]
    fn duration_of_the_burst_over_a_closed_mask() {
        let mask = HeavisideMask::closed(r(2), r(4)).unwrap();
        assert_eq!(heaviside_duration(&burst(), &mask).unwrap(), r(11));
    }

    #[test]
    fn duration_excludes_open_endpoints() {
        let mask = HeavisideMask::new(r(2), r(4), MaskKind::OpenClosed).unwrap();
        assert_eq!(heaviside_duration(&burst(), &mask).unwrap(), r(6));
    }

    #[test]
    fn duration_of_a_point_mask_away_from_impulses_is_zero() {
        let mask = HeavisideMask::closed(r(5), r(5)).unwrap();
        assert_eq!(heaviside_duration(&burst(), &mask).unwrap(), r(0));
    }

    #[test]
    fn duration_rejects_negative_amplitudes_inside_the_mask() {
        let train = ImpulseSpectralTrain::finite(r(1), vec![r(1), r(-2)]).unwrap();
        let x = ImpulseInterference::from_train(train);
        let mask = HeavisideMask::closed(r(0), r(5)).unwrap();
        assert!(matches!(
            heaviside_duration(&x, &mask),
            Err(Error::NegativeAmplitude { .. })
        ));
        // Outside the mask the negative amplitude is nobody's business.
        let mask = HeavisideMask::closed(r(0), r(0)).unwrap();
        assert_eq!(heaviside_duration(&x, &mask).unwrap(), r(1));
    }

    #[test]
    fn existence_check_flags_stuck_infinite_trains() {
        let stuck = ImpulseSpectralTrain::infinite(r(0), vec![r(1)]).unwrap();
        let fine = ImpulseSpectralTrain::infinite(r(3), vec![r(1)]).unwrap();
        let x = ImpulseInterference::new(vec![
            ImpulseSpectralDensity::from_train(fine.clone()),
            ImpulseSpectralDensity::new(vec![fine, stuck]).unwrap(),
        ]);
        assert_eq!(
            existence_check(&x),
            Err(Error::DegenerateTrain {
                summand: 1,
                factor: 1
            })
        );
        assert!(existence_check(&burst()).is_ok());
    }

    #[test]
    fn max_duration_of_the_burst() {
        let got = max_duration(&burst(), &r(1), &window(0, 4), MaskKind::ClosedClosed).unwrap();
        assert_eq!(got.value, r(11));
        assert_eq!(got.witness, r(2));
        assert!(!got.window_clamped);
    }

    #[test]
    fn max_duration_with_zero_length_masks_finds_the_largest_amplitude() {
        let got = max_duration(&burst(), &r(0), &window(0, 4), MaskKind::ClosedClosed).unwrap();
        assert_eq!(got.value, r(6));
        assert_eq!(got.witness, r(3));
    }

    #[test]
    fn max_duration_of_the_empty_interference_is_zero_at_the_window_start() {
        let zero = ImpulseInterference::zero();
        let got = max_duration(&zero, &r(1), &window(0, 4), MaskKind::ClosedClosed).unwrap();
        assert_eq!(got.value, r(0));
        assert_eq!(got.witness, r(0));
    }

    #[test]
    fn max_duration_right_anchored_kind() {
        let got = max_duration(&burst(), &r(1), &window(0, 4), MaskKind::OpenClosed).unwrap();
        assert_eq!(got.value, r(6));
        assert_eq!(got.witness, r(2));
    }

    #[test]
    fn min_duration_open_open_finds_the_empty_gap() {
        let got = min_duration(&burst(), &r(1), &window(0, 4), MaskKind::OpenOpen).unwrap();
        assert_eq!(got.value, r(0));
        assert_eq!(got.witness, r(0));
    }

    #[test]
    fn min_duration_open_closed_scans_the_left_test_set() {
        let got = min_duration(&burst(), &r(1), &window(0, 4), MaskKind::OpenClosed).unwrap();
        assert_eq!(got.value, r(0));
        assert_eq!(got.witness, r(3));
    }

    #[test]
    fn min_duration_closed_open_right_anchored() {
        let got = min_duration(&burst(), &r(1), &window(0, 4), MaskKind::ClosedOpen).unwrap();
        assert_eq!(got.value, r(0));
        assert_eq!(got.witness, r(0));
    }

    #[test]
    fn uncovered_extremum_kind_pairs_are_rejected() {
        assert!(matches!(
            max_duration(&burst(), &r(1), &window(0, 4), MaskKind::OpenOpen),
            Err(Error::UnsupportedMaskKind {
                kind: MaskKind::OpenOpen,
                extremum: Extremum::Max,
            })
        ));
        assert!(matches!(
            min_duration(&burst(), &r(1), &window(0, 4), MaskKind::ClosedClosed),
            Err(Error::UnsupportedMaskKind {
                kind: MaskKind::ClosedClosed,
                extremum: Extremum::Min,
            })
        ));
    }

    #[test]
    fn oversized_masks_clamp_to_the_window_start() {
        let got = max_duration(&burst(), &r(10), &window(0, 4), MaskKind::ClosedClosed).unwrap();
        assert_eq!(got.value, r(15));
        assert_eq!(got.witness, r(0));
        assert!(got.window_clamped);
    }

    #[test]
    fn extrema_reject_negative_amplitudes() {
        let train = ImpulseSpectralTrain::finite(r(1), vec![r(1), r(-2)]).unwrap();
        let x = ImpulseInterference::from_train(train);
        assert!(matches!(
            max_duration(&x, &r(1), &window(0, 4), MaskKind::ClosedClosed),
            Err(Error::NegativeAmplitude { .. })
        ));
    }

    #[test]
    fn positive_scaling_scales_the_extremum_and_keeps_the_witness() {
        let x = burst();
        let scaled = x.scalar_mul(&r(3));
        let base = max_duration(&x, &r(2), &window(0, 4), MaskKind::ClosedClosed).unwrap();
        let big = max_duration(&scaled, &r(2), &window(0, 4), MaskKind::ClosedClosed).unwrap();
        assert_eq!(big.value, r(3) * base.value);
        assert_eq!(big.witness, base.witness);
    }
}
