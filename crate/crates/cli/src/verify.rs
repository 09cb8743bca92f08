//! Oracle cross-checks behind `shirac verify`.
//!
//! The optimized expansion and the test-set extrema are checked against the
//! naive reference implementations, on the bundled specs (or one given on
//! the command line) and on a seeded random suite. A fixed seed reproduces
//! the run bit for bit.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use shirac_core::random::{finite_interference, positive_interference, GenConfig};
use shirac_core::{
    distance_set, existence_check, heaviside_duration, hyperperiod, max_duration, min_duration,
    oracle_extremum, oracle_flatten, Extremum, FlatTrain, HeavisideMask, ImpulseInterference,
    MaskKind, Rational, Window,
};

use crate::CliError;
use crate::spec_file::SpecDocument;

const BUNDLED: &[(&str, &str)] = &[
    ("nested-pair", include_str!("../fixtures/nested_pair.json")),
    ("burst", include_str!("../fixtures/burst.json")),
    ("periodic-pair", include_str!("../fixtures/periodic_pair.json")),
];

const MAX_KINDS: [MaskKind; 3] = [
    MaskKind::ClosedClosed,
    MaskKind::ClosedOpen,
    MaskKind::OpenClosed,
];
const MIN_KINDS: [MaskKind; 3] = [
    MaskKind::OpenOpen,
    MaskKind::OpenClosed,
    MaskKind::ClosedOpen,
];

pub fn run(spec: Option<&Path>, seed: u64, cases: usize) -> Result<(), CliError> {
    let mut checks = 0usize;
    match spec {
        Some(path) => {
            let x = crate::load_interference(path)?;
            checks += battery(&path.display().to_string(), &x)?;
        }
        None => {
            for (name, text) in BUNDLED {
                let x = SpecDocument::parse(text)?.into_interference()?;
                checks += battery(name, &x)?;
            }
            checks += random_suite(seed, cases)?;
        }
    }
    println!("all {checks} checks passed (seed {seed})");
    Ok(())
}

fn fail(name: &str, what: &str) -> CliError {
    CliError::Failed(format!("{name}: {what}"))
}

/// Duration computed the slow way: naive expansion plus inline membership.
fn reference_duration(
    x: &ImpulseInterference,
    lo: &Rational,
    hi: &Rational,
    kind: MaskKind,
) -> Result<Rational, CliError> {
    let window = Window::new(lo.clone(), hi.clone())?;
    let expanded = oracle_flatten(x, Some(&window))?;
    let mut total = Rational::zero();
    for imp in expanded.impulses() {
        let lo_ok = if kind.lo_closed() {
            &imp.position >= lo
        } else {
            &imp.position > lo
        };
        let hi_ok = if kind.hi_closed() {
            &imp.position <= hi
        } else {
            &imp.position < hi
        };
        if lo_ok && hi_ok {
            total = total + &imp.amplitude;
        }
    }
    Ok(total)
}

/// Picks the analysis window for a spec: one doubled period for fully
/// periodic specs, a fixed span when endless trains are present, the
/// impulse hull otherwise.
fn analysis_window(x: &ImpulseInterference) -> Result<Window, CliError> {
    if let Some(period) = hyperperiod(x)? {
        return Ok(Window::new(Rational::zero(), Rational::integer(2) * period)?);
    }
    let has_endless = x
        .summands()
        .iter()
        .any(|d| d.factors().iter().any(|f| f.degree().is_infinite()));
    if has_endless {
        return Ok(Window::new(Rational::zero(), Rational::integer(20))?);
    }
    let flat = x.flatten(None)?;
    let hull = match (flat.positions().next(), flat.positions().last()) {
        (Some(lo), Some(hi)) => Window::new(lo.clone(), hi.clone()),
        _ => Window::new(Rational::zero(), Rational::one()),
    };
    Ok(hull?)
}

fn battery(name: &str, x: &ImpulseInterference) -> Result<usize, CliError> {
    existence_check(x)?;
    let window = analysis_window(x)?;
    let mut checks = 0usize;

    let flat = x.flatten(Some(&window))?;
    if flat != oracle_flatten(x, Some(&window))? {
        return Err(fail(name, "expansion disagrees with the naive reference"));
    }
    checks += 1;

    // Negative amplitudes are fine for the algebra but outside the scope of
    // bound analysis; stop after the expansion check.
    if flat.impulses().iter().any(|i| i.amplitude.is_negative()) {
        return Ok(checks);
    }

    for kind in MaskKind::ALL {
        let mask = HeavisideMask::new(window.lo().clone(), window.hi().clone(), kind)?;
        let got = heaviside_duration(x, &mask)?;
        if got != reference_duration(x, window.lo(), window.hi(), kind)? {
            return Err(fail(name, &format!("duration over {kind} mask disagrees")));
        }
        checks += 1;
    }

    let distances = distance_set(x, &window)?;
    let stride = (distances.len() / 5).max(1);
    for d in distances.values().iter().step_by(stride) {
        for kind in MAX_KINDS {
            let fast = max_duration(x, d, &window, kind)?;
            let slow = oracle_extremum(x, d, &window, kind, Extremum::Max)?;
            if fast.value != slow.value {
                return Err(fail(name, &format!("max over {kind} masks at d={d}")));
            }
            checks += 1;
        }
        for kind in MIN_KINDS {
            let fast = min_duration(x, d, &window, kind)?;
            let slow = oracle_extremum(x, d, &window, kind, Extremum::Min)?;
            if fast.value != slow.value {
                return Err(fail(name, &format!("min over {kind} masks at d={d}")));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

fn random_suite(seed: u64, cases: usize) -> Result<usize, CliError> {
    let algebra_cfg = GenConfig {
        max_summands: 2,
        max_factors: 2,
        max_degree: 3,
        ..GenConfig::default()
    };
    let bound_cfg = GenConfig {
        max_summands: 3,
        max_factors: 2,
        max_degree: 3,
        ..GenConfig::positive()
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0usize;
    for case in 0..cases {
        let name = format!("random case {case}");

        let a = finite_interference(&mut rng, &algebra_cfg);
        let b = finite_interference(&mut rng, &algebra_cfg);
        let fa = a.flatten(None)?;
        let fb = b.flatten(None)?;
        let mut pairs = Vec::new();
        for i in fa.impulses() {
            for j in fb.impulses() {
                pairs.push((&i.position + &j.position, &i.amplitude * &j.amplitude));
            }
        }
        if a.convolve(&b).flatten(None)? != FlatTrain::from_pairs(pairs) {
            return Err(fail(&name, "convolution disagrees with the cross product"));
        }
        checks += 1;
        if a.add(&b).flatten(None)? != fa.merge(&fb) {
            return Err(fail(&name, "superposition disagrees with the merge"));
        }
        checks += 1;
        if a.flatten(None)? != oracle_flatten(&a, None)? {
            return Err(fail(&name, "expansion disagrees with the naive reference"));
        }
        checks += 1;

        let x = positive_interference(&mut rng, &bound_cfg);
        let window = Window::new(
            Rational::zero(),
            Rational::new(rng.gen_range(8..=24), 2),
        )?;
        for kind in MaskKind::ALL {
            let mask = HeavisideMask::new(window.lo().clone(), window.hi().clone(), kind)?;
            if heaviside_duration(&x, &mask)?
                != reference_duration(&x, window.lo(), window.hi(), kind)?
            {
                return Err(fail(&name, &format!("duration over {kind} mask")));
            }
            checks += 1;
        }
        let distances = distance_set(&x, &window)?;
        let pick = rng.gen_range(0..distances.len());
        let d = &distances.values()[pick];
        for kind in MAX_KINDS {
            let fast = max_duration(&x, d, &window, kind)?;
            let slow = oracle_extremum(&x, d, &window, kind, Extremum::Max)?;
            if fast.value != slow.value {
                return Err(fail(&name, &format!("max over {kind} masks at d={d}")));
            }
            checks += 1;
        }
        for kind in MIN_KINDS {
            let fast = min_duration(&x, d, &window, kind)?;
            let slow = oracle_extremum(&x, d, &window, kind, Extremum::Min)?;
            if fast.value != slow.value {
                return Err(fail(&name, &format!("min over {kind} masks at d={d}")));
            }
            checks += 1;
        }
    }
    Ok(checks)
}
