//! Interference specification files.
//!
//! A spec is a JSON document with exact numerals: every rational is written
//! as a string — an integer `"7"`, a fraction `"3/2"` or a decimal `"0.25"`.
//! Binary floats are rejected at parse time so nothing ever rounds.
//!
//! Two bodies are accepted. The `matrices` form mirrors the construction
//! grids: per-cell amplitude vectors, per-cell shift steps and a degree
//! grid. The `summands` form lists densities directly: each summand is a
//! list of factor trains (`step`, `degree` or `"inf"`, `amplitudes` or a
//! `cycle` for endless trains) plus an optional per-summand `offset`.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;
use shirac_core::{
    build_interference, AmplitudeVector, ConstructionMatrices, ImpulseInterference,
    ImpulseSpectralDensity, ImpulseSpectralTrain, Rational, ShiftVector,
};

/// Errors reading a spec file; these are input errors, not domain errors.
#[derive(Debug)]
pub struct SpecError(pub String);

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "spec error: {}", self.0)
    }
}

impl std::error::Error for SpecError {}

/// A rational numeral; deserializes from a string only.
#[derive(Debug, Clone)]
pub struct Numeral(pub Rational);

impl<'de> Deserialize<'de> for Numeral {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct NumeralVisitor;
        impl Visitor<'_> for NumeralVisitor {
            type Value = Numeral;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an exact numeral string like \"7\", \"3/2\" or \"0.25\"")
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<Numeral, E> {
                Rational::from_str(s)
                    .map(Numeral)
                    .map_err(|e| E::custom(e.to_string()))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Numeral, E> {
                Err(E::custom(format!(
                    "binary float {v} rejected: write numerals as strings (\"3/2\", \"0.25\")"
                )))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Numeral, E> {
                Err(E::custom(format!(
                    "bare number {v} rejected: write numerals as strings (\"{v}\")"
                )))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Numeral, E> {
                Err(E::custom(format!(
                    "bare number {v} rejected: write numerals as strings (\"{v}\")"
                )))
            }
        }
        deserializer.deserialize_any(NumeralVisitor)
    }
}

/// A degree: a positive integer or the string `"inf"`.
#[derive(Debug, Clone, Copy)]
pub enum DegreeSpec {
    Finite(usize),
    Infinite,
}

impl<'de> Deserialize<'de> for DegreeSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct DegreeVisitor;
        impl Visitor<'_> for DegreeVisitor {
            type Value = DegreeSpec;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<DegreeSpec, E> {
                if v == 0 {
                    return Err(E::custom("degree must be at least 1"));
                }
                Ok(DegreeSpec::Finite(v as usize))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<DegreeSpec, E> {
                if v <= 0 {
                    return Err(E::custom("degree must be at least 1"));
                }
                Ok(DegreeSpec::Finite(v as usize))
            }

            fn visit_str<E: de::Error>(self, s: &str) -> Result<DegreeSpec, E> {
                if s == "inf" {
                    Ok(DegreeSpec::Infinite)
                } else {
                    Err(E::custom(format!("unknown degree '{s}': expected \"inf\"")))
                }
            }
        }
        deserializer.deserialize_any(DegreeVisitor)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDocument {
    pub version: u32,
    #[serde(default)]
    pub matrices: Option<MatrixSpec>,
    #[serde(default)]
    pub summands: Option<Vec<SummandSpec>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    /// `amplitudes[row][col]` is the amplitude vector of that cell.
    pub amplitudes: Vec<Vec<Vec<Numeral>>>,
    /// `steps[row][col]` is the shift step of that cell.
    pub steps: Vec<Vec<Numeral>>,
    /// `degrees[row][col]` is the impulse count of that cell.
    pub degrees: Vec<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandSpec {
    #[serde(default)]
    pub offset: Option<Numeral>,
    pub factors: Vec<FactorSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorSpec {
    pub step: Numeral,
    pub degree: DegreeSpec,
    #[serde(default)]
    pub amplitudes: Option<Vec<Numeral>>,
    /// Alternative spelling of `amplitudes` for endless trains.
    #[serde(default)]
    pub cycle: Option<Vec<Numeral>>,
}

impl SpecDocument {
    pub fn parse(text: &str) -> Result<Self, SpecError> {
        let doc: SpecDocument =
            serde_json::from_str(text).map_err(|e| SpecError(e.to_string()))?;
        if doc.version != 1 {
            return Err(SpecError(format!(
                "unsupported spec version {} (expected 1)",
                doc.version
            )));
        }
        match (&doc.matrices, &doc.summands) {
            (Some(_), Some(_)) => Err(SpecError(
                "give either 'matrices' or 'summands', not both".into(),
            )),
            (None, None) => Err(SpecError(
                "missing body: give 'matrices' or 'summands'".into(),
            )),
            _ => Ok(doc),
        }
    }

    /// Interprets the document as an interference.
    pub fn into_interference(self) -> Result<ImpulseInterference, SpecError> {
        if let Some(m) = self.matrices {
            return build_from_matrices(m);
        }
        let summands = self.summands.expect("validated in parse");
        let mut densities = Vec::with_capacity(summands.len());
        for (si, summand) in summands.into_iter().enumerate() {
            if summand.factors.is_empty() {
                return Err(SpecError(format!(
                    "summand {si} has no factors; drop the summand instead"
                )));
            }
            let mut trains = Vec::with_capacity(summand.factors.len());
            for (fi, factor) in summand.factors.into_iter().enumerate() {
                trains.push(build_factor(si, fi, factor)?);
            }
            let density = ImpulseSpectralDensity::new(trains)
                .map_err(|e| SpecError(format!("summand {si}: {e}")))?;
            let mut one = ImpulseInterference::from_density(density);
            if let Some(Numeral(offset)) = summand.offset {
                one = one.offset(&offset);
            }
            densities.extend(one.summands().iter().cloned());
        }
        Ok(ImpulseInterference::new(densities))
    }
}

fn build_factor(
    si: usize,
    fi: usize,
    factor: FactorSpec,
) -> Result<ImpulseSpectralTrain, SpecError> {
    let context = format!("summand {si}, factor {fi}");
    let amplitudes = match (factor.amplitudes, factor.cycle) {
        (Some(_), Some(_)) => {
            return Err(SpecError(format!(
                "{context}: give either 'amplitudes' or 'cycle', not both"
            )))
        }
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => {
            return Err(SpecError(format!("{context}: missing 'amplitudes'")))
        }
    };
    let amplitudes: Vec<Rational> = amplitudes.into_iter().map(|Numeral(r)| r).collect();
    let Numeral(step) = factor.step;
    match factor.degree {
        DegreeSpec::Finite(n) => {
            if n != amplitudes.len() {
                return Err(SpecError(format!(
                    "{context}: degree {n} does not match {} amplitudes",
                    amplitudes.len()
                )));
            }
            ImpulseSpectralTrain::finite(step, amplitudes)
                .map_err(|e| SpecError(format!("{context}: {e}")))
        }
        DegreeSpec::Infinite => ImpulseSpectralTrain::infinite(step, amplitudes)
            .map_err(|e| SpecError(format!("{context}: {e}"))),
    }
}

fn build_from_matrices(m: MatrixSpec) -> Result<ImpulseInterference, SpecError> {
    let amplitudes = m
        .amplitudes
        .into_iter()
        .enumerate()
        .map(|(k, row)| {
            row.into_iter()
                .enumerate()
                .map(|(j, cell)| {
                    AmplitudeVector::new(cell.into_iter().map(|Numeral(r)| r).collect())
                        .map_err(|e| SpecError(format!("amplitude cell ({k}, {j}): {e}")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let degrees = m.degrees;
    let steps: Vec<Vec<Rational>> = m
        .steps
        .into_iter()
        .map(|row| row.into_iter().map(|Numeral(r)| r).collect())
        .collect();
    let mut shifts = Vec::with_capacity(steps.len());
    for (k, row) in steps.into_iter().enumerate() {
        let mut srow = Vec::with_capacity(row.len());
        for (j, step) in row.into_iter().enumerate() {
            let degree = degrees
                .get(k)
                .and_then(|r| r.get(j))
                .copied()
                .ok_or_else(|| SpecError(format!("missing degree for cell ({k}, {j})")))?;
            srow.push(
                ShiftVector::new(step, degree)
                    .map_err(|e| SpecError(format!("shift cell ({k}, {j}): {e}")))?,
            );
        }
        shifts.push(srow);
    }
    let matrices = ConstructionMatrices::new(amplitudes, shifts, degrees)
        .map_err(|e| SpecError(e.to_string()))?;
    build_interference(&matrices).map_err(|e| SpecError(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_direct_form() {
        let text = r#"{
            "version": 1,
            "summands": [
                { "factors": [ { "step": "1", "degree": 4,
                                 "amplitudes": ["0", "4", "5", "6"] } ] }
            ]
        }"#;
        let x = SpecDocument::parse(text)
            .unwrap()
            .into_interference()
            .unwrap();
        let flat = x.flatten(None).unwrap();
        assert_eq!(flat.len(), 3);
    }

    #[test]
    fn parses_offsets_and_endless_trains() {
        let text = r#"{
            "version": 1,
            "summands": [
                { "offset": "1/2",
                  "factors": [ { "step": "3", "degree": "inf", "cycle": ["2"] } ] }
            ]
        }"#;
        let x = SpecDocument::parse(text)
            .unwrap()
            .into_interference()
            .unwrap();
        let window =
            shirac_core::Window::new(Rational::integer(0), Rational::integer(7)).unwrap();
        let flat = x.flatten(Some(&window)).unwrap();
        let positions: Vec<String> = flat.positions().map(|p| p.to_string()).collect();
        assert_eq!(positions, ["1/2", "7/2", "13/2"]);
    }

    #[test]
    fn rejects_floats_and_bare_numbers() {
        let float = r#"{ "version": 1, "summands": [
            { "factors": [ { "step": 1.5, "degree": 1, "amplitudes": ["1"] } ] } ] }"#;
        assert!(SpecDocument::parse(float).is_err());
        let bare = r#"{ "version": 1, "summands": [
            { "factors": [ { "step": "1", "degree": 1, "amplitudes": [2] } ] } ] }"#;
        assert!(SpecDocument::parse(bare).is_err());
    }

    #[test]
    fn rejects_inconsistent_degrees() {
        let text = r#"{ "version": 1, "summands": [
            { "factors": [ { "step": "1", "degree": 3, "amplitudes": ["1", "2"] } ] } ] }"#;
        let err = SpecDocument::parse(text)
            .unwrap()
            .into_interference()
            .unwrap_err();
        assert!(err.to_string().contains("degree 3"));
    }

    #[test]
    fn rejects_missing_or_double_bodies() {
        assert!(SpecDocument::parse(r#"{ "version": 1 }"#).is_err());
        let both = r#"{ "version": 1, "summands": [],
            "matrices": { "amplitudes": [], "steps": [], "degrees": [] } }"#;
        assert!(SpecDocument::parse(both).is_err());
        assert!(SpecDocument::parse(r#"{ "version": 2, "summands": [] }"#).is_err());
    }

    #[test]
    fn matrix_form_builds_the_pipeline() {
        let text = r#"{
            "version": 1,
            "matrices": {
                "amplitudes": [[["2","4","5"], ["3","1","8"]],
                               [["6","2","3"], ["9","4","2"]]],
                "steps":      [["5", "3"], ["7", "4"]],
                "degrees":    [[3, 3], [3, 3]]
            }
        }"#;
        let x = SpecDocument::parse(text)
            .unwrap()
            .into_interference()
            .unwrap();
        let flat = x.flatten(None).unwrap();
        assert_eq!(flat.len(), 15);
        assert_eq!(flat.impulses()[0].amplitude, Rational::integer(60));
    }
}
