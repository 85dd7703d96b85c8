//! JSON documents exchanged by the command-line tool.
//!
//! Verification works on the parsed document alone, never on in-memory state
//! from the run that produced it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ncpoly::NcPolynomial;
use crate::pipeline::PolynomialDecomposition;
use crate::scalar::Rational;
use crate::waring::{verify_record, Check, DecompositionRecord, VerificationReport};

/// Witness part of a polynomial document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub args: Vec<Matrix>,
    pub value: Matrix,
    pub spectrum: Vec<Rational>,
    pub attempt: u64,
}

/// A decomposition whose terms are exhibited as values of `f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialRecord {
    pub f: String,
    pub p: usize,
    #[serde(flatten)]
    pub decomposition: DecompositionRecord,
    pub witness: WitnessRecord,
    /// `tuples[i]` evaluates to `A(i+1)`.
    pub tuples: Vec<Vec<Matrix>>,
}

impl PolynomialDecomposition {
    pub fn to_record(&self) -> PolynomialRecord {
        PolynomialRecord {
            f: self.witness.f.to_string(),
            p: self.prime.p,
            decomposition: self.decomposition.to_record(),
            witness: WitnessRecord {
                args: self.witness.args.clone(),
                value: self.witness.value.clone(),
                spectrum: self.witness.spectrum.clone(),
                attempt: self.witness.attempt,
            },
            tuples: self.tuples.to_vec(),
        }
    }
}

pub fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize")
}

/// Checks a decomposition document; polynomial documents additionally get one
/// check per term that its argument tuple evaluates to it.
pub fn verify_document(text: &str) -> Result<VerificationReport> {
    let value: serde_json::Value = from_json(text)?;
    let record: DecompositionRecord =
        serde_json::from_value(value.clone()).map_err(|e| Error::Format(e.to_string()))?;
    let mut report = verify_record(&record);
    if value.get("f").is_some() {
        let poly: PolynomialRecord = serde_json::from_value(value).map_err(|e| Error::Format(e.to_string()))?;
        report.checks.extend(tuple_checks(&poly));
    }
    Ok(report)
}

fn tuple_checks(r: &PolynomialRecord) -> Vec<Check> {
    let terms = [&r.decomposition.a1, &r.decomposition.a2, &r.decomposition.a3];
    let f: std::result::Result<NcPolynomial, _> = r.f.parse();
    (0..3)
        .map(|k| {
            let name = format!("tuple{}", k + 1);
            let outcome = match (&f, r.tuples.get(k)) {
                (Err(e), _) => Err(format!("polynomial does not parse: {e}")),
                (_, None) => Err("tuple missing".to_string()),
                (Ok(f), Some(args)) => match f.evaluate(args) {
                    Ok(v) if v == *terms[k] => Ok(()),
                    Ok(_) => Err(format!("f(tuple{0}) != A{0}", k + 1)),
                    Err(e) => Err(e.to_string()),
                },
            };
            match outcome {
                Ok(()) => Check {
                    name,
                    passed: true,
                    detail: format!("f(tuple{0}) = A{0}", k + 1),
                },
                Err(detail) => Check {
                    name,
                    passed: false,
                    detail,
                },
            }
        })
        .collect()
}
