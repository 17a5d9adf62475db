//! The derivation cache: a versioned, checksummed JSON document holding the
//! calibrated map, the parametrised forms, the extractor tuning and the
//! critical set.
//!
//! Rationals are written as `"p/q"` strings and floating complex numbers as
//! `["re", "im"]` decimal strings carrying enough digits to round-trip at the
//! stored precision.

use std::path::Path;

use rug::{Float, Rational};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::ParamForm;
use crate::binform::ProjPoint;
use crate::error::{CacheError, Error, Result};
use crate::scalar::{BigComplex, PrecisionContext};

pub const FORMAT_VERSION: u32 = 1;

/// A complex number as a pair of decimal strings.
pub type ComplexRecord = [String; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CacheDocument {
    pub format_version: u32,
    pub precision_digits: u32,
    pub scalar_kind: String,
    pub map: MapRecord,
    pub forms: Vec<FormRecord>,
    pub extractor: ExtractorRecord,
    pub critical: CriticalRecord,
    #[serde(default)]
    pub checksum: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapRecord {
    pub alpha: ComplexRecord,
    pub beta: ComplexRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarKind {
    Exact,
    Floating,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffRecord {
    Exact(String),
    Floating(ComplexRecord),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormRecord {
    pub name: String,
    pub wdegree: usize,
    pub zshift: i32,
    pub scalar_kind: ScalarKind,
    pub coeffs: Vec<Vec<CoeffRecord>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtractorRecord {
    /// `γ_k`, `θ_k` of the tuned invariants for labels `1..=5`.
    pub gamma: Vec<ComplexRecord>,
    pub theta: Vec<ComplexRecord>,
    /// Normalisation of the selector for labels `1..=5`.
    pub normalization: Vec<ComplexRecord>,
    /// The `𝒯₅`-orbit chosen as class 5, by critical-point index.
    pub labeling: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalRecord {
    pub points: Vec<[ComplexRecord; 2]>,
    pub cycles: Vec<[usize; 5]>,
    pub labels: Vec<usize>,
}

/// Decimal digits that make a `prec`-bit float round-trip.
fn round_trip_digits(prec: u32) -> usize {
    (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 2
}

pub fn encode_float(x: &Float) -> String {
    x.to_string_radix(10, Some(round_trip_digits(x.prec())))
}

pub fn decode_float(s: &str, prec: u32) -> Result<Float> {
    let parsed = Float::parse(s.trim()).map_err(|e| CacheError::Malformed(format!("bad number {s:?}: {e}")))?;
    let x = Float::with_val(prec, parsed);
    if !x.is_finite() {
        return Err(CacheError::Malformed(format!("non-finite number {s:?}")).into());
    }
    Ok(x)
}

pub fn encode_complex(z: &BigComplex) -> ComplexRecord {
    [encode_float(&z.re), encode_float(&z.im)]
}

pub fn decode_complex(r: &ComplexRecord, prec: u32) -> Result<BigComplex> {
    Ok(BigComplex::new(decode_float(&r[0], prec)?, decode_float(&r[1], prec)?))
}

pub fn encode_rational(q: &Rational) -> String {
    if *q.denom() == 1 {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn decode_rational(s: &str) -> Result<Rational> {
    let malformed = || CacheError::Malformed(format!("bad rational {s:?}"));
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: rug::Integer = n.parse().map_err(|_| malformed())?;
    let d: rug::Integer = d.parse().map_err(|_| malformed())?;
    if d == 0 {
        return Err(malformed().into());
    }
    Ok(Rational::from((n, d)))
}

pub fn encode_point(p: &ProjPoint) -> [ComplexRecord; 2] {
    [encode_complex(p.w1()), encode_complex(p.w2())]
}

pub fn decode_point(r: &[ComplexRecord; 2], prec: u32) -> Result<ProjPoint> {
    ProjPoint::new(decode_complex(&r[0], prec)?, decode_complex(&r[1], prec)?)
        .map_err(|e| CacheError::Malformed(format!("bad point: {e}")).into())
}

impl FormRecord {
    pub fn from_exact(form: &ParamForm<Rational>) -> Self {
        FormRecord {
            name: form.name.clone(),
            wdegree: form.wdegree,
            zshift: form.zshift,
            scalar_kind: ScalarKind::Exact,
            coeffs: form
                .coeffs
                .iter()
                .map(|c| c.iter().map(|q| CoeffRecord::Exact(encode_rational(q))).collect())
                .collect(),
        }
    }

    pub fn from_floating(form: &ParamForm<BigComplex>) -> Self {
        FormRecord {
            name: form.name.clone(),
            wdegree: form.wdegree,
            zshift: form.zshift,
            scalar_kind: ScalarKind::Floating,
            coeffs: form
                .coeffs
                .iter()
                .map(|c| c.iter().map(|z| CoeffRecord::Floating(encode_complex(z))).collect())
                .collect(),
        }
    }

    fn check_shape(&self) -> Result<()> {
        if self.coeffs.len() != self.wdegree + 1 {
            return Err(CacheError::Malformed(format!(
                "form {} has {} coefficients for degree {}",
                self.name,
                self.coeffs.len(),
                self.wdegree
            ))
            .into());
        }
        Ok(())
    }

    pub fn to_exact(&self) -> Result<ParamForm<Rational>> {
        self.check_shape()?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                c.iter()
                    .map(|r| match r {
                        CoeffRecord::Exact(s) => decode_rational(s),
                        CoeffRecord::Floating(_) => Err(CacheError::Malformed(format!(
                            "form {} mixes floating coefficients into an exact form",
                            self.name
                        ))
                        .into()),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ParamForm::new(self.name.clone(), self.zshift, coeffs).map_err(|e| CacheError::Malformed(e.to_string()).into())
    }

    pub fn to_floating(&self, prec: u32) -> Result<ParamForm<BigComplex>> {
        self.check_shape()?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                c.iter()
                    .map(|r| match r {
                        CoeffRecord::Floating(z) => decode_complex(z, prec),
                        CoeffRecord::Exact(s) => {
                            let q = decode_rational(s)?;
                            Ok(BigComplex::new(Float::with_val(prec, &q), Float::new(prec)))
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        ParamForm::new(self.name.clone(), self.zshift, coeffs).map_err(|e| CacheError::Malformed(e.to_string()).into())
    }
}

impl CacheDocument {
    pub fn form(&self, name: &str) -> Result<&FormRecord> {
        self.forms
            .iter()
            .find(|f| f.name == name)
            .ok_or_else(|| CacheError::Malformed(format!("missing form {name}")).into())
    }

    /// SHA-256 of the compact JSON encoding with an empty checksum field.
    pub fn compute_checksum(&self) -> String {
        let mut unsigned = self.clone();
        unsigned.checksum.clear();
        let bytes = serde_json::to_vec(&unsigned).expect("cache documents always serialise");
        hex::encode(Sha256::digest(&bytes))
    }

    pub fn sealed(mut self) -> Self {
        self.checksum = self.compute_checksum();
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.clone().sealed()).expect("cache documents always serialise")
    }

    /// Parses and validates a document for use at `ctx`.
    ///
    /// The stored precision must be at least the requested one.
    pub fn from_json(text: &str, ctx: &PrecisionContext) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| CacheError::Parse(e.to_string()))?;
        let found = value
            .get("format_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| CacheError::Malformed("missing format_version".into()))?;
        if found != FORMAT_VERSION as u64 {
            return Err(CacheError::Version {
                found: found.min(u32::MAX as u64) as u32,
                expected: FORMAT_VERSION,
            }
            .into());
        }
        let doc: CacheDocument = serde_json::from_value(value).map_err(|e| CacheError::Malformed(e.to_string()))?;
        let computed = doc.compute_checksum();
        if computed != doc.checksum {
            return Err(CacheError::Checksum {
                stored: doc.checksum.clone(),
                computed,
            }
            .into());
        }
        if doc.precision_digits < ctx.digits() {
            return Err(CacheError::Precision {
                stored: doc.precision_digits,
                requested: ctx.digits(),
            }
            .into());
        }
        Ok(doc)
    }

    pub fn store(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path, ctx: &PrecisionContext) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => Error::Cache(CacheError::Malformed(format!(
                "no cache at {}; run `derive` first",
                path.display()
            ))),
            _ => Error::Io(e),
        })?;
        Self::from_json(&text, ctx)
    }
}
