//! Canonical text and JSON renderings, plus the golden-file machinery.
//!
//! Everything here is deterministic by construction: factored text joins the
//! mandated factors in the fixed order `n`, `(n+1)`, `(2*n+1)`, residual
//! last, `/denominator` suffix; JSON documents carry a stable key order and
//! integer-only values (decimal strings once a value could overflow an
//! `i64`). Golden files are compared byte-for-byte so any drift in the
//! canonical forms fails loudly.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::factor::{structural_factor, FactorError, FactoredForm};
use crate::poly::Polynomial;
use crate::series::FaulhaberTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GoldenError {
    #[error("golden line {line}: expected `order<TAB>text`")]
    MalformedEntry { line: usize },
    #[error("golden line {line}: expected `order<TAB>denominator<TAB>degree<TAB>leading`")]
    MalformedSpot { line: usize },
}

/// Canonical factored rendering: `n*(n+1)*(2*n+1)*(3*n^2+3*n-1)/30`.
pub fn factored_text(form: &FactoredForm) -> String {
    let mut parts: Vec<String> = Vec::new();
    let bases = ["n", "(n+1)", "(2*n+1)"];
    for (base, &mult) in bases.iter().zip(&form.multiplicities()) {
        match mult {
            0 => {}
            1 => parts.push(base.to_string()),
            m => parts.push(format!("{base}^{m}")),
        }
    }
    if !form.residual().is_one() {
        parts.push(format!("({})", form.residual()));
    }
    let mut text = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
    if !form.denominator().is_one() {
        text.push('/');
        text.push_str(&form.denominator().to_string());
    }
    text
}

/// Big integer that serializes as a JSON number while it fits, and as a
/// decimal string once `|value| >= 2^63`, so consumers with 64-bit parsers
/// never see silent truncation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonInt(pub BigInt);

fn fits_json_number(value: &BigInt) -> bool {
    value.abs() < (BigInt::one() << 63)
}

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if fits_json_number(&self.0) {
            serializer.serialize_i64(
                i64::try_from(&self.0).expect("checked against 2^63"),
            )
        } else {
            serializer.serialize_str(&self.0.to_string())
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct IntVisitor;

        impl Visitor<'_> for IntVisitor {
            type Value = JsonInt;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.parse::<BigInt>()
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("not a decimal integer: {v:?}")))
            }
        }

        deserializer.deserialize_any(IntVisitor)
    }
}

/// Integer-coefficient form of one polynomial: `denominator * polynomial`
/// has the listed coefficients, ascending, with exactly `order + 2` entries
/// (powers `0..=order+1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDocument {
    #[serde(rename = "N")]
    pub order: u64,
    pub denominator: JsonInt,
    pub coefficients: Vec<JsonInt>,
}

impl PolynomialDocument {
    /// Clear denominators of a table entry into the document form.
    pub fn from_polynomial(order: usize, p: &Polynomial) -> PolynomialDocument {
        assert!(
            p.coeffs().len() <= order + 2,
            "degree exceeds order + 1: not a power-sum polynomial for this order"
        );
        let (denominator, mut coefficients) = match p.extract_content() {
            Ok(split) => {
                let numer = split.content.numer();
                let ints = split.primitive.coeffs().iter().map(|c| JsonInt(c * numer)).collect();
                (JsonInt(split.content.denom().clone()), ints)
            }
            Err(_) => (JsonInt(BigInt::one()), Vec::new()),
        };
        coefficients.resize(order + 2, JsonInt(BigInt::zero()));
        PolynomialDocument { order: order as u64, denominator, coefficients }
    }

    /// Reverse of [`from_polynomial`](Self::from_polynomial).
    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_coeffs(
            self.coefficients
                .iter()
                .map(|c| num_rational::BigRational::new(c.0.clone(), self.denominator.0.clone()))
                .collect(),
        )
    }

    /// Compact JSON with the stable key order `N`, `denominator`,
    /// `coefficients`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<PolynomialDocument, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// One golden record: the expected canonical factored text for an order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenEntry {
    pub order: usize,
    pub factored: String,
}

/// Parse `order<TAB>canonical-factored-text` lines.
pub fn parse_golden(text: &str) -> Result<Vec<GoldenEntry>, GoldenError> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let (order, factored) = line
            .split_once('\t')
            .ok_or(GoldenError::MalformedEntry { line: line_no })?;
        let order = order
            .parse::<usize>()
            .map_err(|_| GoldenError::MalformedEntry { line: line_no })?;
        if factored.is_empty() {
            return Err(GoldenError::MalformedEntry { line: line_no });
        }
        entries.push(GoldenEntry { order, factored: factored.to_string() });
    }
    Ok(entries)
}

/// Spot record for orders whose full factored text is too large to pin:
/// denominator, residual degree, and residual leading coefficient only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpotEntry {
    pub order: usize,
    pub denominator: BigInt,
    pub residual_degree: usize,
    pub residual_leading: BigInt,
}

/// Parse `order<TAB>denominator<TAB>degree<TAB>leading` lines.
pub fn parse_spots(text: &str) -> Result<Vec<SpotEntry>, GoldenError> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let fields: Vec<&str> = line.split('\t').collect();
        let malformed = GoldenError::MalformedSpot { line: line_no };
        if fields.len() != 4 {
            return Err(malformed);
        }
        entries.push(SpotEntry {
            order: fields[0].parse().map_err(|_| malformed.clone())?,
            denominator: fields[1].parse().map_err(|_| malformed.clone())?,
            residual_degree: fields[2].parse().map_err(|_| malformed.clone())?,
            residual_leading: fields[3].parse().map_err(|_| malformed)?,
        });
    }
    Ok(entries)
}

/// One disagreement between a golden record and the freshly computed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenDiff {
    pub order: usize,
    pub expected: String,
    pub actual: String,
}

/// Byte-level comparison of golden factored texts against the table.
///
/// Factorization failures at a golden order are reported as diffs (they
/// contradict the recorded form); only range problems propagate as errors.
pub fn compare_golden(
    table: &FaulhaberTable,
    entries: &[GoldenEntry],
) -> Result<Vec<GoldenDiff>, FactorError> {
    let mut diffs = Vec::new();
    for entry in entries {
        let actual = match structural_factor(table, entry.order) {
            Ok(form) => factored_text(&form),
            Err(FactorError::Series(e)) => return Err(e.into()),
            Err(failure) => format!("<{failure}>"),
        };
        if actual != entry.factored {
            diffs.push(GoldenDiff {
                order: entry.order,
                expected: entry.factored.clone(),
                actual,
            });
        }
    }
    Ok(diffs)
}

/// Spot comparison: denominator, residual degree, residual leading.
pub fn compare_spots(
    table: &FaulhaberTable,
    entries: &[SpotEntry],
) -> Result<Vec<GoldenDiff>, FactorError> {
    let describe = |den: &BigInt, deg: usize, lead: &BigInt| {
        format!("denominator={den} residual_degree={deg} residual_leading={lead}")
    };
    let mut diffs = Vec::new();
    for entry in entries {
        let expected = describe(&entry.denominator, entry.residual_degree, &entry.residual_leading);
        let actual = match structural_factor(table, entry.order) {
            Ok(form) => describe(
                form.denominator(),
                form.residual().degree().expect("nonzero residual"),
                form.residual().leading().expect("nonzero residual"),
            ),
            Err(FactorError::Series(e)) => return Err(e.into()),
            Err(failure) => format!("<{failure}>"),
        };
        if actual != expected {
            diffs.push(GoldenDiff { order: entry.order, expected, actual });
        }
    }
    Ok(diffs)
}
