//! JSON documents for complexes and chain maps.
//!
//! Integers are written as JSON numbers of any size; they are never routed
//! through floating point.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Number;

use crate::chain::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Ring};

/// One complex: `differentials[j]` is `d` from degree `min_degree + j + 1`
/// to `min_degree + j`, a `ranks[j] × ranks[j+1]` matrix listed by rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub min_degree: i64,
    pub ranks: Vec<usize>,
    pub differentials: Vec<Vec<Vec<Number>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapComponent {
    pub source_degree: i64,
    pub target_degree: i64,
    pub matrix: Vec<Vec<Number>>,
}

/// Degree-zero chain map; degrees not listed are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub components: Vec<MapComponent>,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::Dimension(msg.into())
}

pub fn parse_ring(name: &str, p: Option<u64>) -> Result<Ring> {
    match (name, p) {
        ("Z", None) => Ok(Ring::Integers),
        ("Z", Some(_)) => Err(Error::InvalidRing("\"p\" given for ring Z".into())),
        ("Fp", Some(p)) => Ring::prime_field(p),
        ("Fp", None) => Err(Error::InvalidRing("ring Fp needs \"p\"".into())),
        (other, _) => Err(Error::InvalidRing(format!("unknown ring {other:?}, expected \"Z\" or \"Fp\""))),
    }
}

fn ring_fields(ring: Ring) -> (String, Option<u64>) {
    match ring {
        Ring::Integers => ("Z".into(), None),
        Ring::PrimeField(p) => ("Fp".into(), Some(p)),
    }
}

fn number(n: &BigInt) -> Number {
    Number::from_str(&n.to_string()).expect("decimal integer")
}

fn integer(n: &Number, what: &str) -> Result<BigInt> {
    let s = n.to_string();
    BigInt::from_str(&s).map_err(|_| malformed(format!("{what}: {s} is not an integer")))
}

fn matrix_to_json(m: &Matrix) -> Vec<Vec<Number>> {
    (0..m.rows()).map(|r| m.row(r).iter().map(number).collect()).collect()
}

fn matrix_from_json(ring: Ring, rows: usize, cols: usize, data: &[Vec<Number>], what: &str) -> Result<Matrix> {
    if data.len() != rows {
        return Err(malformed(format!("{what} has {} rows, expected {rows}", data.len())));
    }
    let mut m = Matrix::zeros(ring, rows, cols);
    for (r, row) in data.iter().enumerate() {
        if row.len() != cols {
            return Err(malformed(format!("{what} row {r} has {} entries, expected {cols}", row.len())));
        }
        for (c, v) in row.iter().enumerate() {
            m.set(r, c, integer(v, what)?);
        }
    }
    Ok(m)
}

impl ComplexDocument {
    pub fn from_complex(x: &ChainComplex) -> Self {
        let (ring, p) = ring_fields(x.ring());
        if x.is_zero() {
            return ComplexDocument { ring, p, min_degree: 0, ranks: Vec::new(), differentials: Vec::new() };
        }
        ComplexDocument {
            ring,
            p,
            min_degree: x.min_deg(),
            ranks: x.ranks().to_vec(),
            differentials: (x.min_deg() + 1..=x.max_deg()).map(|i| matrix_to_json(&x.diff(i))).collect(),
        }
    }

    /// Builds the complex, rejecting bad shapes and `d² ≠ 0`.
    pub fn to_complex(&self) -> Result<ChainComplex> {
        let ring = parse_ring(&self.ring, self.p)?;
        let expected = self.ranks.len().saturating_sub(1);
        if self.differentials.len() != expected {
            return Err(malformed(format!(
                "{} differentials given for {} ranks, expected {expected}",
                self.differentials.len(),
                self.ranks.len()
            )));
        }
        let diffs = self
            .differentials
            .iter()
            .enumerate()
            .map(|(j, d)| {
                let degree = self.min_degree + j as i64 + 1;
                matrix_from_json(ring, self.ranks[j], self.ranks[j + 1], d, &format!("d_{degree}"))
            })
            .collect::<Result<Vec<_>>>()?;
        ChainComplex::new(ring, self.min_degree, self.ranks.clone(), diffs)
    }
}

impl MapDocument {
    pub fn from_map(f: &ChainMap) -> Self {
        let (ring, p) = ring_fields(f.source().ring());
        let (s, t) = (f.source(), f.target());
        let degrees: Vec<i64> = if s.is_zero() || t.is_zero() {
            Vec::new()
        } else {
            (s.min_deg().max(t.min_deg())..=s.max_deg().min(t.max_deg())).collect()
        };
        let components = degrees
            .into_iter()
            .map(|i| MapComponent { source_degree: i, target_degree: i, matrix: matrix_to_json(&f.component(i)) })
            .collect();
        MapDocument { ring, p, components }
    }

    pub fn to_map(&self, source: &ChainComplex, target: &ChainComplex) -> Result<ChainMap> {
        let ring = parse_ring(&self.ring, self.p)?;
        source.check_ring(target)?;
        if ring != source.ring() {
            return Err(Error::RingMismatch(ring.to_string(), source.ring().to_string()));
        }
        let mut parts = Vec::new();
        for c in &self.components {
            if c.source_degree != c.target_degree {
                return Err(malformed(format!(
                    "component from degree {} to {} does not have degree zero",
                    c.source_degree, c.target_degree
                )));
            }
            let i = c.source_degree;
            if parts.iter().any(|(d, _)| *d == i) {
                return Err(malformed(format!("degree {i} listed twice")));
            }
            parts.push((i, matrix_from_json(ring, target.rank(i), source.rank(i), &c.matrix, &format!("f_{i}"))?));
        }
        ChainMap::new(source.clone(), target.clone(), |i| {
            parts
                .iter()
                .find(|(d, _)| *d == i)
                .map(|(_, m)| m.clone())
                .unwrap_or_else(|| Matrix::zeros(ring, target.rank(i), source.rank(i)))
        })
    }
}

pub fn parse_complex(text: &str) -> Result<ChainComplex> {
    let doc: ComplexDocument = serde_json::from_str(text).map_err(|e| malformed(format!("bad document: {e}")))?;
    doc.to_complex()
}

pub fn write_complex(x: &ChainComplex) -> String {
    serde_json::to_string(&ComplexDocument::from_complex(x)).expect("serializable")
}

pub fn parse_map(text: &str, source: &ChainComplex, target: &ChainComplex) -> Result<ChainMap> {
    let doc: MapDocument = serde_json::from_str(text).map_err(|e| malformed(format!("bad map document: {e}")))?;
    doc.to_map(source, target)
}

pub fn write_map(f: &ChainMap) -> String {
    serde_json::to_string(&MapDocument::from_map(f)).expect("serializable")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_resolution_round_trip() {
        let text = r#"{"ring":"Z","min_degree":0,"ranks":[1,1],"differentials":[[[2]]]}"#;
        let x = parse_complex(text).unwrap();
        assert_eq!(x, ChainComplex::two_term(1, Matrix::from_i64(Ring::Integers, &[&[2]])));
        assert_eq!(write_complex(&x), text);
    }

    #[test]
    fn big_integers_survive() {
        let text = r#"{"ring":"Z","min_degree":0,"ranks":[1,1],"differentials":[[[123456789012345678901234567890]]]}"#;
        let x = parse_complex(text).unwrap();
        assert_eq!(write_complex(&x), text);
    }

    #[test]
    fn rejects_bad_inputs() {
        let bad = [
            r#"{"ring":"Z","min_degree":0,"ranks":[1,1],"differentials":[[[2.5]]]}"#,
            r#"{"ring":"Q","min_degree":0,"ranks":[1],"differentials":[]}"#,
            r#"{"ring":"Fp","p":4,"min_degree":0,"ranks":[1],"differentials":[]}"#,
            r#"{"ring":"Z","min_degree":0,"ranks":[1,2],"differentials":[[[1]]]}"#,
            r#"{"ring":"Z","min_degree":0,"ranks":[1,1,1],"differentials":[[[1]],[[1]]]}"#,
        ];
        for text in bad {
            assert!(parse_complex(text).is_err(), "{text}");
        }
    }

    #[test]
    fn map_round_trip() {
        let x = ChainComplex::free(Ring::Integers, 0, 1);
        let f = ChainMap::new(x.clone(), x.clone(), |_| Matrix::from_i64(Ring::Integers, &[&[3]])).unwrap();
        let text = write_map(&f);
        assert_eq!(parse_map(&text, &x, &x).unwrap(), f);
    }
}
