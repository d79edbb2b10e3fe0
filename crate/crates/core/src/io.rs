//! JSON documents: braids, tangles, Seifert and C-complex fixtures, and
//! complex matrices as nested `[re, im]` pairs.

use crate::braidtangle::{ColouredBraid, ColouredObject, Slice, TangleWord};
use crate::signatures::{CComplexData, ClosureSignature, SeifertData};
use crate::{CMat, Complex64, Error, Result};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BraidDoc {
    pub mu: u32,
    pub colours: Vec<i32>,
    pub word: Vec<i32>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TangleDoc {
    pub mu: u32,
    pub colours: Vec<i32>,
    pub slices: Vec<Slice>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeifertDoc {
    #[serde(rename = "A")]
    pub a: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CComplexDoc {
    pub mu: u32,
    pub matrices: BTreeMap<String, Vec<Vec<f64>>>,
}

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

/// Every colour `1..mu` must occur on the boundary of the diagram.
fn check_colours_used(t: &TangleWord) -> Result<()> {
    for j in 1..=t.mu() as i32 {
        let seen = |o: &ColouredObject| o.entries.iter().any(|e| e.abs() == j);
        if !seen(t.source()) && !seen(t.target()) {
            return Err(Error::InvalidColouring(format!(
                "colour {j} never appears on the boundary"
            )));
        }
    }
    Ok(())
}

impl BraidDoc {
    pub fn to_braid(&self) -> Result<ColouredBraid> {
        let b = ColouredBraid::new(ColouredObject::new(self.mu, self.colours.clone())?, self.word.clone())?;
        check_colours_used(&b.to_tangle())?;
        Ok(b)
    }
}

impl TangleDoc {
    pub fn to_tangle(&self) -> Result<TangleWord> {
        let t = TangleWord::new(ColouredObject::new(self.mu, self.colours.clone())?, self.slices.clone())?;
        check_colours_used(&t)?;
        Ok(t)
    }

    pub fn from_tangle(t: &TangleWord) -> Self {
        Self {
            mu: t.mu(),
            colours: t.source().entries.clone(),
            slices: t.slices().to_vec(),
        }
    }
}

/// Reads either a braid (`"word"`) or a tangle (`"slices"`) document.
pub fn parse_tangle(text: &str) -> Result<TangleWord> {
    let v: Value = serde_json::from_str(text).map_err(parse_err)?;
    if v.get("word").is_some() {
        let d: BraidDoc = serde_json::from_value(v).map_err(parse_err)?;
        Ok(d.to_braid()?.to_tangle())
    } else if v.get("slices").is_some() {
        let d: TangleDoc = serde_json::from_value(v).map_err(parse_err)?;
        d.to_tangle()
    } else {
        Err(Error::Parse("expected a \"word\" or \"slices\" field".into()))
    }
}

pub fn parse_braid(text: &str) -> Result<ColouredBraid> {
    parse_tangle(text)?
        .as_braid()
        .ok_or_else(|| Error::Unsupported("expected a braid, found cups or caps".into()))
}

fn real_matrix(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != m) {
        return Err(Error::Parse("ragged matrix".into()));
    }
    Ok(DMatrix::from_fn(n, m, |r, c| rows[r][c]))
}

impl SeifertDoc {
    pub fn to_data(&self) -> Result<SeifertData> {
        let a = real_matrix(&self.a)?;
        if !a.is_square() {
            return Err(Error::Parse("Seifert matrix must be square".into()));
        }
        Ok(SeifertData { a })
    }
}

impl CComplexDoc {
    pub fn to_data(&self) -> Result<CComplexData> {
        let mut blocks = Vec::new();
        for (key, rows) in &self.matrices {
            let e: Vec<i8> = key
                .chars()
                .map(|ch| match ch {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    _ => Err(Error::Parse(format!("bad sign key {key:?}"))),
                })
                .collect::<Result<_>>()?;
            blocks.push((e, real_matrix(rows)?));
        }
        CComplexData::new(self.mu, blocks)
    }
}

/// Reads a Seifert (`"A"`) or C-complex (`"matrices"`) fixture.
pub fn parse_closure(text: &str) -> Result<ClosureSignature> {
    let v: Value = serde_json::from_str(text).map_err(parse_err)?;
    if v.get("A").is_some() {
        let d: SeifertDoc = serde_json::from_value(v).map_err(parse_err)?;
        Ok(ClosureSignature::Seifert(d.to_data()?))
    } else if v.get("matrices").is_some() {
        let d: CComplexDoc = serde_json::from_value(v).map_err(parse_err)?;
        Ok(ClosureSignature::CComplex(d.to_data()?))
    } else {
        Err(Error::Parse("expected an \"A\" or \"matrices\" field".into()))
    }
}

pub fn matrix_to_json(m: &CMat) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|r| {
                Value::Array(
                    (0..m.ncols())
                        .map(|c| serde_json::json!([m[(r, c)].re, m[(r, c)].im]))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn matrix_from_json(v: &Value) -> Result<CMat> {
    let rows: Vec<Vec<[f64; 2]>> = serde_json::from_value(v.clone()).map_err(parse_err)?;
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    if rows.iter().any(|r| r.len() != m) {
        return Err(Error::Parse("ragged matrix".into()));
    }
    Ok(CMat::from_fn(n, m, |r, c| Complex64::new(rows[r][c][0], rows[r][c][1])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_and_tangle_documents() {
        let b = parse_tangle(r#"{"mu": 1, "colours": [1, 1], "word": [1, 1]}"#).unwrap();
        assert_eq!(b.braid_word().unwrap(), vec![1, 1]);
        let t = parse_tangle(
            r#"{"mu": 1, "colours": [1], "slices": [
                {"kind": "cup", "pos": 2, "colour": 1, "up": true},
                {"kind": "crossing", "pos": 1, "sign": -1},
                {"kind": "cap", "pos": 2}]}"#,
        )
        .unwrap();
        assert_eq!(t.slices().len(), 3);
        assert!(t.is_endomorphism());
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(parse_tangle("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_tangle(r#"{"mu": 1}"#), Err(Error::Parse(_))));
        assert!(parse_tangle(r#"{"mu": 2, "colours": [1, 1], "word": [1]}"#).is_err());
    }

    #[test]
    fn fixtures() {
        let s = parse_closure(r#"{"A": [[-1]]}"#).unwrap();
        assert!(matches!(s, ClosureSignature::Seifert(_)));
        let c = parse_closure(r#"{"mu": 1, "matrices": {"+": [], "-": []}}"#).unwrap();
        assert!(matches!(c, ClosureSignature::CComplex(ref d) if d.size() == 0));
    }

    #[test]
    fn complex_matrix_roundtrip() {
        let m = CMat::from_row_slice(1, 2, &[Complex64::new(1.5, -2.0), Complex64::new(0.0, 3.0)]);
        assert_eq!(matrix_from_json(&matrix_to_json(&m)).unwrap(), m);
    }
}
