//! JSON form of nil objects.
//!
//! ```json
//! { "base": "Z", "units": ["a", "b"], "dims": [2, 1],
//!   "letters": [ { "name": "u", "src": "a", "dst": "b", "matrix": [["0", "1"]] },
//!                { "name": "v", "src": "b", "dst": "a", "entries": [[1, 0, "3"]] } ] }
//! ```
//!
//! A letter gives either a dense `matrix` (rows of length `dims[src]`) or
//! sparse `entries` `[row, col, value]`; omitting both means zero. Entries are
//! written as strings; plain JSON numbers are accepted on input.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::linalg::Matrix;
use crate::scalar::Scalar;

use super::{BlockRing, Letter, NilError, NilObject};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NilSpec {
    pub base: String,
    pub units: Vec<String>,
    pub dims: Vec<usize>,
    pub letters: Vec<LetterSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LetterSpec {
    pub name: String,
    pub src: String,
    pub dst: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Value>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<(usize, usize, Value)>>,
}

/// Reads just the base label, to pick the scalar type before parsing.
pub fn base_of(json: &str) -> Result<String, NilError> {
    let v: Value = serde_json::from_str(json).map_err(|e| NilError::Parse(e.to_string()))?;
    v.get("base")
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| NilError::Parse("missing `base`".into()))
}

fn scalar<S: Scalar>(v: &Value) -> Result<S, NilError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        other => return Err(NilError::Parse(format!("bad entry {other}"))),
    };
    S::parse_scalar(&text).ok_or_else(|| NilError::Parse(format!("bad entry `{text}`")))
}

impl NilSpec {
    pub fn build<S: Scalar>(&self) -> Result<NilObject<S>, NilError> {
        if self.base != S::base_label() {
            return Err(NilError::InvalidData(format!("base `{}` where `{}` was expected", self.base, S::base_label())));
        }
        let unit = |s: &str| self.units.iter().position(|u| u == s).ok_or_else(|| NilError::UnknownUnit(s.into()));
        let mut letters = Vec::new();
        let mut mats = Vec::new();
        for l in &self.letters {
            let (src, dst) = (unit(&l.src)?, unit(&l.dst)?);
            let (rows, cols) = (
                *self.dims.get(dst).ok_or_else(|| NilError::ShapeMismatch("dims".into()))?,
                *self.dims.get(src).ok_or_else(|| NilError::ShapeMismatch("dims".into()))?,
            );
            let mut m = Matrix::zeros(rows, cols);
            match (&l.matrix, &l.entries) {
                (Some(_), Some(_)) => {
                    return Err(NilError::InvalidData(format!("letter `{}` has both matrix and entries", l.name)))
                }
                (Some(dense), None) => {
                    if dense.len() != rows || dense.iter().any(|r| r.len() != cols) {
                        return Err(NilError::ShapeMismatch(format!("letter `{}` needs {rows}x{cols}", l.name)));
                    }
                    for (i, r) in dense.iter().enumerate() {
                        for (j, v) in r.iter().enumerate() {
                            m[(i, j)] = scalar(v)?;
                        }
                    }
                }
                (None, Some(sparse)) => {
                    for (i, j, v) in sparse {
                        if *i >= rows || *j >= cols {
                            return Err(NilError::ShapeMismatch(format!("entry ({i}, {j}) of `{}`", l.name)));
                        }
                        m[(*i, *j)] = scalar(v)?;
                    }
                }
                (None, None) => {}
            }
            letters.push(Letter { name: l.name.clone(), src, dst });
            mats.push(m);
        }
        NilObject::new(BlockRing::new(self.units.clone(), letters)?, self.dims.clone(), mats)
    }

    pub fn from_object<S: Scalar>(x: &NilObject<S>) -> Self {
        let units = x.ring().units().to_vec();
        let letters = x
            .ring()
            .letters()
            .iter()
            .zip(x.matrices())
            .map(|(l, m)| LetterSpec {
                name: l.name.clone(),
                src: units[l.src].clone(),
                dst: units[l.dst].clone(),
                matrix: Some(m.to_rows().iter().map(|r| r.iter().map(|v| Value::String(v.to_string())).collect()).collect()),
                entries: None,
            })
            .collect();
        NilSpec { base: S::base_label(), units, dims: x.dims().to_vec(), letters }
    }
}

pub fn parse_nil<S: Scalar>(json: &str) -> Result<NilObject<S>, NilError> {
    let spec: NilSpec = serde_json::from_str(json).map_err(|e| NilError::Parse(e.to_string()))?;
    spec.build()
}

pub fn to_json<S: Scalar>(x: &NilObject<S>) -> String {
    serde_json::to_string_pretty(&NilSpec::from_object(x)).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Fp;
    use num_bigint::BigInt;

    const SAMPLE: &str = r#"{ "base": "Z", "units": ["a", "b"], "dims": [2, 1],
        "letters": [ { "name": "u", "src": "a", "dst": "b", "matrix": [["0", 1]] },
                     { "name": "v", "src": "b", "dst": "a", "entries": [[1, 0, "-3"]] } ] }"#;

    #[test]
    fn parses_dense_and_sparse() {
        let x: NilObject<BigInt> = parse_nil(SAMPLE).unwrap();
        assert_eq!(x.letter_matrix("v").unwrap()[(1, 0)], BigInt::from(-3));
        assert_eq!(x.letter_matrix("u").unwrap()[(0, 1)], BigInt::from(1));
        let back: NilObject<BigInt> = parse_nil(&to_json(&x)).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_nil::<Fp<3>>(SAMPLE).is_err());
        assert!(parse_nil::<BigInt>(&SAMPLE.replace("[1, 0, \"-3\"]", "[5, 0, \"1\"]")).is_err());
        assert!(parse_nil::<BigInt>(&SAMPLE.replace("\"dst\": \"b\"", "\"dst\": \"c\"")).is_err());
        assert_eq!(base_of(SAMPLE).unwrap(), "Z");
    }
}
