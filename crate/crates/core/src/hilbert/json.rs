//! JSON encoding of vectors and matrices.
//!
//! A complex number is a two-element array `[re, im]`; a plain number is read
//! as a real value. A matrix is a row-major array of rows.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Operator, StateVector, C64};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonComplex {
    Pair([f64; 2]),
    Real(f64),
}

impl From<JsonComplex> for C64 {
    fn from(z: JsonComplex) -> Self {
        match z {
            JsonComplex::Pair([re, im]) => C64::new(re, im),
            JsonComplex::Real(re) => C64::new(re, 0.0),
        }
    }
}

fn rows_of(m: &Operator) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
        .collect()
}

fn operator_from_rows(rows: Vec<Vec<JsonComplex>>) -> Result<Operator> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return Err(Error::Parse("matrix must be non-empty".into()));
    }
    if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
        return Err(Error::Parse(format!(
            "ragged matrix: row of length {} in a {ncols}-column matrix",
            bad.len()
        )));
    }
    let entries: Vec<C64> = rows.into_iter().flatten().map(C64::from).collect();
    Ok(Operator::from_row_slice(nrows, ncols, &entries))
}

pub fn matrix_to_value(m: &Operator) -> serde_json::Value {
    serde_json::to_value(rows_of(m)).expect("finite floats serialize")
}

pub fn matrix_from_value(v: &serde_json::Value) -> Result<Operator> {
    let rows: Vec<Vec<JsonComplex>> =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    operator_from_rows(rows)
}

pub fn vector_to_value(v: &StateVector) -> serde_json::Value {
    let entries: Vec<[f64; 2]> = v.iter().map(|z| [z.re, z.im]).collect();
    serde_json::to_value(entries).expect("finite floats serialize")
}

pub fn vector_from_value(v: &serde_json::Value) -> Result<StateVector> {
    let entries: Vec<JsonComplex> =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    if entries.is_empty() {
        return Err(Error::Parse("vector must be non-empty".into()));
    }
    Ok(StateVector::from_iterator(
        entries.len(),
        entries.into_iter().map(C64::from),
    ))
}

/// `#[serde(with = "matrix")]` adapter for [`Operator`] fields.
pub mod matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Operator, s: S) -> std::result::Result<S::Ok, S::Error> {
        rows_of(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Operator, D::Error> {
        let rows = Vec::<Vec<JsonComplex>>::deserialize(d)?;
        operator_from_rows(rows).map_err(D::Error::custom)
    }
}

/// `#[serde(with = "matrix_list")]` adapter for `Vec<Operator>` fields.
pub mod matrix_list {
    use super::*;

    pub fn serialize<S: Serializer>(ms: &[Operator], s: S) -> std::result::Result<S::Ok, S::Error> {
        ms.iter().map(rows_of).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Operator>, D::Error> {
        let list = Vec::<Vec<Vec<JsonComplex>>>::deserialize(d)?;
        list.into_iter()
            .map(|rows| operator_from_rows(rows).map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn complex_pairs_and_reals() {
        let v = json!([[[1.0, 0.5], 2.0], [[0.0, -1.0], [3.0, 0.0]]]);
        let m = matrix_from_value(&v).unwrap();
        assert_eq!(m[(0, 0)], C64::new(1.0, 0.5));
        assert_eq!(m[(0, 1)], C64::new(2.0, 0.0));
        assert_eq!(m[(1, 0)], C64::new(0.0, -1.0));
        let back = matrix_to_value(&m);
        assert_eq!(back, json!([[[1.0, 0.5], [2.0, 0.0]], [[0.0, -1.0], [3.0, 0.0]]]));
        assert_eq!(matrix_from_value(&back).unwrap(), m);
    }

    #[test]
    fn rejects_ragged_and_empty() {
        assert!(matrix_from_value(&json!([[1.0, 2.0], [3.0]])).is_err());
        assert!(matrix_from_value(&json!([])).is_err());
        assert!(matrix_from_value(&json!([["a"]])).is_err());
        assert!(vector_from_value(&json!([])).is_err());
    }
}
