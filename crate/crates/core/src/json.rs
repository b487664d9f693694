//! JSON encodings shared by the library and the CLI.
//!
//! Matrices use `{"rows":r,"cols":c,"data":[[...]]}`; entries follow
//! [`Scalar::to_json`].

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

pub fn matrix_to_json<S: Scalar>(m: &Matrix<S>) -> Value {
    let data: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(Scalar::to_json).collect()))
        .collect();
    json!({"rows": m.rows(), "cols": m.cols(), "data": data})
}

/// Parses a matrix; `name` labels errors so callers can report the offending field.
pub fn matrix_from_json<S: Scalar>(v: &Value, name: &str) -> Result<Matrix<S>> {
    let err = |msg: &str| Error::Json(format!("{name}: {msg}"));
    let obj = v.as_object().ok_or_else(|| err("expected object"))?;
    let rows = field_usize(obj, "rows").map_err(|e| err(&e.to_string()))?;
    let cols = field_usize(obj, "cols").map_err(|e| err(&e.to_string()))?;
    let data = obj
        .get("data")
        .and_then(Value::as_array)
        .ok_or_else(|| err("missing data array"))?;
    if data.len() != rows {
        return Err(Error::DimensionMismatch {
            op: "matrix_from_json",
            detail: format!("{name}: {} data rows, header says {rows}", data.len()),
        });
    }
    let mut entries = Vec::with_capacity(rows * cols);
    for (i, row) in data.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| err(&format!("row {i} not an array")))?;
        if row.len() != cols {
            return Err(Error::DimensionMismatch {
                op: "matrix_from_json",
                detail: format!("{name}: row {i} has {} entries, header says {cols}", row.len()),
            });
        }
        for x in row {
            entries.push(S::from_json(x).map_err(|e| err(&e.to_string()))?);
        }
    }
    Matrix::new(rows, cols, entries)
}

pub fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Json(format!("missing field {key:?}")))
}

pub fn field_usize(obj: &Map<String, Value>, key: &str) -> Result<usize> {
    field(obj, key)?
        .as_u64()
        .map(|v| v as usize)
        .ok_or_else(|| Error::Json(format!("field {key:?} must be a non-negative integer")))
}

pub fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Json(format!("{what}: expected object")))
}

/// Labels may be strings or numbers; both are kept as strings.
pub fn labels_from_json(v: &Value, what: &str) -> Result<Vec<String>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Json(format!("{what}: expected array of labels")))?;
    arr.iter()
        .map(|x| match x {
            Value::String(s) => Ok(s.clone()),
            Value::Number(n) => Ok(n.to_string()),
            other => Err(Error::Json(format!("{what}: bad label {other}"))),
        })
        .collect()
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{C, Q};

    #[test]
    fn rational_matrix_round_trip() {
        let m = Matrix::from_rows(vec![
            vec![Q::from_ratio(1, 2), Q::from_i64(-3)],
            vec![Q::from_i64(0), Q::from_ratio(7, 5)],
        ])
        .unwrap();
        let v = matrix_to_json(&m);
        assert_eq!(v["data"][0][0], json!("1/2"));
        assert_eq!(matrix_from_json::<Q>(&v, "m").unwrap(), m);
    }

    #[test]
    fn complex_entries_as_pairs() {
        let v = json!({"rows":1,"cols":2,"data":[[[1.5,-2.0], 3]]});
        let m: Matrix<C> = matrix_from_json(&v, "m").unwrap();
        assert_eq!(m[(0, 0)], C::new(1.5, -2.0));
        assert_eq!(m[(0, 1)], C::new(3.0, 0.0));
        assert_eq!(matrix_to_json(&m)["data"][0][0], json!([1.5, -2.0]));
    }

    #[test]
    fn dimension_errors_name_the_matrix() {
        let v = json!({"rows":2,"cols":1,"data":[["1"]]});
        let e = matrix_from_json::<Q>(&v, "Phi").unwrap_err();
        assert!(e.to_string().contains("Phi"), "{e}");
    }
}
