//! JSON encodings of matrices, subspaces, projectors and states.
//!
//! Matrices are `{"rows": r, "cols": c, "data": [[re, im], ...]}` in
//! row-major order. Floats are written in shortest round-trip form, so a
//! write followed by a read reproduces every entry bit for bit.
//!
//! Decoding walks a `serde_json::Value` by hand so that every error names
//! the field it came from, e.g. `data[5][1]`.

use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

use qprop_core::{Complex64, ComplexMatrix, Projector, StateVector, Subspace, Tolerance};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("field `{field}`: {message}")]
    Field { field: String, message: String },
    #[error("{what}: {source}")]
    Invalid {
        what: &'static str,
        source: qprop_core::Error,
    },
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Field {
        field: field.into(),
        message: message.into(),
    }
}

/// Wire form of a matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SubspaceJson {
    pub ambient: usize,
    pub basis: MatrixJson,
}

impl From<&Subspace> for SubspaceJson {
    fn from(s: &Subspace) -> Self {
        Self {
            ambient: s.ambient(),
            basis: s.basis().into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProjectorJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(flatten)]
    pub matrix: MatrixJson,
    pub validated: bool,
}

impl ProjectorJson {
    pub fn new(p: &Projector, label: Option<&str>) -> Self {
        Self {
            label: label.map(str::to_owned),
            matrix: p.matrix().into(),
            validated: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct StateJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(flatten)]
    pub vector: MatrixJson,
}

impl From<&StateVector> for StateJson {
    fn from(s: &StateVector) -> Self {
        Self {
            label: s.label().map(str::to_owned),
            vector: s.vector().into(),
        }
    }
}

/// A complex number as `[re, im]`.
pub fn complex_json(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn object<'a>(v: &'a Value, field: &str) -> Result<&'a Map<String, Value>, FormatError> {
    v.as_object()
        .ok_or_else(|| field_err(field, "expected a JSON object"))
}

fn get<'a>(obj: &'a Map<String, Value>, prefix: &str, key: &str) -> Result<&'a Value, FormatError> {
    obj.get(key)
        .ok_or_else(|| field_err(join(prefix, key), "missing"))
}

fn join(prefix: &str, key: &str) -> String {
    if prefix.is_empty() {
        key.to_owned()
    } else {
        format!("{prefix}.{key}")
    }
}

fn dimension(v: &Value, field: &str) -> Result<usize, FormatError> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| field_err(field, "expected a non-negative integer"))
}

fn label(obj: &Map<String, Value>, prefix: &str) -> Result<Option<String>, FormatError> {
    match obj.get("label") {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(_) => Err(field_err(join(prefix, "label"), "expected a string")),
    }
}

fn matrix_fields(obj: &Map<String, Value>, prefix: &str) -> Result<ComplexMatrix, FormatError> {
    let rows = dimension(get(obj, prefix, "rows")?, &join(prefix, "rows"))?;
    let cols = dimension(get(obj, prefix, "cols")?, &join(prefix, "cols"))?;
    let data_field = join(prefix, "data");
    let data = get(obj, prefix, "data")?
        .as_array()
        .ok_or_else(|| field_err(&data_field, "expected an array of [re, im] pairs"))?;
    if data.len() != rows * cols {
        return Err(field_err(
            &data_field,
            format!(
                "expected {} entries for {rows}x{cols}, found {}",
                rows * cols,
                data.len()
            ),
        ));
    }
    let mut entries = Vec::with_capacity(data.len());
    for (k, pair) in data.iter().enumerate() {
        let at = format!("{data_field}[{k}]");
        let pair = pair
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| field_err(&at, "expected [re, im]"))?;
        let part = |i: usize| {
            pair[i]
                .as_f64()
                .ok_or_else(|| field_err(format!("{at}[{i}]"), "expected a number"))
        };
        entries.push(Complex64::new(part(0)?, part(1)?));
    }
    ComplexMatrix::new(rows, cols, entries).map_err(|source| FormatError::Invalid {
        what: "matrix",
        source,
    })
}

pub fn matrix_from_value(v: &Value) -> Result<ComplexMatrix, FormatError> {
    matrix_fields(object(v, "<root>")?, "")
}

pub fn subspace_from_value(v: &Value, tol: &Tolerance) -> Result<Subspace, FormatError> {
    let obj = object(v, "<root>")?;
    let ambient = dimension(get(obj, "", "ambient")?, "ambient")?;
    let basis = matrix_fields(object(get(obj, "", "basis")?, "basis")?, "basis")?;
    if basis.rows() != ambient {
        return Err(field_err(
            "basis.rows",
            format!(
                "expected {ambient} to match `ambient`, found {}",
                basis.rows()
            ),
        ));
    }
    Subspace::from_orthonormal(basis, tol).map_err(|source| FormatError::Invalid {
        what: "subspace basis",
        source,
    })
}

/// Reads a projector and its optional label. The `validated` flag is
/// informational: Hermiticity and idempotence are always rechecked.
pub fn projector_from_value(
    v: &Value,
    tol: &Tolerance,
) -> Result<(Projector, Option<String>), FormatError> {
    let obj = object(v, "<root>")?;
    if let Some(flag) = obj.get("validated") {
        if !flag.is_boolean() {
            return Err(field_err("validated", "expected a boolean"));
        }
    }
    let label = label(obj, "")?;
    let m = matrix_fields(obj, "")?;
    let p = Projector::new(m, tol).map_err(|source| FormatError::Invalid {
        what: "projector",
        source,
    })?;
    Ok((p, label))
}

pub fn state_from_value(v: &Value) -> Result<StateVector, FormatError> {
    let obj = object(v, "<root>")?;
    let label = label(obj, "")?;
    let m = matrix_fields(obj, "")?;
    let s = StateVector::new(m).map_err(|source| FormatError::Invalid {
        what: "state",
        source,
    })?;
    Ok(match label {
        Some(l) => s.with_label(l),
        None => s,
    })
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix, FormatError> {
    matrix_from_value(&serde_json::from_str(text)?)
}

pub fn parse_subspace(text: &str, tol: &Tolerance) -> Result<Subspace, FormatError> {
    subspace_from_value(&serde_json::from_str(text)?, tol)
}

pub fn parse_projector(
    text: &str,
    tol: &Tolerance,
) -> Result<(Projector, Option<String>), FormatError> {
    projector_from_value(&serde_json::from_str(text)?, tol)
}

pub fn parse_state(text: &str) -> Result<StateVector, FormatError> {
    state_from_value(&serde_json::from_str(text)?)
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use qprop_core::spin::spin32_fixtures;

    #[test]
    fn matrix_round_trip_is_exact() {
        let p = spin32_fixtures().projector_y32;
        let text = to_pretty(&MatrixJson::from(p.matrix()));
        assert_eq!(&parse_matrix(&text).unwrap(), p.matrix());
    }

    #[test]
    fn errors_name_the_field() {
        let e = parse_matrix(r#"{"rows": 1, "data": [[0, 0]]}"#).unwrap_err();
        assert_eq!(e.to_string(), "field `cols`: missing");
        let e = parse_matrix(r#"{"rows": 1, "cols": 2, "data": [[0, 0], [1, "x"]]}"#).unwrap_err();
        assert_eq!(e.to_string(), "field `data[1][1]`: expected a number");
        let e = parse_matrix(r#"{"rows": -1, "cols": 2, "data": []}"#).unwrap_err();
        assert!(e.to_string().starts_with("field `rows`"));
        let e = parse_subspace(
            r#"{"ambient": 2, "basis": {"rows": 2, "cols": 1}}"#,
            &Tolerance::default(),
        )
        .unwrap_err();
        assert_eq!(e.to_string(), "field `basis.data`: missing");
    }

    #[test]
    fn projector_is_revalidated() {
        let text =
            r#"{"rows": 2, "cols": 2, "data": [[1,0],[1,0],[0,0],[0,0]], "validated": true}"#;
        let e = parse_projector(text, &Tolerance::default()).unwrap_err();
        assert!(matches!(
            e,
            FormatError::Invalid {
                what: "projector",
                ..
            }
        ));
    }

    #[test]
    fn state_keeps_label() {
        let s = spin32_fixtures().ket_x32;
        let text = to_pretty(&StateJson::from(&s));
        let back = parse_state(&text).unwrap();
        assert_eq!(back.label(), Some("|X+3/2>"));
        assert_eq!(back.vector(), s.vector());
    }
}
