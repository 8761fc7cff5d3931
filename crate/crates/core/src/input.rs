//! JSON presentations of algebras and Hopf algebras.
//!
//! A file is recognised by its top-level `"kind"` field. Scalars are written
//! as strings (`"3"`, `"-1/2"`); plain JSON integers are accepted as well.

use serde::Deserialize;
use thiserror::Error;

use crate::exactfield::{Field, FieldError, FieldSpec};
use crate::linalg::SparseVec;

#[derive(Debug, Error)]
pub enum InputError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("missing top-level \"kind\" (expected \"algebra\" or \"hopf\")")]
    MissingKind,
    #[error("unknown kind {0:?} (expected \"algebra\" or \"hopf\")")]
    UnknownKind(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("{0}")]
    Shape(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Text(String),
    Int(i64),
}

impl ScalarText {
    pub fn parse<F: Field>(&self, field: &F) -> Result<F::Elem, FieldError> {
        match self {
            ScalarText::Text(s) => field.parse(s),
            ScalarText::Int(n) => Ok(field.from_i64(*n)),
        }
    }
}

/// Structure constant `[i, j, k, c]`: the coefficient `c` of `e_k` in a
/// product (or of `e_j ⊗ e_k` in a coproduct).
pub type Triple = (usize, usize, usize, ScalarText);

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAlgebra {
    pub kind: String,
    pub field: String,
    pub dim: usize,
    #[serde(default)]
    pub basis_names: Option<Vec<String>>,
    pub mul: Vec<Triple>,
    pub unit: Vec<ScalarText>,
    #[serde(default)]
    pub form: Option<Vec<Vec<ScalarText>>>,
    #[serde(default)]
    pub description: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawHopf {
    pub kind: String,
    pub field: String,
    pub dim: usize,
    #[serde(default)]
    pub basis_names: Option<Vec<String>>,
    pub mul: Vec<Triple>,
    pub unit: Vec<ScalarText>,
    pub comul: Vec<Triple>,
    pub counit: Vec<ScalarText>,
    /// Row `i` holds the coordinates of `S(e_i)`.
    pub antipode: Vec<Vec<ScalarText>>,
    pub character: Vec<ScalarText>,
    #[serde(default)]
    pub description: Option<String>,
}

#[derive(Debug, Clone)]
pub enum Presentation {
    Algebra(RawAlgebra),
    Hopf(RawHopf),
}

impl Presentation {
    pub fn field_name(&self) -> &str {
        match self {
            Presentation::Algebra(a) => &a.field,
            Presentation::Hopf(h) => &h.field,
        }
    }

    pub fn field_spec(&self) -> Result<FieldSpec, InputError> {
        Ok(self.field_name().parse()?)
    }

    pub fn set_field(&mut self, spec: FieldSpec) {
        let name = spec.to_string();
        match self {
            Presentation::Algebra(a) => a.field = name,
            Presentation::Hopf(h) => h.field = name,
        }
    }
}

/// Parses a presentation, choosing the schema from `"kind"`.
pub fn parse_presentation(text: &str) -> Result<Presentation, InputError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| InputError::Json(e.to_string()))?;
    let kind = match value.get("kind") {
        Some(serde_json::Value::String(k)) => k.clone(),
        Some(other) => return Err(InputError::UnknownKind(other.to_string())),
        None => return Err(InputError::MissingKind),
    };
    let shape = |e: serde_json::Error| InputError::Shape(format!("{kind} presentation: {e}"));
    match kind.as_str() {
        "algebra" => Ok(Presentation::Algebra(serde_json::from_value(value).map_err(shape)?)),
        "hopf" => Ok(Presentation::Hopf(serde_json::from_value(value).map_err(shape)?)),
        _ => Err(InputError::UnknownKind(kind)),
    }
}

pub(crate) fn basis_names(dim: usize, names: &Option<Vec<String>>) -> Result<Vec<String>, InputError> {
    match names {
        Some(n) if n.len() == dim => Ok(n.clone()),
        Some(n) => Err(InputError::Shape(format!("basis_names has {} entries, dim is {dim}", n.len()))),
        None => Ok((0..dim).map(|i| format!("e{i}")).collect()),
    }
}

pub(crate) fn parse_vector<F: Field>(
    field: &F,
    dim: usize,
    what: &str,
    xs: &[ScalarText],
) -> Result<SparseVec<F::Elem>, InputError> {
    if xs.len() != dim {
        return Err(InputError::Shape(format!("{what} has {} entries, dim is {dim}", xs.len())));
    }
    let values = xs.iter().map(|x| x.parse(field)).collect::<Result<Vec<_>, _>>()?;
    Ok(SparseVec::from_dense(field, &values))
}

pub(crate) fn parse_matrix<F: Field>(
    field: &F,
    dim: usize,
    what: &str,
    rows: &[Vec<ScalarText>],
) -> Result<Vec<Vec<F::Elem>>, InputError> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(InputError::Shape(format!("{what} must be a {dim}×{dim} matrix")));
    }
    rows.iter()
        .map(|r| r.iter().map(|x| x.parse(field).map_err(InputError::from)).collect())
        .collect()
}

/// Structure constants as a table `t[i][j]` of vectors (sparse in the third index).
pub(crate) fn parse_table<F: Field>(
    field: &F,
    dim: usize,
    what: &str,
    triples: &[Triple],
) -> Result<Vec<Vec<SparseVec<F::Elem>>>, InputError> {
    let mut table: Vec<Vec<Vec<(usize, F::Elem)>>> = vec![vec![Vec::new(); dim]; dim];
    for (i, j, k, c) in triples {
        if *i >= dim || *j >= dim || *k >= dim {
            return Err(InputError::Shape(format!("{what} entry [{i}, {j}, {k}] out of range for dim {dim}")));
        }
        table[*i][*j].push((*k, c.parse(field)?));
    }
    Ok(table
        .into_iter()
        .map(|row| row.into_iter().map(|t| SparseVec::from_terms(field, t)).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sniffing() {
        assert!(matches!(parse_presentation("not json"), Err(InputError::Json(_))));
        assert!(matches!(parse_presentation("{}"), Err(InputError::MissingKind)));
        assert!(matches!(parse_presentation(r#"{"kind":"ring"}"#), Err(InputError::UnknownKind(_))));
        assert!(matches!(parse_presentation(r#"{"kind":"algebra"}"#), Err(InputError::Shape(_))));
        let a = parse_presentation(
            r#"{"kind":"algebra","field":"Q","dim":1,"mul":[[0,0,0,"1"]],"unit":[1]}"#,
        )
        .unwrap();
        assert!(matches!(a, Presentation::Algebra(_)));
    }
}
