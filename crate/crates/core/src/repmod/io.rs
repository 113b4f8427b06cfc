//! JSON form of representations:
//! `{"algebra": <inline or path>, "field": "Q" | {"Fp": p}, "dims": {vertex: n}, "action": {arrow: matrix}}`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Representation;
use crate::algebra::{AlgebraFile, StringAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Matrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldLiteral {
    Name(String),
    Prime { #[serde(rename = "Fp")] fp: u64 },
}

impl FieldLiteral {
    pub fn to_spec(&self) -> Result<FieldSpec> {
        match self {
            FieldLiteral::Name(s) if s == "Q" => Ok(FieldSpec::Rationals),
            FieldLiteral::Name(s) => match s.strip_prefix('F').and_then(|p| p.parse().ok()) {
                Some(p) => FieldSpec::prime(p),
                None => Err(Error::Malformed(format!("unknown field {s:?}"))),
            },
            FieldLiteral::Prime { fp } => FieldSpec::prime(*fp),
        }
    }

    pub fn from_spec(f: FieldSpec) -> Self {
        match f {
            FieldSpec::Rationals => FieldLiteral::Name("Q".into()),
            FieldSpec::Prime(p) => FieldLiteral::Prime { fp: p },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RepFile {
    pub algebra: Value,
    pub field: FieldLiteral,
    #[serde(default)]
    pub dims: BTreeMap<String, usize>,
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<Value>>>,
}

/// Reads an algebra given inline or as a path relative to `base`.
pub(crate) fn load_algebra(v: &Value, base: Option<&Path>) -> Result<StringAlgebra> {
    let file: AlgebraFile = match v {
        Value::String(p) => {
            let path = match base {
                Some(b) => b.join(p),
                None => p.into(),
            };
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Malformed(format!("cannot read algebra {}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("algebra file: {e}")))?
        }
        other => serde_json::from_value(other.clone()).map_err(|e| Error::Malformed(format!("algebra: {e}")))?,
    };
    StringAlgebra::from_file(&file)
}

pub fn parse_entry(field: FieldSpec, v: &Value) -> Result<Scalar> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(field.from_i64(i)),
            None => Err(Error::Malformed(format!("matrix entry {n} is not an integer; use a string \"a/b\""))),
        },
        Value::String(s) => field.parse(s),
        other => Err(Error::Malformed(format!("bad matrix entry {other}"))),
    }
}

pub(crate) fn parse_matrix(field: FieldSpec, rows: usize, cols: usize, lit: &[Vec<Value>]) -> Result<Matrix> {
    let shape_err = || Error::Dimension(format!("expected a {rows}x{cols} matrix"));
    if lit.len() != rows || lit.iter().any(|r| r.len() != cols) {
        // An empty list stands for any matrix with a zero dimension.
        if !(lit.is_empty() && (rows == 0 || cols == 0)) {
            return Err(shape_err());
        }
    }
    let mut m = Matrix::zeros(field, rows, cols);
    for (i, r) in lit.iter().enumerate() {
        for (j, v) in r.iter().enumerate() {
            m.set(i, j, parse_entry(field, v)?);
        }
    }
    Ok(m)
}

pub fn matrix_literal(m: &Matrix) -> Vec<Vec<Value>> {
    m.to_literals()
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|s| match s.parse::<i64>() {
                    Ok(i) => Value::from(i),
                    Err(_) => Value::from(s),
                })
                .collect()
        })
        .collect()
}

impl RepFile {
    pub fn to_representation(&self, base: Option<&Path>) -> Result<Representation> {
        let alg = load_algebra(&self.algebra, base)?;
        let field = self.field.to_spec()?;
        for name in self.dims.keys() {
            if alg.vertex_index(name).is_none() {
                return Err(Error::Malformed(format!("unknown vertex {name:?}")));
            }
        }
        for name in self.action.keys() {
            if alg.arrow_index(name).is_none() {
                return Err(Error::Malformed(format!("unknown arrow {name:?}")));
            }
        }
        let dims: Vec<usize> = alg.vertices().iter().map(|v| self.dims.get(v).copied().unwrap_or(0)).collect();
        let action = alg
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, arrow)| {
                let (r, c) = (dims[alg.arrow_head(a)], dims[alg.arrow_tail(a)]);
                match self.action.get(&arrow.name) {
                    Some(lit) => parse_matrix(field, r, c, lit),
                    None => Ok(Matrix::zeros(field, r, c)),
                }
            })
            .collect::<Result<_>>()?;
        Representation::new(alg, field, dims, action)
    }

    pub fn from_representation(m: &Representation) -> Self {
        let alg = m.algebra();
        RepFile {
            algebra: serde_json::to_value(alg.to_file()).expect("algebra serialises"),
            field: FieldLiteral::from_spec(m.field()),
            dims: alg.vertices().iter().cloned().zip(m.dims().iter().copied()).collect(),
            action: alg
                .arrows()
                .iter()
                .zip(m.actions())
                .map(|(a, mat)| (a.name.clone(), matrix_literal(mat)))
                .collect(),
        }
    }
}

impl Representation {
    pub fn from_json(text: &str, base: Option<&Path>) -> Result<Self> {
        let file: RepFile = serde_json::from_str(text).map_err(|e| Error::Malformed(format!("representation: {e}")))?;
        file.to_representation(base)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&RepFile::from_representation(self)).expect("serialises")
    }
}
