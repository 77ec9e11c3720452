//! JSON interchange for modules and pairs. Scalars are `"p"` or `"p/q"`
//! strings; matrices are row-major arrays of rows.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{format_rational, parse_rational, ExactError, QParam, Rational};
use crate::linalg::Matrix;
use crate::tetra::{GenAssignment, GenIndex};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Scalar(#[from] ExactError),
    #[error("{name}: expected a {dim}x{dim} matrix")]
    Shape { name: String, dim: usize },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("missing generator {0}")]
    MissingGenerator(String),
    #[error("missing matrix {0:?}")]
    MissingMatrix(&'static str),
}

pub type JsonMatrix = Vec<Vec<String>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub q: String,
    pub dim: usize,
    pub generators: BTreeMap<String, JsonMatrix>,
}

/// Pair file; exactly one of the `K`/`Kstar` and `A`/`Astar` couples is set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub q: String,
    pub dim: usize,
    #[serde(rename = "K", skip_serializing_if = "Option::is_none", default)]
    pub k: Option<JsonMatrix>,
    #[serde(rename = "Kstar", skip_serializing_if = "Option::is_none", default)]
    pub kstar: Option<JsonMatrix>,
    #[serde(rename = "A", skip_serializing_if = "Option::is_none", default)]
    pub a: Option<JsonMatrix>,
    #[serde(rename = "Astar", skip_serializing_if = "Option::is_none", default)]
    pub astar: Option<JsonMatrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairKind {
    Inverting,
    Tridiagonal,
}

impl PairKind {
    fn keys(self) -> (&'static str, &'static str) {
        match self {
            PairKind::Inverting => ("K", "Kstar"),
            PairKind::Tridiagonal => ("A", "Astar"),
        }
    }
}

/// A parsed pair file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairData {
    pub kind: PairKind,
    pub q: QParam<Rational>,
    pub first: Matrix<Rational>,
    pub second: Matrix<Rational>,
}

pub fn matrix_to_json(m: &Matrix<Rational>) -> JsonMatrix {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(format_rational).collect())
        .collect()
}

pub fn matrix_from_json(rows: &JsonMatrix, dim: usize, name: &str) -> Result<Matrix<Rational>, IoError> {
    let shape = || IoError::Shape {
        name: name.to_string(),
        dim,
    };
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(shape());
    }
    let parsed = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(parsed).map_err(|_| shape())
}

pub fn q_to_string(q: &QParam<Rational>) -> String {
    format_rational(q.value())
}

pub fn module_to_file(gens: &GenAssignment<Rational>, q: &QParam<Rational>) -> ModuleFile {
    ModuleFile {
        q: q_to_string(q),
        dim: gens.dim(),
        generators: gens.iter().map(|(g, m)| (g.name(), matrix_to_json(m))).collect(),
    }
}

pub fn module_from_file(file: &ModuleFile) -> Result<(QParam<Rational>, GenAssignment<Rational>), IoError> {
    let q = QParam::parse(&file.q)?;
    if let Some(name) = file.generators.keys().find(|n| GenIndex::from_name(n).is_none()) {
        return Err(IoError::UnknownGenerator(name.clone()));
    }
    let mut map = BTreeMap::new();
    for g in GenIndex::ALL {
        let name = g.name();
        let rows = file.generators.get(&name).ok_or_else(|| IoError::MissingGenerator(name.clone()))?;
        map.insert(g, matrix_from_json(rows, file.dim, &name)?);
    }
    let gens = GenAssignment::new(map).expect("all eight generators of one size");
    Ok((q, gens))
}

pub fn emit_module(gens: &GenAssignment<Rational>, q: &QParam<Rational>) -> String {
    serde_json::to_string_pretty(&module_to_file(gens, q)).expect("module serializes")
}

pub fn parse_module(text: &str) -> Result<(QParam<Rational>, GenAssignment<Rational>), IoError> {
    module_from_file(&serde_json::from_str(text)?)
}

pub fn emit_pair(pair: &PairData) -> String {
    let (first, second) = (Some(matrix_to_json(&pair.first)), Some(matrix_to_json(&pair.second)));
    let mut file = PairFile {
        q: q_to_string(&pair.q),
        dim: pair.first.rows(),
        k: None,
        kstar: None,
        a: None,
        astar: None,
    };
    match pair.kind {
        PairKind::Inverting => (file.k, file.kstar) = (first, second),
        PairKind::Tridiagonal => (file.a, file.astar) = (first, second),
    }
    serde_json::to_string_pretty(&file).expect("pair serializes")
}

/// Parses a pair file. The kind is read from which keys are present.
pub fn parse_pair(text: &str) -> Result<PairData, IoError> {
    let file: PairFile = serde_json::from_str(text)?;
    let q = QParam::parse(&file.q)?;
    let (kind, first, second) = match (&file.k, &file.kstar, &file.a, &file.astar) {
        (Some(k), Some(ks), None, None) => (PairKind::Inverting, k, ks),
        (None, None, Some(a), Some(astar)) => (PairKind::Tridiagonal, a, astar),
        (None, _, None, _) => return Err(IoError::MissingMatrix("K")),
        (Some(_), None, _, _) => return Err(IoError::MissingMatrix("Kstar")),
        _ => return Err(IoError::MissingMatrix("Astar")),
    };
    let (n1, n2) = kind.keys();
    Ok(PairData {
        kind,
        first: matrix_from_json(first, file.dim, n1)?,
        second: matrix_from_json(second, file.dim, n2)?,
        q,
    })
}
