//! Self-describing JSON documents for relations and pencils.
//!
//! One object per file, UTF-8, with all scalars written as strings in the
//! exact scalar grammar (`"3/2-1/5i"`). A relation document lists generator
//! pairs of the graph; a pencil document lists the `E` and `F` grids.
//! Emitted documents re-parse to the same value, so verification failures
//! can be replayed byte-for-byte.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use linrel::{
    pencil_to_relation, relation_to_pencil, GaussianRational, LinearRelation, Matrix, MatrixPencil,
    ScalarParseError,
};

type Q = GaussianRational;

/// One generator `(x, y)` of a relation's graph, as scalar strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorPair {
    pub x: Vec<String>,
    pub y: Vec<String>,
}

/// The on-disk document: either a relation by generators or a pencil by its
/// two coefficient matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum InputDocument {
    Relation {
        space_dim: usize,
        generators: Vec<GeneratorPair>,
    },
    Pencil {
        #[serde(rename = "E")]
        e: Vec<Vec<String>>,
        #[serde(rename = "F")]
        f: Vec<Vec<String>>,
    },
}

#[derive(Debug, Error)]
pub enum DocumentError {
    /// Malformed JSON; the message carries line and column.
    #[error("invalid document: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid scalar at {location}: {source}")]
    Scalar {
        location: String,
        source: ScalarParseError,
    },
    #[error("{0}")]
    Shape(String),
}

/// A validated document, ready for analysis.
#[derive(Debug, Clone)]
pub enum LoadedInput {
    Relation(LinearRelation),
    Pencil(MatrixPencil),
}

impl LoadedInput {
    /// The relation the document describes; for pencils, the operator range
    /// of `[E; F]`.
    pub fn relation(&self) -> LinearRelation {
        match self {
            LoadedInput::Relation(a) => a.clone(),
            LoadedInput::Pencil(p) => pencil_to_relation(p),
        }
    }

    /// A pencil describing the document; for relations, a graph basis split
    /// columnwise into `E` over `F`.
    pub fn pencil(&self) -> MatrixPencil {
        match self {
            LoadedInput::Relation(a) => relation_to_pencil(a),
            LoadedInput::Pencil(p) => p.clone(),
        }
    }

    pub fn is_pencil(&self) -> bool {
        matches!(self, LoadedInput::Pencil(_))
    }
}

fn parse_scalar(text: &str, location: impl Fn() -> String) -> Result<Q, DocumentError> {
    text.parse::<Q>().map_err(|source| DocumentError::Scalar {
        location: location(),
        source,
    })
}

fn parse_grid(name: &str, grid: &[Vec<String>]) -> Result<Matrix, DocumentError> {
    let cols = grid.first().map_or(0, |row| row.len());
    let mut out = Matrix::zeros(grid.len(), cols);
    for (r, row) in grid.iter().enumerate() {
        if row.len() != cols {
            return Err(DocumentError::Shape(format!(
                "{name}[{r}] has {} entries, expected {cols}",
                row.len()
            )));
        }
        for (c, entry) in row.iter().enumerate() {
            out.set(r, c, parse_scalar(entry, || format!("{name}[{r}][{c}]"))?);
        }
    }
    Ok(out)
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("document serializes");
        text.push('\n');
        text
    }

    /// Validate every scalar and shape, then build the described value.
    pub fn build(&self) -> Result<LoadedInput, DocumentError> {
        match self {
            InputDocument::Relation {
                space_dim,
                generators,
            } => {
                let mut pairs = Vec::with_capacity(generators.len());
                for (g, pair) in generators.iter().enumerate() {
                    for (part, vec) in [("x", &pair.x), ("y", &pair.y)] {
                        if vec.len() != *space_dim {
                            return Err(DocumentError::Shape(format!(
                                "generators[{g}].{part} has {} entries, expected space_dim = {space_dim}",
                                vec.len()
                            )));
                        }
                    }
                    let parse_vec = |part: &str, vec: &[String]| -> Result<Vec<Q>, DocumentError> {
                        vec.iter()
                            .enumerate()
                            .map(|(j, s)| {
                                parse_scalar(s, || format!("generators[{g}].{part}[{j}]"))
                            })
                            .collect()
                    };
                    pairs.push((parse_vec("x", &pair.x)?, parse_vec("y", &pair.y)?));
                }
                let a = LinearRelation::from_generators(*space_dim, &pairs)
                    .map_err(|e| DocumentError::Shape(e.to_string()))?;
                Ok(LoadedInput::Relation(a))
            }
            InputDocument::Pencil { e, f } => {
                let e = parse_grid("E", e)?;
                let f = parse_grid("F", f)?;
                let p = MatrixPencil::new(e, f).map_err(|e| DocumentError::Shape(e.to_string()))?;
                Ok(LoadedInput::Pencil(p))
            }
        }
    }

    /// Encode a relation by the rows of its graph basis.
    pub fn from_relation(a: &LinearRelation) -> Self {
        let m = a.space_dim();
        let generators = a
            .graph()
            .basis_vectors()
            .map(|row| GeneratorPair {
                x: row[..m].iter().map(Q::to_string).collect(),
                y: row[m..].iter().map(Q::to_string).collect(),
            })
            .collect();
        InputDocument::Relation {
            space_dim: m,
            generators,
        }
    }

    pub fn from_pencil(p: &MatrixPencil) -> Self {
        let grid = |mat: &Matrix| {
            (0..mat.rows())
                .map(|r| (0..mat.cols()).map(|c| mat[(r, c)].to_string()).collect())
                .collect()
        };
        InputDocument::Pencil {
            e: grid(p.e()),
            f: grid(p.f()),
        }
    }
}
