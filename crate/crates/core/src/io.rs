//! JSON documents for triads and tetrahedron modules.
//!
//! A document is an object with an integer `"dim"` and named square matrices.
//! Every entry is a string `p` or `p/q`; decimals are rejected.

use crate::bd::Triad;
use crate::linalg::rational::ParseRationalError;
use crate::linalg::{parse_rational, RMatrix};
use crate::tet::{TetError, TetModule, CANONICAL_PAIRS};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{matrix}[{row}][{col}]: {source}")]
    Entry {
        matrix: String,
        row: usize,
        col: usize,
        source: ParseRationalError,
    },
    #[error("{matrix} row {row} has {found} entries, expected {expected}")]
    Ragged {
        matrix: String,
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("{matrix} is {rows}x{cols} but dim is {dim}")]
    Dimension {
        matrix: String,
        rows: usize,
        cols: usize,
        dim: usize,
    },
    #[error("dim must be positive")]
    ZeroDimension,
    #[error(transparent)]
    Module(#[from] TetError),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub parameters: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriadDocument {
    pub triad: Triad,
    pub metadata: Option<Metadata>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TetModuleDocument {
    pub module: TetModule,
    pub metadata: Option<Metadata>,
}

type RawMatrix = Vec<Vec<String>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTriad {
    dim: usize,
    #[serde(rename = "A")]
    a: RawMatrix,
    #[serde(rename = "Aprime")]
    a_prime: RawMatrix,
    #[serde(rename = "Adprime")]
    a_dprime: RawMatrix,
    #[serde(default)]
    metadata: Option<Metadata>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    dim: usize,
    #[serde(rename = "X01")]
    x01: RawMatrix,
    #[serde(rename = "X02")]
    x02: RawMatrix,
    #[serde(rename = "X03")]
    x03: RawMatrix,
    #[serde(rename = "X12")]
    x12: RawMatrix,
    #[serde(rename = "X13")]
    x13: RawMatrix,
    #[serde(rename = "X23")]
    x23: RawMatrix,
    #[serde(default)]
    metadata: Option<Metadata>,
}

fn parse_matrix(name: &str, raw: &RawMatrix, dim: usize) -> Result<RMatrix, IoError> {
    let width = raw.first().map_or(0, Vec::len);
    for (row, entries) in raw.iter().enumerate() {
        if entries.len() != width {
            return Err(IoError::Ragged {
                matrix: name.to_string(),
                row,
                expected: width,
                found: entries.len(),
            });
        }
    }
    if raw.len() != dim || width != dim {
        return Err(IoError::Dimension {
            matrix: name.to_string(),
            rows: raw.len(),
            cols: width,
            dim,
        });
    }
    let rows = raw
        .iter()
        .enumerate()
        .map(|(row, entries)| {
            entries
                .iter()
                .enumerate()
                .map(|(col, text)| {
                    parse_rational(text).map_err(|source| IoError::Entry {
                        matrix: name.to_string(),
                        row,
                        col,
                        source,
                    })
                })
                .collect()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RMatrix::from_rows(rows).expect("checked rectangular"))
}

fn check_dim(dim: usize) -> Result<(), IoError> {
    if dim == 0 {
        Err(IoError::ZeroDimension)
    } else {
        Ok(())
    }
}

fn write_document(
    dim: usize,
    matrices: &[(&str, &RMatrix)],
    metadata: Option<&Metadata>,
) -> String {
    let mut out = format!("{{\n  \"dim\": {dim}");
    for (name, m) in matrices {
        write!(out, ",\n  \"{name}\": [").unwrap();
        for (i, row) in m.to_strings().iter().enumerate() {
            let sep = if i == 0 { "" } else { "," };
            write!(out, "{sep}\n    {}", serde_json::to_string(row).unwrap()).unwrap();
        }
        out.push_str("\n  ]");
    }
    if let Some(meta) = metadata {
        write!(
            out,
            ",\n  \"metadata\": {}",
            serde_json::to_string(meta).unwrap()
        )
        .unwrap();
    }
    out.push_str("\n}\n");
    out
}

impl TriadDocument {
    pub fn new(triad: Triad) -> Self {
        Self {
            triad,
            metadata: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let raw: RawTriad = serde_json::from_str(text)?;
        check_dim(raw.dim)?;
        Ok(Self {
            triad: Triad::new(
                parse_matrix("A", &raw.a, raw.dim)?,
                parse_matrix("Aprime", &raw.a_prime, raw.dim)?,
                parse_matrix("Adprime", &raw.a_dprime, raw.dim)?,
            ),
            metadata: raw.metadata,
        })
    }

    pub fn to_json(&self) -> String {
        let t = &self.triad;
        write_document(
            t.dim(),
            &[
                ("A", &t.a),
                ("Aprime", &t.a_prime),
                ("Adprime", &t.a_dprime),
            ],
            self.metadata.as_ref(),
        )
    }

    pub fn load(path: &Path) -> Result<Self, IoError> {
        Self::from_json(&read(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), IoError> {
        write(path, &self.to_json())
    }
}

impl TetModuleDocument {
    pub fn new(module: TetModule) -> Self {
        Self {
            module,
            metadata: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let raw: RawModule = serde_json::from_str(text)?;
        check_dim(raw.dim)?;
        let named = [
            ("X01", &raw.x01),
            ("X02", &raw.x02),
            ("X03", &raw.x03),
            ("X12", &raw.x12),
            ("X13", &raw.x13),
            ("X23", &raw.x23),
        ];
        let mut gens = Vec::with_capacity(6);
        for (name, m) in named {
            gens.push(parse_matrix(name, m, raw.dim)?);
        }
        let gens: [RMatrix; 6] = gens.try_into().expect("six generators");
        Ok(Self {
            module: TetModule::new(raw.dim, gens)?,
            metadata: raw.metadata,
        })
    }

    pub fn to_json(&self) -> String {
        let names: Vec<String> = CANONICAL_PAIRS
            .iter()
            .map(|(i, j)| format!("X{i}{j}"))
            .collect();
        let matrices: Vec<(&str, &RMatrix)> = names
            .iter()
            .map(String::as_str)
            .zip(self.module.canonical())
            .collect();
        write_document(self.module.dim(), &matrices, self.metadata.as_ref())
    }

    pub fn load(path: &Path) -> Result<Self, IoError> {
        Self::from_json(&read(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), IoError> {
        write(path, &self.to_json())
    }
}

/// A single named matrix, as `{"dim": n, "<name>": [...]}`.
pub fn matrix_to_json(name: &str, m: &RMatrix) -> String {
    write_document(m.rows(), &[(name, m)], None)
}

pub fn matrix_from_json(name: &str, text: &str) -> Result<RMatrix, IoError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    #[derive(Deserialize)]
    struct Dim {
        dim: usize,
    }
    let Dim { dim } = serde_json::from_value(value.clone())?;
    check_dim(dim)?;
    let raw: RawMatrix = match value.get(name) {
        Some(v) => serde_json::from_value(v.clone())?,
        None => {
            return Err(IoError::Json(serde::de::Error::custom(format!(
                "missing field `{name}`"
            ))))
        }
    };
    parse_matrix(name, &raw, dim)
}

pub(crate) fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn write(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::File {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, RMatrix};

    fn d1() -> Triad {
        Triad::new(
            RMatrix::from_i64(&[&[-1, 0], &[1, 1]]),
            RMatrix::from_i64(&[&[-1, 0], &[2, 1]]),
            RMatrix::from_i64(&[&[-1, 0], &[0, 1]]),
        )
    }

    #[test]
    fn triad_round_trip() {
        let mut doc = TriadDocument::new(d1());
        doc.metadata = Some(Metadata {
            source: Some("test".into()),
            parameters: [("beta".to_string(), "1".to_string())].into(),
        });
        let text = doc.to_json();
        assert!(text.contains("\"A\": [\n    [\"-1\",\"0\"],\n    [\"1\",\"1\"]\n  ]"));
        assert_eq!(TriadDocument::from_json(&text).unwrap(), doc);
    }

    #[test]
    fn entries_normalize() {
        let text = r#"{"dim":1,"A":[["3/6"]],"Aprime":[["0"]],"Adprime":[["-4/2"]]}"#;
        let doc = TriadDocument::from_json(text).unwrap();
        assert_eq!(doc.triad.a[(0, 0)], frac(1, 2));
        assert_eq!(doc.triad.a_dprime[(0, 0)], frac(-2, 1));
    }

    #[test]
    fn positional_errors() {
        let decimal = r#"{"dim":2,"A":[["0","0"],["0","1.5"]],"Aprime":[["0","0"],["0","0"]],"Adprime":[["0","0"],["0","0"]]}"#;
        match TriadDocument::from_json(decimal) {
            Err(IoError::Entry {
                matrix, row, col, ..
            }) => {
                assert_eq!((matrix.as_str(), row, col), ("A", 1, 1));
            }
            other => panic!("unexpected {other:?}"),
        }
        let ragged = r#"{"dim":2,"A":[["0","0"],["0"]],"Aprime":[["0","0"],["0","0"]],"Adprime":[["0","0"],["0","0"]]}"#;
        assert!(matches!(
            TriadDocument::from_json(ragged),
            Err(IoError::Ragged {
                row: 1,
                expected: 2,
                found: 1,
                ..
            })
        ));
        let wrong_dim = r#"{"dim":3,"A":[["0","0"],["0","0"]],"Aprime":[["0","0"],["0","0"]],"Adprime":[["0","0"],["0","0"]]}"#;
        assert!(matches!(
            TriadDocument::from_json(wrong_dim),
            Err(IoError::Dimension {
                dim: 3,
                rows: 2,
                ..
            })
        ));
        assert!(matches!(
            TriadDocument::from_json(r#"{"dim":1,"A":[["0"]]}"#),
            Err(IoError::Json(_))
        ));
        assert!(matches!(
            TriadDocument::from_json(r#"{"dim":0,"A":[],"Aprime":[],"Adprime":[]}"#),
            Err(IoError::ZeroDimension)
        ));
    }

    #[test]
    fn module_round_trip() {
        let module = TetModule::new(
            1,
            std::array::from_fn(|k| RMatrix::from_i64(&[&[k as i64 - 2]])),
        )
        .unwrap();
        let doc = TetModuleDocument::new(module);
        let text = doc.to_json();
        assert!(text.contains("\"X23\": [\n    [\"3\"]\n  ]"));
        assert_eq!(TetModuleDocument::from_json(&text).unwrap(), doc);
    }

    #[test]
    fn single_matrix_round_trip() {
        let m = RMatrix::from_i64(&[&[3, 12], &[0, 1]]);
        let text = matrix_to_json("X02", &m);
        assert_eq!(matrix_from_json("X02", &text).unwrap(), m);
        assert!(matrix_from_json("X13", &text).is_err());
    }
}
