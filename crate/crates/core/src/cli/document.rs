//! JSON matrix documents: `{"n": 2, "entries": [["0", "1/2"], ["1/2", "3"]]}`.
//!
//! Entries are rational strings, never JSON numbers, so parsing is exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tropical::{Rat, SymMatrix};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    n: usize,
    entries: Vec<Vec<String>>,
}

/// A parsed, validated, symmetric matrix document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixDocument {
    matrix: SymMatrix,
}

impl MatrixDocument {
    pub fn new(matrix: SymMatrix) -> Self {
        MatrixDocument { matrix }
    }

    pub fn matrix(&self) -> &SymMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SymMatrix {
        self.matrix
    }

    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawDocument = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("invalid document: {e}")))?;
        if raw.n == 0 {
            return Err(Error::Parse("n must be at least 1".into()));
        }
        if raw.entries.len() != raw.n || raw.entries.iter().any(|r| r.len() != raw.n) {
            return Err(Error::Parse(format!(
                "entries must be a {0}x{0} array",
                raw.n
            )));
        }
        let rows = raw
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| s.parse::<Rat>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let matrix = SymMatrix::from_rows(rows).map_err(|e| match e {
            Error::RejectedInput(m) => Error::Parse(m),
            other => other,
        })?;
        Ok(MatrixDocument { matrix })
    }

    /// Compact single-line JSON with canonical rational strings.
    pub fn render(&self) -> String {
        let raw = RawDocument {
            n: self.matrix.n(),
            entries: self
                .matrix
                .to_rows()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        };
        serde_json::to_string(&raw).expect("plain strings serialize")
    }
}
