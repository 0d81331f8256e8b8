//! JSON exchange format.
//!
//! ```json
//! {"rows": 2, "cols": 2, "min": [["0", "1/2"], ["-1", "2"]], "max": [["1", "1/2"], ["0", "3"]]}
//! ```
//!
//! Bounds are strings holding integers, decimals or fractions; plain JSON
//! integers are accepted as well. Serialization always writes canonical
//! strings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{IntervalMatrix, PointMatrix};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub min: Vec<Vec<Bound>>,
    pub max: Vec<Vec<Bound>>,
}

/// One bound as written in the file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Bound {
    Text(String),
    Integer(i64),
}

impl Bound {
    fn value(&self) -> Result<Rational> {
        match self {
            Bound::Text(s) => parse_rational(s),
            Bound::Integer(n) => Ok(Rational::from_integer((*n).into())),
        }
    }
}

fn grid(cells: &[Vec<Bound>], rows: usize, cols: usize, name: &str) -> Result<Vec<Vec<Rational>>> {
    if cells.len() != rows {
        return Err(Error::Parse {
            input: format!("{name} grid"),
            reason: format!("expected {rows} rows, found {}", cells.len()),
        });
    }
    cells
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != cols {
                return Err(Error::Parse {
                    input: format!("{name} grid"),
                    reason: format!("row {i}: expected {cols} entries, found {}", row.len()),
                });
            }
            row.iter().map(Bound::value).collect()
        })
        .collect()
}

impl MatrixFile {
    pub fn to_matrix(&self) -> Result<IntervalMatrix> {
        let min = grid(&self.min, self.rows, self.cols, "min")?;
        let max = grid(&self.max, self.rows, self.cols, "max")?;
        if self.rows == 0 {
            return IntervalMatrix::new(0, self.cols, Vec::new());
        }
        IntervalMatrix::from_bounds(min, max)
    }

    pub fn from_matrix(mu: &IntervalMatrix) -> Self {
        let text = |a: PointMatrix| {
            a.to_rows()
                .iter()
                .map(|r| r.iter().map(|x| Bound::Text(format_rational(x))).collect())
                .collect()
        };
        MatrixFile {
            rows: mu.rows(),
            cols: mu.cols(),
            min: text(mu.lower()),
            max: text(mu.upper()),
        }
    }
}

/// Parses a matrix file.
pub fn parse_matrix_json(text: &str) -> Result<IntervalMatrix> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        input: "matrix file".into(),
        reason: e.to_string(),
    })?;
    file.to_matrix()
}

/// Canonical matrix file text.
pub fn to_matrix_json(mu: &IntervalMatrix) -> String {
    serde_json::to_string(&MatrixFile::from_matrix(mu)).expect("plain data serializes")
}

/// A point matrix as a grid of canonical strings.
pub fn point_matrix_json(a: &PointMatrix) -> serde_json::Value {
    a.to_rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect::<Vec<_>>())
        .collect()
}
