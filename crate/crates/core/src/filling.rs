//! Latin fillings of Young diagrams.
//!
//! Row `r` of length `l` holds each of `1..=l` exactly once and no column
//! repeats a symbol. Rows are stored top-to-bottom.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::allocation::allocate;
use crate::diagram::YoungDiagram;
use crate::error::{Error, Result};
use crate::outline::{embed_allocation, extract_filling, outline_to_latin};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatinFilling {
    diagram: YoungDiagram,
    rows: Vec<Vec<u32>>,
}

impl LatinFilling {
    /// Wraps rows (top-to-bottom) after checking that they form a diagram.
    /// The Latin property is not checked; see [`verify_filling`].
    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        if rows.windows(2).any(|w| w[0].len() < w[1].len()) {
            return Err(Error::invalid("filling rows must not get longer going down"));
        }
        let lengths: Vec<i64> = rows.iter().map(|r| r.len() as i64).collect();
        let diagram = YoungDiagram::from_row_lengths(&lengths)?;
        Ok(LatinFilling { diagram, rows })
    }

    pub fn diagram(&self) -> &YoungDiagram {
        &self.diagram
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }
}

impl fmt::Display for LatinFilling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct FillingJson {
    rows: Vec<Vec<u32>>,
}

impl Serialize for LatinFilling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FillingJson {
            rows: self.rows.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatinFilling {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let json = FillingJson::deserialize(d)?;
        LatinFilling::new(json.rows).map_err(serde::de::Error::custom)
    }
}

/// First defect found in a filling. Rows and columns are 0-based from the
/// top-left corner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FillingViolation {
    ShapeMismatch { expected: Vec<i64>, actual: Vec<i64> },
    SymbolOutOfRange { row: usize, col: usize, symbol: u32, row_len: usize },
    RowRepeat { row: usize, symbol: u32 },
    ColumnRepeat { col: usize, symbol: u32, rows: (usize, usize) },
}

impl fmt::Display for FillingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FillingViolation::ShapeMismatch { expected, actual } => {
                write!(f, "shape {actual:?} does not match diagram {expected:?}")
            }
            FillingViolation::SymbolOutOfRange {
                row,
                col,
                symbol,
                row_len,
            } => write!(
                f,
                "symbol {symbol} at row {row}, column {col} is outside 1..={row_len}"
            ),
            FillingViolation::RowRepeat { row, symbol } => {
                write!(f, "row {row} repeats symbol {symbol}")
            }
            FillingViolation::ColumnRepeat { col, symbol, rows } => write!(
                f,
                "column {col} repeats symbol {symbol} in rows {} and {}",
                rows.0, rows.1
            ),
        }
    }
}

/// Checks that `f` has the shape of `y` and is a Latin filling.
pub fn verify_filling(y: &YoungDiagram, f: &LatinFilling) -> Result<(), FillingViolation> {
    let expected = y.rows_desc();
    let actual: Vec<i64> = f.rows.iter().map(|r| r.len() as i64).collect();
    if expected != actual {
        return Err(FillingViolation::ShapeMismatch { expected, actual });
    }
    let width = y.longest() as usize;
    // column_seen[c][s] = row that placed symbol s in column c
    let mut column_seen = vec![usize::MAX; width * (width + 1)];
    for (r, row) in f.rows.iter().enumerate() {
        let mut row_seen = vec![false; row.len() + 1];
        for (c, &s) in row.iter().enumerate() {
            if s == 0 || s as usize > row.len() {
                return Err(FillingViolation::SymbolOutOfRange {
                    row: r,
                    col: c,
                    symbol: s,
                    row_len: row.len(),
                });
            }
            if std::mem::replace(&mut row_seen[s as usize], true) {
                return Err(FillingViolation::RowRepeat { row: r, symbol: s });
            }
            let slot = &mut column_seen[c * (width + 1) + s as usize];
            if *slot != usize::MAX {
                return Err(FillingViolation::ColumnRepeat {
                    col: c,
                    symbol: s,
                    rows: (*slot, r),
                });
            }
            *slot = r;
        }
    }
    Ok(())
}

/// Builds a Latin filling of a wide diagram with at most three distinct
/// row lengths by allocating, embedding the allocation in an outline
/// rectangle, reconstructing a Latin square and cutting the diagram out.
pub fn fill_via_allocation(y: &YoungDiagram) -> Result<LatinFilling> {
    let z = allocate(y)?;
    let (outline, part) = embed_allocation(y, &z)?;
    let (square, reconstructed) = outline_to_latin(&outline)?;
    debug_assert_eq!(reconstructed, part);
    let f = extract_filling(&square, &part, y)?;
    verify_filling(y, &f).map_err(|v| Error::internal(format!("pipeline filling invalid: {v}")))?;
    Ok(f)
}
