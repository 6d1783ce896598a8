//! Latin rectangles: the grid form of a properly edge-colored `K_{m,n}`.
//!
//! Row `i` stands for the `i`-th vertex of the `m`-side, column `j` for the
//! `j`-th vertex of the `n`-side, and the symbol in cell `(i, j)` is the color
//! of the edge between them. Properness of the coloring is exactly the latin
//! property: no symbol repeats within a row or within a column.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A color, 0-based. The palette is unbounded: a proper coloring of `K_{m,n}`
/// may use up to `m * n` colors.
pub type SymbolId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatinError {
    #[error("grid is empty")]
    Empty,
    #[error("grid is ragged: row {row} has {found} entries, expected {expected}")]
    RaggedGrid {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("negative entry {value} at row {row}, column {col}")]
    NegativeEntry { row: usize, col: usize, value: i64 },
    #[error("symbol {symbol} repeats in row {row}")]
    RowRepeat { row: usize, symbol: SymbolId },
    #[error("symbol {symbol} repeats in column {col}")]
    ColRepeat { col: usize, symbol: SymbolId },
    #[error("declared shape {rows}x{cols} does not match the cell grid")]
    ShapeMismatch { rows: usize, cols: usize },
    #[error("malformed text grid at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("malformed JSON rectangle: {0}")]
    Json(String),
}

/// An `m x n` grid of symbols in which no symbol repeats in any row or column.
///
/// Immutable once built; every constructor validates the latin property.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinRectangle {
    rows: usize,
    cols: usize,
    cells: Vec<SymbolId>,
}

impl LatinRectangle {
    /// Validates a rectangular grid of symbols.
    pub fn from_grid<R: AsRef<[SymbolId]>>(grid: &[R]) -> Result<Self, LatinError> {
        let rows = grid.len();
        let cols = grid.first().map(|r| r.as_ref().len()).unwrap_or(0);
        if rows == 0 || cols == 0 {
            return Err(LatinError::Empty);
        }
        let mut cells = Vec::with_capacity(rows * cols);
        for (i, row) in grid.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(LatinError::RaggedGrid {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            cells.extend_from_slice(row);
        }
        Self::from_cells(rows, cols, cells)
    }

    /// Like [`from_grid`](Self::from_grid) but accepts signed input, rejecting
    /// negative entries.
    pub fn from_signed_grid(grid: &[Vec<i64>]) -> Result<Self, LatinError> {
        let mut converted = Vec::with_capacity(grid.len());
        for (i, row) in grid.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, &v) in row.iter().enumerate() {
                if v < 0 || v > SymbolId::MAX as i64 {
                    return Err(LatinError::NegativeEntry {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
                out.push(v as SymbolId);
            }
            converted.push(out);
        }
        Self::from_grid(&converted)
    }

    /// Validates a row-major cell vector.
    pub fn from_cells(rows: usize, cols: usize, cells: Vec<SymbolId>) -> Result<Self, LatinError> {
        if rows == 0 || cols == 0 {
            return Err(LatinError::Empty);
        }
        if cells.len() != rows * cols {
            return Err(LatinError::ShapeMismatch { rows, cols });
        }
        let mut row_seen: HashMap<SymbolId, ()> = HashMap::new();
        let mut col_seen: Vec<HashMap<SymbolId, ()>> = vec![HashMap::new(); cols];
        for i in 0..rows {
            row_seen.clear();
            for j in 0..cols {
                let s = cells[i * cols + j];
                if row_seen.insert(s, ()).is_some() {
                    return Err(LatinError::RowRepeat { row: i, symbol: s });
                }
                if col_seen[j].insert(s, ()).is_some() {
                    return Err(LatinError::ColRepeat { col: j, symbol: s });
                }
            }
        }
        Ok(Self { rows, cols, cells })
    }

    /// The cyclic rectangle `cell(i, j) = (i + j) mod n` on `n = cols` symbols.
    ///
    /// Requires `rows <= cols`.
    pub fn cyclic(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && rows <= cols, "cyclic rectangle needs 1 <= rows <= cols");
        let cells = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| ((i + j) % cols) as SymbolId))
            .collect();
        Self { rows, cols, cells }
    }

    pub(crate) fn from_cells_unchecked(rows: usize, cols: usize, cells: Vec<SymbolId>) -> Self {
        debug_assert!(Self::from_cells(rows, cols, cells.clone()).is_ok());
        Self { rows, cols, cells }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> SymbolId {
        self.cells[row * self.cols + col]
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[SymbolId] {
        &self.cells
    }

    pub fn row(&self, row: usize) -> &[SymbolId] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn to_grid(&self) -> Vec<Vec<SymbolId>> {
        self.cells.chunks(self.cols).map(<[_]>::to_vec).collect()
    }

    /// Largest symbol in use.
    pub fn max_symbol(&self) -> SymbolId {
        self.cells.iter().copied().max().unwrap_or(0)
    }

    /// Number of distinct symbols.
    pub fn symbol_count(&self) -> usize {
        let mut seen: Vec<SymbolId> = self.cells.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Renames symbols by first occurrence in row-major order, so the used
    /// symbols become `0..k`. Idempotent.
    pub fn canonical_relabel(&self) -> Self {
        let mut map: HashMap<SymbolId, SymbolId> = HashMap::new();
        let cells = self
            .cells
            .iter()
            .map(|&s| {
                let next = map.len() as SymbolId;
                *map.entry(s).or_insert(next)
            })
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            cells,
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical_relabel()
    }

    pub fn transpose(&self) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                cells.push(self.get(i, j));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            cells,
        }
    }

    /// The subrectangle on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert!(!rows.is_empty() && !cols.is_empty());
        let cells = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j)))
            .collect();
        Self {
            rows: rows.len(),
            cols: cols.len(),
            cells,
        }
    }

    /// Keeps the first `rows` rows and first `cols` columns.
    pub fn truncate(&self, rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && rows <= self.rows && cols >= 1 && cols <= self.cols);
        let r: Vec<usize> = (0..rows).collect();
        let c: Vec<usize> = (0..cols).collect();
        self.select(&r, &c)
    }

    /// Adds `offset` to every symbol.
    pub fn shift_symbols(&self, offset: SymbolId) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            cells: self.cells.iter().map(|&s| s + offset).collect(),
        }
    }

    /// Whether the symbols at the intersection of `rows` and `cols` are pairwise distinct.
    pub fn is_rainbow(&self, rows: &[usize], cols: &[usize]) -> bool {
        let mut seen: Vec<SymbolId> = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                seen.push(self.get(i, j));
            }
        }
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Whitespace-separated text grid, one row per line, newline-terminated.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in self.cells.chunks(self.cols) {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the text-grid format. Blank lines are skipped.
    pub fn parse_text(text: &str) -> Result<Self, LatinError> {
        let mut grid: Vec<Vec<i64>> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<i64>().map_err(|e| LatinError::Parse {
                        line: lineno + 1,
                        message: format!("{tok:?}: {e}"),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            grid.push(row);
        }
        Self::from_signed_grid(&grid)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("rectangle serializes")
    }

    pub fn parse_json(text: &str) -> Result<Self, LatinError> {
        serde_json::from_str(text).map_err(|e| LatinError::Json(e.to_string()))
    }

    /// Parses either format: JSON when the first non-blank character is `{`,
    /// text grid otherwise.
    pub fn parse_any(text: &str) -> Result<Self, LatinError> {
        if text.trim_start().starts_with('{') {
            Self::parse_json(text)
        } else {
            Self::parse_text(text)
        }
    }
}

impl fmt::Display for LatinRectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct RectangleRecord {
    rows: usize,
    cols: usize,
    cells: Vec<Vec<i64>>,
}

impl Serialize for LatinRectangle {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RectangleRecord {
            rows: self.rows,
            cols: self.cols,
            cells: self
                .cells
                .chunks(self.cols)
                .map(|r| r.iter().map(|&s| s as i64).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LatinRectangle {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let record = RectangleRecord::deserialize(deserializer)?;
        let rect = Self::from_signed_grid(&record.cells).map_err(serde::de::Error::custom)?;
        if rect.rows != record.rows || rect.cols != record.cols {
            return Err(serde::de::Error::custom(LatinError::ShapeMismatch {
                rows: record.rows,
                cols: record.cols,
            }));
        }
        Ok(rect)
    }
}
