//! Rainbow subrectangle detection.
//!
//! A rainbow `a x b` subrectangle (the intersection of `a` rows and `b`
//! columns with `a * b` pairwise distinct symbols) is a rainbow `K_{a,b}` in
//! the corresponding edge coloring.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::latin::LatinRectangle;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RainbowError {
    #[error("query dimensions must be positive with a <= b, got ({a}, {b})")]
    InvalidQuery { a: usize, b: usize },
    #[error("a {height}x{width} subrectangle does not fit in a {rows}x{cols} rectangle")]
    DimensionMismatch {
        height: usize,
        width: usize,
        rows: usize,
        cols: usize,
    },
    #[error("greedy extraction needs rows >= {a} and cols > {bound}, got a {rows}x{cols} rectangle")]
    PreconditionViolated {
        a: usize,
        bound: usize,
        rows: usize,
        cols: usize,
    },
}

/// The target `K_{a,b}`, with `1 <= a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RainbowQuery {
    a: usize,
    b: usize,
}

impl RainbowQuery {
    pub fn new(a: usize, b: usize) -> Result<Self, RainbowError> {
        if a == 0 || b == 0 || a > b {
            return Err(RainbowError::InvalidQuery { a, b });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    /// Column count beyond which greedy extraction on the first `a` rows must succeed.
    pub fn greedy_bound(&self) -> usize {
        (self.a * self.a - self.a + 1) * (self.b - 1)
    }
}

/// Row and column index sets of a subrectangle, both sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubrectangleWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl SubrectangleWitness {
    pub fn is_rainbow_in(&self, rect: &LatinRectangle) -> bool {
        self.rows.iter().all(|&i| i < rect.rows())
            && self.cols.iter().all(|&j| j < rect.cols())
            && rect.is_rainbow(&self.rows, &self.cols)
    }
}

/// Which way round the target sits: `a` rows by `b` columns, or `b` by `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    #[serde(rename = "ab")]
    Ab,
    #[serde(rename = "ba")]
    Ba,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrientedWitness {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub orientation: Orientation,
}

impl OrientedWitness {
    pub fn witness(&self) -> SubrectangleWitness {
        SubrectangleWitness {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
        }
    }
}

/// Finds a rainbow `q.a x q.b` subrectangle (`a` rows, `b` columns).
///
/// Row subsets are visited in lexicographic order; for each, columns are
/// accumulated left to right with backtracking. The first hit is returned, so
/// witnesses are deterministic.
pub fn find_rainbow(
    rect: &LatinRectangle,
    q: RainbowQuery,
) -> Result<Option<SubrectangleWitness>, RainbowError> {
    find_rainbow_shape(rect, q.a, q.b)
}

/// [`find_rainbow`] for an arbitrary `height x width` shape, including `height > width`.
pub fn find_rainbow_shape(
    rect: &LatinRectangle,
    height: usize,
    width: usize,
) -> Result<Option<SubrectangleWitness>, RainbowError> {
    if height == 0 || width == 0 || height > rect.rows() || width > rect.cols() {
        return Err(RainbowError::DimensionMismatch {
            height,
            width,
            rows: rect.rows(),
            cols: rect.cols(),
        });
    }
    let mut search = ColumnSearch::new(rect);
    let mut rows: Vec<usize> = (0..height).collect();
    loop {
        if let Some(cols) = search.run(&rows, width) {
            return Ok(Some(SubrectangleWitness {
                rows: rows.clone(),
                cols,
            }));
        }
        if !next_combination(&mut rows, rect.rows()) {
            return Ok(None);
        }
    }
}

/// Searches the `a x b` orientation, then `b x a`; orientations that do not
/// fit are skipped.
pub fn find_rainbow_either(rect: &LatinRectangle, q: RainbowQuery) -> Option<OrientedWitness> {
    let mut shapes = vec![(q.a, q.b, Orientation::Ab)];
    if q.a != q.b {
        shapes.push((q.b, q.a, Orientation::Ba));
    }
    shapes.into_iter().find_map(|(h, w, orientation)| {
        find_rainbow_shape(rect, h, w)
            .ok()
            .flatten()
            .map(|wit| OrientedWitness {
                rows: wit.rows,
                cols: wit.cols,
                orientation,
            })
    })
}

/// Builds a rainbow `a x b` witness on the first `a` rows by annexing, left
/// to right, the first column whose symbols are all new.
///
/// Succeeds whenever `cols > (a^2 - a + 1)(b - 1)`: with `t < b` columns
/// chosen, each of their `a t` symbols occurs at most `a - 1` more times among
/// the first `a` rows, which cannot cover all `n - t > a t (a - 1)` remaining
/// columns.
pub fn greedy_rainbow(
    rect: &LatinRectangle,
    q: RainbowQuery,
) -> Result<SubrectangleWitness, RainbowError> {
    let bound = q.greedy_bound();
    if rect.rows() < q.a || rect.cols() <= bound {
        return Err(RainbowError::PreconditionViolated {
            a: q.a,
            bound,
            rows: rect.rows(),
            cols: rect.cols(),
        });
    }
    let mut used = vec![false; rect.max_symbol() as usize + 1];
    let mut cols = Vec::with_capacity(q.b);
    for j in 0..rect.cols() {
        if cols.len() == q.b {
            break;
        }
        if (0..q.a).all(|i| !used[rect.get(i, j) as usize]) {
            for i in 0..q.a {
                used[rect.get(i, j) as usize] = true;
            }
            cols.push(j);
        }
    }
    assert_eq!(cols.len(), q.b, "counting bound guarantees b columns");
    Ok(SubrectangleWitness {
        rows: (0..q.a).collect(),
        cols,
    })
}

/// Advances `comb` (strictly increasing, values `< n`) to the next
/// combination in lexicographic order. Returns false after the last one.
pub(crate) fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Column accumulation with backtracking for a fixed row subset.
struct ColumnSearch<'a> {
    rect: &'a LatinRectangle,
    used: Vec<bool>,
    chosen: Vec<usize>,
}

impl<'a> ColumnSearch<'a> {
    fn new(rect: &'a LatinRectangle) -> Self {
        Self {
            rect,
            used: vec![false; rect.max_symbol() as usize + 1],
            chosen: Vec::new(),
        }
    }

    fn run(&mut self, rows: &[usize], width: usize) -> Option<Vec<usize>> {
        self.chosen.clear();
        self.used.iter_mut().for_each(|u| *u = false);
        if self.extend(rows, width, 0) {
            Some(self.chosen.clone())
        } else {
            None
        }
    }

    fn extend(&mut self, rows: &[usize], width: usize, start: usize) -> bool {
        if self.chosen.len() == width {
            return true;
        }
        let remaining = width - self.chosen.len();
        for j in start..=self.rect.cols() - remaining {
            if rows.iter().any(|&i| self.used[self.rect.get(i, j) as usize]) {
                continue;
            }
            for &i in rows {
                self.used[self.rect.get(i, j) as usize] = true;
            }
            self.chosen.push(j);
            if self.extend(rows, width, j + 1) {
                return true;
            }
            self.chosen.pop();
            for &i in rows {
                self.used[self.rect.get(i, j) as usize] = false;
            }
        }
        false
    }
}
