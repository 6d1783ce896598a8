//! Blocker rectangles: latin rectangles with no rainbow `a x b` (or `b x a`).
//!
//! * [`singer_blocker`]: `a x (a^2 - a + 1)` with no rainbow `a x 2`, for
//!   `a - 1` a prime power. Rows are cyclic shifts of `Z_n` starting at the
//!   residues of a planar difference set, so column `j` is the line `D + j`.
//! * [`block_blocker`]: `b - 1` blocks side by side on disjoint palettes; any
//!   `b` columns put two in one block.
//! * [`kron_blocker`]: `A' = J (x) A + t B (x) J`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{difference_set, AlgebraError, DifferenceSetMethod, PrimePower};
use crate::latin::{LatinRectangle, SymbolId};
use crate::rainbow::{next_combination, RainbowQuery};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("row extension needs exactly {expected} distinct symbols (one per column), found {found}")]
    SymbolCountMismatch { expected: usize, found: usize },
    #[error("multiplier t = {t} must exceed every entry of A (need t >= {min})")]
    MultiplierTooSmall { t: SymbolId, min: SymbolId },
    #[error(
        "extending to {rows} rows breaks the block property: on rows {witness_rows:?}, \
         columns {witness_cols:?} of block {block} share no symbol"
    )]
    UnsoundRowExtension {
        rows: usize,
        block: usize,
        witness_rows: Vec<usize>,
        witness_cols: (usize, usize),
    },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Parameters of the block construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockerSpec {
    a: usize,
    b: usize,
    q: PrimePower,
}

impl BlockerSpec {
    pub fn new(a: usize, b: usize) -> Result<Self, ConstructionError> {
        if a < 2 || a > b {
            return Err(ConstructionError::BadParameters(format!(
                "block construction needs 2 <= a <= b, got a = {a}, b = {b}"
            )));
        }
        let q = PrimePower::new(a as u64 - 1).ok_or(ConstructionError::NotPrimePower(a as u64 - 1))?;
        Ok(Self { a, b, q })
    }

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn q(&self) -> PrimePower {
        self.q
    }

    /// Rows of the output: `b - 1`.
    pub fn rows(&self) -> usize {
        self.b - 1
    }

    /// Columns of one block: `a^2 - a + 1`.
    pub fn block_width(&self) -> usize {
        self.a * self.a - self.a + 1
    }

    pub fn cols(&self) -> usize {
        self.block_width() * (self.b - 1)
    }
}

/// `a x (a^2 - a + 1)` rectangle with `cell(i, j) = (d_i + j) mod n` for the
/// sorted residues `d_i` of the Singer difference set of order `a - 1`.
pub fn singer_blocker(a: usize) -> Result<LatinRectangle, ConstructionError> {
    singer_blocker_with(a, DifferenceSetMethod::Singer)
}

/// [`singer_blocker`] with the difference set taken from `method`.
pub fn singer_blocker_with(a: usize, method: DifferenceSetMethod) -> Result<LatinRectangle, ConstructionError> {
    let q = a.saturating_sub(1) as u64;
    let pp = PrimePower::new(q).ok_or(ConstructionError::NotPrimePower(q))?;
    let d = difference_set(pp, method)?;
    let n = d.modulus();
    let cells = d
        .residues()
        .iter()
        .flat_map(|&r| (0..n).map(move |j| ((r + j) % n) as SymbolId))
        .collect();
    Ok(LatinRectangle::from_cells(a, n as usize, cells).expect("cyclic shifts of distinct residues are latin"))
}

/// Extends `rect` (which must use exactly one symbol per column in total, so
/// `rows <= cols`) to `target_rows` rows, keeping it latin.
///
/// Rows up to `cols` are perfect matchings of columns to the symbols still
/// missing from them; the missing-symbol graph is regular, so Hall's condition
/// holds. Rows past `cols` are cyclic latin squares on fresh symbol blocks.
pub fn extend_rows(rect: &LatinRectangle, target_rows: usize) -> Result<LatinRectangle, ConstructionError> {
    let n = rect.cols();
    let found = rect.symbol_count();
    if found != n {
        return Err(ConstructionError::SymbolCountMismatch { expected: n, found });
    }
    if target_rows < rect.rows() {
        return Err(ConstructionError::BadParameters(format!(
            "target {target_rows} rows is fewer than the {} present",
            rect.rows()
        )));
    }
    let mut symbols: Vec<SymbolId> = rect.cells().to_vec();
    symbols.sort_unstable();
    symbols.dedup();
    let index = |s: SymbolId| symbols.binary_search(&s).expect("symbol present");

    // present[c][s]: symbol index s already sits in column c
    let mut present = vec![vec![false; n]; n];
    for i in 0..rect.rows() {
        for c in 0..n {
            present[c][index(rect.get(i, c))] = true;
        }
    }
    let mut cells = rect.cells().to_vec();
    for _ in rect.rows()..target_rows.min(n) {
        let row = perfect_matching(&present);
        for (c, &s) in row.iter().enumerate() {
            present[c][s] = true;
            cells.push(symbols[s]);
        }
    }
    let fresh_base = rect.max_symbol() + 1;
    for r in n..target_rows {
        let block = (r / n) as SymbolId;
        let offset = fresh_base + (block - 1) * n as SymbolId;
        cells.extend((0..n).map(|c| offset + ((r % n + c) % n) as SymbolId));
    }
    Ok(LatinRectangle::from_cells_unchecked(target_rows, n, cells))
}

/// Column -> symbol matching avoiding `present`, by augmenting paths
/// (columns in order, symbols in increasing index).
fn perfect_matching(present: &[Vec<bool>]) -> Vec<usize> {
    let n = present.len();
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for c in 0..n {
        let mut visited = vec![false; n];
        let ok = augment(c, present, &mut owner, &mut visited);
        assert!(ok, "regular bipartite graph has a perfect matching");
    }
    let mut row = vec![0; n];
    for (s, o) in owner.iter().enumerate() {
        row[o.expect("matching is perfect")] = s;
    }
    row
}

fn augment(c: usize, present: &[Vec<bool>], owner: &mut [Option<usize>], visited: &mut [bool]) -> bool {
    for s in 0..present.len() {
        if present[c][s] || visited[s] {
            continue;
        }
        visited[s] = true;
        if owner[s].is_none_or(|other| augment(other, present, owner, visited)) {
            owner[s] = Some(c);
            return true;
        }
    }
    false
}

/// The block rectangle exactly as laid out, without checking that the row
/// extension kept every block free of rainbow `a x 2` subrectangles.
///
/// Block `k` is `singer_blocker(a)` extended (or cut) to `b - 1` rows, with
/// symbols shifted by `k` times the block palette size.
pub fn block_rectangle(a: usize, b: usize) -> Result<LatinRectangle, ConstructionError> {
    let spec = BlockerSpec::new(a, b)?;
    let block = block_base(&spec)?;
    let stride = block.max_symbol() + 1;
    let m = spec.rows();
    let w = spec.block_width();
    let mut cells = Vec::with_capacity(m * spec.cols());
    for i in 0..m {
        for k in 0..m {
            cells.extend(block.row(i).iter().map(|&s| s + k as SymbolId * stride));
        }
    }
    debug_assert_eq!(cells.len(), m * w * m);
    Ok(LatinRectangle::from_cells_unchecked(m, spec.cols(), cells))
}

fn block_base(spec: &BlockerSpec) -> Result<LatinRectangle, ConstructionError> {
    let base = singer_blocker(spec.a)?;
    let m = spec.rows();
    if m >= base.rows() {
        extend_rows(&base, m)
    } else {
        Ok(base.truncate(m, base.cols()))
    }
}

/// `(b - 1) x (a^2 - a + 1)(b - 1)` rectangle with no rainbow `a x b` and,
/// having fewer than `b` rows, no rainbow `b x a`.
///
/// Any `b` columns put two in one block, so the guarantee holds as long as
/// every `a` rows of a block leave no two columns symbol-disjoint. That is
/// checked here; when `b - 1 > a` the extended rows can break it, and the
/// construction is refused rather than returning a rectangle that might hold
/// a rainbow `a x b`.
pub fn block_blocker(a: usize, b: usize) -> Result<LatinRectangle, ConstructionError> {
    let spec = BlockerSpec::new(a, b)?;
    let block = block_base(&spec)?;
    if let Some((rows, cols)) = disjoint_column_pair(&block, a) {
        return Err(ConstructionError::UnsoundRowExtension {
            rows: spec.rows(),
            block: 0,
            witness_rows: rows,
            witness_cols: cols,
        });
    }
    block_rectangle(a, b)
}

/// First `a`-row subset and column pair of `rect` whose symbols are
/// disjoint, or `None` when every such pair meets. Vacuous for fewer than `a` rows.
pub fn disjoint_column_pair(rect: &LatinRectangle, a: usize) -> Option<(Vec<usize>, (usize, usize))> {
    if rect.rows() < a || a == 0 {
        return None;
    }
    let mut rows: Vec<usize> = (0..a).collect();
    loop {
        for c1 in 0..rect.cols() {
            for c2 in c1 + 1..rect.cols() {
                if rect.is_rainbow(&rows, &[c1, c2]) {
                    return Some((rows, (c1, c2)));
                }
            }
        }
        if !next_combination(&mut rows, rect.rows()) {
            return None;
        }
    }
}

/// Inputs of the product construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KronSpec {
    inner: LatinRectangle,
    outer: LatinRectangle,
    t: SymbolId,
}

impl KronSpec {
    /// `inner` is `A` (`m x n`), `outer` is `B` (`r x s`); `t` must exceed
    /// every entry of `A` so that blocks with different `B` entries use
    /// disjoint symbols.
    pub fn new(inner: LatinRectangle, outer: LatinRectangle, t: SymbolId) -> Result<Self, ConstructionError> {
        let min = inner.max_symbol() + 1;
        if t < min {
            return Err(ConstructionError::MultiplierTooSmall { t, min });
        }
        Ok(Self { inner, outer, t })
    }

    /// Smallest admissible multiplier.
    pub fn minimal(inner: LatinRectangle, outer: LatinRectangle) -> Self {
        let t = inner.max_symbol() + 1;
        Self { inner, outer, t }
    }

    pub fn inner(&self) -> &LatinRectangle {
        &self.inner
    }

    pub fn outer(&self) -> &LatinRectangle {
        &self.outer
    }

    pub fn t(&self) -> SymbolId {
        self.t
    }
}

/// `rm x sn` rectangle whose block `(i, j)` is `A + t B[i][j]`.
///
/// If `A` has no rainbow `a x b`, the output has no rainbow
/// `(r(a-1)+1) x (s(b-1)+1)`: such a subrectangle meets some block in `a`
/// rows and `b` columns.
pub fn kron_blocker(spec: &KronSpec) -> LatinRectangle {
    let (a, b, t) = (&spec.inner, &spec.outer, spec.t);
    let (m, n) = (a.rows(), a.cols());
    let (r, s) = (b.rows(), b.cols());
    let mut cells = Vec::with_capacity(r * m * s * n);
    for i in 0..r {
        for u in 0..m {
            for j in 0..s {
                let shift = t * b.get(i, j);
                cells.extend(a.row(u).iter().map(|&x| x + shift));
            }
        }
    }
    LatinRectangle::from_cells_unchecked(r * m, s * n, cells)
}

/// Square-outer case `r = s` with the minimal multiplier: blocks `K_{a,b}`
/// in both orientations when `A` does.
pub fn kron_square_blocker(inner: &LatinRectangle, outer: &LatinRectangle) -> Result<LatinRectangle, ConstructionError> {
    if outer.rows() != outer.cols() {
        return Err(ConstructionError::BadParameters(format!(
            "outer factor must be square, got {}x{}",
            outer.rows(),
            outer.cols()
        )));
    }
    Ok(kron_blocker(&KronSpec::minimal(inner.clone(), outer.clone())))
}

/// `(a, (a^2 - a + 1)(b - 1) + 1)`: the smallest host `K_{a,n}` on which
/// greedy extraction is guaranteed to find a rainbow `K_{a,b}`.
pub fn arrow_upper_bound(q: RainbowQuery) -> (usize, usize) {
    (q.a(), q.greedy_bound() + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fano_3x7, triangle_2x3};
    use crate::rainbow::{find_rainbow, find_rainbow_either, find_rainbow_shape};
    use itertools::Itertools;

    fn q(a: usize, b: usize) -> RainbowQuery {
        RainbowQuery::new(a, b).unwrap()
    }

    #[test]
    fn singer_small_cases() {
        assert_eq!(singer_blocker(2).unwrap(), triangle_2x3());
        let r = singer_blocker(3).unwrap();
        assert_eq!((r.rows(), r.cols()), (3, 7));
        assert_eq!(singer_blocker(7).unwrap_err(), ConstructionError::NotPrimePower(6));
        assert_eq!(singer_blocker(1).unwrap_err(), ConstructionError::NotPrimePower(0));
    }

    /// Isotopy up to row order, column order and symbol names, by trying
    /// every row and column permutation.
    fn isotopic(x: &LatinRectangle, y: &LatinRectangle) -> bool {
        if (x.rows(), x.cols()) != (y.rows(), y.cols()) {
            return false;
        }
        let target = y.canonical_relabel();
        (0..x.rows()).permutations(x.rows()).any(|rp| {
            (0..x.cols())
                .permutations(x.cols())
                .any(|cp| x.select(&rp, &cp).canonical_relabel() == target)
        })
    }

    #[test]
    fn singer_3_matches_example_up_to_isotopy() {
        assert!(isotopic(&singer_blocker(3).unwrap(), &fano_3x7()));
    }

    #[test]
    fn singer_blockers_have_no_rainbow_pair() {
        for a in [2, 3, 4, 5, 6, 8, 9, 10] {
            let r = singer_blocker(a).unwrap();
            assert_eq!(r.cols(), a * a - a + 1);
            assert_eq!(find_rainbow_shape(&r, a, 2).unwrap(), None, "a = {a}");
            assert_eq!(disjoint_column_pair(&r, a), None);
        }
    }

    #[test]
    fn singer_via_exhaustive_sets() {
        for a in [3, 4, 5, 6] {
            let r = singer_blocker_with(a, DifferenceSetMethod::Exhaustive).unwrap();
            assert_eq!(find_rainbow_shape(&r, a, 2).unwrap(), None);
        }
    }

    #[test]
    fn extend_single_row_to_square() {
        let row = LatinRectangle::from_grid(&[vec![0, 1, 2]]).unwrap();
        let sq = extend_rows(&row, 3).unwrap();
        assert_eq!(sq.to_grid(), vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]);
    }

    #[test]
    fn extend_is_identity_at_current_height() {
        let t = triangle_2x3();
        assert_eq!(extend_rows(&t, 2).unwrap(), t);
    }

    #[test]
    fn extend_keeps_prefix_and_latinness() {
        let r = singer_blocker(3).unwrap();
        for target in [3, 5, 6, 7, 10, 15] {
            let e = extend_rows(&r, target).unwrap();
            assert_eq!(e.rows(), target);
            assert_eq!(&e.cells()[..21], r.cells());
            assert!(LatinRectangle::from_cells(e.rows(), e.cols(), e.cells().to_vec()).is_ok());
            if target <= 7 {
                assert_eq!(e.symbol_count(), 7);
            }
        }
    }

    #[test]
    fn extend_rejects_wrong_symbol_count() {
        let r = LatinRectangle::from_grid(&[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(
            extend_rows(&r, 3).unwrap_err(),
            ConstructionError::SymbolCountMismatch { expected: 3, found: 6 }
        );
        assert!(matches!(extend_rows(&triangle_2x3(), 1), Err(ConstructionError::BadParameters(_))));
    }

    #[test]
    fn block_2_3() {
        let r = block_blocker(2, 3).unwrap();
        assert_eq!(r.to_grid(), vec![vec![0, 1, 2, 3, 4, 5], vec![1, 2, 0, 4, 5, 3]]);
        assert_eq!(find_rainbow_either(&r, q(2, 3)), None);
    }

    #[test]
    fn block_2_2_is_single_row() {
        let r = block_blocker(2, 2).unwrap();
        assert_eq!(r.to_grid(), vec![vec![0, 1, 2]]);
        assert_eq!(find_rainbow_either(&r, q(2, 2)), None);
    }

    #[test]
    fn block_3_4() {
        let r = block_blocker(3, 4).unwrap();
        assert_eq!((r.rows(), r.cols()), (3, 21));
        assert_eq!(r.symbol_count(), 21);
        assert_eq!(find_rainbow_either(&r, q(3, 4)), None);
    }

    #[test]
    fn block_parameters() {
        assert!(matches!(block_blocker(1, 3), Err(ConstructionError::BadParameters(_))));
        assert!(matches!(block_blocker(4, 3), Err(ConstructionError::BadParameters(_))));
        assert_eq!(block_blocker(7, 8).unwrap_err(), ConstructionError::NotPrimePower(6));
    }

    /// Every construction that is accepted is a verified blocker; the ones
    /// refused really do contain a rainbow target when built anyway.
    #[test]
    fn block_blockers_small_range() {
        for a in 2..=4 {
            for b in a..=5 {
                let raw = block_rectangle(a, b).unwrap();
                let spec = BlockerSpec::new(a, b).unwrap();
                assert_eq!((raw.rows(), raw.cols()), (spec.rows(), spec.cols()));
                match block_blocker(a, b) {
                    Ok(r) => {
                        assert_eq!(r, raw);
                        assert_eq!(find_rainbow_either(&r, q(a, b)), None, "({a},{b})");
                    }
                    Err(ConstructionError::UnsoundRowExtension { .. }) => {
                        assert!(find_rainbow_either(&raw, q(a, b)).is_some(), "({a},{b})");
                    }
                    Err(e) => panic!("({a},{b}): {e}"),
                }
            }
        }
        assert!(block_blocker(2, 4).is_ok());
        assert!(block_blocker(4, 5).is_ok());
        assert!(matches!(block_blocker(2, 5), Err(ConstructionError::UnsoundRowExtension { .. })));
        assert!(matches!(block_blocker(3, 5), Err(ConstructionError::UnsoundRowExtension { .. })));
    }

    #[test]
    fn kron_example() {
        let b = LatinRectangle::from_grid(&[vec![0, 1], vec![1, 0]]).unwrap();
        let spec = KronSpec::new(triangle_2x3(), b.clone(), 3).unwrap();
        let out = kron_blocker(&spec);
        assert_eq!((out.rows(), out.cols()), (4, 6));
        assert_eq!(out.row(0), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(out.row(2), &[3, 4, 5, 0, 1, 2]);
        assert!(LatinRectangle::from_cells(4, 6, out.cells().to_vec()).is_ok());
        assert_eq!(find_rainbow(&out, q(3, 3)).unwrap(), None);
        assert_eq!(kron_square_blocker(&triangle_2x3(), &b).unwrap(), out);
    }

    #[test]
    fn kron_degenerate_cases() {
        let a = triangle_2x3();
        let one = LatinRectangle::from_grid(&[vec![0]]).unwrap();
        assert_eq!(kron_blocker(&KronSpec::new(a.clone(), one.clone(), 3).unwrap()), a);
        let b = LatinRectangle::from_grid(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(kron_blocker(&KronSpec::new(one, b.clone(), 1).unwrap()), b);
        assert_eq!(
            KronSpec::new(a.clone(), b.clone(), 2).unwrap_err(),
            ConstructionError::MultiplierTooSmall { t: 2, min: 3 }
        );
        assert!(kron_square_blocker(&a, &a).is_err());
    }

    #[test]
    fn kron_spot_checks_small_area() {
        // A has no rainbow 2x2; outputs up to area 36 have no rainbow
        // (r+1) x (s+1).
        let a = triangle_2x3();
        let outers = [
            LatinRectangle::from_grid(&[vec![0, 1]]).unwrap(),
            LatinRectangle::from_grid(&[vec![0], vec![1]]).unwrap(),
            LatinRectangle::from_grid(&[vec![0, 1], vec![1, 0]]).unwrap(),
            LatinRectangle::from_grid(&[vec![1, 0], vec![2, 1]]).unwrap(),
        ];
        for b in outers {
            let out = kron_blocker(&KronSpec::minimal(a.clone(), b.clone()));
            assert!(out.rows() * out.cols() <= 36);
            let (h, w) = (b.rows() + 1, b.cols() + 1);
            assert_eq!(find_rainbow_shape(&out, h, w).unwrap(), None, "{b:?}");
        }
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(arrow_upper_bound(q(2, 2)), (2, 4));
        assert_eq!(arrow_upper_bound(q(2, 3)), (2, 7));
        assert_eq!(arrow_upper_bound(q(3, 3)), (3, 15));
    }
}
