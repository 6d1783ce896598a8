//! Finite fields, Singer difference sets and projective planes.
//!
//! The blocker rectangles of the `constructions` module come from planar
//! difference sets: a Singer cycle of PG(2, q) is realized as the shift
//! `i -> i + 1` on exponents of a generator of GF(q^3)*. Going the other way,
//! [`plane_from_blocker`] reads a projective plane off the columns of any
//! `a x (a^2 - a + 1)` rectangle without a rainbow `a x 2`.

mod difference;
mod field;
mod plane;

pub use difference::{
    difference_set, exhaustive_difference_set, singer_difference_set, CubicElement, CubicExtension,
    DifferenceSet, DifferenceSetMethod, EXHAUSTIVE_MODULUS_CAP,
};
pub use field::{
    is_prime, is_prime_power, prime_factors, FieldElement, FiniteField, PrimePower, FIELD_ORDER_CAP,
};
pub use plane::{
    plane_from_difference_set, verify_plane_axioms, AxiomViolation, PlaneRecord, PlaneReport,
    ProjectivePlane,
};

use thiserror::Error;

use crate::latin::{LatinRectangle, SymbolId};
use crate::rainbow::{find_rainbow_shape, SubrectangleWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1, got {0}")]
    InvalidDegree(u32),
    #[error("field order {p}^{k} exceeds the cap {cap}")]
    CapExceeded { p: u64, k: u32, cap: u64 },
    #[error("exhaustive difference-set search is capped at modulus {cap}, got {modulus}")]
    SearchCapExceeded { modulus: u64, cap: u64 },
    #[error("no multiplicative generator found")]
    NoGeneratorFound,
    #[error("no planar difference set of order {0}")]
    NoDifferenceSet(u64),
    #[error("invariant failed: {0}")]
    InvariantFailed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockerPlaneError {
    #[error("expected an a x (a^2 - a + 1) rectangle with a >= 2, got {rows}x{cols}")]
    WrongShape { rows: usize, cols: usize },
    #[error("columns {:?} on rows {:?} form a rainbow pair", .0.cols, .0.rows)]
    RainbowPairExists(SubrectangleWitness),
    #[error("expected {expected} distinct symbols, found {found}")]
    SymbolCount { expected: usize, found: usize },
    #[error("column structure is not a projective plane: {0:?}")]
    AxiomFailure(AxiomViolation),
}

/// Reads the projective plane of order `a - 1` off an `a x (a^2 - a + 1)`
/// latin rectangle in which every two columns share a symbol.
///
/// Points are the symbols (renumbered by increasing value), lines are the
/// column symbol sets. The plane is checked against the axioms before it is
/// returned.
pub fn plane_from_blocker(rect: &LatinRectangle) -> Result<ProjectivePlane, BlockerPlaneError> {
    let a = rect.rows();
    let n = rect.cols();
    if a < 2 || n != a * a - a + 1 {
        return Err(BlockerPlaneError::WrongShape { rows: a, cols: n });
    }
    if let Some(w) = find_rainbow_shape(rect, a, 2).expect("shape fits") {
        return Err(BlockerPlaneError::RainbowPairExists(w));
    }
    let mut symbols: Vec<SymbolId> = rect.cells().to_vec();
    symbols.sort_unstable();
    symbols.dedup();
    if symbols.len() != n {
        return Err(BlockerPlaneError::SymbolCount {
            expected: n,
            found: symbols.len(),
        });
    }
    let point = |s: SymbolId| symbols.binary_search(&s).expect("symbol present") as u32;
    let lines = (0..n)
        .map(|j| (0..a).map(|i| point(rect.get(i, j))).collect())
        .collect();
    let plane = ProjectivePlane::new(a as u64 - 1, n, lines);
    match verify_plane_axioms(&plane) {
        PlaneReport::Pass => Ok(plane),
        PlaneReport::Fail(v) => Err(BlockerPlaneError::AxiomFailure(v)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fano_3x7, triangle_2x3};

    #[test]
    fn example_rectangle_gives_fano() {
        let plane = plane_from_blocker(&fano_3x7()).unwrap();
        assert_eq!(plane.order(), 2);
        assert_eq!((plane.num_points(), plane.lines().len(), plane.line_size()), (7, 7, 3));
        // First column 1,2,4 (0-based 0,1,3).
        assert_eq!(plane.lines()[0], vec![0, 1, 3]);
    }

    #[test]
    fn triangle_from_2x3() {
        let plane = plane_from_blocker(&triangle_2x3()).unwrap();
        assert_eq!(plane.order(), 1);
        assert_eq!(plane.lines(), &[vec![0, 1], vec![1, 2], vec![0, 2]]);
    }

    #[test]
    fn rejects_non_blockers() {
        assert!(matches!(
            plane_from_blocker(&LatinRectangle::cyclic(2, 4)),
            Err(BlockerPlaneError::WrongShape { rows: 2, cols: 4 })
        ));
        let r = LatinRectangle::from_grid(&[vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert!(matches!(
            plane_from_blocker(&r),
            Err(BlockerPlaneError::RainbowPairExists(_))
        ));
    }
}
