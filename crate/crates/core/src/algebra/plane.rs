//! Finite projective planes as explicit incidence structures.

use serde::{Deserialize, Serialize};

use super::difference::{singer_construction, DifferenceSet};
use super::field::PrimePower;
use super::AlgebraError;

/// Points are `0..q^2+q+1`; each line is a sorted list of points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectivePlane {
    order: u64,
    num_points: usize,
    lines: Vec<Vec<u32>>,
}

/// The first axiom a candidate plane breaks, with the offending objects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AxiomViolation {
    PointCount { expected: usize, found: usize },
    LineCount { expected: usize, found: usize },
    PointOutOfRange { line: usize, point: u32 },
    LineSize { line: usize, expected: usize, found: usize },
    /// Two points must share exactly one line.
    PointPair { points: (u32, u32), common_lines: usize },
    /// Two lines must share exactly one point.
    LinePair { lines: (usize, usize), common_points: usize },
    PointDegree { point: u32, expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlaneReport {
    Pass,
    Fail(AxiomViolation),
}

impl PlaneReport {
    pub fn passed(&self) -> bool {
        matches!(self, PlaneReport::Pass)
    }
}

impl ProjectivePlane {
    /// Builds without checking; run [`verify_plane_axioms`] on untrusted input.
    pub fn new(order: u64, num_points: usize, mut lines: Vec<Vec<u32>>) -> Self {
        for line in &mut lines {
            line.sort_unstable();
        }
        Self {
            order,
            num_points,
            lines,
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn lines(&self) -> &[Vec<u32>] {
        &self.lines
    }

    /// Points per line: `q + 1`.
    pub fn line_size(&self) -> usize {
        self.order as usize + 1
    }
}

/// Translates `D + j mod n` for `j = 0..n`.
pub fn plane_from_difference_set(d: &DifferenceSet) -> ProjectivePlane {
    let n = d.modulus();
    let lines = (0..n)
        .map(|j| d.residues().iter().map(|&r| ((r + j) % n) as u32).collect())
        .collect();
    ProjectivePlane::new(d.order(), n as usize, lines)
}

/// Exhaustively checks point and line counts, line sizes, that two points
/// share one line, that two lines share one point, and that every point has
/// `q + 1` lines, in that order.
pub fn verify_plane_axioms(plane: &ProjectivePlane) -> PlaneReport {
    match first_violation(plane) {
        None => PlaneReport::Pass,
        Some(v) => PlaneReport::Fail(v),
    }
}

fn first_violation(plane: &ProjectivePlane) -> Option<AxiomViolation> {
    let q = plane.order as usize;
    let n = q * q + q + 1;
    if plane.num_points != n {
        return Some(AxiomViolation::PointCount {
            expected: n,
            found: plane.num_points,
        });
    }
    if plane.lines.len() != n {
        return Some(AxiomViolation::LineCount {
            expected: n,
            found: plane.lines.len(),
        });
    }
    let mut incidence = vec![vec![false; n]; n];
    for (l, line) in plane.lines.iter().enumerate() {
        for &p in line {
            if p as usize >= n {
                return Some(AxiomViolation::PointOutOfRange { line: l, point: p });
            }
            incidence[l][p as usize] = true;
        }
        let distinct = incidence[l].iter().filter(|&&x| x).count();
        if line.len() != q + 1 || distinct != q + 1 {
            return Some(AxiomViolation::LineSize {
                line: l,
                expected: q + 1,
                found: distinct,
            });
        }
    }
    for p1 in 0..n {
        for p2 in p1 + 1..n {
            let common = (0..n).filter(|&l| incidence[l][p1] && incidence[l][p2]).count();
            if common != 1 {
                return Some(AxiomViolation::PointPair {
                    points: (p1 as u32, p2 as u32),
                    common_lines: common,
                });
            }
        }
    }
    for l1 in 0..n {
        for l2 in l1 + 1..n {
            let common = (0..n).filter(|&p| incidence[l1][p] && incidence[l2][p]).count();
            if common != 1 {
                return Some(AxiomViolation::LinePair {
                    lines: (l1, l2),
                    common_points: common,
                });
            }
        }
    }
    for p in 0..n {
        let degree = incidence.iter().filter(|line| line[p]).count();
        if degree != q + 1 {
            return Some(AxiomViolation::PointDegree {
                point: p as u32,
                expected: q + 1,
                found: degree,
            });
        }
    }
    None
}

/// Serialized plane: `{"q":…,"modulus_poly":[…],"D":[…],"lines":[[…],…]}`.
///
/// `modulus_poly` lists the cubic modulus over GF(q) (constant term first,
/// coefficients as GF(q) element encodings); it is empty for `q = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneRecord {
    pub q: u64,
    pub modulus_poly: Vec<u32>,
    #[serde(rename = "D")]
    pub d: Vec<u64>,
    pub lines: Vec<Vec<u32>>,
}

impl PlaneRecord {
    /// Singer plane of order `q`, checked against the plane axioms.
    pub fn singer(q: PrimePower) -> Result<Self, AlgebraError> {
        let (d, modulus_poly) = if q.is_degenerate() {
            (super::difference::singer_difference_set(q)?, Vec::new())
        } else {
            let (d, ext) = singer_construction(q)?;
            (d, ext.modulus_coeffs())
        };
        let plane = plane_from_difference_set(&d);
        if let PlaneReport::Fail(v) = verify_plane_axioms(&plane) {
            return Err(AlgebraError::InvariantFailed(format!("{v:?}")));
        }
        Ok(Self {
            q: q.q(),
            modulus_poly,
            d: d.residues().to_vec(),
            lines: plane.lines,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::difference::singer_difference_set;

    fn fano() -> ProjectivePlane {
        plane_from_difference_set(&DifferenceSet::new(7, vec![0, 1, 3]).unwrap())
    }

    #[test]
    fn fano_passes() {
        let p = fano();
        assert_eq!((p.num_points(), p.lines().len(), p.line_size()), (7, 7, 3));
        assert_eq!(verify_plane_axioms(&p), PlaneReport::Pass);
    }

    #[test]
    fn broken_fano_reports_point_pair() {
        let mut lines = fano().lines().to_vec();
        // {0,1,3} -> {0,1,2}: points 0 and 2 now share two lines.
        lines[0] = vec![0, 1, 2];
        let broken = ProjectivePlane::new(2, 7, lines);
        assert_eq!(
            verify_plane_axioms(&broken),
            PlaneReport::Fail(AxiomViolation::PointPair {
                points: (0, 2),
                common_lines: 2
            })
        );
    }

    #[test]
    fn triangle_and_order_three() {
        let tri = plane_from_difference_set(&DifferenceSet::new(3, vec![0, 1]).unwrap());
        assert_eq!(tri.lines(), &[vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert!(verify_plane_axioms(&tri).passed());
        let p3 = plane_from_difference_set(&DifferenceSet::new(13, vec![0, 1, 3, 9]).unwrap());
        assert!(verify_plane_axioms(&p3).passed());
    }

    #[test]
    fn singer_planes_pass_up_to_nine() {
        for q in [1, 2, 3, 4, 5, 7, 8, 9] {
            let d = singer_difference_set(PrimePower::new(q).unwrap()).unwrap();
            assert!(verify_plane_axioms(&plane_from_difference_set(&d)).passed(), "q = {q}");
        }
    }

    #[test]
    fn structural_failures() {
        let short = ProjectivePlane::new(2, 7, fano().lines()[..6].to_vec());
        assert!(matches!(
            verify_plane_axioms(&short),
            PlaneReport::Fail(AxiomViolation::LineCount { expected: 7, found: 6 })
        ));
        let mut lines = fano().lines().to_vec();
        lines[3] = vec![0, 9, 1];
        assert!(matches!(
            verify_plane_axioms(&ProjectivePlane::new(2, 7, lines)),
            PlaneReport::Fail(AxiomViolation::PointOutOfRange { line: 3, point: 9 })
        ));
    }

    #[test]
    fn record_json() {
        let rec = PlaneRecord::singer(PrimePower::new(2).unwrap()).unwrap();
        let json = serde_json::to_string(&rec).unwrap();
        assert!(json.starts_with(r#"{"q":2,"modulus_poly":[1,1,0,1],"D":["#), "{json}");
        assert_eq!(rec.lines.len(), 7);
        let tri = PlaneRecord::singer(PrimePower::new(1).unwrap()).unwrap();
        assert!(tri.modulus_poly.is_empty());
        assert_eq!(tri.d, vec![0, 1]);
    }
}
