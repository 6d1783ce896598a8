//! Planar difference sets mod `q^2 + q + 1`, from Singer cycles or by search.

use serde::{Deserialize, Serialize};

use super::field::{prime_factors, FieldElement, FiniteField, PrimePower};
use super::AlgebraError;

/// Largest modulus the exhaustive subset search accepts.
pub const EXHAUSTIVE_MODULUS_CAP: u64 = 31;

/// A `(q+1)`-subset `D` of `Z_n`, `n = q^2 + q + 1`, whose differences
/// `d_i - d_j` (`i != j`) hit every nonzero residue exactly once.
///
/// Its translates `D + j` are the lines of a projective plane of order `q`,
/// and translation by 1 is a cyclic automorphism acting regularly on points
/// and on lines.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DifferenceSet {
    modulus: u64,
    residues: Vec<u64>,
}

impl DifferenceSet {
    pub fn new(modulus: u64, mut residues: Vec<u64>) -> Result<Self, AlgebraError> {
        residues.sort_unstable();
        residues.dedup();
        let set = Self { modulus, residues };
        if !set.is_planar() {
            return Err(AlgebraError::InvariantFailed(format!(
                "{:?} is not a planar difference set mod {modulus}",
                set.residues
            )));
        }
        Ok(set)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Sorted residues.
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    /// Plane order `q = |D| - 1`.
    pub fn order(&self) -> u64 {
        self.residues.len() as u64 - 1
    }

    /// Exhaustive check of the size and the one-representation property.
    pub fn is_planar(&self) -> bool {
        let n = self.modulus;
        let k = self.residues.len() as u64;
        if k < 2 || k * k - k + 1 != n || self.residues.iter().any(|&d| d >= n) {
            return false;
        }
        let mut hits = vec![0u32; n as usize];
        for &x in &self.residues {
            for &y in &self.residues {
                if x != y {
                    hits[((x + n - y) % n) as usize] += 1;
                }
            }
        }
        hits[1..].iter().all(|&h| h == 1)
    }

    /// Whether `other = t * self + s (mod n)` for some unit `t` and shift `s`.
    pub fn equivalent_to(&self, other: &DifferenceSet) -> bool {
        let n = self.modulus;
        if n != other.modulus || self.residues.len() != other.residues.len() {
            return false;
        }
        (1..n).filter(|&t| gcd(t, n) == 1).any(|t| {
            (0..n).any(|s| {
                let mut image: Vec<u64> = self.residues.iter().map(|&d| (t * d + s) % n).collect();
                image.sort_unstable();
                image == other.residues
            })
        })
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DifferenceSetMethod {
    #[default]
    Singer,
    Exhaustive,
}

pub fn difference_set(q: PrimePower, method: DifferenceSetMethod) -> Result<DifferenceSet, AlgebraError> {
    match method {
        DifferenceSetMethod::Singer => singer_difference_set(q),
        DifferenceSetMethod::Exhaustive => exhaustive_difference_set(q.q()),
    }
}

/// GF(q^3) as GF(q)[y] / (y^3 + m2 y^2 + m1 y + m0).
#[derive(Debug, Clone)]
pub struct CubicExtension {
    base: FiniteField,
    /// `[m0, m1, m2]`.
    modulus: [FieldElement; 3],
}

/// Element `c0 + c1 y + c2 y^2` of a [`CubicExtension`].
pub type CubicElement = [FieldElement; 3];

impl CubicExtension {
    /// Uses the root-free monic cubic with the smallest encoding `m0 + m1 q + m2 q^2`.
    pub fn new(base: FiniteField) -> Self {
        let q = base.order();
        let modulus = (0..q * q * q)
            .map(|e| [FieldElement(e % q), FieldElement(e / q % q), FieldElement(e / (q * q))])
            .find(|m| {
                base.elements().all(|x| {
                    // x^3 + m2 x^2 + m1 x + m0 != 0
                    let x2 = base.mul(x, x);
                    let v = base.add(
                        base.add(base.mul(x2, x), base.mul(m[2], x2)),
                        base.add(base.mul(m[1], x), m[0]),
                    );
                    v != base.zero()
                })
            })
            .expect("irreducible cubics exist over every finite field");
        Self { base, modulus }
    }

    pub fn base(&self) -> &FiniteField {
        &self.base
    }

    /// `[m0, m1, m2, 1]` as base-field encodings.
    pub fn modulus_coeffs(&self) -> Vec<u32> {
        vec![self.modulus[0].0, self.modulus[1].0, self.modulus[2].0, 1]
    }

    pub fn order(&self) -> u64 {
        (self.base.order() as u64).pow(3)
    }

    pub fn one(&self) -> CubicElement {
        [self.base.one(), self.base.zero(), self.base.zero()]
    }

    pub fn from_index(&self, e: u64) -> CubicElement {
        let q = self.base.order() as u64;
        [
            FieldElement((e % q) as u32),
            FieldElement((e / q % q) as u32),
            FieldElement((e / (q * q)) as u32),
        ]
    }

    pub fn mul(&self, x: CubicElement, y: CubicElement) -> CubicElement {
        let f = &self.base;
        let mut prod = [f.zero(); 5];
        for i in 0..3 {
            for j in 0..3 {
                prod[i + j] = f.add(prod[i + j], f.mul(x[i], y[j]));
            }
        }
        // y^3 = -(m0 + m1 y + m2 y^2); fold degrees 4 then 3.
        for top in [4, 3] {
            let lead = prod[top];
            prod[top] = f.zero();
            for (i, &m) in self.modulus.iter().enumerate() {
                prod[top - 3 + i] = f.sub(prod[top - 3 + i], f.mul(lead, m));
            }
        }
        [prod[0], prod[1], prod[2]]
    }

    pub fn pow(&self, x: CubicElement, mut e: u64) -> CubicElement {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The smallest-index element of multiplicative order `q^3 - 1`.
    pub fn generator(&self) -> Result<CubicElement, AlgebraError> {
        let n = self.order() - 1;
        let factors = prime_factors(n);
        (1..self.order())
            .map(|e| self.from_index(e))
            .find(|&g| factors.iter().all(|&r| self.pow(g, n / r) != self.one()))
            .ok_or(AlgebraError::NoGeneratorFound)
    }
}

/// Singer difference set for a prime power `q`.
///
/// Points of PG(2, q) are the cosets `g^i GF(q)*`, `0 <= i < q^2 + q + 1`, for
/// a generator `g` of GF(q^3)*. The residues are the `i` whose `y^2`
/// coordinate vanishes: a 2-dimensional GF(q)-subspace, hence a line. `q = 1`
/// gives `{0, 1} mod 3`.
pub fn singer_difference_set(q: PrimePower) -> Result<DifferenceSet, AlgebraError> {
    if q.is_degenerate() {
        return DifferenceSet::new(3, vec![0, 1]);
    }
    Ok(singer_construction(q)?.0)
}

/// The Singer set together with the cubic extension it was read from.
pub(crate) fn singer_construction(q: PrimePower) -> Result<(DifferenceSet, CubicExtension), AlgebraError> {
    let base = FiniteField::new(q.p() as u32, q.k())?;
    let ext = CubicExtension::new(base);
    let g = ext.generator()?;
    let n = q.plane_size();
    let mut residues = Vec::with_capacity(q.q() as usize + 1);
    let mut x = ext.one();
    for i in 0..n {
        if x[2] == ext.base().zero() {
            residues.push(i);
        }
        x = ext.mul(x, g);
    }
    let set = DifferenceSet::new(n, residues)?;
    Ok((set, ext))
}

/// Lexicographically least planar difference set of order `q` containing 0
/// and 1, by backtracking over residues. Independent of any field arithmetic.
///
/// Every planar set is a translate of one containing `{0, 1}` (1 is a
/// difference, so shift its subtrahend to 0).
pub fn exhaustive_difference_set(q: u64) -> Result<DifferenceSet, AlgebraError> {
    let n = q * q + q + 1;
    if q == 0 || n > EXHAUSTIVE_MODULUS_CAP {
        return Err(AlgebraError::SearchCapExceeded {
            modulus: n,
            cap: EXHAUSTIVE_MODULUS_CAP,
        });
    }
    let k = (q + 1) as usize;
    let mut used = vec![false; n as usize];
    let mut chosen = vec![0u64, 1];
    used[1] = true;
    used[(n - 1) as usize] = true;
    if extend(&mut chosen, &mut used, n, k, 2) {
        DifferenceSet::new(n, chosen)
    } else {
        Err(AlgebraError::NoDifferenceSet(q))
    }
}

fn extend(chosen: &mut Vec<u64>, used: &mut [bool], n: u64, k: usize, start: u64) -> bool {
    if chosen.len() == k {
        return true;
    }
    for x in start..n {
        let diffs: Vec<usize> = chosen
            .iter()
            .flat_map(|&y| [((x + n - y) % n) as usize, ((y + n - x) % n) as usize])
            .collect();
        let mut ok = diffs.iter().all(|&d| !used[d]);
        // The two differences of a pair coincide only when 2(x - y) = 0.
        let mut sorted = diffs.clone();
        sorted.sort_unstable();
        ok &= sorted.windows(2).all(|w| w[0] != w[1]);
        if !ok {
            continue;
        }
        for &d in &diffs {
            used[d] = true;
        }
        chosen.push(x);
        if extend(chosen, used, n, k, x + 1) {
            return true;
        }
        chosen.pop();
        for &d in &diffs {
            used[d] = false;
        }
    }
    false
}
