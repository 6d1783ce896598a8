//! Prime fields and their extensions GF(p^k), small enough for table lookup.

use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Largest field order accepted by [`FiniteField::new`].
pub const FIELD_ORDER_CAP: u64 = 1024;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `q = p^k` with `p` prime and `k >= 1`, or the degenerate `q = 1`
/// (stored as `p = 1, k = 0`), which stands for the one-point-per-side triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    p: u64,
    k: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(q: u64) -> Option<Self> {
        if q == 1 {
            return Some(Self { p: 1, k: 0, q: 1 });
        }
        let factors = prime_factors(q);
        if factors.len() != 1 {
            return None;
        }
        let p = factors[0];
        let mut k = 0;
        let mut rest = q;
        while rest > 1 {
            rest /= p;
            k += 1;
        }
        Some(Self { p, k, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_degenerate(&self) -> bool {
        self.q == 1
    }

    /// Point count `q^2 + q + 1` of the plane of order `q`.
    pub fn plane_size(&self) -> u64 {
        self.q * self.q + self.q + 1
    }
}

pub fn is_prime_power(q: u64) -> bool {
    PrimePower::new(q).is_some()
}

/// An element of a [`FiniteField`], encoded as `sum c_i p^i` where `c_i` are
/// its polynomial coefficients over GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement(pub u32);

/// GF(p^k) = GF(p)[x] / (modulus).
///
/// The modulus is the monic irreducible of degree `k` with the smallest
/// encoding `sum c_i p^i`; multiplication goes through log/exp tables built
/// from the smallest-encoded primitive element.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    order: u32,
    modulus: Vec<u32>,
    primitive: FieldElement,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl FiniteField {
    pub fn new(p: u32, k: u32) -> Result<Self, AlgebraError> {
        if !is_prime(p as u64) {
            return Err(AlgebraError::NotPrime(p as u64));
        }
        if k == 0 {
            return Err(AlgebraError::InvalidDegree(k));
        }
        let order = (p as u64).checked_pow(k).filter(|&o| o <= FIELD_ORDER_CAP);
        let Some(order) = order else {
            return Err(AlgebraError::CapExceeded {
                p: p as u64,
                k,
                cap: FIELD_ORDER_CAP,
            });
        };
        let order = order as u32;
        let modulus = least_irreducible(p, k);
        let mut field = Self {
            p,
            k,
            order,
            modulus,
            primitive: FieldElement(1),
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables()?;
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Modulus coefficients, constant term first; the last entry is 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The multiplicative generator used for the log tables.
    pub fn primitive(&self) -> FieldElement {
        self.primitive
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn element(&self, index: u32) -> FieldElement {
        assert!(index < self.order, "element index out of range");
        FieldElement(index)
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        decode(x.0, self.p, self.k as usize)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        assert!(coeffs.len() <= self.k as usize);
        FieldElement(encode(coeffs, self.p))
    }

    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.digitwise(x, y, |a, b| (a + b) % self.p)
    }

    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.digitwise(x, y, |a, b| (a + self.p - b) % self.p)
    }

    pub fn neg(&self, x: FieldElement) -> FieldElement {
        self.sub(self.zero(), x)
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.0 == 0 || y.0 == 0 {
            return FieldElement(0);
        }
        let n = self.order - 1;
        let e = (self.log[x.0 as usize] + self.log[y.0 as usize]) % n;
        FieldElement(self.exp[e as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: FieldElement) -> Option<FieldElement> {
        if x.0 == 0 {
            return None;
        }
        let n = self.order - 1;
        let e = (n - self.log[x.0 as usize]) % n;
        Some(FieldElement(self.exp[e as usize]))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return self.one();
        }
        if x.0 == 0 {
            return self.zero();
        }
        let n = (self.order - 1) as u64;
        let l = (self.log[x.0 as usize] as u64 * (e % n)) % n;
        FieldElement(self.exp[l as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: FieldElement) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        let n = (self.order - 1) as u64;
        let l = self.log[x.0 as usize] as u64;
        Some(if l == 0 { 1 } else { n / gcd(n, l) })
    }

    fn digitwise(&self, x: FieldElement, y: FieldElement, f: impl Fn(u32, u32) -> u32) -> FieldElement {
        let (mut a, mut b) = (x.0, y.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k {
            out += f(a % self.p, b % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    /// Schoolbook product reduced by the modulus; used only to build the tables.
    fn slow_mul(&self, x: u32, y: u32) -> u32 {
        let a = decode(x, self.p, self.k as usize);
        let b = decode(y, self.p, self.k as usize);
        let prod = poly_mul(&a, &b, self.p);
        let rem = poly_rem(&prod, &self.modulus, self.p);
        encode(&rem, self.p)
    }

    fn slow_pow(&self, x: u32, mut e: u64) -> u32 {
        let mut base = x;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn build_tables(&mut self) -> Result<(), AlgebraError> {
        let n = (self.order - 1) as u64;
        let factors = prime_factors(n);
        let g = (1..self.order)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, n / r) != 1))
            .ok_or(AlgebraError::NoGeneratorFound)?;
        self.primitive = FieldElement(g);
        self.exp = Vec::with_capacity(n as usize);
        self.log = vec![0; self.order as usize];
        let mut x = 1;
        for i in 0..n as u32 {
            self.exp.push(x);
            self.log[x as usize] = i;
            x = self.slow_mul(x, g);
        }
        if x != 1 {
            return Err(AlgebraError::NoGeneratorFound);
        }
        Ok(())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn decode(mut x: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for c in out.iter_mut() {
        *c = x % p;
        x /= p;
    }
    out
}

pub(crate) fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    for top in (dm..r.len()).rev() {
        let lead = r[top];
        if lead == 0 {
            continue;
        }
        let shift = top - dm;
        for (i, &c) in m.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
        }
    }
    r.truncate(dm);
    if r.is_empty() {
        r.push(0);
    }
    trim(r)
}

/// Monic polynomials of degree `d`, in increasing encoding order.
fn monics(p: u32, d: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = p.pow(d as u32);
    (0..count).map(move |low| {
        let mut c = decode(low, p, d);
        c.push(1);
        c
    })
}

pub(crate) fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        for f in monics(p, d) {
            let r = poly_rem(poly, &f, p);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree `k` over GF(p) with the smallest encoding.
fn least_irreducible(p: u32, k: u32) -> Vec<u32> {
    monics(p, k as usize)
        .find(|m| is_irreducible(m, p))
        .expect("an irreducible of every degree exists")
}
