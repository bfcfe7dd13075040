//! Small finite fields GF(p^k) with k ≤ 2, plus invertible 2×2 matrices
//! over them. Element i of GF(p) is the residue i; element i of GF(p²) is
//! a₀ + a₁·x with i = a₀ + a₁·p, where x is a fixed root of an irreducible
//! monic quadratic found by search.
//!
//! Every constructed field passes an exhaustive axiom check (sizes stay
//! at or below 49, so the q³ sweep is cheap).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

const MAX_FIELD_ORDER: u64 = 49;

#[derive(Debug)]
pub struct FiniteField {
    characteristic: usize,
    degree: usize,
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    inv: Vec<Option<usize>>,
}

impl FiniteField {
    /// Builds GF(q) for q = p or p² with q ≤ 49.
    pub fn new(q: u64) -> Result<Arc<FiniteField>> {
        if q > MAX_FIELD_ORDER {
            return Err(Error::TooLarge {
                n: q,
                max: MAX_FIELD_ORDER,
            });
        }
        let q = q as usize;
        let (p, k) = match split_prime_power(q) {
            Some((p, k)) if k <= 2 => (p, k),
            _ => {
                return Err(Error::Param(format!(
                    "field order {q} is not p or p^2 for a prime p"
                )))
            }
        };
        let field = if k == 1 {
            Self::prime_field(p)
        } else {
            Self::quadratic_extension(p)
        };
        field.check_axioms()?;
        Ok(Arc::new(field))
    }

    fn prime_field(p: usize) -> FiniteField {
        let mut add = vec![0; p * p];
        let mut mul = vec![0; p * p];
        for a in 0..p {
            for b in 0..p {
                add[a * p + b] = (a + b) % p;
                mul[a * p + b] = (a * b) % p;
            }
        }
        FiniteField::finish(p, 1, p, add, mul)
    }

    fn quadratic_extension(p: usize) -> FiniteField {
        // x² + bx + c with no root in GF(p); exists for every prime p.
        let (b, c) = (0..p)
            .flat_map(|b| (0..p).map(move |c| (b, c)))
            .find(|&(b, c)| (0..p).all(|t| (t * t + b * t + c) % p != 0))
            .expect("irreducible quadratic exists over every prime field");
        let q = p * p;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a0 in 0..p {
            for a1 in 0..p {
                let i = a0 + a1 * p;
                for b0 in 0..p {
                    for b1 in 0..p {
                        let j = b0 + b1 * p;
                        add[i * q + j] = (a0 + b0) % p + ((a1 + b1) % p) * p;
                        // (a0 + a1 x)(b0 + b1 x) with x² = −bx − c.
                        let cross = a0 * b1 + a1 * b0;
                        let high = a1 * b1;
                        let r0 = (a0 * b0 + high * (p - c % p)) % p;
                        let r1 = (cross + high * (p - b % p)) % p;
                        mul[i * q + j] = r0 + r1 * p;
                    }
                }
            }
        }
        FiniteField::finish(p, 2, q, add, mul)
    }

    fn finish(p: usize, k: usize, q: usize, add: Vec<usize>, mul: Vec<usize>) -> FiniteField {
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap())
            .collect();
        let inv = (0..q)
            .map(|a| (0..q).find(|&b| mul[a * q + b] == 1))
            .collect();
        FiniteField {
            characteristic: p,
            degree: k,
            order: q,
            add,
            mul,
            neg,
            inv,
        }
    }

    fn check_axioms(&self) -> Result<()> {
        let q = self.order;
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a || self.mul(a, 0) != 0 {
                return Err(Error::Validation(format!("identity laws fail at {a}")));
            }
            if a != 0 && self.inv[a].is_none() {
                return Err(Error::Validation(format!("{a} has no inverse")));
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(Error::Validation(format!("commutativity fails at {a},{b}")));
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                    {
                        return Err(Error::Validation(format!(
                            "ring axioms fail at {a},{b},{c}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn characteristic(&self) -> usize {
        self.characteristic
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; None for zero.
    pub fn inv(&self, a: usize) -> Option<usize> {
        self.inv[a]
    }

    /// A generator of the multiplicative group, by exhaustive order check.
    pub fn primitive_element(&self) -> usize {
        (1..self.order)
            .find(|&g| self.multiplicative_order(g) == self.order - 1)
            .expect("multiplicative group of a finite field is cyclic")
    }

    fn multiplicative_order(&self, g: usize) -> usize {
        let mut t = 1;
        let mut acc = g;
        while acc != 1 {
            acc = self.mul(acc, g);
            t += 1;
        }
        t
    }
}

fn split_prime_power(q: usize) -> Option<(usize, usize)> {
    if is_prime_usize(q) {
        return Some((q, 1));
    }
    let root = (q as f64).sqrt().round() as usize;
    if root * root == q && is_prime_usize(root) {
        return Some((root, 2));
    }
    None
}

fn is_prime_usize(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Invertible 2×2 matrix over a shared field; entries row-major.
#[derive(Debug, Clone)]
pub struct Matrix2 {
    field: Arc<FiniteField>,
    entries: [usize; 4],
}

impl Matrix2 {
    pub fn new(field: Arc<FiniteField>, entries: [usize; 4]) -> Result<Matrix2> {
        for &e in &entries {
            if e >= field.order() {
                return Err(Error::Param(format!(
                    "entry {e} out of range for GF({})",
                    field.order()
                )));
            }
        }
        let m = Matrix2 { field, entries };
        if m.det() == 0 {
            return Err(Error::Param(format!("matrix {m} is singular")));
        }
        Ok(m)
    }

    pub fn identity(field: Arc<FiniteField>) -> Matrix2 {
        Matrix2 {
            field,
            entries: [1, 0, 0, 1],
        }
    }

    pub fn det(&self) -> usize {
        let f = &self.field;
        let [a, b, c, d] = self.entries;
        f.sub(f.mul(a, d), f.mul(b, c))
    }

    pub fn compose(&self, other: &Matrix2) -> Matrix2 {
        let f = &self.field;
        let [a, b, c, d] = self.entries;
        let [e, g, h, i] = other.entries;
        Matrix2 {
            field: Arc::clone(&self.field),
            entries: [
                f.add(f.mul(a, e), f.mul(b, h)),
                f.add(f.mul(a, g), f.mul(b, i)),
                f.add(f.mul(c, e), f.mul(d, h)),
                f.add(f.mul(c, g), f.mul(d, i)),
            ],
        }
    }

    pub fn entries(&self) -> [usize; 4] {
        self.entries
    }
}

impl PartialEq for Matrix2 {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl Eq for Matrix2 {}

impl std::hash::Hash for Matrix2 {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.entries.hash(state);
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries;
        write!(f, "[[{a},{b}],[{c},{d}]]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields_construct() {
        for q in [2u64, 3, 5, 7, 11, 47] {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(f.order() as u64, q);
            assert_eq!(f.degree(), 1);
        }
    }

    #[test]
    fn quadratic_fields_construct() {
        for (q, p) in [(4u64, 2), (9, 3), (25, 5), (49, 7)] {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(f.order() as u64, q);
            assert_eq!(f.characteristic(), p);
            assert_eq!(f.degree(), 2);
        }
    }

    #[test]
    fn rejects_non_prime_power_and_oversize() {
        assert!(FiniteField::new(6).is_err());
        assert!(FiniteField::new(12).is_err());
        assert!(FiniteField::new(8).is_err()); // p^3 needs degree 3
        assert!(FiniteField::new(121).is_err());
    }

    #[test]
    fn gf4_has_frobenius_structure() {
        let f = FiniteField::new(4).unwrap();
        // Characteristic 2: a + a = 0.
        for a in 0..4 {
            assert_eq!(f.add(a, a), 0);
        }
        // The two elements outside GF(2) cube to 1.
        for a in 2..4 {
            assert_eq!(f.mul(f.mul(a, a), a), 1);
        }
    }

    #[test]
    fn primitive_element_generates() {
        for q in [3u64, 4, 5, 7, 9, 25] {
            let f = FiniteField::new(q).unwrap();
            let g = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut acc = 1;
            for _ in 0..f.order() - 1 {
                seen.insert(acc);
                acc = f.mul(acc, g);
            }
            assert_eq!(seen.len(), f.order() - 1);
        }
    }

    #[test]
    fn matrix_mul_and_det() {
        let f = FiniteField::new(5).unwrap();
        let a = Matrix2::new(Arc::clone(&f), [1, 1, 0, 1]).unwrap();
        let b = Matrix2::new(Arc::clone(&f), [0, 4, 1, 0]).unwrap(); // [[0,−1],[1,0]] mod 5
        assert_eq!(a.det(), 1);
        assert_eq!(b.det(), 1);
        let ab = a.compose(&b);
        assert_eq!(ab.entries(), [1, 4, 1, 0]);
        assert_eq!(ab.det(), 1);
        assert_eq!(a.to_string(), "[[1,1],[0,1]]");
    }

    #[test]
    fn singular_matrix_rejected() {
        let f = FiniteField::new(3).unwrap();
        assert!(Matrix2::new(f, [1, 2, 2, 1]).is_err()); // det = 1·1 − 2·2 = −3 ≡ 0
    }
}
