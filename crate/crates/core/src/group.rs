//! Finite groups in fully enumerated table form. Every structural
//! computation in the crate runs on these tables; generator carriers
//! (permutations, matrices) are closed into tables first.
//!
//! Table indices are u16 internally, so orders are capped at 65535;
//! the configurable default cap is lower because an n×n table at
//! n = 20000 already costs hundreds of megabytes.

use std::collections::HashMap;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default ceiling on enumerated group order.
pub const DEFAULT_CAP: usize = 20000;

/// Hard ceiling imposed by the u16 table representation.
pub const TABLE_INDEX_LIMIT: usize = u16::MAX as usize;

/// Exhaustive associativity checking is O(n³); above this order the
/// validator samples 10n² random triples from a fixed-seed stream instead.
const EXHAUSTIVE_ASSOC_LIMIT: usize = 512;

/// Carrier of concrete group elements that [`close_generators`] can
/// enumerate: composable, hashable for the seen-set, and printable.
pub trait Carrier: Clone + Eq + Hash {
    fn compose(&self, other: &Self) -> Self;
    fn label(&self) -> String;
}

impl Carrier for crate::perm::Permutation {
    fn compose(&self, other: &Self) -> Self {
        Self::compose(self, other)
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

impl Carrier for crate::field::Matrix2 {
    fn compose(&self, other: &Self) -> Self {
        Self::compose(self, other)
    }

    fn label(&self) -> String {
        self.to_string()
    }
}

#[derive(Debug, Clone)]
pub struct EnumeratedGroup {
    order: usize,
    identity: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    labels: Vec<String>,
    name: Option<String>,
}

impl EnumeratedGroup {
    /// Builds a group from explicit table rows. The cheap laws (Latin
    /// square, identity, inverses) are always checked; call
    /// [`validate`](Self::validate) afterwards for associativity, which
    /// untrusted tables (files) must pass.
    pub fn from_rows(
        rows: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
        name: Option<String>,
    ) -> Result<EnumeratedGroup> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Validation("empty multiplication table".into()));
        }
        if n > TABLE_INDEX_LIMIT {
            return Err(Error::CapExceeded {
                needed: n as u64,
                cap: TABLE_INDEX_LIMIT as u64,
            });
        }
        let mut mul = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::Validation(format!(
                    "table is not square: row of length {} in table of size {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, order: n });
                }
                mul.push(v as u16);
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(Error::Validation(format!(
                    "label count {} does not match order {n}",
                    l.len()
                )))
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Self::assemble(n, mul, labels, name)
    }

    /// Table filled from an index formula; used by the family builders
    /// whose multiplication is arithmetic on exponents.
    pub(crate) fn from_fn(
        n: usize,
        labels: Option<Vec<String>>,
        name: Option<String>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<EnumeratedGroup> {
        if n == 0 {
            return Err(Error::Validation("empty multiplication table".into()));
        }
        if n > TABLE_INDEX_LIMIT {
            return Err(Error::CapExceeded {
                needed: n as u64,
                cap: TABLE_INDEX_LIMIT as u64,
            });
        }
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for (b, slot) in mul[a * n..(a + 1) * n].iter_mut().enumerate() {
                let v = f(a, b);
                debug_assert!(v < n);
                *slot = v as u16;
            }
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        Self::assemble(n, mul, labels, name)
    }

    /// Shared tail of every constructor: locate the identity, derive the
    /// inverse table, and enforce the cheap laws.
    fn assemble(
        n: usize,
        mul: Vec<u16>,
        labels: Vec<String>,
        name: Option<String>,
    ) -> Result<EnumeratedGroup> {
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mul[e * n + a] as usize == a && mul[a * n + e] as usize == a))
            .ok_or_else(|| Error::Validation("no two-sided identity".into()))?;
        let mut inv = vec![u16::MAX; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| {
                    mul[a * n + b] as usize == identity && mul[b * n + a] as usize == identity
                })
                .ok_or_else(|| {
                    Error::Validation(format!("element {a} has no two-sided inverse"))
                })?;
            inv[a] = b as u16;
        }
        let g = EnumeratedGroup {
            order: n,
            identity,
            mul,
            inv,
            labels,
            name,
        };
        g.check_latin()?;
        Ok(g)
    }

    fn check_latin(&self) -> Result<()> {
        let n = self.order;
        let mut row_seen = vec![false; n];
        let mut col_hits = vec![0usize; n];
        for a in 0..n {
            row_seen.fill(false);
            for b in 0..n {
                let v = self.mul[a * n + b] as usize;
                if row_seen[v] {
                    return Err(Error::Validation(format!("row {a} repeats value {v}")));
                }
                row_seen[v] = true;
                col_hits[b] += 1;
            }
        }
        // Square + every row a permutation forces columns to be
        // permutations too only in finite groups with inverses; verify
        // columns directly to reject one-sided tables.
        for b in 0..n {
            row_seen.fill(false);
            for a in 0..n {
                let v = self.mul[a * n + b] as usize;
                if row_seen[v] {
                    return Err(Error::Validation(format!("column {b} repeats value {v}")));
                }
                row_seen[v] = true;
            }
        }
        Ok(())
    }

    /// Full validation: cheap laws plus associativity. Exhaustive up to
    /// order 512, then 10n² fixed-seed sampled triples.
    pub fn validate(&self) -> Result<()> {
        self.check_latin()?;
        let n = self.order;
        let assoc = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(Error::NonAssociative { a, b, c })
            } else {
                Ok(())
            }
        };
        if n <= EXHAUSTIVE_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        assoc(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x0a5_0c1a);
            for _ in 0..10 * n * n {
                assoc(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.set_name(name);
        self
    }

    /// Smallest t ≥ 1 with g^t = identity, by successive powers.
    pub fn element_order(&self, i: usize) -> Result<usize> {
        if i >= self.order {
            return Err(Error::IndexOutOfRange {
                index: i,
                order: self.order,
            });
        }
        let mut t = 1;
        let mut acc = i;
        while acc != self.identity {
            acc = self.mul(acc, i);
            t += 1;
        }
        Ok(t)
    }

    /// Orders of all elements, indexed by element.
    pub fn element_orders(&self) -> Vec<usize> {
        (0..self.order)
            .map(|i| self.element_order(i).expect("index in range"))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Componentwise product. Labels are `(left,right)` pairs; element
    /// (a, b) sits at index a·|H| + b, so identity stays at 0 whenever
    /// both factors put it there.
    pub fn direct_product(&self, other: &EnumeratedGroup, cap: usize) -> Result<EnumeratedGroup> {
        let n = self.order;
        let m = other.order;
        let nm = n.checked_mul(m).unwrap_or(usize::MAX);
        let cap = cap.min(TABLE_INDEX_LIMIT);
        if nm > cap {
            return Err(Error::CapExceeded {
                needed: nm as u64,
                cap: cap as u64,
            });
        }
        let mut mul = vec![0u16; nm * nm];
        for a1 in 0..n {
            for b1 in 0..m {
                let i = a1 * m + b1;
                for a2 in 0..n {
                    let pa = self.mul(a1, a2) * m;
                    let row = &mut mul[i * nm + a2 * m..i * nm + a2 * m + m];
                    for (b2, slot) in row.iter_mut().enumerate() {
                        *slot = (pa + other.mul(b1, b2)) as u16;
                    }
                }
            }
        }
        let labels = (0..n)
            .flat_map(|a| {
                (0..m).map(move |b| format!("({},{})", self.labels[a], other.labels[b]))
            })
            .collect();
        Self::assemble(nm, mul, labels, None)
    }
}

/// Breadth-first closure of a generating set into a full table group.
/// Element 0 of the result is the identity.
pub fn close_generators<T: Carrier>(gens: &[T], cap: usize) -> Result<EnumeratedGroup> {
    if gens.is_empty() {
        return Err(Error::Precondition("empty generating set".into()));
    }
    let cap = cap.min(TABLE_INDEX_LIMIT);
    let mut index: HashMap<T, usize> = HashMap::new();
    let mut elems: Vec<T> = Vec::new();
    for g in gens {
        if !index.contains_key(g) {
            index.insert(g.clone(), elems.len());
            elems.push(g.clone());
        }
    }
    // Closing under right multiplication by generators reaches every
    // word in the generators, and a finite cancellative closure is a
    // group, so inverses and the identity arrive on their own.
    let mut frontier = 0;
    while frontier < elems.len() {
        let current = elems[frontier].clone();
        for g in gens {
            let prod = current.compose(g);
            if !index.contains_key(&prod) {
                if elems.len() >= cap {
                    return Err(Error::CapExceeded {
                        needed: elems.len() as u64 + 1,
                        cap: cap as u64,
                    });
                }
                index.insert(prod.clone(), elems.len());
                elems.push(prod);
            }
        }
        frontier += 1;
    }

    let n = elems.len();
    let id_pos = (0..n)
        .find(|&i| elems[i].compose(&elems[i]) == elems[i])
        .ok_or_else(|| Error::Validation("closure has no idempotent".into()))?;
    if id_pos != 0 {
        elems.swap(0, id_pos);
        index.insert(elems[0].clone(), 0);
        index.insert(elems[id_pos].clone(), id_pos);
    }

    let mut mul = vec![0u16; n * n];
    for i in 0..n {
        for j in 0..n {
            let prod = elems[i].compose(&elems[j]);
            let k = *index.get(&prod).expect("closure is product-closed");
            mul[i * n + j] = k as u16;
        }
    }
    let labels = elems.iter().map(|e| e.label()).collect();
    EnumeratedGroup::assemble(n, mul, labels, None)
}
