//! Subgroup calculus on enumerated groups: generated subgroups, derived
//! series, centers, normalizers, cores, Sylow subgroups and quotients.
//!
//! A subgroup is a sorted member-index list tied to its parent by
//! borrow, so handles are cheap and safe to share across workers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::EnumeratedGroup;

/// Pair checks (homomorphism property of the quotient projection) are
/// exhaustive up to this parent order, sampled above it.
const EXHAUSTIVE_PAIR_LIMIT: usize = 512;

#[derive(Debug, Clone)]
pub struct Subgroup<'g> {
    parent: &'g EnumeratedGroup,
    members: Vec<usize>,
}

impl<'g> Subgroup<'g> {
    fn from_sorted(parent: &'g EnumeratedGroup, members: Vec<usize>) -> Subgroup<'g> {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        Subgroup { parent, members }
    }

    pub fn parent(&self) -> &'g EnumeratedGroup {
        self.parent
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Strictly increasing element indices.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&i).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole_group(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    /// [G : H], exact by Lagrange.
    pub fn index(&self) -> usize {
        self.parent.order() / self.members.len()
    }

    /// Commutator subgroup: generated by all [a, b] = a⁻¹b⁻¹ab over
    /// member pairs.
    pub fn derived(&self) -> Subgroup<'g> {
        let g = self.parent;
        let mut seed = Vec::new();
        let mut seen = vec![false; g.order()];
        for &a in &self.members {
            let ia = g.inv(a);
            for &b in &self.members {
                let c = g.mul(g.mul(g.mul(ia, g.inv(b)), a), b);
                if !seen[c] {
                    seen[c] = true;
                    seed.push(c);
                }
            }
        }
        g.generated_subgroup(&seed).expect("indices from the table")
    }

    pub fn is_normal(&self) -> bool {
        self.parent.normality_witness(self).is_none()
    }
}

impl EnumeratedGroup {
    /// Smallest subgroup containing the seed indices.
    pub fn generated_subgroup(&self, seed: &[usize]) -> Result<Subgroup<'_>> {
        let n = self.order();
        for &i in seed {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, order: n });
            }
        }
        let mut member = vec![false; n];
        let mut stack: Vec<usize> = Vec::new();
        member[self.identity()] = true;
        stack.push(self.identity());
        for &i in seed {
            if !member[i] {
                member[i] = true;
                stack.push(i);
            }
        }
        let mut elems = stack.clone();
        // Closure under products with the growing set; inverses follow
        // from finiteness.
        while let Some(a) = stack.pop() {
            for k in 0..elems.len() {
                let b = elems[k];
                for p in [self.mul(a, b), self.mul(b, a)] {
                    if !member[p] {
                        member[p] = true;
                        stack.push(p);
                        elems.push(p);
                    }
                }
            }
        }
        elems.sort_unstable();
        Ok(Subgroup::from_sorted(self, elems))
    }

    pub fn trivial_subgroup(&self) -> Subgroup<'_> {
        Subgroup::from_sorted(self, vec![self.identity()])
    }

    pub fn full_subgroup(&self) -> Subgroup<'_> {
        Subgroup::from_sorted(self, (0..self.order()).collect())
    }

    /// Derived series G ≥ G′ ≥ G″ ≥ …, stopping at the first repeat.
    /// Solvable exactly when the last term is trivial.
    pub fn derived_series(&self) -> (Vec<Subgroup<'_>>, bool) {
        let mut series = vec![self.full_subgroup()];
        loop {
            let next = series.last().unwrap().derived();
            if next.size() == series.last().unwrap().size() {
                break;
            }
            series.push(next);
        }
        let solvable = series.last().unwrap().is_trivial();
        (series, solvable)
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().1
    }

    /// {z : zg = gz for all g}.
    pub fn center(&self) -> Subgroup<'_> {
        let n = self.order();
        let members = (0..n)
            .filter(|&z| (0..n).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::from_sorted(self, members)
    }

    /// {g : gHg⁻¹ = H}; always contains H.
    pub fn normalizer<'g>(&'g self, h: &Subgroup<'g>) -> Subgroup<'g> {
        let n = self.order();
        let mut in_h = vec![false; n];
        for &m in h.members() {
            in_h[m] = true;
        }
        let members = (0..n)
            .filter(|&g| {
                let gi = self.inv(g);
                h.members().iter().all(|&x| in_h[self.mul(self.mul(g, x), gi)])
            })
            .collect();
        Subgroup::from_sorted(self, members)
    }

    /// Largest normal subgroup of G inside A: the intersection of all
    /// conjugates of A.
    pub fn subgroup_core<'g>(&'g self, a: &Subgroup<'g>) -> Subgroup<'g> {
        let n = self.order();
        let mut core = vec![false; n];
        for &m in a.members() {
            core[m] = true;
        }
        let mut conj = vec![false; n];
        for g in 0..n {
            let gi = self.inv(g);
            conj.fill(false);
            for &x in a.members() {
                conj[self.mul(self.mul(g, x), gi)] = true;
            }
            for (c, &k) in core.iter_mut().zip(&conj) {
                *c &= k;
            }
        }
        let members = (0..n).filter(|&i| core[i]).collect();
        Subgroup::from_sorted(self, members)
    }

    /// First conjugator that moves H off itself, or None when H ⊴ G.
    fn normality_witness(&self, h: &Subgroup<'_>) -> Option<usize> {
        let n = self.order();
        let mut in_h = vec![false; n];
        for &m in h.members() {
            in_h[m] = true;
        }
        (0..n).find(|&g| {
            let gi = self.inv(g);
            h.members().iter().any(|&x| !in_h[self.mul(self.mul(g, x), gi)])
        })
    }

    /// Sylow p-subgroup and the count n_p = [G : N_G(P)].
    ///
    /// P grows from a single element of order p: while |P| is short of
    /// the full p-part, N_G(P) ∖ P contains a p-element (the preimage of
    /// an order-p coset of N_G(P)/P), and adjoining it keeps P a p-group.
    pub fn sylow_count(&self, p: usize) -> Result<(Subgroup<'_>, usize)> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p as u64));
        }
        let n = self.order();
        if n % p != 0 {
            return Err(Error::PrimeDoesNotDivide {
                p: p as u64,
                order: n as u64,
            });
        }
        let mut p_part = 1;
        let mut rest = n;
        while rest % p == 0 {
            rest /= p;
            p_part *= p;
        }

        let orders = self.element_orders();
        let order_p_element = (0..n)
            .find_map(|g| {
                if orders[g] % p == 0 {
                    Some(self.pow(g, orders[g] / p))
                } else {
                    None
                }
            })
            .expect("Cauchy: an element of order p exists");

        let mut sylow = self.generated_subgroup(&[order_p_element])?;
        while sylow.size() < p_part {
            let normalizer = self.normalizer(&sylow);
            let extension = normalizer
                .members()
                .iter()
                .copied()
                .find(|&x| !sylow.contains(x) && is_power_of(orders[x], p))
                .expect("proper p-subgroup has a p-element beyond it in its normalizer");
            let mut seed = sylow.members().to_vec();
            seed.push(extension);
            sylow = self.generated_subgroup(&seed)?;
        }

        let count = n / self.normalizer(&sylow).size();
        debug_assert_eq!(count % p, 1);
        Ok((sylow, count))
    }

    fn pow(&self, g: usize, k: usize) -> usize {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(acc, g);
        }
        acc
    }

    /// Element of maximal order (ties to the smallest index) plus the
    /// index [G : ⟨x⟩] of the cyclic subgroup it generates.
    pub fn max_order_element(&self) -> (usize, usize, usize) {
        let mut best = (self.identity(), 1);
        for (i, o) in self.element_orders().into_iter().enumerate() {
            if o > best.1 {
                best = (i, o);
            }
        }
        (best.0, best.1, self.order() / best.1)
    }

    /// Group on the left cosets of a normal subgroup. Coset labels come
    /// from the smallest-index representative.
    pub fn quotient(&self, normal: &Subgroup<'_>) -> Result<EnumeratedGroup> {
        if let Some(witness) = self.normality_witness(normal) {
            return Err(Error::NotNormal { witness });
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for g in 0..n {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(g);
            for &h in normal.members() {
                coset_of[self.mul(g, h)] = c;
            }
        }
        let q = reps.len();
        let mut rows = vec![vec![0usize; q]; q];
        for (c1, &r1) in reps.iter().enumerate() {
            for (c2, &r2) in reps.iter().enumerate() {
                rows[c1][c2] = coset_of[self.mul(r1, r2)];
            }
        }
        let labels = reps.iter().map(|&r| self.label(r).to_string()).collect();
        let quotient = EnumeratedGroup::from_rows(rows, Some(labels), None)?;

        // The projection g ↦ coset(g) must be a homomorphism; with
        // normality established this is a consistency audit of the
        // coset table, exhaustive for small parents.
        let check = |a: usize, b: usize| -> Result<()> {
            if coset_of[self.mul(a, b)] != quotient.mul(coset_of[a], coset_of[b]) {
                return Err(Error::Validation(format!(
                    "projection is not a homomorphism at ({a}, {b})"
                )));
            }
            Ok(())
        };
        if n <= EXHAUSTIVE_PAIR_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    check(a, b)?;
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x905_713);
            for _ in 0..10 * n {
                check(rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(quotient)
    }
}

pub(crate) fn is_prime(n: usize) -> bool {
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

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FiniteField, Matrix2};
    use crate::group::{close_generators, DEFAULT_CAP};
    use crate::perm::Permutation;
    use std::sync::Arc;

    fn perm_group(degree: usize, gens: &[&str]) -> EnumeratedGroup {
        let gens: Vec<Permutation> = gens
            .iter()
            .map(|s| Permutation::parse_cycles(degree, s).unwrap())
            .collect();
        close_generators(&gens, DEFAULT_CAP).unwrap()
    }

    fn alt5() -> EnumeratedGroup {
        perm_group(5, &["(0 1 2 3 4)", "(0 1 2)"])
    }

    fn sym(n: usize) -> EnumeratedGroup {
        let cycle = (0..n).map(|k| k.to_string()).collect::<Vec<_>>().join(" ");
        perm_group(n, &[&format!("({cycle})"), "(0 1)"])
    }

    fn special_linear_2_5() -> EnumeratedGroup {
        let f = FiniteField::new(5).unwrap();
        let gens = [
            Matrix2::new(Arc::clone(&f), [1, 1, 0, 1]).unwrap(),
            Matrix2::new(Arc::clone(&f), [0, 4, 1, 0]).unwrap(),
        ];
        close_generators(&gens, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn generated_subgroup_examples() {
        let a5 = alt5();
        assert_eq!(a5.generated_subgroup(&[a5.identity()]).unwrap().size(), 1);
        let five_cycle = (0..60).find(|&i| a5.element_order(i).unwrap() == 5).unwrap();
        let h = a5.generated_subgroup(&[five_cycle]).unwrap();
        assert_eq!(h.size(), 5);
        assert_eq!(a5.order() % h.size(), 0);
    }

    #[test]
    fn generated_subgroup_recovers_whole_group() {
        let a4 = perm_group(4, &["(0 1 2)", "(0 1)(2 3)"]);
        assert_eq!(a4.order(), 12);
        let g1 = (0..12).find(|&i| a4.label(i) == "(0 1 2)").unwrap();
        let g2 = (0..12).find(|&i| a4.label(i) == "(0 1)(2 3)").unwrap();
        assert_eq!(a4.generated_subgroup(&[g1, g2]).unwrap().size(), 12);
    }

    #[test]
    fn derived_series_abelian() {
        let rows = (0..6)
            .map(|a| (0..6).map(|b| (a + b) % 6).collect())
            .collect();
        let c6 = EnumeratedGroup::from_rows(rows, None, None).unwrap();
        let (series, solvable) = c6.derived_series();
        assert!(solvable);
        assert_eq!(
            series.iter().map(Subgroup::size).collect::<Vec<_>>(),
            vec![6, 1]
        );
    }

    #[test]
    fn derived_series_sym4() {
        let s4 = sym(4);
        let (series, solvable) = s4.derived_series();
        assert!(solvable);
        assert_eq!(
            series.iter().map(Subgroup::size).collect::<Vec<_>>(),
            vec![24, 12, 4, 1]
        );
    }

    #[test]
    fn derived_series_alt5_is_perfect() {
        let a5 = alt5();
        let (series, solvable) = a5.derived_series();
        assert!(!solvable);
        assert_eq!(series.last().unwrap().size(), 60);
    }

    #[test]
    fn center_examples() {
        let a5 = alt5();
        assert_eq!(a5.center().size(), 1);
        let sl25 = special_linear_2_5();
        assert_eq!(sl25.center().size(), 2);
        let rows = (0..5)
            .map(|a| (0..5).map(|b| (a + b) % 5).collect())
            .collect();
        let c5 = EnumeratedGroup::from_rows(rows, None, None).unwrap();
        assert_eq!(c5.center().size(), 5);
    }

    #[test]
    fn normalizer_examples() {
        let a5 = alt5();
        let five_cycle = (0..60).find(|&i| a5.element_order(i).unwrap() == 5).unwrap();
        let h = a5.generated_subgroup(&[five_cycle]).unwrap();
        assert_eq!(a5.normalizer(&h).size(), 10);

        let s3 = sym(3);
        let (syl2, _) = s3.sylow_count(2).unwrap();
        assert_eq!(a5.order() % 10, 0);
        assert_eq!(s3.normalizer(&syl2).size(), 2);

        // Normal subgroup: normalizer is everything.
        let a4 = perm_group(4, &["(0 1 2)", "(0 1)(2 3)"]);
        let v4_gen: Vec<usize> = (0..12)
            .filter(|&i| a4.element_order(i).unwrap() == 2)
            .collect();
        let v4 = a4.generated_subgroup(&v4_gen).unwrap();
        assert_eq!(v4.size(), 4);
        assert!(v4.is_normal());
        assert_eq!(a4.normalizer(&v4).size(), 12);
    }

    #[test]
    fn core_examples() {
        let a5 = alt5();
        let five_cycle = (0..60).find(|&i| a5.element_order(i).unwrap() == 5).unwrap();
        let h = a5.generated_subgroup(&[five_cycle]).unwrap();
        assert_eq!(a5.subgroup_core(&h).size(), 1);

        let a4 = perm_group(4, &["(0 1 2)", "(0 1)(2 3)"]);
        let v4_gen: Vec<usize> = (0..12)
            .filter(|&i| a4.element_order(i).unwrap() == 2)
            .collect();
        let v4 = a4.generated_subgroup(&v4_gen).unwrap();
        let core = a4.subgroup_core(&v4);
        assert_eq!(core.size(), 4);
        assert_eq!(core.members(), v4.members());
    }

    #[test]
    fn sylow_examples() {
        let rows = (0..6)
            .map(|a| (0..6).map(|b| (a + b) % 6).collect())
            .collect();
        let c6 = EnumeratedGroup::from_rows(rows, None, None).unwrap();
        let (p3, n3) = c6.sylow_count(3).unwrap();
        assert_eq!((p3.size(), n3), (3, 1));

        let a5 = alt5();
        let (p5, n5) = a5.sylow_count(5).unwrap();
        assert_eq!((p5.size(), n5), (5, 6));

        let s3 = sym(3);
        let (p2, n2) = s3.sylow_count(2).unwrap();
        assert_eq!((p2.size(), n2), (2, 3));

        // Sylow count divides the complementary part and is 1 mod p.
        let s4 = sym(4);
        let (p2, n2) = s4.sylow_count(2).unwrap();
        assert_eq!(p2.size(), 8);
        assert_eq!(n2 % 2, 1);
        assert_eq!((24 / 8) % n2, 0);
    }

    #[test]
    fn sylow_rejects_bad_primes() {
        let s3 = sym(3);
        assert!(matches!(s3.sylow_count(4), Err(Error::NotPrime(4))));
        assert!(matches!(
            s3.sylow_count(5),
            Err(Error::PrimeDoesNotDivide { p: 5, order: 6 })
        ));
    }

    #[test]
    fn max_order_examples() {
        let rows = (0..60)
            .map(|a| (0..60).map(|b| (a + b) % 60).collect())
            .collect();
        let c60 = EnumeratedGroup::from_rows(rows, None, None).unwrap();
        let (_, order, cyclic_index) = c60.max_order_element();
        assert_eq!((order, cyclic_index), (60, 1));

        let (_, order, cyclic_index) = alt5().max_order_element();
        assert_eq!((order, cyclic_index), (5, 12));

        let (_, order, cyclic_index) = sym(5).max_order_element();
        assert_eq!((order, cyclic_index), (6, 20));
    }

    #[test]
    fn max_order_tie_breaks_to_smallest_index() {
        let a5 = alt5();
        let (idx, order, _) = a5.max_order_element();
        let first = (0..60).find(|&i| a5.element_order(i).unwrap() == order).unwrap();
        assert_eq!(idx, first);
    }

    #[test]
    fn quotient_of_special_linear_by_center() {
        let sl25 = special_linear_2_5();
        let z = sl25.center();
        let q = sl25.quotient(&z).unwrap();
        assert_eq!(q.order(), 60);
        let psi: usize = q.element_orders().iter().sum();
        assert_eq!(psi, 211);
        assert!(!q.is_solvable());
    }

    #[test]
    fn quotient_by_whole_group_is_trivial() {
        let s3 = sym(3);
        let q = s3.quotient(&s3.full_subgroup()).unwrap();
        assert_eq!(q.order(), 1);
    }

    #[test]
    fn quotient_sym4_by_klein_four() {
        let s4 = sym(4);
        let double = (0..24)
            .find(|&i| s4.label(i) == "(0 1)(2 3)")
            .unwrap();
        let other = (0..24)
            .find(|&i| s4.label(i) == "(0 2)(1 3)")
            .unwrap();
        let v4 = s4.generated_subgroup(&[double, other]).unwrap();
        assert_eq!(v4.size(), 4);
        let q = s4.quotient(&v4).unwrap();
        assert_eq!(q.order(), 6);
        assert!(!q.is_abelian());
        let psi: usize = q.element_orders().iter().sum();
        assert_eq!(psi, 13);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = sym(3);
        let (syl2, _) = s3.sylow_count(2).unwrap();
        assert!(matches!(
            s3.quotient(&syl2),
            Err(Error::NotNormal { .. })
        ));
    }

    #[test]
    fn order_is_inverse_and_conjugation_invariant() {
        let s4 = sym(4);
        let orders = s4.element_orders();
        for g in 0..24 {
            assert_eq!(orders[g], orders[s4.inv(g)]);
            for h in 0..24 {
                let conj = s4.mul(s4.mul(h, g), s4.inv(h));
                assert_eq!(orders[g], orders[conj]);
            }
        }
    }

    #[test]
    fn lagrange_for_all_produced_subgroups() {
        let s4 = sym(4);
        for seed in 0..24 {
            let h = s4.generated_subgroup(&[seed]).unwrap();
            assert_eq!(s4.order() % h.size(), 0);
        }
        let (series, _) = s4.derived_series();
        for s in series {
            assert_eq!(s4.order() % s.size(), 0);
        }
    }
}
