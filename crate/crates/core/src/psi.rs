//! ψ(G) = Σ o(g), its closed form on cyclic groups, and the solvability
//! criterion comparing 1617·ψ(G) against 211·ψ(C_n).
//!
//! Every verdict and bound here is exact: integer cross-multiplication
//! and big rationals, no floating point. The criterion's boundary family
//! is an exact equality and must not be blurred by rounding.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::group::EnumeratedGroup;

/// ψ(A₅): numerator of the criterion constant.
pub const CRITERION_NUM: u64 = 211;

/// ψ(C₆₀): denominator of the criterion constant.
pub const CRITERION_DEN: u64 = 1617;

/// Trial division covers all factors up to 10⁶, which certifies any
/// n ≤ 10¹² (a composite leftover would need two factors above 10⁶).
pub const FACTORIZE_MAX: u64 = 1_000_000_000_000;
const TRIAL_LIMIT: u64 = 1_000_000;

/// Reduced fraction with positive denominator.
pub type ExactRatio = BigRational;

pub fn ratio(num: u64, den: u64) -> ExactRatio {
    BigRational::new(num.into(), den.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    /// (prime, exponent) pairs with primes strictly increasing; empty
    /// for n = 1.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn distinct_primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn largest_prime(&self) -> Option<u64> {
        self.factors.last().map(|&(p, _)| p)
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Complete certified factorization by trial division (2, 3, then the
/// 6k±1 wheel).
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Precondition("factorize needs n >= 1".into()));
    }
    if n > FACTORIZE_MAX {
        return Err(Error::TooLarge {
            n,
            max: FACTORIZE_MAX,
        });
    }
    let mut rest = n;
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut divide_out = |p: u64, rest: &mut u64| {
        if *rest % p == 0 {
            let mut a = 0;
            while *rest % p == 0 {
                *rest /= p;
                a += 1;
            }
            factors.push((p, a));
        }
    };
    divide_out(2, &mut rest);
    divide_out(3, &mut rest);
    let mut d = 5;
    let mut step = 2;
    while d * d <= rest && d <= TRIAL_LIMIT {
        divide_out(d, &mut rest);
        d += step;
        step = 6 - step;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    debug_assert_eq!(
        factors
            .iter()
            .fold(1u64, |acc, &(p, a)| acc * p.pow(a)),
        n
    );
    Ok(Factorization { n, factors })
}

pub fn is_prime(n: u64) -> bool {
    match n {
        0 | 1 => false,
        2 | 3 => true,
        _ if n % 2 == 0 || n % 3 == 0 => false,
        _ => {
            let mut d = 5;
            let mut step = 2;
            while d * d <= n {
                if n % d == 0 {
                    return false;
                }
                d += step;
                step = 6 - step;
            }
            true
        }
    }
}

/// ψ(C_{p^α}) = (p^{2α+1} + 1)/(p + 1), exactly; α = 0 gives 1.
pub fn psi_cyclic_prime_power(p: u64, alpha: u32) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(psi_prime_power_unchecked(p, alpha))
}

fn psi_prime_power_unchecked(p: u64, alpha: u32) -> BigUint {
    // p + 1 divides p^{2α+1} + 1 because the exponent is odd.
    (BigUint::from(p).pow(2 * alpha + 1) + 1u32) / (p + 1)
}

/// ψ(C_n), multiplicative over the coprime prime-power parts.
pub fn psi_cyclic(n: u64) -> Result<BigUint> {
    Ok(psi_cyclic_of_factors(&factorize(n)?))
}

/// Formula path when the factorization is already at hand; primes are
/// trusted as certified.
pub fn psi_cyclic_of_factors(f: &Factorization) -> BigUint {
    f.factors
        .iter()
        .map(|&(p, a)| psi_prime_power_unchecked(p, a))
        .product()
}

/// ψ(G) = Σ o(g) over the enumerated table. Always odd: non-involutions
/// pair with their inverses, involutions contribute 2 each, the
/// identity 1.
pub fn psi_group(g: &EnumeratedGroup) -> BigUint {
    let sum: u64 = g.element_orders().iter().map(|&o| o as u64).sum();
    BigUint::from(sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Greater,
    Equal,
    Less,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Greater => "GREATER",
            Comparison::Equal => "EQUAL",
            Comparison::Less => "LESS",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    SolvableByCriterion,
    Inconclusive,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::SolvableByCriterion => "SOLVABLE_BY_CRITERION",
            Conclusion::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// Outcome of the exact comparison 1617·ψ(G) vs 211·ψ(C_n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionVerdict {
    pub n: u64,
    pub psi_g: BigUint,
    pub psi_cn: BigUint,
    pub comparison: Comparison,
    pub conclusion: Conclusion,
}

pub fn criterion_verdict(g: &EnumeratedGroup) -> CriterionVerdict {
    let n = g.order() as u64;
    let psi_g = psi_group(g);
    let psi_cn = psi_cyclic(n).expect("table orders sit far below the factorization budget");
    verdict_from_psi(n, psi_g, psi_cn)
}

pub fn verdict_from_psi(n: u64, psi_g: BigUint, psi_cn: BigUint) -> CriterionVerdict {
    let lhs = &psi_g * CRITERION_DEN;
    let rhs = &psi_cn * CRITERION_NUM;
    let comparison = match lhs.cmp(&rhs) {
        Ordering::Greater => Comparison::Greater,
        Ordering::Equal => Comparison::Equal,
        Ordering::Less => Comparison::Less,
    };
    let conclusion = if comparison == Comparison::Greater {
        Conclusion::SolvableByCriterion
    } else {
        Conclusion::Inconclusive
    };
    CriterionVerdict {
        n,
        psi_g,
        psi_cn,
        comparison,
        conclusion,
    }
}

/// First `count` primes, by trial division; tiny counts only.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = 2u64;
    while primes.len() < count {
        if is_prime(candidate) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

/// f(r) = ∏_{i≤r} q_i/(q_i + 1) over the first r primes; f(0) = 1.
pub fn bound_f(r: usize) -> ExactRatio {
    first_primes(r)
        .into_iter()
        .map(|q| ratio(q, q + 1))
        .fold(ExactRatio::one(), |acc, x| acc * x)
}

/// h(s) = f(s − 1)·q_s for s ≥ 1; h(1) = 2.
pub fn bound_h(s: usize) -> ExactRatio {
    assert!(s >= 1, "h is defined for s >= 1");
    let q_s = *first_primes(s).last().unwrap();
    bound_f(s - 1) * BigRational::from_integer(q_s.into())
}

/// Strict upper bound on the index [G : ⟨x⟩] of the witness cyclic
/// subgroup when ψ(G) > (r/s)·ψ(C_n): the value (s/r)·∏ (p_i + 1)/p_i
/// over the distinct primes of n.
pub fn cyclic_index_bound(factors: &Factorization, r: u64, s: u64) -> ExactRatio {
    factors
        .distinct_primes()
        .map(|p| ratio(p + 1, p))
        .fold(ratio(s, r), |acc, x| acc * x)
}

/// Exact comparison behind a bound check: `holds` means lhs ≥ rhs
/// (or strict, per the bound's statement).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub holds: bool,
    pub lhs: ExactRatio,
    pub rhs: ExactRatio,
}

/// Checks ψ(C_n) ≥ (5005/1152)·n²/(p + 1) where p is the largest prime
/// factor of n; stated for p ≥ 13.
pub fn psi_cyclic_lower_bound(n: u64) -> Result<BoundCheck> {
    let factors = factorize(n)?;
    let p = factors.largest_prime().unwrap_or(1);
    if p < 13 {
        return Err(Error::Precondition(format!(
            "largest prime factor of {n} is {p}, below 13"
        )));
    }
    let lhs = BigRational::from_integer(psi_cyclic_of_factors(&factors).into());
    let rhs = ratio(5005, 1152) * ratio(n, 1) * ratio(n, p + 1);
    let holds = lhs >= rhs;
    Ok(BoundCheck { holds, lhs, rhs })
}

/// Checks m² > (13/12)·ψ(C_m) for m ≥ 2 whose prime factors all lie in
/// {2, 3, 5}.
pub fn smooth_square_check(m: u64) -> Result<BoundCheck> {
    if m < 2 {
        return Err(Error::Precondition(format!("m = {m} is below 2")));
    }
    let factors = factorize(m)?;
    if let Some(p) = factors.distinct_primes().find(|&p| p > 5) {
        return Err(Error::Precondition(format!(
            "m = {m} has prime factor {p} outside {{2, 3, 5}}"
        )));
    }
    let lhs = ratio(m, 1) * ratio(m, 1);
    let rhs = ratio(13, 12) * BigRational::from_integer(psi_cyclic_of_factors(&factors).into());
    let holds = lhs > rhs;
    Ok(BoundCheck { holds, lhs, rhs })
}
