//! Falsification harness: each check sweeps a population (corpus
//! entries, parameter grids, or random draws) against an exact
//! inequality and reports violations.
//!
//! Reports are deterministic given (corpus, parameters) in every field
//! except `elapsed_ms`. Parallel sweeps collect per-entry results in
//! corpus order before merging, so worker count never changes output.

use std::collections::{BTreeMap, HashSet};
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{build_group, CorpusEntry, GroupSpec};
use crate::error::{Error, Result};
use crate::group::EnumeratedGroup;
use crate::psi::{
    criterion_verdict, cyclic_index_bound, factorize, psi_cyclic, psi_cyclic_lower_bound,
    psi_cyclic_prime_power, psi_group, ratio, smooth_square_check, Comparison, CRITERION_DEN,
    CRITERION_NUM,
};
use crate::subgroup::Subgroup;

/// Seed for the randomized lower-bound sweep; fixed so the sweep is a
/// reproducible population, not a fresh fuzz each run.
pub const LOWER_BOUND_SWEEP_SEED: u64 = 0x00d5_0b5e;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Violation {
    /// Canonical spec string, entry label, or parameter tuple.
    pub spec: String,
    pub details: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub population: usize,
    pub pass: bool,
    pub violations: Vec<Violation>,
    pub elapsed_ms: u128,
    pub params: BTreeMap<String, String>,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn finish(
        name: &str,
        population: usize,
        violations: Vec<Violation>,
        started: Instant,
        params: BTreeMap<String, String>,
        notes: Vec<String>,
    ) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            population,
            pass: violations.is_empty(),
            violations,
            elapsed_ms: started.elapsed().as_millis(),
            params,
            notes,
        }
    }
}

fn params_of(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

/// ψ of a member set, using orders already computed for the parent.
fn psi_of_members(orders: &[usize], members: &[usize]) -> u64 {
    members.iter().map(|&m| orders[m] as u64).sum()
}

// ---------------------------------------------------------------------
// Main theorem

/// Criterion soundness over a corpus: no member may satisfy the strict
/// criterion while being non-solvable. GREATER members additionally
/// carry a cyclic subgroup of index below the exact bound; EQUAL
/// non-solvable members (the boundary family) are reported in notes.
pub fn verify_main_theorem(corpus: &[CorpusEntry]) -> CheckReport {
    let started = Instant::now();
    let results: Vec<(Vec<Violation>, Option<String>)> = corpus
        .par_iter()
        .map(|entry| {
            let mut violations = Vec::new();
            let verdict = criterion_verdict(&entry.group);
            let solvable = entry.group.is_solvable();
            match verdict.comparison {
                Comparison::Greater => {
                    if !solvable {
                        violations.push(Violation {
                            spec: entry.label.clone(),
                            details: format!(
                                "criterion GREATER but non-solvable: 1617*{} > 211*{}",
                                verdict.psi_g, verdict.psi_cn
                            ),
                        });
                    }
                    let factors = factorize(entry.order as u64).expect("corpus order in budget");
                    let bound = cyclic_index_bound(&factors, CRITERION_NUM, CRITERION_DEN);
                    let (_, _, cyclic_index) = entry.group.max_order_element();
                    if ratio(cyclic_index as u64, 1) >= bound {
                        violations.push(Violation {
                            spec: entry.label.clone(),
                            details: format!(
                                "no cyclic subgroup of small index: [G:<x>] = {cyclic_index} \
                                 is not below {bound}"
                            ),
                        });
                    }
                    (violations, None)
                }
                Comparison::Equal if !solvable => {
                    (violations, Some(format!("equality case: {}", entry.label)))
                }
                _ => (violations, None),
            }
        })
        .collect();

    let mut violations = Vec::new();
    let mut notes = Vec::new();
    for (v, note) in results {
        violations.extend(v);
        notes.extend(note);
    }
    CheckReport::finish(
        "main_theorem",
        corpus.len(),
        violations,
        started,
        params_of(&[("corpus_size", corpus.len().to_string())]),
        notes,
    )
}

// ---------------------------------------------------------------------
// Lemma checks

/// ψ(G × H) ≤ ψ(G)ψ(H), with equality exactly for coprime orders.
/// Pairs whose product order exceeds the cap are skipped and counted.
pub fn verify_direct_product(sample: &[&CorpusEntry], product_cap: usize) -> CheckReport {
    let started = Instant::now();
    let mut pairs = Vec::new();
    for i in 0..sample.len() {
        for j in i..sample.len() {
            pairs.push((sample[i], sample[j]));
        }
    }
    let results: Vec<std::result::Result<Vec<Violation>, ()>> = pairs
        .par_iter()
        .map(|(a, b)| {
            if a.order.saturating_mul(b.order) > product_cap {
                return Err(());
            }
            let mut violations = Vec::new();
            let product = a
                .group
                .direct_product(&b.group, product_cap)
                .expect("size checked above");
            let psi_product = psi_group(&product);
            let psi_parts = psi_group(&a.group) * psi_group(&b.group);
            let coprime = num_integer::gcd(a.order, b.order) == 1;
            let pair_name = format!("prod({}, {})", a.label, b.label);
            if psi_product > psi_parts {
                violations.push(Violation {
                    spec: pair_name.clone(),
                    details: format!("psi of product {psi_product} exceeds {psi_parts}"),
                });
            } else if coprime && psi_product != psi_parts {
                violations.push(Violation {
                    spec: pair_name.clone(),
                    details: format!(
                        "coprime orders but strict inequality: {psi_product} < {psi_parts}"
                    ),
                });
            } else if !coprime && psi_product == psi_parts {
                violations.push(Violation {
                    spec: pair_name,
                    details: format!("shared factor yet equality at {psi_product}"),
                });
            }
            Ok(violations)
        })
        .collect();

    let mut violations = Vec::new();
    let mut skipped = 0usize;
    let mut checked = 0usize;
    for r in results {
        match r {
            Ok(v) => {
                checked += 1;
                violations.extend(v);
            }
            Err(()) => skipped += 1,
        }
    }
    CheckReport::finish(
        "direct_product",
        checked,
        violations,
        started,
        params_of(&[
            ("sample_size", sample.len().to_string()),
            ("product_cap", product_cap.to_string()),
        ]),
        vec![format!("pairs skipped over the product cap: {skipped}")],
    )
}

/// Normal subgroups reachable without a lattice search: normal closures
/// of one element per conjugacy class, plus center and derived
/// subgroup, deduplicated by member set.
fn normal_subgroup_sample(g: &EnumeratedGroup) -> Vec<Subgroup<'_>> {
    let n = g.order();
    let mut class_seen = vec![false; n];
    let mut candidates: Vec<Subgroup<'_>> = Vec::new();
    for rep in 0..n {
        if class_seen[rep] {
            continue;
        }
        let conjugates: Vec<usize> = (0..n).map(|h| g.mul(g.mul(h, rep), g.inv(h))).collect();
        for &c in &conjugates {
            class_seen[c] = true;
        }
        candidates.push(g.generated_subgroup(&conjugates).expect("valid indices"));
    }
    candidates.push(g.center());
    candidates.push(g.full_subgroup().derived());
    let mut member_sets: HashSet<Vec<usize>> = HashSet::new();
    candidates
        .into_iter()
        .filter(|s| member_sets.insert(s.members().to_vec()))
        .collect()
}

/// ψ(G) ≤ ψ(G/H)·|H|² for every sampled normal subgroup H.
pub fn verify_quotient_bound(corpus: &[CorpusEntry], max_order: usize) -> CheckReport {
    let started = Instant::now();
    let population: Vec<&CorpusEntry> =
        corpus.iter().filter(|e| e.order <= max_order).collect();
    let violations: Vec<Violation> = population
        .par_iter()
        .flat_map_iter(|entry| {
            let g = &entry.group;
            let psi_g = psi_group(g);
            let mut found = Vec::new();
            for h in normal_subgroup_sample(g) {
                let quotient = g.quotient(&h).expect("closures and center are normal");
                let bound = psi_group(&quotient) * BigUint::from(h.size()) * BigUint::from(h.size());
                if psi_g > bound {
                    found.push(Violation {
                        spec: entry.label.clone(),
                        details: format!(
                            "normal subgroup of size {}: psi {} exceeds quotient bound {}",
                            h.size(),
                            psi_g,
                            bound
                        ),
                    });
                }
            }
            found
        })
        .collect();
    CheckReport::finish(
        "quotient_bound",
        population.len(),
        violations,
        started,
        params_of(&[("max_order", max_order.to_string())]),
        Vec::new(),
    )
}

/// For each normal cyclic Sylow subgroup P: ψ(G) ≤ ψ(P)·ψ(G/P), with
/// equality exactly when P is central. Groups without such a P
/// contribute vacuously.
pub fn verify_sumsylow(corpus: &[CorpusEntry], max_order: usize) -> CheckReport {
    let started = Instant::now();
    let population: Vec<&CorpusEntry> =
        corpus.iter().filter(|e| e.order <= max_order).collect();
    let results: Vec<(Vec<Violation>, usize)> = population
        .par_iter()
        .map(|entry| {
            let g = &entry.group;
            let orders = g.element_orders();
            let center = g.center();
            let psi_g = psi_group(g);
            let mut violations = Vec::new();
            let mut examined = 0usize;
            for (p, _) in factorize(entry.order as u64).expect("in budget").factors() {
                let (sylow, count) = g.sylow_count(*p as usize).expect("p divides order");
                let cyclic = sylow.members().iter().any(|&m| orders[m] == sylow.size());
                if count != 1 || !cyclic {
                    continue;
                }
                examined += 1;
                let quotient = g.quotient(&sylow).expect("unique Sylow subgroup is normal");
                let rhs = BigUint::from(psi_of_members(&orders, sylow.members()))
                    * psi_group(&quotient);
                let central = sylow.members().iter().all(|&m| center.contains(m));
                if psi_g > rhs {
                    violations.push(Violation {
                        spec: entry.label.clone(),
                        details: format!("p = {p}: psi {psi_g} exceeds factor bound {rhs}"),
                    });
                } else if central && psi_g != rhs {
                    violations.push(Violation {
                        spec: entry.label.clone(),
                        details: format!("p = {p}: central Sylow but strict {psi_g} < {rhs}"),
                    });
                } else if !central && psi_g == rhs {
                    violations.push(Violation {
                        spec: entry.label.clone(),
                        details: format!("p = {p}: non-central Sylow yet equality at {psi_g}"),
                    });
                }
            }
            (violations, examined)
        })
        .collect();

    let mut violations = Vec::new();
    let mut examined = 0usize;
    for (v, e) in results {
        violations.extend(v);
        examined += e;
    }
    CheckReport::finish(
        "sumsylow",
        population.len(),
        violations,
        started,
        params_of(&[("max_order", max_order.to_string())]),
        vec![format!("{examined} normal cyclic Sylow subgroups examined")],
    )
}

/// [A : core(A)] < [G : A] for every proper cyclic subgroup A = ⟨x⟩,
/// one per distinct subgroup.
pub fn verify_lucchini(corpus: &[CorpusEntry], max_order: usize) -> CheckReport {
    let started = Instant::now();
    let population: Vec<&CorpusEntry> =
        corpus.iter().filter(|e| e.order <= max_order).collect();
    let violations: Vec<Violation> = population
        .par_iter()
        .flat_map_iter(|entry| {
            let g = &entry.group;
            let n = g.order();
            let mut seen: HashSet<Vec<usize>> = HashSet::new();
            let mut found = Vec::new();
            for x in 0..n {
                let a = g.generated_subgroup(&[x]).expect("index in range");
                if a.size() == n || !seen.insert(a.members().to_vec()) {
                    continue;
                }
                let core = g.subgroup_core(&a);
                let a_over_core = a.size() / core.size();
                let g_over_a = n / a.size();
                if a_over_core >= g_over_a {
                    found.push(Violation {
                        spec: entry.label.clone(),
                        details: format!(
                            "cyclic subgroup of order {}: [A:K] = {a_over_core} not below \
                             [G:A] = {g_over_a}",
                            a.size()
                        ),
                    });
                }
            }
            found
        })
        .collect();
    CheckReport::finish(
        "lucchini",
        population.len(),
        violations,
        started,
        params_of(&[("max_order", max_order.to_string())]),
        Vec::new(),
    )
}

/// ψ(C_{p^{a+b}}) ≥ ψ(C_{p^a})·ψ(C_{p^b}), exhaustive over the grid.
pub fn verify_prime_power_supermult(p_max: u64, a_max: u32) -> CheckReport {
    let started = Instant::now();
    let mut violations = Vec::new();
    let mut population = 0usize;
    for p in (2..=p_max).filter(|&p| crate::psi::is_prime(p)) {
        for a in 1..=a_max {
            for b in 1..=a_max {
                population += 1;
                let whole = psi_cyclic_prime_power(p, a + b).expect("prime");
                let split = psi_cyclic_prime_power(p, a).expect("prime")
                    * psi_cyclic_prime_power(p, b).expect("prime");
                if whole < split {
                    violations.push(Violation {
                        spec: format!("p={p} a={a} b={b}"),
                        details: format!("{whole} < {split}"),
                    });
                }
            }
        }
    }
    CheckReport::finish(
        "prime_power_supermult",
        population,
        violations,
        started,
        params_of(&[("p_max", p_max.to_string()), ("a_max", a_max.to_string())]),
        Vec::new(),
    )
}

/// m² > (13/12)·ψ(C_m) for every {2,3,5}-smooth m in 2..=limit.
pub fn verify_smooth_square(limit: u64) -> CheckReport {
    let started = Instant::now();
    let mut smooth_values = Vec::new();
    let mut two = 1u64;
    while two <= limit {
        let mut three = two;
        while three <= limit {
            let mut m = three;
            while m <= limit {
                if m >= 2 {
                    smooth_values.push(m);
                }
                match m.checked_mul(5) {
                    Some(next) if next <= limit => m = next,
                    _ => break,
                }
            }
            match three.checked_mul(3) {
                Some(next) if next <= limit => three = next,
                _ => break,
            }
        }
        match two.checked_mul(2) {
            Some(next) if next <= limit => two = next,
            _ => break,
        }
    }
    smooth_values.sort_unstable();

    let mut violations = Vec::new();
    for &m in &smooth_values {
        let check = smooth_square_check(m).expect("smooth by construction");
        if !check.holds {
            violations.push(Violation {
                spec: format!("m={m}"),
                details: format!("{} not above {}", check.lhs, check.rhs),
            });
        }
    }
    let population = smooth_values.len();
    CheckReport::finish(
        "smooth_square",
        population,
        violations,
        started,
        params_of(&[("limit", limit.to_string())]),
        Vec::new(),
    )
}

/// ψ(C_n) ≥ (5005/1152)·n²/(p+1) on a fixed-seed random draw of n with
/// largest prime factor at least 13.
pub fn verify_cyclic_lower_bound(samples: usize, n_max: u64, seed: u64) -> CheckReport {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = Vec::new();
    let mut drawn = 0usize;
    while drawn < samples {
        let n = rng.gen_range(1..=n_max);
        let factors = factorize(n).expect("below budget");
        if factors.largest_prime().map_or(true, |p| p < 13) {
            continue;
        }
        drawn += 1;
        let check = psi_cyclic_lower_bound(n).expect("largest prime checked");
        if !check.holds {
            violations.push(Violation {
                spec: format!("n={n}"),
                details: format!("{} below {}", check.lhs, check.rhs),
            });
        }
    }
    CheckReport::finish(
        "cyclic_lower_bound",
        samples,
        violations,
        started,
        params_of(&[
            ("samples", samples.to_string()),
            ("n_max", n_max.to_string()),
            ("seed", format!("{seed:#x}")),
        ]),
        Vec::new(),
    )
}

/// Weak form of the small-index dichotomy: an element whose cyclic
/// subgroup has index below 2p (p the largest prime divisor) forces
/// either a normal cyclic Sylow p-subgroup or a solvable group whose
/// index divides p or p + 1. Maximality of ⟨x⟩ is not checked.
pub fn verify_index_2p(corpus: &[CorpusEntry], max_order: usize) -> CheckReport {
    let started = Instant::now();
    let population: Vec<&CorpusEntry> = corpus
        .iter()
        .filter(|e| e.order <= max_order && e.order > 1)
        .collect();
    let violations: Vec<Violation> = population
        .par_iter()
        .flat_map_iter(|entry| {
            let g = &entry.group;
            let n = g.order();
            let orders = g.element_orders();
            let p = factorize(n as u64)
                .expect("in budget")
                .largest_prime()
                .expect("order above 1") as usize;
            let (sylow, count) = g.sylow_count(p).expect("largest prime divides");
            let sylow_normal_cyclic =
                count == 1 && sylow.members().iter().any(|&m| orders[m] == sylow.size());
            let mut found = Vec::new();
            if sylow_normal_cyclic {
                return found;
            }
            let solvable = g.is_solvable();
            let mut indexes_seen = HashSet::new();
            for &o in &orders {
                let index = n / o;
                if index >= 2 * p || !indexes_seen.insert(index) {
                    continue;
                }
                let allowed = solvable
                    && (index == 1 || p % index == 0 || (p + 1) % index == 0);
                if !allowed {
                    found.push(Violation {
                        spec: entry.label.clone(),
                        details: format!(
                            "index {index} < 2p = {} with no normal cyclic Sylow \
                             {p}-subgroup (solvable: {solvable})",
                            2 * p
                        ),
                    });
                }
            }
            found
        })
        .collect();
    CheckReport::finish(
        "index_2p",
        population.len(),
        violations,
        started,
        params_of(&[("max_order", max_order.to_string())]),
        Vec::new(),
    )
}

/// Exact boundary identity 1617·ψ(A₅ × C_m) = 211·ψ(C_{60m}) for each
/// coprime companion m: enumerated while 60m fits the cap, by the
/// coprime product formula above it.
pub fn verify_equality_family(ms: &[u64], cap: usize) -> Result<CheckReport> {
    let started = Instant::now();
    let mut violations = Vec::new();
    let mut notes = Vec::new();
    for &m in ms {
        if num_integer::gcd(30, m) != 1 {
            return Err(Error::GcdViolation(m));
        }
        let family_order = 60 * m;
        let (psi_g, path) = if family_order <= cap as u64 {
            let spec = GroupSpec::Product(
                Box::new(GroupSpec::Alt(5)),
                Box::new(GroupSpec::Cyclic(m)),
            );
            (psi_group(&build_group(&spec, cap)?), "enumerated")
        } else {
            // Coprime direct product: ψ multiplies exactly.
            (
                BigUint::from(CRITERION_NUM) * psi_cyclic(m)?,
                "formula",
            )
        };
        notes.push(format!("m={m}: {path} path"));
        let lhs = &psi_g * CRITERION_DEN;
        let rhs = psi_cyclic(family_order)? * CRITERION_NUM;
        if lhs != rhs {
            violations.push(Violation {
                spec: format!("prod(a 5, c {m})"),
                details: format!("1617*{psi_g} = {lhs} differs from 211*psi(C_{family_order}) = {rhs}"),
            });
        }
    }
    Ok(CheckReport::finish(
        "equality_family",
        ms.len(),
        violations,
        started,
        params_of(&[
            (
                "m_list",
                ms.iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            ("cap", cap.to_string()),
        ]),
        notes,
    ))
}

/// Sylow-count consequences observed corpus-wide: no member may have
/// n₃ = 22, n₅ = 21, or n_p = 1 + 3p for p ≥ 7.
pub fn verify_sylow_count_consequences(corpus: &[CorpusEntry]) -> CheckReport {
    let started = Instant::now();
    let violations: Vec<Violation> = corpus
        .par_iter()
        .flat_map_iter(|entry| {
            let g = &entry.group;
            let mut found = Vec::new();
            for (p, _) in factorize(entry.order as u64).expect("in budget").factors() {
                let p = *p as usize;
                let (_, count) = g.sylow_count(p).expect("p divides order");
                let excluded = (p == 3 && count == 22)
                    || (p == 5 && count == 21)
                    || (p >= 7 && count == 1 + 3 * p);
                if excluded {
                    found.push(Violation {
                        spec: entry.label.clone(),
                        details: format!("n_{p} = {count} is an excluded Sylow count"),
                    });
                }
            }
            found
        })
        .collect();
    CheckReport::finish(
        "sylow_count_consequences",
        corpus.len(),
        violations,
        started,
        params_of(&[("corpus_size", corpus.len().to_string())]),
        Vec::new(),
    )
}

// ---------------------------------------------------------------------
// Suites

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Main,
    Lemmas,
    Family,
    Sylow,
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(Suite::All),
            "main" => Ok(Suite::Main),
            "lemmas" => Ok(Suite::Lemmas),
            "family" => Ok(Suite::Family),
            "sylow" => Ok(Suite::Sylow),
            other => Err(Error::Param(format!(
                "unknown suite `{other}`; expected all, main, lemmas, family or sylow"
            ))),
        }
    }
}

pub const DEFAULT_FAMILY_MS: [u64; 7] = [1, 7, 11, 13, 49, 77, 91];

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub cap: usize,
    pub m_list: Vec<u64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            cap: crate::group::DEFAULT_CAP,
            m_list: DEFAULT_FAMILY_MS.to_vec(),
        }
    }
}

/// Evenly strided sample of the entries with order ≤ 60, feeding the
/// direct-product pair sweep.
pub fn product_sample(corpus: &[CorpusEntry], want: usize) -> Vec<&CorpusEntry> {
    let small: Vec<&CorpusEntry> = corpus.iter().filter(|e| e.order <= 60).collect();
    if small.len() <= want {
        return small;
    }
    (0..want).map(|i| small[i * small.len() / want]).collect()
}

/// Runs a suite over an already-built corpus; `family` ignores the
/// corpus and works from the configured m-list.
pub fn run_suite(suite: Suite, corpus: &[CorpusEntry], config: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let mut reports = Vec::new();
    if matches!(suite, Suite::All | Suite::Main) {
        reports.push(verify_main_theorem(corpus));
    }
    if matches!(suite, Suite::All | Suite::Lemmas) {
        reports.push(verify_direct_product(&product_sample(corpus, 25), 2000));
        reports.push(verify_quotient_bound(corpus, 200));
        reports.push(verify_sumsylow(corpus, 200));
        reports.push(verify_lucchini(corpus, 120));
        reports.push(verify_index_2p(corpus, 120));
        reports.push(verify_prime_power_supermult(13, 6));
        reports.push(verify_smooth_square(10_000));
        reports.push(verify_cyclic_lower_bound(
            10_000,
            1_000_000_000,
            LOWER_BOUND_SWEEP_SEED,
        ));
    }
    if matches!(suite, Suite::All | Suite::Family) {
        reports.push(verify_equality_family(&config.m_list, config.cap)?);
    }
    if matches!(suite, Suite::All | Suite::Sylow) {
        reports.push(verify_sylow_count_consequences(corpus));
    }
    Ok(reports)
}

/// Writes one pretty-printed JSON report per check into `dir`, named
/// `<check>.json`; returns the paths.
pub fn write_reports(reports: &[CheckReport], dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    for report in reports {
        let path = dir.join(format!("{}.json", report.name));
        let json = serde_json::to_string_pretty(report)
            .map_err(|e| Error::Format(format!("report serialization: {e}")))?;
        std::fs::write(&path, json + "\n")?;
        paths.push(path);
    }
    Ok(paths)
}

// ---------------------------------------------------------------------
// Scan rows

/// One criterion row per group, exact columns as decimal/fraction
/// strings; `ratio_approx` is the only approximate field.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ScanRow {
    pub spec: String,
    pub order: u64,
    pub psi_g: String,
    pub psi_cn: String,
    pub ratio: String,
    pub ratio_approx: String,
    pub comparison: String,
    pub solvable: bool,
}

pub fn scan_rows(corpus: &[CorpusEntry]) -> Vec<ScanRow> {
    let mut rows: Vec<ScanRow> = corpus
        .par_iter()
        .map(|entry| {
            let verdict = criterion_verdict(&entry.group);
            let exact = crate::psi::ExactRatio::new(
                verdict.psi_g.clone().into(),
                verdict.psi_cn.clone().into(),
            );
            let approx = exact.numer().to_f64().unwrap_or(f64::NAN)
                / exact.denom().to_f64().unwrap_or(f64::NAN);
            ScanRow {
                spec: entry.label.clone(),
                order: entry.order as u64,
                psi_g: verdict.psi_g.to_string(),
                psi_cn: verdict.psi_cn.to_string(),
                ratio: exact.to_string(),
                ratio_approx: format!("{approx:.6}"),
                comparison: verdict.comparison.to_string(),
                solvable: entry.group.is_solvable(),
            }
        })
        .collect();
    rows.sort_by(|a, b| (a.order, &a.spec).cmp(&(b.order, &b.spec)));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{builtin_corpus, parse_spec};
    use crate::group::DEFAULT_CAP;
    use std::sync::OnceLock;

    fn corpus_120() -> &'static Vec<CorpusEntry> {
        static CORPUS: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
        CORPUS.get_or_init(|| builtin_corpus(120, DEFAULT_CAP).unwrap())
    }

    fn entry_of(text: &str) -> CorpusEntry {
        let spec = parse_spec(text).unwrap();
        let group = build_group(&spec, DEFAULT_CAP).unwrap();
        CorpusEntry {
            label: spec.to_string(),
            order: group.order(),
            spec: Some(spec),
            group,
            source: crate::corpus::Source::Builtin,
        }
    }

    #[test]
    fn main_theorem_on_single_entries() {
        let report = verify_main_theorem(&[entry_of("a 5")]);
        assert!(report.pass);
        assert_eq!(report.notes, vec!["equality case: a 5"]);

        let report = verify_main_theorem(&[entry_of("c 60")]);
        assert!(report.pass);
        assert!(report.notes.is_empty());
    }

    #[test]
    fn main_theorem_on_small_corpus() {
        let report = verify_main_theorem(corpus_120());
        assert!(report.pass, "violations: {:?}", report.violations);
        // The order-60 simple group appears under several guises.
        assert!(report.notes.len() >= 3);
    }

    #[test]
    fn direct_product_examples() {
        let c2 = entry_of("c 2");
        let c3 = entry_of("c 3");
        let a5 = entry_of("a 5");
        let c7 = entry_of("c 7");
        let report = verify_direct_product(&[&c2, &c3, &a5, &c7], 2000);
        assert!(report.pass, "violations: {:?}", report.violations);
        // (a 5, a 5) sits over the product cap; the other 9 pairs run.
        assert_eq!(report.population, 9);
        assert_eq!(report.notes, vec!["pairs skipped over the product cap: 1"]);
    }

    #[test]
    fn direct_product_skips_over_cap() {
        let a5 = entry_of("a 5");
        let report = verify_direct_product(&[&a5, &a5], 2000);
        // 60·60 = 3600 over the cap for all three pairs.
        assert_eq!(report.population, 0);
        assert_eq!(report.notes, vec!["pairs skipped over the product cap: 3"]);
    }

    #[test]
    fn quotient_bound_examples() {
        let report = verify_quotient_bound(&[entry_of("s 4"), entry_of("sl2 5")], 200);
        assert!(report.pass, "violations: {:?}", report.violations);
        assert_eq!(report.population, 2);
    }

    #[test]
    fn quotient_bound_anchor_values() {
        // S₄ over V₄ (second derived subgroup): 67 against 13·4².
        let s4 = entry_of("s 4");
        let v4 = s4.group.full_subgroup().derived().derived();
        assert_eq!(v4.size(), 4);
        let quotient = s4.group.quotient(&v4).unwrap();
        assert_eq!(psi_group(&s4.group), BigUint::from(67u32));
        assert_eq!(psi_group(&quotient) * 16u32, BigUint::from(208u32));

        // SL(2,5) over its center: 663 against 211·2².
        let sl25 = entry_of("sl2 5");
        let center = sl25.group.center();
        assert_eq!(center.size(), 2);
        let quotient = sl25.group.quotient(&center).unwrap();
        assert_eq!(psi_group(&sl25.group), BigUint::from(663u32));
        assert_eq!(psi_group(&quotient) * 4u32, BigUint::from(844u32));
    }

    #[test]
    fn sumsylow_examples() {
        let report = verify_sumsylow(
            &[entry_of("c 6"), entry_of("s 3"), entry_of("d 5")],
            200,
        );
        assert!(report.pass, "violations: {:?}", report.violations);
        // C₆ contributes two normal cyclic Sylows, S₃ and D₅ one each.
        assert_eq!(report.notes, vec!["4 normal cyclic Sylow subgroups examined"]);
    }

    #[test]
    fn lucchini_examples() {
        let report = verify_lucchini(&[entry_of("a 5"), entry_of("c 6")], 120);
        assert!(report.pass, "violations: {:?}", report.violations);
    }

    #[test]
    fn supermult_grid_is_clean() {
        let report = verify_prime_power_supermult(13, 6);
        assert!(report.pass);
        assert_eq!(report.population, 6 * 36);
    }

    #[test]
    fn smooth_square_sweep_is_clean() {
        let report = verify_smooth_square(10_000);
        assert!(report.pass);
        // 2^a 3^b 5^c ≤ 10⁴ beyond m = 1.
        assert!(report.population > 50, "population {}", report.population);
    }

    #[test]
    fn cyclic_lower_bound_sweep_is_clean() {
        let report = verify_cyclic_lower_bound(500, 1_000_000_000, LOWER_BOUND_SWEEP_SEED);
        assert!(report.pass);
        assert_eq!(report.population, 500);
    }

    #[test]
    fn index_2p_examples() {
        // A₄: index 4 = p + 1 under solvability.
        let report = verify_index_2p(&[entry_of("a 4"), entry_of("c 12")], 120);
        assert!(report.pass, "violations: {:?}", report.violations);
    }

    #[test]
    fn equality_family_paths() {
        let report = verify_equality_family(&[1, 7], DEFAULT_CAP).unwrap();
        assert!(report.pass, "violations: {:?}", report.violations);
        assert_eq!(report.notes, vec!["m=1: enumerated path", "m=7: enumerated path"]);

        let report = verify_equality_family(&[7], 100).unwrap();
        assert_eq!(report.notes, vec!["m=7: formula path"]);
        assert!(report.pass);
    }

    #[test]
    fn equality_family_rejects_shared_factor() {
        assert!(matches!(
            verify_equality_family(&[6], DEFAULT_CAP),
            Err(Error::GcdViolation(6))
        ));
    }

    #[test]
    fn sylow_consequences_on_small_corpus() {
        let report = verify_sylow_count_consequences(corpus_120());
        assert!(report.pass, "violations: {:?}", report.violations);
    }

    #[test]
    fn report_json_field_order_is_stable() {
        let report = verify_prime_power_supermult(3, 1);
        let json = serde_json::to_string(&report).unwrap();
        let name = json.find("\"name\"").unwrap();
        let population = json.find("\"population\"").unwrap();
        let pass = json.find("\"pass\"").unwrap();
        let violations = json.find("\"violations\"").unwrap();
        let elapsed = json.find("\"elapsed_ms\"").unwrap();
        assert!(name < population && population < pass && pass < violations && violations < elapsed);
    }

    #[test]
    fn reports_write_to_disk() {
        let dir = tempfile::tempdir().unwrap();
        let reports = vec![verify_prime_power_supermult(3, 2)];
        let paths = write_reports(&reports, dir.path()).unwrap();
        assert_eq!(paths.len(), 1);
        let text = std::fs::read_to_string(&paths[0]).unwrap();
        assert!(text.contains("\"prime_power_supermult\""));
    }

    #[test]
    fn scan_rows_are_sorted_and_exact() {
        let rows = scan_rows(&[entry_of("a 5"), entry_of("c 1")]);
        assert_eq!(rows[0].spec, "c 1");
        assert_eq!(rows[1].spec, "a 5");
        assert_eq!(rows[1].psi_g, "211");
        assert_eq!(rows[1].psi_cn, "1617");
        assert_eq!(rows[1].ratio, "211/1617");
        assert_eq!(rows[1].ratio_approx, "0.130489");
        assert_eq!(rows[1].comparison, "EQUAL");
        assert!(!rows[1].solvable);
    }

    #[test]
    fn suite_runner_covers_requested_checks() {
        let corpus = vec![entry_of("c 6"), entry_of("s 3")];
        let config = SuiteConfig {
            m_list: vec![1],
            ..SuiteConfig::default()
        };
        let names: Vec<String> = run_suite(Suite::All, &corpus, &config)
            .unwrap()
            .into_iter()
            .map(|r| r.name)
            .collect();
        assert_eq!(
            names,
            vec![
                "main_theorem",
                "direct_product",
                "quotient_bound",
                "sumsylow",
                "lucchini",
                "index_2p",
                "prime_power_supermult",
                "smooth_square",
                "cyclic_lower_bound",
                "equality_family",
                "sylow_count_consequences",
            ]
        );
    }
}
