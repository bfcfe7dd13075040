//! Standalone structural properties of ψ and of the builtin corpus,
//! swept over an order-420 corpus (a strict superset of the order-360
//! gate corpus, reaching the 420 equality-family member).

use std::sync::OnceLock;

use num_bigint::BigUint;
use ordsum::corpus::{build_group, builtin_corpus, parse_spec, CorpusEntry};
use ordsum::group::DEFAULT_CAP;
use ordsum::psi::{psi_cyclic, psi_group};
use rayon::prelude::*;

fn corpus_420() -> &'static Vec<CorpusEntry> {
    static CORPUS: OnceLock<Vec<CorpusEntry>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        builtin_corpus(420, DEFAULT_CAP).expect("builtin corpus fits the default cap")
    })
}

/// Identity contributes 1, and every other element pairs with its
/// distinct inverse of equal order or is an involution: ψ is odd.
#[test]
fn psi_is_always_odd() {
    for entry in corpus_420().iter() {
        let psi = psi_group(&entry.group);
        assert!(psi.bit(0), "{}: psi = {psi} is even", entry.label);
    }
}

/// ψ(G) ≤ ψ(C_n) with equality exactly for cyclic G.
#[test]
fn cyclic_groups_maximize_psi() {
    for entry in corpus_420().iter() {
        let psi = psi_group(&entry.group);
        let psi_cn = psi_cyclic(entry.order as u64).unwrap();
        let (_, max_ord, _) = entry.group.max_order_element();
        let cyclic = max_ord == entry.order;
        assert!(
            psi <= psi_cn,
            "{}: psi = {psi} exceeds psi(C_n) = {psi_cn}",
            entry.label
        );
        assert_eq!(
            psi == psi_cn,
            cyclic,
            "{}: equality holds iff cyclic (psi = {psi}, psi_cn = {psi_cn})",
            entry.label
        );
    }
}

/// The closed-form ψ(C_n) agrees with enumeration for every n ≤ 2000.
#[test]
fn cyclic_formula_matches_enumeration() {
    let disagreement = (1u64..=2000).into_par_iter().find_any(|&n| {
        let spec = parse_spec(&format!("c {n}")).unwrap();
        let group = build_group(&spec, 2000).unwrap();
        psi_group(&group) != psi_cyclic(n).unwrap()
    });
    assert_eq!(disagreement, None);
}

/// Every corpus entry carries its spec, hits its predicted order, and
/// is named by its canonical spec string.
#[test]
fn corpus_entries_are_well_formed() {
    let corpus = corpus_420();
    assert!(corpus.len() >= 250);
    for entry in corpus.iter() {
        let spec = entry.spec.as_ref().expect("builtin entries carry specs");
        assert_eq!(spec.to_string(), entry.label);
        assert_eq!(spec.predicted_order(), Some(entry.order as u64));
        assert_eq!(entry.group.order(), entry.order);
        assert_eq!(entry.group.name(), Some(entry.label.as_str()));
    }
    // The equality-family member at 420 made it in.
    assert!(corpus.iter().any(|e| e.label == "prod(a 5, c 7)"));
}

/// Full table laws (Latin property plus associativity) on an evenly
/// strided sample; the whole corpus already passed the cheap laws at
/// construction.
#[test]
fn corpus_sample_passes_full_validation() {
    let corpus = corpus_420();
    let want = 50.min(corpus.len());
    (0..want).into_par_iter().for_each(|i| {
        let entry = &corpus[i * corpus.len() / want];
        entry
            .group
            .validate()
            .unwrap_or_else(|e| panic!("{} failed validation: {e}", entry.label));
    });
}

/// ψ is multiplicative across the coprime direct products the corpus
/// ships (A₅ × C_m with gcd(30, m) = 1).
#[test]
fn corpus_products_multiply_psi() {
    let mut seen = 0;
    for entry in corpus_420().iter() {
        let Some(ordsum::corpus::GroupSpec::Product(a, b)) = entry.spec.as_ref() else {
            continue;
        };
        seen += 1;
        let ga = build_group(a, DEFAULT_CAP).unwrap();
        let gb = build_group(b, DEFAULT_CAP).unwrap();
        assert_eq!(
            psi_group(&entry.group),
            psi_group(&ga) * psi_group(&gb),
            "{}",
            entry.label
        );
    }
    // gcd(30, m) = 1 and 60m ≤ 420 admits only m = 7.
    assert_eq!(seen, 1, "{seen} product entries at order 420");
}

/// Spot anchor: ψ(C₄₂₀) = 69531 = 3 · 7² · 11 · 43.
#[test]
fn psi_c420_value() {
    assert_eq!(psi_cyclic(420).unwrap(), BigUint::from(69531u32));
    assert_eq!(3u32 * 49 * 11 * 43, 69531);
}
