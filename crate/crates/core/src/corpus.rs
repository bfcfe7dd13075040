//! Group-spec mini-language, family builders, the deterministic builtin
//! corpus, and group-file ingestion.
//!
//! Grammar (keywords case-insensitive):
//!   C n | ab d1 d2 ... | D n | Dic n | S n | A n
//!   | GL2 q | SL2 q | PSL2 q | mc m k r | prod(spec, spec)
//!
//! Canonical form is the lowercase keyword with space-separated decimal
//! parameters, products parenthesized; it is the sorting and dedupe key
//! for the corpus.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use num_integer::gcd;
use rayon::prelude::*;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::field::{FiniteField, Matrix2};
use crate::group::{close_generators, EnumeratedGroup};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(u64),
    /// Direct product of cyclic groups of the listed orders.
    Abelian(Vec<u64>),
    /// Order 2n: symmetries of the n-gon.
    Dihedral(u64),
    /// Order 4n: ⟨a, b | a^{2n} = 1, b² = aⁿ, bab⁻¹ = a⁻¹⟩.
    Dicyclic(u64),
    Sym(u64),
    Alt(u64),
    Gl2(u64),
    Sl2(u64),
    Psl2(u64),
    /// C_m ⋊ C_k with the generator of C_k acting as x ↦ x^r.
    Metacyclic { m: u64, k: u64, r: u64 },
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "c {n}"),
            GroupSpec::Abelian(ds) => {
                write!(f, "ab")?;
                for d in ds {
                    write!(f, " {d}")?;
                }
                Ok(())
            }
            GroupSpec::Dihedral(n) => write!(f, "d {n}"),
            GroupSpec::Dicyclic(n) => write!(f, "dic {n}"),
            GroupSpec::Sym(n) => write!(f, "s {n}"),
            GroupSpec::Alt(n) => write!(f, "a {n}"),
            GroupSpec::Gl2(q) => write!(f, "gl2 {q}"),
            GroupSpec::Sl2(q) => write!(f, "sl2 {q}"),
            GroupSpec::Psl2(q) => write!(f, "psl2 {q}"),
            GroupSpec::Metacyclic { m, k, r } => write!(f, "mc {m} {k} {r}"),
            GroupSpec::Product(a, b) => write!(f, "prod({a}, {b})"),
        }
    }
}

impl GroupSpec {
    /// Order each spec must enumerate to; None when the product
    /// overflows u64 (which any cap will reject anyway).
    pub fn predicted_order(&self) -> Option<u64> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Abelian(ds) => ds.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d)),
            GroupSpec::Dihedral(n) => n.checked_mul(2),
            GroupSpec::Dicyclic(n) => n.checked_mul(4),
            GroupSpec::Sym(n) => factorial(*n),
            GroupSpec::Alt(n) => Some(factorial(*n)?.max(2) / 2),
            GroupSpec::Gl2(q) => (q * q - 1).checked_mul(q * q - q),
            GroupSpec::Sl2(q) => q.checked_mul(q * q - 1),
            GroupSpec::Psl2(q) => Some(q * (q * q - 1) / gcd(2, q - 1)),
            GroupSpec::Metacyclic { m, k, .. } => m.checked_mul(*k),
            GroupSpec::Product(a, b) => a.predicted_order()?.checked_mul(b.predicted_order()?),
        }
    }

    /// Semantic validation beyond the grammar: parameter ranges and the
    /// metacyclic congruence. Cap checks happen at build time.
    pub fn validate(&self) -> Result<()> {
        let positive = |n: u64, what: &str| {
            if n == 0 {
                Err(Error::Param(format!("{what} must be positive")))
            } else {
                Ok(())
            }
        };
        match self {
            GroupSpec::Cyclic(n) => positive(*n, "cyclic order"),
            GroupSpec::Abelian(ds) => {
                for &d in ds {
                    if d < 2 {
                        return Err(Error::Param(format!(
                            "abelian factor {d} is below 2; drop trivial factors"
                        )));
                    }
                }
                Ok(())
            }
            GroupSpec::Dihedral(n) => positive(*n, "dihedral parameter"),
            GroupSpec::Dicyclic(n) => positive(*n, "dicyclic parameter"),
            GroupSpec::Sym(n) => positive(*n, "symmetric degree"),
            GroupSpec::Alt(n) => positive(*n, "alternating degree"),
            GroupSpec::Gl2(q) | GroupSpec::Sl2(q) | GroupSpec::Psl2(q) => {
                FiniteField::new(*q).map(|_| ())
            }
            GroupSpec::Metacyclic { m, k, r } => {
                if *m < 2 {
                    return Err(Error::Param("metacyclic modulus must be at least 2".into()));
                }
                positive(*k, "metacyclic exponent")?;
                if *r < 1 || r >= m {
                    return Err(Error::Param(format!(
                        "metacyclic action {r} must lie in 1..{m}"
                    )));
                }
                if gcd(*r, *m) != 1 {
                    return Err(Error::Param(format!("action {r} shares a factor with {m}")));
                }
                if modpow(*r, *k, *m) != 1 {
                    return Err(Error::Param(format!(
                        "{r}^{k} is not 1 mod {m}; the action does not close"
                    )));
                }
                Ok(())
            }
            GroupSpec::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
        }
    }
}

fn factorial(n: u64) -> Option<u64> {
    (2..=n).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

pub(crate) fn modpow(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

// ---------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Num(u64),
    LParen,
    RParen,
    Comma,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let mut toks = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: format!("number `{}` does not fit in 64 bits", &text[start..i]),
                })?;
                toks.push((Tok::Num(n), start));
            }
            _ if c.is_ascii_alphanumeric() => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                    i += 1;
                }
                toks.push((Tok::Word(text[start..i].to_ascii_lowercase()), start));
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    idx: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.idx)
    }

    fn pos(&self) -> usize {
        self.peek().map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn number(&mut self, keyword: &str, expected: &str, got: usize) -> Result<u64> {
        match self.peek() {
            Some(&(Tok::Num(n), _)) => {
                self.idx += 1;
                Ok(n)
            }
            _ => Err(Error::Arity {
                keyword: keyword.into(),
                expected: expected.into(),
                got,
            }),
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        match self.peek() {
            Some((t, _)) if *t == tok => {
                self.idx += 1;
                Ok(())
            }
            _ => Err(Error::Parse {
                pos: self.pos(),
                msg: format!("expected {what}"),
            }),
        }
    }

    fn spec(&mut self) -> Result<GroupSpec> {
        let (kw, pos) = match self.peek() {
            Some((Tok::Word(w), p)) => (w.clone(), *p),
            Some((t, p)) => {
                return Err(Error::Parse {
                    pos: *p,
                    msg: format!("expected a keyword, found {t:?}"),
                })
            }
            None => {
                return Err(Error::Parse {
                    pos: self.end,
                    msg: "empty group spec".into(),
                })
            }
        };
        self.idx += 1;
        let spec = match kw.as_str() {
            "c" => GroupSpec::Cyclic(self.number("c", "1", 0)?),
            "d" => GroupSpec::Dihedral(self.number("d", "1", 0)?),
            "dic" => GroupSpec::Dicyclic(self.number("dic", "1", 0)?),
            "s" => GroupSpec::Sym(self.number("s", "1", 0)?),
            "a" => GroupSpec::Alt(self.number("a", "1", 0)?),
            "gl2" => GroupSpec::Gl2(self.number("gl2", "1", 0)?),
            "sl2" => GroupSpec::Sl2(self.number("sl2", "1", 0)?),
            "psl2" => GroupSpec::Psl2(self.number("psl2", "1", 0)?),
            "mc" => {
                let m = self.number("mc", "3", 0)?;
                let k = self.number("mc", "3", 1)?;
                let r = self.number("mc", "3", 2)?;
                GroupSpec::Metacyclic { m, k, r }
            }
            "ab" => {
                let mut ds = Vec::new();
                while let Some(&(Tok::Num(n), _)) = self.peek() {
                    ds.push(n);
                    self.idx += 1;
                }
                if ds.is_empty() {
                    return Err(Error::Arity {
                        keyword: "ab".into(),
                        expected: "at least 1".into(),
                        got: 0,
                    });
                }
                GroupSpec::Abelian(ds)
            }
            "prod" => {
                self.expect(Tok::LParen, "`(` after prod")?;
                let left = self.spec()?;
                self.expect(Tok::Comma, "`,` between product factors")?;
                let right = self.spec()?;
                self.expect(Tok::RParen, "`)` closing prod")?;
                GroupSpec::Product(Box::new(left), Box::new(right))
            }
            other => {
                return Err(Error::Parse {
                    pos,
                    msg: format!("unknown keyword `{other}`"),
                })
            }
        };
        Ok(spec)
    }
}

/// Parses and validates a group spec; round-trips with the canonical
/// `Display` form.
pub fn parse_spec(text: &str) -> Result<GroupSpec> {
    let toks = lex(text)?;
    let mut parser = Parser {
        toks: &toks,
        idx: 0,
        end: text.len(),
    };
    let spec = parser.spec()?;
    if let Some(&(_, pos)) = parser.peek() {
        return Err(Error::Parse {
            pos,
            msg: "trailing input after spec".into(),
        });
    }
    spec.validate()?;
    Ok(spec)
}

// ---------------------------------------------------------------------
// Builders

fn cyclic_group(n: u64, cap: usize) -> Result<EnumeratedGroup> {
    let n = checked_size(n, cap)?;
    EnumeratedGroup::from_fn(n, None, None, |a, b| (a + b) % n)
}

/// C_m ⋊ C_k table on pairs a^i b^j at index i·k + j; multiplication
/// uses b^j a = a^{r^j} b^j.
fn metacyclic_group(m: u64, k: u64, r: u64, cap: usize) -> Result<EnumeratedGroup> {
    let n = checked_size(m.checked_mul(k).unwrap_or(u64::MAX), cap)?;
    let (m, k) = (m as usize, k as usize);
    let mut rpow = vec![1usize; k];
    for j in 1..k {
        rpow[j] = rpow[j - 1] * (r as usize) % m;
    }
    let labels = (0..m)
        .flat_map(|i| (0..k).map(move |j| format!("a{i}b{j}")))
        .collect();
    EnumeratedGroup::from_fn(n, Some(labels), None, |x, y| {
        let (i1, j1) = (x / k, x % k);
        let (i2, j2) = (y / k, y % k);
        let i = (i1 + i2 * rpow[j1]) % m;
        let j = (j1 + j2) % k;
        i * k + j
    })
}

fn dihedral_group(n: u64, cap: usize) -> Result<EnumeratedGroup> {
    if n == 1 {
        return cyclic_group(2, cap);
    }
    metacyclic_group(n, 2, n - 1, cap)
}

/// Order 4n on pairs a^i b^j, i < 2n, j ∈ {0, 1}, with b² = aⁿ folded
/// into the exponent when two b's meet.
fn dicyclic_group(n: u64, cap: usize) -> Result<EnumeratedGroup> {
    let size = checked_size(n.checked_mul(4).unwrap_or(u64::MAX), cap)?;
    let n = n as usize;
    let two_n = 2 * n;
    let labels = (0..two_n)
        .flat_map(|i| [format!("a{i}"), format!("a{i}b")])
        .collect();
    EnumeratedGroup::from_fn(size, Some(labels), None, |x, y| {
        let (i1, j1) = (x / 2, x % 2);
        let (i2, j2) = (y / 2, y % 2);
        let mut i = if j1 == 1 {
            (i1 + two_n - i2) % two_n
        } else {
            (i1 + i2) % two_n
        };
        let mut j = j1 + j2;
        if j == 2 {
            i = (i + n) % two_n;
            j = 0;
        }
        i * 2 + j
    })
}

fn symmetric_group(degree: u64, cap: usize) -> Result<EnumeratedGroup> {
    let d = degree as usize;
    if d == 1 {
        return close_generators(&[Permutation::identity(1)], cap);
    }
    let cycle = Permutation::from_images((1..d).chain([0]).collect()).unwrap();
    let swap = Permutation::parse_cycles(d, "(0 1)").unwrap();
    close_generators(&[cycle, swap], cap)
}

fn alternating_group(degree: u64, cap: usize) -> Result<EnumeratedGroup> {
    let d = degree as usize;
    if d <= 2 {
        return close_generators(&[Permutation::identity(d.max(1))], cap);
    }
    let three_cycle = Permutation::parse_cycles(d, "(0 1 2)").unwrap();
    if d == 3 {
        return close_generators(&[three_cycle], cap);
    }
    // An n-cycle is even for odd n; otherwise rotate the last n−1
    // points, an even (n−1)-cycle.
    let big = if d % 2 == 1 {
        Permutation::from_images((1..d).chain([0]).collect()).unwrap()
    } else {
        Permutation::from_images([0].into_iter().chain(2..d).chain([1]).collect()).unwrap()
    };
    close_generators(&[three_cycle, big], cap)
}

/// Transvections with entries 1 and a primitive element generate
/// SL2(q); padding with both rows covers non-prime fields.
fn special_linear_gens(field: &Arc<FiniteField>) -> Vec<Matrix2> {
    let mut lambdas = vec![1];
    if field.degree() == 2 {
        lambdas.push(field.primitive_element());
    }
    let mut gens = Vec::new();
    for l in lambdas {
        gens.push(Matrix2::new(Arc::clone(field), [1, l, 0, 1]).unwrap());
        gens.push(Matrix2::new(Arc::clone(field), [1, 0, l, 1]).unwrap());
    }
    gens
}

fn special_linear_group(q: u64, cap: usize) -> Result<EnumeratedGroup> {
    let field = FiniteField::new(q)?;
    close_generators(&special_linear_gens(&field), cap)
}

fn general_linear_group(q: u64, cap: usize) -> Result<EnumeratedGroup> {
    let field = FiniteField::new(q)?;
    let mut gens = special_linear_gens(&field);
    let g = field.primitive_element();
    gens.push(Matrix2::new(Arc::clone(&field), [g, 0, 0, 1]).unwrap());
    close_generators(&gens, cap)
}

fn projective_special_linear_group(q: u64, cap: usize) -> Result<EnumeratedGroup> {
    let sl = special_linear_group(q, cap)?;
    let center = sl.center();
    sl.quotient(&center)
}

fn checked_size(n: u64, cap: usize) -> Result<usize> {
    let cap = cap.min(crate::group::TABLE_INDEX_LIMIT);
    if n == 0 {
        return Err(Error::Param("group order must be positive".into()));
    }
    if n > cap as u64 {
        return Err(Error::CapExceeded {
            needed: n,
            cap: cap as u64,
        });
    }
    Ok(n as usize)
}

/// Builds the enumerated group for a validated spec, named by its
/// canonical string.
pub fn build_group(spec: &GroupSpec, cap: usize) -> Result<EnumeratedGroup> {
    spec.validate()?;
    if let Some(predicted) = spec.predicted_order() {
        checked_size(predicted, cap)?;
    } else {
        return Err(Error::CapExceeded {
            needed: u64::MAX,
            cap: cap as u64,
        });
    }
    let group = match spec {
        GroupSpec::Cyclic(n) => cyclic_group(*n, cap)?,
        GroupSpec::Abelian(ds) => {
            let mut acc = cyclic_group(ds[0], cap)?;
            for &d in &ds[1..] {
                acc = acc.direct_product(&cyclic_group(d, cap)?, cap)?;
            }
            acc
        }
        GroupSpec::Dihedral(n) => dihedral_group(*n, cap)?,
        GroupSpec::Dicyclic(n) => dicyclic_group(*n, cap)?,
        GroupSpec::Sym(n) => symmetric_group(*n, cap)?,
        GroupSpec::Alt(n) => alternating_group(*n, cap)?,
        GroupSpec::Gl2(q) => general_linear_group(*q, cap)?,
        GroupSpec::Sl2(q) => special_linear_group(*q, cap)?,
        GroupSpec::Psl2(q) => projective_special_linear_group(*q, cap)?,
        GroupSpec::Metacyclic { m, k, r } => metacyclic_group(*m, *k, *r, cap)?,
        GroupSpec::Product(a, b) => {
            let left = build_group(a, cap)?;
            let right = build_group(b, cap)?;
            left.direct_product(&right, cap)?
        }
    };
    debug_assert_eq!(Some(group.order() as u64), spec.predicted_order());
    Ok(group.with_name(spec.to_string()))
}

// ---------------------------------------------------------------------
// Corpus

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Builtin,
    File,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Source::Builtin => "BUILTIN",
            Source::File => "FILE",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    /// Canonical spec string for builtin entries, record name for file
    /// entries; the sort and dedupe key.
    pub label: String,
    /// Absent for file-loaded groups, which have no spec.
    pub spec: Option<GroupSpec>,
    pub group: EnumeratedGroup,
    pub order: usize,
    pub source: Source,
}

/// All partitions of n, parts descending within each partition.
fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Non-cyclic abelian types of order n as ascending elementary-divisor
/// lists (one prime-power per partition part).
fn abelian_types(n: u64) -> Vec<Vec<u64>> {
    let factors = match crate::psi::factorize(n) {
        Ok(f) => f,
        Err(_) => return Vec::new(),
    };
    let per_prime: Vec<(u64, Vec<Vec<u32>>)> = factors
        .factors()
        .iter()
        .map(|&(p, a)| (p, partitions(a)))
        .collect();
    let mut combos: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, parts) in &per_prime {
        let mut next = Vec::new();
        for combo in &combos {
            for partition in parts {
                let mut extended = combo.clone();
                extended.extend(partition.iter().map(|&a| p.pow(a)));
                next.push(extended);
            }
        }
        combos = next;
    }
    combos
        .into_iter()
        .filter(|divisors| divisors.len() > per_prime.len()) // all-singleton combo is C_n
        .map(|mut divisors| {
            divisors.sort_unstable();
            divisors
        })
        .collect()
}

/// Deterministic spec list behind [`builtin_corpus`]; sorted by
/// (order, canonical string) with duplicates removed.
pub fn builtin_specs(max_order: u64) -> Vec<GroupSpec> {
    let mut specs: Vec<GroupSpec> = Vec::new();
    for n in 1..=max_order {
        specs.push(GroupSpec::Cyclic(n));
        for divisors in abelian_types(n) {
            specs.push(GroupSpec::Abelian(divisors));
        }
    }
    for n in 3..=max_order / 2 {
        specs.push(GroupSpec::Dihedral(n));
    }
    for n in 2..=max_order / 4 {
        specs.push(GroupSpec::Dicyclic(n));
    }
    for n in 3..=6u64 {
        if factorial(n).unwrap() <= max_order {
            specs.push(GroupSpec::Sym(n));
        }
        if n >= 4 && factorial(n).unwrap() / 2 <= max_order {
            specs.push(GroupSpec::Alt(n));
        }
    }
    for q in [2u64, 3, 4, 5, 7] {
        for spec in [GroupSpec::Gl2(q), GroupSpec::Sl2(q), GroupSpec::Psl2(q)] {
            if spec.predicted_order().unwrap() <= max_order {
                specs.push(spec);
            }
        }
    }
    // Nonabelian metacyclic actions only (r ≥ 2); r = 1 would repeat
    // the abelian family under another name.
    for m in 3..=max_order / 2 {
        for k in 2..=max_order / m {
            for r in 2..m {
                if gcd(r, m) == 1 && modpow(r, k, m) == 1 {
                    specs.push(GroupSpec::Metacyclic { m, k, r });
                }
            }
        }
    }
    // Equality-family products: coprime cyclic companions of Alt(5).
    for m in 2..=max_order / 60 {
        if gcd(30, m) == 1 {
            specs.push(GroupSpec::Product(
                Box::new(GroupSpec::Alt(5)),
                Box::new(GroupSpec::Cyclic(m)),
            ));
        }
    }

    let mut keyed: Vec<(u64, String, GroupSpec)> = specs
        .into_iter()
        .map(|s| (s.predicted_order().unwrap(), s.to_string(), s))
        .collect();
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    keyed.dedup_by(|a, b| a.1 == b.1);
    keyed.into_iter().map(|(_, _, s)| s).collect()
}

/// Builds every builtin family member of order ≤ max_order. The list is
/// bit-identical across runs and worker counts: specs are generated and
/// sorted deterministically, then built in parallel position-preserving.
pub fn builtin_corpus(max_order: u64, cap: usize) -> Result<Vec<CorpusEntry>> {
    if max_order > cap as u64 {
        return Err(Error::CapExceeded {
            needed: max_order,
            cap: cap as u64,
        });
    }
    builtin_specs(max_order)
        .into_par_iter()
        .map(|spec| {
            let group = build_group(&spec, cap)?;
            Ok(CorpusEntry {
                label: spec.to_string(),
                order: group.order(),
                spec: Some(spec),
                group,
                source: Source::Builtin,
            })
        })
        .collect()
}

// ---------------------------------------------------------------------
// File ingestion

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum FileRecord {
    Perm {
        name: String,
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Table {
        name: String,
        order: usize,
        table: Vec<Vec<usize>>,
    },
}

/// Loads a JSON array of group records. Permutation records give
/// generator image arrays and are closed; table records give full rows
/// and must pass full validation including associativity.
pub fn load_group_file(path: &Path, cap: usize) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path)?;
    let records: Vec<FileRecord> = serde_json::from_str(&text)
        .map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    records
        .into_iter()
        .map(|record| {
            let (name, group) = match record {
                FileRecord::Perm {
                    name,
                    degree,
                    generators,
                } => {
                    if generators.is_empty() {
                        return Err(Error::Format(format!(
                            "record `{name}` has no generators"
                        )));
                    }
                    let gens: Vec<Permutation> = generators
                        .into_iter()
                        .map(|images| {
                            if images.len() != degree {
                                return Err(Error::Validation(format!(
                                    "record `{name}`: generator length {} differs from degree {degree}",
                                    images.len()
                                )));
                            }
                            Permutation::from_images(images)
                        })
                        .collect::<Result<_>>()?;
                    (name, close_generators(&gens, cap)?)
                }
                FileRecord::Table { name, order, table } => {
                    if table.len() != order {
                        return Err(Error::Validation(format!(
                            "record `{name}`: {} rows for stated order {order}",
                            table.len()
                        )));
                    }
                    let group = EnumeratedGroup::from_rows(table, None, None)?;
                    group.validate()?;
                    (name, group)
                }
            };
            Ok(CorpusEntry {
                label: name.clone(),
                spec: None,
                order: group.order(),
                group: group.with_name(name),
                source: Source::File,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_CAP;
    use crate::psi::psi_group;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    fn build(text: &str) -> EnumeratedGroup {
        build_group(&parse_spec(text).unwrap(), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_spec("C 60").unwrap(), GroupSpec::Cyclic(60));
        assert_eq!(
            parse_spec("prod(A 5, C 7)").unwrap(),
            GroupSpec::Product(
                Box::new(GroupSpec::Alt(5)),
                Box::new(GroupSpec::Cyclic(7))
            )
        );
        assert_eq!(
            parse_spec("mc 7 3 2").unwrap(),
            GroupSpec::Metacyclic { m: 7, k: 3, r: 2 }
        );
        assert_eq!(parse_spec("pSl2 7").unwrap(), GroupSpec::Psl2(7));
        assert_eq!(parse_spec("ab 2 4").unwrap(), GroupSpec::Abelian(vec![2, 4]));
    }

    #[test]
    fn parse_rejections() {
        assert!(matches!(parse_spec("C"), Err(Error::Arity { .. })));
        assert!(matches!(parse_spec("ab"), Err(Error::Arity { .. })));
        assert!(matches!(parse_spec("mc 7 3"), Err(Error::Arity { .. })));
        assert!(matches!(parse_spec("zzz 4"), Err(Error::Parse { .. })));
        assert!(matches!(parse_spec("c 4 5"), Err(Error::Parse { .. })));
        assert!(matches!(parse_spec("prod(c 2 c 3)"), Err(Error::Parse { .. })));
        // 3³ = 27 ≡ 6 (mod 7): action does not close.
        assert!(matches!(parse_spec("mc 7 3 3"), Err(Error::Param(_))));
        assert!(matches!(parse_spec("mc 4 2 2"), Err(Error::Param(_))));
        assert!(matches!(parse_spec("c 0"), Err(Error::Param(_))));
        assert!(matches!(parse_spec("gl2 6"), Err(Error::Param(_))));
    }

    #[test]
    fn family_orders_match_formulas() {
        for (text, order) in [
            ("c 12", 12),
            ("ab 2 2", 4),
            ("d 5", 10),
            ("dic 2", 8),
            ("s 4", 24),
            ("a 5", 60),
            ("gl2 3", 48),
            ("sl2 3", 24),
            ("psl2 3", 12),
            ("mc 7 3 2", 21),
            ("prod(c 2, a 5)", 120),
        ] {
            assert_eq!(build(text).order(), order, "order of {text}");
        }
    }

    #[test]
    fn named_witness_psi_values() {
        assert_eq!(psi_group(&build("psl2 7")), BigUint::from(715u32));
        assert_eq!(psi_group(&build("gl2 4")), BigUint::from(1237u32));
        assert_eq!(psi_group(&build("prod(c 2, a 5)")), BigUint::from(603u32));
    }

    #[test]
    fn quaternion_group_is_dicyclic_two() {
        let q8 = build("dic 2");
        assert_eq!(q8.order(), 8);
        // 1 + 2 + 6·4: one involution, six elements of order 4.
        assert_eq!(psi_group(&q8), BigUint::from(27u32));
    }

    #[test]
    fn metacyclic_is_nonabelian_when_action_is() {
        assert!(!build("mc 7 3 2").is_abelian());
        assert!(build("ab 2 4").is_abelian());
    }

    #[test]
    fn dihedral_matches_metacyclic_presentation() {
        let d5 = build("d 5");
        let mut orders = d5.element_orders();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 2, 2, 2, 5, 5, 5, 5]);
    }

    #[test]
    fn projective_quotient_collapses_center() {
        let psl25 = build("psl2 5");
        assert_eq!(psl25.order(), 60);
        assert_eq!(psi_group(&psl25), BigUint::from(211u32));
        let psl24 = build("psl2 4");
        assert_eq!(psl24.order(), 60);
        assert_eq!(psi_group(&psl24), BigUint::from(211u32));
    }

    #[test]
    fn corpus_of_one_is_trivial() {
        let corpus = builtin_corpus(1, DEFAULT_CAP).unwrap();
        assert_eq!(corpus.len(), 1);
        assert_eq!(corpus[0].label, "c 1");
        assert_eq!(corpus[0].order, 1);
    }

    #[test]
    fn corpus_includes_expected_members() {
        let labels: Vec<String> = builtin_specs(60).iter().map(|s| s.to_string()).collect();
        assert!(labels.contains(&"a 5".to_string()));
        assert!(labels.contains(&"c 60".to_string()));
        assert!(labels.contains(&"dic 2".to_string()));
        assert!(!labels.contains(&"s 5".to_string()));

        let labels420: Vec<String> = builtin_specs(420).iter().map(|s| s.to_string()).collect();
        assert!(labels420.contains(&"prod(a 5, c 7)".to_string()));
    }

    #[test]
    fn corpus_is_sorted_and_duplicate_free() {
        let specs = builtin_specs(120);
        let keys: Vec<(u64, String)> = specs
            .iter()
            .map(|s| (s.predicted_order().unwrap(), s.to_string()))
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn corpus_is_deterministic_across_runs() {
        let a = builtin_corpus(72, DEFAULT_CAP).unwrap();
        let b = builtin_corpus(72, DEFAULT_CAP).unwrap();
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.label, y.label);
            assert_eq!(x.order, y.order);
            assert_eq!(
                x.group.element_orders(),
                y.group.element_orders()
            );
        }
    }

    #[test]
    fn corpus_respects_max_order() {
        let corpus = builtin_corpus(48, DEFAULT_CAP).unwrap();
        assert!(corpus.len() >= 48);
        assert!(corpus.iter().all(|e| e.order <= 48));
        assert!(corpus
            .iter()
            .all(|e| e.order as u64 == e.spec.as_ref().unwrap().predicted_order().unwrap()));
    }

    #[test]
    fn abelian_types_per_order() {
        // Order 8: C8 (skipped), C2×C4, C2×C2×C2.
        let types = abelian_types(8);
        assert_eq!(types, vec![vec![2, 4], vec![2, 2, 2]]);
        // Order 36 has (2 partitions)² − 1 = 3 non-cyclic types.
        assert_eq!(abelian_types(36).len(), 3);
        assert!(abelian_types(30).is_empty()); // squarefree: only C30
    }

    #[test]
    fn load_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("groups.json");
        std::fs::write(
            &path,
            r#"[
              {"kind": "perm", "name": "alt4", "degree": 4,
               "generators": [[1, 2, 0, 3], [1, 0, 3, 2]]},
              {"kind": "table", "name": "trivial", "order": 1, "table": [[0]]}
            ]"#,
        )
        .unwrap();
        let entries = load_group_file(&path, DEFAULT_CAP).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].label, "alt4");
        assert_eq!(entries[0].order, 12);
        assert_eq!(entries[1].order, 1);
        assert!(entries.iter().all(|e| e.source == Source::File));
    }

    #[test]
    fn load_file_rejects_bad_records() {
        let dir = tempfile::tempdir().unwrap();
        let bad_bijection = dir.path().join("bad1.json");
        std::fs::write(
            &bad_bijection,
            r#"[{"kind": "perm", "name": "x", "degree": 3, "generators": [[0, 0, 1]]}]"#,
        )
        .unwrap();
        assert!(matches!(
            load_group_file(&bad_bijection, DEFAULT_CAP),
            Err(Error::Validation(_))
        ));

        let bad_json = dir.path().join("bad2.json");
        std::fs::write(&bad_json, "not json").unwrap();
        assert!(matches!(
            load_group_file(&bad_json, DEFAULT_CAP),
            Err(Error::Format(_))
        ));

        let bad_kind = dir.path().join("bad3.json");
        std::fs::write(
            &bad_kind,
            r#"[{"kind": "weird", "name": "x", "order": 1, "table": [[0]]}]"#,
        )
        .unwrap();
        assert!(matches!(
            load_group_file(&bad_kind, DEFAULT_CAP),
            Err(Error::Format(_))
        ));
    }

    fn arbitrary_spec() -> impl Strategy<Value = GroupSpec> {
        let mc = (3u64..40, 1u64..40)
            .prop_filter_map("coprime action", |(m, r0)| {
                let r = 1 + r0 % (m - 1);
                if gcd(r, m) != 1 {
                    return None;
                }
                let mut k = 1;
                let mut acc = r % m;
                while acc != 1 {
                    acc = acc * r % m;
                    k += 1;
                }
                Some(GroupSpec::Metacyclic { m, k, r })
            });
        let q = prop_oneof![Just(2u64), Just(3), Just(4), Just(5), Just(7)];
        let leaf = prop_oneof![
            (1u64..500).prop_map(GroupSpec::Cyclic),
            proptest::collection::vec(2u64..64, 1..4).prop_map(GroupSpec::Abelian),
            (1u64..200).prop_map(GroupSpec::Dihedral),
            (1u64..100).prop_map(GroupSpec::Dicyclic),
            (1u64..7).prop_map(GroupSpec::Sym),
            (1u64..7).prop_map(GroupSpec::Alt),
            q.clone().prop_map(GroupSpec::Gl2),
            q.clone().prop_map(GroupSpec::Sl2),
            q.prop_map(GroupSpec::Psl2),
            mc,
        ];
        leaf.prop_recursive(2, 8, 2, |inner| {
            (inner.clone(), inner)
                .prop_map(|(a, b)| GroupSpec::Product(Box::new(a), Box::new(b)))
        })
    }

    proptest! {
        #[test]
        fn canonical_form_round_trips(spec in arbitrary_spec()) {
            let printed = spec.to_string();
            let reparsed = parse_spec(&printed).unwrap();
            prop_assert_eq!(reparsed, spec);
        }
    }
}
