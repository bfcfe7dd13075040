//! Permutations in functional form: `images[k]` is the image of point `k`.
//!
//! Cycle notation is 0-based throughout, so `(0 1 2)` maps 0→1, 1→2, 2→0.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from its image array, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &img in &images {
            if img >= d || seen[img] {
                return Err(Error::Validation(format!(
                    "images array {images:?} is not a bijection on 0..{d}"
                )));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint-cycle notation such as `(0 1 2)(3 4)`. Points not
    /// mentioned are fixed. The empty string or `()` is the identity.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let open = rest.find('(').ok_or_else(|| Error::Parse {
                pos: text.len() - rest.len(),
                msg: "expected `(`".into(),
            })?;
            if !rest[..open].trim().is_empty() {
                return Err(Error::Parse {
                    pos: text.len() - rest.len(),
                    msg: "unexpected text before cycle".into(),
                });
            }
            let close = rest.find(')').ok_or_else(|| Error::Parse {
                pos: text.len() - rest.len() + open,
                msg: "unclosed cycle".into(),
            })?;
            let body = &rest[open + 1..close];
            let mut points = Vec::new();
            for token in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if token.is_empty() {
                    continue;
                }
                let p: usize = token.parse().map_err(|_| Error::Parse {
                    pos: text.len() - rest.len(),
                    msg: format!("bad point `{token}`"),
                })?;
                if p >= degree {
                    return Err(Error::Param(format!(
                        "point {p} out of range for degree {degree}"
                    )));
                }
                if moved[p] {
                    return Err(Error::Param(format!("point {p} appears twice")));
                }
                moved[p] = true;
                points.push(p);
            }
            for (k, &p) in points.iter().enumerate() {
                images[p] = points[(k + 1) % points.len()];
            }
            rest = rest[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    /// `self` followed by `other`: `(self * other)(k) = other(self(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&k| other.images[k]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (k, &img) in self.images.iter().enumerate() {
            images[img] = k;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &img)| k == img)
    }

    /// True when the permutation is a product of an even number of
    /// transpositions, i.e. every cycle has odd length.
    pub fn is_even(&self) -> bool {
        let mut transpositions = 0;
        for cycle in self.cycles() {
            transpositions += cycle.len() - 1;
        }
        transpositions % 2 == 0
    }

    /// Nontrivial cycles, each starting from its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.images[p];
            }
            cycles.push(cycle);
        }
        cycles
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}
