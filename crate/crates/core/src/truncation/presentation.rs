use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{Rational, SparseVec};
use crate::forms::Parity;

/// A finite-dimensional Lie superalgebra over ℚ by structure constants.
///
/// Brackets are stored for `a ≤ b`; `[b, a] = −(−1)^{σ_a σ_b} [a, b]`.
/// Construction checks graded antisymmetry and the super Jacobi identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraPresentation {
    labels: Vec<String>,
    parities: Vec<Parity>,
    brackets: BTreeMap<(usize, usize), SparseVec>,
}

fn odd_pair(p: &[Parity], a: usize, b: usize) -> bool {
    p[a].is_odd() && p[b].is_odd()
}

impl LieAlgebraPresentation {
    pub fn new(
        labels: Vec<String>,
        parities: Vec<Parity>,
        entries: impl IntoIterator<Item = (usize, usize, SparseVec)>,
    ) -> Result<Self> {
        let n = labels.len();
        if parities.len() != n {
            return Err(Error::Dimension(format!("{} labels, {} parities", n, parities.len())));
        }
        let mut brackets: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (a, b, v) in entries {
            if a >= n || b >= n || v.max_index().is_some_and(|i| i >= n) {
                return Err(Error::Dimension(format!("bracket entry ({a},{b}) outside dimension {n}")));
            }
            if v.is_zero() {
                continue;
            }
            if v.iter().any(|(k, _)| parities[*k] != parities[a] + parities[b]) {
                return Err(Error::Model(format!("[{}, {}] has the wrong parity", labels[a], labels[b])));
            }
            let (key, val) = if a <= b {
                ((a, b), v)
            } else {
                let s = if odd_pair(&parities, a, b) { Rational::one() } else { -Rational::one() };
                ((b, a), v.scaled(&s))
            };
            if key.0 == key.1 && !parities[key.0].is_odd() {
                return Err(Error::Model(format!("[{0}, {0}] ≠ 0 for an even element", labels[key.0])));
            }
            if let Some(old) = brackets.get(&key) {
                if *old != val {
                    return Err(Error::Model(format!(
                        "inconsistent entries for [{}, {}]",
                        labels[key.0], labels[key.1]
                    )));
                }
            }
            brackets.insert(key, val);
        }
        let out = LieAlgebraPresentation { labels, parities, brackets };
        if let Some((a, b, c, _)) = out.jacobi_violation() {
            return Err(Error::Model(format!(
                "Jacobi identity fails on ({}, {}, {})",
                out.labels[a], out.labels[b], out.labels[c]
            )));
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    /// Nonzero structure constants `[a, b]` for `a ≤ b`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &SparseVec)> {
        self.brackets.iter().map(|((a, b), v)| (*a, *b, v))
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> SparseVec {
        if a <= b {
            return self.brackets.get(&(a, b)).cloned().unwrap_or_default();
        }
        match self.brackets.get(&(b, a)) {
            None => SparseVec::new(),
            Some(v) if odd_pair(&self.parities, a, b) => v.clone(),
            Some(v) => v.scaled(&-Rational::one()),
        }
    }

    /// Bilinear extension of the bracket.
    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (a, xa) in x.iter() {
            for (b, yb) in y.iter() {
                let v = self.bracket_basis(*a, *b);
                if !v.is_zero() {
                    out.axpy(&(xa * yb), &v);
                }
            }
        }
        out
    }

    /// True if `[e_i, e_j] = 0` for every basis element `e_j`.
    pub fn is_central(&self, i: usize) -> bool {
        !self.brackets.keys().any(|(a, b)| *a == i || *b == i)
    }

    pub fn central_labels(&self) -> Vec<String> {
        (0..self.dim()).filter(|i| self.is_central(*i)).map(|i| self.labels[i].clone()).collect()
    }

    /// First basis triple (sorted) violating
    /// `(−1)^{σ_aσ_c}[a,[b,c]] + (−1)^{σ_bσ_a}[b,[c,a]] + (−1)^{σ_cσ_b}[c,[a,b]] = 0`.
    ///
    /// Only triples containing a bracketing pair can fail, so the sweep runs
    /// over nonzero entries times the basis.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize, SparseVec)> {
        let mut triples = BTreeSet::new();
        for &(a, b) in self.brackets.keys() {
            for c in 0..self.dim() {
                let mut t = [a, b, c];
                t.sort_unstable();
                triples.insert(t);
            }
        }
        let unit = SparseVec::unit;
        let p = &self.parities;
        for [a, b, c] in triples {
            let term = |x: usize, y: usize, z: usize| {
                let inner = self.bracket_basis(y, z);
                let v = self.bracket(&unit(x), &inner);
                if odd_pair(p, x, z) {
                    v.scaled(&-Rational::one())
                } else {
                    v
                }
            };
            let total = term(a, b, c).add(&term(b, c, a)).add(&term(c, a, b));
            if !total.is_zero() {
                return Some((a, b, c, total));
            }
        }
        None
    }

    pub fn to_json(&self) -> PresentationJson {
        PresentationJson {
            basis: (0..self.dim())
                .map(|i| BasisJson {
                    label: self.labels[i].clone(),
                    parity: self.parities[i],
                    central: self.is_central(i),
                })
                .collect(),
            brackets: self
                .entries()
                .map(|(a, b, v)| BracketJson {
                    left: self.labels[a].clone(),
                    right: self.labels[b].clone(),
                    value: v.iter().map(|(k, c)| (self.labels[*k].clone(), c.to_string())).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PresentationJson) -> Result<Self> {
        let labels: Vec<String> = j.basis.iter().map(|b| b.label.clone()).collect();
        let index: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let find = |l: &str| index.get(l).copied().ok_or_else(|| Error::Parse(format!("unknown basis label `{l}`")));
        let mut entries = Vec::new();
        for br in &j.brackets {
            let mut pairs = Vec::new();
            for (l, c) in &br.value {
                pairs.push((find(l)?, c.parse::<Rational>()?));
            }
            entries.push((find(&br.left)?, find(&br.right)?, SparseVec::from_pairs(pairs)));
        }
        Self::new(labels, j.basis.iter().map(|b| b.parity).collect(), entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub label: String,
    pub parity: Parity,
    pub central: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketJson {
    pub left: String,
    pub right: String,
    pub value: Vec<(String, String)>,
}

/// Presentation export: basis labels with central flags and the nonzero
/// structure constants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationJson {
    pub basis: Vec<BasisJson>,
    pub brackets: Vec<BracketJson>,
}
