//! Real gamma matrices for `Spin(d-1,1)` in mostly-plus signature.
//!
//! The representation is assembled from tensor products of the real 2x2
//! matrices `1`, `σ1`, `σ3` and `ε = iσ2`, so every entry is in {-1, 0, 1}.
//! A product of such factors ("string") squares to `(-1)^{#ε}` and two
//! strings anticommute exactly when an odd number of tensor slots hold
//! distinct non-identity factors. Finding `d` mutually anticommuting strings
//! with one time-like member is a small clique search; the d=3 seed
//! `(ε, σ1, σ3)` is the n=1 instance of it.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rank_of, Rational, SparseVec};

/// Dense square integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix { n, data: rows.concat() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> IntMatrix {
        IntMatrix { n: self.n, data: self.data.iter().map(|a| a * c).collect() }
    }

    pub fn transpose(&self) -> IntMatrix {
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.data[j * n + i] = self.data[i * n + j];
            }
        }
        out
    }

    pub fn kron(&self, other: &IntMatrix) -> IntMatrix {
        let (a, b) = (self.n, other.n);
        let n = a * b;
        let mut out = IntMatrix::zeros(n);
        for i in 0..a {
            for j in 0..a {
                let x = self.data[i * a + j];
                if x == 0 {
                    continue;
                }
                for k in 0..b {
                    for l in 0..b {
                        out.data[(i * b + k) * n + j * b + l] = x * other.data[k * b + l];
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Upper triangle (including diagonal) as a sparse vector.
    pub fn upper_triangle(&self) -> SparseVec {
        let n = self.n;
        let mut pairs = Vec::new();
        let mut idx = 0;
        for i in 0..n {
            for j in i..n {
                let v = self.data[i * n + j];
                if v != 0 {
                    pairs.push((idx, Rational::from_int(v)));
                }
                idx += 1;
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn to_sparse(&self) -> SparseVec {
        SparseVec::from_ints(&self.data)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.data.chunks(self.n) {
            writeln!(f, "{row:?}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Antisymmetric,
}

impl Symmetry {
    pub fn sign(self) -> i64 {
        match self {
            Symmetry::Symmetric => 1,
            Symmetry::Antisymmetric => -1,
        }
    }
}

/// Real Majorana representation data.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GammaRep {
    pub d: usize,
    /// Real spinor dimension.
    pub n: usize,
    /// Diagonal of η: -1 for a=0, +1 otherwise.
    pub eta: Vec<i64>,
    pub gamma: Vec<IntMatrix>,
    pub charge_conjugation: IntMatrix,
    /// Symmetry of `C Γ_{a1..ak}` for each k.
    pub symmetry_table: BTreeMap<usize, Symmetry>,
}

/// Dimensions for which [`build_majorana_rep`] is available, with the
/// number of tensor slots of the minimal real module.
const SUPPORTED: &[(usize, u32)] = &[(3, 1), (4, 2), (9, 5), (10, 5), (11, 5)];

fn obstruction(d: usize) -> String {
    // Cl_{d-1,1} with d-1 generators squaring to +1 and one to -1.
    match (d as i64 - 2).rem_euclid(8) {
        0..=2 => "real Clifford module exists but this dimension is outside the supported set {3,4,9,10,11}".into(),
        3 | 7 => format!("Cl({},1) is a complex matrix algebra: no real Majorana module in mostly-plus signature at minimal scope", d - 1),
        _ => format!("Cl({},1) is quaternionic: only symplectic Majorana spinors exist", d.saturating_sub(1)),
    }
}

/// Builds real gamma matrices and a charge conjugation matrix.
pub fn build_majorana_rep(d: usize) -> Result<GammaRep> {
    let Some(&(_, slots)) = SUPPORTED.iter().find(|(dd, _)| *dd == d) else {
        return Err(Error::UnsupportedDimension { d, reason: obstruction(d) });
    };
    let strings = find_anticommuting_strings(d, slots).ok_or_else(|| Error::UnsupportedDimension {
        d,
        reason: format!("no real anticommuting set found in {slots} tensor slots"),
    })?;
    let gamma: Vec<IntMatrix> = strings.iter().map(|s| string_matrix(s)).collect();
    let n = 1usize << slots;
    let mut eta = vec![1i64; d];
    eta[0] = -1;
    let c = find_charge_conjugation(&gamma).ok_or_else(|| Error::UnsupportedDimension {
        d,
        reason: "no Clifford monomial C with CΓ_a symmetric".into(),
    })?;
    let mut rep = GammaRep {
        d,
        n,
        eta,
        gamma,
        charge_conjugation: c,
        symmetry_table: BTreeMap::new(),
    };
    for k in 0..=d {
        let sym = rep.compute_symmetry(k).ok_or_else(|| Error::UnsupportedDimension {
            d,
            reason: format!("C Γ^({k}) has no uniform transpose symmetry"),
        })?;
        rep.symmetry_table.insert(k, sym);
    }
    Ok(rep)
}

// Factor codes: 0 = 1, 1 = σ1, 2 = σ3, 3 = ε.
fn string_matrix(s: &[u8]) -> IntMatrix {
    let factor = |c: u8| match c {
        0 => IntMatrix::identity(2),
        1 => IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]),
        2 => IntMatrix::from_rows(&[vec![1, 0], vec![0, -1]]),
        _ => IntMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]),
    };
    s.iter()
        .fold(IntMatrix::identity(1), |acc, &c| acc.kron(&factor(c)))
}

fn anticommute(a: &[u8], b: &[u8]) -> bool {
    a.iter()
        .zip(b)
        .filter(|(x, y)| **x != 0 && **y != 0 && x != y)
        .count()
        % 2
        == 1
}

fn squares_to_minus_one(s: &[u8]) -> bool {
    s.iter().filter(|&&c| c == 3).count() % 2 == 1
}

fn find_anticommuting_strings(d: usize, slots: u32) -> Option<Vec<Vec<u8>>> {
    let all: Vec<Vec<u8>> = (1..4usize.pow(slots))
        .map(|mut code| {
            let mut s = vec![0u8; slots as usize];
            for slot in (0..slots as usize).rev() {
                s[slot] = (code % 4) as u8;
                code /= 4;
            }
            s
        })
        .collect();
    for t in all.iter().filter(|s| squares_to_minus_one(s)) {
        let space: Vec<&Vec<u8>> = all
            .iter()
            .filter(|s| !squares_to_minus_one(s) && anticommute(s, t))
            .collect();
        let mut chosen: Vec<&Vec<u8>> = Vec::new();
        if clique(&space, 0, d - 1, &mut chosen) {
            let mut out = vec![t.clone()];
            out.extend(chosen.into_iter().cloned());
            return Some(out);
        }
    }
    None
}

fn clique<'a>(space: &[&'a Vec<u8>], start: usize, need: usize, chosen: &mut Vec<&'a Vec<u8>>) -> bool {
    if chosen.len() == need {
        return true;
    }
    for i in start..space.len() {
        if space.len() - i < need - chosen.len() {
            return false;
        }
        let cand = space[i];
        if chosen.iter().all(|c| anticommute(c, cand)) {
            chosen.push(cand);
            if clique(space, i + 1, need, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// Ordered product of the listed gamma matrices.
fn product(gamma: &[IntMatrix], indices: &[usize]) -> IntMatrix {
    let n = gamma[0].dim();
    indices
        .iter()
        .fold(IntMatrix::identity(n), |acc, &a| acc.mul(&gamma[a]))
}

fn subsets_of_size(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..d {
            cur.push(a);
            rec(a + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, k, &mut Vec::new(), &mut out);
    out
}

fn find_charge_conjugation(gamma: &[IntMatrix]) -> Option<IntMatrix> {
    let d = gamma.len();
    for k in 0..=d {
        for set in subsets_of_size(d, k) {
            let c = product(gamma, &set);
            if gamma.iter().all(|g| {
                let m = c.mul(g);
                m == m.transpose()
            }) {
                return Some(c);
            }
        }
    }
    None
}

impl GammaRep {
    /// Normalized antisymmetrized product `Γ_{a1…ak}`.
    ///
    /// For distinct indices the factors anticommute, so every term of the
    /// antisymmetrization equals the ordered product and the `1/k!` cancels.
    pub fn gamma_antisym(&self, indices: &[usize]) -> Result<IntMatrix> {
        for (i, &a) in indices.iter().enumerate() {
            if a >= self.d {
                return Err(Error::IndexOutOfRange { index: a, dim: self.d });
            }
            if indices[..i].contains(&a) {
                return Err(Error::RepeatedIndex(a));
            }
        }
        Ok(product(&self.gamma, indices))
    }

    /// `Γ^a = η^{ab} Γ_b`.
    pub fn gamma_upper(&self, a: usize) -> IntMatrix {
        self.gamma[a].scale(self.eta[a])
    }

    /// `C Γ_{a1…ak}`.
    pub fn c_gamma(&self, indices: &[usize]) -> Result<IntMatrix> {
        Ok(self.charge_conjugation.mul(&self.gamma_antisym(indices)?))
    }

    fn compute_symmetry(&self, k: usize) -> Option<Symmetry> {
        let mut seen = None;
        for set in subsets_of_size(self.d, k) {
            let m = self.c_gamma(&set).ok()?;
            let t = m.transpose();
            let s = if t == m {
                Symmetry::Symmetric
            } else if t == m.scale(-1) {
                Symmetry::Antisymmetric
            } else {
                return None;
            };
            match seen {
                None => seen = Some(s),
                Some(prev) if prev != s => return None,
                _ => {}
            }
        }
        seen
    }

    /// Symmetry of `C Γ^{(k)}`, recomputed over every index set.
    pub fn bilinear_symmetry(&self, k: usize) -> Result<Symmetry> {
        if k > self.d {
            return Err(Error::IndexOutOfRange { index: k, dim: self.d });
        }
        self.compute_symmetry(k).ok_or_else(|| {
            Error::Model(format!("C Γ^({k}) is not uniformly (anti)symmetric"))
        })
    }

    pub fn sym2_decomposition(&self, ranks: &[usize]) -> Result<Sym2Report> {
        let mut seen = std::collections::BTreeSet::new();
        for &k in ranks {
            if !seen.insert(k) {
                return Err(Error::Model(format!("rank {k} listed twice")));
            }
            if k > self.d {
                return Err(Error::IndexOutOfRange { index: k, dim: self.d });
            }
        }
        let mut per_rank = BTreeMap::new();
        let mut vectors = Vec::new();
        let mut all_symmetric = true;
        for &k in ranks {
            let sets = subsets_of_size(self.d, k);
            per_rank.insert(k, sets.len());
            for set in sets {
                let m = self.c_gamma(&set)?;
                all_symmetric &= m == m.transpose();
                vectors.push(m.to_sparse());
            }
        }
        let total: usize = per_rank.values().sum();
        let sym_dim = self.n * (self.n + 1) / 2;
        let rank = rank_of(&vectors);
        Ok(Sym2Report {
            d: self.d,
            n: self.n,
            per_rank,
            total,
            rank,
            sym2_dimension: sym_dim,
            spans_sym2: all_symmetric && rank == total && total == sym_dim && total > 0,
        })
    }

    /// Chirality operator `Γ_0 Γ_1 ⋯ Γ_{d-1}` (even d).
    pub fn chirality(&self) -> Result<IntMatrix> {
        if !self.d.is_multiple_of(2) {
            return Err(Error::Model(format!("no chirality operator in odd d={}", self.d)));
        }
        let all: Vec<usize> = (0..self.d).collect();
        self.gamma_antisym(&all)
    }

    /// Integer basis of the `±1` eigenspace of the chirality operator.
    pub fn chiral_basis(&self, positive: bool) -> Result<Vec<Vec<i64>>> {
        let g = self.chirality()?;
        if g.mul(&g) != IntMatrix::identity(self.n) {
            return Err(Error::Model("chirality operator does not square to one".into()));
        }
        let shifted = g.add(&IntMatrix::identity(self.n).scale(if positive { -1 } else { 1 }));
        let m = crate::exact::SparseMatrix::from_dense_ints(&shifted.rows());
        let ker = crate::exact::kernel(&m);
        ker.iter()
            .map(|v| {
                v.to_dense(self.n)
                    .iter()
                    .map(|x| {
                        x.to_i64()
                            .ok_or_else(|| Error::Model("non-integer chiral basis vector".into()))
                    })
                    .collect()
            })
            .collect()
    }

    /// Checks `Γ_a Γ_b + Γ_b Γ_a = 2 η_ab`.
    pub fn clifford_relation_holds(&self) -> bool {
        let id = IntMatrix::identity(self.n);
        (0..self.d).all(|a| {
            (0..self.d).all(|b| {
                let ac = self.gamma[a].mul(&self.gamma[b]).add(&self.gamma[b].mul(&self.gamma[a]));
                let expect = if a == b { id.scale(2 * self.eta[a]) } else { IntMatrix::zeros(self.n) };
                ac == expect
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sym2Report {
    pub d: usize,
    pub n: usize,
    pub per_rank: BTreeMap<usize, usize>,
    pub total: usize,
    pub rank: usize,
    pub sym2_dimension: usize,
    pub spans_sym2: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d3_is_the_seed() {
        let rep = build_majorana_rep(3).unwrap();
        assert_eq!(rep.n, 2);
        assert!(rep.clifford_relation_holds());
        let top = rep.gamma_antisym(&[0, 1, 2]).unwrap();
        let id = IntMatrix::identity(2);
        assert!(top == id || top == id.scale(-1));
    }

    #[test]
    fn unsupported_dimensions() {
        for d in [1, 2, 5, 6, 7, 8, 12] {
            assert!(matches!(
                build_majorana_rep(d),
                Err(Error::UnsupportedDimension { .. })
            ));
        }
    }

    #[test]
    fn repeated_index_is_rejected() {
        let rep = build_majorana_rep(4).unwrap();
        assert!(matches!(rep.gamma_antisym(&[1, 1]), Err(Error::RepeatedIndex(1))));
        assert!(rep.gamma_antisym(&[4]).is_err());
    }

    #[test]
    fn two_index_product_is_the_commutator() {
        let rep = build_majorana_rep(4).unwrap();
        let g = &rep.gamma;
        let comm = g[1].mul(&g[2]).add(&g[2].mul(&g[1]).scale(-1));
        assert_eq!(rep.gamma_antisym(&[1, 2]).unwrap().scale(2), comm);
        assert_eq!(rep.gamma_antisym(&[3]).unwrap(), g[3]);
    }

    #[test]
    fn empty_rank_list() {
        let rep = build_majorana_rep(3).unwrap();
        let r = rep.sym2_decomposition(&[]).unwrap();
        assert_eq!(r.total, 0);
        assert!(!r.spans_sym2);
        let r = rep.sym2_decomposition(&[1]).unwrap();
        assert_eq!((r.total, r.sym2_dimension), (3, 3));
        assert!(r.spans_sym2);
    }
}

#[cfg(test)]
mod large {
    use super::*;

    #[test]
    fn supported_reps_satisfy_clifford() {
        for (d, n) in [(3, 2), (4, 4), (9, 32), (10, 32), (11, 32)] {
            let rep = build_majorana_rep(d).unwrap();
            assert_eq!(rep.n, n);
            assert!(rep.clifford_relation_holds(), "d={d}");
            assert_eq!(rep.symmetry_table[&1], Symmetry::Symmetric, "d={d}");
        }
    }
}
