//! Exact elimination: echelon forms, kernels, particular solutions, quotients.
//!
//! Every routine bottoms out in [`Echelon`], an incremental row-echelon
//! builder. Reduced row echelon form is unique, so kernels and solutions are
//! independent of the order rows are fed in.

use std::collections::BTreeMap;

use super::{Rational, SparseMatrix, SparseVec};
use crate::error::{Error, Result};

/// Incremental echelon basis of a row space, optionally tracking how each
/// pivot row is combined from the inserted vectors.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    /// pivot column -> (row with leading 1 at that column, combination of inputs)
    pivots: BTreeMap<usize, (SparseVec, SparseVec)>,
    inserted: usize,
    track: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn tracking() -> Self {
        Echelon { track: true, ..Echelon::default() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Reduces `v` against the current pivots. Returns the remainder and,
    /// when tracking, the combination of inputs that was subtracted.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut rem = v.clone();
        let mut comb = SparseVec::new();
        let mut pos = 0usize;
        loop {
            let next = rem
                .iter()
                .map(|(c, _)| *c)
                .skip_while(|c| *c < pos)
                .find(|c| self.pivots.contains_key(c));
            let Some(c) = next else { break };
            let coef = rem.get(c);
            let (row, rc) = &self.pivots[&c];
            rem.axpy(&-&coef, row);
            if self.track {
                comb.axpy(&coef, rc);
            }
            pos = c + 1;
        }
        (rem, comb)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Inserts `v`; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let (mut rem, comb) = self.reduce(v);
        let Some((lead, lv)) = rem.leading() else { return false };
        let inv = lv.recip();
        rem.scale(&inv);
        let mut track = SparseVec::new();
        if self.track {
            track = SparseVec::unit(idx);
            track.axpy(&-Rational::one(), &comb);
            track.scale(&inv);
        }
        self.pivots.insert(lead, (rem, track));
        true
    }

    /// Fully reduced pivot rows, ordered by pivot column.
    pub fn rref_rows(&self) -> Vec<(usize, SparseVec)> {
        let cols: Vec<usize> = self.pivots.keys().copied().collect();
        let mut rows: BTreeMap<usize, SparseVec> =
            self.pivots.iter().map(|(c, (r, _))| (*c, r.clone())).collect();
        for &c in cols.iter().rev() {
            let pr = rows[&c].clone();
            for (_, row) in rows.range_mut(..c) {
                let coef = row.get(c);
                if !coef.is_zero() {
                    row.axpy(&-&coef, &pr);
                }
            }
        }
        rows.into_iter().collect()
    }

    /// Coordinates of `v` in terms of the inserted vectors (only meaningful
    /// when the inserted vectors were independent), or `None` if `v` is not
    /// in the span.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "coordinates require a tracking echelon");
        let (rem, comb) = self.reduce(v);
        rem.is_zero().then_some(comb)
    }
}

/// Row-reduced echelon form of `m` as (pivot column, row) pairs.
pub fn rref(m: &SparseMatrix) -> Vec<(usize, SparseVec)> {
    let mut e = Echelon::new();
    for row in m.rows() {
        e.insert(row);
    }
    e.rref_rows()
}

pub fn rank(m: &SparseMatrix) -> usize {
    let mut e = Echelon::new();
    for row in m.rows() {
        e.insert(row);
    }
    e.rank()
}

pub fn rank_of(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of the null space, one vector per free column in increasing order;
/// each has a 1 at its free column and 0 at every other free column.
pub fn kernel(m: &SparseMatrix) -> Vec<SparseVec> {
    let rows = rref(m);
    let pivot_cols: Vec<usize> = rows.iter().map(|(c, _)| *c).collect();
    let mut is_pivot = vec![false; m.ncols()];
    for &c in &pivot_cols {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..m.ncols()).filter(|c| !is_pivot[*c]) {
        let mut pairs = vec![(free, Rational::one())];
        for (pc, row) in &rows {
            let v = row.get(free);
            if !v.is_zero() {
                pairs.push((*pc, -v));
            }
        }
        out.push(SparseVec::from_pairs(pairs));
    }
    out
}

/// A particular solution of `m x = b` with free variables set to zero, or
/// `None` when the system is inconsistent.
pub fn solve(m: &SparseMatrix, b: &SparseVec) -> Result<Option<SparseVec>> {
    if b.max_index().is_some_and(|i| i >= m.nrows()) {
        return Err(Error::Dimension(format!(
            "right-hand side has index beyond {} rows",
            m.nrows()
        )));
    }
    let n = m.ncols();
    let mut e = Echelon::new();
    for (r, row) in m.rows().iter().enumerate() {
        let mut aug = row.clone();
        let br = b.get(r);
        if !br.is_zero() {
            aug.axpy(&br, &SparseVec::unit(n));
        }
        e.insert(&aug);
    }
    let rows = e.rref_rows();
    if rows.iter().any(|(c, _)| *c == n) {
        return Ok(None);
    }
    Ok(Some(SparseVec::from_pairs(
        rows.iter().map(|(c, row)| (*c, row.get(n))),
    )))
}

/// Coset representatives for `span(space) / span(subspace)`.
///
/// Representatives are the `space` vectors (in order) that enlarge the span,
/// reduced modulo the subspace's echelon basis.
pub fn quotient_basis(space: &[SparseVec], subspace: &[SparseVec]) -> Result<Vec<SparseVec>> {
    let mut amb = Echelon::new();
    for v in space {
        amb.insert(v);
    }
    if subspace.iter().any(|w| !amb.contains(w)) {
        return Err(Error::NotASubspace);
    }
    let mut sub = Echelon::new();
    for w in subspace {
        sub.insert(w);
    }
    let mut grown = sub.clone();
    let mut reps = Vec::new();
    for v in space {
        if grown.insert(v) {
            reps.push(sub.reduce(v).0);
        }
    }
    Ok(reps)
}

/// An ordered, linearly independent basis with fast coordinate lookup.
#[derive(Clone, Debug)]
pub struct SpanBasis {
    vectors: Vec<SparseVec>,
    echelon: Echelon,
}

impl SpanBasis {
    /// Keeps the vectors that enlarge the span, in order.
    pub fn new(vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut probe = Echelon::new();
        let mut kept = Vec::new();
        for v in vectors {
            if probe.insert(&v) {
                kept.push(v);
            }
        }
        // rebuild so tracking indices refer to kept vectors only
        let mut echelon = Echelon::tracking();
        for v in &kept {
            echelon.insert(v);
        }
        SpanBasis { vectors: kept, echelon }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.echelon.contains(v)
    }

    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        self.echelon.coordinates(v)
    }
}
