use std::collections::BTreeMap;
use std::sync::Mutex;

use crate::exact::SparseVec;
use crate::forms::{FormElement, Monomial, VectorField};

use super::{HamiltonianPair, Observable};

const FORM_SLOT: usize = usize::MAX;

/// Coordinates of fields, forms and pairs in one growing monomial index.
///
/// Indices are handed out on first sight, so only index-independent results
/// (ranks, membership, coordinates relative to a basis) should be read off.
#[derive(Debug, Default)]
pub(crate) struct Ambient {
    index: Mutex<BTreeMap<(usize, Monomial), usize>>,
}

impl Ambient {
    pub fn new() -> Self {
        Ambient::default()
    }

    fn slot(&self, slot: usize, m: &Monomial) -> usize {
        let mut map = self.index.lock().expect("ambient index poisoned");
        let next = map.len();
        *map.entry((slot, m.clone())).or_insert(next)
    }

    fn push_form(&self, slot: usize, a: &FormElement, out: &mut Vec<(usize, crate::exact::Rational)>) {
        for (m, c) in a.terms() {
            out.push((self.slot(slot, m), c.clone()));
        }
    }

    pub fn field(&self, v: &VectorField) -> SparseVec {
        let mut out = Vec::new();
        for (i, val) in v.values() {
            self.push_form(i, val, &mut out);
        }
        SparseVec::from_pairs(out)
    }

    pub fn form(&self, a: &FormElement) -> SparseVec {
        let mut out = Vec::new();
        self.push_form(FORM_SLOT, a, &mut out);
        SparseVec::from_pairs(out)
    }

    pub fn pair(&self, p: &HamiltonianPair) -> SparseVec {
        self.field(&p.v).add(&self.form(&p.j))
    }

    pub fn observable(&self, x: &Observable) -> SparseVec {
        self.field(x.field()).add(&self.form(x.form()))
    }
}
