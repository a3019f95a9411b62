use std::collections::BTreeMap;

use super::element::FormElement;
use super::generator::Parity;
use crate::exact::Rational;

/// A derivation of degree -1, determined by its values on the degree-1
/// generators. Values are functions (degree-0 elements).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    parity: Parity,
    values: BTreeMap<usize, FormElement>,
}

impl VectorField {
    pub fn zero(parity: Parity) -> Self {
        VectorField { parity, values: BTreeMap::new() }
    }

    pub(crate) fn from_parts(parity: Parity, mut values: BTreeMap<usize, FormElement>) -> Self {
        values.retain(|_, v| !v.is_zero());
        VectorField { parity, values }
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// `ι_v` of generator `i`, if nonzero.
    pub fn value(&self, i: usize) -> Option<&FormElement> {
        self.values.get(&i)
    }

    pub fn values(&self) -> impl Iterator<Item = (usize, &FormElement)> {
        self.values.iter().map(|(i, v)| (*i, v))
    }

    /// `self += c * other`. The zero field adopts the parity of `other`.
    pub fn axpy(&mut self, c: &Rational, other: &VectorField) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        if self.is_zero() {
            self.parity = other.parity;
        }
        assert_eq!(self.parity, other.parity, "adding fields of different parity");
        for (i, v) in &other.values {
            let slot = self.values.entry(*i).or_insert_with(|| FormElement::zero(0));
            slot.axpy(c, v);
        }
        self.values.retain(|_, v| !v.is_zero());
    }

    pub fn scaled(&self, c: &Rational) -> VectorField {
        let mut out = VectorField::zero(self.parity);
        out.axpy(c, self);
        out.parity = self.parity;
        out
    }

    pub fn neg(&self) -> VectorField {
        self.scaled(&-Rational::one())
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        let mut out = self.clone();
        out.axpy(&Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        let mut out = self.clone();
        out.axpy(&-Rational::one(), other);
        out
    }
}
