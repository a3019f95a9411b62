use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::exact::Rational;

/// Exponent vector over the generators of a model, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial(Box<[u8]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n].into_boxed_slice())
    }

    pub fn from_exponents(e: Vec<u8>) -> Self {
        Monomial(e.into_boxed_slice())
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut [u8] {
        &mut self.0
    }

    /// Nonzero (generator, exponent) pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, e)| (i, *e))
    }
}

/// Homogeneous element: a sparse rational combination of normalized monomials
/// of one cohomological degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormElement {
    degree: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl FormElement {
    pub fn zero(degree: usize) -> Self {
        FormElement { degree, terms: BTreeMap::new() }
    }

    /// Callers guarantee every monomial has cohomological degree `degree`.
    pub(crate) fn from_map(degree: usize, mut terms: BTreeMap<Monomial, Rational>) -> Self {
        terms.retain(|_, v| !v.is_zero());
        FormElement { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    ///
    /// Panics if the degrees differ and `other` is nonzero.
    pub fn axpy(&mut self, c: &Rational, other: &FormElement) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        for (m, v) in &other.terms {
            self.add_term(m.clone(), &(c * v));
        }
    }

    pub fn add(&self, other: &FormElement) -> FormElement {
        let mut out = self.clone();
        out.axpy(&Rational::one(), other);
        out
    }

    pub fn sub(&self, other: &FormElement) -> FormElement {
        let mut out = self.clone();
        out.axpy(&-Rational::one(), other);
        out
    }

    pub fn scaled(&self, c: &Rational) -> FormElement {
        if c.is_zero() {
            return FormElement::zero(self.degree);
        }
        FormElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn neg(&self) -> FormElement {
        self.scaled(&-Rational::one())
    }
}
