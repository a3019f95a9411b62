use std::collections::HashMap;

use super::element::{FormElement, Monomial};
use super::model::GeometricModel;
use crate::error::{Error, Result};
use crate::exact::{kernel, quotient_basis, Rational, SparseMatrix, SparseVec};

/// Indexed monomial basis of one cohomological degree.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl DegreeBasis {
    pub fn new(model: &GeometricModel, degree: usize) -> Result<Self> {
        Ok(Self::from_monomials(degree, model.monomials(degree)?))
    }

    pub fn from_monomials(degree: usize, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        DegreeBasis { degree, monomials, index }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of `a`; errors if a term lies outside the basis.
    pub fn coordinates(&self, a: &FormElement) -> Result<SparseVec> {
        if !a.is_zero() && a.degree() != self.degree {
            return Err(Error::Dimension(format!(
                "degree {} element in degree {} basis",
                a.degree(),
                self.degree
            )));
        }
        let mut pairs = Vec::with_capacity(a.len());
        for (m, c) in a.terms() {
            let i = self.position(m).ok_or_else(|| {
                Error::Dimension("element has a monomial outside the basis".into())
            })?;
            pairs.push((i, c.clone()));
        }
        Ok(SparseVec::from_pairs(pairs))
    }

    pub fn element(&self, v: &SparseVec) -> FormElement {
        let map = v
            .iter()
            .map(|(i, c)| (self.monomials[*i].clone(), c.clone()))
            .collect();
        FormElement::from_map(self.degree, map)
    }

    pub fn basis_element(&self, i: usize) -> FormElement {
        self.element(&SparseVec::unit(i))
    }
}

/// Matrix of `d` from `source` to `target` (columns indexed by `source`).
pub fn differential_matrix(
    model: &GeometricModel,
    source: &DegreeBasis,
    target: &DegreeBasis,
) -> Result<SparseMatrix> {
    let cols: Vec<SparseVec> = source
        .monomials()
        .iter()
        .map(|m| {
            let e = model.element([(m.clone(), Rational::one())])?;
            target.coordinates(&model.differential(&e)?)
        })
        .collect::<Result<_>>()?;
    SparseMatrix::from_columns(target.len(), &cols)
}

/// Cohomology of one degree: representatives of `ker d / im d`.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub cochains: usize,
    pub cocycles: usize,
    pub coboundaries: usize,
    pub representatives: Vec<FormElement>,
}

impl CohomologyGroup {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }
}

pub fn cohomology(model: &GeometricModel, n: usize) -> Result<CohomologyGroup> {
    let here = DegreeBasis::new(model, n)?;
    let next = DegreeBasis::new(model, n + 1)?;
    let cocycles = kernel(&differential_matrix(model, &here, &next)?);
    let coboundaries = if n == 0 {
        Vec::new()
    } else {
        let prev = DegreeBasis::new(model, n - 1)?;
        differential_matrix(model, &prev, &here)?.columns()
    };
    let reps = quotient_basis(&cocycles, &coboundaries)?;
    Ok(CohomologyGroup {
        degree: n,
        cochains: here.len(),
        cocycles: cocycles.len(),
        coboundaries: crate::exact::rank_of(&coboundaries),
        representatives: reps.iter().map(|v| here.element(v)).collect(),
    })
}
