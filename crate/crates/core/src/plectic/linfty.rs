use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{kernel, Rational, SparseMatrix};
use crate::forms::{DegreeBasis, FormElement, GeometricModel, Parity, VectorField};

use super::{
    bracket_binary, bracket_kary, format_field, hamiltonian_pairs, sign, HamiltonianPair,
    PlecticStructure, SearchSpace,
};

/// Homogeneous element of the observable complex. Degree 0 holds a field
/// and a `p`-form; degree `i ≥ 1` holds a `(p−i)`-form and the zero field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Observable {
    degree: usize,
    parity: Parity,
    v: VectorField,
    form: FormElement,
}

impl Observable {
    pub fn pair(m: &GeometricModel, pair: &HamiltonianPair) -> Self {
        let parity = if pair.v.is_zero() {
            m.element_parity(&pair.j).unwrap_or(Parity::Even)
        } else {
            pair.v.parity()
        };
        Observable { degree: 0, parity, v: pair.v.clone(), form: pair.j.clone() }
    }

    /// Degree-`degree` element carrying a form (the field is zero).
    pub fn form_at(m: &GeometricModel, degree: usize, form: FormElement) -> Self {
        let parity = m.element_parity(&form).unwrap_or(Parity::Even);
        Observable { degree, parity, v: VectorField::zero(parity), form }
    }

    pub fn zero(degree: usize, p: usize) -> Self {
        Observable {
            degree,
            parity: Parity::Even,
            v: VectorField::zero(Parity::Even),
            form: FormElement::zero(p.saturating_sub(degree)),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn field(&self) -> &VectorField {
        &self.v
    }

    pub fn form(&self) -> &FormElement {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero() && self.form.is_zero()
    }

    pub fn axpy(&mut self, c: &Rational, other: &Observable) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        assert_eq!(self.degree, other.degree, "adding observables of different degree");
        if self.is_zero() {
            self.parity = other.parity;
            self.form = FormElement::zero(other.form.degree());
        }
        self.v.axpy(c, &other.v);
        self.form.axpy(c, &other.form);
    }

    pub fn scaled(&self, c: &Rational) -> Observable {
        let mut out = Observable::zero(self.degree, self.form.degree() + self.degree);
        out.axpy(c, self);
        out
    }

    pub fn to_json(&self, m: &GeometricModel) -> ObservableJson {
        ObservableJson {
            degree: self.degree,
            field: format_field(m, &self.v),
            form: m.format(&self.form),
        }
    }
}

/// Text rendering of an observable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservableJson {
    pub degree: usize,
    pub field: String,
    pub form: String,
}

/// `ε(x, y) = (−1)^{|x||y| + σ_x σ_y}`: the Koszul sign of exchanging `x, y`.
pub(crate) fn koszul_odd(x: &Observable, y: &Observable) -> bool {
    (x.degree * y.degree + (x.parity.bit() * y.parity.bit()) as usize) % 2 == 1
}

/// An L∞-algebra on the observable complex of a plectic structure, with
/// brackets `l_k` of degree `k − 2` evaluated on actual elements.
pub trait LInfinity: Sync {
    fn name(&self) -> &'static str;
    fn structure(&self) -> &PlecticStructure;
    /// Labelled basis per degree `0..=p`.
    fn basis(&self) -> &[Vec<(String, Observable)>];
    /// Largest arity with a possibly nonzero bracket.
    fn max_arity(&self) -> usize;
    /// `l_1`; `None` on degree 0, which has no differential out of it.
    fn unary(&self, x: &Observable) -> Result<Option<Observable>>;
    /// `l_k` for `k ≥ 2`; `None` when the value is zero for degree reasons.
    fn bracket(&self, xs: &[&Observable]) -> Result<Option<Observable>>;
    /// True if every bracket (including `l_1`) involving `x` vanishes.
    fn is_inert(&self, x: &Observable) -> Result<bool>;

    fn model(&self) -> &GeometricModel {
        self.structure().model()
    }

    fn p(&self) -> usize {
        self.structure().p()
    }
}

fn positive_degree_basis(s: &PlecticStructure) -> Result<Vec<Vec<(String, Observable)>>> {
    let m = s.model();
    let mut out = Vec::new();
    for i in 1..=s.p() {
        let b = DegreeBasis::new(m, s.p() - i)?;
        out.push(
            (0..b.len())
                .map(|k| {
                    let label = m.format_monomial(&b.monomials()[k]);
                    (label, Observable::form_at(m, i, b.basis_element(k)))
                })
                .collect(),
        );
    }
    Ok(out)
}

fn de_rham(s: &PlecticStructure, x: &Observable) -> Result<Option<Observable>> {
    if x.degree == 0 {
        return Ok(None);
    }
    let m = s.model();
    let dx = m.differential(&x.form)?;
    Ok(Some(if x.degree == 1 {
        Observable {
            degree: 0,
            parity: x.parity,
            v: VectorField::zero(x.parity),
            form: dx,
        }
    } else {
        Observable::form_at(m, x.degree - 1, dx)
    }))
}

/// The higher Poisson bracket L∞-algebra: Hamiltonian pairs in degree 0,
/// `(p−i)`-forms in degree `i`, `l_1 = d`, `l_2 = ([v,w], ι_{v∧w}ω)` and
/// `l_k = (−1)^{⌊(k−1)/2⌋} ι_{v_1∧⋯∧v_k} ω` on degree-0 inputs.
#[derive(Clone, Debug)]
pub struct LInfinityAlgebra {
    structure: PlecticStructure,
    basis: Vec<Vec<(String, Observable)>>,
}

pub fn build_pois_infinity(s: &PlecticStructure, space: &SearchSpace) -> Result<LInfinityAlgebra> {
    let m = s.model();
    let pairs = hamiltonian_pairs(s, space)?;
    let deg0 = pairs
        .labels
        .into_iter()
        .zip(pairs.pairs.iter().map(|p| Observable::pair(m, p)))
        .collect();
    let mut basis = vec![deg0];
    basis.extend(positive_degree_basis(s)?);
    Ok(LInfinityAlgebra { structure: s.clone(), basis })
}

impl LInfinityAlgebra {
    /// Assembles the algebra from an explicit degree-0 basis of pairs.
    pub fn from_pairs(s: &PlecticStructure, pairs: Vec<(String, HamiltonianPair)>) -> Result<Self> {
        let m = s.model();
        let mut deg0 = Vec::with_capacity(pairs.len());
        for (label, p) in pairs {
            let p = s.pair(p.v, p.j)?;
            deg0.push((label, Observable::pair(m, &p)));
        }
        let mut basis = vec![deg0];
        basis.extend(positive_degree_basis(s)?);
        Ok(LInfinityAlgebra { structure: s.clone(), basis })
    }

    /// Nonzero values of `l_1` on the positive-degree basis.
    pub fn unary_table(&self) -> Result<Vec<UnaryEntry>> {
        let m = self.model();
        let mut out = Vec::new();
        for level in &self.basis[1..] {
            for (label, x) in level {
                if let Some(y) = self.unary(x)? {
                    if !y.is_zero() {
                        out.push(UnaryEntry { input: label.clone(), value: y.to_json(m) });
                    }
                }
            }
        }
        Ok(out)
    }

    /// Nonzero brackets on sorted tuples of non-inert degree-0 basis
    /// elements, for arities `2..=max_arity`.
    pub fn bracket_table(&self, max_arity: usize) -> Result<Vec<BracketEntry>> {
        let m = self.model();
        let mut live = Vec::new();
        for (label, x) in &self.basis[0] {
            if !self.is_inert(x)? {
                live.push((label.as_str(), x));
            }
        }
        let mut out = Vec::new();
        for k in 2..=max_arity.min(self.max_arity()) {
            for idx in super::verify::multisets(&live.iter().map(|(_, x)| *x).collect::<Vec<_>>(), k) {
                let xs: Vec<&Observable> = idx.iter().map(|i| live[*i].1).collect();
                if let Some(y) = self.bracket(&xs)? {
                    if !y.is_zero() {
                        out.push(BracketEntry {
                            arity: k,
                            inputs: idx.iter().map(|i| live[*i].0.to_string()).collect(),
                            value: y.to_json(m),
                        });
                    }
                }
            }
        }
        Ok(out)
    }
}

impl LInfinity for LInfinityAlgebra {
    fn name(&self) -> &'static str {
        "Pois_inf"
    }

    fn structure(&self) -> &PlecticStructure {
        &self.structure
    }

    fn basis(&self) -> &[Vec<(String, Observable)>] {
        &self.basis
    }

    fn max_arity(&self) -> usize {
        self.p() + 2
    }

    fn unary(&self, x: &Observable) -> Result<Option<Observable>> {
        de_rham(&self.structure, x)
    }

    fn bracket(&self, xs: &[&Observable]) -> Result<Option<Observable>> {
        let k = xs.len();
        let s = &self.structure;
        if k < 2 || xs.iter().any(|x| x.degree > 0) || k > s.p() + 2 {
            return Ok(None);
        }
        let m = s.model();
        if k == 2 {
            let a = HamiltonianPair { v: xs[0].v.clone(), j: xs[0].form.clone() };
            let b = HamiltonianPair { v: xs[1].v.clone(), j: xs[1].form.clone() };
            let c = bracket_binary(s, &a, &b)?;
            let parity = xs[0].parity + xs[1].parity;
            return Ok(Some(Observable { degree: 0, parity, v: c.v, form: c.j }));
        }
        let vs: Vec<&VectorField> = xs.iter().map(|x| &x.v).collect();
        let form = bracket_kary(s, &vs)?;
        Ok(Some(Observable::form_at(m, k - 2, form)))
    }

    fn is_inert(&self, x: &Observable) -> Result<bool> {
        if x.degree == 0 {
            return Ok(x.v.is_zero());
        }
        Ok(self.unary(x)?.is_none_or(|y| y.is_zero()))
    }
}

/// The dg-Lie model: degree 0 holds `(v, Δ)` with `L_v θ = dΔ`, brackets
/// `[(v₁,Δ₁),(v₂,Δ₂)] = ([v₁,v₂], L_{v₁}Δ₂ − ε L_{v₂}Δ₁)` and
/// `[(v,Δ), η] = L_v η`.
#[derive(Clone, Debug)]
pub struct DgLieAlgebra {
    structure: PlecticStructure,
    theta: FormElement,
    basis: Vec<Vec<(String, Observable)>>,
}

pub fn build_pois_dg(s: &PlecticStructure, space: &SearchSpace) -> Result<DgLieAlgebra> {
    let theta = s.theta().ok_or(Error::MissingPotential)?.clone();
    let m = s.model();
    let fields = space.fields(m)?;
    let db = DegreeBasis::new(m, s.p())?;
    let target = DegreeBasis::new(m, s.p() + 1)?;
    let mut columns = Vec::with_capacity(fields.len() + db.len());
    for (_, v) in &fields {
        columns.push(target.coordinates(&m.lie_derivative(v, &theta)?)?);
    }
    for i in 0..db.len() {
        columns.push(target.coordinates(&m.differential(&db.basis_element(i))?.neg())?);
    }
    let mat = SparseMatrix::from_columns(target.len(), &columns)?;
    let nf = fields.len();
    let mut deg0 = Vec::new();
    for k in kernel(&mat) {
        let free = k.max_index().expect("nonzero kernel vector");
        let (lead, _) = k.leading().expect("nonzero kernel vector");
        let parity = if lead < nf { fields[lead].1.parity() } else { m.parity(&db.monomials()[lead - nf]) };
        let mut v = VectorField::zero(parity);
        let mut delta = FormElement::zero(s.p());
        for (i, c) in k.iter() {
            if *i < nf {
                v.axpy(c, &fields[*i].1);
            } else {
                delta.axpy(c, &db.basis_element(*i - nf));
            }
        }
        let label = if free < nf {
            fields[free].0.clone()
        } else {
            format!("Δ={}", m.format_monomial(&db.monomials()[free - nf]))
        };
        deg0.push((label, Observable { degree: 0, parity, v, form: delta }));
    }
    let mut basis = vec![deg0];
    basis.extend(positive_degree_basis(s)?);
    Ok(DgLieAlgebra { structure: s.clone(), theta, basis })
}

impl DgLieAlgebra {
    pub fn theta(&self) -> &FormElement {
        &self.theta
    }

    /// The degree-0 element `(v, ι_v θ − J)` matching a Hamiltonian pair.
    pub fn from_pair(&self, x: &Observable) -> Result<Observable> {
        assert_eq!(x.degree, 0, "only degree-0 elements are pairs");
        let m = self.model();
        let delta = m.contract(&x.v, &self.theta)?.sub(&x.form);
        Ok(Observable { degree: 0, parity: x.parity, v: x.v.clone(), form: delta })
    }

    /// Checks `L_v θ = dΔ`.
    pub fn is_element(&self, x: &Observable) -> Result<bool> {
        if x.degree > 0 {
            return Ok(true);
        }
        let m = self.model();
        Ok(m.lie_derivative(&x.v, &self.theta)? == m.differential(&x.form)?)
    }
}

impl LInfinity for DgLieAlgebra {
    fn name(&self) -> &'static str {
        "Pois_dg"
    }

    fn structure(&self) -> &PlecticStructure {
        &self.structure
    }

    fn basis(&self) -> &[Vec<(String, Observable)>] {
        &self.basis
    }

    fn max_arity(&self) -> usize {
        2
    }

    fn unary(&self, x: &Observable) -> Result<Option<Observable>> {
        de_rham(&self.structure, x)
    }

    fn bracket(&self, xs: &[&Observable]) -> Result<Option<Observable>> {
        if xs.len() != 2 {
            return Ok(None);
        }
        let (x, y) = (xs[0], xs[1]);
        let m = self.model();
        match (x.degree, y.degree) {
            (0, 0) => {
                let v = m.bracket(&x.v, &y.v)?;
                let a = m.lie_derivative(&x.v, &y.form)?;
                let b = m.lie_derivative(&y.v, &x.form)?;
                let eps = sign(koszul_odd(x, y));
                let mut form = a;
                form.axpy(&-eps, &b);
                let parity = x.parity + y.parity;
                Ok(Some(Observable { degree: 0, parity, v, form }))
            }
            (0, d) if d <= self.p() => {
                let form = m.lie_derivative(&x.v, &y.form)?;
                Ok(Some(Observable::form_at(m, d, form)))
            }
            (d, 0) if d <= self.p() => {
                let form = m.lie_derivative(&y.v, &x.form)?;
                let eps = sign(koszul_odd(x, y));
                Ok(Some(Observable::form_at(m, d, form.scaled(&-eps))))
            }
            _ => Ok(None),
        }
    }

    fn is_inert(&self, x: &Observable) -> Result<bool> {
        if x.degree == 0 {
            return Ok(x.is_zero());
        }
        Ok(x.form.degree() == 0 && self.model().differential(&x.form)?.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnaryEntry {
    pub input: String,
    pub value: ObservableJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub arity: usize,
    pub inputs: Vec<String>,
    pub value: ObservableJson,
}

/// Basis labels per degree, for reports.
pub(crate) fn basis_labels<A: LInfinity + ?Sized>(alg: &A) -> BTreeMap<usize, Vec<String>> {
    alg.basis()
        .iter()
        .enumerate()
        .map(|(d, b)| (d, b.iter().map(|(l, _)| l.clone()).collect()))
        .collect()
}
