//! Pre-multisymplectic structures and their higher Poisson brackets.
//!
//! A closed `(p+2)`-form `ω` makes pairs `(v, J)` with `ι_v ω = −dJ` into the
//! degree-0 part of an L∞-algebra whose positive degrees are the forms of
//! degree `< p`. Everything here works over any [`GeometricModel`], so the
//! same code handles polynomial forms and super-translation invariant forms.

mod ambient;
mod linfty;
mod verify;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{kernel, Rational, SparseMatrix};
use crate::forms::{DegreeBasis, FormElement, GeometricModel, ModelKind, Parity, VectorField};

pub(crate) use ambient::Ambient;
pub use linfty::{
    build_pois_dg, build_pois_infinity, BracketEntry, DgLieAlgebra, LInfinity, LInfinityAlgebra,
    Observable, ObservableJson, UnaryEntry,
};
pub use verify::{
    extension_sequence_check, kks_component, kks_cocycle, verify_linfty, ArityCount,
    ExtensionReport, IdentityCheck, KksReport, LinftyReport,
};

/// A closed form `ω` of degree `p + 2`, optionally with a potential `θ`.
#[derive(Clone, Debug)]
pub struct PlecticStructure {
    model: GeometricModel,
    omega: FormElement,
    p: usize,
    theta: Option<FormElement>,
}

impl PlecticStructure {
    pub fn new(model: GeometricModel, omega: FormElement, theta: Option<FormElement>) -> Result<Self> {
        if omega.degree() < 2 {
            return Err(Error::Model(format!(
                "ω must have degree at least 2, got {}",
                omega.degree()
            )));
        }
        let residual = model.differential(&omega)?;
        if !residual.is_zero() {
            return Err(Error::NotClosed { residual: model.format(&residual) });
        }
        if let Some(t) = &theta {
            let dt = model.differential(t)?;
            if dt != omega {
                return Err(Error::Model(format!(
                    "potential does not satisfy dθ = ω: dθ − ω = {}",
                    model.format(&dt.sub(&omega))
                )));
            }
        }
        let p = omega.degree() - 2;
        Ok(PlecticStructure { model, omega, p, theta })
    }

    /// Parses `ω` (and `θ`) in the model's text syntax.
    pub fn parse(model: GeometricModel, omega: &str, theta: Option<&str>) -> Result<Self> {
        let omega = model.parse(omega)?;
        let theta = theta.map(|t| model.parse(t)).transpose()?;
        Self::new(model, omega, theta)
    }

    pub fn model(&self) -> &GeometricModel {
        &self.model
    }

    pub fn omega(&self) -> &FormElement {
        &self.omega
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn theta(&self) -> Option<&FormElement> {
        self.theta.as_ref()
    }

    /// `ι_v ω + dJ`; zero exactly for Hamiltonian pairs.
    pub fn pair_residual(&self, v: &VectorField, j: &FormElement) -> Result<FormElement> {
        if j.degree() != self.p {
            return Err(Error::MixedDegree(format!(
                "J must have degree {}, got {}",
                self.p,
                j.degree()
            )));
        }
        let iv = self.model.contract(v, &self.omega)?;
        Ok(iv.add(&self.model.differential(j)?))
    }

    /// Checked constructor for a Hamiltonian pair.
    pub fn pair(&self, v: VectorField, j: FormElement) -> Result<HamiltonianPair> {
        let r = self.pair_residual(&v, &j)?;
        if !r.is_zero() {
            return Err(Error::NotHamiltonian(format!(
                "ι_v ω + dJ = {}",
                self.model.format(&r)
            )));
        }
        Ok(HamiltonianPair { v, j })
    }
}

/// `(v, J)` with `ι_v ω = −dJ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HamiltonianPair {
    pub v: VectorField,
    pub j: FormElement,
}

/// Finite-dimensional space of vector fields searched for Hamiltonian ones.
#[derive(Clone, Debug)]
pub enum SearchSpace {
    /// `f ∂_i` with `f` constant or a coordinate (polynomial models).
    Affine,
    /// Fields dual to the degree-1 generators (constant fields).
    Invariant,
    /// An explicit labelled list.
    Fields(Vec<(String, VectorField)>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchKind {
    Affine,
    Invariant,
    Supertranslations,
}

impl SearchSpace {
    pub fn fields(&self, model: &GeometricModel) -> Result<Vec<(String, VectorField)>> {
        match self {
            SearchSpace::Fields(f) => Ok(f.clone()),
            SearchSpace::Invariant => model
                .generators()
                .iter()
                .filter(|g| g.degree == 1)
                .map(|g| Ok((format!("∂{}", g.name), model.dual_field(&g.name)?)))
                .collect(),
            SearchSpace::Affine => {
                if model.kind() != ModelKind::Polynomial {
                    return Err(Error::Model("affine fields need a polynomial model".into()));
                }
                let coords: Vec<String> = model
                    .generators()
                    .iter()
                    .filter(|g| g.degree == 0)
                    .map(|g| g.name.clone())
                    .collect();
                let mut out = Vec::new();
                for target in &coords {
                    out.push((format!("∂{target}"), model.partial(target)?));
                    for c in &coords {
                        let f = model.generator(c)?;
                        let v = model.vector_field(Parity::Even, vec![(&format!("d{target}"), f)])?;
                        out.push((format!("{c}∂{target}"), v));
                    }
                }
                Ok(out)
            }
        }
    }
}

/// A basis of Hamiltonian pairs over a search space.
#[derive(Clone, Debug)]
pub struct PairSpace {
    pub labels: Vec<String>,
    pub pairs: Vec<HamiltonianPair>,
}

impl PairSpace {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs whose fields are linearly independent and span the projection
    /// onto fields: a linear section of `(v, J) ↦ v`.
    pub fn section(&self) -> Vec<HamiltonianPair> {
        let amb = Ambient::new();
        let mut ech = crate::exact::Echelon::new();
        self.pairs
            .iter()
            .filter(|p| !p.v.is_zero() && ech.insert(&amb.field(&p.v)))
            .cloned()
            .collect()
    }

    /// True if `pair` lies in the span of the basis.
    pub fn contains(&self, pair: &HamiltonianPair) -> bool {
        let amb = Ambient::new();
        let mut ech = crate::exact::Echelon::new();
        for p in &self.pairs {
            ech.insert(&amb.pair(p));
        }
        ech.contains(&amb.pair(pair))
    }
}

/// Basis of `{(v, J) : v in the search space, ι_v ω + dJ = 0}`, including the
/// pairs `(0, J)` with `J` closed. Each basis vector is labelled by the
/// column (field or monomial of `J`) it was solved for.
pub fn hamiltonian_pairs(s: &PlecticStructure, space: &SearchSpace) -> Result<PairSpace> {
    let m = s.model();
    let fields = space.fields(m)?;
    let jb = DegreeBasis::new(m, s.p())?;
    let target = DegreeBasis::new(m, s.p() + 1)?;
    let mut columns = Vec::with_capacity(fields.len() + jb.len());
    for (_, v) in &fields {
        columns.push(target.coordinates(&m.contract(v, s.omega())?)?);
    }
    for i in 0..jb.len() {
        columns.push(target.coordinates(&m.differential(&jb.basis_element(i))?)?);
    }
    let mat = SparseMatrix::from_columns(target.len(), &columns)?;
    let nf = fields.len();
    let mut labels = Vec::new();
    let mut pairs = Vec::new();
    for k in kernel(&mat) {
        let free = k.max_index();
        let parity = pair_parity(m, &fields, &jb, &k);
        let mut v = VectorField::zero(parity);
        let mut j = FormElement::zero(s.p());
        for (i, c) in k.iter() {
            if *i < nf {
                v.axpy(c, &fields[*i].1);
            } else {
                j.axpy(c, &jb.basis_element(*i - nf));
            }
        }
        let pair = s.pair(v, j)?;
        let label = match free {
            Some(i) if i < nf => fields[i].0.clone(),
            Some(i) => format!("J={}", m.format_monomial(&jb.monomials()[i - nf])),
            None => unreachable!("kernel vectors are nonzero"),
        };
        labels.push(label);
        pairs.push(pair);
    }
    Ok(PairSpace { labels, pairs })
}

fn pair_parity(
    m: &GeometricModel,
    fields: &[(String, VectorField)],
    jb: &DegreeBasis,
    k: &crate::exact::SparseVec,
) -> Parity {
    let nf = fields.len();
    let (i, _) = k.leading().expect("nonzero kernel vector");
    if i < nf {
        fields[i].1.parity()
    } else {
        m.parity(&jb.monomials()[i - nf])
    }
}

/// `ι_{v_1 ∧ ⋯ ∧ v_k} a`: equal to `ι_{v_k} ∘ ⋯ ∘ ι_{v_1}` on even fields.
///
/// For odd fields the two composition orders differ by signs; the wedge is
/// taken as `(−1)^{k(k−1)/2} ι_{v_1} ∘ ⋯ ∘ ι_{v_k}`, the ordering for which
/// `([v, w], ι_{v∧w} ω)` is Hamiltonian for every parity.
pub fn wedge_contract(m: &GeometricModel, vs: &[&VectorField], a: &FormElement) -> Result<FormElement> {
    let k = vs.len();
    if k > a.degree() {
        return Ok(FormElement::zero(0));
    }
    let mut cur = a.clone();
    for v in vs.iter().rev() {
        cur = m.contract(v, &cur)?;
        if cur.is_zero() {
            return Ok(FormElement::zero(a.degree() - k));
        }
    }
    if (k * k.saturating_sub(1) / 2) % 2 == 1 {
        cur = cur.neg();
    }
    Ok(cur)
}

/// `([v₁, v₂], ι_{v₁∧v₂} ω)`, checked to be a Hamiltonian pair.
pub fn bracket_binary(s: &PlecticStructure, a: &HamiltonianPair, b: &HamiltonianPair) -> Result<HamiltonianPair> {
    let m = s.model();
    let v = m.bracket(&a.v, &b.v)?;
    let j = wedge_contract(m, &[&a.v, &b.v], s.omega())?;
    s.pair(v, j)
}

/// `(−1)^{⌊(k−1)/2⌋} ι_{v₁∧⋯∧v_k} ω` for `k ≥ 3`; zero when `k > p + 2`.
pub fn bracket_kary(s: &PlecticStructure, vs: &[&VectorField]) -> Result<FormElement> {
    let k = vs.len();
    if k < 3 {
        return Err(Error::Dimension(format!("k-ary bracket needs k ≥ 3, got {k}")));
    }
    if k > s.p() + 2 {
        return Ok(FormElement::zero(0));
    }
    let c = wedge_contract(s.model(), vs, s.omega())?;
    Ok(if ((k - 1) / 2) % 2 == 1 { c.neg() } else { c })
}

/// Human-readable vector field, e.g. `x∂y + −1∂x`.
pub fn format_field(m: &GeometricModel, v: &VectorField) -> String {
    if v.is_zero() {
        return "0".into();
    }
    let gens = m.generators();
    v.values()
        .map(|(i, val)| {
            let name = &gens[i].name;
            let dir = match m.kind() {
                ModelKind::Polynomial => name.strip_prefix('d').unwrap_or(name),
                _ => name.as_str(),
            };
            let coef = m.format(val);
            if coef == "1" {
                format!("∂{dir}")
            } else if val.len() == 1 && !coef.contains(' ') {
                format!("{coef}∂{dir}")
            } else {
                format!("({coef})∂{dir}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

pub(crate) fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

#[cfg(test)]
mod tests;
