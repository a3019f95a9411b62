//! 0-truncation of the observable L∞-algebras to Lie algebras.
//!
//! `τ₀` keeps degree 0 modulo the image of `l_1` from degree 1, with the
//! induced binary bracket. The quotient map is kept so that elements of the
//! full algebra can be read off in the truncation's basis.

mod presentation;
mod split;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{kernel, rank_of, Echelon, Rational, SparseMatrix, SparseVec};
use crate::forms::{cohomology, DegreeBasis, FormElement, GeometricModel, Parity};
use crate::plectic::{
    build_pois_infinity, extension_sequence_check, Ambient, DgLieAlgebra,
    HamiltonianPair, LInfinity, LInfinityAlgebra, Observable, PlecticStructure, SearchSpace,
};

pub use presentation::{BasisJson, BracketJson, LieAlgebraPresentation, PresentationJson};
pub use split::{cocycles_cohomologous, splitting_bracket, CoboundaryReport, CocycleEntry, SplitExtension};

/// Linear map from degree-0 observables onto `τ₀` coordinates.
#[derive(Debug)]
pub struct QuotientMap {
    amb: Ambient,
    echelon: Echelon,
    /// insertion index of each representative -> basis index
    reps: BTreeMap<usize, usize>,
}

impl QuotientMap {
    /// Coordinates of the class of `x`, or `None` if `x` is outside the
    /// degree-0 span.
    pub fn project(&self, x: &Observable) -> Option<SparseVec> {
        let comb = self.echelon.coordinates(&self.amb.observable(x))?;
        Some(comb.remap(|i| self.reps.get(&i).copied()))
    }
}

/// `τ₀` of an L∞-algebra.
#[derive(Debug)]
pub struct Truncation {
    pub presentation: LieAlgebraPresentation,
    /// Normalized coset representatives, in basis order.
    pub representatives: Vec<(String, Observable)>,
    pub degree0_dim: usize,
    pub boundary_rank: usize,
    pub map: QuotientMap,
}

/// Degree-0 homology with the induced bracket.
///
/// Representatives are the degree-0 basis elements that enlarge the span
/// modulo boundaries, each reduced against the boundary echelon. The
/// bracket is checked to descend: `[l_1 η, x]` must be a boundary for every
/// basis boundary and representative.
pub fn truncate0<A: LInfinity + ?Sized>(alg: &A) -> Result<Truncation> {
    let m = alg.model();
    let basis = alg.basis();
    let amb = Ambient::new();

    let mut boundaries: Vec<Observable> = Vec::new();
    let mut probe = Echelon::new();
    if let Some(level) = basis.get(1) {
        for (_, x) in level {
            let Some(b) = alg.unary(x)? else { continue };
            if b.degree() != 0 {
                return Err(Error::Model(format!("l_1 of a degree-1 element has degree {}", b.degree())));
            }
            if probe.insert(&amb.observable(&b)) {
                boundaries.push(b);
            }
        }
    }
    let boundary_rank = boundaries.len();
    // tracking indices below refer to independent inputs only
    let mut bech = Echelon::tracking();
    for b in &boundaries {
        bech.insert(&amb.observable(b));
    }

    let mut echelon = bech.clone();
    let mut reps: BTreeMap<usize, usize> = BTreeMap::new();
    let mut representatives = Vec::new();
    let mut degree0 = Echelon::new();
    for (label, x) in &basis[0] {
        let v = amb.observable(x);
        degree0.insert(&v);
        let (_, comb) = bech.reduce(&v);
        let mut rep = x.clone();
        for (i, c) in comb.iter() {
            rep.axpy(&-c, &boundaries[*i]);
        }
        let r = amb.observable(&rep);
        if !echelon.contains(&r) {
            echelon.insert(&r);
            reps.insert(boundary_rank + representatives.len(), representatives.len());
            representatives.push((label.clone(), rep));
        }
    }
    for b in &boundaries {
        if !degree0.contains(&amb.observable(b)) {
            return Err(Error::Model("boundaries are not in the degree-0 span".into()));
        }
    }
    let map = QuotientMap { amb, echelon, reps };

    let live: Vec<bool> = representatives
        .iter()
        .map(|(_, x)| alg.is_inert(x).map(|i| !i))
        .collect::<Result<_>>()?;
    let n = representatives.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a..n).map(move |b| (a, b)))
        .filter(|&(a, b)| live[a] && live[b])
        .filter(|&(a, b)| a != b || representatives[a].1.parity().is_odd())
        .collect();
    let entries: Vec<(usize, usize, SparseVec)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (x, y) = (&representatives[a].1, &representatives[b].1);
            let Some(z) = alg.bracket(&[x, y])? else {
                return Ok((a, b, SparseVec::new()));
            };
            let coords = map.project(&z).ok_or_else(|| {
                Error::NotClosedUnderBracket(format!(
                    "[{}, {}] leaves the degree-0 span",
                    representatives[a].0, representatives[b].0
                ))
            })?;
            Ok((a, b, coords))
        })
        .collect::<Result<_>>()?;

    // descent: [boundary, rep] must vanish in the quotient
    let witness = boundaries
        .par_iter()
        .enumerate()
        .flat_map(|(i, _)| (0..n).into_par_iter().map(move |r| (i, r)))
        .filter(|&(_, r)| live[r])
        .map(|(i, r)| -> Result<Option<String>> {
            let Some(z) = alg.bracket(&[&boundaries[i], &representatives[r].1])? else {
                return Ok(None);
            };
            match map.project(&z) {
                Some(c) if c.is_zero() => Ok(None),
                _ => Ok(Some(format!(
                    "[l_1 η, {}] = {} is not a boundary",
                    representatives[r].0,
                    z.to_json(m).form
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    if let Some(w) = witness {
        return Err(Error::IllDefinedBracket(w));
    }

    let labels = representatives.iter().map(|(l, _)| l.clone()).collect();
    let parities = representatives.iter().map(|(_, x)| x.parity()).collect();
    let presentation = LieAlgebraPresentation::new(labels, parities, entries)?;
    Ok(Truncation { presentation, representatives, degree0_dim: degree0.rank(), boundary_rank, map })
}

/// Coordinates of closed `p`-forms in a fixed basis of `H^p` of the model.
#[derive(Clone, Debug)]
pub struct CohomologyCoordinates {
    degree: usize,
    basis: DegreeBasis,
    echelon: Echelon,
    offset: usize,
    representatives: Vec<FormElement>,
}

impl CohomologyCoordinates {
    pub fn new(m: &GeometricModel, degree: usize) -> Result<Self> {
        let group = cohomology(m, degree)?;
        let basis = DegreeBasis::new(m, degree)?;
        let mut echelon = Echelon::tracking();
        let mut offset = 0;
        if degree > 0 {
            let prev = DegreeBasis::new(m, degree - 1)?;
            for i in 0..prev.len() {
                echelon.insert(&basis.coordinates(&m.differential(&prev.basis_element(i))?)?);
                offset += 1;
            }
        }
        for r in &group.representatives {
            if !echelon.insert(&basis.coordinates(r)?) {
                return Err(Error::Model("cohomology representatives are dependent".into()));
            }
        }
        Ok(CohomologyCoordinates { degree, basis, echelon, offset, representatives: group.representatives })
    }

    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[FormElement] {
        &self.representatives
    }

    /// Class of a closed form; `None` if `a` is not closed.
    pub fn class(&self, m: &GeometricModel, a: &FormElement) -> Result<Option<SparseVec>> {
        if a.is_zero() {
            return Ok(Some(SparseVec::new()));
        }
        if a.degree() != self.degree {
            return Err(Error::MixedDegree(format!("expected degree {}, got {}", self.degree, a.degree())));
        }
        if !m.differential(a)?.is_zero() {
            return Ok(None);
        }
        let v = self.basis.coordinates(a)?;
        let comb = self.echelon.coordinates(&v).ok_or_else(|| {
            Error::Model("closed form outside cocycles plus coboundaries".into())
        })?;
        Ok(Some(comb.remap(|i| i.checked_sub(self.offset))))
    }
}

/// Certificate for `0 → H^p → τ₀ Pois_∞ → Vect_Ham → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralExtensionReport {
    pub p: usize,
    pub charges: usize,
    pub charge_labels: Vec<String>,
    pub tau0_dim: usize,
    pub projection_rank: usize,
    pub hamiltonian_fields: usize,
    /// Dimension of the kernel of `τ₀ → Vect_Ham`.
    pub kernel: usize,
    /// `[α] ↦ (0, α)` is injective into `τ₀`.
    pub injective: bool,
    pub kernel_is_charges: bool,
    pub surjective: bool,
    /// Every charge brackets to zero with every basis element.
    pub central: bool,
    /// The projection is a Lie algebra map `τ₀ → Vect_Ham`.
    pub projection_is_homomorphism: bool,
    pub exact: bool,
    pub presentation: PresentationJson,
}

pub fn central_extension_certify(s: &PlecticStructure, space: &SearchSpace) -> Result<CentralExtensionReport> {
    let m = s.model();
    let alg = build_pois_infinity(s, space)?;
    let t = truncate0(&alg)?;
    let ext = extension_sequence_check(s, space)?;
    let coh = cohomology(m, s.p())?;
    let n = t.representatives.len();

    let amb = Ambient::new();
    let projections: Vec<SparseVec> = t.representatives.iter().map(|(_, x)| amb.field(x.field())).collect();
    let projection_rank = rank_of(&projections);
    let rows = projections.iter().filter_map(|v| v.max_index()).max().map_or(0, |i| i + 1);
    let kern = kernel(&SparseMatrix::from_columns(rows, &projections)?);

    let mut charge_coords = Vec::new();
    for alpha in &coh.representatives {
        let x = Observable::pair(m, &HamiltonianPair { v: zero_field(m, alpha), j: alpha.clone() });
        let c = t
            .map
            .project(&x)
            .ok_or_else(|| Error::Model("charge outside the degree-0 span".into()))?;
        charge_coords.push(c);
    }
    let injective = rank_of(&charge_coords) == coh.dim();
    let mut both = kern.clone();
    both.extend(charge_coords.iter().cloned());
    let kernel_is_charges = injective && kern.len() == coh.dim() && rank_of(&both) == kern.len();

    let pres = &t.presentation;
    let central = charge_coords
        .iter()
        .all(|c| (0..n).all(|b| pres.bracket(c, &SparseVec::unit(b)).is_zero()));

    let mut projection_is_homomorphism = true;
    for (a, b, z) in pres.entries() {
        let va = t.representatives[a].1.field();
        let vb = t.representatives[b].1.field();
        let lhs = amb.field(&m.bracket(va, vb)?);
        let mut rhs = SparseVec::new();
        for (k, c) in z.iter() {
            rhs.axpy(c, &projections[*k]);
        }
        projection_is_homomorphism &= lhs == rhs;
    }
    // pairs with a zero bracket in τ₀ must also commute as fields
    for a in 0..n {
        for b in a..n {
            if pres.bracket_basis(a, b).is_zero() {
                let va = t.representatives[a].1.field();
                let vb = t.representatives[b].1.field();
                projection_is_homomorphism &= m.bracket(va, vb)?.is_zero();
            }
        }
    }

    let surjective = projection_rank == ext.hamiltonian_fields;
    Ok(CentralExtensionReport {
        p: s.p(),
        charges: coh.dim(),
        charge_labels: coh.representatives.iter().map(|a| m.format(a)).collect(),
        tau0_dim: n,
        projection_rank,
        hamiltonian_fields: ext.hamiltonian_fields,
        kernel: kern.len(),
        injective,
        kernel_is_charges,
        surjective,
        central,
        projection_is_homomorphism,
        exact: injective && kernel_is_charges && surjective,
        presentation: pres.to_json(),
    })
}

fn zero_field(m: &GeometricModel, alpha: &FormElement) -> crate::forms::VectorField {
    crate::forms::VectorField::zero(m.element_parity(alpha).unwrap_or(Parity::Even))
}

/// `τ₀ Pois_∞ ≅ τ₀ Pois_dg` through `(v, J) ↦ (v, ι_v θ − J)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementReport {
    pub infinity_dim: usize,
    pub dg_dim: usize,
    pub map_rank: usize,
    pub brackets_checked: usize,
    pub brackets_failed: usize,
    pub isomorphic: bool,
    pub infinity: PresentationJson,
    pub dg: PresentationJson,
}

pub fn compare_truncations(inf: &LInfinityAlgebra, dg: &DgLieAlgebra) -> Result<AgreementReport> {
    let ti = truncate0(inf)?;
    let td = truncate0(dg)?;
    let mut images = Vec::with_capacity(ti.representatives.len());
    for (label, x) in &ti.representatives {
        let y = dg.from_pair(x)?;
        if !dg.is_element(&y)? {
            return Err(Error::Model(format!("image of {label} violates L_v θ = dΔ")));
        }
        let c = td
            .map
            .project(&y)
            .ok_or_else(|| Error::Model(format!("image of {label} is outside the dg degree-0 span")))?;
        images.push(c);
    }
    let map_rank = rank_of(&images);
    let apply = |z: &SparseVec| {
        let mut out = SparseVec::new();
        for (k, c) in z.iter() {
            out.axpy(c, &images[*k]);
        }
        out
    };
    let n = images.len();
    let (mut checked, mut failed) = (0, 0);
    for a in 0..n {
        for b in a..n {
            let lhs = apply(&ti.presentation.bracket_basis(a, b));
            let rhs = td.presentation.bracket(&images[a], &images[b]);
            checked += 1;
            failed += (lhs != rhs) as usize;
        }
    }
    let dg_dim = td.representatives.len();
    Ok(AgreementReport {
        infinity_dim: n,
        dg_dim,
        map_rank,
        brackets_checked: checked,
        brackets_failed: failed,
        isomorphic: n == dg_dim && map_rank == n && failed == 0,
        infinity: ti.presentation.to_json(),
        dg: td.presentation.to_json(),
    })
}

/// Text summary of a presentation: one line per nonzero bracket.
pub fn format_presentation(p: &LieAlgebraPresentation) -> String {
    let labels = p.labels();
    let mut out = format!("dim {}; central: {}\n", p.dim(), p.central_labels().join(", "));
    for (a, b, v) in p.entries() {
        let terms: Vec<String> = v
            .iter()
            .map(|(k, c)| if c.is_one() { labels[*k].clone() } else { format!("{c}·{}", labels[*k]) })
            .collect();
        out.push_str(&format!("[{}, {}] = {}\n", labels[a], labels[b], terms.join(" + ")));
    }
    out
}

pub(crate) fn half() -> Rational {
    Rational::new(1, 2)
}

#[cfg(test)]
mod tests;
