use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rank_of, solve, Rational, SparseMatrix, SparseVec, SpanBasis};
use crate::forms::{FormElement, GeometricModel, Parity, VectorField};
use crate::plectic::{
    build_pois_infinity, hamiltonian_pairs, sign, wedge_contract, Ambient, HamiltonianPair,
    Observable, PlecticStructure, SearchSpace,
};

use super::{truncate0, CohomologyCoordinates, LieAlgebraPresentation, PresentationJson};

/// `c(v_i, v_j)` as `H^p` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleEntry {
    pub left: String,
    pub right: String,
    pub class: Vec<(String, String)>,
}

/// `Vect_Ham ⊕ H^p` with the bracket induced by a linear section
/// `v ↦ (v, J_v)`:
/// `{v + [α], w + [β]} = [v, w] + [L_v Δ_w − ε L_w Δ_v − Δ_{[v,w]}]`
/// where `Δ_v = ι_v θ − J_v`.
#[derive(Clone, Debug)]
pub struct SplitExtension {
    pub section: Vec<(String, HamiltonianPair)>,
    pub charges: Vec<String>,
    /// Fields first, then charges.
    pub presentation: LieAlgebraPresentation,
    pub cocycle: Vec<CocycleEntry>,
    /// `ι_{v∧w} ω = ½(L_v J_w − ε L_w J_v) − ½ d(ι_v J_w − ε ι_w J_v)` on section pairs.
    pub identity_checked: usize,
    pub identity_failed: usize,
    /// `v + [α] ↦ (v, J_v − α)` is a Lie algebra isomorphism onto `τ₀ Pois_∞`.
    pub isomorphic: bool,
}

#[derive(Serialize)]
struct SplitJson<'a> {
    fields: Vec<&'a str>,
    charges: &'a [String],
    cocycle: &'a [CocycleEntry],
    identity_checked: usize,
    identity_failed: usize,
    isomorphic: bool,
    presentation: PresentationJson,
}

impl SplitExtension {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SplitJson {
            fields: self.section.iter().map(|(l, _)| l.as_str()).collect(),
            charges: &self.charges,
            cocycle: &self.cocycle,
            identity_checked: self.identity_checked,
            identity_failed: self.identity_failed,
            isomorphic: self.isomorphic,
            presentation: self.presentation.to_json(),
        })
        .expect("split report serializes")
    }

    fn fields(&self) -> usize {
        self.section.len()
    }
}

fn check_section(
    s: &PlecticStructure,
    space: &SearchSpace,
    section: &[(String, HamiltonianPair)],
    amb: &Ambient,
) -> Result<SpanBasis> {
    for (label, p) in section {
        s.pair(p.v.clone(), p.j.clone())
            .map_err(|e| Error::NotASection(format!("{label}: {e}")))?;
        if p.v.is_zero() {
            return Err(Error::NotASection(format!("{label} has a zero field")));
        }
    }
    let fields = SpanBasis::new(section.iter().map(|(_, p)| amb.field(&p.v)));
    if fields.dim() != section.len() {
        return Err(Error::NotASection("section fields are linearly dependent".into()));
    }
    let all = hamiltonian_pairs(s, space)?;
    let projected: Vec<SparseVec> = all.pairs.iter().map(|p| amb.field(&p.v)).collect();
    let rank = rank_of(&projected);
    if rank != section.len() || projected.iter().any(|v| !fields.contains(v)) {
        return Err(Error::NotASection(format!(
            "section spans {} fields, the Hamiltonian fields have dimension {rank}",
            section.len()
        )));
    }
    Ok(fields)
}

fn contract_or_zero(m: &GeometricModel, v: &VectorField, a: &FormElement) -> Result<FormElement> {
    if a.degree() == 0 {
        return Ok(FormElement::zero(0));
    }
    m.contract(v, a)
}

pub fn splitting_bracket(
    s: &PlecticStructure,
    space: &SearchSpace,
    section: Vec<(String, HamiltonianPair)>,
) -> Result<SplitExtension> {
    let m = s.model();
    let theta = s.theta().ok_or(Error::MissingPotential)?;
    let p = s.p();
    let amb = Ambient::new();
    let fields = check_section(s, space, &section, &amb)?;
    let coh = CohomologyCoordinates::new(m, p)?;
    let nf = section.len();

    let deltas: Vec<FormElement> = section
        .iter()
        .map(|(_, x)| Ok(m.contract(&x.v, theta)?.sub(&x.j)))
        .collect::<Result<_>>()?;
    let delta_of = |c: &SparseVec| {
        let mut out = FormElement::zero(p);
        for (k, a) in c.iter() {
            out.axpy(a, &deltas[*k]);
        }
        out
    };

    let mut entries = Vec::new();
    let mut cocycle = Vec::new();
    let (mut identity_checked, mut identity_failed) = (0, 0);
    for i in 0..nf {
        for j in i..nf {
            let (vi, vj) = (&section[i].1, &section[j].1);
            let odd = vi.v.parity().is_odd() && vj.v.parity().is_odd();
            if i == j && !odd {
                continue;
            }
            let eps = sign(odd);
            let w = m.bracket(&vi.v, &vj.v)?;
            let wc = fields.coordinates(&amb.field(&w)).ok_or_else(|| {
                Error::NotClosedUnderBracket(format!("[{}, {}] leaves the section span", section[i].0, section[j].0))
            })?;
            let mut c = m.lie_derivative(&vi.v, &deltas[j])?;
            c.axpy(&-&eps, &m.lie_derivative(&vj.v, &deltas[i])?);
            c.axpy(&-Rational::one(), &delta_of(&wc));
            let class = coh.class(m, &c)?.ok_or_else(|| {
                Error::Model(format!("c({}, {}) = {} is not closed", section[i].0, section[j].0, m.format(&c)))
            })?;
            if !class.is_zero() {
                cocycle.push(CocycleEntry {
                    left: section[i].0.clone(),
                    right: section[j].0.clone(),
                    class: class.iter().map(|(k, q)| (m.format(&coh.representatives()[*k]), q.to_string())).collect(),
                });
            }
            let mut value = wc.clone();
            value.axpy(&Rational::one(), &class.remap(|k| Some(nf + k)));
            entries.push((i, j, value));

            let lhs = wedge_contract(m, &[&vi.v, &vj.v], s.omega())?;
            let mut lie = m.lie_derivative(&vi.v, &vj.j)?;
            lie.axpy(&-&eps, &m.lie_derivative(&vj.v, &vi.j)?);
            let mut rhs = lie.scaled(&super::half());
            if p > 0 {
                let mut inner = contract_or_zero(m, &vi.v, &vj.j)?;
                inner.axpy(&-&eps, &contract_or_zero(m, &vj.v, &vi.j)?);
                rhs.axpy(&-super::half(), &m.differential(&inner)?);
            }
            identity_checked += 1;
            identity_failed += !lhs.sub(&rhs).is_zero() as usize;
        }
    }

    let charge_labels: Vec<String> = coh.representatives().iter().map(|a| format!("[{}]", m.format(a))).collect();
    let mut labels: Vec<String> = section.iter().map(|(l, _)| l.clone()).collect();
    labels.extend(charge_labels.iter().cloned());
    let mut parities: Vec<Parity> = section.iter().map(|(_, x)| x.v.parity()).collect();
    parities.extend(coh.representatives().iter().map(|a| m.element_parity(a).unwrap_or(Parity::Even)));
    let presentation = LieAlgebraPresentation::new(labels, parities, entries)?;

    let isomorphic = check_isomorphism(s, space, &section, &coh, &presentation)?;
    Ok(SplitExtension {
        section,
        charges: charge_labels,
        presentation,
        cocycle,
        identity_checked,
        identity_failed,
        isomorphic,
    })
}

fn check_isomorphism(
    s: &PlecticStructure,
    space: &SearchSpace,
    section: &[(String, HamiltonianPair)],
    coh: &CohomologyCoordinates,
    split: &LieAlgebraPresentation,
) -> Result<bool> {
    let m = s.model();
    let t = truncate0(&build_pois_infinity(s, space)?)?;
    let mut images = Vec::new();
    for (_, x) in section {
        images.push(t.map.project(&Observable::pair(m, x)));
    }
    for a in coh.representatives() {
        let parity = m.element_parity(a).unwrap_or(Parity::Even);
        let x = HamiltonianPair { v: VectorField::zero(parity), j: a.neg() };
        images.push(t.map.project(&Observable::pair(m, &x)));
    }
    let Some(images) = images.into_iter().collect::<Option<Vec<SparseVec>>>() else {
        return Ok(false);
    };
    let n = images.len();
    if n != t.presentation.dim() || rank_of(&images) != n {
        return Ok(false);
    }
    let apply = |z: &SparseVec| {
        let mut out = SparseVec::new();
        for (k, c) in z.iter() {
            out.axpy(c, &images[*k]);
        }
        out
    };
    for a in 0..n {
        for b in a..n {
            if apply(&split.bracket_basis(a, b)) != t.presentation.bracket(&images[a], &images[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether two split cocycles differ by `δβ`, `(δβ)(v, w) = −β([v, w])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoboundaryReport {
    /// The cocycles differ as tables.
    pub differ: bool,
    pub cohomologous: bool,
    /// `β(v) = Σ coefficient · charge` on the first section's fields.
    pub beta: Vec<(String, String, String)>,
}

pub fn cocycles_cohomologous(a: &SplitExtension, b: &SplitExtension) -> Result<CoboundaryReport> {
    if a.charges != b.charges || a.fields() != b.fields() {
        return Err(Error::Dimension("split extensions over different spaces".into()));
    }
    let nf = a.fields();
    let nq = a.charges.len();
    let amb = Ambient::new();
    let basis_b = SpanBasis::new(b.section.iter().map(|(_, x)| amb.field(&x.v)));
    let mut change = Vec::with_capacity(nf);
    for (label, x) in &a.section {
        change.push(
            basis_b
                .coordinates(&amb.field(&x.v))
                .ok_or_else(|| Error::NotASection(format!("{label} is outside the other section's fields")))?,
        );
    }
    let charge_part = |v: SparseVec| v.remap(|k| k.checked_sub(nf));
    let field_part = |v: &SparseVec| v.remap(|k| (k < nf).then_some(k));

    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    let mut differ = false;
    for i in 0..nf {
        for j in i..nf {
            let ca = a.presentation.bracket_basis(i, j);
            let cb = b.presentation.bracket(&change[i], &change[j]);
            let diff = charge_part(cb).sub(&charge_part(ca.clone()));
            differ |= !diff.is_zero();
            let w = field_part(&ca);
            for q in 0..nq {
                // −Σ_k w_k β_{k,q}
                rows.push(SparseVec::from_pairs(w.iter().map(|(k, c)| (k * nq + q, -c))));
                rhs.push((rows.len() - 1, diff.get(q)));
            }
        }
    }
    let mat = SparseMatrix::from_rows(nf * nq, rows)?;
    let target = SparseVec::from_pairs(rhs);
    let solution = solve(&mat, &target)?;
    let beta = solution
        .iter()
        .flat_map(|x| x.iter())
        .map(|(idx, c)| (a.section[idx / nq].0.clone(), a.charges[idx % nq].clone(), c.to_string()))
        .collect();
    Ok(CoboundaryReport { differ, cohomologous: solution.is_some(), beta })
}
