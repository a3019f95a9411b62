//! BPS charge extensions of supertranslation algebras.
//!
//! Supertranslations of the super-torus model are Hamiltonian for the
//! WZW cocycle `ω`, and the class of `ι_{X∧Y} ω` in `H^p` gives the central
//! extension by brane charges. The class of a closed form is its pure-`e`
//! part, so charges are labelled by index sets `a1 < … < ap`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clifford::{GammaRep, Sym2Report, Symmetry};
use crate::error::{Error, Result};
use crate::exact::{kernel, Rational, SparseMatrix, SparseVec, SpanBasis};
use crate::forms::{FormElement, Parity};
use crate::plectic::Ambient;
use crate::superspace::{index_sets, SpinorChoice, SuperMinkowskiModel, SuperTorus};
use crate::truncation::{LieAlgebraPresentation, PresentationJson};

/// Which isometries form the base algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseAlgebra {
    #[default]
    Supertranslations,
    /// Supertranslations plus Lorentz rotations; rejected, see [`bps_extension`].
    WithLorentz,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpsOptions {
    pub base: BaseAlgebra,
    /// Also construct and verify explicit potentials `J_X` with `ι_X ω = −dJ_X`.
    pub potentials: bool,
}

/// `H^p → τ₀ → supertranslations`, split by the canonical potentials.
#[derive(Clone, Debug)]
pub struct ChargeExtension {
    pub d: usize,
    pub spinors: SpinorChoice,
    pub p: usize,
    pub base: LieAlgebraPresentation,
    pub charges: Vec<String>,
    charge_sets: Vec<Vec<usize>>,
    /// Nonzero `c(X_i, X_j)` for `i ≤ j`, in charge coordinates.
    pub cocycle: BTreeMap<(usize, usize), SparseVec>,
    /// Base plus charges; construction verifies the cocycle identity.
    pub extended: LieAlgebraPresentation,
    /// Every base field satisfies `L_X ω = 0` with `[ι_X ω] = 0`.
    pub hamiltonian: bool,
    pub potentials_checked: usize,
    /// Every charge brackets to zero in the extension.
    pub central: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeEntryJson {
    pub left: String,
    pub right: String,
    pub class: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeExtensionJson {
    pub d: usize,
    pub spinors: SpinorChoice,
    pub p: usize,
    pub base: PresentationJson,
    pub charges: Vec<String>,
    pub cocycle: Vec<ChargeEntryJson>,
    pub hamiltonian: bool,
    pub potentials_checked: usize,
    pub central: bool,
    pub cocycle_identity: bool,
}

impl ChargeExtension {
    pub fn n_odd(&self) -> usize {
        self.base.parities().iter().filter(|p| p.is_odd()).count()
    }

    /// `c(X_i, X_j)` for any order, using graded antisymmetry.
    pub fn cocycle_value(&self, i: usize, j: usize) -> SparseVec {
        if i <= j {
            return self.cocycle.get(&(i, j)).cloned().unwrap_or_default();
        }
        let par = self.base.parities();
        let v = self.cocycle.get(&(j, i)).cloned().unwrap_or_default();
        if par[i].is_odd() && par[j].is_odd() {
            v
        } else {
            v.scaled(&-Rational::one())
        }
    }

    /// Index of the charge `[e^{a1} ⋯ e^{ap}]`.
    pub fn charge_index(&self, set: &[usize]) -> Option<usize> {
        self.charge_sets.iter().position(|s| s == set)
    }

    /// `c(Q_α, Q_β)` component along one charge, as an `N × N` matrix.
    pub fn odd_odd_component(&self, charge: usize) -> Vec<Vec<Rational>> {
        let par = self.base.parities();
        let odd: Vec<usize> = (0..par.len()).filter(|i| par[*i].is_odd()).collect();
        odd.iter()
            .map(|&a| odd.iter().map(|&b| self.cocycle_value(a, b).get(charge)).collect())
            .collect()
    }

    pub fn to_json(&self) -> ChargeExtensionJson {
        let labels = self.base.labels();
        ChargeExtensionJson {
            d: self.d,
            spinors: self.spinors,
            p: self.p,
            base: self.base.to_json(),
            charges: self.charges.clone(),
            cocycle: self
                .cocycle
                .iter()
                .map(|((i, j), v)| ChargeEntryJson {
                    left: labels[*i].clone(),
                    right: labels[*j].clone(),
                    class: v.iter().map(|(k, c)| (self.charges[*k].clone(), c.to_string())).collect(),
                })
                .collect(),
            hamiltonian: self.hamiltonian,
            potentials_checked: self.potentials_checked,
            central: self.central,
            cocycle_identity: true,
        }
    }
}

fn charge_label(set: &[usize]) -> String {
    set.iter().map(|a| format!("e{a}")).collect::<Vec<_>>().join(" ")
}

/// Charge coordinates of the pure-`e` part of `a`.
fn class_coordinates(st: &SuperTorus, sets: &[Vec<usize>], a: &FormElement) -> Result<SparseVec> {
    let cls = st.class_of(a);
    let mut out = Vec::new();
    for (m, c) in cls.terms() {
        let set: Vec<usize> = m.support().map(|(i, _)| i).collect();
        let k = sets
            .iter()
            .position(|s| *s == set)
            .ok_or_else(|| Error::Model(format!("class term {} is not a charge", st.model.format_monomial(m))))?;
        out.push((k, c.clone()));
    }
    Ok(SparseVec::from_pairs(out))
}

/// The BPS extension of the supertranslation algebra by `p`-brane charges.
///
/// Supertranslations are checked to be Hamiltonian by `L_X ω = 0` and a
/// vanishing class of `ι_X ω`; with `potentials` the primitives are built
/// and verified as well. Each cocycle representative `ι_{X∧Y} ω` is checked
/// to be the form part of the Hamiltonian pair over `[X, Y]`. Lorentz
/// rotations are not vector fields of the invariant model and are rejected.
pub fn bps_extension(sm: &SuperMinkowskiModel, p: usize, opts: BpsOptions) -> Result<ChargeExtension> {
    if opts.base == BaseAlgebra::WithLorentz {
        return Err(Error::Model(
            "Lorentz rotations act on the invariant model by derivations, not contractions; \
             only the supertranslation base is available"
                .into(),
        ));
    }
    let omega0 = sm.wzw_cocycle(p)?;
    let (closed, residual) = sm.is_closed(&omega0)?;
    if !closed {
        return Err(Error::NotClosed { residual: sm.model.format(&residual) });
    }
    let st = sm.super_torus()?;
    let m = &st.model;
    let omega = st.embed(&omega0);
    let fields = st.supertranslations()?;
    let n = fields.len();

    // ι_X ω for each field, reused by every pair
    let contracted: Vec<FormElement> = fields
        .par_iter()
        .map(|(_, x)| m.contract(x, &omega))
        .collect::<Result<_>>()?;
    let hamiltonian: Vec<Option<String>> = fields
        .par_iter()
        .zip(&contracted)
        .map(|((label, x), ix)| -> Result<Option<String>> {
            if !m.lie_derivative(x, &omega)?.is_zero() {
                return Ok(Some(format!("L_{label} ω ≠ 0")));
            }
            let cls = st.class_of(ix);
            if !cls.is_zero() {
                return Ok(Some(format!("ι_{label} ω has class {}", m.format(&cls))));
            }
            Ok(None)
        })
        .collect::<Result<_>>()?;
    if let Some(msg) = hamiltonian.into_iter().flatten().next() {
        return Err(Error::NotHamiltonian(msg));
    }
    let mut potentials_checked = 0;
    if opts.potentials {
        let count: Vec<()> = contracted
            .par_iter()
            .map(|ix| {
                if ix.is_zero() {
                    return Ok(());
                }
                st.primitive(&ix.neg()).map(|_| ())
            })
            .collect::<Result<_>>()?;
        potentials_checked = count.len();
    }

    let amb = Ambient::new();
    let field_basis = SpanBasis::new(fields.iter().map(|(_, x)| amb.field(x)));
    if field_basis.dim() != n {
        return Err(Error::Model("supertranslations are linearly dependent".into()));
    }
    let charge_sets = index_sets(st.d, p);
    let charges: Vec<String> = charge_sets.iter().map(|s| charge_label(s)).collect();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j || fields[i].1.parity().is_odd())
        .collect();
    let computed: Vec<(usize, usize, SparseVec, SparseVec)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (&fields[i].1, &fields[j].1);
            let br = m.bracket(x, y)?;
            let coords = field_basis.coordinates(&amb.field(&br)).ok_or_else(|| {
                Error::NotClosedUnderBracket(format!("[{}, {}]", fields[i].0, fields[j].0))
            })?;
            // ι_{X∧Y} ω = −ι_X ι_Y ω
            let c = if contracted[j].degree() == 0 {
                FormElement::zero(0)
            } else {
                m.contract(x, &contracted[j])?.neg()
            };
            // ([X, Y], ι_{X∧Y} ω) must be a Hamiltonian pair
            let mut res = if c.is_zero() { FormElement::zero(p + 1) } else { m.differential(&c)? };
            for (k, a) in coords.iter() {
                res.axpy(a, &contracted[*k]);
            }
            if !res.is_zero() {
                return Err(Error::NotHamiltonian(format!(
                    "ι_[{0},{1}] ω + d ι_{{{0}∧{1}}} ω = {2}",
                    fields[i].0,
                    fields[j].0,
                    m.format(&res)
                )));
            }
            let cls = class_coordinates(&st, &charge_sets, &c)?;
            Ok((i, j, coords, cls))
        })
        .collect::<Result<_>>()?;

    let labels: Vec<String> = fields.iter().map(|(l, _)| l.clone()).collect();
    let parities: Vec<Parity> = fields.iter().map(|(_, x)| x.parity()).collect();
    let base = LieAlgebraPresentation::new(
        labels.clone(),
        parities.clone(),
        computed.iter().map(|(i, j, b, _)| (*i, *j, b.clone())),
    )?;
    let mut ext_labels = labels;
    ext_labels.extend(charges.iter().map(|c| format!("[{c}]")));
    let mut ext_parities = parities;
    ext_parities.extend(std::iter::repeat_n(Parity::Even, charges.len()));
    let extended = LieAlgebraPresentation::new(
        ext_labels,
        ext_parities,
        computed.iter().map(|(i, j, b, c)| {
            let mut v = b.clone();
            v.axpy(&Rational::one(), &c.remap(|k| Some(n + k)));
            (*i, *j, v)
        }),
    )?;
    let central = (n..extended.dim()).all(|k| extended.is_central(k));
    let cocycle = computed
        .into_iter()
        .filter(|(_, _, _, c)| !c.is_zero())
        .map(|(i, j, _, c)| ((i, j), c))
        .collect();
    Ok(ChargeExtension {
        d: st.d,
        spinors: sm.choice,
        p,
        base,
        charges,
        charge_sets,
        cocycle,
        extended,
        hamiltonian: true,
        potentials_checked,
        central,
    })
}

/// Symmetric `N × N` matrix of the odd/odd bracket on a background.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeMatrix {
    rows: Vec<Vec<Rational>>,
}

impl ChargeMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("charge matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::Model(format!("charge matrix not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(ChargeMatrix { rows })
    }

    pub fn zero(n: usize) -> Self {
        ChargeMatrix { rows: vec![vec![Rational::zero(); n]; n] }
    }

    /// `Σ c · C Γ_{A}` over lower multi-indices `A`.
    pub fn c_gamma_sum(rep: &GammaRep, terms: &[(Vec<usize>, Rational)]) -> Result<Self> {
        let n = rep.n;
        let mut rows = vec![vec![Rational::zero(); n]; n];
        for (set, c) in terms {
            let g = rep.c_gamma(set)?;
            for (i, row) in rows.iter_mut().enumerate() {
                for (j, x) in row.iter_mut().enumerate() {
                    let v = g.get(i, j);
                    if v != 0 {
                        x.add_mul(c, &Rational::from_int(v));
                    }
                }
            }
        }
        Self::new(rows)
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    fn matrix(&self) -> SparseMatrix {
        let n = self.dim();
        SparseMatrix::from_rows(n, self.rows.iter().map(|r| SparseVec::from_dense(r)).collect())
            .expect("square rows")
    }

    /// `Aᵀ M A`.
    pub fn congruent(&self, a: &[Vec<Rational>]) -> Result<Self> {
        let n = self.dim();
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("change of basis must be N × N".into()));
        }
        let mut ma = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    ma[i][j].add_mul(&self.rows[i][k], &a[k][j]);
                }
            }
        }
        let mut out = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if a[k][i].is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i][j].add_mul(&a[k][i], &ma[k][j]);
                }
            }
        }
        Self::new(out)
    }
}

/// Preserved supersymmetry: `ker M` inside the odd part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpsFraction {
    pub n: usize,
    pub kernel_dim: usize,
    pub fraction: Rational,
    /// Spinors spanning the embedded odd subalgebra; they bracket to zero.
    pub kernel: Vec<Vec<Rational>>,
    pub brackets_vanish: bool,
}

pub fn bps_fraction(m: &ChargeMatrix) -> BpsFraction {
    let n = m.dim();
    let mat = m.matrix();
    let ker = kernel(&mat);
    let brackets_vanish = ker.iter().all(|v| {
        let mv = mat.mul_vec(v);
        ker.iter().all(|w| mv.dot(w).is_zero())
    });
    BpsFraction {
        n,
        kernel_dim: ker.len(),
        fraction: if n == 0 { Rational::one() } else { Rational::new(ker.len() as i64, n as i64) },
        kernel: ker.iter().map(|v| v.to_dense(n)).collect(),
        brackets_vanish,
    }
}

/// Ratio `λ` with `c(Q_α, Q_β)|_{[e^a e^b]} = λ (C Γ_{ab})_{αβ}` for one index pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MembraneComponent {
    pub indices: (usize, usize),
    pub ratio: Option<Rational>,
}

/// The 32-spinor bracket shape in d = 11.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MAlgebraReport {
    pub symmetry: BTreeMap<usize, Symmetry>,
    pub sym2: Sym2Report,
    /// Every odd/odd membrane component is a nonzero multiple of `C Γ_{ab}`.
    pub membrane_proportional: bool,
    /// Distinct values of `λ` over all index pairs.
    pub membrane_ratios: Vec<Rational>,
    pub components: Vec<MembraneComponent>,
    /// The odd/odd cocycle vanishes wherever `C Γ_{ab}` does.
    pub vanishes_with_c_gamma: bool,
    pub fivebrane_note: String,
}

fn ratio(component: &[Vec<Rational>], target: &[Vec<i64>]) -> Option<Rational> {
    let mut lambda: Option<Rational> = None;
    for (crow, trow) in component.iter().zip(target) {
        for (c, &t) in crow.iter().zip(trow) {
            if t == 0 {
                if !c.is_zero() {
                    return None;
                }
                continue;
            }
            let r = c / &Rational::from_int(t);
            match &lambda {
                None => lambda = Some(r),
                Some(l) if *l != r => return None,
                _ => {}
            }
        }
    }
    lambda.filter(|l| !l.is_zero())
}

pub fn m_algebra_report(sm: &SuperMinkowskiModel) -> Result<MAlgebraReport> {
    let ext = bps_extension(sm, 2, BpsOptions::default())?;
    m_algebra_report_for(sm, &ext)
}

/// As [`m_algebra_report`], reusing a computed `p = 2` extension.
pub fn m_algebra_report_for(sm: &SuperMinkowskiModel, ext: &ChargeExtension) -> Result<MAlgebraReport> {
    if sm.d != 11 || sm.choice != SpinorChoice::Majorana {
        return Err(Error::UnsupportedDimension { d: sm.d, reason: "the M-algebra report is for d = 11 Majorana".into() });
    }
    if ext.d != 11 || ext.p != 2 {
        return Err(Error::Model("the M-algebra report needs the d = 11, p = 2 extension".into()));
    }
    let rep = &sm.rep;
    let mut symmetry = BTreeMap::new();
    for k in [1, 2, 5] {
        symmetry.insert(k, rep.bilinear_symmetry(k)?);
    }
    let sym2 = rep.sym2_decomposition(&[1, 2, 5])?;
    let mut components = Vec::new();
    let mut vanishes_with_c_gamma = true;
    for set in index_sets(11, 2) {
        let k = ext.charge_index(&set).expect("charge for every pair");
        let comp = ext.odd_odd_component(k);
        let target = rep.c_gamma(&set)?.rows();
        let zero_target = target.iter().all(|r| r.iter().all(|x| *x == 0));
        if zero_target {
            vanishes_with_c_gamma &= comp.iter().all(|r| r.iter().all(|x| x.is_zero()));
        }
        components.push(MembraneComponent { indices: (set[0], set[1]), ratio: ratio(&comp, &target) });
    }
    let membrane_proportional = components.iter().all(|c| c.ratio.is_some());
    let mut membrane_ratios: Vec<Rational> = components.iter().filter_map(|c| c.ratio.clone()).collect();
    membrane_ratios.sort_by_key(|r| r.to_string());
    membrane_ratios.dedup();
    Ok(MAlgebraReport {
        symmetry,
        sym2,
        membrane_proportional,
        membrane_ratios,
        components,
        vanishes_with_c_gamma,
        fivebrane_note: "C Γ^(5) is symmetric and completes Sym² of the spinors; the 5-form charge is \
                         certified by symmetry and span only, its cocycle needs the extended algebra"
            .into(),
    })
}

/// Odd/odd bracket on a momentum and membrane background,
/// `M = Σ P_a C Γ_a + Σ Z_{ab} C Γ_{ab}`.
pub fn charge_matrix(
    rep: &GammaRep,
    momentum: &[(usize, Rational)],
    membrane: &[((usize, usize), Rational)],
) -> Result<ChargeMatrix> {
    let mut terms: Vec<(Vec<usize>, Rational)> = momentum.iter().map(|(a, c)| (vec![*a], c.clone())).collect();
    terms.extend(membrane.iter().map(|((a, b), c)| (vec![*a, *b], c.clone())));
    ChargeMatrix::c_gamma_sum(rep, &terms)
}

#[cfg(test)]
mod tests;
