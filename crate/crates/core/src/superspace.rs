//! Super-Minkowski Chevalley-Eilenberg models and brane cocycles.
//!
//! Generators are `e0..e{d-1}` (degree 1, even) and `psi0..psi{N-1}`
//! (degree 1, odd) with `d e^a = ψ^α (CΓ^a)_{αβ} ψ^β` and `dψ = 0`. The
//! super-torus variant adds odd coordinates `th0..` with `d θ^α = ψ^α`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::clifford::{build_majorana_rep, GammaRep, IntMatrix};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::forms::{
    cohomology, CohomologyGroup, FormElement, Generator, GeometricModel, ModelKind, Monomial, Parity,
    VectorField,
};

/// Which spinors generate the odd part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpinorChoice {
    /// The full real module.
    #[serde(rename = "majorana")]
    Majorana,
    /// One chirality (even d only).
    #[serde(rename = "(1,0)")]
    Chiral,
    /// Two copies of one chirality, e.g. type IIB in d=10.
    #[serde(rename = "(2,0)")]
    ChiralDoublet,
}

impl SpinorChoice {
    pub fn label(self) -> &'static str {
        match self {
            SpinorChoice::Majorana => "majorana",
            SpinorChoice::Chiral => "(1,0)",
            SpinorChoice::ChiralDoublet => "(2,0)",
        }
    }
}

impl std::str::FromStr for SpinorChoice {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "majorana" | "1" => Ok(SpinorChoice::Majorana),
            "(1,0)" | "1,0" | "chiral" => Ok(SpinorChoice::Chiral),
            "(2,0)" | "2,0" | "iib" => Ok(SpinorChoice::ChiralDoublet),
            _ => Err(Error::Parse(format!("unknown spinor choice `{s}`"))),
        }
    }
}

/// Super-Minkowski spacetime as a CE model.
#[derive(Clone, Debug)]
pub struct SuperMinkowskiModel {
    pub d: usize,
    pub choice: SpinorChoice,
    pub rep: GammaRep,
    /// Columns spanning the spinor block inside the rep (identity for
    /// Majorana, a chiral eigenbasis otherwise).
    block: Vec<Vec<i64>>,
    /// `M^a = η^{aa} (C Γ_a)` restricted to the odd generators.
    translation_bilinears: Vec<Vec<Vec<i64>>>,
    pub model: GeometricModel,
}

fn transpose_mul_mul(u: &[Vec<i64>], m: &IntMatrix) -> Vec<Vec<i64>> {
    let k = u.len();
    let n = m.dim();
    let mu: Vec<Vec<i64>> = u
        .iter()
        .map(|col| (0..n).map(|r| (0..n).map(|c| m.get(r, c) * col[c]).sum()).collect())
        .collect();
    (0..k)
        .map(|i| (0..k).map(|j| (0..n).map(|r| u[i][r] * mu[j][r]).sum()).collect())
        .collect()
}

fn kron2(doublet: [[i64; 2]; 2], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = b.len();
    let mut out = vec![vec![0; 2 * k]; 2 * k];
    for (i, row) in doublet.iter().enumerate() {
        for (j, &dij) in row.iter().enumerate() {
            for a in 0..k {
                for c in 0..k {
                    out[i * k + a][j * k + c] = dij * b[a][c];
                }
            }
        }
    }
    out
}

const IDENTITY2: [[i64; 2]; 2] = [[1, 0], [0, 1]];
const SIGMA3: [[i64; 2]; 2] = [[1, 0], [0, -1]];

impl SuperMinkowskiModel {
    pub fn build(d: usize, choice: SpinorChoice) -> Result<Self> {
        Self::from_rep(build_majorana_rep(d)?, choice)
    }

    pub fn from_rep(rep: GammaRep, choice: SpinorChoice) -> Result<Self> {
        let d = rep.d;
        let block: Vec<Vec<i64>> = match choice {
            SpinorChoice::Majorana => (0..rep.n)
                .map(|i| (0..rep.n).map(|j| i64::from(i == j)).collect())
                .collect(),
            SpinorChoice::Chiral | SpinorChoice::ChiralDoublet => rep.chiral_basis(true)?,
        };
        let mut translation_bilinears = Vec::with_capacity(d);
        for a in 0..d {
            let m: Vec<Vec<i64>> = restrict(&rep, &block, choice, &[a], IDENTITY2)?
                .into_iter()
                .map(|row| row.into_iter().map(|x| x * rep.eta[a]).collect())
                .collect();
            let symmetric = (0..m.len()).all(|i| (0..m.len()).all(|j| m[i][j] == m[j][i]));
            if !symmetric {
                return Err(Error::Model(format!(
                    "d e{a}: C Γ^{a} is not symmetric, so ψ̄Γ^aψ vanishes for commuting ψ"
                )));
            }
            if m.iter().all(|row| row.iter().all(|&x| x == 0)) {
                return Err(Error::Model(format!("d e{a} vanishes on the chosen spinors")));
            }
            translation_bilinears.push(m);
        }
        let model = ce_model(d, &translation_bilinears, false)?;
        Ok(SuperMinkowskiModel { d, choice, rep, block, translation_bilinears, model })
    }

    /// Number of odd generators.
    pub fn n_odd(&self) -> usize {
        match self.choice {
            SpinorChoice::ChiralDoublet => 2 * self.block.len(),
            _ => self.block.len(),
        }
    }

    /// `C Γ_A` on the odd generators, with `doublet` acting on the copy
    /// index for the (2,0) choice.
    pub fn block_bilinear(&self, lower: &[usize], doublet: [[i64; 2]; 2]) -> Result<Vec<Vec<i64>>> {
        restrict(&self.rep, &self.block, self.choice, lower, doublet)
    }

    pub fn translation_bilinear(&self, a: usize) -> &[Vec<i64>] {
        &self.translation_bilinears[a]
    }

    pub fn e(&self, a: usize) -> usize {
        a
    }

    pub fn psi(&self, alpha: usize) -> usize {
        self.d + alpha
    }

    /// `ψ^α m_{αβ} ψ^β` as a 2-form in a model whose odd generators start at
    /// index `d`.
    pub fn bilinear(&self, m: &[Vec<i64>]) -> FormElement {
        bilinear_element(self.model.ngens(), self.d, m)
    }

    /// Doublet matrix used by the cocycle for the (2,0) choice.
    pub fn cocycle_doublet(&self) -> [[i64; 2]; 2] {
        SIGMA3
    }

    /// `ω = ψ̄ Γ_{a1…ap} ψ e^{a1} ⋯ e^{ap}`, summed over `a1 < … < ap`.
    pub fn wzw_cocycle(&self, p: usize) -> Result<FormElement> {
        if p > self.d {
            return Err(Error::IndexOutOfRange { index: p, dim: self.d });
        }
        let ng = self.model.ngens();
        let mut out = FormElement::zero(p + 2);
        for set in index_sets(self.d, p) {
            let b = self.block_bilinear(&set, self.cocycle_doublet())?;
            let bil = self.bilinear(&b);
            if bil.is_zero() {
                continue;
            }
            let mut e = vec![0u8; ng];
            for &a in &set {
                e[a] = 1;
            }
            let es = element_from(p, [(Monomial::from_exponents(e), Rational::one())]);
            out.axpy(&Rational::one(), &self.model.wedge(&bil, &es)?);
        }
        Ok(out)
    }

    /// `(dω == 0, dω)`.
    pub fn is_closed(&self, form: &FormElement) -> Result<(bool, FormElement)> {
        let r = self.model.differential(form)?;
        Ok((r.is_zero(), r))
    }

    pub fn ce_cohomology(&self, n: usize) -> Result<CohomologyGroup> {
        cohomology(&self.model, n)
    }

    /// Lorentz generator `M_{ab}` as an even derivation:
    /// `e^c ↦ δ^c_a η_{bb} e^b − δ^c_b η_{aa} e^a`, `ψ ↦ ½ Γ_a Γ_b ψ`.
    pub fn lorentz_images(&self, a: usize, b: usize) -> Result<Vec<Option<FormElement>>> {
        if a == b || a >= self.d || b >= self.d {
            return Err(Error::Model(format!("invalid Lorentz pair ({a},{b})")));
        }
        if self.choice != SpinorChoice::Majorana {
            return Err(Error::Model("Lorentz action implemented for Majorana spinors only".into()));
        }
        let ng = self.model.ngens();
        let mut images: Vec<Option<FormElement>> = vec![None; ng];
        let eta = &self.rep.eta;
        images[a] = Some(self.model.generator_at(b).scaled(&Rational::from_int(eta[b])));
        images[b] = Some(self.model.generator_at(a).scaled(&Rational::from_int(-eta[a])));
        let s = self.rep.gamma[a].mul(&self.rep.gamma[b]);
        let half = Rational::new(1, 2);
        for alpha in 0..self.n_odd() {
            let mut img = FormElement::zero(1);
            for beta in 0..self.n_odd() {
                let c = s.get(alpha, beta);
                if c != 0 {
                    img.axpy(&(&half * &Rational::from_int(c)), &self.model.generator_at(self.psi(beta)));
                }
            }
            images[self.psi(alpha)] = Some(img);
        }
        Ok(images)
    }

    pub fn super_torus(&self) -> Result<SuperTorus> {
        SuperTorus::new(self)
    }
}

fn ce_model(d: usize, bilinears: &[Vec<Vec<i64>>], with_theta: bool) -> Result<GeometricModel> {
    let n = bilinears[0].len();
    let mut gens: Vec<Generator> =
        (0..d).map(|a| Generator::new(format!("e{a}"), 1, Parity::Even).with_weight(2)).collect();
    gens.extend((0..n).map(|a| Generator::new(format!("psi{a}"), 1, Parity::Odd)));
    if with_theta {
        gens.extend((0..n).map(|a| Generator::new(format!("th{a}"), 0, Parity::Odd)));
    }
    let total = gens.len();
    let mut diff = Vec::with_capacity(total);
    for a in 0..d {
        diff.push(bilinear_element(total, d, &bilinears[a]));
    }
    for _ in 0..n {
        diff.push(FormElement::zero(2));
    }
    if with_theta {
        for a in 0..n {
            let mut e = vec![0u8; total];
            e[d + a] = 1;
            diff.push(element_from(1, [(Monomial::from_exponents(e), Rational::one())]));
        }
    }
    let kind = if with_theta { ModelKind::SuperTorus } else { ModelKind::Ce };
    GeometricModel::new(kind, gens, diff, None)
}

fn restrict(
    rep: &GammaRep,
    block: &[Vec<i64>],
    choice: SpinorChoice,
    lower: &[usize],
    doublet: [[i64; 2]; 2],
) -> Result<Vec<Vec<i64>>> {
    let b = transpose_mul_mul(block, &rep.c_gamma(lower)?);
    Ok(match choice {
        SpinorChoice::ChiralDoublet => kron2(doublet, &b),
        _ => b,
    })
}

fn element_from(degree: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> FormElement {
    let mut out = FormElement::zero(degree);
    for (m, c) in terms {
        out.axpy(&Rational::one(), &single(degree, m, c));
    }
    out
}

fn single(degree: usize, m: Monomial, c: Rational) -> FormElement {
    let mut map = std::collections::BTreeMap::new();
    map.insert(m, c);
    FormElement::from_map(degree, map)
}

fn bilinear_element(ngens: usize, offset: usize, m: &[Vec<i64>]) -> FormElement {
    let mut out = FormElement::zero(2);
    let n = m.len();
    for i in 0..n {
        for j in i..n {
            let c = if i == j { m[i][i] } else { m[i][j] + m[j][i] };
            if c == 0 {
                continue;
            }
            let mut e = vec![0u8; ngens];
            e[offset + i] += 1;
            e[offset + j] += 1;
            out.axpy(&Rational::one(), &single(2, Monomial::from_exponents(e), Rational::from_int(c)));
        }
    }
    out
}

pub(crate) fn index_sets(d: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in start..d {
            cur.push(a);
            rec(a + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, d, k, &mut Vec::new(), &mut out);
    out
}

/// Super-Minkowski forms extended by odd coordinates `θ` with `dθ = ψ`.
///
/// Its cohomology is the exterior algebra on the closed 1-forms
/// `ξ^a = e^a − θ^α M^a_{αβ} ψ^β`; a closed form is exact iff its pure-`e`
/// part vanishes. Supertranslations act by
/// `ι_{P_a} e^b = δ^b_a` and `ι_{Q_α} ψ^β = δ^β_α`, `ι_{Q_α} e^a = −2 (M^a θ)_α`.
#[derive(Clone, Debug)]
pub struct SuperTorus {
    pub d: usize,
    pub n_odd: usize,
    pub model: GeometricModel,
    bilinears: Vec<Vec<Vec<i64>>>,
}

impl SuperTorus {
    fn new(sm: &SuperMinkowskiModel) -> Result<Self> {
        Ok(SuperTorus {
            d: sm.d,
            n_odd: sm.n_odd(),
            model: ce_model(sm.d, &sm.translation_bilinears, true)?,
            bilinears: sm.translation_bilinears.clone(),
        })
    }

    pub fn theta(&self, alpha: usize) -> usize {
        self.d + self.n_odd + alpha
    }

    pub fn psi(&self, alpha: usize) -> usize {
        self.d + alpha
    }

    /// `P_a`, `a < d`.
    pub fn translation(&self, a: usize) -> Result<VectorField> {
        self.model.dual_field(&format!("e{a}"))
    }

    /// `Q_α`.
    pub fn supercharge(&self, alpha: usize) -> Result<VectorField> {
        let mut values = vec![(format!("psi{alpha}"), self.model.one())];
        for a in 0..self.d {
            let mut val = FormElement::zero(0);
            for beta in 0..self.n_odd {
                let c = self.bilinears[a][alpha][beta];
                if c != 0 {
                    val.axpy(&Rational::from_int(-2 * c), &self.model.generator_at(self.theta(beta)));
                }
            }
            values.push((format!("e{a}"), val));
        }
        self.model.vector_field(
            Parity::Odd,
            values.iter().map(|(n, v)| (n.as_str(), v.clone())).collect(),
        )
    }

    /// Supertranslation basis `P_0..P_{d-1}, Q_0..Q_{N-1}` with labels.
    pub fn supertranslations(&self) -> Result<Vec<(String, VectorField)>> {
        let mut out = Vec::with_capacity(self.d + self.n_odd);
        for a in 0..self.d {
            out.push((format!("P{a}"), self.translation(a)?));
        }
        for alpha in 0..self.n_odd {
            out.push((format!("Q{alpha}"), self.supercharge(alpha)?));
        }
        Ok(out)
    }

    /// `e^a ↦ e^a + sign · θ^α M^a_{αβ} ψ^β`, other generators fixed.
    fn shift(&self, sign: i64) -> Vec<FormElement> {
        let m = &self.model;
        let mut images: Vec<FormElement> = (0..m.ngens()).map(|i| m.generator_at(i)).collect();
        for a in 0..self.d {
            let mut img = images[a].clone();
            for alpha in 0..self.n_odd {
                for beta in 0..self.n_odd {
                    let c = self.bilinears[a][alpha][beta];
                    if c == 0 {
                        continue;
                    }
                    let mut e = vec![0u8; m.ngens()];
                    e[self.theta(alpha)] = 1;
                    e[self.psi(beta)] = 1;
                    // normalized order is ψ θ = −θ ψ
                    img.axpy(
                        &Rational::from_int(-sign * c),
                        &single(1, Monomial::from_exponents(e), Rational::one()),
                    );
                }
            }
            images[a] = img;
        }
        images
    }

    /// Image of a super-Minkowski form (no `θ`) in the super-torus model.
    pub fn embed(&self, a: &FormElement) -> FormElement {
        let n = self.model.ngens();
        let terms = a.terms().map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            e.resize(n, 0);
            (Monomial::from_exponents(e), c.clone())
        });
        element_from(a.degree(), terms)
    }

    /// Pure-`e` part of a closed form: its cohomology class in the basis of
    /// `ξ`-monomials.
    pub fn class_of(&self, a: &FormElement) -> FormElement {
        let keep: Vec<(Monomial, Rational)> = a
            .terms()
            .filter(|(m, _)| m.support().all(|(i, _)| i < self.d))
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        element_from(a.degree(), keep)
    }

    /// A primitive of a closed form with vanishing class, built with the
    /// homotopy `θ ∂/∂ψ` in `ξ`-coordinates and verified exactly.
    pub fn primitive(&self, beta: &FormElement) -> Result<FormElement> {
        let m = &self.model;
        if beta.degree() == 0 {
            return Err(Error::Model("primitive of a function requested".into()));
        }
        let closed = m.differential(beta)?;
        if !closed.is_zero() {
            return Err(Error::NotClosed { residual: m.format(&closed) });
        }
        let xi = m.substitute(beta, &self.shift(1))?;
        let mut h_images: Vec<Option<FormElement>> = vec![None; m.ngens()];
        for alpha in 0..self.n_odd {
            h_images[self.psi(alpha)] = Some(m.generator_at(self.theta(alpha)));
        }
        let mut by_count: std::collections::BTreeMap<usize, FormElement> = Default::default();
        for (mono, c) in xi.terms() {
            let count: usize = mono.support().filter(|(i, _)| *i >= self.d).map(|(_, e)| e as usize).sum();
            by_count
                .entry(count)
                .or_insert_with(|| FormElement::zero(xi.degree()))
                .axpy(&Rational::one(), &single(xi.degree(), mono.clone(), c.clone()));
        }
        if by_count.get(&0).is_some_and(|x| !x.is_zero()) {
            return Err(Error::NotHamiltonian(format!(
                "closed form has nonzero class {}",
                m.format(&by_count[&0])
            )));
        }
        let mut j = FormElement::zero(beta.degree() - 1);
        for (k, part) in &by_count {
            let h = m.derivation(part, part.degree() - 1, 1, 0, |i| h_images[i].as_ref())?;
            j.axpy(&Rational::new(1, *k as i64), &h);
        }
        let j = m.substitute(&j, &self.shift(-1))?;
        let check = m.differential(&j)?;
        if check != *beta {
            return Err(Error::Model(format!(
                "homotopy primitive failed: residual {}",
                m.format(&check.sub(beta))
            )));
        }
        Ok(j)
    }
}

/// One cell of a brane scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub d: usize,
    pub spinors: SpinorChoice,
    pub n: Option<usize>,
    pub p: usize,
    pub status: ScanStatus,
    /// Number of terms of ω.
    pub cocycle_terms: usize,
    /// Number of terms of dω.
    pub residual_terms: usize,
    /// Leading terms of a nonzero dω, or the error message.
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanStatus {
    Closed,
    /// The cocycle is the zero form (closed, but carries no brane).
    Vanishes,
    NotClosed,
    Error,
}

pub const MAX_SCAN_P: usize = 5;

fn choices_for(d: usize) -> Vec<SpinorChoice> {
    if d == 10 {
        vec![SpinorChoice::Chiral, SpinorChoice::ChiralDoublet]
    } else {
        vec![SpinorChoice::Majorana]
    }
}

fn witness(model: &GeometricModel, r: &FormElement) -> String {
    let mut s = String::new();
    for (i, (m, c)) in r.terms().enumerate() {
        if i == 3 {
            let _ = write!(s, " + … ({} terms)", r.len());
            break;
        }
        if i > 0 {
            s.push_str(" + ");
        }
        let _ = write!(s, "{c} {}", model.format_monomial(m));
    }
    s
}

pub fn scan_cell(d: usize, choice: SpinorChoice, p: usize) -> ScanRow {
    let mut row = ScanRow {
        d,
        spinors: choice,
        n: None,
        p,
        status: ScanStatus::Error,
        cocycle_terms: 0,
        residual_terms: 0,
        witness: None,
    };
    if p > MAX_SCAN_P {
        row.witness = Some(format!("p={p} outside scan limit {MAX_SCAN_P}"));
        return row;
    }
    let result = (|| -> Result<()> {
        let sm = SuperMinkowskiModel::build(d, choice)?;
        row.n = Some(sm.n_odd());
        let w = sm.wzw_cocycle(p)?;
        let (closed, r) = sm.is_closed(&w)?;
        row.cocycle_terms = w.len();
        row.residual_terms = r.len();
        row.status = if w.is_zero() {
            ScanStatus::Vanishes
        } else if closed {
            ScanStatus::Closed
        } else {
            row.witness = Some(witness(&sm.model, &r));
            ScanStatus::NotClosed
        };
        Ok(())
    })();
    if let Err(e) = result {
        row.status = ScanStatus::Error;
        row.witness = Some(e.to_string());
    }
    row
}

/// Closure of `ω_WZW` for every requested `(d, p)`, sorted by `(d, N, p)`.
/// Per-cell failures are recorded in the table.
pub fn brane_scan(d_list: &[usize], p_list: &[usize]) -> Vec<ScanRow> {
    use rayon::prelude::*;
    let mut ds = d_list.to_vec();
    ds.sort_unstable();
    ds.dedup();
    let mut ps = p_list.to_vec();
    ps.sort_unstable();
    ps.dedup();
    let cells: Vec<(usize, SpinorChoice, usize)> = ds
        .iter()
        .flat_map(|&d| choices_for(d).into_iter().map(move |c| (d, c)))
        .flat_map(|(d, c)| ps.iter().map(move |&p| (d, c, p)))
        .collect();
    cells.into_par_iter().map(|(d, c, p)| scan_cell(d, c, p)).collect()
}

pub fn format_scan(rows: &[ScanRow]) -> String {
    let header = ["d", "spinors", "N", "p", "status", "terms(ω)", "terms(dω)", "witness"];
    let body: Vec<[String; 8]> = rows
        .iter()
        .map(|r| {
            [
                r.d.to_string(),
                r.spinors.label().to_string(),
                r.n.map_or("-".into(), |n| n.to_string()),
                r.p.to_string(),
                serde_json::to_value(r.status)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
                r.cocycle_terms.to_string(),
                r.residual_terms.to_string(),
                r.witness.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for row in &body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<&str>, out: &mut String| {
        let parts: Vec<String> = cells
            .iter()
            .zip(widths.iter())
            .map(|(c, w)| format!("{c:<w$}", w = *w))
            .collect();
        out.push_str(parts.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec(), &mut out);
    for row in &body {
        line(row.iter().map(String::as_str).collect(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_counts() {
        for (d, choice, even, odd) in [
            (3, SpinorChoice::Majorana, 3, 2),
            (10, SpinorChoice::ChiralDoublet, 10, 32),
            (11, SpinorChoice::Majorana, 11, 32),
        ] {
            let sm = SuperMinkowskiModel::build(d, choice).unwrap();
            assert_eq!(sm.model.ngens(), even + odd);
            assert_eq!(sm.n_odd(), odd);
        }
    }

    #[test]
    fn named_cocycles() {
        let t = std::time::Instant::now();
        for (d, choice, p, expect) in [
            (3, SpinorChoice::Majorana, 1, ScanStatus::Closed),
            (4, SpinorChoice::Majorana, 2, ScanStatus::Closed),
            (10, SpinorChoice::Chiral, 1, ScanStatus::Closed),
            (10, SpinorChoice::ChiralDoublet, 1, ScanStatus::Closed),
            (11, SpinorChoice::Majorana, 2, ScanStatus::Closed),
        ] {
            let row = scan_cell(d, choice, p);
            assert_eq!(row.status, expect, "{row:?}");
        }
        eprintln!("{:?}", t.elapsed());
    }

    #[test]
    fn d3_lorentz_invariance() {
        let sm = SuperMinkowskiModel::build(3, SpinorChoice::Majorana).unwrap();
        let w = sm.wzw_cocycle(1).unwrap();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let img = sm.lorentz_images(a, b).unwrap();
            assert!(sm.model.even_derivation(&w, &img).unwrap().is_zero(), "M{a}{b}");
            for g in 0..sm.model.ngens() {
                let x = sm.model.generator_at(g);
                let lhs = sm.model.even_derivation(&sm.model.differential(&x).unwrap(), &img).unwrap();
                let rhs = sm.model.differential(&sm.model.even_derivation(&x, &img).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "M{a}{b} on generator {g}");
            }
        }
    }

    #[test]
    fn supertorus_supertranslations_are_hamiltonian() {
        let sm = SuperMinkowskiModel::build(3, SpinorChoice::Majorana).unwrap();
        let st = sm.super_torus().unwrap();
        let w = st.embed(&sm.wzw_cocycle(1).unwrap());
        for (label, x) in st.supertranslations().unwrap() {
            for g in 0..st.d + st.n_odd {
                let l = st.model.lie_derivative(&x, &st.model.generator_at(g)).unwrap();
                assert!(l.is_zero(), "L_{label} on generator {g}");
            }
            let beta = st.model.contract(&x, &w).unwrap().neg();
            let j = st.primitive(&beta).unwrap();
            assert_eq!(st.model.differential(&j).unwrap(), beta);
        }
        let xi = st.shift(-1)[0].clone();
        assert!(st.model.differential(&xi).unwrap().is_zero());
        assert!(matches!(st.primitive(&xi), Err(Error::NotHamiltonian(_))));
    }
}
