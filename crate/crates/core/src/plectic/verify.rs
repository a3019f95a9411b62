use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::{rank_of, SparseMatrix, SparseVec};
use crate::forms::{DegreeBasis, FormElement, VectorField};

use super::linfty::{basis_labels, koszul_odd};
use super::{
    format_field, hamiltonian_pairs, sign, wedge_contract, Ambient, LInfinity, Observable,
    ObservableJson, PlecticStructure, SearchSpace,
};

/// Sorted index tuples of length `k` over `items`, repeating an item only
/// when it is graded-symmetric with itself (`ε(x, x) = −1`); for the other
/// items a repeat makes every bracket vanish.
pub(crate) fn multisets(items: &[&Observable], k: usize) -> Vec<Vec<usize>> {
    let repeatable: Vec<bool> = items.iter().map(|x| koszul_odd(x, x)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, k: usize, rep: &[bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..rep.len() {
            cur.push(i);
            rec(if rep[i] { i } else { i + 1 }, k, rep, cur, out);
            cur.pop();
        }
    }
    rec(0, k, &repeatable, &mut cur, &mut out);
    out
}

/// `χ(σ)` for the unshuffle moving positions `front` (increasing) ahead of
/// the rest: one factor `−ε` per inverted pair.
fn unshuffle_odd(xs: &[&Observable], front: &[usize]) -> bool {
    let mut odd = false;
    let mut in_front = vec![false; xs.len()];
    for &i in front {
        in_front[i] = true;
    }
    for &b in front {
        for a in 0..b {
            if !in_front[a] {
                odd ^= !koszul_odd(xs[a], xs[b]);
            }
        }
    }
    odd
}

fn subsets(m: usize, i: usize) -> Vec<Vec<usize>> {
    (0u32..1 << m)
        .filter(|mask| mask.count_ones() as usize == i)
        .map(|mask| (0..m).filter(|b| mask >> b & 1 == 1).collect())
        .collect()
}

/// `Σ_{i+j=m+1} Σ_σ χ(σ) (−1)^{i(j−1)} l_j(l_i(x_σ(1..i)), x_σ(i+1..m))`.
/// Returns whether any inner bracket was nonzero, and the nonzero value.
fn jacobiator<A: LInfinity + ?Sized>(alg: &A, xs: &[&Observable]) -> Result<(bool, Option<Observable>)> {
    let m = xs.len();
    let mut acc: Option<Observable> = None;
    let mut nontrivial = false;
    for i in 1..=m {
        let j = m + 1 - i;
        if (i > 1 && i > alg.max_arity()) || (j > 1 && j > alg.max_arity()) {
            continue;
        }
        for front in subsets(m, i) {
            let inner_args: Vec<&Observable> = front.iter().map(|k| xs[*k]).collect();
            let inner = if i == 1 { alg.unary(inner_args[0])? } else { alg.bracket(&inner_args)? };
            let Some(inner) = inner else { continue };
            if inner.is_zero() {
                continue;
            }
            nontrivial = true;
            let rest: Vec<&Observable> = (0..m).filter(|k| !front.contains(k)).map(|k| xs[k]).collect();
            let outer = if j == 1 {
                alg.unary(&inner)?
            } else {
                let mut args = Vec::with_capacity(j);
                args.push(&inner);
                args.extend(rest);
                alg.bracket(&args)?
            };
            let Some(outer) = outer else { continue };
            let odd = unshuffle_odd(xs, &front) ^ (i * (j - 1) % 2 == 1);
            match &mut acc {
                Some(a) if a.degree() == outer.degree() => a.axpy(&sign(odd), &outer),
                Some(_) => unreachable!("all terms of an identity share a degree"),
                None => acc = Some(outer.scaled(&sign(odd))),
            }
        }
    }
    Ok((nontrivial, acc.filter(|a| !a.is_zero())))
}

/// One generalized Jacobi identity on a basis tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub arity: usize,
    pub inputs: Vec<String>,
    pub passed: bool,
    /// Nonzero value of the identity on failure.
    pub residual: Option<ObservableJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArityCount {
    pub arity: usize,
    pub checked: usize,
    pub failed: usize,
    /// Tuples on which at least one term was nonzero.
    pub nontrivial: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinftyReport {
    pub algebra: String,
    pub p: usize,
    pub max_arity: usize,
    pub basis: std::collections::BTreeMap<usize, Vec<String>>,
    /// Basis elements skipped because every bracket involving them vanishes.
    pub inert: Vec<String>,
    pub per_arity: Vec<ArityCount>,
    /// Graded antisymmetry checked by swapping adjacent inputs of nonzero brackets.
    pub antisymmetry_checked: usize,
    pub antisymmetry_failed: usize,
    pub failures: Vec<IdentityCheck>,
    pub passed: bool,
}

/// Checks the generalized Jacobi identities of arities `1..=max_arity` on
/// every sorted tuple of non-inert basis elements.
pub fn verify_linfty<A: LInfinity + ?Sized>(alg: &A, max_arity: usize) -> Result<LinftyReport> {
    let m = alg.model();
    let mut live: Vec<(&str, &Observable)> = Vec::new();
    let mut inert = Vec::new();
    for level in alg.basis() {
        for (label, x) in level {
            if alg.is_inert(x)? {
                inert.push(label.clone());
            } else {
                live.push((label.as_str(), x));
            }
        }
    }
    let items: Vec<&Observable> = live.iter().map(|(_, x)| *x).collect();
    let mut per_arity = Vec::new();
    let mut failures = Vec::new();
    for arity in 1..=max_arity.max(1) {
        let tuples = multisets(&items, arity);
        let results: Vec<Result<(bool, Option<Observable>)>> = tuples
            .par_iter()
            .map(|t| {
                let xs: Vec<&Observable> = t.iter().map(|i| items[*i]).collect();
                jacobiator(alg, &xs)
            })
            .collect();
        let mut count = ArityCount { arity, checked: tuples.len(), failed: 0, nontrivial: 0 };
        for (t, r) in tuples.iter().zip(results) {
            let (nontrivial, residual) = r?;
            count.nontrivial += nontrivial as usize;
            if let Some(res) = residual {
                count.failed += 1;
                failures.push(IdentityCheck {
                    arity,
                    inputs: t.iter().map(|i| live[*i].0.to_string()).collect(),
                    passed: false,
                    residual: Some(res.to_json(m)),
                });
            }
        }
        per_arity.push(count);
    }
    let (antisymmetry_checked, antisymmetry_failed) = antisymmetry(alg, &items, max_arity)?;
    let passed = failures.is_empty() && antisymmetry_failed == 0;
    Ok(LinftyReport {
        algebra: alg.name().into(),
        p: alg.p(),
        max_arity,
        basis: basis_labels(alg),
        inert,
        per_arity,
        antisymmetry_checked,
        antisymmetry_failed,
        failures,
        passed,
    })
}

fn antisymmetry<A: LInfinity + ?Sized>(alg: &A, items: &[&Observable], max_arity: usize) -> Result<(usize, usize)> {
    let deg0: Vec<&Observable> = items.iter().copied().filter(|x| x.degree() == 0).collect();
    let (mut checked, mut failed) = (0, 0);
    for k in 2..=max_arity.min(alg.max_arity()).min(3) {
        for t in multisets(&deg0, k) {
            let xs: Vec<&Observable> = t.iter().map(|i| deg0[*i]).collect();
            let Some(v) = alg.bracket(&xs)? else { continue };
            for s in 0..k - 1 {
                let mut ys = xs.clone();
                ys.swap(s, s + 1);
                let w = alg.bracket(&ys)?.unwrap_or_else(|| Observable::zero(v.degree(), alg.p()));
                let mut sum = v.clone();
                sum.axpy(&sign(koszul_odd(xs[s], xs[s + 1])), &w);
                checked += 1;
                failed += !sum.is_zero() as usize;
            }
        }
    }
    Ok((checked, failed))
}

/// `ω_[k](v_1, …, v_k) = −(−1)^{k(k−1)/2} ι_{v_1∧⋯∧v_k} ω`, zero for `k > p + 2`.
pub fn kks_component(s: &PlecticStructure, vs: &[&VectorField]) -> Result<FormElement> {
    let k = vs.len();
    if k == 0 || k > s.p() + 2 {
        return Ok(FormElement::zero(0));
    }
    let c = wedge_contract(s.model(), vs, s.omega())?;
    Ok(if (k * (k - 1) / 2).is_multiple_of(2) { c.neg() } else { c })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KksReport {
    pub p: usize,
    pub fields: Vec<String>,
    pub max_arity: usize,
    pub per_arity: Vec<ArityCount>,
    pub failures: Vec<IdentityCheck>,
    pub passed: bool,
}

/// Checks the L∞-morphism equations of the KKS cocycle from the Lie algebra
/// spanned by `fields` into the truncated de Rham complex:
/// `Σ_{(2,m−2)-unshuffles} χ ω_[m−1]([v_a, v_b], …) = d ω_[m](v_1, …, v_m)`
/// for every sorted tuple with `m ≤ max_arity`.
pub fn kks_cocycle(s: &PlecticStructure, fields: &[(String, VectorField)], max_arity: usize) -> Result<KksReport> {
    let m = s.model();
    let obs: Vec<Observable> = fields
        .iter()
        .map(|(_, v)| Observable::pair(m, &super::HamiltonianPair { v: v.clone(), j: FormElement::zero(s.p()) }))
        .collect();
    let items: Vec<&Observable> = obs.iter().collect();
    let mut per_arity = Vec::new();
    let mut failures = Vec::new();
    for arity in 1..=max_arity {
        let tuples = multisets(&items, arity);
        let results: Vec<Result<FormElement>> = tuples
            .par_iter()
            .map(|t| {
                let xs: Vec<&Observable> = t.iter().map(|i| items[*i]).collect();
                kks_residual(s, &xs)
            })
            .collect();
        let mut count = ArityCount { arity, checked: tuples.len(), failed: 0, nontrivial: 0 };
        for (t, r) in tuples.iter().zip(results) {
            let r = r?;
            if !r.is_zero() {
                count.failed += 1;
                failures.push(IdentityCheck {
                    arity,
                    inputs: t.iter().map(|i| fields[*i].0.clone()).collect(),
                    passed: false,
                    residual: Some(ObservableJson { degree: arity - 1, field: "0".into(), form: m.format(&r) }),
                });
            }
        }
        per_arity.push(count);
    }
    Ok(KksReport {
        p: s.p(),
        fields: fields.iter().map(|(l, _)| l.clone()).collect(),
        max_arity,
        passed: failures.is_empty(),
        per_arity,
        failures,
    })
}

fn kks_residual(s: &PlecticStructure, xs: &[&Observable]) -> Result<FormElement> {
    let m = s.model();
    let n = xs.len();
    let vs: Vec<&VectorField> = xs.iter().map(|x| x.field()).collect();
    let top = kks_component(s, &vs)?;
    let mut acc = if top.is_zero() { FormElement::zero(0) } else { m.differential(&top)?.neg() };
    for front in subsets(n, 2) {
        let br = m.bracket(vs[front[0]], vs[front[1]])?;
        if br.is_zero() {
            continue;
        }
        let mut args = vec![&br];
        args.extend((0..n).filter(|k| !front.contains(k)).map(|k| vs[k]));
        let val = kks_component(s, &args)?;
        if val.is_zero() {
            continue;
        }
        let c = sign(unshuffle_odd(xs, &front));
        if acc.is_zero() {
            acc = val.scaled(&c);
        } else {
            acc.axpy(&c, &val);
        }
    }
    Ok(acc)
}

/// Degreewise exactness of `0 → closed forms → Pois_∞ → Vect_Ham → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    pub p: usize,
    pub pairs: usize,
    /// Rank of `(v, J) ↦ v` on the pair basis.
    pub projection_rank: usize,
    /// Hamiltonian fields in the search space, counted without the pairs:
    /// `dim F + rank d − rank [ι_• ω | d]`.
    pub hamiltonian_fields: usize,
    pub kernel: usize,
    pub closed_forms: usize,
    pub kernel_is_closed_forms: bool,
    pub surjective: bool,
    /// `(degree, dimension)` of the positive degrees, where the inclusion is the identity.
    pub positive_degrees: Vec<(usize, usize)>,
    pub exact: bool,
    pub fields: Vec<String>,
}

pub fn extension_sequence_check(s: &PlecticStructure, space: &SearchSpace) -> Result<ExtensionReport> {
    let m = s.model();
    let fields = space.fields(m)?;
    let pairs = hamiltonian_pairs(s, space)?;
    let amb = Ambient::new();
    let projections: Vec<SparseVec> = pairs.pairs.iter().map(|p| amb.field(&p.v)).collect();
    let projection_rank = rank_of(&projections);

    let jb = DegreeBasis::new(m, s.p())?;
    let target = DegreeBasis::new(m, s.p() + 1)?;
    let dcols: Vec<SparseVec> = (0..jb.len())
        .map(|i| target.coordinates(&m.differential(&jb.basis_element(i))?))
        .collect::<Result<_>>()?;
    let icols: Vec<SparseVec> = fields
        .iter()
        .map(|(_, v)| target.coordinates(&m.contract(v, s.omega())?))
        .collect::<Result<_>>()?;
    let rank_d = rank_of(&dcols);
    let mut both = icols.clone();
    both.extend(dcols.iter().cloned());
    let hamiltonian_fields = fields.len() + rank_d - rank_of(&both);
    let closed_forms = jb.len() - rank_d;

    // kernel of the projection, in pair coordinates
    let proj = SparseMatrix::from_columns(amb_len(&projections), &projections)?;
    let kernel_vecs = crate::exact::kernel(&proj);
    let mut kernel_is_closed_forms = kernel_vecs.len() == closed_forms;
    for k in &kernel_vecs {
        let mut j = FormElement::zero(s.p());
        for (i, c) in k.iter() {
            j.axpy(c, &pairs.pairs[*i].j);
        }
        kernel_is_closed_forms &= m.differential(&j)?.is_zero();
    }
    let surjective = projection_rank == hamiltonian_fields;
    let mut positive_degrees = Vec::new();
    for i in 1..=s.p() {
        positive_degrees.push((i, DegreeBasis::new(m, s.p() - i)?.len()));
    }
    Ok(ExtensionReport {
        p: s.p(),
        pairs: pairs.len(),
        projection_rank,
        hamiltonian_fields,
        kernel: kernel_vecs.len(),
        closed_forms,
        kernel_is_closed_forms,
        surjective,
        positive_degrees,
        exact: kernel_is_closed_forms && surjective,
        fields: pairs
            .section()
            .iter()
            .map(|p| format_field(m, &p.v))
            .collect(),
    })
}

fn amb_len(vs: &[SparseVec]) -> usize {
    vs.iter().filter_map(|v| v.max_index()).max().map_or(0, |i| i + 1)
}
