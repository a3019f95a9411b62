//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Tolerances are exact throughout (rational arithmetic, equality of ranks
//! and of byte strings). Criteria listed in `KNOWN_RED` are implemented
//! faithfully but cannot hold; the run fails if any other criterion fails or
//! if a known-red one starts passing.

use std::process::Command;

use higher_currents::bps::{bps_extension, bps_fraction, charge_matrix, m_algebra_report_for, BpsOptions, ChargeMatrix};
use higher_currents::clifford::build_majorana_rep;
use higher_currents::exact::Rational;
use higher_currents::forms::{FormElement, GeometricModel, Parity, VectorField};
use higher_currents::plectic::{
    bracket_binary, bracket_kary, build_pois_dg, build_pois_infinity, hamiltonian_pairs, kks_cocycle,
    verify_linfty, HamiltonianPair, PlecticStructure, SearchSpace,
};
use higher_currents::serre::{h5_correction, hat_cohomology, k_z3_cohomology, Class, CohomologyRing};
use higher_currents::superspace::{scan_cell, ScanStatus, SpinorChoice, SuperMinkowskiModel};
use higher_currents::truncation::{
    central_extension_certify, cocycles_cohomologous, compare_truncations, splitting_bracket,
};
use higher_currents::Result;

/// d = 11, p = 3: CΓ^(3) is antisymmetric, so the cocycle is the zero form.
const KNOWN_RED: &[usize] = &[2];

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn r2() -> Result<PlecticStructure> {
    PlecticStructure::parse(GeometricModel::polynomial(&["x", "y"], 3)?, "dx dy", Some("x dy"))
}

fn r3() -> Result<PlecticStructure> {
    PlecticStructure::parse(GeometricModel::polynomial(&["x", "y", "z"], 3)?, "dx dy dz", Some("x dy dz"))
}

fn sm3() -> Result<(PlecticStructure, Vec<(String, VectorField)>)> {
    let sm = SuperMinkowskiModel::build(3, SpinorChoice::Majorana)?;
    let st = sm.super_torus()?;
    let omega = st.embed(&sm.wzw_cocycle(1)?);
    let theta = st.primitive(&omega)?;
    Ok((PlecticStructure::new(st.model.clone(), omega, Some(theta))?, st.supertranslations()?))
}

fn field(m: &GeometricModel, parts: &[(&str, &str)]) -> Result<VectorField> {
    let parts: Vec<(&str, FormElement)> = parts.iter().map(|(g, f)| Ok((*g, m.parse(f)?))).collect::<Result<_>>()?;
    m.vector_field(Parity::Even, parts)
}

fn criterion_1() -> Result<bool> {
    let mut ok = true;
    for d in [3, 4, 9, 10, 11] {
        ok &= build_majorana_rep(d)?.clifford_relation_holds();
    }
    let rep = build_majorana_rep(11)?;
    let s = rep.sym2_decomposition(&[1, 2, 5])?;
    let parts: Vec<usize> = s.per_rank.values().copied().collect();
    Ok(ok && rep.n == 32 && parts == [11, 55, 462] && s.total == 528 && s.spans_sym2)
}

fn criterion_2() -> Result<bool> {
    let m2 = scan_cell(11, SpinorChoice::Majorana, 2);
    let iib = scan_cell(10, SpinorChoice::ChiralDoublet, 1);
    let m3 = scan_cell(11, SpinorChoice::Majorana, 3);
    println!("      d=11 p=3: status {:?}, {} residual terms", m3.status, m3.residual_terms);
    Ok(m2.status == ScanStatus::Closed
        && iib.status == ScanStatus::Closed
        && m3.status == ScanStatus::NotClosed
        && m3.residual_terms > 0)
}

fn criterion_3() -> Result<bool> {
    let s = r2()?;
    let m = s.model();
    let px = HamiltonianPair { v: m.partial("y")?, j: m.parse("x")? };
    let py = HamiltonianPair { v: m.partial("x")?.scaled(&q(-1)), j: m.parse("y")? };
    let xy = bracket_binary(&s, &px, &py)?;
    let cert = central_extension_certify(&s, &SearchSpace::Affine)?;
    let r2_ok = xy.j == m.one() && cert.charges == 1 && cert.central && cert.exact;

    let s3 = r3()?;
    let alg = build_pois_infinity(&s3, &SearchSpace::Affine)?;
    let rep = verify_linfty(&alg, 4)?;
    let m3 = s3.model();
    let (dx, dy, dz) = (m3.partial("x")?, m3.partial("y")?, m3.partial("z")?);
    let ternary = bracket_kary(&s3, &[&dx, &dy, &dz])?;
    Ok(r2_ok && rep.passed && rep.per_arity.len() == 4 && !ternary.is_zero())
}

fn criterion_4() -> Result<bool> {
    let mut ok = true;
    for s in [r2()?, r3()?] {
        let rep = compare_truncations(
            &build_pois_infinity(&s, &SearchSpace::Affine)?,
            &build_pois_dg(&s, &SearchSpace::Affine)?,
        )?;
        ok &= rep.isomorphic;
    }
    let (s, fields) = sm3()?;
    let space = SearchSpace::Fields(fields);
    ok &= compare_truncations(&build_pois_infinity(&s, &space)?, &build_pois_dg(&s, &space)?)?.isomorphic;
    Ok(ok)
}

fn r2_section(s: &PlecticStructure, shift: [i64; 5]) -> Result<Vec<(String, HamiltonianPair)>> {
    let m = s.model();
    let raw = [
        ("∂x", field(m, &[("dx", "1")])?, "-y"),
        ("∂y", field(m, &[("dy", "1")])?, "x"),
        ("x∂x−y∂y", field(m, &[("dx", "x"), ("dy", "-y")])?, "-x y"),
        ("x∂y", field(m, &[("dy", "x")])?, "1/2 x^2"),
        ("y∂x", field(m, &[("dx", "y")])?, "-1/2 y^2"),
    ];
    raw.into_iter()
        .zip(shift)
        .map(|((l, v, j), k)| Ok((l.to_string(), s.pair(v, m.parse(j)?.add(&m.constant(q(k))))?)))
        .collect()
}

fn criterion_5() -> Result<bool> {
    let s = r2()?;
    let a = splitting_bracket(&s, &SearchSpace::Affine, r2_section(&s, [0; 5])?)?;
    let b = splitting_bracket(&s, &SearchSpace::Affine, r2_section(&s, [1, -2, 3, 0, 5])?)?;
    let rep = cocycles_cohomologous(&a, &b)?;
    Ok(a.isomorphic
        && b.isomorphic
        && a.identity_failed == 0
        && b.identity_failed == 0
        && a.identity_checked > 0
        && rep.differ
        && rep.cohomologous)
}

fn criterion_6() -> Result<bool> {
    let s = r3()?;
    let fields: Vec<(String, VectorField)> = hamiltonian_pairs(&s, &SearchSpace::Affine)?
        .section()
        .into_iter()
        .enumerate()
        .map(|(i, p)| (format!("v{i}"), p.v))
        .collect();
    let a = kks_cocycle(&s, &fields, 4)?;
    let (s, fields) = sm3()?;
    let b = kks_cocycle(&s, &fields, 4)?;
    Ok(a.passed && b.passed && !fields.is_empty())
}

fn criterion_7() -> Result<bool> {
    let sm = SuperMinkowskiModel::build(11, SpinorChoice::Majorana)?;
    let ext = bps_extension(&sm, 2, BpsOptions::default())?;
    let m = m_algebra_report_for(&sm, &ext)?;
    let null = bps_fraction(&charge_matrix(&sm.rep, &[(0, q(1)), (10, q(1))], &[])?);
    let zero = bps_fraction(&ChargeMatrix::zero(32));
    Ok(m.membrane_proportional
        && m.vanishes_with_c_gamma
        && ext.central
        && ext.hamiltonian
        && null.fraction == Rational::new(1, 2)
        && zero.fraction == q(1))
}

/// Bitmask exterior algebra with integer elimination, independent of the
/// library's ring and linear algebra.
fn t11_oracle() -> (usize, usize) {
    let g = 0b1111u32;
    let rank = |k: u32| {
        let src: Vec<u32> = (0u32..1 << 11).filter(|m| m.count_ones() == k).collect();
        let tgt: Vec<u32> = (0u32..1 << 11).filter(|m| m.count_ones() == k + 4).collect();
        let mut rows: Vec<Vec<i64>> = tgt
            .iter()
            .map(|t| {
                src.iter()
                    .map(|s| {
                        if g & s != 0 || g | s != *t {
                            return 0;
                        }
                        let swaps: u32 = (0..11).filter(|i| s >> i & 1 == 1).map(|i| (g >> (i + 1)).count_ones()).sum();
                        if swaps.is_multiple_of(2) {
                            1
                        } else {
                            -1
                        }
                    })
                    .collect()
            })
            .collect();
        let mut r = 0;
        for c in 0..src.len() {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, p);
            for i in r + 1..rows.len() {
                let (a, b) = (rows[r][c], rows[i][c]);
                if b != 0 {
                    for k in 0..src.len() {
                        rows[i][k] = rows[i][k] * a - rows[r][k] * b;
                    }
                }
            }
            r += 1;
        }
        (src.len(), tgt.len(), r)
    };
    let (h2, _, r2) = rank(2);
    let (_, h5, r1) = rank(1);
    (h2 - r2, h5 - r1)
}

fn criterion_8() -> Result<bool> {
    let fiber: Vec<usize> = (0..8).map(k_z3_cohomology).collect();
    let mut ok = fiber == [1, 0, 0, 1, 0, 0, 0, 0];
    let t = CohomologyRing::torus(11);
    let s4 = CohomologyRing::sphere(4);
    for ring in [&t, &s4] {
        ok &= h5_correction(ring, &Class::zero(4))?.dim == ring.dim(2) + ring.dim(5);
    }
    let vol = s4.parse_class("vol", Some(4))?;
    ok &= hat_cohomology(&s4, &vol, 3)?.dim == 0 && hat_cohomology(&s4, &vol, 4)?.dim == 0;
    let g = t.parse_class("e1e2e3e4", Some(4))?;
    let r = h5_correction(&t, &g)?;
    let (k, c) = t11_oracle();
    println!("      T11: ker {} + coker {} = {} (oracle {k} + {c})", r.kernel_dim, r.cokernel_dim, r.dim);
    Ok(ok && (r.kernel_dim, r.cokernel_dim) == (k, c) && r.dim == k + c)
}

fn hcur(args: &[&str]) -> Vec<u8> {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../..");
    let out = Command::new(env!("CARGO_BIN_EXE_hcur"))
        .args(args)
        .current_dir(root)
        .output()
        .expect("hcur runs");
    assert!(out.status.success(), "hcur {args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out.stdout
}

fn criterion_9() -> Result<bool> {
    let suites: &[&[&str]] = &[
        &["clifford", "export", "--d", "11"],
        &["brane-scan", "--d", "3,10,11", "--p", "1,2"],
        &["pois", "--model", "data/r3-2plectic.json", "--arity", "3"],
        &["truncate", "--model", "data/r2-symplectic.json"],
        &["truncate", "--model", "data/sm3.json"],
        &["bps", "--model", "data/sm11.json", "--momentum", "0:1,10:1"],
        &["serre", "--ring", "data/t11-ring.json", "--g4", "e1e2e3e4"],
    ];
    let mut ok = true;
    for args in suites {
        let same = hcur(args) == hcur(args);
        if !same {
            println!("      nondeterministic: {args:?}");
        }
        ok &= same;
    }
    Ok(ok)
}

type Criterion = (&'static str, fn() -> Result<bool>);

fn main() {
    let criteria: [Criterion; 9] = [
        ("Clifford relations and Sym² = 11 + 55 + 462", criterion_1),
        ("brane scan closure (11,2), (10,IIB,1); (11,3) nonzero residual", criterion_2),
        ("Poisson brackets on ℝ² and L∞ identities on ℝ³", criterion_3),
        ("τ₀ of the L∞ and dg models agree", criterion_4),
        ("splitting bracket and section independence", criterion_5),
        ("KKS morphism identities", criterion_6),
        ("M-algebra membrane term and BPS fractions", criterion_7),
        ("two-row spectral sequence", criterion_8),
        ("byte-identical JSON across runs", criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let n = i + 1;
        let passed = match check() {
            Ok(p) => p,
            Err(e) => {
                println!("      error: {e}");
                false
            }
        };
        let known = KNOWN_RED.contains(&n);
        let tag = match (passed, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {n}: {tag} - {name}");
        if passed == known {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
