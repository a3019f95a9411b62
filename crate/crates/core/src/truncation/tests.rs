use super::*;
use crate::forms::VectorField;
use crate::plectic::{build_pois_dg, hamiltonian_pairs};

fn r2() -> PlecticStructure {
    let m = GeometricModel::polynomial(&["x", "y"], 3).unwrap();
    PlecticStructure::parse(m, "dx dy", Some("x dy")).unwrap()
}

fn r3() -> PlecticStructure {
    let m = GeometricModel::polynomial(&["x", "y", "z"], 3).unwrap();
    PlecticStructure::parse(m, "dx dy dz", Some("x dy dz")).unwrap()
}

fn abelian() -> PlecticStructure {
    let m = GeometricModel::ce_from_structure_constants(
        &[("e1", Parity::Even), ("e2", Parity::Even), ("e3", Parity::Even)],
        &[],
    )
    .unwrap();
    PlecticStructure::parse(m, "e1 e2 e3", None).unwrap()
}

fn field(s: &PlecticStructure, parts: &[(&str, &str)]) -> VectorField {
    let m = s.model();
    let parts: Vec<(&str, FormElement)> = parts.iter().map(|(g, f)| (*g, m.parse(f).unwrap())).collect();
    m.vector_field(Parity::Even, parts).unwrap()
}

/// Translations and sp(2) on ℝ² with linear and quadratic Hamiltonians.
fn r2_section(s: &PlecticStructure, shift: [i64; 5]) -> Vec<(String, HamiltonianPair)> {
    let m = s.model();
    let raw = [
        ("∂x", field(s, &[("dx", "1")]), "- y"),
        ("∂y", field(s, &[("dy", "1")]), "x"),
        ("x∂x−y∂y", field(s, &[("dx", "x"), ("dy", "- y")]), "- x y"),
        ("x∂y", field(s, &[("dy", "x")]), "1/2 x^2"),
        ("y∂x", field(s, &[("dx", "y")]), "-1/2 y^2"),
    ];
    raw.into_iter()
        .zip(shift)
        .map(|((l, v, j), k)| {
            let j = m.parse(j).unwrap().add(&m.constant(Rational::from_int(k)));
            (l.to_string(), s.pair(v, j).unwrap())
        })
        .collect()
}

#[test]
fn presentation_checks() {
    let e = Parity::Even;
    let heis = LieAlgebraPresentation::new(
        vec!["p".into(), "q".into(), "c".into()],
        vec![e, e, e],
        [(1, 0, SparseVec::from_ints(&[0, 0, -1]))],
    )
    .unwrap();
    assert_eq!(heis.bracket_basis(0, 1), SparseVec::from_ints(&[0, 0, 1]));
    assert_eq!(heis.central_labels(), vec!["c".to_string()]);
    let back = LieAlgebraPresentation::from_json(&heis.to_json()).unwrap();
    assert_eq!(back, heis);

    // [a,b] = a, [a,c] = b, [b,c] = 0 violates Jacobi
    let bad = LieAlgebraPresentation::new(
        vec!["a".into(), "b".into(), "c".into()],
        vec![e, e, e],
        [(0, 1, SparseVec::unit(0)), (0, 2, SparseVec::unit(1))],
    );
    assert!(matches!(bad, Err(Error::Model(_))));
    let self_bracket = LieAlgebraPresentation::new(vec!["a".into()], vec![e], [(0, 0, SparseVec::unit(0))]);
    assert!(self_bracket.is_err());

    // odd pair bracketing to an even central element
    let o = Parity::Odd;
    let susy = LieAlgebraPresentation::new(
        vec!["Q".into(), "P".into()],
        vec![o, e],
        [(0, 0, SparseVec::unit(1))],
    )
    .unwrap();
    assert_eq!(susy.bracket(&SparseVec::unit(0), &SparseVec::unit(0)), SparseVec::unit(1));
}

#[test]
fn r2_heisenberg() {
    let s = r2();
    let rep = central_extension_certify(&s, &SearchSpace::Affine).unwrap();
    assert_eq!(
        (rep.charges, rep.tau0_dim, rep.projection_rank, rep.hamiltonian_fields, rep.kernel),
        (1, 6, 5, 5, 1)
    );
    assert!(rep.exact && rep.central && rep.projection_is_homomorphism);
    assert_eq!(rep.charge_labels, vec!["1".to_string()]);
    let t = truncate0(&build_pois_infinity(&s, &SearchSpace::Affine).unwrap()).unwrap();
    assert_eq!(t.boundary_rank, 0);
    assert_eq!(t.presentation.central_labels().len(), 1);
}

#[test]
fn r3_quotient_by_exact_forms() {
    let s = r3();
    let alg = build_pois_infinity(&s, &SearchSpace::Affine).unwrap();
    let t = truncate0(&alg).unwrap();
    // divergence-free affine fields; closed 1-forms are all exact
    assert_eq!(t.presentation.dim(), 11);
    assert_eq!(t.degree0_dim - t.boundary_rank, 11);
    assert!(t.presentation.central_labels().is_empty());
    let rep = central_extension_certify(&s, &SearchSpace::Affine).unwrap();
    assert_eq!((rep.charges, rep.kernel), (0, 0));
    assert!(rep.exact);
}

#[test]
fn abelian_charges_central() {
    let rep = central_extension_certify(&abelian(), &SearchSpace::Invariant).unwrap();
    assert_eq!((rep.charges, rep.tau0_dim, rep.kernel, rep.hamiltonian_fields), (3, 3, 3, 0));
    assert!(rep.exact && rep.central);
    assert!(rep.presentation.basis.iter().all(|b| b.central));
}

#[test]
fn dg_and_infinity_truncations_agree() {
    for s in [r2(), r3()] {
        let inf = build_pois_infinity(&s, &SearchSpace::Affine).unwrap();
        let dg = build_pois_dg(&s, &SearchSpace::Affine).unwrap();
        let rep = compare_truncations(&inf, &dg).unwrap();
        assert!(rep.isomorphic, "{rep:?}");
    }
}

#[test]
fn sm3_truncations_agree() {
    use crate::superspace::{SpinorChoice, SuperMinkowskiModel};
    let sm = SuperMinkowskiModel::build(3, SpinorChoice::Majorana).unwrap();
    let st = sm.super_torus().unwrap();
    let omega = st.embed(&sm.wzw_cocycle(1).unwrap());
    let theta = st.primitive(&omega).unwrap();
    let s = PlecticStructure::new(st.model.clone(), omega, Some(theta)).unwrap();
    let space = SearchSpace::Fields(st.supertranslations().unwrap());
    let inf = build_pois_infinity(&s, &space).unwrap();
    let dg = build_pois_dg(&s, &space).unwrap();
    let rep = compare_truncations(&inf, &dg).unwrap();
    assert!(rep.isomorphic, "{rep:?}");
    assert!(rep.infinity_dim >= 5);
}

#[test]
fn r2_splitting_area_pairing() {
    let s = r2();
    let split = splitting_bracket(&s, &SearchSpace::Affine, r2_section(&s, [0; 5])).unwrap();
    assert!(split.isomorphic);
    assert_eq!(split.identity_failed, 0);
    assert_eq!(split.identity_checked, 10);
    let xy = split.cocycle.iter().find(|c| c.left == "∂x" && c.right == "∂y").unwrap();
    assert_eq!(xy.class, vec![("1".to_string(), "-1".to_string())]);
    // linear J's make the cocycle vanish off the translations
    assert_eq!(split.cocycle.len(), 1);
}

#[test]
fn r2_splitting_independent_of_section() {
    let s = r2();
    let a = splitting_bracket(&s, &SearchSpace::Affine, r2_section(&s, [0; 5])).unwrap();
    let b = splitting_bracket(&s, &SearchSpace::Affine, r2_section(&s, [3, -1, 2, 5, 7])).unwrap();
    assert!(b.isomorphic);
    let rep = cocycles_cohomologous(&a, &b).unwrap();
    assert!(rep.differ && rep.cohomologous);
    let rev = cocycles_cohomologous(&b, &a).unwrap();
    assert!(rev.cohomologous);
}

#[test]
fn splitting_rejects_bad_sections() {
    let s = r2();
    let mut sec = r2_section(&s, [0; 5]);
    sec.pop();
    assert!(matches!(
        splitting_bracket(&s, &SearchSpace::Affine, sec),
        Err(Error::NotASection(_))
    ));
    let mut sec = r2_section(&s, [0; 5]);
    sec[4] = sec[3].clone();
    assert!(matches!(
        splitting_bracket(&s, &SearchSpace::Affine, sec),
        Err(Error::NotASection(_))
    ));
    let m = s.model().clone();
    let plain = PlecticStructure::parse(m, "dx dy", None).unwrap();
    assert!(matches!(
        splitting_bracket(&plain, &SearchSpace::Affine, r2_section(&s, [0; 5])),
        Err(Error::MissingPotential)
    ));
}

#[test]
fn truncated_pairs_match_pair_space() {
    let s = r2();
    let pairs = hamiltonian_pairs(&s, &SearchSpace::Affine).unwrap();
    let t = truncate0(&build_pois_infinity(&s, &SearchSpace::Affine).unwrap()).unwrap();
    for p in &pairs.pairs {
        assert!(t.map.project(&Observable::pair(s.model(), p)).is_some());
    }
}
