use super::*;
use crate::forms::GeometricModel;

fn r2() -> PlecticStructure {
    let m = GeometricModel::polynomial(&["x", "y"], 3).unwrap();
    PlecticStructure::parse(m, "dx dy", Some("x dy")).unwrap()
}

fn r3() -> PlecticStructure {
    let m = GeometricModel::polynomial(&["x", "y", "z"], 3).unwrap();
    PlecticStructure::parse(m, "dx dy dz", Some("x dy dz")).unwrap()
}

fn pair(s: &PlecticStructure, v: VectorField, j: &str) -> HamiltonianPair {
    let j = s.model().parse(j).unwrap();
    s.pair(v, j).unwrap()
}

#[test]
fn rejects_non_closed() {
    let m = GeometricModel::polynomial(&["x", "y", "z"], 3).unwrap();
    assert!(matches!(
        PlecticStructure::parse(m, "x dy dz + z dx dy", None),
        Err(Error::NotClosed { .. })
    ));
}

#[test]
fn r2_pairs_and_poisson_bracket() {
    let s = r2();
    let m = s.model();
    let space = hamiltonian_pairs(&s, &SearchSpace::Affine).unwrap();
    let a = pair(&s, m.partial("y").unwrap(), "x");
    let b = pair(&s, m.partial("x").unwrap().neg(), "y");
    assert!(space.contains(&a));
    assert!(space.contains(&b));
    assert!(space.contains(&pair(&s, VectorField::zero(Parity::Even), "1")));
    let c = bracket_binary(&s, &a, &b).unwrap();
    assert!(c.v.is_zero());
    assert_eq!(c.j, m.one());
    let ba = bracket_binary(&s, &b, &a).unwrap();
    assert_eq!(ba.j, m.one().neg());
    // translations plus sp(2), and the constants
    assert_eq!(space.section().len(), 5);
    assert_eq!(space.len(), 6);
}

#[test]
fn bracket_ignores_closed_shift_of_j() {
    let s = r2();
    let m = s.model();
    let a = pair(&s, m.partial("y").unwrap(), "x");
    let b = pair(&s, m.partial("x").unwrap().neg(), "y");
    let b2 = pair(&s, m.partial("x").unwrap().neg(), "y + 7");
    assert_eq!(bracket_binary(&s, &a, &b).unwrap(), bracket_binary(&s, &a, &b2).unwrap());
    let z = pair(&s, VectorField::zero(Parity::Even), "1");
    let c = bracket_binary(&s, &a, &z).unwrap();
    assert!(c.v.is_zero() && c.j.is_zero());
}

#[test]
fn r3_ternary_bracket() {
    let s = r3();
    let m = s.model();
    let (dx, dy, dz) = (m.partial("x").unwrap(), m.partial("y").unwrap(), m.partial("z").unwrap());
    assert_eq!(bracket_kary(&s, &[&dx, &dy, &dz]).unwrap(), m.one().neg());
    let zero = VectorField::zero(Parity::Even);
    assert!(bracket_kary(&s, &[&dx, &zero, &dz]).unwrap().is_zero());
    assert!(bracket_kary(&s, &[&dx, &dy, &dz, &dx]).unwrap().is_zero());
}

#[test]
fn abelian_invariant_pairs_have_no_field() {
    let m = GeometricModel::ce_from_structure_constants(
        &[("e1", Parity::Even), ("e2", Parity::Even), ("e3", Parity::Even)],
        &[],
    )
    .unwrap();
    let s = PlecticStructure::parse(m, "e1 e2 e3", None).unwrap();
    let space = hamiltonian_pairs(&s, &SearchSpace::Invariant).unwrap();
    assert_eq!(space.len(), 3);
    assert!(space.pairs.iter().all(|p| p.v.is_zero()));
}

#[test]
fn kks_first_component() {
    let s = r2();
    let m = s.model();
    let dx = m.partial("x").unwrap();
    assert_eq!(kks_component(&s, &[&dx]).unwrap(), m.parse("- dy").unwrap());
    assert!(kks_component(&s, &[&dx, &dx, &dx]).unwrap().is_zero());
}

#[test]
fn linfty_identities_r2_r3() {
    let s = r2();
    let alg = build_pois_infinity(&s, &SearchSpace::Affine).unwrap();
    let rep = verify_linfty(&alg, 3).unwrap();
    assert!(rep.passed, "{:?}", rep.failures.first());

    let s = r3();
    let alg = build_pois_infinity(&s, &SearchSpace::Affine).unwrap();
    let rep = verify_linfty(&alg, 4).unwrap();
    assert!(rep.passed, "{:?}", rep.failures.first());
    assert!(rep.per_arity[2].nontrivial > 0);
    assert!(rep.antisymmetry_checked > 0);
    let table = alg.bracket_table(3).unwrap();
    assert!(table.iter().any(|e| e.arity == 3));
}

#[test]
fn zero_form_identities_trivial() {
    let m = GeometricModel::polynomial(&["x", "y", "z"], 2).unwrap();
    let s = PlecticStructure::new(m, FormElement::zero(3), None).unwrap();
    let alg = build_pois_infinity(&s, &SearchSpace::Affine).unwrap();
    assert!(verify_linfty(&alg, 4).unwrap().passed);
}

#[test]
fn dg_model() {
    let s = r2();
    let m = s.model();
    let dg = build_pois_dg(&s, &SearchSpace::Affine).unwrap();
    let x = Observable::pair(m, &HamiltonianPair { v: m.partial("y").unwrap(), j: FormElement::zero(0) });
    assert!(dg.is_element(&x).unwrap());
    assert!(verify_linfty(&dg, 3).unwrap().passed);
    let dg3 = build_pois_dg(&r3(), &SearchSpace::Affine).unwrap();
    let rep = verify_linfty(&dg3, 3).unwrap();
    assert!(rep.passed, "{:?}", rep.failures.first());
    let no_theta = PlecticStructure::new(m.clone(), s.omega().clone(), None).unwrap();
    assert!(matches!(build_pois_dg(&no_theta, &SearchSpace::Affine), Err(Error::MissingPotential)));
}

#[test]
fn kks_r3() {
    let s = r3();
    let fields: Vec<(String, VectorField)> = hamiltonian_pairs(&s, &SearchSpace::Affine)
        .unwrap()
        .section()
        .into_iter()
        .enumerate()
        .map(|(i, p)| (format!("v{i}"), p.v))
        .collect();
    assert_eq!(fields.len(), 11);
    let rep = kks_cocycle(&s, &fields, 4).unwrap();
    assert!(rep.passed, "{:?}", rep.failures.first());
}

#[test]
fn extension_r2() {
    let rep = extension_sequence_check(&r2(), &SearchSpace::Affine).unwrap();
    assert_eq!(rep.closed_forms, 1);
    assert_eq!(rep.kernel, 1);
    assert_eq!(rep.hamiltonian_fields, 5);
    assert!(rep.exact);
}

#[test]
fn wedge_contract_matches_multi_contract_on_even_fields() {
    let s = r3();
    let m = s.model();
    let (dx, dy) = (m.partial("x").unwrap(), m.partial("y").unwrap());
    let a = wedge_contract(m, &[&dx, &dy], s.omega()).unwrap();
    let b = m.multi_contract(&[dx.clone(), dy.clone()], s.omega()).unwrap();
    assert_eq!(a, b);
}

fn sm3() -> (PlecticStructure, Vec<(String, VectorField)>) {
    use crate::superspace::{SpinorChoice, SuperMinkowskiModel};
    let sm = SuperMinkowskiModel::build(3, SpinorChoice::Majorana).unwrap();
    let st = sm.super_torus().unwrap();
    let omega = st.embed(&sm.wzw_cocycle(1).unwrap());
    let theta = st.primitive(&omega).unwrap();
    let fields = st.supertranslations().unwrap();
    (PlecticStructure::new(st.model.clone(), omega, Some(theta)).unwrap(), fields)
}

#[test]
fn sm3_supertranslations() {
    let (s, fields) = sm3();
    let space = SearchSpace::Fields(fields.clone());
    let pairs = hamiltonian_pairs(&s, &space).unwrap();
    assert_eq!(pairs.section().len(), 5);
    let alg = build_pois_infinity(&s, &space).unwrap();
    let rep = verify_linfty(&alg, 4).unwrap();
    assert!(rep.passed, "{:?}", rep.failures.first());
    assert!(rep.per_arity[1].nontrivial > 0);
    let dg = build_pois_dg(&s, &space).unwrap();
    let rep = verify_linfty(&dg, 3).unwrap();
    assert!(rep.passed, "{:?}", rep.failures.first());
    let rep = kks_cocycle(&s, &fields, 4).unwrap();
    assert!(rep.passed, "{:?}", rep.failures.first());
}
