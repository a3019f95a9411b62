use super::*;
use crate::exact::Rational;

fn r2() -> GeometricModel {
    GeometricModel::polynomial(&["x", "y"], 3).unwrap()
}

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn super_pair() -> GeometricModel {
    let gens = vec![
        Generator::new("e1", 1, Parity::Even),
        Generator::new("e2", 1, Parity::Even),
        Generator::new("psi1", 1, Parity::Odd),
    ];
    let diff = vec![FormElement::zero(2), FormElement::zero(2), FormElement::zero(2)];
    GeometricModel::new(ModelKind::Ce, gens, diff, None).unwrap()
}

#[test]
fn wedge_signs() {
    let m = super_pair();
    let e1 = m.generator("e1").unwrap();
    let e2 = m.generator("e2").unwrap();
    let psi = m.generator("psi1").unwrap();
    assert_eq!(m.wedge(&e1, &e2).unwrap(), m.wedge(&e2, &e1).unwrap().neg());
    let pp = m.wedge(&psi, &psi).unwrap();
    assert!(!pp.is_zero());
    assert_eq!(m.format(&pp), "psi1^2");
    assert!(m.wedge(&e1, &e1).unwrap().is_zero());
    // e and ψ anticommute
    assert_eq!(m.wedge(&psi, &e1).unwrap(), m.wedge(&e1, &psi).unwrap().neg());
    assert_eq!(m.wedge(&m.one(), &e2).unwrap(), e2);
}

#[test]
fn polynomial_differential() {
    let m = r2();
    assert_eq!(m.differential(&m.parse("x").unwrap()).unwrap(), m.parse("dx").unwrap());
    assert!(m.differential(&m.constant(q(5))).unwrap().is_zero());
    let f = m.parse("x^2 y").unwrap();
    assert_eq!(m.differential(&f).unwrap(), m.parse("2 x y dx + x^2 dy").unwrap());
}

#[test]
fn contraction_examples() {
    let m = r2();
    let w = m.parse("dx dy").unwrap();
    let dx = m.partial("x").unwrap();
    let dy = m.partial("y").unwrap();
    assert_eq!(m.contract(&dx, &w).unwrap(), m.parse("dy").unwrap());
    assert_eq!(m.contract(&dy, &w).unwrap(), m.parse("-1 dx").unwrap());
    assert!(m.contract(&dx, &m.parse("x y").unwrap()).unwrap().is_zero());
    assert_eq!(m.multi_contract(&[dx.clone(), dy.clone()], &w).unwrap(), m.one());
    assert_eq!(m.multi_contract(&[dy.clone(), dx.clone()], &w).unwrap(), m.one().neg());
    assert!(m.multi_contract(&[dx.clone(), dy, dx], &w).unwrap().is_zero());
}

#[test]
fn lie_derivative_examples() {
    let m = r2();
    let dx = m.partial("x").unwrap();
    let a = m.parse("x dy").unwrap();
    assert_eq!(m.lie_derivative(&dx, &a).unwrap(), m.parse("dy").unwrap());
    let da = m.differential(&a).unwrap();
    assert_eq!(
        m.lie_derivative(&dx, &da).unwrap(),
        m.differential(&m.lie_derivative(&dx, &a).unwrap()).unwrap()
    );
    assert!(m.lie_derivative(&dx, &m.constant(q(3))).unwrap().is_zero());
}

#[test]
fn bracket_of_coordinate_fields() {
    let m = r2();
    let px = m.partial("x").unwrap();
    let xpy = m.vector_field(Parity::Even, vec![("dy", m.parse("x").unwrap())]).unwrap();
    let b = m.bracket(&px, &xpy).unwrap();
    assert_eq!(b, m.partial("y").unwrap());
    assert_eq!(m.bracket(&xpy, &px).unwrap(), m.partial("y").unwrap().scaled(&q(-1)));
}

#[test]
fn truncation_overflow_is_an_error() {
    let m = r2();
    let a = m.parse("x^2").unwrap();
    assert!(matches!(
        m.wedge(&a, &a),
        Err(crate::Error::TruncationOverflow { weight: 4, limit: 3 })
    ));
}

#[test]
fn parse_normalizes_order() {
    let m = r2();
    assert_eq!(m.parse("dy dx").unwrap(), m.parse("-1 dx dy").unwrap());
    assert!(m.parse("dx dx").unwrap().is_zero());
    assert!(matches!(m.parse("x + dx"), Err(crate::Error::MixedDegree(_))));
    let w = m.parse("3/2 x dy + -1 y dx").unwrap();
    assert_eq!(m.parse_terms(&m.to_terms(&w)).unwrap(), w);
    assert_eq!(m.parse("3/2 x dy - y dx").unwrap(), w);
    assert_eq!(m.parse("-y").unwrap(), m.parse("- y").unwrap());
    assert_eq!(m.parse("x - - y").unwrap(), m.parse("x + y").unwrap());
    assert!(m.parse("x -").is_err());
}

#[test]
fn ce_rejects_non_jacobi() {
    use Parity::Even;
    // Heisenberg: [X,Y] = Z is fine.
    let ok = GeometricModel::ce_from_structure_constants(
        &[("x", Even), ("y", Even), ("z", Even)],
        &[(0, 1, 2, q(1))],
    );
    assert!(ok.is_ok());
    // [X,Y] = Y, [X,Z] = Y, [Y,Z] = X violates Jacobi.
    let bad = GeometricModel::ce_from_structure_constants(
        &[("x", Even), ("y", Even), ("z", Even)],
        &[(0, 1, 1, q(1)), (0, 2, 1, q(1)), (1, 2, 0, q(1))],
    );
    assert!(matches!(bad, Err(crate::Error::NotADifferential { .. })), "{bad:?}");
}

#[test]
fn ce_brackets_round_trip() {
    use Parity::{Even, Odd};
    // [Q,Q] = 2P on ℝ^{1|1}
    let m = GeometricModel::ce_from_structure_constants(
        &[("e", Even), ("psi", Odd)],
        &[(1, 1, 0, q(2))],
    )
    .unwrap();
    assert_eq!(m.generator_differential(0), &m.parse("psi^2").unwrap());
    let qf = m.dual_field("psi").unwrap();
    let b = m.bracket(&qf, &qf).unwrap();
    assert_eq!(b, m.dual_field("e").unwrap().scaled(&q(2)));
    // so(3)
    let so3 = GeometricModel::ce_from_structure_constants(
        &[("a", Even), ("b", Even), ("c", Even)],
        &[(0, 1, 2, q(1)), (1, 2, 0, q(1)), (2, 0, 1, q(1))],
    )
    .unwrap();
    let (a, bb) = (so3.dual_field("a").unwrap(), so3.dual_field("b").unwrap());
    assert_eq!(so3.bracket(&a, &bb).unwrap(), so3.dual_field("c").unwrap());
}

#[test]
fn basis_enumeration() {
    let m = r2();
    assert_eq!(m.monomials(0).unwrap().len(), 10);
    assert_eq!(m.monomials(2).unwrap().len(), 3);
    let c = super_pair();
    // e1 e2, e1 ψ, e2 ψ, ψ²
    assert_eq!(c.monomials(2).unwrap().len(), 4);
}
