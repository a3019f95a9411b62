use higher_currents::exact::Rational;
use higher_currents::forms::{FormElement, GeometricModel};
use higher_currents::superspace::{SpinorChoice, SuperMinkowskiModel};

/// `d` of a form by expanding every monomial into its generators and
/// applying Leibniz factor by factor from the right.
fn differential_by_factors(m: &GeometricModel, a: &FormElement) -> FormElement {
    let mut out = FormElement::zero(a.degree() + 1);
    for (mono, c) in a.terms() {
        let mut prod = m.one();
        let mut dprod = FormElement::zero(1);
        for (i, e) in mono.support() {
            for _ in 0..e {
                let g = m.generator_at(i);
                let mut next = m.wedge(&dprod, &g).unwrap();
                let sign = if prod.degree().is_multiple_of(2) { Rational::one() } else { -Rational::one() };
                next.axpy(&sign, &m.wedge(&prod, m.generator_differential(i)).unwrap());
                dprod = next;
                prod = m.wedge(&prod, &g).unwrap();
            }
        }
        out.axpy(c, &dprod);
    }
    out
}

#[test]
fn closure_agrees_across_evaluation_orders() {
    for (d, choice, p) in [
        (3, SpinorChoice::Majorana, 1),
        (3, SpinorChoice::Majorana, 2),
        (10, SpinorChoice::ChiralDoublet, 1),
        (11, SpinorChoice::Majorana, 1),
        (11, SpinorChoice::Majorana, 2),
    ] {
        let sm = SuperMinkowskiModel::build(d, choice).unwrap();
        let w = sm.wzw_cocycle(p).unwrap();
        let direct = sm.model.differential(&w).unwrap();
        assert_eq!(direct, differential_by_factors(&sm.model, &w), "d={d} p={p}");
        assert_eq!(sm.is_closed(&w).unwrap().0, direct.is_zero());
    }
}

#[test]
fn ce_differential_squares_to_zero_iff_bilinears_symmetric() {
    for d in [3, 4, 9, 11] {
        let sm = SuperMinkowskiModel::build(d, SpinorChoice::Majorana).unwrap();
        assert_eq!(
            sm.rep.bilinear_symmetry(1).unwrap(),
            higher_currents::clifford::Symmetry::Symmetric
        );
        for i in 0..sm.model.ngens() {
            let dg = sm.model.generator_differential(i);
            assert!(sm.model.differential(dg).unwrap().is_zero());
        }
    }
}
