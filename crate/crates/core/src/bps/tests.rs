use super::*;
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

#[test]
fn d3_string_extension() {
    let sm = SuperMinkowskiModel::build(3, SpinorChoice::Majorana).unwrap();
    let ext = bps_extension(&sm, 1, BpsOptions { potentials: true, ..Default::default() }).unwrap();
    assert_eq!(ext.charges, vec!["e0", "e1", "e2"]);
    assert!(ext.central && ext.hamiltonian);
    assert_eq!(ext.potentials_checked, 5);
    // only odd/odd pairs carry charge
    let par = ext.base.parities();
    assert!(ext.cocycle.keys().all(|(i, j)| par[*i].is_odd() && par[*j].is_odd()));
    // c(Q_α, Q_β) = −2 (C Γ_a)_{αβ} [e^a]
    for a in 0..3 {
        let k = ext.charge_index(&[a]).unwrap();
        let comp = ext.odd_odd_component(k);
        let m = sm.rep.c_gamma(&[a]).unwrap().rows();
        for (crow, mrow) in comp.iter().zip(&m) {
            for (c, &x) in crow.iter().zip(mrow) {
                assert_eq!(*c, q(-2 * x));
            }
        }
    }
    // {Q, Q} closes on translations in the base
    let q0 = ext.base.labels().iter().position(|l| l == "Q0").unwrap();
    assert!(!ext.base.bracket_basis(q0, q0).is_zero());
}

#[test]
fn lorentz_base_declined() {
    let sm = SuperMinkowskiModel::build(3, SpinorChoice::Majorana).unwrap();
    let opts = BpsOptions { base: BaseAlgebra::WithLorentz, potentials: false };
    assert!(matches!(bps_extension(&sm, 1, opts), Err(Error::Model(_))));
}

#[test]
fn iib_string_extension() {
    let sm = SuperMinkowskiModel::build(10, SpinorChoice::ChiralDoublet).unwrap();
    let ext = bps_extension(&sm, 1, BpsOptions::default()).unwrap();
    assert_eq!((ext.charges.len(), ext.n_odd()), (10, 32));
    assert!(ext.central);
}

#[test]
fn d11_membrane_and_m_algebra() {
    let sm = SuperMinkowskiModel::build(11, SpinorChoice::Majorana).unwrap();
    let ext = bps_extension(&sm, 2, BpsOptions::default()).unwrap();
    assert_eq!(ext.charges.len(), 55);
    assert_eq!(ext.n_odd(), 32);
    assert!(ext.central);
    let par = ext.base.parities();
    assert!(ext.cocycle.keys().all(|(i, j)| par[*i].is_odd() && par[*j].is_odd()));

    let rep = m_algebra_report_for(&sm, &ext).unwrap();
    assert!(rep.symmetry.values().all(|s| *s == Symmetry::Symmetric));
    assert_eq!(rep.sym2.total, 528);
    assert!(rep.sym2.spans_sym2);
    assert!(rep.membrane_proportional, "{:?}", rep.components.iter().find(|c| c.ratio.is_none()));
    assert!(rep.vanishes_with_c_gamma);
    assert_eq!(rep.membrane_ratios, vec![q(-2)]);
}

#[test]
fn fractions() {
    let rep = crate::clifford::build_majorana_rep(11).unwrap();
    let null = ChargeMatrix::c_gamma_sum(&rep, &[(vec![0], q(1)), (vec![10], q(1))]).unwrap();
    let f = bps_fraction(&null);
    assert_eq!((f.kernel_dim, f.fraction.clone()), (16, Rational::new(1, 2)));
    assert!(f.brackets_vanish);
    assert_eq!(bps_fraction(&ChargeMatrix::zero(32)).fraction, q(1));
    let massive = ChargeMatrix::c_gamma_sum(&rep, &[(vec![0], q(1))]).unwrap();
    assert_eq!(bps_fraction(&massive).fraction, q(0));
    let membrane = charge_matrix(&rep, &[(0, q(1))], &[((1, 2), q(1))]).unwrap();
    assert_eq!(bps_fraction(&membrane).fraction, Rational::new(1, 2));
    assert!(ChargeMatrix::new(vec![vec![q(0), q(1)], vec![q(0), q(0)]]).is_err());
}

fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| q(i64::from(i == j))).collect()).collect();
    for &(i, j, c) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        for k in 0..n {
            let v = &a[j][k] * &q(c);
            a[i][k] += &v;
        }
    }
    a
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn fraction_is_basis_independent(
        ops in proptest::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..12),
        coeffs in proptest::collection::vec(-2i64..=2, 3),
    ) {
        let rep = crate::clifford::build_majorana_rep(4).unwrap();
        let m = ChargeMatrix::c_gamma_sum(
            &rep,
            &[(vec![0], q(coeffs[0])), (vec![1], q(coeffs[1])), (vec![0, 1], q(coeffs[2]))],
        )
        .unwrap();
        let a = unimodular(4, &ops);
        let f = bps_fraction(&m);
        let g = bps_fraction(&m.congruent(&a).unwrap());
        prop_assert_eq!(f.fraction, g.fraction);
    }
}

