use higher_currents::clifford::build_majorana_rep;
use higher_currents::exact::{kernel, rank, rref, solve, Rational, SparseMatrix, SparseVec};
use higher_currents::forms::{DegreeBasis, FormElement, GeometricModel, Parity, VectorField};
use higher_currents::plectic::{bracket_binary, hamiltonian_pairs, HamiltonianPair, PlecticStructure, SearchSpace};
use higher_currents::superspace::{SpinorChoice, SuperMinkowskiModel};
use proptest::prelude::*;

fn q(n: i64) -> Rational {
    Rational::from_int(n)
}

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> SparseMatrix {
    let dense: Vec<Vec<i64>> = (0..rows).map(|r| entries[r * cols..(r + 1) * cols].to_vec()).collect();
    SparseMatrix::from_dense_ints(&dense)
}

fn small_matrix() -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-2i64..3, r * c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity((r, c, e) in small_matrix()) {
        let m = matrix(r, c, &e);
        let ker = kernel(&m);
        prop_assert_eq!(ker.len() + rank(&m), c);
        for v in &ker {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn solve_reproduces_rhs((r, c, e) in small_matrix(), x in prop::collection::vec(-3i64..4, 5), b in prop::collection::vec(-3i64..4, 5)) {
        let m = matrix(r, c, &e);
        // a consistent right-hand side and an arbitrary one
        let consistent = m.mul_vec(&SparseVec::from_ints(&x[..c]));
        let sol = solve(&m, &consistent).unwrap();
        prop_assert!(sol.is_some());
        prop_assert_eq!(m.mul_vec(&sol.unwrap()), consistent);
        let b = SparseVec::from_ints(&b[..r]);
        if let Some(y) = solve(&m, &b).unwrap() {
            prop_assert_eq!(m.mul_vec(&y), b);
        }
    }

    #[test]
    fn rref_ignores_row_order((r, c, e) in small_matrix(), shift in 0usize..6) {
        let m = matrix(r, c, &e);
        let mut rows = m.rows().to_vec();
        rows.rotate_left(shift % r);
        rows.reverse();
        let p = SparseMatrix::from_rows(c, rows).unwrap();
        prop_assert_eq!(rref(&m), rref(&p));
    }
}

fn models() -> Vec<GeometricModel> {
    let sm = SuperMinkowskiModel::build(3, SpinorChoice::Majorana).unwrap();
    let torus = sm.super_torus().unwrap().model;
    let heis = GeometricModel::ce_from_structure_constants(
        &[("x", Parity::Even), ("y", Parity::Even), ("z", Parity::Even)],
        &[(0, 1, 2, q(1))],
    )
    .unwrap();
    vec![
        GeometricModel::polynomial(&["x", "y"], 4).unwrap(),
        GeometricModel::polynomial(&["x", "y", "z"], 3).unwrap(),
        heis,
        sm.model,
        torus,
    ]
}

fn random_element(m: &GeometricModel, degree: usize, coeffs: &[i64]) -> FormElement {
    let basis = DegreeBasis::new(m, degree).unwrap();
    let v = SparseVec::from_pairs(
        (0..basis.len()).zip(coeffs.iter().cycle()).filter(|(i, _)| i % 3 == 0).map(|(i, c)| (i, q(*c))),
    );
    basis.element(&v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn differential_squares_to_zero(which in 0usize..5, degree in 0usize..4, coeffs in prop::collection::vec(-3i64..4, 1..8)) {
        let m = &models()[which];
        let a = random_element(m, degree, &coeffs);
        if let Ok(da) = m.differential(&a) {
            if let Ok(dda) = m.differential(&da) {
                prop_assert!(dda.is_zero());
            }
        }
    }

    #[test]
    fn leibniz(which in 0usize..5, i in 0usize..3, j in 0usize..3, ca in prop::collection::vec(-3i64..4, 1..6), cb in prop::collection::vec(-3i64..4, 1..6)) {
        let m = &models()[which];
        let (a, b) = (random_element(m, i, &ca), random_element(m, j, &cb));
        let lhs = m.wedge(&a, &b).and_then(|ab| m.differential(&ab));
        let rhs = (|| {
            let mut r = m.wedge(&m.differential(&a)?, &b)?;
            let s = if i % 2 == 0 { q(1) } else { q(-1) };
            r.axpy(&s, &m.wedge(&a, &m.differential(&b)?)?);
            Ok::<_, higher_currents::Error>(r)
        })();
        // truncated polynomial models may overflow on either side
        if let (Ok(l), Ok(r)) = (lhs, rhs) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn cartan_formula(which in 0usize..2, degree in 0usize..3, pick in 0usize..12, coeffs in prop::collection::vec(-3i64..4, 1..6)) {
        let m = &models()[which];
        let fields = SearchSpace::Affine.fields(m).unwrap();
        let v = &fields[pick % fields.len()].1;
        let a = random_element(m, degree, &coeffs);
        let run = || -> higher_currents::Result<(FormElement, FormElement)> {
            let mut magic = m.contract(v, &m.differential(&a)?)?;
            if degree > 0 {
                magic = magic.add(&m.differential(&m.contract(v, &a)?)?);
            }
            Ok((magic, m.lie_derivative(v, &a)?))
        };
        if let Ok((magic, lie)) = run() {
            prop_assert_eq!(magic, lie);
        }
    }
}

const DIMS: [usize; 5] = [3, 4, 9, 10, 11];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn gamma_antisym_alternates(di in 0usize..5, a in 0usize..11, b in 0usize..11, c in 0usize..11) {
        let rep = build_majorana_rep(DIMS[di]).unwrap();
        let d = rep.d;
        let (a, b, c) = (a % d, b % d, c % d);
        prop_assume!(a != b);
        let ab = rep.gamma_antisym(&[a, b]).unwrap();
        prop_assert_eq!(ab.clone(), rep.gamma_antisym(&[b, a]).unwrap().scale(-1));
        prop_assert_eq!(ab, rep.gamma[a].mul(&rep.gamma[b]));
        prop_assert!(rep.gamma_antisym(&[a, a]).is_err());
        if c != a && c != b {
            let abc = rep.gamma_antisym(&[a, b, c]).unwrap();
            prop_assert_eq!(abc.clone(), rep.gamma_antisym(&[b, c, a]).unwrap());
            prop_assert_eq!(abc, rep.gamma_antisym(&[c, b, a]).unwrap().scale(-1));
        }
    }

    #[test]
    fn transpose_sign_depends_on_rank_only(di in 2usize..5, k in 0usize..6, seed in prop::collection::vec(0usize..11, 6)) {
        let rep = build_majorana_rep(DIMS[di]).unwrap();
        let mut set: Vec<usize> = Vec::new();
        for s in seed {
            let s = s % rep.d;
            if set.len() < k && !set.contains(&s) {
                set.push(s);
            }
        }
        let sign = rep.symmetry_table[&set.len()].sign();
        let m = rep.c_gamma(&set).unwrap();
        prop_assert_eq!(m.transpose(), m.scale(sign));
    }
}

#[test]
fn transpose_sign_exhaustive_small() {
    for d in [3, 4] {
        let rep = build_majorana_rep(d).unwrap();
        for mask in 0u32..1 << d {
            let set: Vec<usize> = (0..d).filter(|i| mask >> i & 1 == 1).collect();
            let m = rep.c_gamma(&set).unwrap();
            let sign = rep.bilinear_symmetry(set.len()).unwrap().sign();
            assert_eq!(m.transpose(), m.scale(sign), "d={d} {set:?}");
        }
    }
}

fn combination(pairs: &[HamiltonianPair], coeffs: &[i64]) -> HamiltonianPair {
    let mut v = VectorField::zero(Parity::Even);
    let mut j = FormElement::zero(pairs[0].j.degree());
    for (p, c) in pairs.iter().zip(coeffs) {
        v.axpy(&q(*c), &p.v);
        j.axpy(&q(*c), &p.j);
    }
    HamiltonianPair { v, j }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn binary_bracket_is_hamiltonian_and_ignores_closed_shifts(
        ca in prop::collection::vec(-2i64..3, 12),
        cb in prop::collection::vec(-2i64..3, 12),
        shift in -3i64..4,
        three in any::<bool>(),
    ) {
        let s = if three {
            let m = GeometricModel::polynomial(&["x", "y", "z"], 3).unwrap();
            PlecticStructure::parse(m, "dx dy dz", None).unwrap()
        } else {
            let m = GeometricModel::polynomial(&["x", "y"], 3).unwrap();
            PlecticStructure::parse(m, "dx dy", None).unwrap()
        };
        let pairs = hamiltonian_pairs(&s, &SearchSpace::Affine).unwrap().pairs;
        let (a, b) = (combination(&pairs, &ca), combination(&pairs, &cb));
        let Ok(c) = bracket_binary(&s, &a, &b) else {
            // truncation overflow is the only admissible failure
            return Ok(());
        };
        prop_assert!(s.pair_residual(&c.v, &c.j).unwrap().is_zero());
        // a closed shift of J: a constant for p = 0, an exact 1-form for p = 1
        let m = s.model();
        let closed = if three { m.differential(&m.parse("x y").unwrap()).unwrap() } else { m.constant(q(1)) };
        let a2 = HamiltonianPair { v: a.v.clone(), j: a.j.add(&closed.scaled(&q(shift))) };
        prop_assert_eq!(bracket_binary(&s, &a2, &b).unwrap(), c);
    }
}
