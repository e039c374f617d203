//! Torus invariants, against an independently built clock-and-shift model.

use proptest::prelude::*;
use solenoid::linalg::Matrix;
use solenoid::scalars::{Cyclotomic, LatticePoint};
use solenoid::torus::TorusPresentation;

fn presentations() -> Vec<TorusPresentation> {
    vec![
        TorusPresentation::new(2, vec![2]).unwrap(),
        TorusPresentation::new(2, vec![3]).unwrap(),
        TorusPresentation::new(4, vec![2, 2]).unwrap(),
    ]
}

/// `C^a S^b` for the `k x k` clock `diag(1, q, .., q^{k-1})`, `q = exp(2 pi i / k)`, and cyclic shift.
fn clock_shift(k: u32, a: i64, b: i64) -> Matrix {
    let k_us = k as usize;
    let (a, b) = (a.rem_euclid(k as i64), b.rem_euclid(k as i64) as usize);
    Matrix::from_cyclotomic(k_us, k_us, |i, j| {
        if j == (i + b) % k_us {
            Cyclotomic::root_of_unity(k, a * i as i64)
        } else {
            Cyclotomic::zero()
        }
    })
}

fn model(t: &TorusPresentation, n: &LatticePoint) -> Matrix {
    let mut acc = Matrix::identity(1);
    for (i, &k) in t.orders().iter().enumerate() {
        acc = acc.kron(&clock_shift(k, n.entries()[2 * i], n.entries()[2 * i + 1]));
    }
    acc
}

#[test]
fn sigma_agrees_with_matrix_model_on_gamma_reps() {
    for t in presentations() {
        let reps = t.gamma_reps();
        for m in &reps {
            for n in &reps {
                let lhs = &model(&t, m) * &model(&t, n);
                let rhs = model(&t, &(m + n)).scale(&t.sigma_scalar(m, n));
                assert_eq!(lhs, rhs, "k = {:?}, m = {m}, n = {n}", t.orders());
                assert_eq!(t.matrix_realization(m), model(&t, m));
            }
        }
    }
}

fn point(d: usize) -> impl Strategy<Value = LatticePoint> {
    prop::collection::vec(-3i64..=3, d).prop_map(LatticePoint::new)
}

fn torus_and_points(count: usize) -> impl Strategy<Value = (TorusPresentation, Vec<LatticePoint>)> {
    prop::sample::select(presentations()).prop_flat_map(move |t| {
        let d = t.d();
        (Just(t), prop::collection::vec(point(d), count))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sigma_is_bimultiplicative((t, v) in torus_and_points(3)) {
        let (m, m2, n) = (&v[0], &v[1], &v[2]);
        let s = |a: &LatticePoint, b: &LatticePoint| t.sigma_scalar(a, b);
        prop_assert_eq!(s(&(m + m2), n), &s(m, n) * &s(m2, n));
        prop_assert_eq!(s(n, &(m + m2)), &s(n, m) * &s(n, m2));
    }

    #[test]
    fn sigma_is_a_cocycle((t, v) in torus_and_points(3)) {
        let (m, n, p) = (&v[0], &v[1], &v[2]);
        let s = |a: &LatticePoint, b: &LatticePoint| t.sigma_scalar(a, b);
        prop_assert_eq!(&s(m, n) * &s(&(m + n), p), &s(n, p) * &s(m, &(n + p)));
    }

    #[test]
    fn radical_is_the_commuting_sublattice((t, v) in torus_and_points(1)) {
        let m = &v[0];
        let d = t.d();
        let commutes = (0..d).all(|i| {
            let e = LatticePoint::unit(d, i);
            t.sigma_scalar(m, &e) == t.sigma_scalar(&e, m)
        });
        prop_assert_eq!(t.in_radical(m), commutes);
        prop_assert_eq!(t.radical_coords(m).is_some(), commutes);
    }

    #[test]
    fn matrix_model_on_the_whole_box((t, v) in torus_and_points(2)) {
        let (m, n) = (&v[0], &v[1]);
        let lhs = &model(&t, m) * &model(&t, n);
        prop_assert_eq!(lhs, model(&t, &(m + n)).scale(&t.sigma_scalar(m, n)));
    }

    #[test]
    fn gl_bracket_is_the_sigma_commutator((t, v) in torus_and_points(2)) {
        let (m, n) = (&v[0], &v[1]);
        let c = &t.sigma_scalar(m, n) - &t.sigma_scalar(n, m);
        prop_assert_eq!(model(&t, m).commutator(&model(&t, n)), model(&t, &(m + n)).scale(&c));
        prop_assert_eq!(c, t.commutator_coefficient(m, n));
    }

    #[test]
    fn reduction_is_the_group_law_of_gamma((t, v) in torus_and_points(2)) {
        let (m, n) = (&v[0], &v[1]);
        let (rm, _) = t.gamma_reduce(m);
        let (rn, _) = t.gamma_reduce(n);
        prop_assert_eq!(t.reduce(&(m + n)), t.reduce(&(&rm + &rn)));
        // m - red(m) is central: the matrices agree up to a root of unity.
        prop_assert!(t.in_radical(&(m - &rm)));
        let ratio = model(&t, m);
        let base = model(&t, &rm);
        let c = (0..ratio.rows()).find_map(|i| (0..ratio.cols()).find_map(|j| {
            (!base[(i, j)].is_zero()).then(|| ratio[(i, j)].checked_div(&base[(i, j)]).unwrap())
        })).unwrap();
        prop_assert_eq!(ratio, base.scale(&c));
    }
}
