use solenoid::algebras::verify::Sampling;
use solenoid::algebras::{
    gamma_grading_check, gr_prime_ideal_check, l_plus_ideal_check, quotient_iso_check,
    verify_lie_axioms, wmu_iso_check, Algebra, BasisSymbol, GradedLieElement, LBracket,
};
use solenoid::scalars::{LatticePoint, Scalar};
use solenoid::torus::TorusPresentation;

fn pt(v: &[i64]) -> LatticePoint {
    LatticePoint::new(v)
}

fn k(orders: &[u32]) -> TorusPresentation {
    TorusPresentation::new(2 * orders.len().max(1), orders.to_vec()).unwrap()
}

#[test]
fn solenoidal_axioms_k2_k3() {
    for t in [k(&[2]), k(&[3])] {
        let rep = verify_lie_axioms(&Algebra::solenoidal(&t, 2), Sampling::default());
        assert!(rep.passed(), "{:?}", rep.violations.first());
        assert!(!rep.sampled);
        assert_eq!(rep.triples_checked, 25 * 24 * 23 / 6);
    }
}

#[test]
fn vir_p_axioms_with_central_terms() {
    for p in [1, 2, 3] {
        let rep = verify_lie_axioms(&Algebra::VirP { p, bound: 6 }, Sampling::default());
        assert!(rep.passed(), "p={p}: {:?}", rep.violations.first());
    }
}

#[test]
fn derivation_algebra_axioms() {
    for t in [TorusPresentation::commutative(2), k(&[2])] {
        let l = Algebra::deriv_l(&t, 3);
        let rep = verify_lie_axioms(&l, Sampling::default());
        assert!(rep.passed(), "{:?}", rep.violations.first());
        assert!(!rep.sampled);
    }
}

#[test]
fn displayed_l_bracket_fails_jacobi() {
    let t = k(&[2]);
    let l = Algebra::DerivL {
        torus: t.clone(),
        gamma: Scalar::gamma_vector(2),
        dmax: 1,
        convention: LBracket::Displayed,
    };
    let a = GradedLieElement::basis(BasisSymbol::XD(pt(&[1, 0])));
    let b = BasisSymbol::XT(pt(&[0, 0]), pt(&[1, 0]));
    let c = BasisSymbol::XT(pt(&[0, 0]), pt(&[1, 1]));
    let lhs = l.bracket(&a, &l.bracket_basis(&b, &c).unwrap()).unwrap();
    let rhs = l
        .bracket(&l.bracket(&a, &GradedLieElement::basis(b.clone())).unwrap(), &GradedLieElement::basis(c.clone()))
        .unwrap()
        .add(
            &l.bracket(&GradedLieElement::basis(b), &l.bracket(&a, &GradedLieElement::basis(c)).unwrap())
                .unwrap(),
        );
    assert_ne!(lhs, rhs);
    let rep = verify_lie_axioms(&l, Sampling::default());
    assert!(rep.violations.iter().any(|v| v.kind == "jacobi"));
}

#[test]
fn gl_algebras() {
    for t in [k(&[2]), k(&[3]), k(&[2, 2])] {
        let rep = verify_lie_axioms(&Algebra::GlN { torus: t.clone() }, Sampling::default());
        assert!(rep.passed());
        assert!(gamma_grading_check(&Algebra::GlN { torus: t }).passed());
    }
    for d in 1..=3 {
        let rep = verify_lie_axioms(
            &Algebra::GlDGamma {
                gamma: Scalar::gamma_vector(d),
            },
            Sampling::default(),
        );
        assert!(rep.passed());
    }
}

#[test]
fn structural_checks() {
    let t = k(&[2]);
    assert!(wmu_iso_check(&t, 2).passed());
    assert!(gr_prime_ideal_check(&t, 2).passed());
    let l = Algebra::deriv_l(&t, 3);
    let r = l_plus_ideal_check(&l);
    assert!(r.passed(), "{:?}", r.violations);
    let q = quotient_iso_check(&l);
    assert!(q.passed(), "{:?}", q.violations);
    assert!(gamma_grading_check(&l).passed());
}

#[test]
fn sampling_is_deterministic() {
    let t = k(&[2]);
    let g = Algebra::solenoidal(&t, 2);
    let s = Sampling {
        threshold: 100,
        samples: 50,
        seed: 7,
    };
    let a = verify_lie_axioms(&g, s);
    let b = verify_lie_axioms(&g, s);
    assert!(a.sampled);
    assert_eq!(a.triples_checked, 50);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}
