use solenoid::cover::cuspidality_probe;
use solenoid::modules::{build_tensor_module, GradedGlnModule};
use solenoid::scalars::Scalar;
use solenoid::torus::TorusPresentation;

#[test]
fn regular_cover_on_small_windows() {
    let t = TorusPresentation::new(2, vec![2]).unwrap();
    let alpha = vec![Scalar::alpha(0), Scalar::alpha(1)];
    let probe = cuspidality_probe(
        |b| build_tensor_module(&t, alpha.clone(), Scalar::beta(), GradedGlnModule::regular(&t), b).unwrap(),
        &[1, 2],
        1,
    )
    .unwrap();
    for w in &probe.windows {
        assert!(w.passed(), "{w:?}");
        assert!(w.inner_surjective);
        assert!(!w.degenerate);
    }
    assert!(probe.bounded, "{:?}", probe.max_multiplicity);
}

#[test]
fn commutative_torus_has_nothing_to_cover() {
    let t = TorusPresentation::commutative(2);
    let probe = cuspidality_probe(
        |b| build_tensor_module(&t, vec![Scalar::alpha(0), Scalar::alpha(1)], Scalar::beta(), GradedGlnModule::trivial(&t), b).unwrap(),
        &[1, 2],
        1,
    )
    .unwrap();
    assert!(probe.degenerate);
    assert_eq!(probe.max_multiplicity, vec![0, 0]);
}
