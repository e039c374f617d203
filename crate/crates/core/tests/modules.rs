use solenoid::modules::{
    build_tensor_module, build_virp_module, build_wmu_module, reducibility_grid, verify_module_axioms,
    verify_z_action, FMatrix, GradedGlnModule, Verdict,
};
use solenoid::scalars::Scalar;
use solenoid::torus::TorusPresentation;

fn sym_alpha(d: usize) -> Vec<Scalar> {
    (0..d).map(Scalar::alpha).collect()
}

#[test]
fn regular_tensor_module_axioms() {
    let t = TorusPresentation::new(2, vec![2]).unwrap();
    let m = build_tensor_module(&t, sym_alpha(2), Scalar::beta(), GradedGlnModule::regular(&t), 3).unwrap();
    let rep = verify_module_axioms(&m);
    assert!(rep.passed(), "{:?}", rep.violations.first());
    assert!(rep.checked > 1000);
    assert!(verify_z_action(&m).passed());
}

#[test]
fn wmu_module_axioms() {
    let m = build_wmu_module(2, sym_alpha(2), Scalar::beta(), 3).unwrap();
    let rep = verify_module_axioms(&m);
    assert!(rep.passed(), "{:?}", rep.violations.first());
}

fn zero_one_patterns(p: i64) -> Vec<FMatrix> {
    let cells = ((p - 1) * p) as u32;
    (0..1u32 << cells)
        .map(|mask| {
            let rows = (0..p - 1)
                .map(|i| {
                    (0..p)
                        .map(|j| Scalar::from_int(((mask >> (i * p + j)) & 1) as i64))
                        .collect()
                })
                .collect();
            FMatrix::new(p, rows).unwrap()
        })
        .collect()
}

#[test]
fn virp_modules_for_all_valid_zero_one_patterns() {
    for p in [2, 3] {
        let valid: Vec<FMatrix> = zero_one_patterns(p).into_iter().filter(|f| f.validate().valid).collect();
        assert!(!valid.is_empty());
        for f in valid {
            let m = build_virp_module(Scalar::alpha(0), Scalar::beta(), f.clone(), 3).unwrap();
            let rep = verify_module_axioms(&m);
            assert!(rep.passed(), "p={p} {f:?}: {:?}", rep.violations.first());
        }
    }
}

#[test]
fn reducibility_grid_agrees_with_criterion() {
    let cells = reducibility_grid(3, 1).unwrap();
    assert_eq!(cells.len(), 30);
    let mut reducible = 0;
    for c in &cells {
        assert_eq!(c.agrees, Some(true), "{:?} {:?} {}", c.w, c.alpha, c.beta);
        if let Verdict::Reducible { .. } = c.report.verdict {
            reducible += 1;
            assert_eq!(c.witness_expected, Some(true));
        }
    }
    // alpha in {(0,0), (1,-2)} times beta in {0, 1}, trivial W only.
    assert_eq!(reducible, 4);
}
