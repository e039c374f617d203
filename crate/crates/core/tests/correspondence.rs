use solenoid::algebras::BasisSymbol;
use solenoid::correspondence::{
    extract_d_operators, fit_polynomials, module_from_rep, rep_from_family, verify_p_brackets,
    DEFAULT_DEGREE_CAP,
};
use solenoid::modules::{build_tensor_module, GradedGlnModule, WeightWindowModule, WindowedModule};
use solenoid::scalars::{lattice_box, LatticePoint, Scalar};
use solenoid::torus::TorusPresentation;

fn k2() -> TorusPresentation {
    TorusPresentation::new(2, vec![2]).unwrap()
}

fn regular(bound: i64) -> WeightWindowModule {
    let t = k2();
    build_tensor_module(
        &t,
        vec![Scalar::alpha(0), Scalar::alpha(1)],
        Scalar::beta(),
        GradedGlnModule::regular(&t),
        bound,
    )
    .unwrap()
}

#[test]
fn fit_recovers_tensor_coefficients() {
    let m = regular(3);
    let fam = fit_polynomials(&extract_d_operators(&m).unwrap(), DEFAULT_DEGREE_CAP).unwrap();
    assert!(fam.degree <= 1);
    let t = k2();
    let gamma = Scalar::gamma_vector(2);
    let zero = LatticePoint::zero(2);
    for (si, s) in t.gamma_reps().iter().enumerate() {
        let c = solenoid::scalars::inner_product_scalars(
            &gamma,
            &[&Scalar::alpha(0) + &Scalar::from_int(s.entries()[0]), &Scalar::alpha(1) + &Scalar::from_int(s.entries()[1])],
        )
        .unwrap();
        assert_eq!(fam.p0(si, &zero), solenoid::linalg::Matrix::scalar(1, &c));
        for i in 0..2 {
            let e = LatticePoint::unit(2, i);
            assert_eq!(fam.p0(si, &e), solenoid::linalg::Matrix::scalar(1, &(&Scalar::beta() * &gamma[i])));
        }
    }
    let rep = verify_p_brackets(&fam);
    assert!(rep.passed(), "{:?}", rep.violations.first());
    assert_eq!(rep.facts["constant_term_law"], serde_json::json!(true));
}

#[test]
fn round_trip_reproduces_the_action() {
    let m = regular(3);
    let fam = fit_polynomials(&extract_d_operators(&m).unwrap(), DEFAULT_DEGREE_CAP).unwrap();
    let rep = rep_from_family(&fam).unwrap();
    let back = module_from_rep(&rep, m.alpha().to_vec(), 3).unwrap();
    assert_eq!(back.positions(), m.positions());
    let mut compared = 0;
    for g in lattice_box(2, 3) {
        let sym = BasisSymbol::L(g);
        for pos in 0..m.positions().len() {
            let a = m.act_block(&sym, pos);
            let b = back.act_block(&sym, pos);
            assert_eq!(a, b, "{sym} at {}", m.positions()[pos]);
            compared += 1;
        }
    }
    assert!(compared > 0);
}

#[test]
fn analysis_of_extracted_rep() {
    use solenoid::correspondence::{analyze_rep, tensor_rep, Classification};
    let m = regular(3);
    let fam = fit_polynomials(&extract_d_operators(&m).unwrap(), DEFAULT_DEGREE_CAP).unwrap();
    let a = analyze_rep(&rep_from_family(&fam).unwrap());
    assert!(a.l_plus_killed);
    assert_eq!(a.beta, Some(Scalar::beta()));
    assert_eq!(a.w_isomorphic_to_regular, Some(true));
    assert!(a.graded_simplicity.unwrap().graded_simple);
    assert!(matches!(a.classification, Classification::TensorField { w_regular: true, .. }));

    let w = GradedGlnModule::regular(&k2());
    let sum = tensor_rep(&w, &Scalar::from_int(2))
        .unwrap()
        .direct_sum(&tensor_rep(&w, &Scalar::from_ratio(1, 2)).unwrap())
        .unwrap();
    assert!(matches!(analyze_rep(&sum).classification, Classification::NotIrreducible { .. }));
}

#[test]
fn literal_constant_bracket_fails_on_carries() {
    // With k = 2, a class (1,0) shifted by r = (1,0) carries into the radical.
    let m = regular(3);
    let fam = fit_polynomials(&extract_d_operators(&m).unwrap(), DEFAULT_DEGREE_CAP).unwrap();
    let rep = verify_p_brackets(&fam);
    assert!(rep.passed());
    assert!(rep.facts["literal_constant_bracket_failures"].as_u64().unwrap() > 0);
}

#[test]
fn nilpotent_rep_gives_a_non_tensor_cuspidal_module() {
    use solenoid::correspondence::nilpotent_rep;
    use solenoid::modules::verify_module_axioms;
    let rep = nilpotent_rep(2, &Scalar::beta()).unwrap();
    let m = module_from_rep(&rep, vec![Scalar::alpha(0), Scalar::alpha(1)], 3).unwrap();
    assert_eq!(m.multiplicity(0), 2);
    let check = verify_module_axioms(&m);
    assert!(check.passed(), "{:?}", check.violations.first());
}

#[test]
fn extraction_inverts_module_from_rep() {
    use solenoid::correspondence::{nilpotent_rep, tensor_rep};
    let reps = [
        tensor_rep(&GradedGlnModule::regular(&k2()), &Scalar::beta()).unwrap(),
        nilpotent_rep(2, &Scalar::from_ratio(1, 3)).unwrap(),
    ];
    for rep in reps {
        let d = rep.torus().d();
        let alpha: Vec<Scalar> = (0..d).map(Scalar::alpha).collect();
        let m = module_from_rep(&rep, alpha, 4).unwrap();
        let fam = fit_polynomials(&extract_d_operators(&m).unwrap(), DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(rep_from_family(&fam).unwrap(), rep);
    }
}
