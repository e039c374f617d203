//! Windowed modules of tensor fields and over Vir_p, with the axiom check.
use solenoid::modules::{build_tensor_module, build_virp_module, verify_module_axioms, FMatrix, GradedGlnModule, WindowedModule};
use solenoid::scalars::Scalar;
use solenoid::torus::TorusPresentation;

fn main() {
    let t = TorusPresentation::new(2, vec![2]).unwrap();
    let m = build_tensor_module(&t, vec![Scalar::alpha(0), Scalar::alpha(1)], Scalar::beta(), GradedGlnModule::regular(&t), 3)
        .unwrap();
    let r = verify_module_axioms(&m);
    println!("{}: dim {}, {} relations, passed {}", m.label(), m.dim(), r.checked, r.passed());

    let f = FMatrix::ones(2);
    println!("F diagnostics: {:?}", f.validate());
    if f.validate().valid {
        let v = build_virp_module(Scalar::alpha(0), Scalar::beta(), f, 3).unwrap();
        println!("{}: passed {}", v.label(), verify_module_axioms(&v).passed());
    }
}
