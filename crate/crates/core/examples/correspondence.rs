//! From a module to its representation and back.
use solenoid::correspondence::{analyze_rep, extract_d_operators, fit_polynomials, module_from_rep, rep_from_family, DEFAULT_DEGREE_CAP};
use solenoid::modules::{build_tensor_module, GradedGlnModule, WindowedModule};
use solenoid::scalars::Scalar;
use solenoid::torus::TorusPresentation;

fn main() {
    let t = TorusPresentation::new(2, vec![2]).unwrap();
    let alpha = vec![Scalar::alpha(0), Scalar::alpha(1)];
    let m = build_tensor_module(&t, alpha.clone(), Scalar::beta(), GradedGlnModule::regular(&t), 3).unwrap();
    let fam = fit_polynomials(&extract_d_operators(&m).unwrap(), DEFAULT_DEGREE_CAP).unwrap();
    println!("fit degree {}", fam.degree);
    let rep = rep_from_family(&fam).unwrap();
    let a = analyze_rep(&rep);
    println!("{}", serde_json::to_string_pretty(&a.classification).unwrap());
    let back = module_from_rep(&rep, alpha, 3).unwrap();
    println!("rebuilt {} with dim {}", back.label(), back.dim());
}
