//! The cover on growing windows and its multiplicity table.
use solenoid::cover::cuspidality_probe;
use solenoid::modules::{build_tensor_module, GradedGlnModule};
use solenoid::scalars::Scalar;
use solenoid::torus::TorusPresentation;

fn main() {
    let t = TorusPresentation::new(2, vec![2]).unwrap();
    let probe = cuspidality_probe(
        |b| build_tensor_module(&t, vec![Scalar::alpha(0), Scalar::alpha(1)], Scalar::beta(), GradedGlnModule::regular(&t), b).unwrap(),
        &[1, 2],
        1,
    )
    .unwrap();
    for w in &probe.windows {
        println!("size {}: passed {}, surjective {}, max multiplicity {}", w.size, w.passed(), w.inner_surjective, w.max_inner_cover_multiplicity);
        for row in w.rows.iter().take(4) {
            println!("  {row:?}");
        }
    }
    println!("bounded: {}", probe.bounded);
}
