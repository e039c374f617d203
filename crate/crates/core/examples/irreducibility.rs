//! Reachability verdicts next to the closed-form criterion.
use solenoid::modules::{grid_cell, WChoice};
use solenoid::scalars::Scalar;
use solenoid::torus::TorusPresentation;

fn main() {
    let t = TorusPresentation::commutative(2);
    for beta in [Scalar::zero(), Scalar::one(), Scalar::from_ratio(1, 2)] {
        let c = grid_cell(&t, WChoice::Trivial, vec![Scalar::zero(), Scalar::zero()], beta.clone(), 3, 1).unwrap();
        println!(
            "beta = {beta}: criterion reducible {}, verdict {}",
            c.criterion_reducible,
            serde_json::to_value(&c.report.verdict).unwrap()["verdict"]
        );
    }
}
