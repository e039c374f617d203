//! Brackets of the solenoidal algebra and an exhaustive Jacobi check.
use solenoid::algebras::verify::Sampling;
use solenoid::algebras::{verify_lie_axioms, Algebra, BasisSymbol};
use solenoid::scalars::LatticePoint;
use solenoid::torus::TorusPresentation;

fn main() {
    let t = TorusPresentation::new(2, vec![2]).unwrap();
    let g = Algebra::solenoidal(&t, 2);
    let a = BasisSymbol::L(LatticePoint::new(&[1, 0]));
    let b = BasisSymbol::L(LatticePoint::new(&[0, 1]));
    println!("[{a}, {b}] = {}", g.bracket_basis(&a, &b).unwrap());
    for alg in [g, Algebra::deriv_l(&t, 3), Algebra::VirP { p: 2, bound: 6 }] {
        let r = verify_lie_axioms(&alg, Sampling::default());
        println!("{} {}: {} triples, {} violations", r.algebra, r.window, r.triples_checked, r.violations.len());
    }
}
