//! A rational quantum torus: cocycle, radical, Gamma_0 and the matrix model.
use solenoid::scalars::LatticePoint;
use solenoid::torus::TorusPresentation;

fn main() {
    let t = TorusPresentation::new(2, vec![2]).unwrap();
    let (m, n) = (LatticePoint::new(&[1, 0]), LatticePoint::new(&[0, 1]));
    println!("sigma(m, n) = {}, sigma(n, m) = {}", t.sigma_scalar(&m, &n), t.sigma_scalar(&n, &m));
    println!("radical basis: {:?}", t.radical_basis().iter().map(|p| p.to_string()).collect::<Vec<_>>());
    for s in t.gamma_reps() {
        let x = t.matrix_realization(&s);
        let rows: Vec<Vec<String>> = x.to_rows().iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
        println!("X^{s} = {rows:?}");
    }
    let lhs = &t.matrix_realization(&m) * &t.matrix_realization(&n);
    assert_eq!(lhs, t.matrix_realization(&(&m + &n)).scale(&t.sigma_scalar(&m, &n)));
}
