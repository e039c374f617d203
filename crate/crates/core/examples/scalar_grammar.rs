//! Exact scalars: symbols, roots of unity, and the textual form used in reports.
use solenoid::scalars::{Cyclotomic, Scalar};

fn main() {
    let g1 = Scalar::gamma(0);
    let b = Scalar::beta();
    let x = (&(&Scalar::from_int(2) * &g1) - &Scalar::gamma(1)).checked_div(&(&b + &Scalar::one())).unwrap();
    println!("x = {x}");
    let i = Scalar::from_cyclotomic(Cyclotomic::root_of_unity(4, 1));
    println!("zeta4^2 = {}", &i * &i);
    let parsed: Scalar = "(2*g1 - g2)/(b + 1)".parse().unwrap();
    assert_eq!(parsed, x);
    println!("round trip ok: {}", serde_json::to_string(&parsed).unwrap());
}
