//! R_I Hermite polynomials: theta moments, the generating function identity
//! and the linearization of products.

use ri_orthopoly::exactmath::Scalar;
use ri_orthopoly::families::{hermite_egf_check, hermite_linearization_check, r1_hermite_egf, theta, FamilySpec};
use ri_orthopoly::ortho::Session;

fn main() -> ri_orthopoly::Result<()> {
    let a = Scalar::frac(2, 3);
    let f = FamilySpec::r1_hermite(a.clone())?;
    let mut s = Session::new(f.build(10)?);
    for m in 0..=8 {
        assert_eq!(s.mu(m)?, theta(m, &a));
        println!("theta_{m} = {}", theta(m, &a));
    }
    println!("generating function identity through order 8: {}", hermite_egf_check(&a, 8)?);
    println!("linearization for n, m <= 3: {}", (0..=3).all(|n| (0..=3).all(|m| hermite_linearization_check(n, m, &a).unwrap_or(false))));
    for n in 0..=3 {
        println!("P_{n} = {}", r1_hermite_egf(n, &a));
    }
    Ok(())
}
