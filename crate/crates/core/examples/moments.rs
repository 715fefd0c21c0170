//! Moments three ways: the recurrence for L, weighted Motzkin-Schroder paths,
//! and the continued fraction.

use ri_orthopoly::exactmath::Scalar;
use ri_orthopoly::ortho::{cf_series, CoeffSystem, Session};
use ri_orthopoly::paths::{weight_sum, NumericWeights, Point};

fn main() -> ri_orthopoly::Result<()> {
    let ones = CoeffSystem::constant(Scalar::one(), Scalar::one(), Scalar::one(), 8);
    let mut s = Session::new(ones);
    let mu: Vec<String> = s.moments(5)?.iter().map(Scalar::to_string).collect();
    println!("all-ones system: {}", mu.join(" "));

    let cs = CoeffSystem::random(7, 12, false);
    let mut s = Session::new(cs.clone());
    let cf = cf_series(&cs, 10)?;
    for n in 0..=10 {
        let rec = s.mu(n)?;
        let paths = weight_sum(Point::new(0, 0), Point::new(n, 0), &NumericWeights(&cs), None)?;
        assert_eq!(rec, paths);
        assert_eq!(rec, cf.coeff(n));
        println!("mu_{n} = {rec}");
    }
    Ok(())
}
