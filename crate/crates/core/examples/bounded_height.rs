//! Generating functions of height-capped paths as rational functions of
//! reversed polynomials, checked against the capped path sums.

use ri_orthopoly::exactmath::Series;
use ri_orthopoly::ortho::{truncated_cf, CoeffSystem};
use ri_orthopoly::paths::{bounded_gf, weight_sum, NumericWeights, Point};

fn main() -> ri_orthopoly::Result<()> {
    let cs = CoeffSystem::random(5, 8, false);
    let k = 2;
    for (r, s) in [(0, 0), (0, 2), (2, 1)] {
        let gf = bounded_gf(r, s, k, &cs)?;
        let series = Series::from_rational(&gf.full_numerator(), &gf.denominator, 8)?;
        for n in 0..=8 {
            let dp = weight_sum(Point::new(0, r), Point::new(n, s), &NumericWeights(&cs), Some(k))?;
            assert_eq!(dp, series.coeff(n));
        }
        println!("(r, s) = ({r}, {s}): ({}) / ({})", gf.full_numerator(), gf.denominator);
    }
    let (num, den) = truncated_cf(&cs, k)?;
    println!("fraction truncated at level {k}: ({num}) / ({den})");
    Ok(())
}
