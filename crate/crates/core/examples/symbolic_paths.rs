//! Path enumeration and symbolic path sums in b_k, a_k, lambda_k.

use ri_orthopoly::paths::{count_filtered, enumerate_filtered, weight_sum, PathFilter, Point, SymbolicWeights};

fn main() -> ri_orthopoly::Result<()> {
    let (o, end) = (Point::new(0, 0), Point::new(2, 0));
    for p in enumerate_filtered(o, end, &PathFilter::default(), 100)? {
        println!("{p}\t{}", p.weight(&SymbolicWeights));
    }
    for n in 0..=2 {
        println!("mu_{n} = {}", weight_sum(o, Point::new(n, 0), &SymbolicWeights, None)?);
    }
    // filters: Schroder paths (no D) and paths avoiding UV peaks
    for n in 0..=6 {
        let to = Point::new(n, 0);
        let all = count_filtered(o, to, &PathFilter::default())?;
        let schroder = count_filtered(o, to, &PathFilter::schroder())?;
        let no_peak = count_filtered(o, to, &PathFilter { no_uv_peak: true, ..PathFilter::default() })?;
        println!("n = {n}: {all} paths, {schroder} without D, {no_peak} without UV peaks");
    }
    Ok(())
}
