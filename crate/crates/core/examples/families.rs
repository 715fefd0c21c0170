//! Named families: recurrence polynomials against hypergeometric closed
//! forms, moment series against the classical fraction, closed moments.

use ri_orthopoly::exactmath::Scalar;
use ri_orthopoly::families::{FamilySpec, Jacobi01Variant};
use ri_orthopoly::ortho::Session;

fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

fn main() -> ri_orthopoly::Result<()> {
    let fams = [
        FamilySpec::jacobi01(q(1, 2), q(1, 2), Jacobi01Variant::OneMinus)?,
        FamilySpec::laguerre(q(1, 3))?,
        FamilySpec::meixner(q(3, 2), q(1, 3))?,
        FamilySpec::little_q_jacobi(q(1, 3), q(2, 5), q(1, 2))?,
        FamilySpec::askey_wilson(q(1, 3), q(2, 5), q(-1, 4), q(3, 7), q(1, 2))?,
        FamilySpec::q_racah(q(1, 3), q(2, 5), q(3, 7), 4, q(1, 2))?,
    ];
    for f in &fams {
        let xs = f.sample_points(4);
        let glued = (0..=4).all(|n| f.glue_shift_check(n, &xs).is_ok_and(|r| r.polys_equal && r.proportional));
        let series = f.moment_series_check(8)?;
        let mut s = Session::new(f.build(6)?);
        let mu: Vec<String> = s.moments(4)?.iter().map(Scalar::to_string).collect();
        println!("{f}\n  closed forms {glued}, fraction {}, mu = {}", series.matched, mu.join(" "));
        if let Ok(m) = f.closed_moment(3) {
            println!("  closed mu_3 = {m}");
        }
    }
    let f = FamilySpec::laguerre(q(1, 3))?;
    println!("{}", serde_json::to_string(&f.build(3)?.to_json()).expect("json"));
    Ok(())
}
