//! Determinants of nu-matrices and Hankel matrices against their product
//! formulas, and P_n, Q_n recovered by Cramer's rule.

use ri_orthopoly::determinants::{delta, delta_shifted, hankel, hankel_constant_prediction, p_via_det, q_via_det, DetKind};
use ri_orthopoly::exactmath::Scalar;
use ri_orthopoly::ortho::{CoeffSystem, Session};

fn main() -> ri_orthopoly::Result<()> {
    let cs = CoeffSystem::random_full(9, 16);
    let mut s = Session::new(cs.clone());
    for n in 1..=4 {
        for kind in DetKind::UNSHIFTED {
            let r = delta(kind, n, &mut s)?;
            println!("{kind} n = {n}: {} (formula {})", r.computed, r.predicted);
        }
        for kind in DetKind::SHIFTED {
            let r = delta_shifted(kind, n, 1, &mut s)?;
            assert!(r.matched);
        }
    }
    for n in 0..=4 {
        assert_eq!(p_via_det(n, &mut s)?, s.p(n)?);
        let q = s.q(n)?;
        for variant in 1..=3 {
            assert!(q_via_det(n, variant, &mut s)?.equals(&q, &cs)?);
        }
    }
    println!("P_4 = {}", s.p(4)?);

    let one = Scalar::one();
    let mut c = Session::new(CoeffSystem::constant(one.clone(), one.clone(), one.clone(), 12));
    for n in 0..=3 {
        println!("Hankel {n}: {} = {}", hankel(n, &mut c)?, hankel_constant_prediction(&one, &one, &one, n));
    }
    Ok(())
}
