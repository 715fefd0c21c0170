//! The functional L on V: moments nu_{n,m}, orthogonality of Q_m, parsed
//! expressions and expansion of a polynomial in the P basis.

use ri_orthopoly::exactmath::{Poly, Scalar};
use ri_orthopoly::ortho::{parse_expr, CoeffSystem, Session, VElem};

fn main() -> ri_orthopoly::Result<()> {
    let cs = CoeffSystem::random(3, 10, false);
    let mut s = Session::new(cs);
    s.check_nondegenerate(6)?;
    for m in 0..=3 {
        let row: Vec<String> = (0..=4).map(|n| s.nu(n, m).map(|v| v.to_string())).collect::<Result<_, _>>()?;
        println!("nu_(n,{m}) = {}", row.join(", "));
    }
    for m in 1..=4 {
        let vals: Vec<String> = (0..=m)
            .map(|n| {
                let v = s.q(m)?.mul_poly(&Poly::monomial(n, Scalar::one()));
                s.l_eval(&v).map(|x| x.to_string())
            })
            .collect::<Result<_, _>>()?;
        println!("L(x^n Q_{m}), n = 0..{m}: {}", vals.join(", "));
    }
    for expr in ["x^3*Q_2", "P_2*P_2", "x*1/d_2", "Q_3"] {
        let v = parse_expr(expr, &mut s)?;
        println!("L({expr}) = {}", s.l_eval(&v)?);
    }
    println!("L(1/d_1) = {}", s.l_eval(&VElem::x_pow_over_d(0, 1))?);
    let p = Poly::from_ints(&[1, 0, -2, 1]);
    let c: Vec<String> = s.expand_in_p(&p)?.iter().map(Scalar::to_string).collect();
    println!("{p} = sum c_m P_m with c = [{}]", c.join(", "));
    Ok(())
}
