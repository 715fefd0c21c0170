//! The lambda = 0 case: L on Laurent monomials, the determinant of
//! L(x^{i-j-1}), system inversion and the functional F.

use ri_orthopoly::determinants::laurent_det;
use ri_orthopoly::ortho::{CoeffSystem, Session, VElem};

fn main() -> ri_orthopoly::Result<()> {
    let cs = CoeffSystem::random(11, 10, true);
    let mut s = Session::new(cs.clone());
    for e in -3..=3 {
        let v = VElem::laurent_monomial(e, &cs)?;
        println!("L(x^{e}) = {}", s.l_eval(&v)?);
    }
    for n in 1..=4 {
        let (computed, predicted) = laurent_det(n, &mut s)?;
        assert_eq!(computed, predicted);
        println!("det L(x^(i-j-1)), n = {n}: {computed}");
    }
    let inv = cs.invert()?;
    println!("inverted b: {:?}", inv.b_table().iter().map(|v| v.to_string()).collect::<Vec<_>>());
    println!("F(1/d_1) = {}", s.f_eval(&VElem::x_pow_over_d(0, 1))?);
    Ok(())
}
