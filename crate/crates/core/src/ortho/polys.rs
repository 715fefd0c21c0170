use crate::error::{Error, Result};
use crate::exactmath::{Poly, Scalar};

use super::CoeffSystem;

/// `P_0, ..., P_n` from the three-term recurrence. Needs coefficients up to index `n - 1`.
pub fn p_sequence(cs: &CoeffSystem, n: usize) -> Result<Vec<Poly>> {
    if n > 0 {
        cs.require(n - 1)?;
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(Poly::one());
    if n == 0 {
        return Ok(out);
    }
    out.push(Poly::linear(Scalar::one(), -cs.b(0)));
    for k in 1..n {
        let next = &(&Poly::linear(Scalar::one(), -cs.b(k)) * &out[k]) - &(&cs.factor(k) * &out[k - 1]);
        out.push(next);
    }
    Ok(out)
}

/// Reversed polynomials `P*_0, ..., P*_n` from
/// `P*_{k+1} = (1 - b_k x) P*_k - (a_k x + lambda_k x^2) P*_{k-1}`.
pub fn p_star_sequence(cs: &CoeffSystem, n: usize) -> Result<Vec<Poly>> {
    if n > 0 {
        cs.require(n - 1)?;
    }
    let mut out = Vec::with_capacity(n + 1);
    out.push(Poly::one());
    if n == 0 {
        return Ok(out);
    }
    out.push(Poly::linear(-cs.b(0), Scalar::one()));
    for k in 1..n {
        let step = Poly::linear(-cs.b(k), Scalar::one());
        let tail = Poly::new(vec![Scalar::zero(), cs.a(k).clone(), cs.lambda(k).clone()]);
        let next = &(&step * &out[k]) - &(&tail * &out[k - 1]);
        out.push(next);
    }
    Ok(out)
}

/// `P*_n`; by convention `P*_{-1} = 0` is not representable here and callers handle it.
pub fn p_star(cs: &CoeffSystem, n: usize) -> Result<Poly> {
    Ok(p_star_sequence(cs, n)?.pop().expect("nonempty sequence"))
}

/// The critical value `P_k(-lambda_k / a_k)`, which must be nonzero for the
/// functional to be defined through index `k`.
pub fn critical_value(cs: &CoeffSystem, pk: &Poly, k: usize) -> Result<Scalar> {
    cs.require(k)?;
    if cs.a(k).is_zero() {
        return Err(Error::Degenerate {
            k,
            reason: "a_k = 0".into(),
        });
    }
    Ok(pk.eval(&(-(cs.lambda(k) / cs.a(k)))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversal_matches_recurrence() {
        let cs = CoeffSystem::random(3, 8, false);
        let p = p_sequence(&cs, 7).unwrap();
        let ps = p_star_sequence(&cs, 7).unwrap();
        for n in 0..=7 {
            assert_eq!(p[n].reverse(n), ps[n], "n = {n}");
            assert!(p[n].is_monic());
        }
    }
}
