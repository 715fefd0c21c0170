//! Pochhammer symbols, binomials, Stirling numbers and terminating
//! hypergeometric sums.

use super::{Poly, Scalar};

/// Rising factorial `(a)_k = a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &Scalar, k: usize) -> Scalar {
    (0..k).map(|j| a + Scalar::from(j)).product()
}

/// q-Pochhammer `(a; q)_k = (1 - a)(1 - a q) ... (1 - a q^{k-1})`.
pub fn qpochhammer(a: &Scalar, q: &Scalar, k: usize) -> Scalar {
    let mut acc = Scalar::one();
    let mut t = a.clone();
    for _ in 0..k {
        acc = acc * (Scalar::one() - &t);
        t = &t * q;
    }
    acc
}

/// Rising factorial with polynomial argument: `(p)_k` where `p` is a polynomial in `x`.
pub fn pochhammer_poly(p: &Poly, k: usize) -> Poly {
    (0..k).fold(Poly::one(), |acc, j| {
        &acc * &(p + &Poly::constant(Scalar::from(j)))
    })
}

pub fn binomial(n: i64, k: i64) -> Scalar {
    if k < 0 || n < k || n < 0 {
        return Scalar::zero();
    }
    let k = k.min(n - k);
    let mut acc = Scalar::one();
    for j in 0..k {
        acc = acc * Scalar::from_int(n - j) / Scalar::from_int(j + 1);
    }
    acc
}

pub fn factorial(n: usize) -> Scalar {
    (1..=n).map(Scalar::from).product()
}

/// `(2n - 1)!!`, with `(-1)!! = 1`.
pub fn double_factorial_odd(n: usize) -> Scalar {
    (1..=n).map(|j| Scalar::from(2 * j - 1)).product()
}

/// Stirling numbers of the second kind `S(n, j)` for `0 <= j <= n`.
pub fn stirling2_row(n: usize) -> Vec<Scalar> {
    let mut row = vec![Scalar::one()];
    for m in 1..=n {
        let mut next = vec![Scalar::zero(); m + 1];
        for j in 1..=m {
            let keep = if j < m { &row[j] * Scalar::from(j) } else { Scalar::zero() };
            next[j] = keep + &row[j - 1];
        }
        row = next;
    }
    row
}

/// Terminating `pFq` sum `sum_{k=0}^{n} prod (a_i)_k / prod (b_j)_k * z^k / k!`
/// with scalar parameters. `n` is the truncation index, normally the
/// degree fixed by a `-n` upper parameter.
pub fn hyper_sum(upper: &[Scalar], lower: &[Scalar], z: &Scalar, n: usize) -> Option<Scalar> {
    let mut acc = Scalar::zero();
    let mut term = Scalar::one();
    for k in 0..=n {
        acc += &term;
        let mut num = z.clone();
        for a in upper {
            num = num * (a + Scalar::from(k));
        }
        let mut den = Scalar::from(k + 1);
        for b in lower {
            den = den * (b + Scalar::from(k));
        }
        if num.is_zero() {
            break;
        }
        if den.is_zero() {
            return None;
        }
        term = term * num / den;
    }
    Some(acc)
}
