use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{MathError, Poly, Scalar};

/// Truncated power series `c_0 + c_1 x + ... + c_N x^N + O(x^{N+1})`.
///
/// Binary operations truncate to the smaller order of the two operands.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Series {
    coeffs: Vec<Scalar>,
}

impl Series {
    /// Series of order `order` with the given leading coefficients, padded with zeros.
    pub fn new(mut coeffs: Vec<Scalar>, order: usize) -> Self {
        coeffs.resize(order + 1, Scalar::zero());
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Series::new(vec![Scalar::one()], order)
    }

    pub fn from_poly(p: &Poly, order: usize) -> Self {
        Series::new(p.coeffs().iter().take(order + 1).cloned().collect(), order)
    }

    /// Expansion of `num / den`; requires `den(0) != 0`.
    pub fn from_rational(num: &Poly, den: &Poly, order: usize) -> Result<Self, MathError> {
        Ok(&Series::from_poly(num, order) * &Series::from_poly(den, order).inverse()?)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, order: usize) -> Series {
        Series::new(self.coeffs.iter().take(order + 1).cloned().collect(), order)
    }

    pub fn scale(&self, c: &Scalar) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by `x^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Series {
        let n = self.order();
        let mut coeffs = vec![Scalar::zero(); k.min(n + 1)];
        coeffs.extend(self.coeffs.iter().take((n + 1).saturating_sub(k)).cloned());
        Series { coeffs }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<Series, MathError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(MathError::NotInvertible);
        }
        let inv0 = c0.recip()?;
        let n = self.order();
        let mut out = vec![Scalar::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut s = Scalar::zero();
            for j in 1..=k {
                let a = &self.coeffs[j];
                if !a.is_zero() {
                    s += &(a * &out[k - j]);
                }
            }
            out[k] = -(s * &inv0);
        }
        Ok(Series { coeffs: out })
    }
    /// Divide by `x`; requires a zero constant term. The order drops by one.
    pub fn div_x(&self) -> Result<Series, MathError> {
        if !self.coeffs[0].is_zero() || self.order() == 0 {
            return Err(MathError::NotInvertible);
        }
        Ok(Series {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Square root with constant term 1; requires `c_0 = 1`.
    pub fn sqrt(&self) -> Result<Series, MathError> {
        if !self.coeffs[0].is_one() {
            return Err(MathError::NotInvertible);
        }
        // r^2 = s, r_0 = 1: 2 r_k = s_k - sum_{0<j<k} r_j r_{k-j}
        let n = self.order();
        let mut r = vec![Scalar::zero(); n + 1];
        r[0] = Scalar::one();
        let half = Scalar::frac(1, 2);
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..k {
                acc -= &(&r[j] * &r[k - j]);
            }
            r[k] = acc * &half;
        }
        Ok(Series { coeffs: r })
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.coeffs.iter().map(Scalar::to_string).collect();
        write!(f, "Series[{}; O(x^{})]", body.join(", "), self.order() + 1)
    }
}

impl Add<&Series> for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub<&Series> for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        Series {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul<&Series> for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        let n = self.order().min(rhs.order());
        let mut out = vec![Scalar::zero(); n + 1];
        for i in 0..=n {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in 0..=n - i {
                let b = &rhs.coeffs[j];
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Series { coeffs: out }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}
