use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Poly, Scalar};

/// Recurrence coefficients `(b_n, a_n, lambda_n)` for
/// `P_{n+1} = (x - b_n) P_n - (a_n x + lambda_n) P_{n-1}`.
///
/// All three tables cover indices `0..len`. `a_0` and `lambda_0` are stored
/// but never read.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffSystem {
    b: Vec<Scalar>,
    a: Vec<Scalar>,
    lambda: Vec<Scalar>,
}

/// Tagged JSON form `{"kind":"table","b":[...],"a":[...],"lambda":[...]}`.
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename = "table")]
struct TableJson {
    b: Vec<Scalar>,
    a: Vec<Scalar>,
    lambda: Vec<Scalar>,
}

impl CoeffSystem {
    pub fn new(b: Vec<Scalar>, a: Vec<Scalar>, lambda: Vec<Scalar>) -> Result<Self> {
        if b.is_empty() || b.len() != a.len() || b.len() != lambda.len() {
            return Err(Error::InvalidInput(format!(
                "coefficient tables must be nonempty and of equal length (b: {}, a: {}, lambda: {})",
                b.len(),
                a.len(),
                lambda.len()
            )));
        }
        Ok(CoeffSystem { b, a, lambda })
    }

    /// Tabulate `len` entries of each sequence.
    pub fn from_fns(
        len: usize,
        b: impl Fn(usize) -> Scalar,
        a: impl Fn(usize) -> Scalar,
        lambda: impl Fn(usize) -> Scalar,
    ) -> Self {
        assert!(len > 0, "CoeffSystem needs at least one index");
        CoeffSystem {
            b: (0..len).map(&b).collect(),
            a: (0..len).map(&a).collect(),
            lambda: (0..len).map(&lambda).collect(),
        }
    }

    /// Constant coefficients `b_n = B`, `a_n = A`, `lambda_n = C`.
    pub fn constant(a: Scalar, b: Scalar, c: Scalar, len: usize) -> Self {
        CoeffSystem::from_fns(len, |_| b.clone(), |_| a.clone(), |_| c.clone())
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// Largest index at which all three sequences are defined.
    pub fn valid_to(&self) -> usize {
        self.b.len() - 1
    }

    pub fn require(&self, index: usize) -> Result<()> {
        if index > self.valid_to() {
            return Err(Error::CoefficientRange {
                needed: index,
                available: self.valid_to(),
            });
        }
        Ok(())
    }

    /// Panics beyond `valid_to`; callers check with `require` first.
    pub fn b(&self, n: usize) -> &Scalar {
        &self.b[n]
    }

    pub fn a(&self, n: usize) -> &Scalar {
        &self.a[n]
    }

    pub fn lambda(&self, n: usize) -> &Scalar {
        &self.lambda[n]
    }

    pub fn b_table(&self) -> &[Scalar] {
        &self.b
    }

    pub fn a_table(&self) -> &[Scalar] {
        &self.a
    }

    pub fn lambda_table(&self) -> &[Scalar] {
        &self.lambda
    }

    /// `a_n x + lambda_n`, the ratio `d_n / d_{n-1}`.
    pub fn factor(&self, n: usize) -> Poly {
        Poly::linear(self.a[n].clone(), self.lambda[n].clone())
    }

    /// `d_m = prod_{i=1}^{m} (a_i x + lambda_i)`.
    pub fn d(&self, m: usize) -> Result<Poly> {
        self.require(m)?;
        Ok((1..=m).fold(Poly::one(), |acc, i| &acc * &self.factor(i)))
    }

    /// The shift `delta^s`: every sequence advanced by `s` indices.
    pub fn shift(&self, s: usize) -> Result<CoeffSystem> {
        if s >= self.len() {
            return Err(Error::CoefficientRange {
                needed: s,
                available: self.valid_to(),
            });
        }
        Ok(CoeffSystem {
            b: self.b[s..].to_vec(),
            a: self.a[s..].to_vec(),
            lambda: self.lambda[s..].to_vec(),
        })
    }

    /// True when `lambda_n = 0` for every stored `n >= 1`.
    pub fn is_laurent(&self) -> bool {
        self.lambda.iter().skip(1).all(Scalar::is_zero)
    }

    /// Inverted system of a Laurent case: `b'_n = 1/b_n`, `a'_n = a_n / (b_{n-1} b_n)`.
    pub fn invert(&self) -> Result<CoeffSystem> {
        if !self.is_laurent() {
            return Err(Error::HypothesisViolated(
                "inversion requires lambda_n = 0 for all n >= 1".into(),
            ));
        }
        if let Some(k) = self.b.iter().position(Scalar::is_zero) {
            return Err(Error::Degenerate {
                k,
                reason: "inversion requires b_n != 0".into(),
            });
        }
        let b: Vec<Scalar> = self.b.iter().map(|x| Scalar::one() / x).collect();
        let mut a = vec![Scalar::zero(); self.len()];
        for n in 1..self.len() {
            a[n] = &self.a[n] / &(&self.b[n - 1] * &self.b[n]);
        }
        Ok(CoeffSystem {
            b,
            a,
            lambda: vec![Scalar::zero(); self.len()],
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(TableJson {
            b: self.b.clone(),
            a: self.a.clone(),
            lambda: self.lambda.clone(),
        })
        .expect("table serialization is infallible")
    }

    /// Parse the tagged table form.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let t: TableJson = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidInput(format!("coefficient table: {e}")))?;
        CoeffSystem::new(t.b, t.a, t.lambda)
    }

    /// Seeded random system with small rationals and nonzero `a_n`.
    /// `laurent` forces `lambda_n = 0` and nonzero `b_n`.
    pub fn random(seed: u64, len: usize, laurent: bool) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |nonzero: bool| loop {
            let num: i64 = rng.random_range(-6..=6);
            let den: i64 = rng.random_range(1..=4);
            if !nonzero || num != 0 {
                break Scalar::frac(num, den);
            }
        };
        let mut b = Vec::with_capacity(len);
        let mut a = Vec::with_capacity(len);
        let mut lambda = Vec::with_capacity(len);
        for _ in 0..len {
            b.push(draw(laurent));
            a.push(draw(true));
            lambda.push(if laurent { Scalar::zero() } else { draw(false) });
        }
        a[0] = Scalar::zero();
        lambda[0] = Scalar::zero();
        CoeffSystem { b, a, lambda }
    }

    /// Seeded random system with every `a_n` and `lambda_n` nonzero (`n >= 1`).
    pub fn random_full(seed: u64, len: usize) -> Self {
        let mut cs = CoeffSystem::random(seed, len, false);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
        for l in cs.lambda.iter_mut().skip(1) {
            while l.is_zero() {
                let num: i64 = rng.random_range(-6..=6);
                *l = Scalar::frac(num, rng.random_range(1..=4));
            }
        }
        cs
    }
}
