use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::Scalar;

/// Which coefficient sequence a symbol belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymKind {
    B,
    A,
    Lambda,
}

/// One indeterminate `b_i`, `a_i` or `lambda_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub kind: SymKind,
    pub index: usize,
}

impl Symbol {
    pub fn b(index: usize) -> Self {
        Symbol { kind: SymKind::B, index }
    }

    pub fn a(index: usize) -> Self {
        Symbol { kind: SymKind::A, index }
    }

    pub fn lambda(index: usize) -> Self {
        Symbol {
            kind: SymKind::Lambda,
            index,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            SymKind::B => "b",
            SymKind::A => "a",
            SymKind::Lambda => "lambda",
        };
        write!(f, "{name}{}", self.index)
    }
}

/// Monomial as a sorted map symbol -> positive exponent.
pub type Monomial = BTreeMap<Symbol, u32>;

/// Multivariate polynomial with rational coefficients in the indeterminates
/// `b_i, a_i, lambda_i`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl SymPoly {
    pub fn zero() -> Self {
        SymPoly::default()
    }

    pub fn one() -> Self {
        SymPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(), c);
        }
        SymPoly { terms }
    }

    pub fn var(s: Symbol) -> Self {
        let mut m = Monomial::new();
        m.insert(s, 1);
        let mut terms = BTreeMap::new();
        terms.insert(m, Scalar::one());
        SymPoly { terms }
    }

    /// Product of the given symbols times `c`.
    pub fn term(c: Scalar, symbols: &[Symbol]) -> Self {
        symbols
            .iter()
            .fold(SymPoly::constant(c), |acc, s| &acc * &SymPoly::var(*s))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Sum of all coefficients; the value at every symbol equal to 1.
    pub fn coefficient_sum(&self) -> Scalar {
        self.terms.values().sum()
    }

    /// Substitute a value for every symbol.
    pub fn eval(&self, value: &impl Fn(Symbol) -> Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (s, e) in m {
                t = t * value(*s).powu(*e);
            }
            acc += t;
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }
}

/// Lexicographic order with a higher power of an earlier symbol first.
fn lex_desc(m1: &Monomial, m2: &Monomial) -> std::cmp::Ordering {
    let syms: std::collections::BTreeSet<&Symbol> = m1.keys().chain(m2.keys()).collect();
    syms.into_iter()
        .map(|s| {
            let e1 = m1.get(s).copied().unwrap_or(0);
            let e2 = m2.get(s).copied().unwrap_or(0);
            e2.cmp(&e1)
        })
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

fn fmt_monomial(m: &Monomial) -> String {
    m.iter()
        .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{s}^{e}") })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for SymPoly {
    /// Terms are listed in decreasing total degree, then by symbol order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut ordered: Vec<(&Monomial, &Scalar)> = self.terms.iter().collect();
        ordered.sort_by(|(m1, _), (m2, _)| {
            let d1: u32 = m1.values().sum();
            let d2: u32 = m2.values().sum();
            d2.cmp(&d1).then_with(|| lex_desc(m1, m2))
        });
        for (i, (m, c)) in ordered.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", fmt_monomial(m))?;
            } else {
                write!(f, "{mag}*{}", fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymPoly({self})")
    }
}

impl Serialize for SymPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl Add<&SymPoly> for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub<&SymPoly> for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        self + &(-rhs)
    }
}

impl Mul<&SymPoly> for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        let mut out = SymPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let mut m = m1.clone();
                for (s, e) in m2 {
                    *m.entry(*s).or_insert(0) += e;
                }
                out.add_term(m, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &SymPoly {
    type Output = SymPoly;
    fn neg(self) -> SymPoly {
        SymPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_binomial() {
        let s = &SymPoly::var(Symbol::b(0)) + &SymPoly::var(Symbol::a(1));
        let sq = &s * &s;
        assert_eq!(sq.num_terms(), 3);
        assert_eq!(sq.to_string(), "b0^2 + 2*b0*a1 + a1^2");
        let v = sq.eval(&|_| Scalar::from_int(2));
        assert_eq!(v, Scalar::from_int(16));
    }

    #[test]
    fn cancellation_removes_terms() {
        let x = SymPoly::var(Symbol::lambda(3));
        assert!((&x - &x).is_zero());
    }
}
