use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{Poly, Scalar, Series};

use super::{critical_value, p_sequence, CoeffSystem};

/// Environment variable capping the number of memoized scalars in a `Session`.
pub const MEMO_LIMIT_VAR: &str = "R1_MEMO_LIMIT";

/// Element `num(x) / d_den(x)` of the space V spanned by `x^n` and `1/d_m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VElem {
    pub num: Poly,
    pub den: usize,
}

impl VElem {
    pub fn new(num: Poly, den: usize) -> Self {
        VElem { num, den }
    }

    pub fn poly(p: Poly) -> Self {
        VElem { num: p, den: 0 }
    }

    /// `x^n / d_m`.
    pub fn x_pow_over_d(n: usize, m: usize) -> Self {
        VElem::new(Poly::monomial(n, Scalar::one()), m)
    }

    /// `x^e` for any integer `e`. Negative powers live in V only when
    /// `lambda = 0`, where `d_k = a_1 ... a_k x^k`.
    pub fn laurent_monomial(e: i64, cs: &CoeffSystem) -> Result<Self> {
        if e >= 0 {
            return Ok(VElem::poly(Poly::monomial(e as usize, Scalar::one())));
        }
        let k = e.unsigned_abs() as usize;
        cs.require(k)?;
        if !cs.is_laurent() {
            return Err(Error::NotInV(format!("x^{e} needs lambda_n = 0")));
        }
        let c: Scalar = (1..=k).map(|i| cs.a(i).clone()).product();
        if c.is_zero() {
            return Err(Error::Degenerate {
                k,
                reason: "a_k = 0 leaves x^-k outside V".into(),
            });
        }
        Ok(VElem::new(Poly::constant(c), k))
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        VElem::new(&self.num * p, self.den)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        VElem::new(self.num.scale(c), self.den)
    }

    /// Rewrite over the larger denominator `d_m`, `m >= den`.
    pub fn lift(&self, m: usize, cs: &CoeffSystem) -> Result<Self> {
        assert!(m >= self.den, "VElem::lift to a smaller denominator");
        cs.require(m)?;
        let extra = ((self.den + 1)..=m).fold(Poly::one(), |acc, i| &acc * &cs.factor(i));
        Ok(VElem::new(&self.num * &extra, m))
    }

    pub fn add(&self, other: &VElem, cs: &CoeffSystem) -> Result<Self> {
        let m = self.den.max(other.den);
        let l = self.lift(m, cs)?;
        let r = other.lift(m, cs)?;
        Ok(VElem::new(&l.num + &r.num, m))
    }

    pub fn sub(&self, other: &VElem, cs: &CoeffSystem) -> Result<Self> {
        self.add(&other.scale(&-Scalar::one()), cs)
    }

    /// Equality as rational functions.
    pub fn equals(&self, other: &VElem, cs: &CoeffSystem) -> Result<bool> {
        Ok(self.sub(other, cs)?.num.is_zero())
    }

    /// `x^{-1} * self` in the Laurent case: `p / (x d_m) = a_{m+1} p / d_{m+1}`.
    pub fn x_inverse(&self, cs: &CoeffSystem) -> Result<Self> {
        let m = self.den + 1;
        cs.require(m)?;
        if !cs.is_laurent() {
            return Err(Error::NotInV("x^-1 needs lambda_n = 0".into()));
        }
        if cs.a(m).is_zero() {
            return Err(Error::Degenerate {
                k: m,
                reason: "a_k = 0 leaves x^-1 outside V".into(),
            });
        }
        Ok(VElem::new(self.num.scale(cs.a(m)), m))
    }
}

impl fmt::Display for VElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / d_{}", self.num, self.den)
        }
    }
}

/// Single-writer session owning a coefficient system and its memo tables
/// (`P_n`, `mu_{n,m}`, `nu_{n,m}`).
#[derive(Clone, Debug)]
pub struct Session {
    cs: CoeffSystem,
    polys: Vec<Poly>,
    /// `mu[n][m] = mu_{n,m}` for `m <= n`.
    mu: Vec<Vec<Scalar>>,
    /// `nu[m][n] = nu_{n,m}`; column 0 mirrors `mu_{n,0}`.
    nu: Vec<Vec<Scalar>>,
    memo_limit: Option<usize>,
    entries: usize,
}

impl Session {
    /// New session; honours `R1_MEMO_LIMIT` when set to a positive integer.
    pub fn new(cs: CoeffSystem) -> Self {
        let limit = std::env::var(MEMO_LIMIT_VAR)
            .ok()
            .and_then(|s| s.trim().parse::<usize>().ok());
        Session::with_memo_limit(cs, limit)
    }

    pub fn with_memo_limit(cs: CoeffSystem, memo_limit: Option<usize>) -> Self {
        Session {
            cs,
            polys: vec![Poly::one()],
            mu: vec![vec![Scalar::one()]],
            nu: Vec::new(),
            memo_limit,
            entries: 2,
        }
    }

    pub fn coeffs(&self) -> &CoeffSystem {
        &self.cs
    }

    /// Number of memoized values currently held.
    pub fn memo_entries(&self) -> usize {
        self.entries
    }

    fn charge(&mut self, n: usize) -> Result<()> {
        self.entries += n;
        match self.memo_limit {
            Some(limit) if self.entries > limit => Err(Error::MemoLimit { limit }),
            _ => Ok(()),
        }
    }

    /// `P_n`.
    pub fn p(&mut self, n: usize) -> Result<Poly> {
        if n >= self.polys.len() {
            let seq = p_sequence(&self.cs, n)?;
            let added: usize = seq[self.polys.len()..].iter().map(|p| p.coeffs().len()).sum();
            self.charge(added)?;
            self.polys = seq;
        }
        Ok(self.polys[n].clone())
    }

    /// `Q_n = P_n / d_n` as an element of V.
    pub fn q(&mut self, n: usize) -> Result<VElem> {
        self.cs.require(n)?;
        Ok(VElem::new(self.p(n)?, n))
    }

    /// `P_k(-lambda_k / a_k)`.
    pub fn critical_value(&mut self, k: usize) -> Result<Scalar> {
        let pk = self.p(k)?;
        critical_value(&self.cs, &pk, k)
    }

    /// Checks `a_k != 0` and `P_k(-lambda_k/a_k) != 0` for `1 <= k <= n`.
    pub fn check_nondegenerate(&mut self, n: usize) -> Result<()> {
        for k in 1..=n {
            if self.critical_value(k)?.is_zero() {
                return Err(Error::Degenerate {
                    k,
                    reason: "P_k(-lambda_k/a_k) = 0".into(),
                });
            }
        }
        Ok(())
    }

    fn ensure_mu(&mut self, n: usize) -> Result<()> {
        if n < self.mu.len() {
            return Ok(());
        }
        self.cs.require(n)?;
        for row in self.mu.len()..=n {
            let prev = &self.mu[row - 1];
            let get_prev = |m: usize| prev.get(m);
            let mut cur = vec![Scalar::zero(); row + 1];
            for m in (0..=row).rev() {
                let mut v = Scalar::zero();
                if m < row {
                    v += &(self.cs.a(m + 1) * &cur[m + 1]);
                }
                if let Some(p) = get_prev(m) {
                    v += &(self.cs.b(m) * p);
                }
                if m >= 1 {
                    if let Some(p) = get_prev(m - 1) {
                        v += p;
                    }
                }
                if let Some(p) = get_prev(m + 1) {
                    v += &(self.cs.lambda(m + 1) * p);
                }
                cur[m] = v;
            }
            self.mu.push(cur);
            self.charge(row + 1)?;
        }
        Ok(())
    }

    /// `mu_{n,m} = L(x^n Q_m)`, zero for `n < m`.
    pub fn mu_nm(&mut self, n: usize, m: usize) -> Result<Scalar> {
        if m > n {
            return Ok(Scalar::zero());
        }
        self.ensure_mu(n)?;
        Ok(self.mu[n][m].clone())
    }

    /// Moment `mu_n = L(x^n)`.
    pub fn mu(&mut self, n: usize) -> Result<Scalar> {
        self.mu_nm(n, 0)
    }

    pub fn moments(&mut self, n: usize) -> Result<Vec<Scalar>> {
        (0..=n).map(|k| self.mu(k)).collect()
    }

    fn ensure_nu(&mut self, n: usize, m: usize) -> Result<()> {
        self.cs.require(m)?;
        let mut need = vec![0usize; m + 1];
        need[m] = n;
        for j in (1..=m).rev() {
            need[j - 1] = need[j].max(j);
        }
        self.ensure_mu(need[0])?;
        for j in 0..=m {
            if self.nu.len() <= j {
                self.nu.push(Vec::new());
            }
            let have = self.nu[j].len();
            if have > need[j] {
                continue;
            }
            if j == 0 {
                let vals: Vec<Scalar> = (have..=need[0]).map(|k| self.mu[k][0].clone()).collect();
                self.charge(vals.len())?;
                self.nu[0].extend(vals);
                continue;
            }
            let aj = self.cs.a(j).clone();
            let lj = self.cs.lambda(j).clone();
            let mut col = std::mem::take(&mut self.nu[j]);
            let start = col.len();
            if aj.is_zero() {
                if lj.is_zero() {
                    self.nu[j] = col;
                    return Err(Error::Degenerate {
                        k: j,
                        reason: "a_k = lambda_k = 0 makes d_k vanish".into(),
                    });
                }
                for k in start..=need[j] {
                    col.push(&self.nu[j - 1][k] / &lj);
                }
            } else {
                if start == 0 {
                    let pj = self.p(j)?;
                    let crit = critical_value(&self.cs, &pj, j)?;
                    if crit.is_zero() {
                        self.nu[j] = col;
                        return Err(Error::Degenerate {
                            k: j,
                            reason: "P_k(-lambda_k/a_k) = 0".into(),
                        });
                    }
                    let (u, _) = pj.divrem(&self.cs.factor(j))?;
                    let s: Scalar = u
                        .coeffs()
                        .iter()
                        .enumerate()
                        .map(|(i, f)| f * &self.nu[j - 1][i])
                        .sum();
                    col.push(-(s / crit));
                }
                for k in col.len()..=need[j] {
                    let v = (&self.nu[j - 1][k - 1] - &(&lj * &col[k - 1])) / &aj;
                    col.push(v);
                }
            }
            let added = col.len() - start;
            self.nu[j] = col;
            self.charge(added)?;
        }
        Ok(())
    }

    /// `nu_{n,m} = L(x^n / d_m)` through the column recurrence.
    pub fn nu(&mut self, n: usize, m: usize) -> Result<Scalar> {
        self.ensure_nu(n, m)?;
        Ok(self.nu[m][n].clone())
    }

    /// `L(p)` for a polynomial `p`.
    pub fn l_poly(&mut self, p: &Poly) -> Result<Scalar> {
        if let Some(d) = p.degree() {
            self.ensure_mu(d)?;
        }
        Ok(p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| c * &self.mu[k][0])
            .sum())
    }

    /// `L(v)` by splitting `v` over the basis `{x^n} u {1/d_m}`.
    pub fn l_eval(&mut self, v: &VElem) -> Result<Scalar> {
        self.cs.require(v.den)?;
        let mut r = v.num.clone();
        let mut acc = Scalar::zero();
        for j in (1..=v.den).rev() {
            let f = self.cs.factor(j);
            if f.is_zero() {
                return Err(Error::Degenerate {
                    k: j,
                    reason: "a_k = lambda_k = 0 makes d_k vanish".into(),
                });
            }
            let (q, c) = r.divrem(&f)?;
            let c0 = c.coeff(0);
            if !c0.is_zero() {
                acc += c0 * self.nu(0, j)?;
            }
            r = q;
        }
        Ok(acc + self.l_poly(&r)?)
    }

    /// `F(v) = b_0 L(x^{-1} v)`; Laurent case only.
    pub fn f_eval(&mut self, v: &VElem) -> Result<Scalar> {
        let shifted = v.x_inverse(&self.cs)?;
        let b0 = self.cs.b(0).clone();
        Ok(b0 * self.l_eval(&shifted)?)
    }

    /// `mu_{n,m,l} = L(x^n P_m Q_l)`.
    pub fn mu_nml(&mut self, n: usize, m: usize, l: usize) -> Result<Scalar> {
        let num = &(&self.p(m)? * &self.p(l)?) * &Poly::monomial(n, Scalar::one());
        self.l_eval(&VElem::new(num, l))
    }

    /// `rho_{n,m,l} = L(x^n P_m P_l)`.
    pub fn rho(&mut self, n: usize, m: usize, l: usize) -> Result<Scalar> {
        let num = &(&self.p(m)? * &self.p(l)?) * &Poly::monomial(n, Scalar::one());
        self.l_poly(&num)
    }

    /// Coefficients `c_m` with `p = sum c_m P_m`, from `c_m = L(p (Q_m - a_{m+1} Q_{m+1}))`.
    /// Needs coefficients through index `deg p + 1`.
    pub fn expand_in_p(&mut self, p: &Poly) -> Result<Vec<Scalar>> {
        let Some(deg) = p.degree() else {
            return Ok(Vec::new());
        };
        self.cs.require(deg + 1)?;
        let mut out = Vec::with_capacity(deg + 1);
        for m in 0..=deg {
            let qm = self.q(m)?.mul_poly(p);
            let qm1 = self.q(m + 1)?.mul_poly(p).scale(self.cs.a(m + 1));
            let v = qm.sub(&qm1, &self.cs)?;
            out.push(self.l_eval(&v)?);
        }
        Ok(out)
    }

    /// `sum_{n <= N} mu_n x^n`.
    pub fn moment_series(&mut self, order: usize) -> Result<Series> {
        Ok(Series::new(self.moments(order)?, order))
    }

    /// `V_m(x) = sum_{n <= N} nu_{n,m} x^n`.
    pub fn vm_series(&mut self, m: usize, order: usize) -> Result<Series> {
        let vals: Result<Vec<Scalar>> = (0..=order).map(|n| self.nu(n, m)).collect();
        Ok(Series::new(vals?, order))
    }

    /// Closed form of `V_m` obtained by unrolling
    /// `(a_m + lambda_m x) V_m = x V_{m-1} + a_m nu_{0,m}`.
    pub fn vm_closed_form(&mut self, m: usize, order: usize) -> Result<Series> {
        self.cs.require(m)?;
        let mut acc = self
            .moment_series(order)?
            .shift(m);
        let lin = |cs: &CoeffSystem, j: usize| Poly::linear(cs.lambda(j).clone(), cs.a(j).clone());
        let den: Poly = (1..=m).fold(Poly::one(), |p, j| &p * &lin(&self.cs, j));
        acc = &acc * &Series::from_poly(&den, order).inverse()?;
        for i in 1..=m {
            let head = Poly::linear(self.cs.lambda(i) / self.cs.a(i), Scalar::one());
            let tail = ((i + 1)..=m).fold(Poly::one(), |p, j| &p * &lin(&self.cs, j));
            let term = Series::from_poly(&Poly::monomial(m - i, self.nu(0, i)?), order);
            let inv = Series::from_poly(&(&head * &tail), order).inverse()?;
            acc = &acc + &(&term * &inv);
        }
        Ok(acc)
    }
}

/// `sum_n mu_n x^n` from the continued fraction
/// `1 / (1 - b_0 x - (a_1 x + lambda_1 x^2) / (1 - b_1 x - ...))`, truncated at depth `order`.
pub fn cf_series(cs: &CoeffSystem, order: usize) -> Result<Series> {
    cs.require(order)?;
    let one = Series::one(order);
    let lin = |k: usize| Series::from_poly(&Poly::linear(-cs.b(k), Scalar::one()), order);
    let mut f = lin(order).inverse()?;
    for j in (0..order).rev() {
        let tail = Series::from_poly(
            &Poly::new(vec![Scalar::zero(), cs.a(j + 1).clone(), cs.lambda(j + 1).clone()]),
            order,
        );
        let den = &lin(j) - &(&tail * &f);
        f = &one * &den.inverse()?;
    }
    Ok(f)
}

/// Continued fraction truncated after level `k`, as `(numerator, denominator)`
/// polynomials computed bottom-up.
pub fn truncated_cf(cs: &CoeffSystem, k: usize) -> Result<(Poly, Poly)> {
    cs.require(k)?;
    let lin = |j: usize| Poly::linear(-cs.b(j), Scalar::one());
    let mut num = Poly::one();
    let mut den = lin(k);
    for j in (0..k).rev() {
        let tail = Poly::new(vec![Scalar::zero(), cs.a(j + 1).clone(), cs.lambda(j + 1).clone()]);
        let new_den = &(&den * &lin(j)) - &(&tail * &num);
        num = den;
        den = new_den;
    }
    Ok((num, den))
}

/// Parse a product-sum expression such as `"x^3*Q_2 - 1/2*P_1*1/d_3"` into V.
///
/// Factors: rationals, `x`, `x^k` (negative `k` only when `lambda = 0`),
/// `P_n`, `Q_n`, `1/d_n`. A term may hold at most one `Q_n` or `1/d_n`.
pub fn parse_expr(expr: &str, session: &mut Session) -> Result<VElem> {
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in expr.chars().filter(|c| !c.is_whitespace()) {
        let unary = matches!(prev, None | Some('^') | Some('*') | Some('/'));
        if (ch == '+' || ch == '-') && !unary {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if ch == '-' && prev.is_none() {
            neg = true;
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    terms.push((neg, cur));
    let mut total = VElem::poly(Poly::zero());
    for (neg, t) in terms {
        if t.is_empty() {
            return Err(Error::InvalidInput(format!("empty term in {expr:?}")));
        }
        let mut v = parse_term(&t, session)?;
        if neg {
            v = v.scale(&-Scalar::one());
        }
        total = total.add(&v, session.coeffs())?;
    }
    Ok(total)
}

fn parse_index(s: &str, whole: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::InvalidInput(format!("bad index in factor {whole:?}")))
}

fn parse_term(term: &str, session: &mut Session) -> Result<VElem> {
    let mut num = Poly::one();
    let mut den: Option<usize> = None;
    let mut inv_x = 0usize;
    let factors: Vec<String> = {
        // `1/d_n` contains a slash that must not split rational factors.
        let mut out = Vec::new();
        for f in term.split('*') {
            out.push(f.to_string());
        }
        out
    };
    let mut set_den = |m: usize, what: &str| -> Result<()> {
        if den.is_some() {
            return Err(Error::NotInV(format!(
                "{what} multiplied by another Q_n or 1/d_n is not in V"
            )));
        }
        den = Some(m);
        Ok(())
    };
    for f in &factors {
        let f = f.trim_matches(|c| c == '(' || c == ')');
        if let Some(rest) = f.strip_prefix("1/d_") {
            set_den(parse_index(rest, f)?, f)?;
        } else if let Some(rest) = f.strip_prefix("Q_") {
            let m = parse_index(rest, f)?;
            set_den(m, f)?;
            num = &num * &session.p(m)?;
        } else if let Some(rest) = f.strip_prefix("P_") {
            num = &num * &session.p(parse_index(rest, f)?)?;
        } else if f == "x" {
            num = num.shift(1);
        } else if let Some(rest) = f.strip_prefix("x^") {
            let e: i64 = rest
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad exponent in {f:?}")))?;
            if e >= 0 {
                num = num.shift(e as usize);
            } else {
                inv_x += e.unsigned_abs() as usize;
            }
        } else {
            let c: Scalar = f
                .parse()
                .map_err(|_| Error::InvalidInput(format!("unknown factor {f:?}")))?;
            num = num.scale(&c);
        }
    }
    let mut v = VElem::new(num, den.unwrap_or(0));
    session.coeffs().require(v.den)?;
    for _ in 0..inv_x {
        v = v.x_inverse(session.coeffs())?;
    }
    Ok(v)
}
