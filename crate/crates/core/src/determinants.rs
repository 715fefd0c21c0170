//! Exact determinants of `nu`-matrices and Hankel matrices, compared with
//! their product formulas, and the Cramer-type determinant representations
//! of `P_n` and `Q_n`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{Poly, Scalar};
use crate::ortho::{CoeffSystem, Session, VElem};

/// Square matrix as rows.
pub type Matrix = Vec<Vec<Scalar>>;

/// Determinant by plain Gaussian elimination: the first nonzero
/// pivot in each column is used, with exact rational arithmetic.
pub fn det_exact(m: &Matrix) -> Scalar {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "det_exact needs a square matrix");
    let mut a = m.clone();
    let mut det = Scalar::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Scalar::zero();
        };
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        let pivot = a[col][col].clone();
        det *= &pivot;
        for r in (col + 1)..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &pivot;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= &t;
            }
        }
    }
    det
}

/// Which determinant family a report describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DetKind {
    /// `det(mu_{i+j})_{0..n}`.
    Hankel,
    /// `det(nu_{i+j,n})_{0..n}`.
    Prime,
    /// `det(nu_{i+j,j})_{0..n}`.
    DoublePrime,
    /// `det(nu_{i,j})_{0..n}`.
    TriplePrime,
    /// `det(nu_{s+i+j,s+n})_{0..n}`.
    PrimeShifted,
    /// `det(nu_{s+i+j,s+j})_{0..n}`.
    DoublePrimeShifted,
    /// `det(nu_{i,s+j})_{0..n}`.
    TriplePrimeShifted,
}

impl DetKind {
    pub const UNSHIFTED: [DetKind; 3] = [DetKind::Prime, DetKind::DoublePrime, DetKind::TriplePrime];
    pub const SHIFTED: [DetKind; 3] = [
        DetKind::PrimeShifted,
        DetKind::DoublePrimeShifted,
        DetKind::TriplePrimeShifted,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DetKind::Hankel => "hankel",
            DetKind::Prime => "prime",
            DetKind::DoublePrime => "double_prime",
            DetKind::TriplePrime => "triple_prime",
            DetKind::PrimeShifted => "prime_shifted",
            DetKind::DoublePrimeShifted => "double_prime_shifted",
            DetKind::TriplePrimeShifted => "triple_prime_shifted",
        }
    }
}

impl fmt::Display for DetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DetKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "hankel" => DetKind::Hankel,
            "prime" | "p1" => DetKind::Prime,
            "double_prime" | "p2" => DetKind::DoublePrime,
            "triple_prime" | "p3" => DetKind::TriplePrime,
            "prime_shifted" | "s1" => DetKind::PrimeShifted,
            "double_prime_shifted" | "s2" => DetKind::DoublePrimeShifted,
            "triple_prime_shifted" | "s3" => DetKind::TriplePrimeShifted,
            _ => return Err(Error::InvalidInput(format!("unknown determinant kind {s:?}"))),
        })
    }
}

/// Computed determinant against its product formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetReport {
    pub n: usize,
    pub kind: DetKind,
    pub computed: Scalar,
    pub predicted: Scalar,
    pub matched: bool,
}

impl DetReport {
    fn new(n: usize, kind: DetKind, computed: Scalar, predicted: Scalar) -> Self {
        let matched = computed == predicted;
        DetReport {
            n,
            kind,
            computed,
            predicted,
            matched,
        }
    }
}

fn sign(e: usize) -> Scalar {
    if e.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// `(n+1) x (n+1)` matrix `f(i, j)`.
fn build(n: usize, mut f: impl FnMut(usize, usize) -> Result<Scalar>) -> Result<Matrix> {
    (0..=n)
        .map(|i| (0..=n).map(|j| f(i, j)).collect::<Result<Vec<_>>>())
        .collect()
}

/// Hypotheses of the product formulas: `a_k != 0` and `P_k(-lambda_k/a_k) != 0`, `k <= n`.
fn critical_values(s: &mut Session, n: usize) -> Result<Vec<Scalar>> {
    let mut out = vec![Scalar::zero()];
    for k in 1..=n {
        s.coeffs().require(k)?;
        if s.coeffs().a(k).is_zero() {
            return Err(Error::HypothesisViolated(format!("a_{k} = 0")));
        }
        let c = s.critical_value(k)?;
        if c.is_zero() {
            return Err(Error::HypothesisViolated(format!("P_{k}(-lambda_{k}/a_{k}) = 0")));
        }
        out.push(c);
    }
    Ok(out)
}

/// Hankel determinant `det(mu_{i+j})_{0..n}`.
pub fn hankel(n: usize, s: &mut Session) -> Result<Scalar> {
    let m = build(n, |i, j| s.mu(i + j))?;
    Ok(det_exact(&m))
}

/// Matrix of `Delta'_n`, `Delta''_n` or `Delta'''_n`.
pub fn nu_matrix(kind: DetKind, n: usize, s: &mut Session) -> Result<Matrix> {
    match kind {
        DetKind::Prime => build(n, |i, j| s.nu(i + j, n)),
        DetKind::DoublePrime => build(n, |i, j| s.nu(i + j, j)),
        DetKind::TriplePrime => build(n, |i, j| s.nu(i, j)),
        DetKind::Hankel => build(n, |i, j| s.mu(i + j)),
        _ => Err(Error::InvalidInput(format!("{kind} is a shifted kind"))),
    }
}

/// Matrix of the shifted variants with shift `sh`.
pub fn shifted_matrix(kind: DetKind, n: usize, sh: usize, s: &mut Session) -> Result<Matrix> {
    match kind {
        DetKind::PrimeShifted => build(n, |i, j| s.nu(sh + i + j, sh + n)),
        DetKind::DoublePrimeShifted => build(n, |i, j| s.nu(sh + i + j, sh + j)),
        DetKind::TriplePrimeShifted => build(n, |i, j| s.nu(i, sh + j)),
        _ => Err(Error::InvalidInput(format!("{kind} is not a shifted kind"))),
    }
}

/// `Delta'_n`, `Delta''_n` or `Delta'''_n` against
/// `prod 1/((-a_k)^k P_k)`, `prod lambda_k^k/((-a_k)^k P_k)` and `prod 1/P_k`,
/// where `P_k` stands for `P_k(-lambda_k/a_k)`.
pub fn delta(kind: DetKind, n: usize, s: &mut Session) -> Result<DetReport> {
    let crit = critical_values(s, n)?;
    let cs = s.coeffs().clone();
    let mut predicted = Scalar::one();
    for k in 1..=n {
        let neg_a = (-cs.a(k)).powu(k as u32);
        predicted = match kind {
            DetKind::Prime => predicted / (neg_a * &crit[k]),
            DetKind::DoublePrime => predicted * cs.lambda(k).powu(k as u32) / (neg_a * &crit[k]),
            DetKind::TriplePrime => predicted / &crit[k],
            _ => return Err(Error::InvalidInput(format!("{kind} is not an unshifted nu kind"))),
        };
    }
    let computed = det_exact(&nu_matrix(kind, n, s)?);
    Ok(DetReport::new(n, kind, computed, predicted))
}

/// Shifted determinants of size `n` (indices `0..n-1`) with shift `sh`.
/// Product formulas are known for `sh = 1`:
/// `(-1)^{C(n,2)} P_n(0) / prod a_k^k P_k`,
/// `(-1)^{C(n,2)} prod lambda_k^{k-1} P_n(0) / prod a_k^k P_k` and
/// `(-1)^n / prod a_k P_k`.
pub fn delta_shifted(kind: DetKind, n: usize, sh: usize, s: &mut Session) -> Result<DetReport> {
    if sh != 1 {
        return Err(Error::Unsupported(format!(
            "no product formula recorded for shift {sh}; only shift 1"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("shifted determinants need n >= 1".into()));
    }
    let crit = critical_values(s, n)?;
    let cs = s.coeffs().clone();
    let pn0 = s.p(n)?.coeff(0);
    let binom = n * (n - 1) / 2;
    let predicted = match kind {
        DetKind::PrimeShifted => {
            let den: Scalar = (1..=n).map(|k| cs.a(k).powu(k as u32) * &crit[k]).product();
            sign(binom) * pn0 / den
        }
        DetKind::DoublePrimeShifted => {
            let den: Scalar = (1..=n).map(|k| cs.a(k).powu(k as u32) * &crit[k]).product();
            // exponent k - 1: at n = 1 the determinant is nu_{1,1} = b_0 / (lambda_1 + a_1 b_0)
            let lam: Scalar = (1..=n).map(|k| cs.lambda(k).powu((k - 1) as u32)).product();
            sign(binom) * lam * pn0 / den
        }
        DetKind::TriplePrimeShifted => {
            let den: Scalar = (1..=n).map(|k| cs.a(k) * &crit[k]).product();
            sign(n) / den
        }
        _ => return Err(Error::InvalidInput(format!("{kind} is not a shifted kind"))),
    };
    let computed = det_exact(&shifted_matrix(kind, n - 1, sh, s)?);
    Ok(DetReport::new(n, kind, computed, predicted))
}

/// Expansion of `det [rows; basis]` along its last row, where `rows` are the
/// first `n` rows of an `(n+1)`-column matrix. Returns the cofactors.
fn last_row_cofactors(rows: &Matrix) -> Vec<Scalar> {
    let n = rows.len();
    (0..=n)
        .map(|j| {
            let minor: Matrix = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            sign(n + j) * det_exact(&minor)
        })
        .collect()
}

/// `P_n = det [nu_{i+j,n} (i < n); x^j] / Delta'_n`.
pub fn p_via_det(n: usize, s: &mut Session) -> Result<Poly> {
    let rows: Matrix = (0..n)
        .map(|i| (0..=n).map(|j| s.nu(i + j, n)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let full = nu_matrix(DetKind::Prime, n, s)?;
    let d = det_exact(&full);
    if d.is_zero() {
        return Err(Error::HypothesisViolated(format!("Delta'_{n} = 0")));
    }
    let cof = last_row_cofactors(&rows);
    Ok(Poly::new(cof.into_iter().map(|c| c / &d).collect()))
}

/// Monic `P_n` from the classical Hankel construction
/// `det [mu_{i+j} (i < n); x^j] / det(mu_{i+j})_{0..n-1}`.
pub fn p_via_hankel(n: usize, s: &mut Session) -> Result<Poly> {
    let rows: Matrix = (0..n)
        .map(|i| (0..=n).map(|j| s.mu(i + j)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let d = if n == 0 { Scalar::one() } else { hankel(n - 1, s)? };
    if d.is_zero() {
        return Err(Error::HypothesisViolated(format!("Hankel determinant of order {} vanishes", n - 1)));
    }
    let cof = last_row_cofactors(&rows);
    Ok(Poly::new(cof.into_iter().map(|c| c / &d).collect()))
}

/// `Q_n` by determinants.
///
/// * variant 1: `P_n / d_n` with `P_n` from [`p_via_det`];
/// * variant 2: `det [nu_{i+j,j}; x^j/d_j] / Delta''_n`, needs `lambda_k != 0`;
/// * variant 3: `det [nu_{i,j}; 1/d_j] / Delta'''_n`.
pub fn q_via_det(n: usize, variant: u8, s: &mut Session) -> Result<VElem> {
    let cs: CoeffSystem = s.coeffs().clone();
    cs.require(n)?;
    match variant {
        1 => Ok(VElem::new(p_via_det(n, s)?, n)),
        2 | 3 => {
            if variant == 2 {
                if let Some(k) = (1..=n).find(|&k| cs.lambda(k).is_zero()) {
                    return Err(Error::HypothesisViolated(format!("variant 2 needs lambda_{k} != 0")));
                }
            }
            let kind = if variant == 2 { DetKind::DoublePrime } else { DetKind::TriplePrime };
            let full = nu_matrix(kind, n, s)?;
            let d = det_exact(&full);
            if d.is_zero() {
                return Err(Error::HypothesisViolated(format!("{kind} determinant of order {n} vanishes")));
            }
            let rows: Matrix = full[..n].to_vec();
            let cof = last_row_cofactors(&rows);
            let mut acc = VElem::poly(Poly::zero());
            for (j, c) in cof.into_iter().enumerate() {
                let basis = if variant == 2 {
                    VElem::x_pow_over_d(j, j)
                } else {
                    VElem::x_pow_over_d(0, j)
                };
                acc = acc.add(&basis.scale(&(c / &d)), &cs)?;
            }
            acc.lift(n, &cs)
        }
        _ => Err(Error::InvalidInput(format!("unknown Q determinant variant {variant}"))),
    }
}

/// `det(L(p_i q_j))_{0..n}` for monic families `p_i`, `q_j` of degree `i`, `j`.
pub fn basis_change_det(p: &[Poly], q: &[Poly], s: &mut Session) -> Result<Scalar> {
    let n = p.len().min(q.len());
    if n == 0 {
        return Ok(Scalar::one());
    }
    let m = build(n - 1, |i, j| s.l_poly(&(&p[i] * &q[j])))?;
    Ok(det_exact(&m))
}

/// `det(L(x^{i-j-1}))_{0..n-1}` for a Laurent system against
/// `(-1)^{C(n,2)} / (a_1...a_n) * prod (a_k / b_{k-1})^{n+1-k}`.
pub fn laurent_det(n: usize, s: &mut Session) -> Result<(Scalar, Scalar)> {
    let cs = s.coeffs().clone();
    if !cs.is_laurent() {
        return Err(Error::HypothesisViolated("needs lambda_n = 0".into()));
    }
    cs.require(n + 1)?;
    let m: Matrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = VElem::laurent_monomial(i as i64 - j as i64 - 1, &cs)?;
                    s.l_eval(&v)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let computed = det_exact(&m);
    let mut predicted = sign(n * n.saturating_sub(1) / 2);
    for k in 1..=n {
        predicted = predicted / cs.a(k);
        let ratio = cs.a(k).checked_div(cs.b(k - 1))?;
        predicted = predicted * ratio.powu((n + 1 - k) as u32);
    }
    Ok((computed, predicted))
}

/// Hankel determinants of the constant system against `(A^2 + AB + C)^{C(n+1,2)}`.
pub fn hankel_constant_prediction(a: &Scalar, b: &Scalar, c: &Scalar, n: usize) -> Scalar {
    let base = a * a + a * b + c;
    base.powu((n * (n + 1) / 2) as u32)
}
