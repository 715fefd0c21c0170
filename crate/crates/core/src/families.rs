//! Named families of type R_I polynomials.
//!
//! Each gluing family is a classical orthogonal polynomial family whose
//! weight absorbs the denominators `d_n`, so the R_I polynomial of degree `n`
//! is the classical polynomial with one or two parameters shifted by `n`
//! (or multiplied by `q^{-n}`). [`FamilySpec::hyp_poly`] builds exactly that
//! shifted form, [`FamilySpec::classical_poly`] the unshifted one.
//!
//! The classical monic recurrence `(B_n, Lambda_n)` of every gluing family is
//! available from [`FamilySpec::classical_system`]; its moment series is the
//! R_I moment series, which [`FamilySpec::moment_series_check`] confirms.
//!
//! Two further families change the functional instead of gluing:
//! `constant(A, B, C)` and `r1_hermite(a)`. The second comes with the
//! `theta` moment machinery.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::special::{binomial, double_factorial_odd, factorial, pochhammer, qpochhammer, stirling2_row};
use crate::exactmath::{Poly, Scalar, Series};
use crate::ortho::{cf_series, p_sequence, CoeffSystem, Session};

macro_rules! variant_enum {
    ($name:ident { $($var:ident => $text:literal),+ $(,)? }) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq)]
        pub enum $name {
            $($var),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$var),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$var => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok($name::$var),)+
                    other => Err(Error::InvalidParameter(format!(
                        "unknown variant {other:?} (expected one of {})",
                        [$($text),+].join(", ")
                    ))),
                }
            }
        }
    };
}

variant_enum!(Jacobi11Variant {
    Minus => "minus",
    Plus => "plus",
    Mixed => "mixed",
});

variant_enum!(Jacobi01Variant {
    OneMinus => "oneminus",
    XPow => "xpow",
});

variant_enum!(BigQVariant {
    BShift => "bshift",
    AShift => "ashift",
});

/// A named family with exact rational parameters.
///
/// Denominators `d_n`, the factor `a_n x + lambda_n = c (d_n / d_{n-1})`:
///
/// | family | `d_n / d_{n-1}` |
/// |---|---|
/// | jacobi11 minus, plus, mixed | `1 - x`, `1 + x`, alternating `1 - x` (odd n) and `1 + x` (even n) |
/// | jacobi01 oneminus, xpow | `1 - x`, `x` |
/// | laguerre | `x` |
/// | meixner | `x + b - n` |
/// | little_q_jacobi | `1 - b x q^{1-n}` |
/// | big_q_jacobi bshift, ashift | `1 - b x q^{-n} / c`, `1 - x q^{n-1} / a` |
/// | askey_wilson | `1 - 2 b x q^{-n} + b^2 q^{-2n}` |
/// | q_racah | `1 - X q^{n-1} / (b d) + q^{2n-1} c / (b^2 d)` |
/// | constant | `A x + C` |
/// | r1_hermite | `1 + a x` |
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Jacobi11 { a: Scalar, b: Scalar, variant: Jacobi11Variant },
    Jacobi01 { a: Scalar, b: Scalar, variant: Jacobi01Variant },
    Laguerre { a: Scalar },
    Meixner { b: Scalar, c: Scalar },
    LittleQJacobi { a: Scalar, b: Scalar, q: Scalar },
    BigQJacobi { a: Scalar, b: Scalar, c: Scalar, q: Scalar, variant: BigQVariant },
    AskeyWilson { a: Scalar, b: Scalar, c: Scalar, d: Scalar, q: Scalar },
    QRacah { b: Scalar, c: Scalar, d: Scalar, n: usize, q: Scalar },
    Constant { a: Scalar, b: Scalar, c: Scalar },
    R1Hermite { a: Scalar },
}

/// Family names accepted by [`FamilySpec::from_params`].
pub const FAMILY_NAMES: &[&str] = &[
    "jacobi11",
    "jacobi01",
    "laguerre",
    "meixner",
    "little_q_jacobi",
    "big_q_jacobi",
    "askey_wilson",
    "q_racah",
    "constant",
    "r1_hermite",
];

/// Sample abscissae used when a caller does not supply its own.
pub fn default_samples() -> Vec<Scalar> {
    [(0, 1), (1, 1), (2, 1), (3, 1), (-1, 2), (1, 3)]
        .iter()
        .map(|&(p, q)| Scalar::frac(p, q))
        .collect()
}

/// Proportionality of the recurrence polynomial to a closed form at sample points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueReport {
    pub n: usize,
    /// `P_n = constant * closed form`, recovered from leading coefficients.
    pub constant: Scalar,
    /// `(x, P_n(x), closed form at x)` for every sample.
    pub samples: Vec<(Scalar, Scalar, Scalar)>,
    /// The monic closed form equals `P_n` coefficient by coefficient.
    pub polys_equal: bool,
    pub proportional: bool,
}

/// Moment series of the R_I system against the classical fraction and any closed form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentReport {
    pub order: usize,
    pub ri: Series,
    pub classical: Option<Series>,
    pub closed: Option<Series>,
    pub matched: bool,
}

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn one() -> Scalar {
    Scalar::one()
}

fn ni(n: usize) -> Scalar {
    Scalar::from(n)
}

fn qpow(q: &Scalar, k: i64) -> Scalar {
    q.pow(k as i32).expect("q is validated nonzero")
}

/// `sum_{k=0}^{n} c_k prod_{j<k} f_j(x)`.
fn terminating(
    n: usize,
    mut coef: impl FnMut(usize) -> Option<Scalar>,
    factor: impl Fn(usize) -> Poly,
) -> Option<Poly> {
    let mut acc = Poly::zero();
    let mut prod = Poly::one();
    for k in 0..=n {
        let c = coef(k)?;
        acc = &acc + &prod.scale(&c);
        prod = &prod * &factor(k);
    }
    Some(acc)
}

/// `prod (u)_k / (prod (l)_k k!) z^k`, or `None` when a lower parameter hits zero.
fn hyper_coef(upper: &[Scalar], lower: &[Scalar], z: &Scalar, k: usize) -> Option<Scalar> {
    let num: Scalar = upper.iter().map(|u| pochhammer(u, k)).product();
    let den: Scalar = lower.iter().map(|l| pochhammer(l, k)).product::<Scalar>() * factorial(k);
    if num.is_zero() {
        return Some(Scalar::zero());
    }
    den.recip().ok().map(|r| num * r * z.powu(k as u32))
}

/// `prod (u;q)_k / (prod (l;q)_k (q;q)_k) z^k`, or `None` on a vanishing denominator.
fn qhyper_coef(upper: &[Scalar], lower: &[Scalar], q: &Scalar, z: &Scalar, k: usize) -> Option<Scalar> {
    let num: Scalar = upper.iter().map(|u| qpochhammer(u, q, k)).product();
    let den: Scalar = lower.iter().map(|l| qpochhammer(l, q, k)).product::<Scalar>() * qpochhammer(q, q, k);
    if num.is_zero() {
        return Some(Scalar::zero());
    }
    den.recip().ok().map(|r| num * r * z.powu(k as u32))
}

impl FamilySpec {
    pub fn jacobi11(a: Scalar, b: Scalar, variant: Jacobi11Variant) -> Result<Self> {
        FamilySpec::Jacobi11 { a, b, variant }.validated()
    }

    pub fn jacobi01(a: Scalar, b: Scalar, variant: Jacobi01Variant) -> Result<Self> {
        FamilySpec::Jacobi01 { a, b, variant }.validated()
    }

    pub fn laguerre(a: Scalar) -> Result<Self> {
        FamilySpec::Laguerre { a }.validated()
    }

    pub fn meixner(b: Scalar, c: Scalar) -> Result<Self> {
        FamilySpec::Meixner { b, c }.validated()
    }

    pub fn little_q_jacobi(a: Scalar, b: Scalar, q: Scalar) -> Result<Self> {
        FamilySpec::LittleQJacobi { a, b, q }.validated()
    }

    pub fn big_q_jacobi(a: Scalar, b: Scalar, c: Scalar, q: Scalar, variant: BigQVariant) -> Result<Self> {
        FamilySpec::BigQJacobi { a, b, c, q, variant }.validated()
    }

    pub fn askey_wilson(a: Scalar, b: Scalar, c: Scalar, d: Scalar, q: Scalar) -> Result<Self> {
        FamilySpec::AskeyWilson { a, b, c, d, q }.validated()
    }

    pub fn q_racah(b: Scalar, c: Scalar, d: Scalar, n: usize, q: Scalar) -> Result<Self> {
        FamilySpec::QRacah { b, c, d, n, q }.validated()
    }

    pub fn constant(a: Scalar, b: Scalar, c: Scalar) -> Result<Self> {
        FamilySpec::Constant { a, b, c }.validated()
    }

    pub fn r1_hermite(a: Scalar) -> Result<Self> {
        FamilySpec::R1Hermite { a }.validated()
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Jacobi11 { .. } => "jacobi11",
            FamilySpec::Jacobi01 { .. } => "jacobi01",
            FamilySpec::Laguerre { .. } => "laguerre",
            FamilySpec::Meixner { .. } => "meixner",
            FamilySpec::LittleQJacobi { .. } => "little_q_jacobi",
            FamilySpec::BigQJacobi { .. } => "big_q_jacobi",
            FamilySpec::AskeyWilson { .. } => "askey_wilson",
            FamilySpec::QRacah { .. } => "q_racah",
            FamilySpec::Constant { .. } => "constant",
            FamilySpec::R1Hermite { .. } => "r1_hermite",
        }
    }

    /// True for the families obtained by gluing `d_n` onto a classical weight.
    pub fn is_glued(&self) -> bool {
        !matches!(self, FamilySpec::Constant { .. } | FamilySpec::R1Hermite { .. })
    }

    /// Parameters as strings, in the form accepted by [`FamilySpec::from_params`].
    pub fn params(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            m.insert(k.to_string(), v);
        };
        match self {
            FamilySpec::Jacobi11 { a, b, variant } => {
                put("a", a.to_string());
                put("b", b.to_string());
                put("variant", variant.to_string());
            }
            FamilySpec::Jacobi01 { a, b, variant } => {
                put("a", a.to_string());
                put("b", b.to_string());
                put("variant", variant.to_string());
            }
            FamilySpec::Laguerre { a } | FamilySpec::R1Hermite { a } => put("a", a.to_string()),
            FamilySpec::Meixner { b, c } => {
                put("b", b.to_string());
                put("c", c.to_string());
            }
            FamilySpec::LittleQJacobi { a, b, q } => {
                put("a", a.to_string());
                put("b", b.to_string());
                put("q", q.to_string());
            }
            FamilySpec::BigQJacobi { a, b, c, q, variant } => {
                put("a", a.to_string());
                put("b", b.to_string());
                put("c", c.to_string());
                put("q", q.to_string());
                put("variant", variant.to_string());
            }
            FamilySpec::AskeyWilson { a, b, c, d, q } => {
                put("a", a.to_string());
                put("b", b.to_string());
                put("c", c.to_string());
                put("d", d.to_string());
                put("q", q.to_string());
            }
            FamilySpec::QRacah { b, c, d, n, q } => {
                put("b", b.to_string());
                put("c", c.to_string());
                put("d", d.to_string());
                put("N", n.to_string());
                put("q", q.to_string());
            }
            FamilySpec::Constant { a, b, c } => {
                put("A", a.to_string());
                put("B", b.to_string());
                put("C", c.to_string());
            }
        }
        m
    }

    /// Resolve a family from its name and string parameters.
    ///
    /// Variants default to `minus`, `oneminus` and `bshift`.
    pub fn from_params(name: &str, params: &BTreeMap<String, String>) -> Result<Self> {
        let allowed: &[&str] = match name {
            "jacobi11" | "jacobi01" => &["a", "b", "variant"],
            "laguerre" | "r1_hermite" => &["a"],
            "meixner" => &["b", "c"],
            "little_q_jacobi" => &["a", "b", "q"],
            "big_q_jacobi" => &["a", "b", "c", "q", "variant"],
            "askey_wilson" => &["a", "b", "c", "d", "q"],
            "q_racah" => &["b", "c", "d", "N", "q"],
            "constant" => &["A", "B", "C"],
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown family {other:?} (expected one of {})",
                    FAMILY_NAMES.join(", ")
                )))
            }
        };
        if let Some(k) = params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::InvalidParameter(format!("{name}: unknown parameter {k:?}")));
        }
        let get = |k: &str| -> Result<Scalar> {
            let v = params
                .get(k)
                .ok_or_else(|| Error::InvalidParameter(format!("{name}: missing parameter {k}")))?;
            v.parse::<Scalar>()
                .map_err(|_| Error::InvalidParameter(format!("{name}: parameter {k}={v:?} is not a rational")))
        };
        let variant = |default: &str| params.get("variant").map(String::as_str).unwrap_or(default).to_string();
        match name {
            "jacobi11" => FamilySpec::jacobi11(get("a")?, get("b")?, variant("minus").parse()?),
            "jacobi01" => FamilySpec::jacobi01(get("a")?, get("b")?, variant("oneminus").parse()?),
            "laguerre" => FamilySpec::laguerre(get("a")?),
            "meixner" => FamilySpec::meixner(get("b")?, get("c")?),
            "little_q_jacobi" => FamilySpec::little_q_jacobi(get("a")?, get("b")?, get("q")?),
            "big_q_jacobi" => {
                FamilySpec::big_q_jacobi(get("a")?, get("b")?, get("c")?, get("q")?, variant("bshift").parse()?)
            }
            "askey_wilson" => FamilySpec::askey_wilson(get("a")?, get("b")?, get("c")?, get("d")?, get("q")?),
            "q_racah" => {
                let n = get("N")?
                    .to_i64()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| Error::InvalidParameter("q_racah: N must be a positive integer".into()))?;
                FamilySpec::q_racah(get("b")?, get("c")?, get("d")?, n as usize, get("q")?)
            }
            _ => FamilySpec::constant(get("A")?, get("B")?, get("C")?),
        }
    }

    /// `{"kind":"family","name":...,"params":{...}}`.
    pub fn to_json(&self) -> Value {
        json!({"kind": "family", "name": self.name(), "params": self.params()})
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let name = value
            .get("name")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidInput("family spec needs a string \"name\"".into()))?;
        let mut params = BTreeMap::new();
        if let Some(obj) = value.get("params") {
            let obj = obj
                .as_object()
                .ok_or_else(|| Error::InvalidInput("family \"params\" must be an object".into()))?;
            for (k, v) in obj {
                let text = match v {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => n.to_string(),
                    _ => return Err(Error::InvalidInput(format!("family parameter {k} must be a string or number"))),
                };
                params.insert(k.clone(), text);
            }
        }
        FamilySpec::from_params(name, &params)
    }

    fn invalid(&self, why: impl fmt::Display) -> Error {
        Error::InvalidParameter(format!("{}: {why}", self.name()))
    }

    fn validated(self) -> Result<Self> {
        let q_ok = |q: &Scalar| !(q.is_zero() || q.abs().is_one());
        let bad = match &self {
            FamilySpec::Meixner { c, .. } if c.is_zero() || c.is_one() => Some("c must differ from 0 and 1"),
            FamilySpec::LittleQJacobi { q, .. } | FamilySpec::BigQJacobi { q, .. } if !q_ok(q) => {
                Some("q must differ from 0, 1 and -1")
            }
            FamilySpec::AskeyWilson { q, .. } | FamilySpec::QRacah { q, .. } if !q_ok(q) => {
                Some("q must differ from 0, 1 and -1")
            }
            FamilySpec::LittleQJacobi { a, .. } if a.is_zero() => Some("a must be nonzero"),
            FamilySpec::BigQJacobi { a, c, .. } if a.is_zero() || c.is_zero() => Some("a and c must be nonzero"),
            FamilySpec::AskeyWilson { a, b, .. } if a.is_zero() || b.is_zero() => Some("a and b must be nonzero"),
            FamilySpec::QRacah { b, d, .. } if b.is_zero() || d.is_zero() => Some("b and d must be nonzero"),
            FamilySpec::QRacah { n, .. } if *n == 0 => Some("N must be at least 1"),
            _ => None,
        };
        match bad {
            Some(why) => Err(self.invalid(why)),
            None => Ok(self),
        }
    }

    fn div(&self, num: Scalar, den: Scalar, what: &str, n: usize) -> Result<Scalar> {
        if den.is_zero() {
            return Err(self.invalid(format!("denominator of {what} vanishes at n = {n}")));
        }
        Ok(num / den)
    }

    /// `(b_n, a_n, lambda_n)` of the R_I recurrence; `a_0 = lambda_0 = 0`.
    pub fn coefficients(&self, n: usize) -> Result<(Scalar, Scalar, Scalar)> {
        let (bn, an, ln) = self.coefficients_raw(n)?;
        if n == 0 {
            return Ok((bn, Scalar::zero(), Scalar::zero()));
        }
        Ok((bn, an, ln))
    }

    fn coefficients_raw(&self, n: usize) -> Result<(Scalar, Scalar, Scalar)> {
        let nn = ni(n);
        let z = Scalar::zero;
        match self {
            FamilySpec::Jacobi11 { a, b, variant } => {
                let minus = |a: &Scalar, b: &Scalar| -> Result<(Scalar, Scalar)> {
                    let bn = self.div(b - a + s(3) * &nn + one(), a + b + &nn + one(), "b_n", n)?;
                    if n == 0 {
                        return Ok((bn, z()));
                    }
                    let l = self.div(s(2) * &nn * (&nn + b), (a + b + &nn) * (a + b + &nn + one()), "lambda_n", n)?;
                    Ok((bn, l))
                };
                match variant {
                    Jacobi11Variant::Minus => {
                        let (bn, l) = minus(a, b)?;
                        Ok((bn, -&l, l))
                    }
                    Jacobi11Variant::Plus => {
                        let (bn, l) = minus(b, a)?;
                        Ok((-bn, l.clone(), l))
                    }
                    Jacobi11Variant::Mixed => {
                        let even = n.is_multiple_of(2);
                        let top = if even { b - a + one() } else { b - a };
                        let bn = self.div(top, a + b + &nn + one(), "b_n", n)?;
                        if n == 0 {
                            return Ok((bn, z(), z()));
                        }
                        let tail = if even { a + Scalar::frac(n as i64, 2) } else { b + Scalar::frac(n as i64 + 1, 2) };
                        let l = self.div(s(2) * &nn * tail, (a + b + &nn) * (a + b + &nn + one()), "lambda_n", n)?;
                        // 1 - x for odd n, 1 + x for even n
                        let an = if even { l.clone() } else { -&l };
                        Ok((bn, an, l))
                    }
                }
            }
            FamilySpec::Jacobi01 { a, b, variant } => match variant {
                Jacobi01Variant::OneMinus => {
                    let bn = self.div(a + s(2) * &nn + one(), a + b + &nn + one(), "b_n", n)?;
                    if n == 0 {
                        return Ok((bn, z(), z()));
                    }
                    let l = self.div(&nn * (&nn + a), (a + b + &nn) * (a + b + &nn + one()), "lambda_n", n)?;
                    Ok((bn, -&l, l))
                }
                Jacobi01Variant::XPow => {
                    let bn = self.div(a - &nn, a + b + &nn + one(), "b_n", n)?;
                    if n == 0 {
                        return Ok((bn, z(), z()));
                    }
                    let an = self.div(&nn * (b + &nn), (a + b + &nn) * (a + b + &nn + one()), "a_n", n)?;
                    Ok((bn, an, z()))
                }
            },
            FamilySpec::Laguerre { a } => Ok((a - &nn, nn, z())),
            FamilySpec::Meixner { b, c } => {
                let w = one() - c;
                let bn = (&nn - (s(2) * &nn + one()) * c + b * c) / &w;
                let an = c * &nn / &w;
                let ln = c * &nn * (b - &nn) / &w;
                Ok((bn, an, ln))
            }
            FamilySpec::LittleQJacobi { a, b, q } => {
                let qn = qpow(q, n as i64);
                let ab = a * b;
                let bn = self.div(
                    &qn * (one() + a - a * &qn - a * &qn * q),
                    one() - &ab * &qn * q,
                    "b_n",
                    n,
                )?;
                if n == 0 {
                    return Ok((bn, z(), z()));
                }
                let den = (one() - &ab * &qn) * (one() - &ab * &qn * q);
                let core = (one() - &qn) * (one() - a * &qn);
                let ln = self.div(a * qpow(q, 2 * n as i64 - 1) * &core, den.clone(), "lambda_n", n)?;
                let an = self.div(-(&ab * &qn * &core), den, "a_n", n)?;
                Ok((bn, an, ln))
            }
            FamilySpec::BigQJacobi { a, b, c, q, variant } => {
                let qn = qpow(q, n as i64);
                let ab = a * b;
                let den_b = one() - &ab * &qn * q;
                match variant {
                    BigQVariant::BShift => {
                        let top = &ab - a * &qn - c * &qn - a * c * &qn + a * c * &qn * &qn + a * c * &qn * &qn * q;
                        let bn = self.div(-(q * top), den_b, "b_n", n)?;
                        if n == 0 {
                            return Ok((bn, z(), z()));
                        }
                        let l = self.div(
                            -(a * c * &qn * q) * (one() - &qn) * (one() - a * &qn) * (one() - c * &qn),
                            (one() - &ab * &qn) * (one() - &ab * &qn * q),
                            "lambda_n",
                            n,
                        )?;
                        // (1 - b x q^{-n} / c) lambda'_n
                        let an = -(&l * b / (&qn * c));
                        Ok((bn, an, l))
                    }
                    BigQVariant::AShift => {
                        let qn1 = &qn * q;
                        let top = a + a * q - a * &qn1 - &ab * &qn1 - a * c * &qn1 + c * &qn * &qn * q;
                        let bn = self.div(top, &qn * den_b, "b_n", n)?;
                        if n == 0 {
                            return Ok((bn, z(), z()));
                        }
                        let l = self.div(
                            a * a * qpow(q, 2 - 2 * n as i64) * (one() - &qn) * (one() - b * &qn) * (one() - c * &qn),
                            (one() - &ab * &qn) * (one() - &ab * &qn * q),
                            "lambda_n",
                            n,
                        )?;
                        // (1 - x q^{n-1} / a) lambda'_n
                        let an = -(&l * qpow(q, n as i64 - 1) / a);
                        Ok((bn, an, l))
                    }
                }
            }
            FamilySpec::AskeyWilson { a, b, c, d, q } => {
                let qn = qpow(q, n as i64);
                let qmn = qpow(q, -(n as i64));
                let abcd = a * b * c * d;
                let q1 = qpow(q, -1 - n as i64);
                let bracket = (one() - a * b * &q1) * (one() - b * c * &q1) * (one() - b * d * &q1)
                    - (one() - &q1) * (one() - &abcd / q) * (one() - b * b * &q1 * &q1 * q);
                let corr = self.div(
                    &qn * &qn * q * bracket,
                    s(2) * b * (one() - &abcd * &qn / q),
                    "b_n",
                    n,
                )?;
                let bn = (b * &qmn + &qn / b) / s(2) - corr;
                if n == 0 {
                    return Ok((bn, z(), z()));
                }
                let qn1 = &qn / q;
                let l = self.div(
                    (one() - &qn) * (one() - a * c * &qn1) * (one() - a * d * &qn1) * (one() - c * d * &qn1),
                    s(4) * (one() - &abcd * &qn1 / q) * (one() - &abcd * &qn1),
                    "lambda_n",
                    n,
                )?;
                // (1 - 2 b x q^{-n} + b^2 q^{-2n}) lambda'_n
                let an = -(s(2) * b * &qmn * &l);
                let ln = &l * (one() + b * b * &qmn * &qmn);
                Ok((bn, an, ln))
            }
            FamilySpec::QRacah { b, c, d, n: big_n, q } => {
                let nn_i = n as i64;
                let bn_i = *big_n as i64;
                if n > *big_n + 1 {
                    // unreachable once lambda_{N+1} = a_{N+1} = 0
                    return Ok((z(), z(), z()));
                }
                let qp = |k: i64| qpow(q, k);
                let top = -b.clone()
                    + b * d * (s(-1) + qp(bn_i - nn_i) + qp(bn_i - nn_i + 1) - qp(bn_i + 1))
                    + qp(nn_i)
                    + c * (qp(nn_i) - qp(2 * nn_i) - qp(2 * nn_i + 1) + qp(bn_i + nn_i + 1))
                    - b * c * d * qp(bn_i + 1)
                    + c * d * qp(bn_i + nn_i + 1);
                let bn = self.div(-top, b * qp(nn_i) - qp(bn_i), "b_n", n)?;
                if n == 0 {
                    return Ok((bn, z(), z()));
                }
                let l = self.div(
                    d * qp(1 - 2 * nn_i)
                        * (one() - qp(nn_i))
                        * (one() - c * qp(nn_i))
                        * (one() - qp(bn_i - nn_i + 1))
                        * (one() - d * qp(bn_i - nn_i + 1)),
                    (one() - qp(bn_i - nn_i) / b) * (one() - qp(bn_i - nn_i + 1) / b),
                    "lambda_n",
                    n,
                )?;
                // (1 - X q^{n-1} / (b d) + q^{2n-1} c / (b^2 d)) lambda'_n
                let an = -(&l * qp(nn_i - 1) / (b * d));
                let ln = &l * (one() + qp(2 * nn_i - 1) * c / (b * b * d));
                Ok((bn, an, ln))
            }
            FamilySpec::Constant { a, b, c } => Ok((b.clone(), a.clone(), c.clone())),
            FamilySpec::R1Hermite { a } => Ok((z(), a * &nn, nn)),
        }
    }

    /// The R_I coefficient system on indices `0..len`.
    pub fn build(&self, len: usize) -> Result<CoeffSystem> {
        if len == 0 {
            return Err(Error::InvalidInput("a coefficient system needs at least one index".into()));
        }
        let mut b = Vec::with_capacity(len);
        let mut a = Vec::with_capacity(len);
        let mut l = Vec::with_capacity(len);
        for n in 0..len {
            let (bn, an, ln) = self.coefficients(n)?;
            b.push(bn);
            a.push(an);
            l.push(ln);
        }
        CoeffSystem::new(b, a, l)
    }

    /// Monic classical recurrence `(B_n, Lambda_n)` whose functional the R_I
    /// functional extends; `Lambda_0 = 0`.
    pub fn classical_coefficients(&self, n: usize) -> Result<(Scalar, Scalar)> {
        let nn = ni(n);
        let jacobi = |a: &Scalar, b: &Scalar| -> Result<(Scalar, Scalar)> {
            let t = s(2) * &nn + a + b;
            let bn = if n == 0 {
                self.div(b - a, a + b + s(2), "B_0", 0)?
            } else {
                self.div(b * b - a * a, &t * (&t + s(2)), "B_n", n)?
            };
            if n == 0 {
                return Ok((bn, Scalar::zero()));
            }
            let ln = self.div(
                s(4) * &nn * (&nn + a) * (&nn + b) * (&nn + a + b),
                (&t - one()) * &t * &t * (&t + one()),
                "Lambda_n",
                n,
            )?;
            Ok((bn, ln))
        };
        // monic three-term data from (x - x_0) p_n = A_n p_{n+1} - (A_n + C_n) p_n + C_n p_{n-1}
        let from_ac = |shift: Scalar, an: &dyn Fn(i64) -> Result<Scalar>, cn: &dyn Fn(i64) -> Result<Scalar>| {
            let n_i = n as i64;
            let bn = shift - an(n_i)? - cn(n_i)?;
            let ln = if n == 0 { Scalar::zero() } else { an(n_i - 1)? * cn(n_i)? };
            Ok::<_, Error>((bn, ln))
        };
        match self {
            FamilySpec::Jacobi11 { a, b, .. } => jacobi(a, b),
            FamilySpec::Jacobi01 { a, b, .. } => {
                // x = (1 - y) / 2 maps the interval [-1, 1] onto [0, 1]
                let (bn, ln) = jacobi(a, b)?;
                Ok(((one() - bn) / s(2), ln / s(4)))
            }
            FamilySpec::Laguerre { a } => Ok((s(2) * &nn + a + one(), &nn * (&nn + a))),
            FamilySpec::Meixner { b, c } => {
                let w = one() - c;
                Ok(((&nn + (&nn + b) * c) / &w, &nn * (&nn + b - one()) * c / (&w * &w)))
            }
            FamilySpec::LittleQJacobi { a, b, q } => {
                let ab = a * b;
                let an = |k: i64| {
                    let qk = qpow(q, k);
                    self.div(
                        &qk * (one() - a * &qk * q) * (one() - &ab * &qk * q),
                        (one() - &ab * qpow(q, 2 * k + 1)) * (one() - &ab * qpow(q, 2 * k + 2)),
                        "A_n",
                        n,
                    )
                };
                let cn = |k: i64| {
                    let qk = qpow(q, k);
                    self.div(
                        a * &qk * (one() - &qk) * (one() - b * &qk),
                        (one() - &ab * qpow(q, 2 * k)) * (one() - &ab * qpow(q, 2 * k + 1)),
                        "C_n",
                        n,
                    )
                };
                // -x p_n = A_n p_{n+1} - (A_n + C_n) p_n + C_n p_{n-1}
                let (bn, ln) = from_ac(Scalar::zero(), &an, &cn)?;
                Ok((-bn, ln))
            }
            FamilySpec::BigQJacobi { a, b, c, q, .. } => {
                let ab = a * b;
                let an = |k: i64| {
                    let qk1 = qpow(q, k + 1);
                    self.div(
                        (one() - a * &qk1) * (one() - &ab * &qk1) * (one() - c * &qk1),
                        (one() - &ab * qpow(q, 2 * k + 1)) * (one() - &ab * qpow(q, 2 * k + 2)),
                        "A_n",
                        n,
                    )
                };
                let cn = |k: i64| {
                    let qk = qpow(q, k);
                    self.div(
                        -(a * c * &qk * q) * (one() - &qk) * (one() - &ab * &qk / c) * (one() - b * &qk),
                        (one() - &ab * qpow(q, 2 * k)) * (one() - &ab * qpow(q, 2 * k + 1)),
                        "C_n",
                        n,
                    )
                };
                from_ac(one(), &an, &cn)
            }
            FamilySpec::AskeyWilson { a, b, c, d, q } => {
                let abcd = a * b * c * d;
                let an = |k: i64| {
                    let qk = qpow(q, k);
                    self.div(
                        (one() - a * b * &qk) * (one() - a * c * &qk) * (one() - a * d * &qk) * (one() - &abcd * &qk / q),
                        a * (one() - &abcd * qpow(q, 2 * k - 1)) * (one() - &abcd * qpow(q, 2 * k)),
                        "A_n",
                        n,
                    )
                };
                let cn = |k: i64| {
                    let qk1 = qpow(q, k - 1);
                    self.div(
                        a * (one() - &qk1 * q) * (one() - b * c * &qk1) * (one() - b * d * &qk1) * (one() - c * d * &qk1),
                        (one() - &abcd * qpow(q, 2 * k - 2)) * (one() - &abcd * qpow(q, 2 * k - 1)),
                        "C_n",
                        n,
                    )
                };
                // 2x p_n = A_n p_{n+1} + (a + 1/a - A_n - C_n) p_n + C_n p_{n-1}
                let (bn, ln) = from_ac(a + one() / a, &an, &cn)?;
                Ok((bn / s(2), ln / s(4)))
            }
            FamilySpec::QRacah { b, c, d, n: big_n, q } => {
                if n > *big_n + 1 {
                    return Ok((Scalar::zero(), Scalar::zero()));
                }
                // alpha q = q^{-N}
                let alpha = qpow(q, -(*big_n as i64) - 1);
                let ab = &alpha * b;
                let an = |k: i64| {
                    let qk1 = qpow(q, k + 1);
                    self.div(
                        (one() - &alpha * &qk1) * (one() - &ab * &qk1) * (one() - b * d * &qk1) * (one() - c * &qk1),
                        (one() - &ab * qpow(q, 2 * k + 1)) * (one() - &ab * qpow(q, 2 * k + 2)),
                        "A_n",
                        n,
                    )
                };
                let cn = |k: i64| {
                    let qk = qpow(q, k);
                    self.div(
                        q * (one() - &qk) * (one() - b * &qk) * (c - &ab * &qk) * (d - &alpha * &qk),
                        (one() - &ab * qpow(q, 2 * k)) * (one() - &ab * qpow(q, 2 * k + 1)),
                        "C_n",
                        n,
                    )
                };
                // (X - 1 - c d q) R_n = A_n R_{n+1} - (A_n + C_n) R_n + C_n R_{n-1}
                from_ac(one() + c * d * q, &an, &cn)
            }
            FamilySpec::Constant { a, b, c } => {
                let bn = if n == 0 { a + b } else { s(2) * a + b };
                let ln = if n == 0 { Scalar::zero() } else { a * a + a * b + c };
                Ok((bn, ln))
            }
            FamilySpec::R1Hermite { .. } => Err(Error::Unsupported(
                "r1_hermite changes the functional; it has no classical counterpart with the same moments".into(),
            )),
        }
    }

    /// Classical system with `a_n = 0`, `b_n = B_n`, `lambda_n = Lambda_n`.
    pub fn classical_system(&self, len: usize) -> Result<CoeffSystem> {
        let mut b = Vec::with_capacity(len);
        let mut l = Vec::with_capacity(len);
        for n in 0..len {
            let (bn, ln) = self.classical_coefficients(n)?;
            b.push(bn);
            l.push(ln);
        }
        CoeffSystem::new(b, vec![Scalar::zero(); len], l)
    }

    /// Parameters shifted as the degree-`n` R_I polynomial requires.
    pub fn shifted(&self, n: usize) -> Result<FamilySpec> {
        let nn = ni(n);
        let mut out = self.clone();
        match &mut out {
            FamilySpec::Jacobi11 { a, b, variant } => match variant {
                Jacobi11Variant::Minus => *a = &*a - &nn,
                Jacobi11Variant::Plus => *b = &*b - &nn,
                Jacobi11Variant::Mixed => {
                    *a = &*a - ni(n.div_ceil(2));
                    *b = &*b - ni(n / 2);
                }
            },
            FamilySpec::Jacobi01 { a, b, variant } => match variant {
                Jacobi01Variant::OneMinus => *b = &*b - &nn,
                Jacobi01Variant::XPow => *a = &*a - &nn,
            },
            FamilySpec::Laguerre { a } => *a = &*a - &nn,
            FamilySpec::Meixner { b, .. } => *b = &*b - &nn,
            FamilySpec::LittleQJacobi { b, q, .. }
            | FamilySpec::AskeyWilson { b, q, .. }
            | FamilySpec::QRacah { b, q, .. } => *b = &*b * qpow(q, -(n as i64)),
            FamilySpec::BigQJacobi { a, b, q, variant, .. } => match variant {
                BigQVariant::BShift => *b = &*b * qpow(q, -(n as i64)),
                BigQVariant::AShift => *a = &*a * qpow(q, -(n as i64)),
            },
            FamilySpec::Constant { .. } | FamilySpec::R1Hermite { .. } => {
                return Err(self.invalid("no parameter shift; the family is not glued"))
            }
        }
        Ok(out)
    }

    /// The classical (q-)hypergeometric polynomial of degree `n` at these parameters,
    /// unnormalized. For `q_racah` the variable is `X = q^{-x} + c d q^{x+1}`.
    pub fn classical_poly(&self, n: usize) -> Result<Poly> {
        let nn = ni(n);
        let neg_n = -nn.clone();
        let res = match self {
            FamilySpec::Jacobi11 { a, b, .. } => {
                let up = [neg_n, &nn + a + b + one()];
                let lo = [a + one()];
                // argument (1 - x) / 2
                terminating(n, |k| hyper_coef(&up, &lo, &one(), k), |_| {
                    Poly::linear(Scalar::frac(-1, 2), Scalar::frac(1, 2))
                })
            }
            FamilySpec::Jacobi01 { a, b, .. } => {
                let up = [neg_n, &nn + a + b + one()];
                let lo = [a + one()];
                terminating(n, |k| hyper_coef(&up, &lo, &one(), k), |_| Poly::x())
            }
            FamilySpec::Laguerre { a } => {
                let up = [neg_n];
                let lo = [a + one()];
                terminating(n, |k| hyper_coef(&up, &lo, &one(), k), |_| Poly::x())
            }
            FamilySpec::Meixner { b, c } => {
                let up = [neg_n];
                let lo = [b.clone()];
                let z = one() - one() / c;
                // (-x)_k carried in the polynomial factor
                terminating(n, |k| hyper_coef(&up, &lo, &z, k), |j| Poly::linear(s(-1), ni(j)))
            }
            FamilySpec::LittleQJacobi { a, b, q } => {
                let qn = qpow(q, n as i64);
                let up = [one() / &qn, a * b * &qn * q];
                let lo = [a * q];
                terminating(n, |k| qhyper_coef(&up, &lo, q, &one(), k), |_| Poly::linear(q.clone(), Scalar::zero()))
            }
            FamilySpec::BigQJacobi { a, b, c, q, .. } => {
                let qn = qpow(q, n as i64);
                let up = [one() / &qn, a * b * &qn * q];
                let lo = [a * q, c * q];
                // (x; q)_k
                terminating(n, |k| qhyper_coef(&up, &lo, q, q, k), |j| Poly::linear(-qpow(q, j as i64), one()))
            }
            FamilySpec::AskeyWilson { a, b, c, d, q } => {
                let qn = qpow(q, n as i64);
                let up = [one() / &qn, a * b * c * d * &qn / q];
                let lo = [a * b, a * c, a * d];
                // (a z, a / z; q)_k
                terminating(n, |k| qhyper_coef(&up, &lo, q, q, k), |j| {
                    let qj = qpow(q, j as i64);
                    Poly::new(vec![one() + a * a * &qj * &qj, -(s(2) * a * &qj)])
                })
            }
            FamilySpec::QRacah { b, c, d, n: big_n, q } => {
                if n > *big_n {
                    return Err(self.invalid(format!("degree {n} exceeds N = {big_n}")));
                }
                let up = [qpow(q, -(n as i64)), b * qpow(q, n as i64 - *big_n as i64)];
                let lo = [qpow(q, -(*big_n as i64)), b * d * q, c * q];
                // (q^{-x}, c d q^{x+1}; q)_k as a polynomial in X
                terminating(n, |k| qhyper_coef(&up, &lo, q, q, k), |j| {
                    let qj = qpow(q, j as i64);
                    Poly::new(vec![one() + c * d * q * &qj * &qj, -qj])
                })
            }
            FamilySpec::Constant { .. } | FamilySpec::R1Hermite { .. } => {
                return Err(Error::Unsupported(format!("{} has no classical closed form", self.name())))
            }
        };
        res.ok_or_else(|| self.invalid(format!("a lower parameter vanishes in the degree {n} closed form")))
    }

    /// Closed form proportional to the R_I polynomial of degree `n`.
    ///
    /// Glued families use the shifted classical form. `constant` uses
    /// `sum_k (-1)^k C(n-k, k) (x - B)^{n-2k} (A x + C)^k`; `r1_hermite`
    /// rescales the monic Hermite polynomial, `He_n(x / sqrt(1+ax)) sqrt(1+ax)^n`.
    pub fn hyp_poly(&self, n: usize) -> Result<Poly> {
        match self {
            FamilySpec::Constant { a, b, c } => {
                let shift = Poly::linear(one(), -b.clone());
                let fac = Poly::linear(a.clone(), c.clone());
                Ok((0..=n / 2).fold(Poly::zero(), |acc, k| {
                    let sign = if k % 2 == 0 { one() } else { s(-1) };
                    let coef = sign * binomial((n - k) as i64, k as i64);
                    let term = &shift.powu((n - 2 * k) as u32) * &fac.powu(k as u32);
                    &acc + &term.scale(&coef)
                }))
            }
            FamilySpec::R1Hermite { a } => {
                let he = p_sequence(&FamilySpec::R1Hermite { a: Scalar::zero() }.build(n + 1)?, n)?;
                let h = &he[n];
                let fac = Poly::linear(a.clone(), one());
                // only monomials x^{n-2k} occur; each picks up (1 + a x)^k
                Ok((0..=n / 2).fold(Poly::zero(), |acc, k| {
                    let term = Poly::monomial(n - 2 * k, h.coeff(n - 2 * k));
                    &acc + &(&term * &fac.powu(k as u32))
                }))
            }
            _ => self.shifted(n)?.classical_poly(n),
        }
    }

    /// `hyp_poly(n)` evaluated at `x`.
    pub fn eval_hyp(&self, n: usize, x: &Scalar) -> Result<Scalar> {
        Ok(self.hyp_poly(n)?.eval(x))
    }

    /// `hyp_poly(n)` divided by its leading coefficient.
    pub fn monic_hyp(&self, n: usize) -> Result<Poly> {
        monic(self.hyp_poly(n)?, self, n)
    }

    /// Sample points in the family's natural variable. For `q_racah` these are
    /// `X = q^{-x} + c d q^{x+1}` at `x = 0, 1, 2, ...`.
    pub fn sample_points(&self, count: usize) -> Vec<Scalar> {
        match self {
            FamilySpec::QRacah { c, d, q, .. } => (0..count as i64)
                .map(|x| qpow(q, -x) + c * d * qpow(q, x + 1))
                .collect(),
            _ => {
                let mut v = default_samples();
                let mut extra = 4;
                while v.len() < count {
                    v.push(s(extra));
                    extra += 1;
                }
                v.truncate(count);
                v
            }
        }
    }

    /// Recurrence `P_n` against the closed form: proportional at every sample, and
    /// equal after monic rescaling.
    pub fn glue_shift_check(&self, n: usize, xs: &[Scalar]) -> Result<GlueReport> {
        let p = p_sequence(&self.build(n + 1)?, n)?.pop().expect("sequence has n + 1 entries");
        let closed = self.hyp_poly(n)?;
        proportionality(n, &p, &closed, xs, self)
    }

    /// The classical recurrence against the unshifted closed form, validating
    /// `(B_n, Lambda_n)`.
    pub fn classical_check(&self, n: usize, xs: &[Scalar]) -> Result<GlueReport> {
        let p = p_sequence(&self.classical_system(n + 1)?, n)?.pop().expect("sequence has n + 1 entries");
        let closed = self.classical_poly(n)?;
        proportionality(n, &p, &closed, xs, self)
    }

    /// Closed-form moment `L(x^k)` where one is recorded.
    pub fn closed_moment(&self, k: usize) -> Result<Scalar> {
        match self {
            FamilySpec::Jacobi11 { a, b, .. } => Ok((0..=k)
                .map(|j| {
                    binomial(k as i64, j as i64)
                        * s(-2).powu(j as u32)
                        * pochhammer(&(a + one()), j)
                        / pochhammer(&(a + b + s(2)), j)
                })
                .sum()),
            FamilySpec::Jacobi01 { a, b, .. } => Ok(pochhammer(&(a + one()), k) / pochhammer(&(a + b + s(2)), k)),
            FamilySpec::Laguerre { a } => Ok(pochhammer(&(a + one()), k)),
            FamilySpec::Meixner { b, c } => {
                let d = c / (one() - c);
                Ok(stirling2_row(k)
                    .iter()
                    .enumerate()
                    .map(|(j, sk)| sk * pochhammer(b, j) * d.powu(j as u32))
                    .sum())
            }
            FamilySpec::LittleQJacobi { a, b, q } => {
                Ok(qpochhammer(&(a * q), q, k) / qpochhammer(&(a * b * q * q), q, k))
            }
            FamilySpec::R1Hermite { a } => Ok(theta(k, a)),
            _ => Err(Error::Unsupported(format!("no closed form recorded for the moments of {}", self.name()))),
        }
    }

    /// Series of recorded closed-form moments; for `constant` the expansion of
    /// `(1 - B t - sqrt(1 - 4At - 2Bt + B^2t^2 - 4Ct^2)) / (2t(A + Ct))`, which needs `A != 0`.
    pub fn closed_moment_series(&self, order: usize) -> Result<Option<Series>> {
        if let FamilySpec::Constant { a, b, c } = self {
            if a.is_zero() {
                return Ok(None);
            }
            let big = order + 1;
            let disc = Poly::new(vec![one(), -(s(4) * a) - s(2) * b, b * b - s(4) * c]);
            let root = Series::from_poly(&disc, big).sqrt()?;
            let num = &Series::from_poly(&Poly::linear(-b.clone(), one()), big) - &root;
            let den = Series::from_poly(&Poly::linear(s(2) * c, s(2) * a), order);
            return Ok(Some(&num.div_x()? * &den.inverse()?));
        }
        match self.closed_moment(0) {
            Err(Error::Unsupported(_)) => Ok(None),
            Err(e) => Err(e),
            Ok(_) => {
                let vals: Result<Vec<Scalar>> = (0..=order).map(|k| self.closed_moment(k)).collect();
                Ok(Some(Series::new(vals?, order)))
            }
        }
    }

    /// Moment series of the R_I fraction against the classical fraction and
    /// the closed form, through `order`.
    pub fn moment_series_check(&self, order: usize) -> Result<MomentReport> {
        let len = order + 2;
        let ri = cf_series(&self.build(len)?, order)?;
        let classical = match self.classical_system(len) {
            Ok(cs) => Some(cf_series(&cs, order)?),
            Err(Error::Unsupported(_)) => None,
            Err(e) => return Err(e),
        };
        let closed = self.closed_moment_series(order)?;
        let matched = classical.as_ref().is_none_or(|c| *c == ri) && closed.as_ref().is_none_or(|c| *c == ri);
        Ok(MomentReport {
            order,
            ri,
            classical,
            closed,
            matched,
        })
    }
}

fn monic(p: Poly, fam: &FamilySpec, n: usize) -> Result<Poly> {
    match p.degree() {
        Some(d) if d == n => {
            let lead = p.leading();
            Ok(p.scale(&lead.recip()?))
        }
        _ => Err(fam.invalid(format!("the degree {n} closed form degenerates at these parameters"))),
    }
}

fn proportionality(n: usize, p: &Poly, closed: &Poly, xs: &[Scalar], fam: &FamilySpec) -> Result<GlueReport> {
    let m = monic(closed.clone(), fam, n)?;
    let constant = closed.leading().recip()?;
    let samples: Vec<(Scalar, Scalar, Scalar)> = xs.iter().map(|x| (x.clone(), p.eval(x), closed.eval(x))).collect();
    let proportional = samples.iter().all(|(_, pv, cv)| *pv == cv * &constant);
    Ok(GlueReport {
        n,
        constant,
        samples,
        polys_equal: m == *p,
        proportional,
    })
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.params().iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}({})", self.name(), body.join(", "))
    }
}

/// Resolve a coefficient-system spec: the tagged table form, or
/// `{"kind":"family",...}` built on indices `0..len`.
pub fn resolve_coeff_spec(value: &Value, len: usize) -> Result<CoeffSystem> {
    match value.get("kind").and_then(Value::as_str) {
        Some("table") => CoeffSystem::from_json(value),
        Some("family") => FamilySpec::from_json(value)?.build(len),
        _ => Err(Error::InvalidInput("coefficient spec needs \"kind\": \"table\" or \"family\"".into())),
    }
}

/// Hermite moments `mu_{2j} = (2j - 1)!!`, odd moments zero.
pub fn hermite_moment(n: usize) -> Scalar {
    if n % 2 == 1 {
        Scalar::zero()
    } else {
        double_factorial_odd(n / 2)
    }
}

/// Coefficient `[x^k] w_m(x, a) / a^k`: `C(n + k/2, k)` for `m = 2n`, `k` even,
/// and `C(n + (k+1)/2, k)` for `m = 2n + 1`, `k` odd; zero otherwise.
fn weight_binomial(m: usize, k: usize) -> Scalar {
    let n = (m / 2) as i64;
    let k_i = k as i64;
    if m.is_multiple_of(2) && k.is_multiple_of(2) {
        binomial(n + k_i / 2, k_i)
    } else if m % 2 == 1 && k % 2 == 1 {
        binomial(n + (k_i + 1) / 2, k_i)
    } else {
        Scalar::zero()
    }
}

/// `theta_m = sum_k [x^k] w_m(x, a) mu_{m+k}` over the base moments `mu`.
pub fn theta_from(m: usize, a: &Scalar, mu: impl Fn(usize) -> Scalar) -> Scalar {
    (0..=m)
        .map(|k| weight_binomial(m, k))
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| c * a.powu(k as u32) * mu(m + k))
        .sum()
}

/// Moments of `r1_hermite(a)` from the Hermite moments.
pub fn theta(m: usize, a: &Scalar) -> Scalar {
    theta_from(m, a, hermite_moment)
}

/// `w_m(x, a)` as the binomial sum.
pub fn chebyshev_weight(m: usize, x: &Scalar, a: &Scalar) -> Scalar {
    (0..=m).map(|k| weight_binomial(m, k) * (a * x).powu(k as u32)).sum()
}

/// `w_m(x, a)` from the `2F1` forms: `2F1(-n, n+1; 1/2; -a^2x^2/4)` for `m = 2n`
/// and `(n+1) a x 2F1(-n, n+2; 3/2; -a^2x^2/4)` for `m = 2n + 1`.
pub fn chebyshev_weight_hyp(m: usize, x: &Scalar, a: &Scalar) -> Scalar {
    let n = m / 2;
    let z = -(a * a * x * x) / s(4);
    let neg_n = -ni(n);
    if m.is_multiple_of(2) {
        crate::exactmath::special::hyper_sum(&[neg_n, ni(n + 1)], &[Scalar::frac(1, 2)], &z, n)
            .expect("lower parameter 1/2 never vanishes")
    } else {
        ni(n + 1)
            * a
            * x
            * crate::exactmath::special::hyper_sum(&[neg_n, ni(n + 2)], &[Scalar::frac(3, 2)], &z, n)
                .expect("lower parameter 3/2 never vanishes")
    }
}

/// `U_m(i s)` as `(re, im)`, from `U_{k+1}(y) = 2y U_k(y) - U_{k-1}(y)`.
pub fn chebyshev_u_imaginary(m: usize, t: &Scalar) -> (Scalar, Scalar) {
    let mut prev = (Scalar::zero(), Scalar::zero());
    let mut cur = (one(), Scalar::zero());
    for _ in 0..m {
        // 2 i t (re + i im) = -2 t im + 2 t re i
        let next = (-(s(2) * t * &cur.1) - &prev.0, s(2) * t * &cur.0 - &prev.1);
        prev = cur;
        cur = next;
    }
    cur
}

/// `w_m(x, a)` through Chebyshev polynomials of the second kind:
/// `(-1)^n U_{2n}(i a x / 2)` and `i (-1)^{n+1} U_{2n+1}(i a x / 2)`.
pub fn chebyshev_weight_u(m: usize, x: &Scalar, a: &Scalar) -> Scalar {
    let (re, im) = chebyshev_u_imaginary(m, &(a * x / s(2)));
    let sign = if (m / 2).is_multiple_of(2) { one() } else { s(-1) };
    if m.is_multiple_of(2) {
        sign * re
    } else {
        // i * (i im) = -im, and (-1)^{n+1} (-1) = (-1)^n
        sign * im
    }
}

/// `sum_n theta_n t^n` three ways: binomial sums, the `r1_hermite(a)` fraction,
/// and `sum_k mu_{2k} t^k (a + t)^k`. True when all agree through `order`.
pub fn hermite_egf_check(a: &Scalar, order: usize) -> Result<bool> {
    let lhs = Series::new((0..=order).map(|m| theta(m, a)).collect(), order);
    let ri = cf_series(&FamilySpec::r1_hermite(a.clone())?.build(order + 2)?, order)?;
    let step = Series::from_poly(&Poly::linear(one(), a.clone()).shift(1), order);
    let mut power = Series::one(order);
    let mut rhs = Series::zero(order);
    for k in 0..=order {
        rhs = &rhs + &power.scale(&hermite_moment(2 * k));
        power = &power * &step;
    }
    Ok(lhs == ri && lhs == rhs)
}

/// `n! [t^n] exp(x t - (1 + a x) t^2 / 2)` as a polynomial in `x`.
pub fn r1_hermite_egf(n: usize, a: &Scalar) -> Poly {
    let half = Poly::linear(-(a / s(2)), Scalar::frac(-1, 2));
    (0..=n / 2).fold(Poly::zero(), |acc, k| {
        let i = n - 2 * k;
        let c = factorial(n) / (factorial(i) * factorial(k));
        &acc + &(&Poly::monomial(i, c) * &half.powu(k as u32))
    })
}

/// `H_n H_m = sum_s C(n,s) C(m,s) s! (1 + a x)^s H_{n+m-2s}` for the R_I
/// Hermite polynomials, compared as polynomials and as coefficient vectors
/// in the `P` basis.
pub fn hermite_linearization_check(n: usize, m: usize, a: &Scalar) -> Result<bool> {
    let cs = FamilySpec::r1_hermite(a.clone())?.build(n + m + 2)?;
    let h = p_sequence(&cs, n + m)?;
    let lhs = &h[n] * &h[m];
    let fac = Poly::linear(a.clone(), one());
    let rhs = (0..=n.min(m)).fold(Poly::zero(), |acc, s_| {
        let c = binomial(n as i64, s_ as i64) * binomial(m as i64, s_ as i64) * factorial(s_);
        &acc + &(&fac.powu(s_ as u32) * &h[n + m - 2 * s_]).scale(&c)
    });
    let mut session = Session::new(cs);
    let el = session.expand_in_p(&lhs)?;
    let er = session.expand_in_p(&rhs)?;
    Ok(lhs == rhs && el == er)
}
