//! Seeded property suites behind `ri-ortho verify`.
//!
//! Every check is exact. A check that hits a degenerate system or a violated
//! hypothesis fails with the error as its detail. Random systems are drawn
//! from seeds derived from the suite seed, so reports are reproducible.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::determinants::{self, det_exact, DetKind};
use crate::error::{Error, Result};
use crate::exactmath::{Poly, Scalar, Series, SymPoly, Symbol};
use crate::families::{self, BigQVariant, FamilySpec, Jacobi01Variant, Jacobi11Variant};
use crate::histories;
use crate::ortho::{cf_series, truncated_cf, CoeffSystem, Session};
use crate::paths::{bounded_gf, count_filtered, enumerate, rho_sum, weight_sum, NumericWeights, PathFilter, Point, SymbolicWeights};

/// Random systems per seeded suite.
pub const SYSTEMS_PER_SUITE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Orthogonality,
    Determinants,
    Bounded,
    Families,
    Histories,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [
        Suite::Orthogonality,
        Suite::Determinants,
        Suite::Bounded,
        Suite::Families,
        Suite::Histories,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Orthogonality => "orthogonality",
            Suite::Determinants => "determinants",
            Suite::Bounded => "bounded",
            Suite::Families => "families",
            Suite::Histories => "histories",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .iter()
            .copied()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown suite {s:?}")))
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "passed": self.passed(),
            "checks": self.results.len(),
            "results": self.results,
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.results {
            let mark = if r.passed { "PASS" } else { "FAIL" };
            write!(f, "{mark} [{}] {} (seed {})", r.suite, r.name, self.seed)?;
            if !r.detail.is_empty() {
                write!(f, ": {}", r.detail)?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed, seed {}", self.results.len(), failed, self.seed)
    }
}

struct Collector {
    suite: &'static str,
    results: Vec<CheckResult>,
}

impl Collector {
    fn new(suite: Suite) -> Self {
        Collector {
            suite: suite.name(),
            results: Vec::new(),
        }
    }

    /// Record `f`; an `Err` fails the check with the error text.
    fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> Result<std::result::Result<(), String>>) {
        let (passed, detail) = match f() {
            Ok(Ok(())) => (true, String::new()),
            Ok(Err(why)) => (false, why),
            Err(e) => (false, e.to_string()),
        };
        self.results.push(CheckResult {
            suite: self.suite,
            name: name.into(),
            passed,
            detail,
        });
    }
}

fn expect(ok: bool, why: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

/// Run one suite, or every suite in parallel for [`Suite::All`].
pub fn run(suite: Suite, seed: u64) -> Report {
    let results = match suite {
        Suite::All => std::thread::scope(|scope| {
            let handles: Vec<_> = Suite::EACH.iter().map(|&s| scope.spawn(move || run_one(s, seed))).collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("suite thread panicked"))
                .collect()
        }),
        s => run_one(s, seed),
    };
    Report { seed, results }
}

fn run_one(suite: Suite, seed: u64) -> Vec<CheckResult> {
    let mut c = Collector::new(suite);
    match suite {
        Suite::Orthogonality => orthogonality(&mut c, seed),
        Suite::Determinants => determinant_suite(&mut c, seed),
        Suite::Bounded => bounded(&mut c, seed),
        Suite::Families => family_suite(&mut c),
        Suite::Histories => history_suite(&mut c),
        Suite::All => unreachable!("expanded by run"),
    }
    c.results
}

/// `count` seeded systems of length `len`, skipping any that is degenerate through `depth`.
pub fn random_systems(seed: u64, count: usize, len: usize, full: bool, depth: usize) -> Vec<(u64, CoeffSystem)> {
    let mut out = Vec::with_capacity(count);
    let mut s = seed.wrapping_mul(1_000_003);
    while out.len() < count {
        let cs = if full { CoeffSystem::random_full(s, len) } else { CoeffSystem::random(s, len, false) };
        if Session::new(cs.clone()).check_nondegenerate(depth).is_ok() {
            out.push((s, cs));
        }
        s = s.wrapping_add(1);
    }
    out
}

fn x_pow(n: usize) -> Poly {
    Poly::monomial(n, Scalar::one())
}

fn sym(s: Symbol) -> SymPoly {
    SymPoly::var(s)
}

/// `mu_1` and `mu_2` as polynomials in the coefficient symbols.
pub fn symbolic_moment_targets() -> (SymPoly, SymPoly) {
    let (b0, b1) = (sym(Symbol::b(0)), sym(Symbol::b(1)));
    let (a1, a2) = (sym(Symbol::a(1)), sym(Symbol::a(2)));
    let l1 = sym(Symbol::lambda(1));
    let two = SymPoly::constant(Scalar::from_int(2));
    let mu1 = &b0 + &a1;
    let mu2 = &(&(&(&(&(&b0 * &b0) + &l1) + &(&two * &(&a1 * &b0))) + &(&a2 * &a1)) + &(&b1 * &a1)) + &(&a1 * &a1);
    (mu1, mu2)
}

fn orthogonality(c: &mut Collector, seed: u64) {
    c.check("path counts 1, 2, 7, 29, 133, 650 by enumeration and by weight sums", || {
        let ones = CoeffSystem::constant(Scalar::one(), Scalar::one(), Scalar::one(), 8);
        let want = [1, 2, 7, 29, 133, 650];
        for (n, &w) in want.iter().enumerate() {
            let listed = enumerate(Point::new(0, 0), Point::new(n, 0), 10_000)?.len() as i64;
            let counted = count_filtered(Point::new(0, 0), Point::new(n, 0), &PathFilter::default())?;
            let summed = weight_sum(Point::new(0, 0), Point::new(n, 0), &NumericWeights(&ones), None)?;
            if listed != w || counted != Scalar::from_int(w) || summed != Scalar::from_int(w) {
                return Ok(Err(format!("n = {n}: listed {listed}, counted {counted}, summed {summed}")));
            }
        }
        Ok(Ok(()))
    });
    c.check("symbolic mu_1 and mu_2", || {
        let (mu1, mu2) = symbolic_moment_targets();
        let got1 = weight_sum(Point::new(0, 0), Point::new(1, 0), &SymbolicWeights, None)?;
        let got2 = weight_sum(Point::new(0, 0), Point::new(2, 0), &SymbolicWeights, None)?;
        Ok(expect(got1 == mu1 && got2 == mu2, || format!("mu_1 = {got1}, mu_2 = {got2}")))
    });
    for (s, cs) in random_systems(seed, SYSTEMS_PER_SUITE, 14, false, 10) {
        c.check(format!("L(x^n Q_m) = 0 for n < m <= 8, system {s}"), || {
            let mut ses = Session::new(cs.clone());
            for m in 1..=8 {
                for n in 0..m {
                    let v = ses.q(m)?.mul_poly(&x_pow(n));
                    let v = ses.l_eval(&v)?;
                    if !v.is_zero() {
                        return Ok(Err(format!("n = {n}, m = {m}: {v}")));
                    }
                }
            }
            Ok(Ok(()))
        });
        c.check(format!("L(P_n Q_m) = a_(m+1)...a_n for m <= n <= 8, system {s}"), || {
            let mut ses = Session::new(cs.clone());
            for n in 0..=8 {
                for m in 0..=n {
                    let pn = ses.p(n)?;
                    let v = ses.q(m)?.mul_poly(&pn);
                    let v = ses.l_eval(&v)?;
                    let want: Scalar = ((m + 1)..=n).map(|i| cs.a(i).clone()).product();
                    if v != want {
                        return Ok(Err(format!("n = {n}, m = {m}: {v} != {want}")));
                    }
                }
            }
            Ok(Ok(()))
        });
        c.check(format!("moments by paths, recurrence and fraction agree through 10, system {s}"), || {
            let mut ses = Session::new(cs.clone());
            let cf = cf_series(&cs, 10)?;
            for n in 0..=10 {
                let rec = ses.mu(n)?;
                let dp = weight_sum(Point::new(0, 0), Point::new(n, 0), &NumericWeights(&cs), None)?;
                if rec != dp || rec != cf.coeff(n) {
                    return Ok(Err(format!("n = {n}: recurrence {rec}, paths {dp}, fraction {}", cf.coeff(n))));
                }
            }
            Ok(Ok(()))
        });
        c.check(format!("L(x^n P_m Q_l) and L(x^n P_m P_l) are path sums for n, m, l <= 4, system {s}"), || {
            let mut ses = Session::new(cs.clone());
            for n in 0..=4 {
                for m in 0..=4 {
                    for l in 0..=4 {
                        let mu = ses.mu_nml(n, m, l)?;
                        let mu_paths = weight_sum(Point::new(0, m), Point::new(n, l), &NumericWeights(&cs), None)?;
                        let rho = ses.rho(n, m, l)?;
                        let rho_paths = rho_sum(n, m, l, &NumericWeights(&cs))?;
                        if mu != mu_paths || rho != rho_paths {
                            return Ok(Err(format!("(n, m, l) = ({n}, {m}, {l})")));
                        }
                    }
                }
            }
            Ok(Ok(()))
        });
    }
}

fn determinant_suite(c: &mut Collector, seed: u64) {
    for (s, cs) in random_systems(seed, SYSTEMS_PER_SUITE, 16, true, 7) {
        c.check(format!("Delta', Delta'', Delta''' product formulas for n <= 6, system {s}"), || {
            let mut ses = Session::new(cs.clone());
            for n in 0..=6 {
                for kind in DetKind::UNSHIFTED {
                    let r = determinants::delta(kind, n, &mut ses)?;
                    if !r.matched {
                        return Ok(Err(format!("{kind} n = {n}: {} != {}", r.computed, r.predicted)));
                    }
                }
            }
            Ok(Ok(()))
        });
        c.check(format!("shifted determinant formulas for n <= 6, system {s}"), || {
            let mut ses = Session::new(cs.clone());
            for n in 1..=6 {
                for kind in DetKind::SHIFTED {
                    let r = determinants::delta_shifted(kind, n, 1, &mut ses)?;
                    if !r.matched {
                        return Ok(Err(format!("{kind} n = {n}: {} != {}", r.computed, r.predicted)));
                    }
                }
            }
            Ok(Ok(()))
        });
        c.check(format!("Delta'_n equals its leading n x n minor for n <= 6, system {s}"), || {
            let mut ses = Session::new(cs.clone());
            for n in 1..=6 {
                let full = det_exact(&determinants::nu_matrix(DetKind::Prime, n, &mut ses)?);
                let minor: determinants::Matrix = (0..n)
                    .map(|i| (0..n).map(|j| ses.nu(i + j, n)).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?;
                if full != det_exact(&minor) {
                    return Ok(Err(format!("n = {n}")));
                }
            }
            Ok(Ok(()))
        });
        c.check(format!("P_n and Q_n from determinants for n <= 5, system {s}"), || {
            let mut ses = Session::new(cs.clone());
            for n in 0..=5 {
                if determinants::p_via_det(n, &mut ses)? != ses.p(n)? {
                    return Ok(Err(format!("P_{n}")));
                }
                let q = ses.q(n)?;
                for variant in 1..=3 {
                    if !determinants::q_via_det(n, variant, &mut ses)?.equals(&q, &cs)? {
                        return Ok(Err(format!("Q_{n} variant {variant}")));
                    }
                }
            }
            Ok(Ok(()))
        });
    }
    let triples = [
        (Scalar::one(), Scalar::one(), Scalar::one()),
        (Scalar::from_int(2), Scalar::frac(-1, 3), Scalar::frac(1, 2)),
        (Scalar::frac(1, 2), Scalar::from_int(3), Scalar::frac(-2, 5)),
    ];
    for (a, b, cc) in triples {
        c.check(format!("Hankel determinants of the constant system (A, B, C) = ({a}, {b}, {cc}), n <= 5"), || {
            let mut ses = Session::new(CoeffSystem::constant(a.clone(), b.clone(), cc.clone(), 14));
            for n in 0..=5 {
                let h = determinants::hankel(n, &mut ses)?;
                let want = determinants::hankel_constant_prediction(&a, &b, &cc, n);
                if h != want {
                    return Ok(Err(format!("n = {n}: {h} != {want}")));
                }
            }
            Ok(Ok(()))
        });
    }
}

fn bounded(c: &mut Collector, seed: u64) {
    const ORDER: usize = 12;
    for (s, cs) in random_systems(seed, SYSTEMS_PER_SUITE, 8, false, 5) {
        c.check(format!("bounded-height generating functions for k <= 4 through order {ORDER}, system {s}"), || {
            for k in 0..=4 {
                for r in 0..=k {
                    for t in 0..=k {
                        let gf = bounded_gf(r, t, k, &cs)?;
                        let series = Series::from_rational(&gf.full_numerator(), &gf.denominator, ORDER)?;
                        for n in 0..=ORDER {
                            let dp = weight_sum(Point::new(0, r), Point::new(n, t), &NumericWeights(&cs), Some(k))?;
                            if dp != series.coeff(n) {
                                return Ok(Err(format!("k = {k}, r = {r}, s = {t}, n = {n}")));
                            }
                        }
                    }
                }
            }
            Ok(Ok(()))
        });
        c.check(format!("truncated fraction equals the height-capped generating function, system {s}"), || {
            for k in 0..=4 {
                let (num, den) = truncated_cf(&cs, k)?;
                let gf = bounded_gf(0, 0, k, &cs)?;
                if num != gf.full_numerator() || den != gf.denominator {
                    return Ok(Err(format!("k = {k}")));
                }
            }
            Ok(Ok(()))
        });
    }
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::frac(n, d)
}

/// Two parameter points for every glued family.
pub fn family_points() -> Vec<FamilySpec> {
    let half = q(1, 2);
    let third = q(1, 3);
    let mut out = Vec::new();
    for v in Jacobi11Variant::ALL {
        out.push(FamilySpec::jacobi11(q(1, 3), q(2, 5), *v));
        out.push(FamilySpec::jacobi11(q(-1, 4), q(3, 2), *v));
    }
    for v in Jacobi01Variant::ALL {
        out.push(FamilySpec::jacobi01(q(1, 2), q(1, 2), *v));
        out.push(FamilySpec::jacobi01(q(2, 3), q(-1, 5), *v));
    }
    out.push(FamilySpec::laguerre(q(1, 3)));
    out.push(FamilySpec::laguerre(q(-5, 2)));
    out.push(FamilySpec::meixner(q(3, 2), q(1, 3)));
    out.push(FamilySpec::meixner(q(-2, 3), q(3, 4)));
    out.push(FamilySpec::little_q_jacobi(q(1, 3), q(2, 5), half.clone()));
    out.push(FamilySpec::little_q_jacobi(q(2, 5), q(3, 7), third.clone()));
    for v in BigQVariant::ALL {
        out.push(FamilySpec::big_q_jacobi(q(1, 3), q(2, 5), q(-1, 4), half.clone(), *v));
        out.push(FamilySpec::big_q_jacobi(q(2, 5), q(5, 7), q(-3, 2), third.clone(), *v));
    }
    out.push(FamilySpec::askey_wilson(q(1, 3), q(2, 5), q(-1, 4), q(3, 7), half.clone()));
    out.push(FamilySpec::askey_wilson(q(2, 1), q(1, 5), q(-3, 1), q(1, 6), half.clone()));
    out.push(FamilySpec::q_racah(q(1, 3), q(2, 5), q(3, 7), 4, half.clone()));
    out.push(FamilySpec::q_racah(q(3, 5), q(-1, 3), q(2, 7), 6, half.clone()));
    out.into_iter().map(|f| f.expect("sample parameters are valid")).collect()
}

/// Largest degree probed for a family: `q_racah` terminates at `N`.
fn max_degree(f: &FamilySpec, cap: usize) -> usize {
    match f {
        FamilySpec::QRacah { n, .. } => cap.min(*n),
        _ => cap,
    }
}

fn family_suite(c: &mut Collector) {
    for f in family_points() {
        c.check(format!("{f}: L(x^n Q_m) = 0 for n < m <= 6"), || {
            let top = max_degree(&f, 6);
            let mut ses = Session::new(f.build(top + 2)?);
            ses.check_nondegenerate(top)?;
            for m in 1..=top {
                for n in 0..m {
                    let v = ses.q(m)?.mul_poly(&x_pow(n));
                    let v = ses.l_eval(&v)?;
                    if !v.is_zero() {
                        return Ok(Err(format!("n = {n}, m = {m}: {v}")));
                    }
                }
                let top_v = ses.q(m)?.mul_poly(&x_pow(m));
                let one = ses.l_eval(&top_v)?;
                if !one.is_one() {
                    return Ok(Err(format!("L(x^{m} Q_{m}) = {one}")));
                }
            }
            Ok(Ok(()))
        });
        c.check(format!("{f}: recurrence polynomials match the shifted closed forms"), || {
            let xs = f.sample_points(4);
            for n in 0..=max_degree(&f, 5) {
                let r = f.glue_shift_check(n, &xs)?;
                if !r.polys_equal || !r.proportional {
                    return Ok(Err(format!("n = {n}")));
                }
            }
            Ok(Ok(()))
        });
        c.check(format!("{f}: moment series equal the classical fraction through order 8"), || {
            let r = f.moment_series_check(8)?;
            Ok(expect(r.matched, || format!("R_I {:?}", r.ri.coeffs())))
        });
        if f.closed_moment(0).is_ok() {
            c.check(format!("{f}: moments equal the closed form through 8"), || {
                let mut ses = Session::new(f.build(10)?);
                for k in 0..=8 {
                    let (got, want) = (ses.mu(k)?, f.closed_moment(k)?);
                    if got != want {
                        return Ok(Err(format!("k = {k}: {got} != {want}")));
                    }
                }
                Ok(Ok(()))
            });
        }
    }
    c.check("jacobi01(1/2, 1/2): 4^k mu_k = 1, 2, 5, 14, 42", || {
        for v in Jacobi01Variant::ALL {
            let mut ses = Session::new(FamilySpec::jacobi01(q(1, 2), q(1, 2), *v)?.build(8)?);
            let got: Vec<Scalar> = (0..=4)
                .map(|k| Ok(ses.mu(k)? * Scalar::from_int(4).powu(k as u32)))
                .collect::<Result<_>>()?;
            let want: Vec<Scalar> = [1, 2, 5, 14, 42].iter().map(|&v| Scalar::from_int(v)).collect();
            if got != want {
                return Ok(Err(format!("{v}: {got:?}")));
            }
        }
        Ok(Ok(()))
    });
    for (a, b, cc) in [(q(1, 1), q(1, 1), q(1, 1)), (q(2, 3), q(-1, 2), q(3, 4))] {
        c.check(format!("constant({a}, {b}, {cc}): moments equal the algebraic generating function"), || {
            let r = FamilySpec::constant(a.clone(), b.clone(), cc.clone())?.moment_series_check(10)?;
            Ok(expect(r.matched && r.closed.is_some(), || "series differ".into()))
        });
    }
    let a = q(2, 3);
    c.check("r1_hermite(2/3): theta moments equal path moments through 8", || {
        let cs = FamilySpec::r1_hermite(a.clone())?.build(10)?;
        let theta2 = Scalar::one() + Scalar::from_int(3) * &a * &a;
        if families::theta(2, &a) != theta2 {
            return Ok(Err(format!("theta_2 = {}", families::theta(2, &a))));
        }
        for m in 0..=8 {
            let paths = weight_sum(Point::new(0, 0), Point::new(m, 0), &NumericWeights(&cs), None)?;
            if paths != families::theta(m, &a) {
                return Ok(Err(format!("m = {m}")));
            }
        }
        Ok(Ok(()))
    });
    c.check("r1_hermite(2/3): generating function identity through order 8", || {
        Ok(expect(families::hermite_egf_check(&a, 8)?, || "series differ".into()))
    });
    c.check("r1_hermite(2/3): linearization of products for n, m <= 4", || {
        for n in 0..=4 {
            for m in 0..=4 {
                if !families::hermite_linearization_check(n, m, &a)? {
                    return Ok(Err(format!("n = {n}, m = {m}")));
                }
            }
        }
        Ok(Ok(()))
    });
}

/// Image of [`histories::sample_laguerre`].
pub const SAMPLE_LAGUERRE_IMAGE: &str = "(4,2,3)(8)(9,7,1)(10)(12)(13,5,11,6)";
/// Image of [`histories::sample_meixner`].
pub const SAMPLE_MEIXNER_IMAGE: &str = "({3,4},{1})({7})({8},{5,6})({12},{11},{9},{10})({13,14},{2})";

fn history_suite(c: &mut Collector) {
    c.check("sample Laguerre history maps to its permutation", || {
        let w = histories::phi(&histories::sample_laguerre());
        Ok(expect(w.to_string() == SAMPLE_LAGUERRE_IMAGE, || w.to_string()))
    });
    c.check("sample Meixner history maps to its partition with cycles", || {
        let pc = histories::psi(&histories::sample_meixner());
        Ok(expect(pc.to_string() == SAMPLE_MEIXNER_IMAGE, || pc.to_string()))
    });
    c.check("phi is a cycle-preserving bijection for n <= 7", || {
        for n in 0..=7 {
            if !histories::phi_bijection_check(n)? {
                return Ok(Err(format!("n = {n}")));
            }
        }
        Ok(Ok(()))
    });
    let (b, d) = (q(3, 5), q(-2, 7));
    c.check(format!("psi is a weight-preserving bijection for n <= 6 at (b, d) = ({b}, {d})"), || {
        for n in 0..=6 {
            if !histories::psi_bijection_check(n, &b, &d)? {
                return Ok(Err(format!("n = {n}")));
            }
        }
        Ok(Ok(()))
    });
    for a in [q(1, 3), q(-5, 2)] {
        c.check(format!("Laguerre history sums equal (a+1)_n for n <= 7 at a = {a}"), || {
            for n in 0..=7 {
                if !histories::lh_moment_check(n, &a)? {
                    return Ok(Err(format!("n = {n}")));
                }
            }
            Ok(Ok(()))
        });
    }
    for (b, d) in [(q(5, 2), q(1, 3)), (q(-1, 3), q(4, 1))] {
        c.check(format!("Meixner path, history and partition sums agree for n <= 6 at (b, d) = ({b}, {d})"), || {
            for n in 0..=6 {
                if !histories::mh_moment_check(n, &b, &d)? {
                    return Ok(Err(format!("n = {n}: {:?}", histories::mh_chain(n, &b, &d)?)));
                }
            }
            Ok(Ok(()))
        });
    }
    let (b, cc) = (q(2, 3), q(1, 4));
    c.check(format!("weak non-excedance sums for n <= 6 at (b, c) = ({b}, {cc})"), || {
        Ok(expect((0..=6).all(|n| histories::nonexcedance_check(n, &b, &cc)), || "mismatch".into()))
    });
}
