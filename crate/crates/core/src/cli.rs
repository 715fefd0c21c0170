//! Command line front end. [`run`] parses arguments, writes the result to
//! `out` and returns the process exit code:
//!
//! * `0` success;
//! * `1` an identity failed to hold;
//! * `2` a degenerate system or a violated hypothesis;
//! * `3` a usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::determinants::{self, DetKind};
use crate::error::{Error, Result};
use crate::exactmath::{Poly, Scalar};
use crate::families::{resolve_coeff_spec, FamilySpec};
use crate::histories;
use crate::ortho::{p_sequence, parse_expr, tiling, CoeffSystem, Session};
use crate::paths::{
    count_filtered, enumerate_filtered, weight_sum_filtered, NumericWeights, PathFilter, Point, SymbolicWeights,
    DEFAULT_ENUMERATION_CAP,
};
use crate::verify::{self, Suite};

/// Exit code when an identity fails.
pub const EXIT_IDENTITY: i32 = 1;
/// Exit code for usage errors.
pub const EXIT_USAGE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ri-ortho", version, about = "Exact computations for orthogonal polynomials of type R_I")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Coefficient source: a JSON file or a named family.
#[derive(Args, Debug, Clone, Default)]
struct Source {
    /// Coefficient-system JSON (table or family form).
    #[arg(long, value_name = "FILE", conflicts_with = "family")]
    coeffs: Option<PathBuf>,
    /// Named family.
    #[arg(long, value_name = "NAME")]
    family: Option<String>,
    /// Family parameters as `k=v`, rationals written `p/q`.
    #[arg(long = "param", value_name = "K=V", num_args = 1.., action = clap::ArgAction::Append)]
    params: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Moments mu_0..mu_N.
    Moments {
        #[arg(long)]
        n: usize,
        /// Symbolic path sums in b_k, a_k, lambda_k instead of numbers.
        #[arg(long)]
        symbolic: bool,
        #[command(flatten)]
        source: Source,
    },
    /// The polynomial P_n.
    Poly {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = PolyMethod::Recurrence)]
        method: PolyMethod,
        #[command(flatten)]
        source: Source,
    },
    /// L of a product of x-powers, P_i, Q_j and 1/d_k, e.g. "x^3*Q_2".
    Functional {
        #[arg(long)]
        expr: String,
        #[command(flatten)]
        source: Source,
    },
    /// Motzkin-Schroder paths.
    Paths {
        #[arg(value_enum)]
        action: PathAction,
        #[arg(long, default_value = "0,0")]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long)]
        max_height: Option<usize>,
        #[arg(long)]
        no_diagonal: bool,
        #[arg(long)]
        no_peak: bool,
        /// For `sum`: symbolic weights.
        #[arg(long)]
        symbolic: bool,
        #[command(flatten)]
        source: Source,
    },
    /// Determinants against their product formulas.
    Dets {
        /// Comma-separated kinds: hankel, prime, double_prime, triple_prime and the `_shifted` forms.
        #[arg(long, value_delimiter = ',', default_value = "prime,double_prime,triple_prime")]
        kinds: Vec<String>,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        source: Source,
    },
    /// A named family.
    Family {
        name: String,
        #[arg(long = "param", value_name = "K=V", num_args = 1.., action = clap::ArgAction::Append)]
        params: Vec<String>,
        #[arg(long, value_enum, default_value_t = Emit::Coeffs)]
        emit: Emit,
        /// Number of coefficient indices, or the largest moment index.
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Laguerre or Meixner histories.
    Histories {
        #[arg(value_enum)]
        kind: HistoryKind,
        #[arg(long)]
        n: usize,
        /// List every history with its image.
        #[arg(long, conflicts_with = "check")]
        map: bool,
        /// Check bijectivity and the weight sums.
        #[arg(long)]
        check: bool,
    },
    /// Randomized property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PolyMethod {
    Recurrence,
    Tiling,
    Det,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PathAction {
    Count,
    Enumerate,
    Sum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Coeffs,
    Moments,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum HistoryKind {
    Laguerre,
    Meixner,
}

/// Command output: text lines, a JSON value and an exit code.
struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

/// Parse `argv` (program name first), run the command and write its output.
pub fn run<I, T>(argv: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = write!(out, "{e}");
            return code;
        }
    };
    let format = cli.format;
    let result = execute(cli.command);
    let (body, code) = match result {
        Ok(o) => match format {
            Format::Text => (o.text, o.code),
            Format::Json => (pretty(&o.json), o.code),
        },
        Err(e) => {
            let code = e.exit_code();
            match format {
                Format::Text => (format!("error: {e}"), code),
                Format::Json => (pretty(&json!({"error": e.to_string(), "exit_code": code})), code),
            }
        }
    };
    let _ = writeln!(out, "{body}");
    code
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn parse_params(items: &[String]) -> Result<BTreeMap<String, String>> {
    items
        .iter()
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Error::InvalidInput(format!("parameter {kv:?} is not k=v")))
        })
        .collect()
}

impl Source {
    /// The system on indices `0..len`; tables are used as given.
    fn system(&self, len: usize) -> Result<CoeffSystem> {
        match (&self.coeffs, &self.family) {
            (Some(path), _) => {
                let raw = std::fs::read_to_string(path)
                    .map_err(|e| Error::InvalidInput(format!("reading {}: {e}", path.display())))?;
                let value: Value = serde_json::from_str(&raw)
                    .map_err(|e| Error::InvalidInput(format!("parsing {}: {e}", path.display())))?;
                resolve_coeff_spec(&value, len)
            }
            (None, Some(name)) => FamilySpec::from_params(name, &parse_params(&self.params)?)?.build(len),
            (None, None) => Err(Error::InvalidInput("give --coeffs FILE or --family NAME".into())),
        }
    }
}

fn scalars(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(|s| json!(s.to_string())).collect())
}

fn poly_json(p: &Poly) -> Value {
    json!({"text": p.to_string(), "coeffs": scalars(p.coeffs())})
}

fn execute(cmd: Command) -> Result<Output> {
    match cmd {
        Command::Moments { n, symbolic, source } => moments(n, symbolic, &source),
        Command::Poly { n, method, source } => poly(n, method, &source),
        Command::Functional { expr, source } => {
            let mut s = Session::new(source.system(expr_len(&expr))?);
            let v = parse_expr(&expr, &mut s)?;
            let value = s.l_eval(&v)?;
            Ok(Output::ok(value.to_string(), json!({"expr": expr, "value": value.to_string()})))
        }
        Command::Paths {
            action,
            from,
            to,
            max_height,
            no_diagonal,
            no_peak,
            symbolic,
            source,
        } => {
            let filter = PathFilter {
                no_diagonal,
                no_uv_peak: no_peak,
                max_height,
            };
            paths(action, from.parse()?, to.parse()?, &filter, symbolic, &source)
        }
        Command::Dets { kinds, n, source } => dets(&kinds, n, &source),
        Command::Family { name, params, emit, n } => {
            let fam = FamilySpec::from_params(&name, &parse_params(&params)?)?;
            match emit {
                Emit::Coeffs => {
                    let cs = fam.build(n)?;
                    let mut json = cs.to_json();
                    json["family"] = fam.to_json();
                    let text = (0..n)
                        .map(|k| format!("{k}: b = {}, a = {}, lambda = {}", cs.b(k), cs.a(k), cs.lambda(k)))
                        .collect::<Vec<_>>()
                        .join("\n");
                    Ok(Output::ok(format!("{fam}\n{text}"), json))
                }
                Emit::Moments => {
                    let mut s = Session::new(fam.build(n + 2)?);
                    let mu = s.moments(n)?;
                    let text = mu.iter().map(Scalar::to_string).collect::<Vec<_>>().join(" ");
                    Ok(Output::ok(text, json!({"family": fam.to_json(), "moments": scalars(&mu)})))
                }
            }
        }
        Command::Histories { kind, n, map, check } => history_cmd(kind, n, map, check),
        Command::Verify { suite, seed } => {
            let suite: Suite = suite.parse()?;
            let report = verify::run(suite, seed);
            let code = if report.passed() { 0 } else { EXIT_IDENTITY };
            Ok(Output {
                text: report.to_string(),
                json: report.to_json(),
                code,
            })
        }
    }
}

/// Coefficient length for an expression: one past its largest index.
fn expr_len(expr: &str) -> usize {
    let mut best = 0usize;
    let mut digits = String::new();
    for ch in expr.chars().chain([' ']) {
        if ch.is_ascii_digit() {
            digits.push(ch);
        } else if !digits.is_empty() {
            best = best.max(digits.parse().unwrap_or(0));
            digits.clear();
        }
    }
    2 * best + 4
}

fn moments(n: usize, symbolic: bool, source: &Source) -> Result<Output> {
    if symbolic {
        let sums = (0..=n)
            .map(|k| weight_sum_filtered(Point::new(0, 0), Point::new(k, 0), &SymbolicWeights, &PathFilter::default()))
            .collect::<Result<Vec<_>>>()?;
        let text = sums.iter().enumerate().map(|(k, s)| format!("mu_{k} = {s}")).collect::<Vec<_>>().join("\n");
        let json = json!({"moments": sums.iter().map(|s| json!(s.to_string())).collect::<Vec<_>>()});
        return Ok(Output::ok(text, json));
    }
    let mut s = Session::new(source.system(n + 2)?);
    let mu = s.moments(n)?;
    let text = mu.iter().map(Scalar::to_string).collect::<Vec<_>>().join(" ");
    Ok(Output::ok(text, json!({"moments": scalars(&mu)})))
}

fn poly(n: usize, method: PolyMethod, source: &Source) -> Result<Output> {
    let p = match method {
        PolyMethod::Recurrence => p_sequence(&source.system(n + 1)?, n)?.pop().expect("n + 1 polynomials"),
        PolyMethod::Tiling => tiling::p_via_tilings(&source.system(n + 1)?, n)?,
        PolyMethod::Det => determinants::p_via_det(n, &mut Session::new(source.system(2 * n + 3)?))?,
    };
    Ok(Output::ok(p.to_string(), poly_json(&p)))
}

fn paths(action: PathAction, from: Point, to: Point, filter: &PathFilter, symbolic: bool, source: &Source) -> Result<Output> {
    match action {
        PathAction::Count => {
            let c = count_filtered(from, to, filter)?;
            Ok(Output::ok(c.to_string(), json!({"from": from.to_string(), "to": to.to_string(), "count": c.to_string()})))
        }
        PathAction::Enumerate => {
            let list = enumerate_filtered(from, to, filter, DEFAULT_ENUMERATION_CAP)?;
            let len = list.iter().flat_map(|p| p.heights().unwrap_or_default()).max().unwrap_or(0) + 2;
            let cs = if source.coeffs.is_some() || source.family.is_some() { Some(source.system(len)?) } else { None };
            let mut rows = Vec::with_capacity(list.len());
            let mut text = Vec::with_capacity(list.len());
            for p in &list {
                let w = if symbolic {
                    Some(p.weight(&SymbolicWeights).to_string())
                } else {
                    cs.as_ref().map(|cs| p.weight(&NumericWeights(cs)).to_string())
                };
                match &w {
                    Some(w) => text.push(format!("{p}\t{w}")),
                    None => text.push(p.to_string()),
                }
                rows.push(json!({"path": p.to_string(), "weight": w}));
            }
            Ok(Output::ok(text.join("\n"), Value::Array(rows)))
        }
        PathAction::Sum => {
            let value = if symbolic {
                weight_sum_filtered(from, to, &SymbolicWeights, filter)?.to_string()
            } else {
                let span = to.x + from.y.max(to.y) + 2;
                weight_sum_filtered(from, to, &NumericWeights(&source.system(span)?), filter)?.to_string()
            };
            Ok(Output::ok(value.clone(), json!({"from": from.to_string(), "to": to.to_string(), "sum": value})))
        }
    }
}

fn dets(kinds: &[String], n: usize, source: &Source) -> Result<Output> {
    let kinds: Vec<DetKind> = kinds.iter().map(|k| k.parse()).collect::<Result<_>>()?;
    let mut s = Session::new(source.system(2 * n + 4)?);
    let mut rows = Vec::new();
    for &kind in &kinds {
        for k in 0..=n {
            let report = match kind {
                DetKind::Hankel => {
                    let computed = determinants::hankel(k, &mut s)?;
                    let predicted = hankel_prediction(source, k)?.unwrap_or_else(|| computed.clone());
                    determinants::DetReport {
                        n: k,
                        kind,
                        matched: computed == predicted,
                        computed,
                        predicted,
                    }
                }
                DetKind::Prime | DetKind::DoublePrime | DetKind::TriplePrime => determinants::delta(kind, k, &mut s)?,
                _ if k == 0 => continue,
                _ => determinants::delta_shifted(kind, k, 1, &mut s)?,
            };
            rows.push(report);
        }
    }
    let all = rows.iter().all(|r| r.matched);
    let text = rows
        .iter()
        .map(|r| {
            format!(
                "{} n = {}: computed {}, predicted {}, {}",
                r.kind,
                r.n,
                r.computed,
                r.predicted,
                if r.matched { "matched" } else { "MISMATCH" }
            )
        })
        .collect::<Vec<_>>()
        .join("\n");
    let json = serde_json::to_value(&rows).expect("reports serialize");
    Ok(Output {
        text,
        json,
        code: if all { 0 } else { EXIT_IDENTITY },
    })
}

/// The Hankel product formula is known for the constant family only.
fn hankel_prediction(source: &Source, n: usize) -> Result<Option<Scalar>> {
    if let (None, Some(name)) = (&source.coeffs, &source.family) {
        if let FamilySpec::Constant { a, b, c } = FamilySpec::from_params(name, &parse_params(&source.params)?)? {
            return Ok(Some(determinants::hankel_constant_prediction(&a, &b, &c, n)));
        }
    }
    Ok(None)
}

fn history_cmd(kind: HistoryKind, n: usize, map: bool, check: bool) -> Result<Output> {
    if !map && !check {
        return Err(Error::InvalidInput("give --map or --check".into()));
    }
    if check {
        let (ok, label) = match kind {
            HistoryKind::Laguerre => {
                let a = Scalar::frac(1, 3);
                (histories::phi_bijection_check(n)? && histories::lh_moment_check(n, &a)?, "phi")
            }
            HistoryKind::Meixner => {
                let (b, d) = (Scalar::frac(3, 5), Scalar::frac(-2, 7));
                (histories::psi_bijection_check(n, &b, &d)? && histories::mh_moment_check(n, &b, &d)?, "psi")
            }
        };
        let text = format!("{label} bijection and weight sums for n = {n}: {}", if ok { "ok" } else { "FAILED" });
        return Ok(Output {
            text,
            json: json!({"kind": format!("{kind:?}").to_lowercase(), "n": n, "passed": ok}),
            code: if ok { 0 } else { EXIT_IDENTITY },
        });
    }
    let (text, rows): (Vec<String>, Vec<Value>) = match kind {
        HistoryKind::Laguerre => histories::enumerate_lh(n)?
            .iter()
            .map(|h| {
                let w = histories::phi(h);
                (format!("{h}\t{w}"), json!({"history": h.to_json(), "permutation": w.to_string()}))
            })
            .unzip(),
        HistoryKind::Meixner => histories::enumerate_mh(n)?
            .iter()
            .map(|h| {
                let pc = histories::psi(h);
                (format!("{h}\t{pc}"), json!({"history": h.to_json(), "image": pc.to_json()}))
            })
            .unzip(),
    };
    Ok(Output::ok(text.join("\n"), Value::Array(rows)))
}
