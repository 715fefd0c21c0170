//! Motzkin-Schroder lattice paths.
//!
//! Steps are `U = (1,1)`, `H = (1,0)`, `V = (0,-1)` and `D = (1,-1)`; a path
//! never goes below height 0. With coefficient weights, `U` has weight 1, an
//! `H` at height `k` has weight `b_k`, and a `V` or `D` starting at height `k`
//! has weight `a_k` or `lambda_k`.
//!
//! Weight sums are computed by a column dynamic program that processes the
//! horizontal coordinate in increasing order and, inside a column, applies
//! the vertical steps from the top height down.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Poly, Ring, Scalar, SymPoly, Symbol};
use crate::ortho::{p_star, CoeffSystem};

/// Default cap on the number of paths an enumeration may return.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// Step kinds; the derived order `U < H < V < D` is the enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Step {
    U,
    H,
    V,
    D,
}

impl Step {
    pub const ALL: [Step; 4] = [Step::U, Step::H, Step::V, Step::D];

    pub fn dx(self) -> usize {
        match self {
            Step::V => 0,
            _ => 1,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Step::U => 'U',
            Step::H => 'H',
            Step::V => 'V',
            Step::D => 'D',
        }
    }

    pub fn from_letter(c: char) -> Option<Step> {
        match c {
            'U' => Some(Step::U),
            'H' => Some(Step::H),
            'V' => Some(Step::V),
            'D' => Some(Step::D),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: usize,
    pub y: usize,
}

impl Point {
    pub fn new(x: usize, y: usize) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl FromStr for Point {
    type Err = Error;

    /// Accepts `"(x,y)"` or `"x,y"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let bad = || Error::InvalidInput(format!("bad point {s:?}"));
        let (x, y) = t.split_once(',').ok_or_else(bad)?;
        Ok(Point {
            x: x.trim().parse().map_err(|_| bad())?,
            y: y.trim().parse().map_err(|_| bad())?,
        })
    }
}

/// A lattice path: a start point and a step word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: Point,
    pub steps: Vec<Step>,
}

impl Path {
    /// Fails if the path would go below height 0.
    pub fn new(start: Point, steps: Vec<Step>) -> Result<Self> {
        let p = Path { start, steps };
        p.heights()?;
        Ok(p)
    }

    /// Starting height of every step.
    pub fn heights(&self) -> Result<Vec<usize>> {
        let mut y = self.start.y;
        let mut out = Vec::with_capacity(self.steps.len());
        for (i, s) in self.steps.iter().enumerate() {
            out.push(y);
            y = match s {
                Step::U => y + 1,
                Step::H => y,
                Step::V | Step::D => y.checked_sub(1).ok_or_else(|| {
                    Error::InvalidInput(format!("step {i} goes below height 0"))
                })?,
            };
        }
        Ok(out)
    }

    pub fn end(&self) -> Point {
        let mut p = self.start;
        for s in &self.steps {
            p.x += s.dx();
            match s {
                Step::U => p.y += 1,
                Step::V | Step::D => p.y -= 1,
                Step::H => {}
            }
        }
        p
    }

    /// True when some `U` is immediately followed by a `V`.
    pub fn has_uv_peak(&self) -> bool {
        self.steps.windows(2).any(|w| w == [Step::U, Step::V])
    }

    pub fn word(&self) -> String {
        self.steps.iter().map(|s| s.letter()).collect()
    }

    pub fn weight<W: Ring>(&self, ws: &impl WeightSystem<W>) -> W {
        let hs = self.heights().expect("validated path");
        let mut w = W::one();
        for (s, h) in self.steps.iter().zip(hs) {
            let sw = match s {
                Step::U => continue,
                Step::H => ws.h(h),
                Step::V => ws.v(h),
                Step::D => ws.d(h),
            };
            w = w.mul(&sw);
        }
        w
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "start={} {}", self.start, self.word())
    }
}

impl FromStr for Path {
    type Err = Error;

    /// Parses `"start=(0,3) UUDVH"`; a bare word starts at the origin.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (start, word) = match t.strip_prefix("start=") {
            Some(rest) => {
                let close = rest
                    .find(')')
                    .ok_or_else(|| Error::InvalidInput(format!("bad path {s:?}")))?;
                (rest[..=close].parse()?, rest[close + 1..].trim())
            }
            None => (Point::new(0, 0), t),
        };
        let steps = word
            .chars()
            .map(|c| Step::from_letter(c).ok_or_else(|| Error::InvalidInput(format!("bad step {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Path::new(start, steps)
    }
}

/// Weights of non-`U` steps as functions of the starting height.
pub trait WeightSystem<W: Ring> {
    fn h(&self, height: usize) -> W;
    fn v(&self, height: usize) -> W;
    fn d(&self, height: usize) -> W;
    /// Largest height at which weights are defined; `None` if unbounded.
    fn max_height(&self) -> Option<usize> {
        None
    }
}

/// Numeric weights read from a coefficient system.
#[derive(Clone, Copy, Debug)]
pub struct NumericWeights<'a>(pub &'a CoeffSystem);

impl WeightSystem<Scalar> for NumericWeights<'_> {
    fn h(&self, k: usize) -> Scalar {
        self.0.b(k).clone()
    }
    fn v(&self, k: usize) -> Scalar {
        self.0.a(k).clone()
    }
    fn d(&self, k: usize) -> Scalar {
        self.0.lambda(k).clone()
    }
    fn max_height(&self) -> Option<usize> {
        Some(self.0.valid_to())
    }
}

/// Symbolic weights `b_k`, `a_k`, `lambda_k`.
#[derive(Clone, Copy, Debug, Default)]
pub struct SymbolicWeights;

impl WeightSystem<SymPoly> for SymbolicWeights {
    fn h(&self, k: usize) -> SymPoly {
        SymPoly::var(Symbol::b(k))
    }
    fn v(&self, k: usize) -> SymPoly {
        SymPoly::var(Symbol::a(k))
    }
    fn d(&self, k: usize) -> SymPoly {
        SymPoly::var(Symbol::lambda(k))
    }
}

/// Weights given by closures.
pub struct FnWeights<W, F1, F2, F3>
where
    F1: Fn(usize) -> W,
    F2: Fn(usize) -> W,
    F3: Fn(usize) -> W,
{
    pub h: F1,
    pub v: F2,
    pub d: F3,
}

impl<W: Ring, F1, F2, F3> WeightSystem<W> for FnWeights<W, F1, F2, F3>
where
    F1: Fn(usize) -> W,
    F2: Fn(usize) -> W,
    F3: Fn(usize) -> W,
{
    fn h(&self, k: usize) -> W {
        (self.h)(k)
    }
    fn v(&self, k: usize) -> W {
        (self.v)(k)
    }
    fn d(&self, k: usize) -> W {
        (self.d)(k)
    }
}

/// Restrictions on enumerated paths.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PathFilter {
    /// Forbid `D` steps (Schroder paths).
    pub no_diagonal: bool,
    /// Forbid a `U` immediately followed by a `V`.
    pub no_uv_peak: bool,
    pub max_height: Option<usize>,
}

impl PathFilter {
    pub fn motzkin_schroder() -> Self {
        PathFilter::default()
    }

    pub fn schroder() -> Self {
        PathFilter {
            no_diagonal: true,
            ..PathFilter::default()
        }
    }
}

fn check_heights<W: Ring>(ws: &impl WeightSystem<W>, top: usize) -> Result<()> {
    if let Some(h) = ws.max_height() {
        if top > h {
            return Err(Error::CoefficientRange {
                needed: top,
                available: h,
            });
        }
    }
    Ok(())
}

/// All paths `from -> to` satisfying `filter`, in lexicographic order of
/// step words with `U < H < V < D`. Fails once more than `cap` are found.
pub fn enumerate_filtered(from: Point, to: Point, filter: &PathFilter, cap: usize) -> Result<Vec<Path>> {
    let mut out = Vec::new();
    if to.x < from.x || filter.max_height.is_some_and(|k| from.y > k) {
        return Ok(out);
    }
    let mut word = Vec::new();
    dfs(from, to, from.x, from.y, filter, cap, &mut word, &mut out)?;
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    from: Point,
    to: Point,
    x: usize,
    y: usize,
    filter: &PathFilter,
    cap: usize,
    word: &mut Vec<Step>,
    out: &mut Vec<Path>,
) -> Result<()> {
    let r = to.x - x;
    if r == 0 && y == to.y {
        if out.len() >= cap {
            return Err(Error::EnumerationOverflow { cap });
        }
        out.push(Path {
            start: from,
            steps: word.clone(),
        });
        return Ok(());
    }
    for s in Step::ALL {
        let (nx, ny) = match s {
            Step::U => (x + 1, y + 1),
            Step::H => (x + 1, y),
            Step::V | Step::D if y == 0 => continue,
            Step::V => (x, y - 1),
            Step::D => (x + 1, y - 1),
        };
        if nx > to.x {
            continue;
        }
        if s == Step::D && filter.no_diagonal {
            continue;
        }
        if s == Step::V && filter.no_uv_peak && word.last() == Some(&Step::U) {
            continue;
        }
        if filter.max_height.is_some_and(|k| ny > k) {
            continue;
        }
        // target must stay reachable: height can rise by at most one per column
        if to.y > ny + (to.x - nx) {
            continue;
        }
        word.push(s);
        dfs(from, to, nx, ny, filter, cap, word, out)?;
        word.pop();
    }
    Ok(())
}

/// All Motzkin-Schroder paths `from -> to`.
pub fn enumerate(from: Point, to: Point, cap: usize) -> Result<Vec<Path>> {
    enumerate_filtered(from, to, &PathFilter::motzkin_schroder(), cap)
}

/// Number of paths `from -> to` under `filter`, by dynamic programming.
pub fn count_filtered(from: Point, to: Point, filter: &PathFilter) -> Result<Scalar> {
    let one = |_k: usize| Scalar::one();
    let zero = |_k: usize| Scalar::zero();
    if filter.no_diagonal {
        weight_sum_filtered(from, to, &FnWeights { h: one, v: one, d: zero }, filter)
    } else {
        weight_sum_filtered(from, to, &FnWeights { h: one, v: one, d: one }, filter)
    }
}

/// Weighted sum over Motzkin-Schroder paths `from -> to`, optionally with a height cap.
pub fn weight_sum<W: Ring>(
    from: Point,
    to: Point,
    ws: &impl WeightSystem<W>,
    max_height: Option<usize>,
) -> Result<W> {
    let filter = PathFilter {
        max_height,
        ..PathFilter::default()
    };
    weight_sum_filtered(from, to, ws, &filter)
}

/// Weighted sum under `filter` (diagonal steps, `UV` peaks, height cap).
pub fn weight_sum_filtered<W: Ring>(
    from: Point,
    to: Point,
    ws: &impl WeightSystem<W>,
    filter: &PathFilter,
) -> Result<W> {
    let cols = column_sums(from, to.x, ws, filter)?;
    Ok(cols.and_then(|c| c.into_iter().nth(to.y)).unwrap_or_else(W::zero))
}

/// Weighted sums of all paths from `from` ending anywhere in column `x_end`,
/// indexed by final height. `None` when `x_end < from.x`.
fn column_sums<W: Ring>(
    from: Point,
    x_end: usize,
    ws: &impl WeightSystem<W>,
    filter: &PathFilter,
) -> Result<Option<Vec<W>>> {
    if x_end < from.x {
        return Ok(None);
    }
    let n = x_end - from.x;
    let mut top = from.y + n;
    if let Some(k) = filter.max_height {
        if from.y > k {
            return Ok(Some(Vec::new()));
        }
        top = top.min(k);
    }
    check_heights(ws, top)?;
    let hw: Vec<W> = (0..=top).map(|k| ws.h(k)).collect();
    let vw: Vec<W> = (0..=top).map(|k| if k == 0 { W::zero() } else { ws.v(k) }).collect();
    let dw: Vec<W> = if filter.no_diagonal {
        vec![W::zero(); top + 1]
    } else {
        (0..=top).map(|k| if k == 0 { W::zero() } else { ws.d(k) }).collect()
    };
    // ended_u[y]: paths whose last step is U; other[y]: every other ending.
    let mut ended_u = vec![W::zero(); top + 1];
    let mut other = vec![W::zero(); top + 1];
    other[from.y] = W::one();
    for col in 0..=n {
        // vertical closure, top height first
        let mut vert = vec![W::zero(); top + 1];
        for y in (0..top).rev() {
            let mut src = other[y + 1].add(&vert[y + 1]);
            if !filter.no_uv_peak {
                src = src.add(&ended_u[y + 1]);
            }
            vert[y] = vw[y + 1].mul(&src);
        }
        let total: Vec<W> = (0..=top)
            .map(|y| ended_u[y].add(&other[y]).add(&vert[y]))
            .collect();
        if col == n {
            return Ok(Some(total));
        }
        let mut next_u = vec![W::zero(); top + 1];
        let mut next_o = vec![W::zero(); top + 1];
        for y in 0..=top {
            if total[y].is_zero() {
                continue;
            }
            if y < top {
                next_u[y + 1] = next_u[y + 1].add(&total[y]);
            }
            next_o[y] = next_o[y].add(&hw[y].mul(&total[y]));
            if y > 0 {
                next_o[y - 1] = next_o[y - 1].add(&dw[y].mul(&total[y]));
            }
        }
        ended_u = next_u;
        other = next_o;
    }
    unreachable!("loop returns at the last column")
}

/// `rho_{n,m,l}`: paths `(0,m) -> (n+l, 0)` whose last `l` steps are all `V` or `D`.
pub fn rho_sum<W: Ring>(n: usize, m: usize, l: usize, ws: &impl WeightSystem<W>) -> Result<W> {
    // e[j]: weight of the final block of l down steps with j of them diagonal
    let mut e = vec![W::one()];
    for h in 1..=l {
        let mut next = vec![W::zero(); e.len() + 1];
        for (j, w) in e.iter().enumerate() {
            next[j] = next[j].add(&w.mul(&ws.v(h)));
            next[j + 1] = next[j + 1].add(&w.mul(&ws.d(h)));
        }
        e = next;
    }
    let from = Point::new(0, m);
    let filter = PathFilter::default();
    let cols = column_sums(from, n + l, ws, &filter)?;
    let mut acc = W::zero();
    // the prefix ends at (n + l - j, l)
    for (j, ej) in e.iter().enumerate() {
        if ej.is_zero() {
            continue;
        }
        let prefix = if j == 0 {
            cols.as_ref().and_then(|c| c.get(l).cloned())
        } else {
            column_sums(from, n + l - j, ws, &filter)?.and_then(|c| c.get(l).cloned())
        };
        if let Some(p) = prefix {
            acc = acc.add(&p.mul(ej));
        }
    }
    Ok(acc)
}

/// Generating function `sum_n mu^{<=k}_{n,r,s} x^n` of paths `(0,r) -> (n,s)`
/// of height at most `k`, as `numerator * prefactor / denominator`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedGf {
    pub numerator: Poly,
    pub prefactor: Poly,
    pub denominator: Poly,
}

impl BoundedGf {
    pub fn full_numerator(&self) -> Poly {
        &self.numerator * &self.prefactor
    }
}

/// Closed form in terms of reversed polynomials of shifted systems:
/// for `r <= s`, `P*_r * delta^{s+1} P*_{k-s} * x^{s-r} / P*_{k+1}`;
/// for `r > s`, `P*_s * delta^{r+1} P*_{k-r} * prod_{i=s+1}^{r} (a_i + lambda_i x) / P*_{k+1}`.
pub fn bounded_gf(r: usize, s: usize, k: usize, cs: &CoeffSystem) -> Result<BoundedGf> {
    if r > k || s > k {
        return Err(Error::InvalidParameter(format!(
            "start height {r} and end height {s} must not exceed the cap {k}"
        )));
    }
    cs.require(k)?;
    let denominator = p_star(cs, k + 1)?;
    let hi = r.max(s);
    let lo = r.min(s);
    let upper = if hi == k {
        Poly::one()
    } else {
        p_star(&cs.shift(hi + 1)?, k - hi)?
    };
    let numerator = &p_star(cs, lo)? * &upper;
    let prefactor = if r <= s {
        Poly::monomial(s - r, Scalar::one())
    } else {
        ((s + 1)..=r).fold(Poly::one(), |acc, i| {
            &acc * &Poly::linear(cs.lambda(i).clone(), cs.a(i).clone())
        })
    };
    Ok(BoundedGf {
        numerator,
        prefactor,
        denominator,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_text_round_trip() {
        let p: Path = "start=(0,3) UUDVH".parse().unwrap();
        assert_eq!(p.start, Point::new(0, 3));
        assert_eq!(p.end(), Point::new(4, 3));
        assert_eq!(p.to_string(), "start=(0,3) UUDVH");
        assert!("start=(0,0) V".parse::<Path>().is_err());
    }

    #[test]
    fn small_enumeration_order() {
        let words: Vec<String> = enumerate(Point::new(0, 0), Point::new(2, 0), 100)
            .unwrap()
            .iter()
            .map(Path::word)
            .collect();
        assert_eq!(words, vec!["UUVV", "UHV", "UVUV", "UVH", "UD", "HUV", "HH"]);
        assert!(matches!(
            enumerate(Point::new(0, 0), Point::new(2, 0), 3),
            Err(Error::EnumerationOverflow { cap: 3 })
        ));
    }
}
