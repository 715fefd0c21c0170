//! Laguerre and Meixner histories and their bijections.
//!
//! * A Laguerre history is a Schroder path from `(0,0)` to `(n,0)` with no
//!   `UV` peak, each `V` from height `h` labeled in `1..=h`. The map
//!   [`phi`] sends it to a permutation of `[n]` with one cycle per `H`.
//! * A Meixner history uses the same shapes. A `V` from height `h` is labeled
//!   in `1..=h`; an `H` followed by a `V` is unlabeled or labeled `0`; any
//!   other `H` from height `h` is unlabeled or labeled in `1..=h`. The map
//!   [`psi`] sends it to a set partition of `[n]` with a permutation of its
//!   blocks, written as cycles of blocks.
//!
//! Weights: a Laguerre history weighs `(a+1)^{#H}`. A Meixner history weighs
//! `d` per `V`, `b d` per unlabeled `H`, `b` per `H` labeled `0`, and `1`
//! otherwise; its image weighs `b^{#cycles} d^{#blocks}`.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactmath::special::{factorial, pochhammer, stirling2_row};
use crate::exactmath::Scalar;
use crate::paths::{enumerate_filtered, weight_sum_filtered, FnWeights, PathFilter, Point, Step, DEFAULT_ENUMERATION_CAP};

/// Largest `n` for which Laguerre histories are enumerated.
pub const MAX_LH_N: usize = 9;
/// Largest `n` for which Meixner histories are enumerated.
pub const MAX_MH_N: usize = 8;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

/// Parse a step word over `U`, `H`, `V`.
fn parse_word(word: &str) -> Result<Vec<Step>> {
    word.chars()
        .map(|c| match Step::from_letter(c) {
            Some(Step::D) | None => Err(invalid(format!("history paths use only U, H, V (found {c:?})"))),
            Some(s) => Ok(s),
        })
        .collect()
}

fn word(steps: &[Step]) -> String {
    steps.iter().map(|s| s.letter()).collect()
}

/// Starting heights of a `U/H/V` word from `(0,0)` that must return to height 0 with no `UV` peak.
fn shape_heights(steps: &[Step]) -> Result<Vec<usize>> {
    let mut y = 0usize;
    let mut out = Vec::with_capacity(steps.len());
    for (i, s) in steps.iter().enumerate() {
        out.push(y);
        match s {
            Step::U => y += 1,
            Step::H => {}
            Step::V => {
                if i > 0 && steps[i - 1] == Step::U {
                    return Err(invalid(format!("UV peak at step {}", i - 1)));
                }
                y = y.checked_sub(1).ok_or_else(|| invalid(format!("step {i} goes below height 0")))?;
            }
            Step::D => return Err(invalid("history paths have no D steps")),
        }
    }
    if y != 0 {
        return Err(invalid("history path must end at height 0"));
    }
    Ok(out)
}

/// Number of `V` steps immediately after position `i`.
fn v_run(steps: &[Step], i: usize) -> usize {
    steps[i + 1..].iter().take_while(|s| **s == Step::V).count()
}

/// All Schroder shapes of length `n` without `UV` peaks, in word order.
pub fn history_shapes(n: usize) -> Result<Vec<Vec<Step>>> {
    let filter = PathFilter {
        no_diagonal: true,
        no_uv_peak: true,
        max_height: None,
    };
    Ok(enumerate_filtered(Point::new(0, 0), Point::new(n, 0), &filter, DEFAULT_ENUMERATION_CAP)?
        .into_iter()
        .map(|p| p.steps)
        .collect())
}

/// Cartesian product in lexicographic order, the last position varying fastest.
fn product<T: Clone>(options: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::with_capacity(options.len())];
    for opts in options {
        let mut next = Vec::with_capacity(out.len() * opts.len());
        for prefix in &out {
            for o in opts {
                let mut v = prefix.clone();
                v.push(o.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// A permutation of `[n]` stored by images: `images[i - 1] = sigma(i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let seen: BTreeSet<usize> = images.iter().copied().collect();
        if seen.len() != n || seen.iter().any(|&v| v == 0 || v > n) {
            return Err(invalid(format!("{images:?} is not a permutation of 1..={n}")));
        }
        Ok(Permutation(images))
    }

    /// From cycles `(c_0, c_1, ...)` meaning `c_0 -> c_1 -> ... -> c_0`.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images = vec![0usize; n];
        for c in cycles {
            for (j, &v) in c.iter().enumerate() {
                let next = c[(j + 1) % c.len()];
                if v == 0 || v > n || images[v - 1] != 0 {
                    return Err(invalid(format!("cycles {cycles:?} do not form a permutation of 1..={n}")));
                }
                images[v - 1] = next;
            }
        }
        Permutation::from_images(images)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    /// Cycles written from their largest element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in (1..=n).rev() {
            if seen[start] {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut v = self.apply(start);
            while v != start {
                seen[v] = true;
                c.push(v);
                v = self.apply(v);
            }
            out.push(c);
        }
        out.reverse();
        out
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    /// Positions with `sigma(i) <= i`.
    pub fn weak_nonexcedances(&self) -> usize {
        (1..=self.len()).filter(|&i| self.apply(i) <= i).count()
    }

    /// All permutations of `[n]` in lexicographic order of images.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n + 1];
        fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if cur.len() == n {
                out.push(Permutation(cur.clone()));
                return;
            }
            for v in 1..=n {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        rec(n, &mut cur, &mut used, &mut out);
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("()");
        }
        for c in self.cycles() {
            let body: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

/// A Laguerre history; `labels[k]` is `Some(label)` exactly at the `V` steps.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaguerreHistory {
    steps: Vec<Step>,
    labels: Vec<Option<usize>>,
}

impl LaguerreHistory {
    pub fn new(steps: Vec<Step>, labels: Vec<Option<usize>>) -> Result<Self> {
        if labels.len() != steps.len() {
            return Err(invalid("one label slot per step is required"));
        }
        let heights = shape_heights(&steps)?;
        for (k, (s, l)) in steps.iter().zip(&labels).enumerate() {
            match (s, l) {
                (Step::V, Some(v)) if (1..=heights[k]).contains(v) => {}
                (Step::V, _) => return Err(invalid(format!("V at step {k} needs a label in 1..={}", heights[k]))),
                (_, None) => {}
                (_, Some(_)) => return Err(invalid(format!("only V steps carry labels (step {k})"))),
            }
        }
        Ok(LaguerreHistory { steps, labels })
    }

    /// From a word and the `V` labels in order.
    pub fn from_word(word: &str, v_labels: &[usize]) -> Result<Self> {
        let steps = parse_word(word)?;
        let mut it = v_labels.iter();
        let labels = steps
            .iter()
            .map(|s| if *s == Step::V { it.next().copied().or(Some(0)) } else { None })
            .collect();
        if it.next().is_some() {
            return Err(invalid("more labels than V steps"));
        }
        LaguerreHistory::new(steps, labels)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn labels(&self) -> &[Option<usize>] {
        &self.labels
    }

    /// Length `n`: the number of `U` and `H` steps.
    pub fn len(&self) -> usize {
        self.steps.iter().filter(|s| **s != Step::V).count()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn horizontal_steps(&self) -> usize {
        self.steps.iter().filter(|s| **s == Step::H).count()
    }

    pub fn weight(&self, a: &Scalar) -> Scalar {
        (a + Scalar::one()).powu(self.horizontal_steps() as u32)
    }

    pub fn word(&self) -> String {
        word(&self.steps)
    }

    /// `{"path": "UHV...", "labels": [[stepIndex, label], ...]}`.
    pub fn to_json(&self) -> Value {
        let labels: Vec<Value> = self
            .labels
            .iter()
            .enumerate()
            .filter_map(|(k, l)| l.map(|v| json!([k, v])))
            .collect();
        json!({"path": self.word(), "labels": labels})
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let (steps, pairs) = history_json(value)?;
        let mut labels = vec![None; steps.len()];
        for (k, v) in pairs {
            labels[k] = Some(v);
        }
        LaguerreHistory::new(steps, labels)
    }
}

fn history_json(value: &Value) -> Result<(Vec<Step>, Vec<(usize, usize)>)> {
    let path = value
        .get("path")
        .and_then(Value::as_str)
        .ok_or_else(|| invalid("history needs a string \"path\""))?;
    let steps = parse_word(path)?;
    let mut pairs = Vec::new();
    for entry in value.get("labels").and_then(Value::as_array).into_iter().flatten() {
        let pair = entry
            .as_array()
            .filter(|p| p.len() == 2)
            .and_then(|p| Some((p[0].as_u64()? as usize, p[1].as_u64()? as usize)))
            .ok_or_else(|| invalid("labels are [stepIndex, label] pairs of integers"))?;
        if pair.0 >= steps.len() {
            return Err(invalid(format!("label index {} out of range", pair.0)));
        }
        pairs.push(pair);
    }
    Ok((steps, pairs))
}

impl fmt::Display for LaguerreHistory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, l) in self.steps.iter().zip(&self.labels) {
            match l {
                Some(v) => write!(f, "{}{v}", s.letter())?,
                None => write!(f, "{}", s.letter())?,
            }
        }
        Ok(())
    }
}

/// Every Laguerre history of length `n`, ordered by shape word then labels.
pub fn enumerate_lh(n: usize) -> Result<Vec<LaguerreHistory>> {
    if n > MAX_LH_N {
        return Err(invalid(format!("laguerre histories are enumerated for n <= {MAX_LH_N}")));
    }
    let mut out = Vec::new();
    for steps in history_shapes(n)? {
        let heights = shape_heights(&steps)?;
        let options: Vec<Vec<Option<usize>>> = steps
            .iter()
            .zip(&heights)
            .map(|(s, &h)| if *s == Step::V { (1..=h).map(Some).collect() } else { vec![None] })
            .collect();
        for labels in product(&options) {
            out.push(LaguerreHistory {
                steps: steps.clone(),
                labels,
            });
        }
    }
    Ok(out)
}

/// One cycle per `H`: the `H` ending at `x = i` opens a cycle at `i`; each
/// following `V` labeled `v` appends the `v`-th smallest unused integer of `[i]`.
pub fn phi(h: &LaguerreHistory) -> Permutation {
    let n = h.len();
    let mut used = vec![false; n + 1];
    let mut cycles = Vec::new();
    let mut i = 0;
    for (k, s) in h.steps.iter().enumerate() {
        match s {
            Step::U => i += 1,
            Step::H => {
                i += 1;
                used[i] = true;
                let mut cycle = vec![i];
                for lab in h.labels[k + 1..k + 1 + v_run(&h.steps, k)].iter() {
                    let v = lab.expect("V steps are labeled");
                    let pick = (1..=i).filter(|&j| !used[j]).nth(v - 1).expect("label within height");
                    used[pick] = true;
                    cycle.push(pick);
                }
                cycles.push(cycle);
            }
            _ => {}
        }
    }
    Permutation::from_cycles(n, &cycles).expect("phi builds a permutation")
}

/// Inverse of [`phi`]: step `i` is `H` when `i` is the largest element of its
/// cycle, else `U`; the rest of that cycle becomes `V` steps labeled by rank
/// among the unused integers of `[i]`.
pub fn phi_inv(w: &Permutation) -> LaguerreHistory {
    let n = w.len();
    let mut by_max = vec![None; n + 1];
    for c in w.cycles() {
        let top = c[0];
        by_max[top] = Some(c);
    }
    let mut used = vec![false; n + 1];
    let mut steps = Vec::new();
    let mut labels = Vec::new();
    for i in 1..=n {
        match &by_max[i] {
            None => {
                steps.push(Step::U);
                labels.push(None);
            }
            Some(c) => {
                used[i] = true;
                steps.push(Step::H);
                labels.push(None);
                for &e in &c[1..] {
                    let rank = (1..e).filter(|&j| !used[j]).count() + 1;
                    used[e] = true;
                    steps.push(Step::V);
                    labels.push(Some(rank));
                }
            }
        }
    }
    LaguerreHistory { steps, labels }
}

/// Label of a Meixner history step. The derived order is the enumeration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MhLabel {
    Unlabeled,
    Zero,
    Index(usize),
}

/// A Meixner history: a shape and one label per step (`U` steps are `Unlabeled`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeixnerHistory {
    steps: Vec<Step>,
    labels: Vec<MhLabel>,
}

impl MeixnerHistory {
    pub fn new(steps: Vec<Step>, labels: Vec<MhLabel>) -> Result<Self> {
        if labels.len() != steps.len() {
            return Err(invalid("one label slot per step is required"));
        }
        let heights = shape_heights(&steps)?;
        for (k, (s, l)) in steps.iter().zip(&labels).enumerate() {
            let h = heights[k];
            let before_v = steps.get(k + 1) == Some(&Step::V);
            let ok = match (s, l) {
                (Step::U, MhLabel::Unlabeled) => true,
                (Step::V, MhLabel::Index(v)) => (1..=h).contains(v),
                (Step::H, MhLabel::Unlabeled) => true,
                (Step::H, MhLabel::Zero) => before_v,
                (Step::H, MhLabel::Index(v)) => !before_v && (1..=h).contains(v),
                _ => false,
            };
            if !ok {
                return Err(invalid(format!("label {l:?} not allowed on {} at step {k} (height {h})", s.letter())));
            }
        }
        Ok(MeixnerHistory { steps, labels })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn labels(&self) -> &[MhLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.steps.iter().filter(|s| **s != Step::V).count()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn word(&self) -> String {
        word(&self.steps)
    }

    pub fn weight(&self, b: &Scalar, d: &Scalar) -> Scalar {
        self.steps
            .iter()
            .zip(&self.labels)
            .map(|(s, l)| match (s, l) {
                (Step::V, _) => d.clone(),
                (Step::H, MhLabel::Unlabeled) => b * d,
                (Step::H, MhLabel::Zero) => b.clone(),
                _ => Scalar::one(),
            })
            .product()
    }

    /// `{"path": ..., "labels": [[stepIndex, label], ...]}`; `0` is the zero
    /// label and unlabeled steps are omitted.
    pub fn to_json(&self) -> Value {
        let labels: Vec<Value> = self
            .labels
            .iter()
            .enumerate()
            .filter_map(|(k, l)| match l {
                MhLabel::Unlabeled => None,
                MhLabel::Zero => Some(json!([k, 0])),
                MhLabel::Index(v) => Some(json!([k, v])),
            })
            .collect();
        json!({"path": self.word(), "labels": labels})
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let (steps, pairs) = history_json(value)?;
        let mut labels = vec![MhLabel::Unlabeled; steps.len()];
        for (k, v) in pairs {
            labels[k] = if v == 0 { MhLabel::Zero } else { MhLabel::Index(v) };
        }
        MeixnerHistory::new(steps, labels)
    }
}

impl fmt::Display for MeixnerHistory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (s, l) in self.steps.iter().zip(&self.labels) {
            match l {
                MhLabel::Unlabeled => write!(f, "{}", s.letter())?,
                MhLabel::Zero => write!(f, "{}0", s.letter())?,
                MhLabel::Index(v) => write!(f, "{}{v}", s.letter())?,
            }
        }
        Ok(())
    }
}

/// Every Meixner history of length `n`, ordered by shape word then labels.
pub fn enumerate_mh(n: usize) -> Result<Vec<MeixnerHistory>> {
    if n > MAX_MH_N {
        return Err(invalid(format!("meixner histories are enumerated for n <= {MAX_MH_N}")));
    }
    let mut out = Vec::new();
    for steps in history_shapes(n)? {
        let heights = shape_heights(&steps)?;
        let options: Vec<Vec<MhLabel>> = (0..steps.len())
            .map(|k| {
                let h = heights[k];
                match steps[k] {
                    Step::V => (1..=h).map(MhLabel::Index).collect(),
                    Step::H if steps.get(k + 1) == Some(&Step::V) => vec![MhLabel::Unlabeled, MhLabel::Zero],
                    Step::H => std::iter::once(MhLabel::Unlabeled).chain((1..=h).map(MhLabel::Index)).collect(),
                    _ => vec![MhLabel::Unlabeled],
                }
            })
            .collect();
        for labels in product(&options) {
            out.push(MeixnerHistory {
                steps: steps.clone(),
                labels,
            });
        }
    }
    Ok(out)
}

/// A set partition of `[n]` with a permutation of its blocks, as cycles of blocks.
///
/// Canonical form: blocks sorted; each cycle starts with the block holding its
/// largest element; cycles ordered by that element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartitionCycles {
    n: usize,
    cycles: Vec<Vec<Vec<usize>>>,
}

impl PartitionCycles {
    pub fn new(n: usize, cycles: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut count = 0;
        for block in cycles.iter().flatten() {
            if block.is_empty() {
                return Err(invalid("blocks are nonempty"));
            }
            for &e in block {
                if e == 0 || e > n || seen[e] {
                    return Err(invalid(format!("blocks must partition 1..={n}")));
                }
                seen[e] = true;
                count += 1;
            }
        }
        if count != n || cycles.iter().any(Vec::is_empty) {
            return Err(invalid(format!("blocks must partition 1..={n} into nonempty cycles")));
        }
        let mut cycles: Vec<Vec<Vec<usize>>> = cycles
            .into_iter()
            .map(|c| {
                let mut c: Vec<Vec<usize>> = c
                    .into_iter()
                    .map(|mut b| {
                        b.sort_unstable();
                        b
                    })
                    .collect();
                let top = (0..c.len()).max_by_key(|&j| c[j][c[j].len() - 1]).expect("nonempty cycle");
                c.rotate_left(top);
                c
            })
            .collect();
        cycles.sort_by_key(|c| c[0][c[0].len() - 1]);
        Ok(PartitionCycles { n, cycles })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cycles(&self) -> &[Vec<Vec<usize>>] {
        &self.cycles
    }

    /// Blocks sorted by their smallest element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut b: Vec<Vec<usize>> = self.cycles.iter().flatten().cloned().collect();
        b.sort();
        b
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    pub fn weight(&self, b: &Scalar, d: &Scalar) -> Scalar {
        b.powu(self.num_cycles() as u32) * d.powu(self.num_blocks() as u32)
    }

    pub fn to_json(&self) -> Value {
        json!({"n": self.n, "cycles": self.cycles, "blocks": self.blocks()})
    }

    /// Every pair for `[n]`, ordered canonically.
    pub fn all(n: usize) -> Vec<PartitionCycles> {
        let mut out = Vec::new();
        for blocks in set_partitions(n) {
            for sigma in Permutation::all(blocks.len()) {
                let cycles = sigma
                    .cycles()
                    .into_iter()
                    .map(|c| c.into_iter().map(|j| blocks[j - 1].clone()).collect())
                    .collect();
                out.push(PartitionCycles::new(n, cycles).expect("valid by construction"));
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for PartitionCycles {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cycles {
            let body: Vec<String> = c
                .iter()
                .map(|b| format!("{{{}}}", b.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            write!(f, "({})", body.join(","))?;
        }
        Ok(())
    }
}

/// Set partitions of `[n]` from restricted growth strings; blocks ordered by minimum.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, n: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i > n {
            out.push(blocks.clone());
            return;
        }
        for j in 0..blocks.len() {
            blocks[j].push(i);
            rec(i + 1, n, blocks, out);
            blocks[j].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, n, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(1, n, &mut Vec::new(), &mut out);
    out
}

/// State after a non-`V` step of [`psi`]: the available blocks once the step
/// itself is processed and before its trailing `V` steps consume blocks, and
/// the cycle the step closes, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiTraceRow {
    pub step: usize,
    pub available: Vec<Vec<usize>>,
    pub new_cycle: Option<Vec<Vec<usize>>>,
}

/// [`psi`] with its step-by-step trace.
pub fn psi_trace(h: &MeixnerHistory) -> (PartitionCycles, Vec<PsiTraceRow>) {
    let n = h.len();
    let mut available: Vec<Vec<usize>> = Vec::new();
    let mut cycles = Vec::new();
    let mut rows = Vec::new();
    let mut i = 0;
    for (k, s) in h.steps.iter().enumerate() {
        if *s == Step::V {
            continue;
        }
        i += 1;
        let run: Vec<usize> = h.labels[k + 1..k + 1 + v_run(&h.steps, k)]
            .iter()
            .map(|l| match l {
                MhLabel::Index(r) => *r,
                _ => unreachable!("V steps carry index labels"),
            })
            .collect();
        let mut new_cycle = None;
        match (s, h.labels[k]) {
            (Step::U, _) => available.push(vec![i]),
            (Step::H, MhLabel::Unlabeled) if run.is_empty() => new_cycle = Some(vec![vec![i]]),
            (Step::H, MhLabel::Index(j)) => available[j - 1].push(i),
            (Step::H, MhLabel::Unlabeled) => {
                let snapshot = available.clone();
                let mut cycle = vec![vec![i]];
                for r in &run {
                    cycle.push(available.remove(r - 1));
                }
                rows.push(PsiTraceRow {
                    step: i,
                    available: snapshot,
                    new_cycle: Some(cycle.clone()),
                });
                cycles.push(cycle);
                continue;
            }
            (Step::H, MhLabel::Zero) => {
                let snapshot = available.clone();
                let mut head = available.remove(run[0] - 1);
                head.push(i);
                let mut cycle = vec![head];
                for r in &run[1..] {
                    cycle.push(available.remove(r - 1));
                }
                rows.push(PsiTraceRow {
                    step: i,
                    available: snapshot,
                    new_cycle: Some(cycle.clone()),
                });
                cycles.push(cycle);
                continue;
            }
            _ => unreachable!("validated history"),
        }
        if let Some(c) = &new_cycle {
            cycles.push(c.clone());
        }
        rows.push(PsiTraceRow {
            step: i,
            available: available.clone(),
            new_cycle,
        });
    }
    let pc = PartitionCycles::new(n, cycles).expect("psi builds a partition with cycles");
    (pc, rows)
}

/// The weight-preserving map from Meixner histories to partitions with cycles of blocks.
pub fn psi(h: &MeixnerHistory) -> PartitionCycles {
    psi_trace(h).0
}

/// Inverse of [`psi`], by the four cases on the position of `i`.
pub fn psi_inv(pc: &PartitionCycles) -> MeixnerHistory {
    let n = pc.n();
    // cycle index and block of every element
    let mut where_ = vec![(0usize, 0usize); n + 1];
    for (ci, c) in pc.cycles().iter().enumerate() {
        for (bi, b) in c.iter().enumerate() {
            for &e in b {
                where_[e] = (ci, bi);
            }
        }
    }
    let cycle_max: Vec<usize> = pc.cycles().iter().map(|c| *c.iter().flatten().max().expect("nonempty")).collect();
    // i-available blocks as (cycle, block), ordered by minimum
    let available = |i: usize| -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize, usize)> = Vec::new();
        for (ci, c) in pc.cycles().iter().enumerate() {
            for (bi, b) in c.iter().enumerate() {
                if b[0] < i && cycle_max[ci] >= i {
                    v.push((b[0], ci, bi));
                }
            }
        }
        v.sort_unstable();
        v.into_iter().map(|(_, c, b)| (c, b)).collect()
    };
    let mut steps = Vec::new();
    let mut labels = Vec::new();
    for i in 1..=n {
        let (ci, bi) = where_[i];
        let cycle = &pc.cycles()[ci];
        let block = &cycle[bi];
        if cycle_max[ci] > i {
            if block[0] == i {
                // Case 1
                steps.push(Step::U);
                labels.push(MhLabel::Unlabeled);
            } else {
                // Case 3
                let j = available(i).iter().position(|&p| p == (ci, bi)).expect("block is i-available") + 1;
                steps.push(Step::H);
                labels.push(MhLabel::Index(j));
            }
            continue;
        }
        if cycle.len() == 1 && block.len() == 1 {
            // Case 2
            steps.push(Step::H);
            labels.push(MhLabel::Unlabeled);
            continue;
        }
        // Case 4: i closes its cycle; the cycle starts at the block holding i
        let mut avail = available(i);
        let singleton = block.len() == 1;
        steps.push(Step::H);
        labels.push(if singleton { MhLabel::Unlabeled } else { MhLabel::Zero });
        let order: Vec<usize> = if singleton { (1..cycle.len()).collect() } else { (0..cycle.len()).collect() };
        for b in order {
            let r = avail.iter().position(|&p| p == (ci, b)).expect("cycle block is i-available");
            avail.remove(r);
            steps.push(Step::V);
            labels.push(MhLabel::Index(r + 1));
        }
    }
    MeixnerHistory { steps, labels }
}

/// A Laguerre history of length 13 with seven labeled `V` steps.
pub fn sample_laguerre() -> LaguerreHistory {
    LaguerreHistory::from_word("UUUHVVUUUHHVVHUHHVVV", &[2, 2, 4, 1, 1, 2, 1]).expect("valid sample")
}

/// A Meixner history of length 14 exercising every case of [`psi`].
pub fn sample_meixner() -> MeixnerHistory {
    use MhLabel::{Index as I, Unlabeled as N, Zero as Z};
    let steps = parse_word("UUUHVVUHHHVUUUHVVVUHVV").expect("valid word");
    let labels = vec![
        N, N, N, Z, I(3), I(1), N, I(2), N, N, I(2), N, N, N, N, I(4), I(2), I(2), N, Z, I(2), I(1),
    ];
    MeixnerHistory::new(steps, labels).expect("valid sample")
}

/// `phi` is a bijection onto `S_n` carrying `#H` to `#cycles`, with `phi_inv` its inverse.
pub fn phi_bijection_check(n: usize) -> Result<bool> {
    let all = enumerate_lh(n)?;
    let mut images = BTreeSet::new();
    for h in &all {
        let w = phi(h);
        if w.num_cycles() != h.horizontal_steps() || phi_inv(&w) != *h {
            return Ok(false);
        }
        images.insert(w);
    }
    let perms = Permutation::all(n);
    let onto = images.len() == all.len() && all.len() == perms.len() && perms.iter().all(|w| phi(&phi_inv(w)) == *w);
    Ok(onto && factorial(n) == Scalar::from(all.len()))
}

/// `psi` is a weight-preserving bijection onto the partitions with cycles of blocks.
pub fn psi_bijection_check(n: usize, b: &Scalar, d: &Scalar) -> Result<bool> {
    let all = enumerate_mh(n)?;
    let mut images = BTreeSet::new();
    for h in &all {
        let pc = psi(h);
        if pc.weight(b, d) != h.weight(b, d) || psi_inv(&pc) != *h {
            return Ok(false);
        }
        images.insert(pc);
    }
    let targets = PartitionCycles::all(n);
    let fubini: usize = stirling2_row(n)
        .iter()
        .enumerate()
        .map(|(j, s)| (s * factorial(j)).to_i64().expect("small") as usize)
        .sum();
    Ok(images.len() == all.len()
        && all.len() == targets.len()
        && targets.len() == fubini
        && targets.iter().all(|pc| psi(&psi_inv(pc)) == *pc))
}

/// `sum_{LH_n} (a+1)^{#H} = (a+1)_n`, together with the peak collapse: Schroder
/// paths under `b_k = a - k, a_k = k` weigh the same as peak-free paths under
/// `b_k = a + 1, a_k = k`.
pub fn lh_moment_check(n: usize, a: &Scalar) -> Result<bool> {
    let target = pochhammer(&(a + Scalar::one()), n);
    let hist: Scalar = enumerate_lh(n)?.iter().map(|h| h.weight(a)).sum();
    let zero = |_k: usize| Scalar::zero();
    let v = |k: usize| Scalar::from(k);
    let (from, to) = (Point::new(0, 0), Point::new(n, 0));
    let full = weight_sum_filtered(from, to, &FnWeights { h: |k: usize| a - Scalar::from(k), v, d: zero }, &PathFilter::schroder())?;
    let no_peak = PathFilter {
        no_diagonal: true,
        no_uv_peak: true,
        max_height: None,
    };
    let collapsed = weight_sum_filtered(from, to, &FnWeights { h: |_k: usize| a + Scalar::one(), v, d: zero }, &no_peak)?;
    Ok(hist == target && full == target && collapsed == target)
}

/// The sums of the Meixner chain at `(b, d)`, in order: all Motzkin-Schroder
/// paths, peak-free paths, peak-free paths without `D`, histories, partitions
/// with cycles, and the Stirling sum.
pub fn mh_chain(n: usize, b: &Scalar, d: &Scalar) -> Result<[Scalar; 6]> {
    let (from, to) = (Point::new(0, 0), Point::new(n, 0));
    let bd = b * d;
    let k_ = |k: usize| Scalar::from(k);
    let lam = |k: usize| &bd * k_(k) - d * k_(k) * k_(k);
    let ms = weight_sum_filtered(
        from,
        to,
        &FnWeights {
            h: |k: usize| k_(k) - d * k_(k) + &bd - d,
            v: |k: usize| d * k_(k),
            d: lam,
        },
        &PathFilter::motzkin_schroder(),
    )?;
    let no_peak = PathFilter {
        no_uv_peak: true,
        ..PathFilter::default()
    };
    let ms1 = weight_sum_filtered(
        from,
        to,
        &FnWeights {
            h: |k: usize| k_(k) + &bd,
            v: |k: usize| d * k_(k),
            d: lam,
        },
        &no_peak,
    )?;
    let mut ms2 = Scalar::zero();
    for steps in history_shapes(n)? {
        let heights = shape_heights(&steps)?;
        let w: Scalar = (0..steps.len())
            .map(|k| match steps[k] {
                Step::U => Scalar::one(),
                Step::V => d * k_(heights[k]),
                _ if steps.get(k + 1) == Some(&Step::V) => &bd + b,
                _ => &bd + k_(heights[k]),
            })
            .product();
        ms2 += &w;
    }
    let hist: Scalar = enumerate_mh(n)?.iter().map(|h| h.weight(b, d)).sum();
    let pcs: Scalar = PartitionCycles::all(n).iter().map(|pc| pc.weight(b, d)).sum();
    let stirling: Scalar = stirling2_row(n)
        .iter()
        .enumerate()
        .map(|(j, s)| s * pochhammer(b, j) * d.powu(j as u32))
        .sum();
    Ok([ms, ms1, ms2, hist, pcs, stirling])
}

/// Every stage of [`mh_chain`] agrees.
pub fn mh_moment_check(n: usize, b: &Scalar, d: &Scalar) -> Result<bool> {
    let chain = mh_chain(n, b, d)?;
    Ok(chain.iter().all(|v| *v == chain[0]))
}

/// `sum_{S_n} b^{cyc} c^{nexc} = sum_j S(n,j) (b)_j c^j (1-c)^{n-j}`, where
/// `nexc` counts `sigma(i) <= i`. With the strict inequality the identity
/// already fails at `n = 1`.
pub fn nonexcedance_check(n: usize, b: &Scalar, c: &Scalar) -> bool {
    let lhs: Scalar = Permutation::all(n)
        .iter()
        .map(|w| b.powu(w.num_cycles() as u32) * c.powu(w.weak_nonexcedances() as u32))
        .sum();
    let one_minus = Scalar::one() - c;
    let rhs: Scalar = stirling2_row(n)
        .iter()
        .enumerate()
        .map(|(j, s)| s * pochhammer(b, j) * c.powu(j as u32) * one_minus.powu((n - j) as u32))
        .sum();
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_one() {
        let lh = enumerate_lh(1).unwrap();
        assert_eq!(lh.len(), 1);
        assert_eq!(phi(&lh[0]).to_string(), "(1)");
        let mh = enumerate_mh(1).unwrap();
        assert_eq!(mh.len(), 1);
        assert_eq!(psi(&mh[0]).to_string(), "({1})");
        let (b, d) = (Scalar::frac(2, 3), Scalar::frac(1, 4));
        assert_eq!(mh[0].weight(&b, &d), &b * &d);
    }

    #[test]
    fn malformed_labels_are_rejected() {
        assert!(LaguerreHistory::from_word("UHV", &[2]).is_err());
        assert!(LaguerreHistory::from_word("UV", &[1]).is_err());
        let steps = parse_word("HUHV").unwrap();
        let bad = vec![MhLabel::Zero, MhLabel::Unlabeled, MhLabel::Unlabeled, MhLabel::Index(1)];
        assert!(MeixnerHistory::new(steps, bad).is_err());
    }

    #[test]
    fn partition_cycle_counts() {
        // ordered Bell numbers
        let counts: Vec<usize> = (1..=4).map(|n| PartitionCycles::all(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 13, 75]);
    }
}
