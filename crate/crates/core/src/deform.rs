//! Nondeterministic deformation of a skew diagram into partitions.
//!
//! A skew diagram `λ/μ` is pushed up and to the right one row pair at a
//! time. At each stage the lowest row `i` whose leftmost box sits strictly
//! left of the leftmost box of row `i - 1` is active, and one of two moves
//! is made:
//!
//! * **A** slides the boxes of row `i` lying left of row `i - 1` up into
//!   row `i - 1` (an empty row `i - 1` takes all of row `i`);
//! * **B** shifts every row at or below `i` that starts in the same column
//!   one box to the right.
//!
//! When no row is active the row lengths form a partition `ν`. The number of
//! distinct runs ending at `ν` is the Littlewood-Richardson coefficient
//! `c^λ_{μν}`. Geometrically this is a degeneration of an intersection of
//! Schubert varieties; none of that is modelled here.
//!
//! Every diagram met along the way is row convex, so it is stored as one
//! interval `[l, r]` per row. An empty row reads as `l = ∞, r = 0`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_invariant, Error, Result};
use crate::shapes::{contains, Partition, SkewShape};

/// Columns `l..=r` of one row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", try_from = "[usize; 2]")]
pub struct Interval {
    pub l: usize,
    pub r: usize,
}

impl Interval {
    pub fn new(l: usize, r: usize) -> Result<Self> {
        if l == 0 || r < l {
            return Err(Error::BadDiagram(format!("interval [{l}, {r}] is not a nonempty 1-based range")));
        }
        Ok(Interval { l, r })
    }

    pub fn len(&self) -> usize {
        self.r + 1 - self.l
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl From<Interval> for [usize; 2] {
    fn from(iv: Interval) -> Self {
        [iv.l, iv.r]
    }
}

impl TryFrom<[usize; 2]> for Interval {
    type Error = Error;

    fn try_from([l, r]: [usize; 2]) -> Result<Self> {
        Interval::new(l, r)
    }
}

/// A row-convex diagram with a fixed number of rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalDiagram {
    rows: Vec<Option<Interval>>,
}

const INF: usize = usize::MAX;

impl IntervalDiagram {
    pub fn new(rows: Vec<Option<Interval>>) -> Self {
        IntervalDiagram { rows }
    }

    /// Builds a diagram from `(l, r)` pairs, `None` for empty rows.
    pub fn from_pairs(rows: &[Option<(usize, usize)>]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.map(|(l, r)| Interval::new(l, r)).transpose()).collect::<Result<_>>()?;
        Ok(IntervalDiagram { rows })
    }

    /// Number of rows, empty ones included.
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Option<Interval>] {
        &self.rows
    }

    /// Row `i` (1-based).
    pub fn row(&self, i: usize) -> Option<Interval> {
        self.rows[i - 1]
    }

    /// Leftmost column of row `i`, `usize::MAX` standing in for `∞`.
    pub fn l(&self, i: usize) -> usize {
        self.row(i).map_or(INF, |iv| iv.l)
    }

    /// Rightmost column of row `i`, 0 for an empty row.
    pub fn r(&self, i: usize) -> usize {
        self.row(i).map_or(0, |iv| iv.r)
    }

    pub fn size(&self) -> usize {
        self.rows.iter().flatten().map(Interval::len).sum()
    }

    /// Boxes row-major.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        self.rows.iter().enumerate().flat_map(|(i, row)| row.iter().flat_map(move |iv| (iv.l..=iv.r).map(move |j| (i + 1, j)))).collect()
    }

    pub fn max_column(&self) -> usize {
        self.rows.iter().flatten().map(|iv| iv.r).max().unwrap_or(0)
    }

    /// `(Σ i·|row i|, -Σ l_i)`; every step lowers it lexicographically.
    pub fn potential(&self) -> (usize, i64) {
        let weighted = self.rows.iter().enumerate().map(|(i, r)| (i + 1) * r.map_or(0, |iv| iv.len())).sum();
        let lefts: i64 = self.rows.iter().flatten().map(|iv| iv.l as i64).sum();
        (weighted, -lefts)
    }

    /// ASCII rendering: `#` for a box, `.` for an empty cell.
    pub fn render(&self, width: usize) -> String {
        let width = width.max(self.max_column());
        let mut out = String::new();
        for i in 1..=self.k() {
            for j in 1..=width {
                let filled = self.row(i).is_some_and(|iv| iv.l <= j && j <= iv.r);
                out.push(if filled { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for IntervalDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| match r {
                Some(iv) => format!("({},{})", iv.l, iv.r),
                None => "-".to_string(),
            })
            .collect();
        write!(f, "[{}]", rows.join(" "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StepKind {
    A,
    B,
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepKind::A => "A",
            StepKind::B => "B",
        })
    }
}

/// Which of the two steps may be taken at the active row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct StepSet {
    pub a: bool,
    pub b: bool,
}

impl StepSet {
    pub fn contains(&self, s: StepKind) -> bool {
        match s {
            StepKind::A => self.a,
            StepKind::B => self.b,
        }
    }

    pub fn is_branch(&self) -> bool {
        self.a && self.b
    }

    pub fn is_empty(&self) -> bool {
        !self.a && !self.b
    }

    /// Canonical order: A before B.
    pub fn iter(&self) -> impl Iterator<Item = StepKind> {
        let a = self.a.then_some(StepKind::A);
        let b = self.b.then_some(StepKind::B);
        a.into_iter().chain(b)
    }
}

/// Deliberate rule corruptions, used to check that the self test notices.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Allow step B when `r_i <= r_{i-1}` instead of `r_i <= r_{i-1} - 1`.
    StepBNonStrict,
}

/// Step rules. `Rules::default()` is the real rule set.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rules {
    #[doc(hidden)]
    pub mutation: Option<Mutation>,
}

/// The initial diagram of `λ/μ` with `k` rows.
pub fn from_skew(s: &SkewShape, k: usize) -> Result<IntervalDiagram> {
    if s.outer.len() > k {
        return Err(Error::TooManyRows { partition: s.outer.to_string(), k });
    }
    if !contains(&s.outer, &s.inner) {
        return Err(Error::NotContained { outer: s.outer.to_string(), inner: s.inner.to_string() });
    }
    let rows = (1..=k)
        .map(|i| {
            let (lo, hi) = s.row_span(i);
            (hi > lo).then(|| Interval { l: lo + 1, r: hi })
        })
        .collect();
    Ok(IntervalDiagram { rows })
}

/// The largest `i > 1` with `l_{i-1} > l_i`, if any.
pub fn active_row(d: &IntervalDiagram) -> Option<usize> {
    (2..=d.k()).rev().find(|&i| d.l(i - 1) > d.l(i))
}

pub fn applicable_steps(d: &IntervalDiagram, i: usize) -> Result<StepSet> {
    applicable_steps_with(d, i, Rules::default())
}

pub fn applicable_steps_with(d: &IntervalDiagram, i: usize, rules: Rules) -> Result<StepSet> {
    let active = active_row(d);
    if active != Some(i) {
        return Err(Error::NotActiveRow { row: i, active });
    }
    Ok(step_conditions(d, i, rules))
}

fn step_conditions(d: &IntervalDiagram, i: usize, rules: Rules) -> StepSet {
    let above_empty = d.row(i - 1).is_none();
    let (ri, l_above, r_above) = (d.r(i), d.l(i - 1), d.r(i - 1));
    let a = above_empty || ri + 1 >= l_above;
    let b = match rules.mutation {
        Some(Mutation::StepBNonStrict) => ri <= r_above,
        None => ri < r_above,
    };
    StepSet { a, b }
}

pub fn apply_step(d: &IntervalDiagram, i: usize, s: StepKind) -> Result<IntervalDiagram> {
    apply_step_with(d, i, s, Rules::default())
}

pub fn apply_step_with(d: &IntervalDiagram, i: usize, s: StepKind, rules: Rules) -> Result<IntervalDiagram> {
    let steps = applicable_steps_with(d, i, rules)?;
    ensure_invariant!(!steps.is_empty(), "no step applies at active row {i} of {d}");
    if !steps.contains(s) {
        return Err(Error::StepNotApplicable { row: i, step: s });
    }
    let next = transform(d, i, s)?;
    ensure_invariant!(next.potential() < d.potential(), "potential did not decrease: {d} -> {next} by {s} at row {i}");
    ensure_invariant!(right_ends_decrease(&next), "right ends not weakly decreasing in {next}");
    Ok(next)
}

fn transform(d: &IntervalDiagram, i: usize, s: StepKind) -> Result<IntervalDiagram> {
    let mut rows = d.rows.clone();
    let Some(cur) = d.row(i) else {
        return Err(Error::Invariant(format!("active row {i} of {d} is empty")));
    };
    match s {
        StepKind::A => match d.row(i - 1) {
            None => {
                rows[i - 2] = Some(cur);
                rows[i - 1] = None;
            }
            Some(above) => {
                // columns l_i..l_{i-1}-1 of row i move up and join row i-1
                rows[i - 2] = Some(Interval { l: cur.l, r: above.r });
                rows[i - 1] = (cur.r >= above.l).then_some(Interval { l: above.l, r: cur.r });
            }
        },
        StepKind::B => {
            for iv in rows.iter_mut().skip(i - 1).flatten() {
                if iv.l == cur.l {
                    *iv = Interval { l: iv.l + 1, r: iv.r + 1 };
                }
            }
        }
    }
    Ok(IntervalDiagram { rows })
}

fn right_ends_decrease(d: &IntervalDiagram) -> bool {
    let rs: Vec<usize> = d.rows.iter().flatten().map(|iv| iv.r).collect();
    rs.windows(2).all(|w| w[0] >= w[1])
}

/// Row lengths of a terminal diagram.
pub fn finalize(d: &IntervalDiagram) -> Result<Partition> {
    if let Some(i) = active_row(d) {
        return Err(Error::NotTerminal(i));
    }
    // l weakly increasing (with ∞ last) and r weakly decreasing
    let lefts: Vec<usize> = (1..=d.k()).map(|i| d.l(i)).collect();
    ensure_invariant!(lefts.windows(2).all(|w| w[0] <= w[1]), "terminal diagram {d} has decreasing left ends");
    ensure_invariant!(right_ends_decrease(d), "terminal diagram {d} has increasing right ends");
    let lengths = d.rows.iter().flatten().map(Interval::len).collect();
    Partition::new(lengths).map_err(|e| Error::Invariant(format!("terminal diagram {d} is not a partition: {e}")))
}

/// Almost-skew test: ignoring empty rows, the right ends weakly decrease and
/// the left ends follow one of the two admissible chains
/// `l_i <= .. <= l_k <= l_{i-1} <= .. <= l_1` or
/// `l_a <= .. <= l_{i-2} <= l_i <= .. <= l_k <= l_{i-1} <= l_{a-1} <= .. <= l_1`.
pub fn is_almost_skew(d: &IntervalDiagram) -> bool {
    if !right_ends_decrease(d) {
        return false;
    }
    let lefts: Vec<usize> = d.rows.iter().flatten().map(|iv| iv.l).collect();
    let m = lefts.len();
    if m <= 1 || lefts.windows(2).all(|w| w[0] <= w[1]) {
        return true;
    }
    // positions are 1-based; the first chain is the second with a = i - 1
    for i in 2..=m {
        for a in 1..i {
            let chain = (a..=i.saturating_sub(2)).chain(i..=m).chain(std::iter::once(i - 1)).chain((1..a).rev());
            let values: Vec<usize> = chain.map(|p| lefts[p - 1]).collect();
            if values.windows(2).all(|w| w[0] <= w[1]) {
                return true;
            }
        }
    }
    false
}

/// Path counts `ν -> number of runs ending at ν`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoefficientTable {
    counts: BTreeMap<Partition, u64>,
}

impl CoefficientTable {
    pub fn get(&self, nu: &Partition) -> u64 {
        self.counts.get(nu).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, u64)> {
        self.counts.iter().map(|(p, &c)| (p, c))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> Result<u64> {
        self.counts.values().try_fold(0u64, |acc, &c| acc.checked_add(c).ok_or(Error::Overflow))
    }

    fn add(&mut self, nu: Partition, count: u64) -> Result<()> {
        let slot = self.counts.entry(nu).or_insert(0);
        *slot = slot.checked_add(count).ok_or(Error::Overflow)?;
        Ok(())
    }

    pub fn into_map(self) -> BTreeMap<Partition, u64> {
        self.counts
    }
}

impl FromIterator<(Partition, u64)> for CoefficientTable {
    fn from_iter<I: IntoIterator<Item = (Partition, u64)>>(iter: I) -> Self {
        let mut t = CoefficientTable::default();
        for (p, c) in iter {
            if c > 0 {
                t.add(p, c).expect("table literal overflows");
            }
        }
        t
    }
}

impl Serialize for CoefficientTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry<'a> {
            nu: &'a Partition,
            count: u64,
        }
        s.collect_seq(self.counts.iter().map(|(nu, &count)| Entry { nu, count }))
    }
}

/// Memoized path counter. The state is the whole diagram, and each step only
/// looks at the current diagram, so equal states have equal tables.
#[derive(Debug, Default)]
pub struct Counter {
    rules: Rules,
    memo: HashMap<IntervalDiagram, Arc<CoefficientTable>>,
}

impl Counter {
    pub fn new() -> Self {
        Counter::default()
    }

    pub fn with_rules(rules: Rules) -> Self {
        Counter { rules, memo: HashMap::new() }
    }

    /// Terminal shapes reachable from `d`, with path multiplicities.
    pub fn table(&mut self, d: &IntervalDiagram) -> Result<Arc<CoefficientTable>> {
        if let Some(t) = self.memo.get(d) {
            return Ok(Arc::clone(t));
        }
        let table = match active_row(d) {
            None => {
                let mut t = CoefficientTable::default();
                t.add(finalize(d)?, 1)?;
                t
            }
            Some(i) => {
                let steps = applicable_steps_with(d, i, self.rules)?;
                ensure_invariant!(!steps.is_empty(), "no step applies at active row {i} of {d}");
                let mut t = CoefficientTable::default();
                let mut successors = Vec::with_capacity(2);
                for s in steps.iter() {
                    let next = apply_step_with(d, i, s, self.rules)?;
                    ensure_invariant!(!successors.contains(&next), "steps A and B coincide at {d}");
                    for (nu, c) in self.table(&next)?.iter() {
                        t.add(nu.clone(), c)?;
                    }
                    successors.push(next);
                }
                t
            }
        };
        let table = Arc::new(table);
        self.memo.insert(d.clone(), Arc::clone(&table));
        Ok(table)
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}

fn start_for(lambda: &Partition, mu: &Partition, k: usize) -> Result<IntervalDiagram> {
    let shape = SkewShape::new(lambda.clone(), mu.clone())?;
    from_skew(&shape, k)
}

/// `ν -> c^λ_{μν}` for every `ν` with a nonzero count.
pub fn lr_coefficients(lambda: &Partition, mu: &Partition, k: usize) -> Result<CoefficientTable> {
    lr_coefficients_with(lambda, mu, k, Rules::default())
}

pub fn lr_coefficients_with(lambda: &Partition, mu: &Partition, k: usize, rules: Rules) -> Result<CoefficientTable> {
    let start = start_for(lambda, mu, k)?;
    let table = Counter::with_rules(rules).table(&start)?;
    Ok((*table).clone())
}

/// One complete run: the choices made from `start` and where they lead.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Trace {
    pub start: IntervalDiagram,
    pub steps: Vec<(usize, StepKind)>,
    pub result: Partition,
}

impl Trace {
    /// Every intermediate diagram, `start` first, terminal last.
    pub fn frames(&self) -> Result<Vec<IntervalDiagram>> {
        let mut frames = vec![self.start.clone()];
        for &(i, s) in &self.steps {
            let next = apply_step(frames.last().unwrap(), i, s)?;
            frames.push(next);
        }
        Ok(frames)
    }

    /// Replays the steps and checks the recorded result.
    pub fn verify(&self) -> Result<()> {
        let frames = self.frames()?;
        let end = finalize(frames.last().unwrap())?;
        if end != self.result {
            return Err(Error::TraceMismatch(format!("replay ends at {end}, trace records {}", self.result)));
        }
        Ok(())
    }

    /// The A/B choices at branch points only.
    pub fn choices(&self) -> Result<Vec<StepKind>> {
        let frames = self.frames()?;
        let mut out = Vec::new();
        for (frame, &(i, s)) in frames.iter().zip(&self.steps) {
            if applicable_steps(frame, i)?.is_branch() {
                out.push(s);
            }
        }
        Ok(out)
    }
}

/// All runs on `λ/μ`, optionally only those ending at `filter`, with A
/// explored before B at every branch point.
pub fn enumerate_traces(lambda: &Partition, mu: &Partition, k: usize, filter: Option<&Partition>) -> Result<Vec<Trace>> {
    let start = start_for(lambda, mu, k)?;
    traces_from(&start, filter)
}

pub fn traces_from(start: &IntervalDiagram, filter: Option<&Partition>) -> Result<Vec<Trace>> {
    let mut counter = Counter::new();
    let mut out = Vec::new();
    let mut steps = Vec::new();
    walk(start, start, filter, &mut counter, &mut steps, &mut out)?;
    Ok(out)
}

fn walk(
    start: &IntervalDiagram,
    d: &IntervalDiagram,
    filter: Option<&Partition>,
    counter: &mut Counter,
    steps: &mut Vec<(usize, StepKind)>,
    out: &mut Vec<Trace>,
) -> Result<()> {
    if let Some(nu) = filter {
        if counter.table(d)?.get(nu) == 0 {
            return Ok(());
        }
    }
    match active_row(d) {
        None => out.push(Trace { start: start.clone(), steps: steps.clone(), result: finalize(d)? }),
        Some(i) => {
            for s in applicable_steps(d, i)?.iter() {
                let next = apply_step(d, i, s)?;
                steps.push((i, s));
                walk(start, &next, filter, counter, steps, out)?;
                steps.pop();
            }
        }
    }
    Ok(())
}

/// Every diagram reachable from `start`, `start` included, each once.
pub fn reachable_states(start: &IntervalDiagram) -> Result<Vec<IntervalDiagram>> {
    let mut seen = HashSet::new();
    let mut order = Vec::new();
    let mut stack = vec![start.clone()];
    while let Some(d) = stack.pop() {
        if !seen.insert(d.clone()) {
            continue;
        }
        if let Some(i) = active_row(&d) {
            for s in applicable_steps(&d, i)?.iter() {
                stack.push(apply_step(&d, i, s)?);
            }
        }
        order.push(d);
    }
    Ok(order)
}

/// Literal box-level version of a step: each affected box is swapped with
/// its target cell. Used to cross-check the interval arithmetic.
pub fn apply_step_boxes(d: &IntervalDiagram, i: usize, s: StepKind) -> Vec<(usize, usize)> {
    let mut boxes: std::collections::BTreeSet<(usize, usize)> = d.boxes().into_iter().collect();
    let swap = |boxes: &mut std::collections::BTreeSet<(usize, usize)>, a: (usize, usize), b: (usize, usize)| {
        let (ha, hb) = (boxes.contains(&a), boxes.contains(&b));
        if ha != hb {
            if ha {
                boxes.remove(&a);
                boxes.insert(b);
            } else {
                boxes.remove(&b);
                boxes.insert(a);
            }
        }
    };
    match s {
        StepKind::A => {
            let hi = if d.row(i - 1).is_none() { d.r(i) + 1 } else { d.l(i - 1) };
            for j in d.l(i)..hi {
                swap(&mut boxes, (i, j), (i - 1, j));
            }
        }
        StepKind::B => {
            let li = d.l(i);
            for ip in i..=d.k() {
                if d.l(ip) == li {
                    swap(&mut boxes, (ip, d.l(ip)), (ip, d.r(ip) + 1));
                }
            }
        }
    }
    boxes.into_iter().collect()
}

/// Checks everything a single step must preserve. Returns a description of
/// the first violation.
pub fn check_transition(before: &IntervalDiagram, i: usize, s: StepKind, after: &IntervalDiagram) -> Result<()> {
    let literal = apply_step_boxes(before, i, s);
    ensure_invariant!(literal == after.boxes(), "step {s} at row {i} of {before}: box swap disagrees with {after}");
    for row in 1..=after.k() {
        let cols: Vec<usize> = literal.iter().filter(|b| b.0 == row).map(|b| b.1).collect();
        ensure_invariant!(cols.windows(2).all(|w| w[1] == w[0] + 1), "row {row} of {after} is not convex");
    }
    ensure_invariant!(right_ends_decrease(after), "right ends increase in {after}");
    ensure_invariant!(is_almost_skew(after), "{after} is not almost skew");
    ensure_invariant!(after.potential() < before.potential(), "potential did not drop from {before} to {after}");
    if let Some(next) = active_row(after) {
        ensure_invariant!(!applicable_steps(after, next)?.is_empty(), "no step applies to {after}");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn dia(rows: &[Option<(usize, usize)>]) -> IntervalDiagram {
        IntervalDiagram::from_pairs(rows).unwrap()
    }

    #[test]
    fn initial_diagrams() {
        let s = SkewShape::new(p("4,4,3,2"), p("2,1")).unwrap();
        assert_eq!(from_skew(&s, 4).unwrap(), dia(&[Some((3, 4)), Some((2, 4)), Some((1, 3)), Some((1, 2))]));
        let t = SkewShape::new(p("2,1"), p("1")).unwrap();
        assert_eq!(from_skew(&t, 2).unwrap(), dia(&[Some((2, 2)), Some((1, 1))]));
        let e = SkewShape::new(p("3,1"), p("3,1")).unwrap();
        assert_eq!(from_skew(&e, 3).unwrap(), dia(&[None, None, None]));
        assert!(matches!(from_skew(&s, 3), Err(Error::TooManyRows { .. })));
    }

    #[test]
    fn active_rows() {
        assert_eq!(active_row(&dia(&[Some((2, 2)), Some((1, 1))])), Some(2));
        assert_eq!(active_row(&dia(&[Some((1, 2)), Some((2, 2))])), None);
        assert_eq!(active_row(&dia(&[None, Some((1, 2))])), Some(2));
        assert_eq!(active_row(&dia(&[Some((1, 2)), None])), None);
    }

    #[test]
    fn step_sets() {
        let d = dia(&[Some((2, 2)), Some((1, 1))]);
        assert_eq!(applicable_steps(&d, 2).unwrap(), StepSet { a: true, b: true });
        let d = dia(&[Some((2, 2)), Some((1, 2))]);
        assert_eq!(applicable_steps(&d, 2).unwrap(), StepSet { a: true, b: false });
        let d = dia(&[Some((3, 3)), Some((1, 1))]);
        assert_eq!(applicable_steps(&d, 2).unwrap(), StepSet { a: false, b: true });
        assert!(matches!(applicable_steps(&d, 1), Err(Error::NotActiveRow { .. })));
    }

    #[test]
    fn steps() {
        let d = dia(&[Some((2, 2)), Some((1, 1))]);
        assert_eq!(apply_step(&d, 2, StepKind::A).unwrap(), dia(&[Some((1, 2)), None]));
        assert_eq!(apply_step(&d, 2, StepKind::B).unwrap(), dia(&[Some((2, 2)), Some((2, 2))]));
        let d = dia(&[Some((3, 3)), Some((1, 1)), Some((1, 1))]);
        assert_eq!(active_row(&d), Some(2));
        assert_eq!(apply_step(&d, 2, StepKind::B).unwrap(), dia(&[Some((3, 3)), Some((2, 2)), Some((2, 2))]));
        assert!(matches!(apply_step(&d, 2, StepKind::A), Err(Error::StepNotApplicable { .. })));
        // empty row above: the whole row moves up
        let d = dia(&[None, Some((1, 2))]);
        assert_eq!(apply_step(&d, 2, StepKind::A).unwrap(), dia(&[Some((1, 2)), None]));
    }

    #[test]
    fn finals() {
        assert_eq!(finalize(&dia(&[Some((1, 2)), None])).unwrap(), p("2"));
        assert_eq!(finalize(&dia(&[Some((2, 2)), Some((2, 2))])).unwrap(), p("1,1"));
        assert_eq!(finalize(&dia(&[None, None])).unwrap(), p(""));
        assert!(matches!(finalize(&dia(&[Some((2, 2)), Some((1, 1))])), Err(Error::NotTerminal(2))));
    }

    #[test]
    fn table_of_4432_over_21() {
        let t = lr_coefficients(&p("4,4,3,2"), &p("2,1"), 4).unwrap();
        let expected: CoefficientTable = [("4,3,2,1", 2), ("4,4,2", 1), ("4,4,1,1", 1), ("4,3,3", 1), ("4,2,2,2", 1), ("3,3,3,1", 1), ("3,3,2,2", 1)]
            .into_iter()
            .map(|(s, c)| (p(s), c))
            .collect();
        assert_eq!(t, expected);
    }

    #[test]
    fn small_tables() {
        let t = lr_coefficients(&p("2,1"), &p("1"), 2).unwrap();
        assert_eq!(t, [(p("2"), 1), (p("1,1"), 1)].into_iter().collect());
        let t = lr_coefficients(&p("3,2"), &p("3,2"), 2).unwrap();
        assert_eq!(t, [(p(""), 1)].into_iter().collect());
        assert!(matches!(lr_coefficients(&p("2"), &p("1,1"), 2), Err(Error::NotContained { .. })));
    }

    #[test]
    fn traces() {
        let ts = enumerate_traces(&p("4,4,3,2"), &p("2,1"), 4, Some(&p("4,3,2,1"))).unwrap();
        assert_eq!(ts.len(), 2);
        for t in &ts {
            t.verify().unwrap();
            assert_eq!(t.result, p("4,3,2,1"));
        }
        let ts = enumerate_traces(&p("2,1"), &p("1"), 2, None).unwrap();
        assert_eq!(ts.len(), 2);
        assert_eq!(ts[0].steps, vec![(2, StepKind::A)]);
        assert_eq!(ts[1].steps, vec![(2, StepKind::B)]);
        let ts = enumerate_traces(&p("2,2"), &p("2,2"), 2, None).unwrap();
        assert_eq!(ts.len(), 1);
        assert!(ts[0].steps.is_empty());
        assert_eq!(ts[0].result, p(""));
        let all = enumerate_traces(&p("4,4,3,2"), &p("2,1"), 4, None).unwrap();
        assert_eq!(all.len(), 8);
    }

    #[test]
    fn trace_json() {
        let ts = enumerate_traces(&p("2,1"), &p("1"), 2, None).unwrap();
        let j = serde_json::to_string(&ts[1]).unwrap();
        assert_eq!(j, r#"{"start":[[2,2],[1,1]],"steps":[[2,"B"]],"result":[1,1]}"#);
        let back: Trace = serde_json::from_str(&j).unwrap();
        assert_eq!(back, ts[1]);
        let e = enumerate_traces(&p("1"), &p("1"), 2, None).unwrap();
        assert_eq!(serde_json::to_string(&e[0]).unwrap(), r#"{"start":[null,null],"steps":[],"result":[]}"#);
    }

    #[test]
    fn almost_skew() {
        let s = SkewShape::new(p("4,4,3,2"), p("2,1")).unwrap();
        assert!(is_almost_skew(&from_skew(&s, 4).unwrap()));
        assert!(!is_almost_skew(&dia(&[Some((2, 2)), Some((1, 1)), Some((3, 3))])));
        assert!(!is_almost_skew(&dia(&[Some((2, 2)), Some((2, 2)), Some((1, 3))])));
        // first chain: l_2 <= l_3 <= l_1
        assert!(is_almost_skew(&dia(&[Some((3, 4)), Some((1, 3)), Some((2, 3))])));
        // l = 2, 1, 3 fits neither chain
        assert!(!is_almost_skew(&dia(&[Some((2, 4)), Some((1, 3)), Some((3, 3))])));
    }

    #[test]
    fn rendering() {
        let s = SkewShape::new(p("2,1"), p("1")).unwrap();
        assert_eq!(from_skew(&s, 2).unwrap().render(2), ".#\n#.\n");
    }

    #[test]
    fn mutation_changes_answers() {
        let rules = Rules { mutation: Some(Mutation::StepBNonStrict) };
        let good = lr_coefficients(&p("2,1"), &p("1"), 2);
        let bad = lr_coefficients_with(&p("3,3"), &p("1"), 2, rules);
        assert!(good.is_ok());
        assert!(bad.is_err() || bad.unwrap() != lr_coefficients(&p("3,3"), &p("1"), 2).unwrap());
    }

    fn count_plain(d: &IntervalDiagram) -> BTreeMap<Partition, u64> {
        let mut out = BTreeMap::new();
        match active_row(d) {
            None => {
                out.insert(finalize(d).unwrap(), 1);
            }
            Some(i) => {
                for s in applicable_steps(d, i).unwrap().iter() {
                    for (nu, c) in count_plain(&apply_step(d, i, s).unwrap()) {
                        *out.entry(nu).or_insert(0) += c;
                    }
                }
            }
        }
        out
    }

    #[test]
    fn memo_agrees_with_plain_recursion() {
        let rect = crate::shapes::Rectangle::new(4, 4).unwrap();
        for lambda in rect.partitions() {
            for mu in crate::shapes::subpartitions(&lambda) {
                if lambda.size() - mu.size() > 8 {
                    continue;
                }
                let start = start_for(&lambda, &mu, 4).unwrap();
                let memo = Counter::new().table(&start).unwrap();
                assert_eq!(memo.counts, count_plain(&start), "{lambda}/{mu}");
            }
        }
    }

    #[test]
    fn every_transition_is_sound() {
        let rect = crate::shapes::Rectangle::new(3, 4).unwrap();
        for lambda in rect.partitions() {
            for mu in crate::shapes::subpartitions(&lambda) {
                let start = start_for(&lambda, &mu, 3).unwrap();
                assert!(is_almost_skew(&start));
                for d in reachable_states(&start).unwrap() {
                    if let Some(i) = active_row(&d) {
                        let steps = applicable_steps(&d, i).unwrap();
                        for s in steps.iter() {
                            let next = apply_step(&d, i, s).unwrap();
                            check_transition(&d, i, s, &next).unwrap();
                        }
                    }
                }
            }
        }
    }
}
