//! The labeled deformation on the full `k x width` grid.
//!
//! Cells of `μ` stay unlabeled, cells of `λ/μ` are labeled `D`, and the
//! complement `λ∨` (pushed to the south-east) is filled with the numbers
//! `k + 1 - i` in row `i`. Running the deformation on this grid moves the `D`
//! cells exactly as the unlabeled engine in [`crate::deform`] does, with some
//! extra forced steps that only move numbers. When it stops, the numbers read
//! upside down form a Littlewood-Richardson tableau of shape `ν∨/μ` and
//! weight `λ∨`, where `ν` is the shape of the `D` cells.
//!
//! The grid run is always driven by a trace of the unlabeled engine, which
//! makes the trace-to-tableau map explicit.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::deform::{self, IntervalDiagram, StepKind, StepSet, Trace};
use crate::error::{ensure_invariant, Error, Result};
use crate::lr_oracle::{self, SkewTableau, Weight};
use crate::shapes::{complement, contains, Partition, Rectangle, SkewShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellLabel {
    /// A cell of `μ`.
    Unlabeled,
    /// A cell of the diagram being deformed.
    D,
    Numbered(u32),
}

impl CellLabel {
    pub fn is_labeled(self) -> bool {
        self != CellLabel::Unlabeled
    }

    fn glyph(self) -> char {
        match self {
            CellLabel::Unlabeled => '.',
            CellLabel::D => '#',
            CellLabel::Numbered(v) => char::from_digit(v, 36).unwrap_or('?'),
        }
    }
}

impl Serialize for CellLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CellLabel::Unlabeled => s.serialize_str("u"),
            CellLabel::D => s.serialize_str("d"),
            CellLabel::Numbered(v) => s.serialize_u32(*v),
        }
    }
}

impl<'de> Deserialize<'de> for CellLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Tag(String),
            Num(u32),
        }
        match Raw::deserialize(d)? {
            Raw::Tag(t) if t == "u" => Ok(CellLabel::Unlabeled),
            Raw::Tag(t) if t == "d" => Ok(CellLabel::D),
            Raw::Tag(t) => Err(serde::de::Error::custom(format!("unknown cell label {t:?}"))),
            Raw::Num(v) => Ok(CellLabel::Numbered(v)),
        }
    }
}

/// A fully labeled `k x width` grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabeledGrid {
    rect: Rectangle,
    cells: Vec<Vec<CellLabel>>,
}

impl LabeledGrid {
    pub fn rect(&self) -> Rectangle {
        self.rect
    }

    /// Label at `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> CellLabel {
        self.cells[i - 1][j - 1]
    }

    pub fn cells(&self) -> &[Vec<CellLabel>] {
        &self.cells
    }

    fn swap(&mut self, a: (usize, usize), b: (usize, usize)) {
        let va = self.get(a.0, a.1);
        let vb = self.get(b.0, b.1);
        self.cells[a.0 - 1][a.1 - 1] = vb;
        self.cells[b.0 - 1][b.1 - 1] = va;
    }

    fn d_columns(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.cells[i - 1].iter().enumerate().filter(|(_, c)| **c == CellLabel::D).map(|(j, _)| j + 1)
    }

    /// Leftmost `D` column of row `i`, `usize::MAX` if there is none.
    pub fn l(&self, i: usize) -> usize {
        self.d_columns(i).next().unwrap_or(usize::MAX)
    }

    /// Rightmost `D` column of row `i`, 0 if there is none.
    pub fn r(&self, i: usize) -> usize {
        self.d_columns(i).last().unwrap_or(0)
    }

    pub fn has_d(&self, i: usize) -> bool {
        self.d_columns(i).next().is_some()
    }

    pub fn unlabeled_in_row(&self, i: usize) -> usize {
        self.cells[i - 1].iter().filter(|c| **c == CellLabel::Unlabeled).count()
    }

    fn unlabeled_per_column(&self) -> Vec<usize> {
        (1..=self.rect.width).map(|j| (1..=self.rect.k).filter(|&i| self.get(i, j) == CellLabel::Unlabeled).count()).collect()
    }

    /// The `D` cells as an interval diagram.
    pub fn d_diagram(&self) -> Result<IntervalDiagram> {
        let rows = (1..=self.rect.k)
            .map(|i| {
                let cols: Vec<usize> = self.d_columns(i).collect();
                match (cols.first(), cols.last()) {
                    (Some(&l), Some(&r)) => {
                        ensure_invariant!(r + 1 - l == cols.len(), "D cells of row {i} are not contiguous");
                        Ok(Some(deform::Interval { l, r }))
                    }
                    _ => Ok(None),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntervalDiagram::new(rows))
    }

    /// One character per cell: `.` unlabeled, `#` for D, digits for numbers.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in &self.cells {
            out.extend(row.iter().map(|c| c.glyph()));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for LabeledGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Starting grid for `λ/μ` inside `rect`.
pub fn init_grid(lambda: &Partition, mu: &Partition, rect: Rectangle) -> Result<LabeledGrid> {
    lambda.ensure_fits(rect)?;
    if !contains(lambda, mu) {
        return Err(Error::NotContained { outer: lambda.to_string(), inner: mu.to_string() });
    }
    let k = rect.k;
    let cells = (1..=k)
        .map(|i| {
            (1..=rect.width)
                .map(|j| {
                    if j <= mu.part(i) {
                        CellLabel::Unlabeled
                    } else if j <= lambda.part(i) {
                        CellLabel::D
                    } else {
                        CellLabel::Numbered((k + 1 - i) as u32)
                    }
                })
                .collect()
        })
        .collect();
    Ok(LabeledGrid { rect, cells })
}

/// The largest `i` with a labeled cell directly under an unlabeled one.
pub fn active_row2(g: &LabeledGrid) -> Option<usize> {
    (2..=g.rect.k).rev().find(|&i| (1..=g.rect.width).any(|j| g.get(i, j).is_labeled() && g.get(i - 1, j) == CellLabel::Unlabeled))
}

pub fn applicable_steps2(g: &LabeledGrid, i: usize) -> Result<StepSet> {
    let active = active_row2(g);
    if active != Some(i) {
        return Err(Error::NotActiveRow { row: i, active });
    }
    let (li, ri) = (g.l(i), g.r(i));
    let (l_above, r_above) = (g.l(i - 1), g.r(i - 1));
    let a = ri + 1 >= l_above || !g.has_d(i - 1) || !g.has_d(i);
    let b = ri != 0 && ri < r_above && li < l_above;
    Ok(StepSet { a, b })
}

pub fn apply_step2(g: &LabeledGrid, i: usize, s: StepKind) -> Result<LabeledGrid> {
    let steps = applicable_steps2(g, i)?;
    ensure_invariant!(!steps.is_empty(), "no step applies at row {i} of grid\n{g}");
    if !steps.contains(s) {
        return Err(Error::StepNotApplicable { row: i, step: s });
    }
    let mut next = g.clone();
    match s {
        StepKind::A => {
            for j in 1..=g.rect.width {
                if g.get(i - 1, j) == CellLabel::Unlabeled {
                    next.swap((i, j), (i - 1, j));
                }
            }
        }
        StepKind::B => {
            let li = g.l(i);
            for ip in i..=g.rect.k {
                if g.l(ip) != li {
                    continue;
                }
                let target = g.r(ip) + 1;
                ensure_invariant!(target <= g.rect.width, "step B pushes row {ip} past the rectangle");
                ensure_invariant!(matches!(g.get(ip, target), CellLabel::Numbered(_)), "step B target ({ip},{target}) is not numbered in\n{g}");
                next.swap((ip, li), (ip, target));
            }
        }
    }
    Ok(next)
}

/// Tiling, no number above a D cell in the same column, unlabeled cells
/// left-justified and their per-column counts unchanged from `start`.
pub fn check_grid_invariants(start: &LabeledGrid, g: &LabeledGrid) -> Result<()> {
    ensure_invariant!(g.cells.len() == g.rect.k && g.cells.iter().all(|r| r.len() == g.rect.width), "grid lost its shape");
    for j in 1..=g.rect.width {
        let mut seen_number = false;
        for i in 1..=g.rect.k {
            match g.get(i, j) {
                CellLabel::Numbered(v) => {
                    ensure_invariant!(v >= 1 && v as usize <= g.rect.k, "number {v} out of range at ({i},{j})");
                    seen_number = true;
                }
                CellLabel::D => ensure_invariant!(!seen_number, "numbered cell above D in column {j}:\n{g}"),
                CellLabel::Unlabeled => {}
            }
        }
    }
    for (idx, row) in g.cells.iter().enumerate() {
        let u = g.unlabeled_in_row(idx + 1);
        ensure_invariant!(row[..u].iter().all(|c| *c == CellLabel::Unlabeled), "unlabeled cells of row {} not left-justified:\n{g}", idx + 1);
    }
    ensure_invariant!(g.unlabeled_per_column() == start.unlabeled_per_column(), "unlabeled cells changed columns:\n{g}");
    Ok(())
}

/// Shape of the terminal `D` cells and the tableau read off the numbers.
pub fn finalize_tableau(g: &LabeledGrid) -> Result<SkewTableau> {
    if let Some(i) = active_row2(g) {
        return Err(Error::NotTerminal(i));
    }
    let k = g.rect.k;
    let mut inner = Vec::with_capacity(k);
    let mut outer = Vec::with_capacity(k);
    let mut rows = Vec::with_capacity(k);
    // English row t is grid row k + 1 - t; D cells shift right and drop out
    for t in 1..=k {
        let row: Vec<CellLabel> = g.cells[k - t].iter().copied().filter(|c| *c != CellLabel::D).collect();
        let u = row.iter().take_while(|c| **c == CellLabel::Unlabeled).count();
        let numbers = row[u..]
            .iter()
            .map(|c| match c {
                CellLabel::Numbered(v) => Ok(*v),
                _ => Err(Error::Invariant(format!("unlabeled cell right of a number in grid row {}", k + 1 - t))),
            })
            .collect::<Result<Vec<u32>>>()?;
        inner.push(u);
        outer.push(u + numbers.len());
        rows.push(numbers);
    }
    let inner = Partition::new(inner).map_err(|e| Error::Invariant(format!("unlabeled cells are not a partition: {e}")))?;
    let outer = Partition::new(outer).map_err(|e| Error::Invariant(format!("terminal tableau is not skew: {e}")))?;
    SkewTableau::new(SkewShape { outer, inner }, rows)
}

/// Record of a trace-driven grid run.
#[derive(Clone, Debug)]
pub struct GridRun {
    /// Every grid, initial first.
    pub grids: Vec<LabeledGrid>,
    /// `(row, step, consumed_from_trace)` per grid step.
    pub steps: Vec<(usize, StepKind, bool)>,
    pub nu: Partition,
    pub tableau: SkewTableau,
}

/// Runs the labeled grid, taking the trace's choice whenever the `D` cells
/// would move and the forced step A otherwise.
pub fn replay_run(lambda: &Partition, mu: &Partition, rect: Rectangle, trace: &Trace) -> Result<GridRun> {
    let start = init_grid(lambda, mu, rect)?;
    let expected_start = deform::from_skew(&SkewShape::new(lambda.clone(), mu.clone())?, rect.k)?;
    if trace.start != expected_start {
        return Err(Error::TraceMismatch(format!("trace starts at {}, expected {expected_start}", trace.start)));
    }
    let mut grids = vec![start.clone()];
    let mut steps = Vec::new();
    let mut pending = trace.steps.iter();
    let mut g = start.clone();
    while let Some(i) = active_row2(&g) {
        let allowed = applicable_steps2(&g, i)?;
        let before = g.d_diagram()?;
        let next = if deform::active_row(&before) == Some(i) {
            let &(ti, ts) = pending.next().ok_or_else(|| Error::TraceMismatch(format!("trace ended while row {i} is still active")))?;
            if ti != i {
                return Err(Error::TraceMismatch(format!("trace steps at row {ti}, grid is active at row {i}")));
            }
            let plain = deform::applicable_steps(&before, i)?;
            ensure_invariant!(plain == allowed, "grid allows {allowed:?} but the D cells allow {plain:?} at row {i}");
            if !allowed.contains(ts) {
                return Err(Error::TraceMismatch(format!("step {ts} not available at row {i}")));
            }
            let next = apply_step2(&g, i, ts)?;
            ensure_invariant!(
                next.d_diagram()? == deform::apply_step(&before, i, ts)?,
                "D cells diverge from the unlabeled run after {ts} at row {i}"
            );
            steps.push((i, ts, true));
            next
        } else {
            ensure_invariant!(allowed == StepSet { a: true, b: false }, "stationary step at row {i} allows {allowed:?}, expected only A:\n{g}");
            let next = apply_step2(&g, i, StepKind::A)?;
            ensure_invariant!(next.d_diagram()? == before, "forced step A at row {i} moved D cells:\n{g}");
            steps.push((i, StepKind::A, false));
            next
        };
        check_grid_invariants(&start, &next)?;
        grids.push(next.clone());
        g = next;
    }
    if let Some(&(i, s)) = pending.next() {
        return Err(Error::TraceMismatch(format!("grid terminated with trace step {s} at row {i} left over")));
    }
    let nu = deform::finalize(&g.d_diagram()?)?;
    if nu != trace.result {
        return Err(Error::TraceMismatch(format!("grid ends at {nu}, trace records {}", trace.result)));
    }
    let tableau = finalize_tableau(&g)?;
    let nu_dual = complement(&nu, rect)?;
    ensure_invariant!(tableau.shape().inner == *mu, "tableau inner shape {} differs from {mu}", tableau.shape().inner);
    ensure_invariant!(tableau.shape().outer == nu_dual, "tableau outer shape {} differs from {nu_dual}", tableau.shape().outer);
    Ok(GridRun { grids, steps, nu, tableau })
}

/// The tableau produced by replaying `trace` on the labeled grid.
pub fn replay(lambda: &Partition, mu: &Partition, rect: Rectangle, trace: &Trace) -> Result<SkewTableau> {
    Ok(replay_run(lambda, mu, rect, trace)?.tableau)
}

/// `T^(m)` read from the stage `S_m` of a grid run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageTableau {
    pub m: usize,
    /// Index of `S_m` in [`GridRun::grids`].
    pub stage: usize,
    pub tableau: SkewTableau,
}

/// Stage tableaux for `m = s, s-1, ..., 1`, where `s` is the number of parts
/// of `μ`. `S_m` is the first grid in which row `p` holds `μ_{k+m-p}`
/// unlabeled cells for every `k+m-s <= p <= k`; row `i >= m` of `T^(m)`
/// carries the numbers found in the first `μ_m` columns of row `k+m-i`.
pub fn stage_tableaux_of(run: &GridRun, mu: &Partition) -> Result<Vec<StageTableau>> {
    let Some(first) = run.grids.first() else {
        return Ok(Vec::new());
    };
    let k = first.rect.k;
    let s = mu.len();
    let mut out = Vec::with_capacity(s);
    for m in (1..=s).rev() {
        let stage = run
            .grids
            .iter()
            .position(|g| (k + m - s..=k).all(|p| g.unlabeled_in_row(p) == mu.part(k + m - p)))
            .ok_or_else(|| Error::Invariant(format!("no stage S_{m} in the run")))?;
        let g = &run.grids[stage];
        let width = mu.part(m);
        let mut rows = Vec::with_capacity(k);
        let mut outer = Vec::with_capacity(k);
        for i in 1..=k {
            let numbers: Vec<u32> = if i >= m {
                (1..=width)
                    .filter_map(|j| match g.get(k + m - i, j) {
                        CellLabel::Numbered(v) => Some(v),
                        _ => None,
                    })
                    .collect()
            } else {
                Vec::new()
            };
            outer.push(mu.part(i) + numbers.len());
            rows.push(numbers);
        }
        let outer = Partition::new(outer).map_err(|e| Error::Invariant(format!("T^({m}) is not skew: {e}")))?;
        let shape = SkewShape::new(outer, mu.clone()).map_err(|e| Error::Invariant(format!("T^({m}): {e}")))?;
        out.push(StageTableau { m, stage, tableau: SkewTableau::new(shape, rows)? });
    }
    Ok(out)
}

pub fn stage_tableaux(lambda: &Partition, mu: &Partition, rect: Rectangle, trace: &Trace) -> Result<Vec<StageTableau>> {
    let run = replay_run(lambda, mu, rect, trace)?;
    stage_tableaux_of(&run, mu)
}

/// Checks `T^(m) = T \ T_m` for every stage, that `T^(s+1)` is empty, and
/// that `T^(m-1)` extends `T^(m)` by cells numbered `i - m + 1` in row `i`
/// (with `T^(0) = T`).
pub fn check_stages(t: &SkewTableau, mu: &Partition, stages: &[StageTableau]) -> Result<()> {
    let s = mu.len();
    ensure_invariant!(stages.len() == s, "expected {s} stages, found {}", stages.len());
    ensure_invariant!(lr_oracle::truncation_remainder(t, s as i64 + 1)?.size() == 0, "T \\ T_(s+1) is not empty");
    let mut chain: Vec<SkewTableau> = vec![SkewTableau::empty(mu.clone())];
    for st in stages {
        ensure_invariant!(lr_oracle::is_semistandard(&st.tableau), "T^({}) is not semistandard", st.m);
        let rem = lr_oracle::truncation_remainder(t, st.m as i64)?;
        ensure_invariant!(rem == st.tableau, "T^({m}) differs from T \\ T_{m}:\n{}vs\n{}", st.tableau, rem, m = st.m);
        chain.push(st.tableau.clone());
    }
    chain.push(t.clone());
    // chain[idx] is T^(s + 1 - idx)
    for (idx, pair) in chain.windows(2).enumerate() {
        let (small, big) = (&pair[0], &pair[1]);
        let m = s + 1 - idx;
        let small_cells: BTreeMap<(usize, usize), u32> = small.entries().map(|(i, j, v)| ((i, j), v)).collect();
        for (i, j, v) in big.entries() {
            match small_cells.get(&(i, j)) {
                Some(&w) => ensure_invariant!(w == v, "T^({}) changes entry ({i},{j})", m - 1),
                None => ensure_invariant!(
                    v as i64 == i as i64 - m as i64 + 1,
                    "T^({}) adds {v} at ({i},{j}), expected {}",
                    m - 1,
                    i as i64 - m as i64 + 1
                ),
            }
        }
        ensure_invariant!(small_cells.len() <= big.size(), "T^({m}) is not contained in T^({})", m - 1);
    }
    Ok(())
}

/// Outcome of replaying every trace of `λ/μ`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct BijectionReport {
    pub lambda: Partition,
    pub mu: Partition,
    pub k: usize,
    pub n: usize,
    pub traces: usize,
    pub distinct_tableaux: usize,
    pub stage_checks: usize,
    /// `ν` and the number of tableaux produced for it.
    pub per_nu: Vec<(Partition, usize)>,
    pub failures: Vec<String>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Replays every trace of `λ/μ` and checks that the resulting tableaux are
/// distinct Littlewood-Richardson tableaux of shape `ν∨/μ` and weight `λ∨`
/// and that, for each `ν`, they are exactly the classical enumeration.
pub fn verify_bijection(lambda: &Partition, mu: &Partition, rect: Rectangle) -> Result<BijectionReport> {
    lambda.ensure_fits(rect)?;
    let traces = deform::enumerate_traces(lambda, mu, rect.k, None)?;
    let lambda_dual = complement(lambda, rect)?;
    let weight = Weight::from(&lambda_dual);

    let outcomes: Vec<(Trace, Result<(SkewTableau, usize)>)> = traces
        .into_par_iter()
        .map(|t| {
            let res = replay_run(lambda, mu, rect, &t).and_then(|run| {
                let stages = stage_tableaux_of(&run, mu)?;
                check_stages(&run.tableau, mu, &stages)?;
                Ok((run.tableau, stages.len()))
            });
            (t, res)
        })
        .collect();

    let mut report = BijectionReport { lambda: lambda.clone(), mu: mu.clone(), k: rect.k, n: rect.n(), traces: outcomes.len(), ..Default::default() };
    let mut seen = HashSet::new();
    let mut by_nu: BTreeMap<Partition, Vec<SkewTableau>> = BTreeMap::new();
    for (trace, res) in outcomes {
        let json = serde_json::to_string(&trace).unwrap_or_default();
        match res {
            Err(e) => report.failures.push(format!("trace {json}: {e}")),
            Ok((t, nstages)) => {
                report.stage_checks += nstages;
                if !lr_oracle::is_lr_tableau(&t) || !matches!(lr_oracle::is_lr_via_truncations(&t), Ok(true)) {
                    report.failures.push(format!("trace {json}: output is not an LR tableau:\n{t}"));
                }
                if t.weight() != weight {
                    report.failures.push(format!("trace {json}: weight {:?} differs from {lambda_dual}", t.weight().counts()));
                }
                if !seen.insert(t.clone()) {
                    report.failures.push(format!("trace {json}: tableau produced twice:\n{t}"));
                }
                by_nu.entry(trace.result.clone()).or_default().push(t);
            }
        }
    }
    report.distinct_tableaux = seen.len();

    let size = lambda.size() - mu.size();
    for nu in rect.partitions().into_iter().filter(|p| p.size() == size) {
        let shape = SkewShape { outer: complement(&nu, rect)?, inner: mu.clone() };
        let mut got = by_nu.remove(&nu).unwrap_or_default();
        got.sort();
        let expected = if contains(&shape.outer, mu) { lr_oracle::enumerate_lr_tableaux(&shape, &weight)? } else { Vec::new() };
        if got != expected {
            report.failures.push(format!("nu = {nu}: replay gives {} tableaux, classical enumeration gives {}", got.len(), expected.len()));
        }
        if !got.is_empty() {
            report.per_nu.push((nu, got.len()));
        }
    }
    for (nu, _) in by_nu {
        report.failures.push(format!("trace ends at {nu}, which does not fit the rectangle"));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use CellLabel::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn r(k: usize, w: usize) -> Rectangle {
        Rectangle::new(k, w).unwrap()
    }

    fn small() -> LabeledGrid {
        init_grid(&p("2,1"), &p("1"), r(2, 2)).unwrap()
    }

    #[test]
    fn initial_grids() {
        let g = init_grid(&p("4,4,3,2"), &p("2,1"), r(4, 4)).unwrap();
        let numbered: Vec<((usize, usize), u32)> = (1..=4)
            .flat_map(|i| (1..=4).map(move |j| (i, j)))
            .filter_map(|(i, j)| match g.get(i, j) {
                Numbered(v) => Some(((i, j), v)),
                _ => None,
            })
            .collect();
        assert_eq!(numbered, vec![((3, 4), 2), ((4, 3), 1), ((4, 4), 1)]);
        let full = init_grid(&p("3,3"), &p(""), r(2, 3)).unwrap();
        assert!(full.cells().iter().flatten().all(|c| *c == D));
        assert_eq!(small().cells(), &[vec![Unlabeled, D], vec![D, Numbered(1)]]);
        assert!(init_grid(&p("2"), &p("1,1"), r(2, 2)).is_err());
        assert!(init_grid(&p("3"), &p(""), r(2, 2)).is_err());
    }

    #[test]
    fn grid_steps() {
        let g = small();
        assert_eq!(active_row2(&g), Some(2));
        assert_eq!(applicable_steps2(&g, 2).unwrap(), StepSet { a: true, b: true });
        let ga = apply_step2(&g, 2, StepKind::A).unwrap();
        assert_eq!(ga.cells(), &[vec![D, D], vec![Unlabeled, Numbered(1)]]);
        assert_eq!(active_row2(&ga), None);
        let gb = apply_step2(&g, 2, StepKind::B).unwrap();
        assert_eq!(gb.cells(), &[vec![Unlabeled, D], vec![Numbered(1), D]]);
        assert_eq!(applicable_steps2(&gb, 2).unwrap(), StepSet { a: true, b: false });
        let gba = apply_step2(&gb, 2, StepKind::A).unwrap();
        assert_eq!(gba.cells(), &[vec![Numbered(1), D], vec![Unlabeled, D]]);
        assert_eq!(active_row2(&gba), None);
        assert_eq!(active_row2(&init_grid(&p("2,2"), &p(""), r(2, 2)).unwrap()), None);
        assert!(matches!(applicable_steps2(&g, 1), Err(Error::NotActiveRow { .. })));
    }

    #[test]
    fn row_without_d_allows_only_a() {
        // λ = μ: numbers under unlabeled cells, no D anywhere
        let g = init_grid(&p("1"), &p("1"), r(2, 2)).unwrap();
        assert_eq!(active_row2(&g), Some(2));
        assert_eq!(applicable_steps2(&g, 2).unwrap(), StepSet { a: true, b: false });
    }

    #[test]
    fn terminal_tableaux() {
        let g = small();
        let ta = finalize_tableau(&apply_step2(&g, 2, StepKind::A).unwrap()).unwrap();
        assert_eq!(ta.shape(), &"2/1".parse::<SkewShape>().unwrap());
        assert_eq!(ta.get(1, 2), Some(1));
        let gba = apply_step2(&apply_step2(&g, 2, StepKind::B).unwrap(), 2, StepKind::A).unwrap();
        let tb = finalize_tableau(&gba).unwrap();
        assert_eq!(tb.shape(), &"1,1/1".parse::<SkewShape>().unwrap());
        assert_eq!(tb.get(2, 1), Some(1));
        let full = init_grid(&p("2,2"), &p(""), r(2, 2)).unwrap();
        assert_eq!(finalize_tableau(&full).unwrap().size(), 0);
        assert!(matches!(finalize_tableau(&g), Err(Error::NotTerminal(2))));
    }

    #[test]
    fn replays() {
        let traces = deform::enumerate_traces(&p("2,1"), &p("1"), 2, None).unwrap();
        let ta = replay(&p("2,1"), &p("1"), r(2, 2), &traces[0]).unwrap();
        assert_eq!(ta.shape(), &"2/1".parse::<SkewShape>().unwrap());
        let run = replay_run(&p("2,1"), &p("1"), r(2, 2), &traces[1]).unwrap();
        assert_eq!(run.steps, vec![(2, StepKind::B, true), (2, StepKind::A, false)]);
        assert_eq!(run.tableau.shape(), &"1,1/1".parse::<SkewShape>().unwrap());

        let same = deform::enumerate_traces(&p("1"), &p("1"), 2, None).unwrap();
        let t = replay(&p("1"), &p("1"), r(2, 2), &same[0]).unwrap();
        assert_eq!(t.shape(), &"2,2/1".parse::<SkewShape>().unwrap());

        let mut bad = traces[0].clone();
        bad.steps.push((2, StepKind::A));
        assert!(matches!(replay(&p("2,1"), &p("1"), r(2, 2), &bad), Err(Error::TraceMismatch(_))));
    }

    #[test]
    fn stages() {
        let traces = deform::enumerate_traces(&p("2,1"), &p("1"), 2, None).unwrap();
        let st = stage_tableaux(&p("2,1"), &p("1"), r(2, 2), &traces[0]).unwrap();
        assert_eq!(st.len(), 1);
        assert_eq!(st[0].tableau.size(), 0);
        let none = stage_tableaux(&p("2,1"), &p(""), r(2, 2), &deform::enumerate_traces(&p("2,1"), &p(""), 2, None).unwrap()[0]).unwrap();
        assert!(none.is_empty());

        let lam = p("4,4,3,2");
        let mu = p("2,1");
        for t in deform::enumerate_traces(&lam, &mu, 4, None).unwrap() {
            let run = replay_run(&lam, &mu, r(4, 4), &t).unwrap();
            let st = stage_tableaux_of(&run, &mu).unwrap();
            assert_eq!(st.len(), 2);
            check_stages(&run.tableau, &mu, &st).unwrap();
        }
    }

    #[test]
    fn bijection_worked_example() {
        let rep = verify_bijection(&p("4,4,3,2"), &p("2,1"), r(4, 4)).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.traces, 8);
        assert_eq!(rep.distinct_tableaux, 8);
        let counts: BTreeMap<_, _> = rep.per_nu.iter().cloned().collect();
        assert_eq!(counts[&p("4,3,2,1")], 2);
        assert_eq!(counts.len(), 7);

        let rep = verify_bijection(&p("2,1"), &p("1"), r(2, 2)).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.traces, 2);
        let rep = verify_bijection(&p("2,2"), &p("2,2"), r(2, 2)).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.traces, 1);
    }

    #[test]
    fn grid_json() {
        let s = serde_json::to_string(&small().cells()).unwrap();
        assert_eq!(s, r#"[["u","d"],["d",1]]"#);
        let back: Vec<Vec<CellLabel>> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, small().cells());
        assert_eq!(small().render(), ".#\n#1\n");
    }
}
