//! Specht modules `V^D = C[Σ_n] C(D) R(D)` of arbitrary diagrams at small
//! `n`, the homomorphism `T: V^D -> V^{D^A}` and the checks that tie their
//! dimensions to the deformation.
//!
//! Boxes are labelled `0..n` by a [`BoxOrdering`]; a permutation acts on
//! labels, and products compose right to left.

pub mod algebra;
pub mod perm;
pub mod rank;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::deform::{self, Counter, Interval, IntervalDiagram, StepKind};
use crate::error::{ensure_invariant, Error, Result};
use crate::shapes::{Partition, SkewShape};

pub use algebra::GroupAlgebraElement;
pub use perm::Perm;
pub use rank::{ExactRank, ModularRank};

/// Largest `n` handled with exact ranks.
pub const EXACT_BOUND: usize = 6;
/// Largest `n` handled at all.
pub const MODULAR_BOUND: usize = 7;

pub type Cell = (usize, usize);

/// A diagram with a fixed labelling of its boxes: `boxes()[x]` carries label `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BoxOrdering {
    boxes: Vec<Cell>,
}

impl BoxOrdering {
    pub fn new(boxes: Vec<Cell>) -> Result<Self> {
        let mut seen = HashSet::new();
        for &(r, c) in &boxes {
            if r == 0 || c == 0 {
                return Err(Error::BadDiagram(format!("cell ({r},{c}) is not 1-based")));
            }
            if !seen.insert((r, c)) {
                return Err(Error::BadDiagram(format!("cell ({r},{c}) listed twice")));
            }
        }
        Ok(BoxOrdering { boxes })
    }

    /// Labels in row-major order.
    pub fn row_major(cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let mut boxes: Vec<Cell> = cells.into_iter().collect();
        boxes.sort_unstable();
        Self::new(boxes)
    }

    pub fn from_interval(d: &IntervalDiagram) -> Self {
        BoxOrdering { boxes: d.boxes() }
    }

    pub fn from_skew(s: &SkewShape) -> Self {
        BoxOrdering { boxes: s.cells() }
    }

    pub fn n(&self) -> usize {
        self.boxes.len()
    }

    pub fn boxes(&self) -> &[Cell] {
        &self.boxes
    }

    pub fn cells(&self) -> BTreeSet<Cell> {
        self.boxes.iter().copied().collect()
    }

    pub fn label_of(&self, cell: Cell) -> Option<usize> {
        self.boxes.iter().position(|&b| b == cell)
    }

    fn rows(&self) -> usize {
        self.boxes.iter().map(|b| b.0).max().unwrap_or(0)
    }

    fn blocks(&self, key: impl Fn(Cell) -> usize) -> Vec<Vec<usize>> {
        let mut m: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (x, &b) in self.boxes.iter().enumerate() {
            m.entry(key(b)).or_default().push(x);
        }
        m.into_values().collect()
    }

    pub fn row_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks(|b| b.0)
    }

    pub fn column_blocks(&self) -> Vec<Vec<usize>> {
        self.blocks(|b| b.1)
    }

    /// The diagram as rows of intervals, if every row is convex.
    pub fn to_interval(&self) -> Result<IntervalDiagram> {
        let rows = (1..=self.rows())
            .map(|i| {
                let cols: Vec<usize> = self.cells().into_iter().filter(|b| b.0 == i).map(|b| b.1).collect();
                match (cols.first(), cols.last()) {
                    (Some(&l), Some(&r)) if r + 1 - l == cols.len() => Ok(Some(Interval { l, r })),
                    (Some(_), _) => Err(Error::BadDiagram(format!("row {i} is not convex"))),
                    _ => Ok(None),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntervalDiagram::new(rows))
    }

    /// Drops empty rows and columns, keeping relative order. Also returns the
    /// new index of every old row that survives.
    pub fn compress(&self) -> (BoxOrdering, HashMap<usize, usize>) {
        let rows: BTreeSet<usize> = self.boxes.iter().map(|b| b.0).collect();
        let cols: BTreeSet<usize> = self.boxes.iter().map(|b| b.1).collect();
        let rmap: HashMap<usize, usize> = rows.iter().enumerate().map(|(k, &r)| (r, k + 1)).collect();
        let cmap: HashMap<usize, usize> = cols.iter().enumerate().map(|(k, &c)| (c, k + 1)).collect();
        let boxes = self.boxes.iter().map(|&(r, c)| (rmap[&r], cmap[&c])).collect();
        (BoxOrdering { boxes }, rmap)
    }

    /// A representative of the diagram up to row and column permutations,
    /// which leave the Specht module unchanged. Equal keys imply equivalent
    /// diagrams; the converse may fail.
    pub fn canonical_key(&self) -> Vec<Cell> {
        let mut cells: Vec<Cell> = self.compress().0.cells().into_iter().collect();
        for _ in 0..8 {
            let before = cells.clone();
            cells = sort_lines(&cells, false);
            cells = sort_lines(&cells, true);
            if cells == before {
                break;
            }
        }
        cells.sort_unstable();
        cells
    }
}

fn sort_lines(cells: &[Cell], by_column: bool) -> Vec<Cell> {
    let line = |c: &Cell| if by_column { c.1 } else { c.0 };
    let other = |c: &Cell| if by_column { c.0 } else { c.1 };
    let mut content: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in cells {
        content.entry(line(c)).or_default().push(other(c));
    }
    let mut order: Vec<(usize, Vec<usize>)> = content
        .into_iter()
        .map(|(k, mut v)| {
            v.sort_unstable();
            (k, v)
        })
        .collect();
    order.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| a.1.cmp(&b.1)));
    let rank: HashMap<usize, usize> = order.iter().enumerate().map(|(i, (k, _))| (*k, i + 1)).collect();
    cells.iter().map(|c| if by_column { (c.0, rank[&c.1]) } else { (rank[&c.0], c.1) }).collect()
}

impl fmt::Display for BoxOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.boxes.iter().map(|(r, c)| format!("({r},{c})")).collect();
        f.write_str(&s.join(","))
    }
}

/// Accepts a skew shape `λ/μ`, a partition such as `3,2`, or a list of
/// cells `(1,2),(2,1)`; cell lists keep their order as the labelling.
impl FromStr for BoxOrdering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.contains('/') || !t.starts_with('(') {
            return Ok(BoxOrdering::from_skew(&t.parse::<SkewShape>()?));
        }
        let bad = || Error::BadDiagram(format!("cannot read cell list {s:?}"));
        let mut boxes = Vec::new();
        for chunk in t.split(')').filter(|c| !c.is_empty()) {
            let chunk = chunk.trim_start_matches(',').strip_prefix('(').ok_or_else(bad)?;
            let (r, c) = chunk.split_once(',').ok_or_else(bad)?;
            boxes.push((r.parse().map_err(|_| bad())?, c.parse().map_err(|_| bad())?));
        }
        BoxOrdering::new(boxes)
    }
}

fn check_bound(n: usize, bound: usize) -> Result<()> {
    if n > bound {
        return Err(Error::TooLarge { n, bound });
    }
    Ok(())
}

/// `C(D) R(D)` with the signed column sum on the left.
pub fn young_symmetrizer(o: &BoxOrdering) -> Result<GroupAlgebraElement> {
    check_bound(o.n(), MODULAR_BOUND)?;
    let n = o.n();
    let cols = perm::young_subgroup(n, &o.column_blocks());
    let rows = perm::young_subgroup(n, &o.row_blocks());
    GroupAlgebraElement::sum_of(n, &cols, true)?.mul(&GroupAlgebraElement::sum_of(n, &rows, false)?)
}

/// One representative per class of `items` under `key`, first or last seen.
fn representatives<K: std::hash::Hash + Eq>(items: impl Iterator<Item = Perm>, key: impl Fn(&Perm) -> K, last: bool) -> Vec<Perm> {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut reps: Vec<Perm> = Vec::new();
    for p in items {
        match index.get(&key(&p)) {
            Some(&i) if last => reps[i] = p,
            Some(_) => {}
            None => {
                index.insert(key(&p), reps.len());
                reps.push(p);
            }
        }
    }
    reps
}

/// Representatives `σ` of the left cosets `σ C_D`; `σ C(D) R(D)` for these
/// span `V^D`.
fn column_coset_reps(o: &BoxOrdering) -> Vec<Perm> {
    let n = o.n();
    let col: Vec<usize> = o.boxes.iter().map(|b| b.1).collect();
    representatives(
        Perm::all(n).into_iter(),
        |s| {
            let inv = s.inverse();
            (0..n).map(|x| col[inv.apply(x)]).collect::<Vec<_>>()
        },
        false,
    )
}

/// Representatives `π` of the left cosets `π R_D`; anything right-invariant
/// under `R_D` is determined by its values there.
fn row_coset_reps(o: &BoxOrdering) -> Vec<Perm> {
    let n = o.n();
    let row: Vec<usize> = o.boxes.iter().map(|b| b.0).collect();
    representatives(
        Perm::all(n).into_iter(),
        |p| {
            let inv = p.inverse();
            (0..n).map(|x| row[inv.apply(x)]).collect::<Vec<_>>()
        },
        false,
    )
}

/// Spanning rows of `V^D` in coordinates compressed to the cosets `π R_D`.
struct CompressedSpan {
    col_reps: Vec<Perm>,
    rows: Vec<Vec<i64>>,
}

impl CompressedSpan {
    fn build(o: &BoxOrdering) -> Result<Self> {
        let e = young_symmetrizer(o)?.to_dense();
        let col_reps = row_coset_reps(o);
        let rows = column_coset_reps(o)
            .par_iter()
            .map(|s| {
                let inv = s.inverse();
                col_reps.iter().map(|p| e[inv.compose(p).rank()]).collect()
            })
            .collect();
        Ok(CompressedSpan { col_reps, rows })
    }

    fn project(&self, x: &GroupAlgebraElement) -> Vec<i64> {
        self.col_reps.iter().map(|p| x.coeff(p)).collect()
    }

    fn exact(&self) -> ExactRank {
        let mut acc = ExactRank::new(self.col_reps.len());
        for r in &self.rows {
            if acc.rank() == self.col_reps.len() {
                break;
            }
            acc.insert(r);
        }
        acc
    }
}

/// `dim V^D`, by exact rank. Requires `n <= 6`.
pub fn specht_dimension(o: &BoxOrdering) -> Result<u64> {
    check_bound(o.n(), EXACT_BOUND)?;
    if o.n() == 0 {
        return Ok(1);
    }
    Ok(CompressedSpan::build(o)?.exact().rank() as u64)
}

/// `dim V^D` computed modulo the prime `p`: a lower bound that is exact for
/// all but finitely many primes. Allows `n <= 7`.
pub fn specht_dimension_mod(o: &BoxOrdering, p: u64) -> Result<u64> {
    check_bound(o.n(), MODULAR_BOUND)?;
    if !rank::is_prime(p) {
        return Err(Error::BadDiagram(format!("modulus {p} is not prime")));
    }
    if o.n() == 0 {
        return Ok(1);
    }
    let span = CompressedSpan::build(o)?;
    let mut acc = ModularRank::new(span.col_reps.len(), p);
    for r in &span.rows {
        acc.insert(r);
    }
    Ok(acc.rank() as u64)
}

/// [`specht_dimension_mod`] at a random 62-bit prime. Returns the
/// dimension and the prime used.
pub fn specht_dimension_random(o: &BoxOrdering) -> Result<(u64, u64)> {
    let p = rank::random_prime_62(&mut rand::thread_rng());
    Ok((specht_dimension_mod(o, p)?, p))
}

/// `n! / Π hooks`.
pub fn hook_length_dimension(nu: &Partition) -> u128 {
    let cols = nu.column_lengths();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for k in 1..=nu.size() {
        num *= k;
    }
    for (i, &len) in nu.parts().iter().enumerate() {
        for (j, &col) in cols.iter().enumerate().take(len) {
            den *= (len - j - 1) + (col - i - 1) + 1;
        }
    }
    (num / den).to_u128().expect("hook length dimension beyond 128 bits")
}

/// Thread-safe memo of exact dimensions keyed by [`BoxOrdering::canonical_key`].
#[derive(Debug, Default)]
pub struct DimensionCache {
    map: Mutex<HashMap<Vec<Cell>, u64>>,
}

impl DimensionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dimension(&self, o: &BoxOrdering) -> Result<u64> {
        let key = o.canonical_key();
        if let Some(&d) = self.map.lock().expect("cache lock").get(&key) {
            return Ok(d);
        }
        let d = specht_dimension(o)?;
        self.map.lock().expect("cache lock").insert(key, d);
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `D^A` for rows `i` and `i - 1`: a box of row `i` moves up whenever the
/// cell above it is free. Labels travel with their boxes.
pub fn transport_a(o: &BoxOrdering, i: usize) -> Result<BoxOrdering> {
    if i < 2 || (o.n() > 0 && i > o.rows()) {
        return Err(Error::NotActiveRow { row: i, active: None });
    }
    let cells = o.cells();
    let boxes = o.boxes.iter().map(|&(r, c)| if r == i && !cells.contains(&(i - 1, c)) { (i - 1, c) } else { (r, c) }).collect();
    BoxOrdering::new(boxes)
}

/// `D^B` at row `i`: each row `i' >= i` starting in the column of row `i`
/// moves its first box just past its last. Labels travel with their boxes.
pub fn transport_b(o: &BoxOrdering, i: usize) -> Result<BoxOrdering> {
    let d = o.to_interval()?;
    if !deform::applicable_steps(&d, i)?.b {
        return Err(Error::StepNotApplicable { row: i, step: StepKind::B });
    }
    let li = d.l(i);
    let moves: HashMap<Cell, Cell> = (i..=d.k()).filter(|&ip| d.l(ip) == li).map(|ip| ((ip, li), (ip, d.r(ip) + 1))).collect();
    let out = BoxOrdering::new(o.boxes.iter().map(|b| moves.get(b).copied().unwrap_or(*b)).collect())?;
    let expected: BTreeSet<Cell> = deform::apply_step(&d, i, StepKind::B)?.boxes().into_iter().collect();
    ensure_invariant!(out.cells() == expected, "transported boxes disagree with step B at row {i}");
    Ok(out)
}

/// `Σ_{σ∈Y} σ` for `Y` right coset representatives of `R_D ∩ R_{D^A}` in
/// `R_{D^A}`, taking the first or the last element of each coset met while
/// listing `R_{D^A}`.
fn transversal_sum(o: &BoxOrdering, oa: &BoxOrdering, last: bool) -> Result<GroupAlgebraElement> {
    let n = o.n();
    let class: Vec<(usize, usize)> = (0..n).map(|x| (o.boxes[x].0, oa.boxes[x].0)).collect();
    let group = perm::young_subgroup(n, &oa.row_blocks());
    let reps = representatives(group.into_iter(), |g| (0..n).map(|x| class[g.apply(x)]).collect::<Vec<_>>(), last);
    GroupAlgebraElement::sum_of(n, &reps, false)
}

/// Right multiplication by `Σ_{σ∈Y} σ`, from `V^D` to `V^{D^A}`.
#[derive(Clone, Debug)]
pub struct TMap {
    pub source: BoxOrdering,
    pub target: BoxOrdering,
    pub row: usize,
    pub y: GroupAlgebraElement,
    /// `C(D) R(D)`.
    pub generator: GroupAlgebraElement,
    /// `C(D) R(D) Σ_Y`.
    pub image_generator: GroupAlgebraElement,
    /// Whether the image generator equals `C(D^A) R(D^A)` on the nose.
    pub identity_holds: bool,
    pub dim_source: u64,
    pub dim_target: u64,
    pub rank: u64,
}

impl TMap {
    pub fn apply(&self, x: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
        x.mul(&self.y)
    }

    pub fn kernel_dim(&self) -> u64 {
        self.dim_source - self.rank
    }
}

fn full_rows(x: &GroupAlgebraElement, reps: &[Perm]) -> Vec<Vec<i64>> {
    reps.par_iter().map(|s| x.left_mul(s).to_dense()).collect()
}

/// Builds `T` for the rows `i - 1, i` of `D` and checks that its image lies
/// in `V^{D^A}`.
pub fn t_map(o: &BoxOrdering, i: usize) -> Result<TMap> {
    t_map_cached(o, i, &DimensionCache::new())
}

pub fn t_map_cached(o: &BoxOrdering, i: usize, cache: &DimensionCache) -> Result<TMap> {
    check_bound(o.n(), EXACT_BOUND)?;
    if let Ok(d) = o.to_interval() {
        if deform::active_row(&d) == Some(i) && !deform::applicable_steps(&d, i)?.a {
            return Err(Error::StepNotApplicable { row: i, step: StepKind::A });
        }
    }
    let oa = transport_a(o, i)?;
    let e = young_symmetrizer(o)?;
    let ea = young_symmetrizer(&oa)?;
    let y = transversal_sum(o, &oa, false)?;
    let ey = e.mul(&y)?;
    let identity_holds = ey == ea;
    let dim_source = cache.dimension(o)?;
    let dim_target = cache.dimension(&oa)?;
    let rank = if identity_holds {
        dim_target
    } else {
        let reps = column_coset_reps(o);
        let width = perm::factorial(o.n());
        let mut target = ExactRank::new(width);
        for r in full_rows(&ea, &column_coset_reps(&oa)) {
            target.insert(&r);
        }
        let mut image = ExactRank::new(width);
        for r in full_rows(&ey, &reps) {
            ensure_invariant!(target.contains(&r), "image of T escapes V^(D^A) for {o} at row {i}");
            image.insert(&r);
        }
        image.rank() as u64
    };
    Ok(TMap { source: o.clone(), target: oa, row: i, y, generator: e, image_generator: ey, identity_holds, dim_source, dim_target, rank })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct KernelReport {
    pub diagram: Vec<Cell>,
    pub row: usize,
    pub branch: bool,
    pub note: Option<String>,
    pub dim_d: u64,
    pub dim_a: u64,
    pub dim_b: u64,
    pub image_rank: u64,
    pub kernel_dim: u64,
    pub identity_holds: bool,
    pub transversal_independent: bool,
    pub b_contained: bool,
    pub b_in_kernel: bool,
    pub failures: Vec<String>,
}

impl KernelReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// At a branch point: `V^{D^B} ⊆ V^D`, `V^{D^B} ⊆ ker T`,
/// `dim ker T = dim V^{D^B}` and `dim V^D = dim V^{D^A} + dim V^{D^B}`.
pub fn verify_kernel_decomposition(o: &BoxOrdering, i: usize) -> Result<KernelReport> {
    verify_kernel_decomposition_cached(o, i, &DimensionCache::new())
}

pub fn verify_kernel_decomposition_cached(o: &BoxOrdering, i: usize, cache: &DimensionCache) -> Result<KernelReport> {
    check_bound(o.n(), EXACT_BOUND)?;
    let d = o.to_interval()?;
    let steps = deform::applicable_steps(&d, i)?;
    let mut rep = KernelReport { diagram: o.boxes.clone(), row: i, ..Default::default() };
    if !steps.is_branch() {
        rep.note = Some("not a branch point".to_string());
        return Ok(rep);
    }
    rep.branch = true;
    let tm = t_map_cached(o, i, cache)?;
    let ob = transport_b(o, i)?;
    let eb = young_symmetrizer(&ob)?;
    rep.dim_d = tm.dim_source;
    rep.dim_a = tm.dim_target;
    rep.dim_b = cache.dimension(&ob)?;
    rep.image_rank = tm.rank;
    rep.kernel_dim = tm.kernel_dim();
    rep.identity_holds = tm.identity_holds;

    let y_last = transversal_sum(o, &tm.target, true)?;
    rep.transversal_independent = tm.generator.mul(&y_last)? == tm.image_generator;

    ensure_invariant!(o.row_blocks() == ob.row_blocks(), "step B changed the row groups of {o}");
    let span = CompressedSpan::build(o)?;
    rep.b_contained = span.exact().contains(&span.project(&eb));
    rep.b_in_kernel = eb.mul(&tm.y)?.is_zero();

    let mut fail = |ok: bool, msg: String| {
        if !ok {
            rep.failures.push(msg);
        }
    };
    fail(tm.identity_holds, "C(D)R(D)ΣY differs from C(D^A)R(D^A)".to_string());
    fail(rep.transversal_independent, "T depends on the choice of transversal".to_string());
    fail(rep.b_contained, "V^(D^B) is not contained in V^D".to_string());
    fail(rep.b_in_kernel, "V^(D^B) is not in the kernel of T".to_string());
    fail(rep.kernel_dim == rep.dim_b, format!("dim ker T = {} but dim V^(D^B) = {}", rep.kernel_dim, rep.dim_b));
    fail(rep.dim_d == rep.dim_a + rep.dim_b, format!("{} != {} + {}", rep.dim_d, rep.dim_a, rep.dim_b));
    Ok(rep)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CorollaryReport {
    pub diagram: Vec<Cell>,
    pub dimension: u64,
    pub path_sum: u128,
    /// `(ν, paths ending at ν, f^ν)`.
    pub paths: Vec<(Partition, u64, u128)>,
    /// The forced step and the dimension after it, when only one step applies.
    pub single_step: Option<(StepKind, u64)>,
    pub failures: Vec<String>,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `dim V^D = Σ_paths f^ν` over all runs from `D`, plus dimension equality
/// across a step whenever the step is forced.
pub fn verify_corollary(d: &IntervalDiagram) -> Result<CorollaryReport> {
    verify_corollary_cached(d, &mut Counter::new(), &DimensionCache::new())
}

pub fn verify_corollary_cached(d: &IntervalDiagram, counter: &mut Counter, cache: &DimensionCache) -> Result<CorollaryReport> {
    check_bound(d.size(), EXACT_BOUND)?;
    if !deform::is_almost_skew(d) {
        return Err(Error::BadDiagram(format!("{d} is not almost skew")));
    }
    let o = BoxOrdering::from_interval(d);
    let mut rep = CorollaryReport { diagram: o.boxes.clone(), ..Default::default() };
    rep.dimension = cache.dimension(&o)?;
    for (nu, c) in counter.table(d)?.iter() {
        let f = hook_length_dimension(nu);
        rep.path_sum += c as u128 * f;
        rep.paths.push((nu.clone(), c, f));
    }
    if rep.path_sum != rep.dimension as u128 {
        let paths: Vec<String> = rep.paths.iter().map(|(nu, c, f)| format!("{c} x {nu} (f = {f})")).collect();
        rep.failures.push(format!("dim V^D = {} but paths give {}: {}", rep.dimension, rep.path_sum, paths.join(", ")));
    }
    if let Some(i) = deform::active_row(d) {
        let steps = deform::applicable_steps(d, i)?;
        if !steps.is_branch() {
            let s = steps.iter().next().ok_or_else(|| Error::Invariant(format!("no step applies to {d}")))?;
            let after = cache.dimension(&BoxOrdering::from_interval(&deform::apply_step(d, i, s)?))?;
            if after != rep.dimension {
                rep.failures.push(format!("forced step {s} at row {i} changes the dimension from {} to {after}", rep.dimension));
            }
            rep.single_step = Some((s, after));
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SkewReport {
    pub lambda: Partition,
    pub mu: Partition,
    pub dimension: u64,
    pub expected: u128,
    /// `(ν, c^λ_{μν}, f^ν)`.
    pub terms: Vec<(Partition, u64, u128)>,
}

impl SkewReport {
    pub fn passed(&self) -> bool {
        self.dimension as u128 == self.expected
    }
}

/// `dim V^{λ/μ} = Σ_ν c^λ_{μν} f^ν`.
pub fn skew_module_check(lambda: &Partition, mu: &Partition) -> Result<SkewReport> {
    let shape = SkewShape::new(lambda.clone(), mu.clone())?;
    check_bound(shape.size(), EXACT_BOUND)?;
    let k = lambda.len().max(1);
    let mut rep = SkewReport { lambda: lambda.clone(), mu: mu.clone(), ..Default::default() };
    rep.dimension = specht_dimension(&BoxOrdering::from_skew(&shape))?;
    for (nu, c) in deform::lr_coefficients(lambda, mu, k)?.iter() {
        let f = hook_length_dimension(nu);
        rep.expected += c as u128 * f;
        rep.terms.push((nu.clone(), c, f));
    }
    Ok(rep)
}

/// Outcome of checking every state of every run over a family of shapes.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub shapes: usize,
    pub states: usize,
    pub branch_points: usize,
    pub distinct_dimensions: usize,
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs [`verify_corollary`] on every intermediate diagram of every run on
/// the given skew shapes and [`verify_kernel_decomposition`] at every branch
/// point. Diagrams are deduplicated; branch points up to empty rows and
/// columns.
pub fn sweep(shapes: &[SkewShape]) -> Result<SweepReport> {
    let mut states: HashSet<IntervalDiagram> = HashSet::new();
    for s in shapes {
        check_bound(s.size(), EXACT_BOUND)?;
        let start = deform::from_skew(s, s.outer.len().max(1))?;
        states.extend(deform::reachable_states(&start)?);
    }
    let mut branches: HashMap<(Vec<Cell>, usize), BoxOrdering> = HashMap::new();
    for d in &states {
        if let Some(i) = deform::active_row(d) {
            if deform::applicable_steps(d, i)?.is_branch() {
                let (c, rmap) = BoxOrdering::from_interval(d).compress();
                branches.entry((c.boxes.clone(), rmap[&i])).or_insert(c);
            }
        }
    }
    let cache = DimensionCache::new();
    let states: Vec<IntervalDiagram> = states.into_iter().collect();

    let mut failures: Vec<String> = states
        .par_iter()
        .map_init(Counter::new, |counter, d| match verify_corollary_cached(d, counter, &cache) {
            Ok(r) if r.passed() => None,
            Ok(r) => Some(format!("{d}: {}", r.failures.join("; "))),
            Err(e) => Some(format!("{d}: {e}")),
        })
        .flatten()
        .collect();
    let mut branch_list: Vec<(&(Vec<Cell>, usize), &BoxOrdering)> = branches.iter().collect();
    branch_list.sort_by(|a, b| a.0.cmp(b.0));
    failures.extend(
        branch_list
            .par_iter()
            .map(|((_, i), o)| match verify_kernel_decomposition_cached(o, *i, &cache) {
                Ok(r) if r.passed() && r.branch => None,
                Ok(r) => Some(format!("branch {o} row {i}: {}", r.failures.join("; "))),
                Err(e) => Some(format!("branch {o} row {i}: {e}")),
            })
            .flatten()
            .collect::<Vec<_>>(),
    );
    failures.sort();
    Ok(SweepReport { shapes: shapes.len(), states: states.len(), branch_points: branches.len(), distinct_dimensions: cache.len(), failures })
}
