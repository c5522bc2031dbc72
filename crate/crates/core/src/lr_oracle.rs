//! The classical tableau count for Littlewood-Richardson coefficients.
//!
//! `c^λ_{μν}` is the number of semistandard tableaux of shape `λ/μ` and
//! weight `ν` whose reverse reading word is a ballot sequence. Nothing here
//! depends on the deformation engine, so it serves as an independent oracle.
//!
//! Also here: the truncations `T_m` (cells whose entry exceeds `row - m`),
//! giving a second characterization of the same tableaux.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ensure_invariant, Error, Result};
use crate::shapes::{contains, Partition, SkewShape};

/// Multiplicities `(α_1, α_2, ...)` of the entries 1, 2, ...
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    counts: Vec<usize>,
}

impl Weight {
    pub fn new(mut counts: Vec<usize>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        Weight { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `α_v`, zero past the end.
    pub fn count(&self, v: usize) -> usize {
        if v == 0 {
            return 0;
        }
        self.counts.get(v - 1).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn is_weakly_decreasing(&self) -> bool {
        self.counts.windows(2).all(|w| w[0] >= w[1])
    }
}

impl From<&Partition> for Weight {
    fn from(p: &Partition) -> Self {
        Weight::new(p.parts().to_vec())
    }
}

/// A filling of a skew shape with positive integers.
///
/// `rows[i - 1]` holds the entries of row `i` from left to right, covering
/// columns `inner_i + 1 ..= outer_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkewTableau {
    shape: SkewShape,
    rows: Vec<Vec<u32>>,
}

impl SkewTableau {
    pub fn new(shape: SkewShape, rows: Vec<Vec<u32>>) -> Result<Self> {
        let mut rows = rows;
        while rows.len() > shape.outer.len() && rows.last().is_some_and(Vec::is_empty) {
            rows.pop();
        }
        rows.resize(shape.outer.len(), Vec::new());
        for (idx, row) in rows.iter().enumerate() {
            let (lo, hi) = shape.row_span(idx + 1);
            if row.len() != hi - lo {
                return Err(Error::BadTableau(format!("row {} of {shape} has {} cells but {} entries", idx + 1, hi - lo, row.len())));
            }
            if row.contains(&0) {
                return Err(Error::BadTableau("entries must be positive".into()));
            }
        }
        Ok(SkewTableau { shape, rows })
    }

    /// Builds a tableau from `(row, column, entry)` triples.
    pub fn from_cells(shape: SkewShape, cells: &[(usize, usize, u32)]) -> Result<Self> {
        let mut rows: Vec<Vec<Option<u32>>> = (1..=shape.outer.len()).map(|i| vec![None; shape.outer.part(i) - shape.inner.part(i)]).collect();
        for &(i, j, v) in cells {
            if !shape.contains_cell(i, j) {
                return Err(Error::BadTableau(format!("cell ({i},{j}) is not in {shape}")));
            }
            let slot = &mut rows[i - 1][j - shape.inner.part(i) - 1];
            if slot.replace(v).is_some() {
                return Err(Error::BadTableau(format!("cell ({i},{j}) filled twice")));
            }
        }
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().collect::<Option<Vec<u32>>>())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::BadTableau("some cell has no entry".into()))?;
        SkewTableau::new(shape, rows)
    }

    pub fn empty(shape_of: Partition) -> Self {
        let rows = vec![Vec::new(); shape_of.len()];
        SkewTableau { shape: SkewShape { outer: shape_of.clone(), inner: shape_of }, rows }
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Entry at `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> Option<u32> {
        if !self.shape.contains_cell(i, j) {
            return None;
        }
        Some(self.rows[i - 1][j - self.shape.inner.part(i) - 1])
    }

    /// `(row, column, entry)` triples, row-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.rows.iter().enumerate().flat_map(move |(idx, row)| {
            let start = self.shape.inner.part(idx + 1);
            row.iter().enumerate().map(move |(t, &v)| (idx + 1, start + t + 1, v))
        })
    }

    pub fn weight(&self) -> Weight {
        let mut counts = Vec::new();
        for (_, _, v) in self.entries() {
            let v = v as usize;
            if counts.len() < v {
                counts.resize(v, 0);
            }
            counts[v - 1] += 1;
        }
        Weight::new(counts)
    }

    pub fn max_entry(&self) -> u32 {
        self.entries().map(|e| e.2).max().unwrap_or(0)
    }

    /// Digits for entries, `.` for cells of the inner shape.
    pub fn render(&self) -> String {
        let wide = self.max_entry() > 9;
        let mut out = String::new();
        for (idx, row) in self.rows.iter().enumerate() {
            let mut cells: Vec<String> = vec![".".to_string(); self.shape.inner.part(idx + 1)];
            cells.extend(row.iter().map(u32::to_string));
            out.push_str(&cells.join(if wide { " " } else { "" }));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for SkewTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Serialize for SkewTableau {
    /// Rows of entries, `null` for cells of the inner shape.
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<Option<u32>>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(idx, row)| std::iter::repeat_n(None, self.shape.inner.part(idx + 1)).chain(row.iter().map(|&v| Some(v))).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SkewTableau {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = Vec::<Vec<Option<u32>>>::deserialize(d)?;
        let mut inner = Vec::new();
        let mut outer = Vec::new();
        let mut rows = Vec::new();
        for row in raw {
            let nulls = row.iter().take_while(|c| c.is_none()).count();
            let entries: Option<Vec<u32>> = row[nulls..].iter().copied().collect();
            let entries = entries.ok_or_else(|| D::Error::custom("null after an entry"))?;
            inner.push(nulls);
            outer.push(row.len());
            rows.push(entries);
        }
        let inner = Partition::new(inner).map_err(D::Error::custom)?;
        let outer = Partition::new(outer).map_err(D::Error::custom)?;
        let shape = SkewShape::new(outer, inner).map_err(D::Error::custom)?;
        SkewTableau::new(shape, rows).map_err(D::Error::custom)
    }
}

/// Rows weakly increase, columns strictly increase.
pub fn is_semistandard(t: &SkewTableau) -> bool {
    if t.rows.iter().any(|row| row.windows(2).any(|w| w[0] > w[1])) {
        return false;
    }
    t.entries().all(|(i, j, v)| match i.checked_sub(1).and_then(|up| t.get(up, j)) {
        Some(above) => above < v,
        None => true,
    })
}

/// Rows top to bottom, each right to left.
pub fn reverse_reading_word(t: &SkewTableau) -> Vec<u32> {
    t.rows.iter().flat_map(|row| row.iter().rev().copied()).collect()
}

/// Every prefix has at least as many `i` as `i + 1`.
pub fn is_ballot(word: &[u32]) -> bool {
    let mut counts: Vec<usize> = Vec::new();
    for &v in word {
        let v = v as usize;
        if v == 0 {
            return false;
        }
        if counts.len() < v {
            counts.resize(v, 0);
        }
        counts[v - 1] += 1;
        if v > 1 && counts[v - 1] > counts[v - 2] {
            return false;
        }
    }
    true
}

/// Cell-by-cell backtracking over a skew shape in reverse reading order.
struct Filler<'a> {
    shape: &'a SkewShape,
    order: Vec<(usize, usize)>,
    grid: Vec<Vec<u32>>,
    counts: Vec<usize>,
    max_entry: u32,
    weight: Option<&'a Weight>,
    ballot: bool,
}

impl<'a> Filler<'a> {
    fn new(shape: &'a SkewShape, max_entry: u32, weight: Option<&'a Weight>, ballot: bool) -> Self {
        let order = (1..=shape.outer.len()).flat_map(|i| (shape.inner.part(i) + 1..=shape.outer.part(i)).rev().map(move |j| (i, j))).collect();
        let grid = (1..=shape.outer.len()).map(|i| vec![0; shape.outer.part(i) - shape.inner.part(i)]).collect();
        Filler { shape, order, grid, counts: vec![0; max_entry as usize + 1], max_entry, weight, ballot }
    }

    fn at(&self, i: usize, j: usize) -> Option<u32> {
        self.shape.contains_cell(i, j).then(|| self.grid[i - 1][j - self.shape.inner.part(i) - 1])
    }

    fn run(&mut self, pos: usize, visit: &mut dyn FnMut(&[Vec<u32>])) {
        if pos == self.order.len() {
            visit(&self.grid);
            return;
        }
        let (i, j) = self.order[pos];
        // right neighbour and the cell above are already filled
        let hi = self.at(i, j + 1).unwrap_or(self.max_entry);
        let lo = if i > 1 { self.at(i - 1, j).map_or(1, |a| a + 1) } else { 1 };
        for v in lo..=hi.min(self.max_entry) {
            let vi = v as usize;
            if let Some(w) = self.weight {
                if self.counts[vi] >= w.count(vi) {
                    continue;
                }
            }
            if self.ballot && vi > 1 && self.counts[vi] + 1 > self.counts[vi - 1] {
                continue;
            }
            self.counts[vi] += 1;
            self.grid[i - 1][j - self.shape.inner.part(i) - 1] = v;
            self.run(pos + 1, visit);
            self.counts[vi] -= 1;
        }
    }
}

fn check_weight(shape: &SkewShape, weight: &Weight) -> Result<()> {
    if shape.size() != weight.total() {
        return Err(Error::SizeMismatch { shape: shape.size(), weight: weight.total() });
    }
    Ok(())
}

/// Every Littlewood-Richardson tableau of the given shape and weight, sorted.
pub fn enumerate_lr_tableaux(shape: &SkewShape, weight: &Weight) -> Result<Vec<SkewTableau>> {
    check_weight(shape, weight)?;
    let mut out = Vec::new();
    let max = weight.counts().len() as u32;
    Filler::new(shape, max, Some(weight), true).run(0, &mut |grid| out.push(SkewTableau { shape: shape.clone(), rows: grid.to_vec() }));
    out.sort();
    Ok(out)
}

/// Number of Littlewood-Richardson tableaux, without materializing them.
pub fn count_lr_tableaux(shape: &SkewShape, weight: &Weight) -> Result<u64> {
    check_weight(shape, weight)?;
    let mut n = 0u64;
    let max = weight.counts().len() as u32;
    Filler::new(shape, max, Some(weight), true).run(0, &mut |_| n += 1);
    Ok(n)
}

/// Every semistandard filling of `shape` with entries in `1..=max_entry`.
pub fn semistandard_tableaux(shape: &SkewShape, max_entry: u32) -> Vec<SkewTableau> {
    let mut out = Vec::new();
    Filler::new(shape, max_entry, None, false).run(0, &mut |grid| out.push(SkewTableau { shape: shape.clone(), rows: grid.to_vec() }));
    out
}

/// `c^λ_{μν}` by counting tableaux. Zero when `μ` is not inside `λ`; an error
/// when `|λ| != |μ| + |ν|`.
pub fn lr_coefficient_classical(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    if !contains(lambda, mu) {
        return Ok(0);
    }
    let shape = SkewShape { outer: lambda.clone(), inner: mu.clone() };
    count_lr_tableaux(&shape, &Weight::from(nu))
}

/// Shape `ρ` such that `T_m = T` restricted to `λ/ρ`: `ρ_i` is `μ_i` plus the
/// number of entries `<= i - m` in row `i`.
fn truncation_split(t: &SkewTableau, m: i64) -> Result<Partition> {
    if !is_semistandard(t) {
        return Err(Error::NotSemistandard);
    }
    let parts = t
        .rows
        .iter()
        .enumerate()
        .map(|(idx, row)| {
            let bound = idx as i64 + 1 - m;
            t.shape.inner.part(idx + 1) + row.iter().take_while(|&&v| (v as i64) <= bound).count()
        })
        .collect();
    Partition::new(parts).map_err(|e| Error::Invariant(format!("truncation of a semistandard tableau is not skew: {e}")))
}

/// `T_m`: the cells `(i, j)` whose entry is greater than `i - m`.
pub fn truncate_tm(t: &SkewTableau, m: i64) -> Result<SkewTableau> {
    let rho = truncation_split(t, m)?;
    ensure_invariant!(contains(&t.shape.outer, &rho), "truncation shape {rho} escapes {}", t.shape);
    let rows = t.rows.iter().enumerate().map(|(idx, row)| row[rho.part(idx + 1) - t.shape.inner.part(idx + 1)..].to_vec()).collect();
    let out = SkewTableau::new(SkewShape { outer: t.shape.outer.clone(), inner: rho }, rows)?;
    ensure_invariant!(is_semistandard(&out), "truncation is not semistandard");
    Ok(out)
}

/// `T \ T_m`: the cells whose entry is at most `i - m`, on shape `ρ/μ`.
pub fn truncation_remainder(t: &SkewTableau, m: i64) -> Result<SkewTableau> {
    let rho = truncation_split(t, m)?;
    let rows = t.rows.iter().enumerate().map(|(idx, row)| row[..rho.part(idx + 1) - t.shape.inner.part(idx + 1)].to_vec()).collect();
    SkewTableau::new(SkewShape { outer: rho, inner: t.shape.inner.clone() }, rows)
}

/// LR test through truncations: every `T_m` has a weakly decreasing weight.
/// Only `m` in `1 - max_entry ..= rows` can matter; outside that range `T_m`
/// is empty or all of `T`.
pub fn is_lr_via_truncations(t: &SkewTableau) -> Result<bool> {
    if !is_semistandard(t) {
        return Err(Error::NotSemistandard);
    }
    let lo = 1 - t.max_entry() as i64;
    let hi = t.shape.outer.len() as i64;
    // weight of T_m counted in place, without building the truncation
    let mut counts = vec![0usize; t.max_entry() as usize + 1];
    for m in lo..=hi {
        counts.fill(0);
        for (idx, row) in t.rows.iter().enumerate() {
            let bound = idx as i64 + 1 - m;
            for &v in row.iter().filter(|&&v| v as i64 > bound) {
                counts[v as usize] += 1;
            }
        }
        if counts[1..].windows(2).any(|w| w[0] < w[1]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both LR definitions at once; true only if the tableau is semistandard and
/// its reading word is ballot.
pub fn is_lr_tableau(t: &SkewTableau) -> bool {
    is_semistandard(t) && is_ballot(&reverse_reading_word(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn shape(s: &str) -> SkewShape {
        s.parse().unwrap()
    }

    fn sample() -> SkewTableau {
        SkewTableau::from_cells(shape("3,2,1/2,1"), &[(1, 3, 1), (2, 2, 1), (3, 1, 2)]).unwrap()
    }

    #[test]
    fn semistandard_checks() {
        assert!(is_semistandard(&sample()));
        let col = SkewTableau::new(shape("2,2"), vec![vec![1, 1], vec![1, 2]]).unwrap();
        assert!(!is_semistandard(&col));
        let row = SkewTableau::new(shape("2"), vec![vec![2, 1]]).unwrap();
        assert!(!is_semistandard(&row));
        assert!(is_semistandard(&SkewTableau::empty(p("2,1"))));
        assert!(is_semistandard(&SkewTableau::empty(p(""))));
    }

    #[test]
    fn reading_words() {
        assert_eq!(reverse_reading_word(&sample()), vec![1, 1, 2]);
        let one = SkewTableau::new(shape("1"), vec![vec![5]]).unwrap();
        assert_eq!(reverse_reading_word(&one), vec![5]);
        assert!(reverse_reading_word(&SkewTableau::empty(p("1"))).is_empty());
    }

    #[test]
    fn ballot() {
        assert!(is_ballot(&[1, 1, 2]));
        assert!(!is_ballot(&[2, 1]));
        assert!(is_ballot(&[]));
        assert!(is_ballot(&[1, 2, 1, 3, 2]));
        assert!(!is_ballot(&[1, 2, 3, 3]));
    }

    #[test]
    fn lr_enumeration() {
        let ts = enumerate_lr_tableaux(&shape("4,4,3,2/2,1"), &Weight::from(&p("4,3,2,1"))).unwrap();
        assert_eq!(ts.len(), 2);
        for t in &ts {
            assert!(is_lr_tableau(t));
            assert!(is_lr_via_truncations(t).unwrap());
        }
        let ts = enumerate_lr_tableaux(&shape("2,1/1"), &Weight::from(&p("1,1"))).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].rows(), &[vec![1], vec![2]]);
        let ts = enumerate_lr_tableaux(&shape("2,1/2,1"), &Weight::default()).unwrap();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].size(), 0);
        assert!(matches!(enumerate_lr_tableaux(&shape("2,1/1"), &Weight::from(&p("1"))), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn classical_coefficients() {
        assert_eq!(lr_coefficient_classical(&p("4,4,3,2"), &p("2,1"), &p("4,3,2,1")).unwrap(), 2);
        assert_eq!(lr_coefficient_classical(&p("3,2,1"), &p(""), &p("3,2,1")).unwrap(), 1);
        assert_eq!(lr_coefficient_classical(&p("2,1"), &p("1"), &p("2")).unwrap(), 1);
        assert_eq!(lr_coefficient_classical(&p("2,1"), &p("1"), &p("1,1")).unwrap(), 1);
        assert_eq!(lr_coefficient_classical(&p("2"), &p("1,1"), &p("")).unwrap(), 0);
        // s_21 * s_21 contains s_321 twice
        assert_eq!(lr_coefficient_classical(&p("3,2,1"), &p("2,1"), &p("2,1")).unwrap(), 2);
    }

    #[test]
    fn truncations() {
        let t = SkewTableau::from_cells(shape("2,1/1"), &[(1, 2, 1), (2, 1, 1)]).unwrap();
        assert_eq!(truncate_tm(&t, 5).unwrap(), t);
        let t0 = truncate_tm(&t, 0).unwrap();
        assert_eq!(t0.size(), 0);
        assert_eq!(t0.shape().inner, p("2,1"));
        let one = SkewTableau::new(shape("1"), vec![vec![2]]).unwrap();
        assert_eq!(truncate_tm(&one, 0).unwrap().size(), 1);
        let bad = SkewTableau::new(shape("1,1"), vec![vec![2], vec![1]]).unwrap();
        assert_eq!(is_lr_via_truncations(&bad), Err(Error::NotSemistandard));
        let twos = SkewTableau::new(shape("2"), vec![vec![2, 2]]).unwrap();
        assert!(!is_lr_via_truncations(&twos).unwrap());
        let rem = truncation_remainder(&sample(), 1).unwrap();
        // entries <= i - 1
        assert_eq!(rem.entries().collect::<Vec<_>>(), vec![(2, 2, 1), (3, 1, 2)]);
    }

    #[test]
    fn semistandard_counts_match_content_formula() {
        // (2,1) with entries <= 3: 8; (2,2) with entries <= 3: 6; (3) with <= 2: 4
        assert_eq!(semistandard_tableaux(&shape("2,1"), 3).len(), 8);
        assert_eq!(semistandard_tableaux(&shape("2,2"), 3).len(), 6);
        assert_eq!(semistandard_tableaux(&shape("3"), 2).len(), 4);
        // two disconnected boxes: 3 * 3 fillings
        assert_eq!(semistandard_tableaux(&shape("2,1/1"), 3).len(), 9);
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&sample()).unwrap();
        assert_eq!(s, "[[null,null,1],[null,1],[2]]");
        let back: SkewTableau = serde_json::from_str(&s).unwrap();
        assert_eq!(back, sample());
        assert_eq!(sample().render(), "..1\n.1\n2\n");
    }

    #[test]
    fn truncation_characterization_small() {
        for outer in crate::shapes::Rectangle::new(3, 3).unwrap().partitions() {
            for inner in crate::shapes::subpartitions(&outer) {
                let sh = SkewShape::new(outer.clone(), inner).unwrap();
                for t in semistandard_tableaux(&sh, 3) {
                    let fast = is_lr_via_truncations(&t).unwrap();
                    assert_eq!(fast, is_ballot(&reverse_reading_word(&t)), "{t}");
                    let slow = (-3..=4).all(|m| truncate_tm(&t, m).unwrap().weight().is_weakly_decreasing());
                    assert_eq!(fast, slow, "{t}");
                }
            }
        }
    }
}
