//! Partitions, skew shapes and the `k x width` rectangles they live in.
//!
//! Rows and columns are 1-based everywhere in the public API, with row 1 on
//! top (English convention).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
///
/// Trailing zeros are dropped on construction, so `(2,1,0)` and `(2,1)` are
/// the same value.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotDecreasing(parts));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Part `i` (1-based); zero past the end.
    pub fn part(&self, i: usize) -> usize {
        assert!(i >= 1, "parts are 1-based");
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|p|`, the number of boxes.
    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn fits(&self, rect: Rectangle) -> bool {
        self.len() <= rect.k && self.parts.first().is_none_or(|&p| p <= rect.width)
    }

    pub fn ensure_fits(&self, rect: Rectangle) -> Result<()> {
        if self.fits(rect) {
            Ok(())
        } else {
            Err(Error::DoesNotFit { partition: self.to_string(), k: rect.k, width: rect.width })
        }
    }

    /// Boxes of the Young diagram, row-major.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        SkewShape { outer: self.clone(), inner: Partition::empty() }.cells()
    }

    /// Column lengths. Only used for hook lengths.
    pub(crate) fn column_lengths(&self) -> Vec<usize> {
        let width = self.parts.first().copied().unwrap_or(0);
        (1..=width).map(|j| self.parts.iter().take_while(|&&p| p >= j).count()).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "()");
        }
        let body: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts. The empty string and `"0"` denote the empty
    /// partition; surrounding parentheses are tolerated.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if trimmed.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = trimmed
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|e| Error::Parse(s.to_string(), format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// The `k x width` box holding partitions indexing Schubert classes of
/// `G(k, k + width)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rectangle {
    pub k: usize,
    pub width: usize,
}

impl Rectangle {
    pub fn new(k: usize, width: usize) -> Result<Self> {
        if k == 0 || width == 0 {
            return Err(Error::BadRectangle { k, width });
        }
        Ok(Rectangle { k, width })
    }

    /// The rectangle of `G(k, n)`.
    pub fn grassmannian(k: usize, n: usize) -> Result<Self> {
        Rectangle::new(k, n.saturating_sub(k))
    }

    pub fn n(&self) -> usize {
        self.k + self.width
    }

    pub fn area(&self) -> usize {
        self.k * self.width
    }

    pub fn full(&self) -> Partition {
        Partition { parts: vec![self.width; self.k] }
    }

    /// Every partition fitting in the rectangle, in lexicographic order.
    pub fn partitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fill_bounded(self.k, self.width, &mut cur, &mut out);
        out.sort();
        out
    }
}

fn fill_bounded(rows_left: usize, max_part: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    out.push(Partition { parts: cur.clone() });
    if rows_left == 0 {
        return;
    }
    for p in 1..=max_part {
        cur.push(p);
        fill_bounded(rows_left - 1, p, cur, out);
        cur.pop();
    }
}

/// `λ/μ`: the boxes of `outer` not in `inner`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !contains(&outer, &inner) {
            return Err(Error::NotContained { outer: outer.to_string(), inner: inner.to_string() });
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(p: Partition) -> Self {
        SkewShape { outer: p, inner: Partition::empty() }
    }

    pub fn size(&self) -> usize {
        skew_size(self)
    }

    pub fn cells(&self) -> Vec<(usize, usize)> {
        skew_cells(self)
    }

    /// Number of rows that carry the outer shape.
    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    /// Columns `(start, end]` occupied in row `i`.
    pub fn row_span(&self, i: usize) -> (usize, usize) {
        (self.inner.part(i), self.outer.part(i))
    }

    pub fn contains_cell(&self, i: usize, j: usize) -> bool {
        i >= 1 && j > self.inner.part(i) && j <= self.outer.part(i)
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.outer, self.inner)
    }
}

impl FromStr for SkewShape {
    type Err = Error;

    /// `"λ/μ"` or a bare `"λ"`.
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('/') {
            Some((o, i)) => SkewShape::new(o.parse()?, i.parse()?),
            None => Ok(SkewShape::straight(s.parse()?)),
        }
    }
}

/// `inner_i <= outer_i` for every `i`.
pub fn contains(outer: &Partition, inner: &Partition) -> bool {
    inner.len() <= outer.len() && inner.parts.iter().zip(&outer.parts).all(|(a, b)| a <= b)
}

/// The partition that, turned a half-turn, fills the rest of `rect`.
pub fn complement(p: &Partition, rect: Rectangle) -> Result<Partition> {
    p.ensure_fits(rect)?;
    let parts = (1..=rect.k).rev().map(|i| rect.width - p.part(i)).collect();
    Partition::new(parts)
}

pub fn skew_size(s: &SkewShape) -> usize {
    s.outer.size() - s.inner.size()
}

/// Boxes `(i, j)` with `inner_i < j <= outer_i`, row-major.
pub fn skew_cells(s: &SkewShape) -> Vec<(usize, usize)> {
    (1..=s.outer.len()).flat_map(|i| (s.inner.part(i) + 1..=s.outer.part(i)).map(move |j| (i, j))).collect()
}

/// All partitions of `n`, lexicographically.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All partitions contained in `p`.
pub fn subpartitions(p: &Partition) -> Vec<Partition> {
    fn go(p: &Partition, i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition { parts: cur.clone() });
        if i > p.len() {
            return;
        }
        for v in 1..=max.min(p.part(i)) {
            cur.push(v);
            go(p, i + 1, v, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(p, 1, usize::MAX, &mut Vec::new(), &mut out);
    out.sort();
    out
}
