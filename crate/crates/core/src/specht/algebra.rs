//! Integer group algebra of a symmetric group.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::perm::{factorial, Perm};
use crate::error::{Error, Result};

/// Finitely supported `Σ c_σ σ` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    terms: BTreeMap<Perm, i64>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_perm(Perm::identity(n))
    }

    pub fn from_perm(p: Perm) -> Self {
        let n = p.n();
        GroupAlgebraElement { n, terms: BTreeMap::from([(p, 1)]) }
    }

    /// `Σ σ` over `perms`, or `Σ sgn(σ) σ` when `signed`.
    pub fn sum_of<'a>(n: usize, perms: impl IntoIterator<Item = &'a Perm>, signed: bool) -> Result<Self> {
        let mut out = Self::zero(n);
        for p in perms {
            out.add_term(p.clone(), if signed { p.sign() } else { 1 })?;
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Perm, i64> {
        &self.terms
    }

    pub fn coeff(&self, p: &Perm) -> i64 {
        self.terms.get(p).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Perm, c: i64) -> Result<()> {
        match self.terms.entry(p) {
            Entry::Occupied(mut e) => {
                let v = e.get().checked_add(c).ok_or(Error::Overflow)?;
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                if c != 0 {
                    e.insert(c);
                }
            }
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut acc: BTreeMap<Perm, i64> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca.checked_mul(*cb).ok_or(Error::Overflow)?;
                let slot = acc.entry(a.compose(b)).or_insert(0);
                *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
            }
        }
        acc.retain(|_, v| *v != 0);
        Ok(GroupAlgebraElement { n: self.n, terms: acc })
    }

    /// `σ · self`.
    pub fn left_mul(&self, s: &Perm) -> Self {
        GroupAlgebraElement { n: self.n, terms: self.terms.iter().map(|(p, c)| (s.compose(p), *c)).collect() }
    }

    /// Coefficients indexed by [`Perm::rank`].
    pub fn to_dense(&self) -> Vec<i64> {
        let mut v = vec![0; factorial(self.n)];
        for (p, c) in &self.terms {
            v[p.rank()] = *c;
        }
        v
    }
}

impl fmt::Display for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("{c}*{p}")).collect();
        f.write_str(&parts.join(" + "))
    }
}
