//! Permutations of `{0, .., n-1}` stored as image vectors.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(Vec<u8>);

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    /// From 0-based images; `None` unless the images form a bijection.
    pub fn from_images(images: &[usize]) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return None;
            }
        }
        Some(Perm(images.iter().map(|&x| x as u8).collect()))
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Perm::identity(n);
        p.0.swap(a, b);
        p
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn sign(&self) -> i64 {
        let mut seen = vec![false; self.0.len()];
        let mut parity = 0;
        for start in 0..self.0.len() {
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            if len > 0 {
                parity += len - 1;
            }
        }
        if parity % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Position in the lexicographic listing of all permutations of `n`.
    pub fn rank(&self) -> usize {
        let n = self.0.len();
        let mut r = 0;
        for i in 0..n {
            let smaller = self.0[i + 1..].iter().filter(|&&x| x < self.0[i]).count();
            r = r * (n - i) + smaller;
        }
        r
    }

    pub fn unrank(n: usize, mut r: usize) -> Perm {
        let mut pool: Vec<u8> = (0..n as u8).collect();
        let mut digits = vec![0; n];
        for i in (0..n).rev() {
            let base = n - i;
            digits[i] = r % base;
            r /= base;
        }
        Perm(digits.into_iter().map(|d| pool.remove(d)).collect())
    }

    /// All `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        (0..factorial(n)).map(|r| Perm::unrank(n, r)).collect()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Every permutation that maps each block to itself.
pub fn young_subgroup(n: usize, blocks: &[Vec<usize>]) -> Vec<Perm> {
    let mut out = vec![Perm::identity(n)];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let local = Perm::all(block.len());
        let mut next = Vec::with_capacity(out.len() * local.len());
        for base in &out {
            for q in &local {
                let mut img = base.0.clone();
                for (a, &x) in block.iter().enumerate() {
                    img[x] = base.0[block[q.apply(a)]];
                }
                next.push(Perm(img));
            }
        }
        out = next;
    }
    out
}
