//! Ranks of integer matrices, exact or modulo a prime, built one row at a
//! time so that membership queries against the span are cheap.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

trait Scalar: Clone {
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    /// `a * x - b * y`
    fn lincomb(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn is_one(&self) -> bool;
    fn div_exact(&self, d: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Scalar for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn lincomb(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Scalar for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn lincomb(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Row echelon form over the integers, rows kept primitive with a
/// positive pivot.
#[derive(Clone, Debug)]
struct Echelon<T> {
    width: usize,
    rows: Vec<Vec<T>>,
    pivots: HashMap<usize, usize>,
}

impl<T: Scalar> Echelon<T> {
    fn new(width: usize) -> Self {
        Echelon { width, rows: Vec::new(), pivots: HashMap::new() }
    }

    /// Reduced row and its leading column, or `None` on overflow.
    fn reduce(&self, mut v: Vec<T>) -> Option<(Vec<T>, Option<usize>)> {
        let mut start = 0;
        loop {
            let Some(lead) = (start..self.width).find(|&c| !v[c].is_zero()) else {
                return Some((v, None));
            };
            let Some(&ri) = self.pivots.get(&lead) else {
                return Some((v, Some(lead)));
            };
            let b = &self.rows[ri];
            let g = b[lead].gcd(&v[lead]);
            let bp = b[lead].div_exact(&g);
            let vp = v[lead].div_exact(&g);
            let zero = T::from_i64(0);
            for c in lead..self.width {
                if b[c].is_zero() {
                    if !v[c].is_zero() && !bp.is_one() {
                        v[c] = T::lincomb(&bp, &v[c], &zero, &zero)?;
                    }
                } else {
                    v[c] = T::lincomb(&bp, &v[c], &vp, &b[c])?;
                }
            }
            normalize(&mut v, lead + 1);
            start = lead + 1;
        }
    }

    fn push(&mut self, mut v: Vec<T>, lead: usize) {
        if v[lead].is_negative() {
            for x in v.iter_mut() {
                *x = x.neg();
            }
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(v);
    }
}

fn normalize<T: Scalar>(v: &mut [T], from: usize) {
    let mut g: Option<T> = None;
    for x in v[from..].iter().filter(|x| !x.is_zero()) {
        let next = match &g {
            None => x.gcd(x),
            Some(g) => g.gcd(x),
        };
        if next.is_one() {
            return;
        }
        g = Some(next);
    }
    if let Some(g) = g {
        for x in v[from..].iter_mut() {
            if !x.is_zero() {
                *x = x.div_exact(&g);
            }
        }
    }
}

/// Exact rank over the rationals. Runs on `i128` and switches to big
/// integers the first time an intermediate value overflows.
#[derive(Clone, Debug)]
pub struct ExactRank {
    width: usize,
    basis: Vec<Vec<i64>>,
    small: Echelon<i128>,
    big: Option<Echelon<BigInt>>,
}

impl ExactRank {
    pub fn new(width: usize) -> Self {
        ExactRank { width, basis: Vec::new(), small: Echelon::new(width), big: None }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn used_bigint(&self) -> bool {
        self.big.is_some()
    }

    fn promote(&mut self) {
        if self.big.is_some() {
            return;
        }
        let mut big = Echelon::<BigInt>::new(self.width);
        for row in &self.basis {
            let v: Vec<BigInt> = row.iter().map(|&x| BigInt::from(x)).collect();
            if let Some((v, Some(lead))) = big.reduce(v) {
                big.push(v, lead);
            }
        }
        self.big = Some(big);
    }

    /// Adds `row`; true if it was independent of the rows so far.
    pub fn insert(&mut self, row: &[i64]) -> bool {
        assert_eq!(row.len(), self.width, "row width");
        if self.big.is_none() {
            match self.small.reduce(row.iter().map(|&x| x as i128).collect()) {
                Some((_, None)) => return false,
                Some((v, Some(lead))) => {
                    self.small.push(v, lead);
                    self.basis.push(row.to_vec());
                    return true;
                }
                None => self.promote(),
            }
        }
        let big = self.big.as_mut().expect("promoted");
        match big.reduce(row.iter().map(|&x| BigInt::from(x)).collect()) {
            Some((v, Some(lead))) => {
                big.push(v, lead);
                self.basis.push(row.to_vec());
                true
            }
            _ => false,
        }
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn contains(&mut self, row: &[i64]) -> bool {
        assert_eq!(row.len(), self.width, "row width");
        if self.big.is_none() {
            match self.small.reduce(row.iter().map(|&x| x as i128).collect()) {
                Some((_, lead)) => return lead.is_none(),
                None => self.promote(),
            }
        }
        let big = self.big.as_ref().expect("promoted");
        matches!(big.reduce(row.iter().map(|&x| BigInt::from(x)).collect()), Some((_, None)))
    }
}

pub fn exact_rank<'a>(width: usize, rows: impl IntoIterator<Item = &'a [i64]>) -> usize {
    let mut acc = ExactRank::new(width);
    for r in rows {
        acc.insert(r);
        if acc.rank() == width {
            break;
        }
    }
    acc.rank()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// A uniformly drawn prime in `[2^61, 2^62)`.
pub fn random_prime_62(rng: &mut impl Rng) -> u64 {
    loop {
        let c = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime(c) {
            return c;
        }
    }
}

/// Rank over `Z/p`. Never exceeds the rational rank and equals it for all
/// but finitely many `p`.
#[derive(Clone, Debug)]
pub struct ModularRank {
    p: u64,
    width: usize,
    rows: Vec<Vec<u64>>,
    pivots: HashMap<usize, usize>,
}

impl ModularRank {
    pub fn new(width: usize, p: u64) -> Self {
        ModularRank { p, width, rows: Vec::new(), pivots: HashMap::new() }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, row: &[i64]) -> bool {
        let p = self.p;
        let mut v: Vec<u64> = row.iter().map(|&x| (x as i128).rem_euclid(p as i128) as u64).collect();
        let mut start = 0;
        loop {
            let Some(lead) = (start..self.width).find(|&c| v[c] != 0) else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(&ri) => {
                    let b = &self.rows[ri];
                    let f = v[lead];
                    for c in lead..self.width {
                        if b[c] != 0 {
                            v[c] = (v[c] + p - mul_mod(f, b[c], p)) % p;
                        }
                    }
                    start = lead + 1;
                }
                None => {
                    let inv = pow_mod(v[lead], p - 2, p);
                    for x in v[lead..].iter_mut() {
                        *x = mul_mod(*x, inv, p);
                    }
                    self.pivots.insert(lead, self.rows.len());
                    self.rows.push(v);
                    return true;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn small_ranks() {
        let rows: Vec<Vec<i64>> = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1], vec![1, 3, 4]];
        assert_eq!(exact_rank(3, rows.iter().map(|r| r.as_slice())), 2);
        let mut acc = ExactRank::new(3);
        for r in &rows {
            acc.insert(r);
        }
        assert!(acc.contains(&[2, 5, 7]));
        assert!(!acc.contains(&[0, 0, 1]));
        assert_eq!(exact_rank(2, std::iter::empty()), 0);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        let mut rng = StdRng::seed_from_u64(3);
        let rows: Vec<Vec<i64>> = (0..4).map(|_| (0..4).map(|_| rng.gen_range(1i64 << 60..1i64 << 62)).collect()).collect();
        let mut acc = ExactRank::new(4);
        for r in &rows[..3] {
            assert!(acc.insert(r));
        }
        let sum: Vec<i64> = rows[0].iter().zip(&rows[1]).map(|(a, b)| a - b).collect();
        assert!(acc.contains(&sum));
        assert!(acc.insert(&rows[3]));
        assert!(acc.used_bigint());
        assert_eq!(acc.rank(), 4);
    }

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(1_000_000_007) && !is_prime(1_000_000_007 * 3));
        assert!(is_prime((1 << 61) - 1));
        let mut rng = StdRng::seed_from_u64(7);
        let p = random_prime_62(&mut rng);
        assert!(p >> 61 == 1 && is_prime(p));
    }

    #[test]
    fn modular_agrees_on_small_matrices() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let h = rng.gen_range(1..6);
            let w = rng.gen_range(1..6);
            let rows: Vec<Vec<i64>> = (0..h).map(|_| (0..w).map(|_| rng.gen_range(-2..=2)).collect()).collect();
            let exact = exact_rank(w, rows.iter().map(|r| r.as_slice()));
            let mut m = ModularRank::new(w, random_prime_62(&mut rng));
            for r in &rows {
                m.insert(r);
            }
            assert_eq!(exact, m.rank());
        }
    }
}
