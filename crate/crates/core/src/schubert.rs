//! Cup products of Schubert classes in the cohomology of `G(k, n)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::deform::{self, Counter};
use crate::error::Result;
use crate::shapes::{complement, contains, Partition, Rectangle, SkewShape};

/// `Σ c_λ σ_λ`, as the product `σ_μ ⌣ σ_ν`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassExpansion {
    pub rect: Rectangle,
    pub mu: Partition,
    pub nu: Partition,
    pub terms: BTreeMap<Partition, u64>,
}

impl ClassExpansion {
    pub fn coeff(&self, lambda: &Partition) -> u64 {
        self.terms.get(lambda).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Human-readable sum such as `σ_42 + 2σ_321`.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms.iter().map(|(lam, &c)| if c == 1 { sigma(lam) } else { format!("{c}{}", sigma(lam)) }).collect::<Vec<_>>().join(" + ")
    }
}

fn sigma(p: &Partition) -> String {
    if p.is_empty() {
        "σ_∅".to_string()
    } else if p.parts().iter().all(|&x| x < 10) {
        format!("σ_{}", p.parts().iter().map(|x| x.to_string()).collect::<String>())
    } else {
        format!("σ_{p}")
    }
}

impl fmt::Display for ClassExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Serialize for ClassExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            lambda: &'a Partition,
            coeff: u64,
        }
        let terms: Vec<Term> = self.terms.iter().map(|(lambda, &coeff)| Term { lambda, coeff }).collect();
        let mut st = s.serialize_struct("ClassExpansion", 5)?;
        st.serialize_field("k", &self.rect.k)?;
        st.serialize_field("n", &self.rect.n())?;
        st.serialize_field("mu", &self.mu)?;
        st.serialize_field("nu", &self.nu)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// `c_{μν}^λ` for partitions in `rect`.
pub fn coefficient(lambda: &Partition, mu: &Partition, nu: &Partition, rect: Rectangle) -> Result<u64> {
    coefficient_in(&mut Counter::new(), lambda, mu, nu, rect)
}

/// [`coefficient`] sharing a memo table across calls.
pub fn coefficient_in(counter: &mut Counter, lambda: &Partition, mu: &Partition, nu: &Partition, rect: Rectangle) -> Result<u64> {
    lambda.ensure_fits(rect)?;
    mu.ensure_fits(rect)?;
    nu.ensure_fits(rect)?;
    if lambda.size() != mu.size() + nu.size() || !contains(lambda, mu) {
        return Ok(0);
    }
    let start = deform::from_skew(&SkewShape::new(lambda.clone(), mu.clone())?, rect.k)?;
    Ok(counter.table(&start)?.get(nu))
}

/// `σ_μ ⌣ σ_ν`, from one run on `ν∨/μ`.
pub fn cup_product(mu: &Partition, nu: &Partition, rect: Rectangle) -> Result<ClassExpansion> {
    cup_product_in(&mut Counter::new(), mu, nu, rect)
}

pub fn cup_product_in(counter: &mut Counter, mu: &Partition, nu: &Partition, rect: Rectangle) -> Result<ClassExpansion> {
    mu.ensure_fits(rect)?;
    nu.ensure_fits(rect)?;
    let nu_dual = complement(nu, rect)?;
    let mut out = ClassExpansion { rect, mu: mu.clone(), nu: nu.clone(), terms: BTreeMap::new() };
    if !contains(&nu_dual, mu) {
        return Ok(out);
    }
    let start = deform::from_skew(&SkewShape::new(nu_dual, mu.clone())?, rect.k)?;
    for (b, c) in counter.table(&start)?.iter() {
        out.terms.insert(complement(b, rect)?, c);
    }
    Ok(out)
}

/// A triple where `c_{μν}^λ`, `c_{νμ}^λ` and `c_{μλ∨}^{ν∨}` disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub lambda: Partition,
    pub mu: Partition,
    pub nu: Partition,
    pub values: [u64; 3],
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.values;
        write!(f, "lambda={} mu={} nu={}: {a}, {b}, {c}", self.lambda, self.mu, self.nu)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SymmetryReport {
    pub triples: usize,
    pub nonzero: usize,
    pub violations: Vec<Violation>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `c_{μν}^λ = c_{νμ}^λ = c_{μλ∨}^{ν∨}` for every triple in `rect`
/// with `|λ| <= bound`.
pub fn verify_symmetries(rect: Rectangle, bound: usize) -> Result<SymmetryReport> {
    let parts = rect.partitions();
    let mut counter = Counter::new();
    let mut report = SymmetryReport::default();
    for lambda in parts.iter().filter(|p| p.size() <= bound) {
        let lambda_dual = complement(lambda, rect)?;
        for mu in &parts {
            for nu in &parts {
                report.triples += 1;
                let c1 = coefficient_in(&mut counter, lambda, mu, nu, rect)?;
                let c2 = coefficient_in(&mut counter, lambda, nu, mu, rect)?;
                let c3 = coefficient_in(&mut counter, &complement(nu, rect)?, mu, &lambda_dual, rect)?;
                if c1 != 0 {
                    report.nonzero += 1;
                }
                if c1 != c2 || c1 != c3 {
                    report.violations.push(Violation { lambda: lambda.clone(), mu: mu.clone(), nu: nu.clone(), values: [c1, c2, c3] });
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lr_oracle::lr_coefficient_classical;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn g(k: usize, n: usize) -> Rectangle {
        Rectangle::grassmannian(k, n).unwrap()
    }

    #[test]
    fn coefficients() {
        assert_eq!(coefficient(&p("4,4,3,2"), &p("2,1"), &p("4,3,2,1"), g(4, 8)).unwrap(), 2);
        assert_eq!(coefficient(&p("3,1"), &p(""), &p("3,1"), g(2, 6)).unwrap(), 1);
        assert_eq!(coefficient(&p("2,1"), &p("1"), &p("1,1"), g(2, 4)).unwrap(), 1);
        assert_eq!(coefficient(&p("2,1"), &p("1"), &p("1"), g(2, 4)).unwrap(), 0);
        assert_eq!(coefficient(&p("2"), &p("1,1"), &p(""), g(2, 4)).unwrap(), 0);
        assert!(coefficient(&p("3"), &p(""), &p("3"), g(2, 4)).is_err());
    }

    #[test]
    fn sigma_21_squared_in_g48() {
        let e = cup_product(&p("2,1"), &p("2,1"), g(4, 8)).unwrap();
        assert_eq!(e.pretty(), "σ_2211 + σ_222 + σ_3111 + 2σ_321 + σ_33 + σ_411 + σ_42");
        assert_eq!(e.terms.values().sum::<u64>(), 8);
        let json = serde_json::to_value(&e).unwrap();
        assert_eq!(json["k"], 4);
        assert_eq!(json["n"], 8);
        assert_eq!(json["terms"][0], serde_json::json!({"lambda": [2, 2, 1, 1], "coeff": 1}));
    }

    #[test]
    fn products() {
        let r = g(3, 6);
        for nu in r.partitions() {
            let id = cup_product(&p(""), &nu, r).unwrap();
            assert_eq!(id.terms, BTreeMap::from([(nu.clone(), 1)]));
            let dual = cup_product(&nu, &complement(&nu, r).unwrap(), r).unwrap();
            assert_eq!(dual.terms, BTreeMap::from([(r.full(), 1)]));
            for mu in r.partitions() {
                let a = cup_product(&mu, &nu, r).unwrap();
                let b = cup_product(&nu, &mu, r).unwrap();
                assert_eq!(a.terms, b.terms);
                assert!(a.terms.keys().all(|l| l.size() == mu.size() + nu.size()));
            }
        }
        assert!(cup_product(&p("3"), &p("3,1"), g(2, 5)).unwrap().is_zero());
        assert_eq!(cup_product(&p("3"), &p("3,1"), g(2, 5)).unwrap().pretty(), "0");
    }

    #[test]
    fn agrees_with_classical_in_three_by_three() {
        let r = g(3, 6);
        let parts = r.partitions();
        let mut counter = Counter::new();
        for l in &parts {
            for m in &parts {
                for n in &parts {
                    let c = coefficient_in(&mut counter, l, m, n, r).unwrap();
                    let expected = if contains(l, m) && l.size() == m.size() + n.size() { lr_coefficient_classical(l, m, n).unwrap() } else { 0 };
                    assert_eq!(c, expected, "{l} {m} {n}");
                }
            }
        }
    }

    fn times(a: &BTreeMap<Partition, u64>, rho: &Partition, r: Rectangle) -> BTreeMap<Partition, u64> {
        let mut out = BTreeMap::new();
        for (lam, c) in a {
            for (l2, c2) in cup_product(lam, rho, r).unwrap().terms {
                *out.entry(l2).or_insert(0) += c * c2;
            }
        }
        out
    }

    #[test]
    fn associativity() {
        let r = g(3, 6);
        let small: Vec<Partition> = r.partitions().into_iter().filter(|x| x.size() <= 2).collect();
        for a in &small {
            for b in &small {
                for c in &small {
                    let left = times(&cup_product(a, b, r).unwrap().terms, c, r);
                    let bc = cup_product(b, c, r).unwrap().terms;
                    let mut right = BTreeMap::new();
                    for (lam, k) in bc {
                        for (l2, k2) in cup_product(a, &lam, r).unwrap().terms {
                            *right.entry(l2).or_insert(0) += k * k2;
                        }
                    }
                    assert_eq!(left, right, "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn symmetries() {
        assert!(verify_symmetries(g(2, 4), 4).unwrap().passed());
        let rep = verify_symmetries(g(3, 6), 0).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.triples, 400);
    }
}
