//! Built-in self test: the acceptance checks at reduced sizes, reporting
//! each failure with a command line that reproduces it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::deform::{self, Rules};
use crate::error::Error;
use crate::labeled_deform;
use crate::lr_oracle;
use crate::schubert;
use crate::shapes::{partitions_of, subpartitions, Partition, Rectangle, SkewShape};
use crate::specht;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Rectangles up to 3x3.
    Fast,
    /// Rectangles up to 4x4 and Specht modules up to 6 boxes.
    Full,
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "fast" => Ok(Level::Fast),
            "full" => Ok(Level::Full),
            _ => Err(Error::Parse(s.to_string(), "level must be fast or full".into())),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Fast => "fast",
            Level::Full => "full",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub message: String,
    pub reproduce: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub level: Level,
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

fn arg(p: &Partition) -> String {
    let s = p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    if s.is_empty() {
        "\"\"".to_string()
    } else {
        s
    }
}

fn fail(message: impl Into<String>, reproduce: impl Into<String>) -> Failure {
    Failure { message: message.into(), reproduce: reproduce.into() }
}

fn pairs(r: Rectangle) -> Vec<(Partition, Partition)> {
    r.partitions().into_iter().flat_map(|l| subpartitions(&l).into_iter().map(move |m| (l.clone(), m))).collect()
}

fn examples() -> CheckResult {
    let mut failures = Vec::new();
    let p = |s: &str| s.parse::<Partition>().expect("literal partition");
    let fig = deform::lr_coefficients(&p("4,4,3,2"), &p("2,1"), 4);
    let expected: BTreeMap<Partition, u64> =
        [("4,3,2,1", 2), ("4,4,2", 1), ("4,4,1,1", 1), ("4,3,3", 1), ("4,2,2,2", 1), ("3,3,3,1", 1), ("3,3,2,2", 1)]
            .into_iter()
            .map(|(s, c)| (p(s), c))
            .collect();
    if fig.map(|t| t.into_map()).ok() != Some(expected) {
        failures.push(fail("table of (4,4,3,2)/(2,1) differs", "lrdeform traces --lambda 4,4,3,2 --mu 2,1 --k 4"));
    }
    let g48 = Rectangle::grassmannian(4, 8).expect("G(4,8)");
    match schubert::cup_product(&p("2,1"), &p("2,1"), g48) {
        Ok(e) if e.pretty() == "σ_2211 + σ_222 + σ_3111 + 2σ_321 + σ_33 + σ_411 + σ_42" => {}
        other => failures.push(fail(format!("sigma_21 squared: {other:?}"), "lrdeform product --mu 2,1 --nu 2,1 --k 4 --n 8 --pretty")),
    }
    CheckResult { name: "worked examples".into(), cases: 2, failures }
}

fn oracle(r: Rectangle, rules: Rules) -> CheckResult {
    let pairs = pairs(r);
    let failures: Vec<Failure> = pairs
        .par_iter()
        .flat_map_iter(|(lambda, mu)| {
            let size = lambda.size() - mu.size();
            let repro = |nu: &Partition| format!("lrdeform coeff --lambda {} --mu {} --nu {} --k {} --check", arg(lambda), arg(mu), arg(nu), r.k);
            let table = match deform::lr_coefficients_with(lambda, mu, r.k, rules) {
                Ok(t) => t,
                Err(e) => return vec![fail(format!("{lambda}/{mu}: {e}"), repro(&Partition::empty()))],
            };
            partitions_of(size)
                .into_iter()
                .filter_map(|nu| {
                    let classical = lr_oracle::lr_coefficient_classical(lambda, mu, &nu).unwrap_or(u64::MAX);
                    let got = table.get(&nu);
                    (got != classical).then(|| fail(format!("c({lambda}; {mu}, {nu}): deformation {got}, classical {classical}"), repro(&nu)))
                })
                .collect()
        })
        .collect();
    CheckResult { name: format!("deformation vs classical in {}x{}", r.k, r.width), cases: pairs.len(), failures }
}

fn bijections(r: Rectangle) -> CheckResult {
    let pairs = pairs(r);
    let failures: Vec<Failure> = pairs
        .par_iter()
        .filter_map(|(lambda, mu)| {
            let repro = format!("lrdeform bijection --lambda {} --mu {} --k {} --n {}", arg(lambda), arg(mu), r.k, r.n());
            match labeled_deform::verify_bijection(lambda, mu, r) {
                Ok(rep) if rep.passed() => None,
                Ok(rep) => Some(fail(format!("{lambda}/{mu}: {}", rep.failures.join("; ")), repro)),
                Err(e) => Some(fail(format!("{lambda}/{mu}: {e}"), repro)),
            }
        })
        .collect();
    CheckResult { name: format!("labeled bijection and stages in {}x{}", r.k, r.width), cases: pairs.len(), failures }
}

fn invariants(r: Rectangle) -> CheckResult {
    let pairs = pairs(r);
    let failures: Vec<Failure> = pairs
        .par_iter()
        .filter_map(|(lambda, mu)| {
            let repro = format!("lrdeform traces --lambda {} --mu {} --k {}", arg(lambda), arg(mu), r.k);
            let run = || -> Result<(), Error> {
                let start = deform::from_skew(&SkewShape::new(lambda.clone(), mu.clone())?, r.k)?;
                for d in deform::reachable_states(&start)? {
                    if let Some(i) = deform::active_row(&d) {
                        for s in deform::applicable_steps(&d, i)?.iter() {
                            deform::check_transition(&d, i, s, &deform::apply_step(&d, i, s)?)?;
                        }
                    }
                }
                Ok(())
            };
            run().err().map(|e| fail(format!("{lambda}/{mu}: {e}"), repro))
        })
        .collect();
    CheckResult { name: format!("step invariants in {}x{}", r.k, r.width), cases: pairs.len(), failures }
}

fn symmetries(r: Rectangle) -> CheckResult {
    let mut cases = 0;
    let failures = match schubert::verify_symmetries(r, r.area()) {
        Ok(rep) => {
            cases = rep.triples;
            rep.violations
                .into_iter()
                .map(|v| {
                    let repro = format!("lrdeform coeff --lambda {} --mu {} --nu {} --k {} --check", arg(&v.lambda), arg(&v.mu), arg(&v.nu), r.k);
                    fail(v.to_string(), repro)
                })
                .collect()
        }
        Err(e) => vec![fail(e.to_string(), String::new())],
    };
    CheckResult { name: format!("coefficient symmetries in {}x{}", r.k, r.width), cases, failures }
}

fn specht_checks() -> CheckResult {
    let shapes: Vec<SkewShape> = pairs(Rectangle::new(6, 6).expect("6x6"))
        .into_iter()
        .filter(|(l, m)| l.size() - m.size() <= specht::EXACT_BOUND)
        .filter_map(|(l, m)| SkewShape::new(l, m).ok())
        .collect();
    let failures = match specht::sweep(&shapes) {
        Ok(rep) => rep.failures.into_iter().map(|f| fail(f, "lrdeform specht --diagram <diagram above> [--row <row>]")).collect(),
        Err(e) => vec![fail(e.to_string(), String::new())],
    };
    CheckResult { name: "Specht dimensions and kernels up to 6 boxes".into(), cases: shapes.len(), failures }
}

/// Runs the self test. `rules` replaces the step rules in the coefficient
/// check only.
pub fn run(level: Level, rules: Rules) -> SelftestReport {
    let rects: Vec<Rectangle> = match level {
        Level::Fast => vec![Rectangle::new(2, 2), Rectangle::new(3, 3)],
        Level::Full => vec![Rectangle::new(3, 3), Rectangle::new(4, 4)],
    }
    .into_iter()
    .map(|r| r.expect("fixed rectangle"))
    .collect();
    let mut checks = vec![examples()];
    for &r in &rects {
        checks.push(oracle(r, rules));
        checks.push(invariants(r));
        checks.push(bijections(r));
    }
    checks.push(symmetries(Rectangle::new(3, 3).expect("3x3")));
    if level == Level::Full {
        checks.push(specht_checks());
    }
    SelftestReport { level, checks }
}
