//! `lrdeform`: Littlewood-Richardson coefficients by diagram deformation.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use lr_deform::deform::{self, Mutation, Rules, Trace};
use lr_deform::error::Error;
use lr_deform::labeled_deform;
use lr_deform::lr_oracle;
use lr_deform::schubert;
use lr_deform::selftest::{self, Level};
use lr_deform::shapes::{Partition, Rectangle};
use lr_deform::specht::{self, BoxOrdering};

#[derive(Parser)]
#[command(name = "lrdeform", version, about = "Littlewood-Richardson coefficients by diagram deformation")]
struct Cli {
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Corrupts the step rules, to check that the self test notices.
    #[arg(long, global = true, hide = true)]
    mutate: Option<MutateArg>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The coefficient c^λ_{μν}, counted as deformation runs on λ/μ ending at ν.
    Coeff {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        /// Number of rows.
        #[arg(long)]
        k: usize,
        /// Also count LR tableaux and compare.
        #[arg(long)]
        check: bool,
    },
    /// The cup product σ_μ σ_ν in the cohomology of G(k, n).
    Product {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        /// Print in σ notation instead of JSON.
        #[arg(long, conflicts_with = "json")]
        pretty: bool,
        #[arg(long)]
        json: bool,
    },
    /// Every run on λ/μ as a strip of diagrams.
    Traces {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        k: usize,
        /// Keep only runs ending at this partition.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Checks that labeled runs on λ/μ biject onto LR tableaux.
    Bijection {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Dimension of the Specht module of a diagram, with the deformation checks.
    Specht {
        /// A skew shape "λ/μ", a partition, or cells "(1,1),(1,2),(2,2)".
        #[arg(long)]
        diagram: String,
        /// Check the kernel decomposition at this row (default: the active row, if it branches).
        #[arg(long)]
        row: Option<usize>,
        /// Permit 7 boxes, using a rank modulo a random prime.
        #[arg(long)]
        allow_n7: bool,
        #[arg(long)]
        json: bool,
    },
    /// Runs the built-in checks.
    Selftest {
        #[arg(long, default_value = "fast")]
        level: Level,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MutateArg {
    StepBNonstrict,
}

enum Failure {
    Input(String),
    Internal(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn partition(flag: &str, s: &str) -> Result<Partition, Failure> {
    s.parse().map_err(|e: Error| Failure::Input(format!("--{flag}: {e}")))
}

fn to_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string(v).expect("serializable output")
}

fn verified(ok: bool, output: String, what: &str) -> Outcome {
    if ok {
        Ok(output)
    } else {
        Err(Failure::Verification(format!("{output}\n{what}")))
    }
}

fn coeff(lambda: &str, mu: &str, nu: &str, k: usize, check: bool, rules: Rules) -> Outcome {
    let (lambda, mu, nu) = (partition("lambda", lambda)?, partition("mu", mu)?, partition("nu", nu)?);
    if nu.len() > k {
        return Err(Error::TooManyRows { partition: nu.to_string(), k }.into());
    }
    let table = deform::lr_coefficients_with(&lambda, &mu, k, rules)?;
    let n = table.get(&nu);
    if !check {
        return Ok(to_json(&json!({ "coefficient": n })));
    }
    let classical = if lambda.size() == mu.size() + nu.size() { lr_oracle::lr_coefficient_classical(&lambda, &mu, &nu)? } else { 0 };
    let out = to_json(&json!({ "coefficient": n, "classical": classical }));
    verified(n == classical, out, "deformation and classical counts differ")
}

fn product(mu: &str, nu: &str, k: usize, n: usize, pretty: bool) -> Outcome {
    let (mu, nu) = (partition("mu", mu)?, partition("nu", nu)?);
    if n < k {
        return Err(Failure::Input(format!("--n {n} is smaller than --k {k}")));
    }
    let e = schubert::cup_product(&mu, &nu, Rectangle::grassmannian(k, n)?)?;
    Ok(if pretty { e.pretty() } else { to_json(&e) })
}

fn gallery(traces: &[Trace], width: usize) -> Result<String, Error> {
    let mut out = String::new();
    if traces.is_empty() {
        out.push_str("no runs\n");
    }
    for (t, trace) in traces.iter().enumerate() {
        let frames = trace.frames()?;
        let w = frames.iter().map(|f| f.max_column()).max().unwrap_or(0).max(width).max(1);
        let _ = writeln!(out, "run {} of {} -> {}", t + 1, traces.len(), trace.result);
        for (f, frame) in frames.iter().enumerate() {
            for line in frame.render(w).lines() {
                let _ = writeln!(out, "  {line}");
            }
            if let Some((i, s)) = trace.steps.get(f) {
                let branch = deform::applicable_steps(frame, *i)?.is_branch();
                let _ = writeln!(out, "  {:^w$}  {s} at row {i}{}", "|", if branch { " (branch)" } else { "" });
                let _ = writeln!(out, "  {}", format!("{:^w$}", "v").trim_end());
            }
        }
        out.push('\n');
    }
    Ok(out.trim_end().to_string())
}

fn traces(lambda: &str, mu: &str, k: usize, filter: Option<&str>, json: bool) -> Outcome {
    let (lambda, mu) = (partition("lambda", lambda)?, partition("mu", mu)?);
    let filter = filter.map(|f| partition("filter", f)).transpose()?;
    let ts = deform::enumerate_traces(&lambda, &mu, k, filter.as_ref())?;
    if json {
        Ok(to_json(&ts))
    } else {
        Ok(gallery(&ts, lambda.part(1))?)
    }
}

fn bijection(lambda: &str, mu: &str, k: usize, n: usize, json: bool) -> Outcome {
    let (lambda, mu) = (partition("lambda", lambda)?, partition("mu", mu)?);
    let rep = labeled_deform::verify_bijection(&lambda, &mu, Rectangle::grassmannian(k, n)?)?;
    let out = if json {
        to_json(&rep)
    } else {
        let mut s = format!(
            "{}/{} in {}x{}: {} runs, {} distinct tableaux, {} stage checks",
            rep.lambda,
            rep.mu,
            rep.k,
            rep.n - rep.k,
            rep.traces,
            rep.distinct_tableaux,
            rep.stage_checks
        );
        for f in &rep.failures {
            let _ = write!(s, "\n  FAIL {f}");
        }
        s
    };
    verified(rep.passed(), out, "bijection check failed")
}

fn specht_cmd(diagram: &str, row: Option<usize>, allow_n7: bool, json: bool) -> Outcome {
    let o: BoxOrdering = diagram.parse().map_err(|e: Error| Failure::Input(format!("--diagram: {e}")))?;
    let n = o.n();
    let bound = if allow_n7 { specht::MODULAR_BOUND } else { specht::EXACT_BOUND };
    if n > bound {
        return Err(Error::TooLarge { n, bound }.into());
    }
    let mut report = serde_json::Map::new();
    report.insert("diagram".into(), json!(o.boxes()));
    report.insert("n".into(), json!(n));
    let mut notes = Vec::new();
    let mut passed = true;
    if n > specht::EXACT_BOUND {
        let (dim, p) = specht::specht_dimension_random(&o)?;
        report.insert("dimension".into(), json!(dim));
        report.insert("method".into(), json!("modular"));
        report.insert("probabilistic".into(), json!(true));
        report.insert("prime".into(), json!(p));
        notes.push(format!("exact checks need at most {} boxes", specht::EXACT_BOUND));
    } else {
        report.insert("dimension".into(), json!(specht::specht_dimension(&o)?));
        report.insert("method".into(), json!("exact"));
        report.insert("probabilistic".into(), json!(false));
        let interval = o.to_interval().ok().filter(deform::is_almost_skew);
        match &interval {
            Some(d) => {
                let c = specht::verify_corollary(d)?;
                passed &= c.passed();
                report.insert("corollary".into(), json!({ "passed": c.passed(), "report": c }));
            }
            None => notes.push("diagram is not an almost skew interval diagram; corollary skipped".into()),
        }
        let row = row.or_else(|| {
            let d = interval.as_ref()?;
            let i = deform::active_row(d)?;
            deform::applicable_steps(d, i).ok()?.is_branch().then_some(i)
        });
        match row {
            Some(i) => {
                let k = specht::verify_kernel_decomposition(&o, i)?;
                passed &= k.passed();
                report.insert("kernel".into(), json!({ "passed": k.passed(), "report": k }));
            }
            None => notes.push("no branch point; kernel check skipped".into()),
        }
    }
    report.insert("notes".into(), json!(notes));
    report.insert("passed".into(), json!(passed));
    let report = Value::Object(report);
    let out = if json { to_json(&report) } else { specht_text(&report) };
    verified(passed, out, "Specht checks failed")
}

fn specht_text(r: &Value) -> String {
    let method = if r["probabilistic"] == json!(true) { format!("rank modulo {}, probabilistic", r["prime"]) } else { "exact rank".to_string() };
    let mut s = format!("boxes: {}\ndimension: {} ({method})", r["n"], r["dimension"]);
    if let Some(c) = r.get("corollary") {
        let rep = &c["report"];
        let _ = write!(s, "\ncorollary: {} (path sum {})", pass(&c["passed"]), rep["path_sum"]);
        for f in rep["failures"].as_array().into_iter().flatten() {
            let _ = write!(s, "\n  {}", f.as_str().unwrap_or(""));
        }
    }
    if let Some(k) = r.get("kernel") {
        let rep = &k["report"];
        let _ = write!(s, "\nkernel at row {}: {}", rep["row"], pass(&k["passed"]));
        if rep["branch"] == json!(true) {
            let _ = write!(s, " (dim V^D = {} = {} + {}, dim ker T = {})", rep["dim_d"], rep["dim_a"], rep["dim_b"], rep["kernel_dim"]);
        }
        for f in rep["failures"].as_array().into_iter().flatten() {
            let _ = write!(s, "\n  {}", f.as_str().unwrap_or(""));
        }
        if let Some(note) = rep["note"].as_str() {
            let _ = write!(s, "\n  {note}");
        }
    }
    for note in r["notes"].as_array().into_iter().flatten() {
        let _ = write!(s, "\nnote: {}", note.as_str().unwrap_or(""));
    }
    s
}

fn pass(v: &Value) -> &'static str {
    if v == &json!(true) {
        "pass"
    } else {
        "FAIL"
    }
}

fn selftest_cmd(level: Level, rules: Rules, json: bool) -> Outcome {
    let mut rep = selftest::run(level, rules);
    if rules.mutation.is_some() {
        for f in rep.checks.iter_mut().flat_map(|c| c.failures.iter_mut()) {
            if f.reproduce.starts_with("lrdeform coeff") {
                f.reproduce.push_str(" --mutate step-b-nonstrict");
            }
        }
    }
    let out = if json {
        to_json(&rep)
    } else {
        let mut s = String::new();
        for c in &rep.checks {
            let _ = writeln!(s, "{} {} ({} cases)", if c.passed() { "PASS" } else { "FAIL" }, c.name, c.cases);
            for f in c.failures.iter().take(10) {
                let _ = writeln!(s, "    {}\n      reproduce: {}", f.message, f.reproduce);
            }
            if c.failures.len() > 10 {
                let _ = writeln!(s, "    ... {} more", c.failures.len() - 10);
            }
        }
        let _ = write!(s, "selftest {}: {}", rep.level, if rep.passed() { "passed" } else { "FAILED" });
        s
    };
    verified(rep.passed(), out, "selftest failed")
}

fn dispatch(cmd: Command, rules: Rules) -> Outcome {
    match cmd {
        Command::Coeff { lambda, mu, nu, k, check } => coeff(&lambda, &mu, &nu, k, check, rules),
        Command::Product { mu, nu, k, n, pretty, json: _ } => product(&mu, &nu, k, n, pretty),
        Command::Traces { lambda, mu, k, filter, json } => traces(&lambda, &mu, k, filter.as_deref(), json),
        Command::Bijection { lambda, mu, k, n, json } => bijection(&lambda, &mu, k, n, json),
        Command::Specht { diagram, row, allow_n7, json } => specht_cmd(&diagram, row, allow_n7, json),
        Command::Selftest { level, json } => selftest_cmd(level, rules, json),
    }
}

/// Prints to stdout, tolerating a closed pipe.
fn emit(s: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let rules = Rules { mutation: cli.mutate.map(|MutateArg::StepBNonstrict| Mutation::StepBNonStrict) };
    let result = match cli.jobs {
        Some(0) => Err(Failure::Input("--jobs must be at least 1".into())),
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command, rules)),
            Err(e) => Err(Failure::Internal(format!("cannot start thread pool: {e}"))),
        },
        None => dispatch(cli.command, rules),
    };
    match result {
        Ok(out) => {
            emit(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error (this is a bug): {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            emit(&msg);
            eprintln!("verification failed");
            ExitCode::from(3)
        }
    }
}
