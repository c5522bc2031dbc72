use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lrdeform")).args(args).output().expect("spawn lrdeform")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok_json(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn coeff_examples() {
    assert_eq!(ok_json(&["coeff", "--lambda", "4,4,3,2", "--mu", "2,1", "--nu", "4,3,2,1", "--k", "4"]), json!({"coefficient": 2}));
    assert_eq!(ok_json(&["coeff", "--lambda", "2,1", "--mu", "2,1", "--nu", "", "--k", "2"]), json!({"coefficient": 1}));
    assert_eq!(ok_json(&["coeff", "--lambda", "2,1", "--mu", "2,1", "--nu", "0", "--k", "2"]), json!({"coefficient": 1}));
    assert_eq!(ok_json(&["coeff", "--lambda", "2,1", "--mu", "1", "--nu", "2", "--k", "2", "--check"]), json!({"coefficient": 1, "classical": 1}));
    assert_eq!(ok_json(&["coeff", "--lambda", "2,1", "--mu", "1", "--nu", "1", "--k", "2", "--check"]), json!({"coefficient": 0, "classical": 0}));
}

#[test]
fn product_examples() {
    let v = ok_json(&["product", "--mu", "2,1", "--nu", "2,1", "--k", "4", "--n", "8"]);
    let terms: Vec<(Value, u64)> = v["terms"].as_array().unwrap().iter().map(|t| (t["lambda"].clone(), t["coeff"].as_u64().unwrap())).collect();
    assert_eq!(
        terms,
        vec![
            (json!([2, 2, 1, 1]), 1),
            (json!([2, 2, 2]), 1),
            (json!([3, 1, 1, 1]), 1),
            (json!([3, 2, 1]), 2),
            (json!([3, 3]), 1),
            (json!([4, 1, 1]), 1),
            (json!([4, 2]), 1),
        ]
    );
    assert_eq!((v["k"].clone(), v["n"].clone()), (json!(4), json!(8)));

    let o = run(&["product", "--mu", "", "--nu", "3,1", "--k", "2", "--n", "6", "--pretty"]);
    assert_eq!(stdout(&o).trim(), "σ_31");
    let empty = ok_json(&["product", "--mu", "2,2", "--nu", "2,2", "--k", "2", "--n", "4"]);
    assert_eq!(empty["terms"], json!([]));
    let o = run(&["product", "--mu", "2,2", "--nu", "2,2", "--k", "2", "--n", "4", "--pretty"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn json_is_byte_stable() {
    let args = ["product", "--mu", "2,1", "--nu", "2,1", "--k", "4", "--n", "8"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let traces = ["traces", "--lambda", "4,4,3,2", "--mu", "2,1", "--k", "4", "--json"];
    assert_eq!(run(&traces).stdout, run(&traces).stdout);
}

#[test]
fn jobs_do_not_change_results() {
    for args in [
        vec!["product", "--mu", "2,1", "--nu", "2,1", "--k", "4", "--n", "8"],
        vec!["bijection", "--lambda", "4,3,2", "--mu", "2,1", "--k", "4", "--n", "8", "--json"],
    ] {
        let one: Vec<&str> = ["--jobs", "1"].into_iter().chain(args.iter().copied()).collect();
        let two: Vec<&str> = ["--jobs", "2"].into_iter().chain(args.iter().copied()).collect();
        assert_eq!(run(&one).stdout, run(&two).stdout);
    }
}

#[test]
fn traces_gallery() {
    let o = run(&["traces", "--lambda", "4,4,3,2", "--mu", "2,1", "--k", "4", "--filter", "4,3,2,1"]);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("run ")).count(), 2);
    assert!(text.contains("A at row"));
    assert!(text.contains("B at row"));

    let o = run(&["traces", "--lambda", "2,1", "--mu", "2,1", "--k", "2"]);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("run ")).count(), 1);
    assert!(!text.contains("at row"));

    let o = run(&["traces", "--lambda", "2,1", "--mu", "1", "--k", "2"]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("run ")).count(), 2);

    let v = ok_json(&["traces", "--lambda", "2,1", "--mu", "1", "--k", "2", "--json"]);
    let ends: Vec<Value> = v.as_array().unwrap().iter().map(|t| t["result"].clone()).collect();
    assert_eq!(ends, vec![json!([2]), json!([1, 1])]);
}

#[test]
fn bijection_and_specht() {
    let v = ok_json(&["bijection", "--lambda", "4,4,3,2", "--mu", "2,1", "--k", "4", "--n", "8", "--json"]);
    assert_eq!(v["traces"], v["distinct_tableaux"]);
    assert_eq!(v["failures"], json!([]));

    let v = ok_json(&["specht", "--diagram", "3,2/1", "--json"]);
    assert_eq!(v["dimension"], 5);
    assert_eq!(v["passed"], true);
    assert_eq!(v["kernel"]["report"]["dim_a"], 3);
    assert_eq!(v["kernel"]["report"]["dim_b"], 2);

    let v = ok_json(&["specht", "--diagram", "(1,1),(1,2),(2,1)", "--json"]);
    assert_eq!(v["dimension"], 2);

    let v = ok_json(&["specht", "--diagram", "4,3", "--allow-n7", "--json"]);
    assert_eq!(v["dimension"], 14);
    assert_eq!(v["probabilistic"], true);
}

#[test]
fn input_errors_exit_one() {
    for args in [
        vec!["coeff", "--lambda", "2,x", "--mu", "1", "--nu", "1", "--k", "2"],
        vec!["coeff", "--lambda", "1,2", "--mu", "1", "--nu", "1", "--k", "2"],
        vec!["coeff", "--lambda", "2,1", "--mu", "3", "--nu", "", "--k", "2"],
        vec!["coeff", "--lambda", "2,1,1", "--mu", "", "--nu", "", "--k", "2"],
        vec!["product", "--mu", "3", "--nu", "1", "--k", "2", "--n", "4"],
        vec!["specht", "--diagram", "4,3"],
        vec!["specht", "--diagram", "(1,1),(1,1"],
        vec!["selftest", "--level", "slow"],
        vec!["coeff", "--lambda", "2"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}: no diagnostic");
    }
    let o = run(&["coeff", "--lambda", "2,1", "--mu", "3", "--nu", "", "--k", "2"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not contained"));
}

#[test]
fn selftest_levels() {
    let o = run(&["selftest", "--level", "fast"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("selftest fast: passed"));

    let o = run(&["selftest", "--level", "fast", "--mutate", "step-b-nonstrict"]);
    assert_eq!(o.status.code(), Some(3));
    let text = stdout(&o);
    assert!(text.contains("FAIL"));
    let repro = text.lines().find_map(|l| l.trim().strip_prefix("reproduce: lrdeform ")).expect("a reproduction command");
    assert!(repro.ends_with("--mutate step-b-nonstrict"), "{repro}");
    let args: Vec<String> = repro.split_whitespace().map(|a| a.trim_matches('"').to_string()).collect();
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    assert_ne!(run(&args).status.code(), Some(0), "{repro} does not reproduce");
}

#[test]
fn internal_errors_exit_two() {
    let o = run(&["coeff", "--lambda", "2,2", "--mu", "1", "--nu", "1,1,1", "--k", "2", "--mutate", "step-b-nonstrict"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["coeff", "--lambda", "2,2", "--mu", "1", "--nu", "2,1", "--k", "2", "--mutate", "step-b-nonstrict"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("internal"));
}
