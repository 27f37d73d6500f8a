use serde_json::Value;
use std::process::{Command, Output};

fn ln_kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ln-kit")).args(args).output().expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap_or_else(|e| panic!("bad JSON line {l:?}: {e}")))
        .collect()
}

fn solutions(v: &[Value]) -> Vec<(String, String, u64)> {
    v.iter()
        .filter(|l| l["type"] == "solution")
        .map(|l| (l["x"].as_str().unwrap().into(), l["y"].as_str().unwrap().into(), l["n"].as_u64().unwrap()))
        .collect()
}

#[test]
fn solve_k0_standard_window() {
    let out = ln_kit(&["solve", "--k", "0", "--n-max", "30", "--x-max", "10000000"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = lines(&out);
    assert_eq!(solutions(&v), vec![("9".into(), "5".into(), 2), ("559".into(), "5".into(), 7)]);
    let summary = v.last().unwrap();
    assert_eq!(summary["type"], "summary");
    assert_eq!(summary["oracle"]["agreed"], true);
    assert_eq!(summary["oracle"]["in_window"], 2);
    assert_eq!(summary["matches_classification"], true);
}

#[test]
fn output_is_byte_identical_across_runs_and_thread_counts() {
    let args = ["solve", "--k", "1", "--n-max", "20", "--x-max", "1000000", "--trace"];
    let a = ln_kit(&args);
    let b = ln_kit(&args);
    let c = Command::new(env!("CARGO_BIN_EXE_ln-kit"))
        .args(args)
        .env("LN_KIT_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn trace_lines_round_trip_into_steps() {
    let out = ln_kit(&["solve", "--k", "0", "--n-max", "7", "--no-oracle", "--trace"]);
    let v = lines(&out);
    let steps: Vec<&Value> = v.iter().filter(|l| l["type"] == "step").collect();
    assert!(!steps.is_empty());
    for (i, s) in steps.iter().enumerate() {
        assert_eq!(s["index"], i);
        let mut obj = (*s).clone();
        obj.as_object_mut().unwrap().remove("type");
        obj.as_object_mut().unwrap().remove("index");
        let step: ln_kit::solver::TraceStep = serde_json::from_value(obj).unwrap();
        assert_eq!(step.step.run().unwrap(), step.verdict);
    }
    assert!(steps.iter().any(|s| s["step"]["procedure"] == "lucas_u" && s["verdict"]["outcome"]["assignments"]["u_n"] == "1"));
}

#[test]
fn solution_lines_parse_as_solutions() {
    let out = ln_kit(&["family", "--k", "7"]);
    for l in lines(&out) {
        let mut obj = l.clone();
        obj.as_object_mut().unwrap().remove("type");
        let s: ln_kit::Solution = serde_json::from_value(obj).unwrap();
        assert!(ln_kit::LnInstance::new(7).is_solution(s.x(), s.y(), s.n()));
        assert_eq!(serde_json::to_value(&s).unwrap()["x"], l["x"]);
    }
}

#[test]
fn small_commands() {
    let v = lines(&ln_kit(&["lucas", "--p", "1", "--q", "5", "--n", "7"]));
    assert_eq!(v[0]["u_n"], "1");
    let v = lines(&ln_kit(&["lucas", "--p", "1", "--q", "5", "--n", "3"]));
    assert_eq!(v[0]["u_n"], "-4");

    let v = lines(&ln_kit(&["classnum", "--disc", "-19"]));
    assert_eq!(v[0]["h"], 1);
    assert_eq!(v[0]["forms"], serde_json::json!([[1, 1, 5]]));

    let v = lines(&ln_kit(&["primdiv", "--p", "1", "--q", "5", "--n", "7"]));
    assert_eq!(v[0]["exists"], false);
    assert_eq!(v[0]["indeterminate"], false);

    let v = lines(&ln_kit(&["oracle", "--d", "2", "--lambda", "1", "--n-min", "3", "--n-max", "3", "--x-max", "100"]));
    assert_eq!(v.len(), 1);
    assert_eq!((v[0]["x"].as_str(), v[0]["y"].as_str()), (Some("5"), Some("3")));

    let v = lines(&ln_kit(&["family", "--k", "7", "--n7", "1"]));
    assert_eq!(v[0]["x"], "499674302101");
}

#[test]
fn indeterminate_factoring_is_a_field_not_a_failure() {
    // u_101 of (1, 5) has no prime factor below 10^6; a zero budget leaves it unsplit.
    let out = ln_kit(&["primdiv", "--p", "1", "--q", "5", "--n", "101", "--budget", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = lines(&out);
    assert_eq!(v[0]["indeterminate"], true);
    assert_eq!(v[0]["exists"], false);
    assert!(v[0]["unfactored"].is_string());
}

#[test]
fn verify_exit_status() {
    let out = ln_kit(&["verify", "--k", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["complete"], true);
    let out = ln_kit(&["verify", "--k", "0", "--x-max", "500"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["solve"][..],
        &["solve", "--k", "-1"],
        &["solve", "--k", "0", "--x-max", "abc"],
        &["bogus"],
        &["classnum", "--disc", "-20x"],
        &["classnum", "--disc", "5"],
        &["lucas", "--p", "2", "--q", "1", "--n", "3"],
        &["family", "--k", "3", "--n7", "1"],
        &["family", "--k", "3", "--n1", "1", "--n2", "1"],
        &["oracle", "--k", "0", "--n-min", "1"],
        &["solve", "--k", "0", "--n-max", "1"],
    ] {
        let out = ln_kit(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    assert_eq!(ln_kit(&["--help"]).status.code(), Some(0));
}

#[test]
fn text_format() {
    let out = ln_kit(&["--format", "text", "family", "--k", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "solution: x=9 y=5 n=2\nsolution: x=559 y=5 n=7\n");
}
