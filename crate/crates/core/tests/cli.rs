use std::io::Write;
use std::process::{Command, Output};

fn rbpois(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbpois")).args(args).env_remove("RBPOIS_FUEL").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn normalize_worked_example() {
    let o = rbpois(&["normalize", "R(x)*R(x)", "--weight", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "2*R(R(x)*x) + R(x*x)");
    let o = rbpois(&["normalize", "R(x)*R(x)", "--weight", "-1"]);
    assert_eq!(stdout(&o).trim(), "2*R(R(x)*x) - R(x*x)");
}

#[test]
fn normalize_output_round_trips() {
    let first = rbpois(&["normalize", "[R(x),R(y)]*R(x)", "--weight", "1/2", "--gens", "x,y"]);
    let text = stdout(&first);
    let again = rbpois(&["normalize", text.trim(), "--weight", "1/2", "--gens", "x,y"]);
    assert_eq!(stdout(&again), text);
    let left = rbpois(&["normalize", "[R(x),R(y)]*R(x)", "--weight", "1/2", "--gens", "x,y", "--left-normed"]);
    assert_eq!(stdout(&left), text);
}

#[test]
fn output_is_deterministic() {
    let args = ["normalize", "[[x,N(y)],N(N(x)*y)]", "--ns", "--json"];
    let a = rbpois(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, rbpois(&args).stdout);
    let args = ["check", "poisrb", "--cases", "10", "--json"];
    let a = rbpois(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, rbpois(&args).stdout);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(rbpois(&["normalize", "R(x"]).status.code(), Some(2));
    assert_eq!(rbpois(&["normalize", "x", "--weight", "1", "--ns"]).status.code(), Some(2));
    assert_eq!(rbpois(&["normalize", "x", "--weight", "one"]).status.code(), Some(2));
    assert_eq!(rbpois(&["check", "nosuch"]).status.code(), Some(2));
    assert_eq!(rbpois(&["expressible", "x*y"]).status.code(), Some(2));
    assert_eq!(rbpois(&["model-check", "/nonexistent/model.json"]).status.code(), Some(2));
    assert_eq!(rbpois(&[]).status.code(), Some(2));
}

#[test]
fn fuel_exhaustion_exits_three() {
    let o = Command::new(env!("CARGO_BIN_EXE_rbpois"))
        .args(["normalize", "R(R(x)*y)*R(R(y)*x)*R(x)", "--weight", "1"])
        .env("RBPOIS_FUEL", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn enumerate_counts() {
    let o = rbpois(&["enumerate", "--xdeg", "1", "--rdeg", "2", "--gens", "x"]);
    assert_eq!(stdout(&o), "x\nR(x)\nR(R(x))\ncount 3\n");
    let o = rbpois(&["enumerate", "--multilinear", "--rdeg", "0", "--gens", "x,y,z", "--count"]);
    assert_eq!(stdout(&o), "count 6\n");
}

#[test]
fn expressible_reports_both_answers() {
    let o = rbpois(&["expressible", "R(R(x)*x)", "--weight", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("expressible: k=2"), "{}", stdout(&o));
    let o = rbpois(&["expressible", "R(x)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "not expressible");
}

#[test]
fn model_check_passes_and_fails() {
    let good = include_str!("../examples/data/example1.json");
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(good.as_bytes()).unwrap();
    let o = rbpois(&["model-check", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("PASS\n"));

    let mut v: serde_json::Value = serde_json::from_str(good).unwrap();
    v["operator"]["weight"] = serde_json::json!("2");
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    bad.write_all(v.to_string().as_bytes()).unwrap();
    let o = rbpois(&["model-check", bad.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).ends_with("FAIL\n"));
}
