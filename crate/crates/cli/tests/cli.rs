use std::process::{Command, Output};

use strlink::linalg::Matrix;
use strlink::ring::{LaurentPoly, RatFunc};
use strlink::verify::{example_s_components, example_s_gamma, EXAMPLE_S_WORD};

fn strlink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strlink")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let o = strlink(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn ltw_of_example_round_trips_through_json() {
    let v = json(&["compute", "--strands", "2", "--close", "1", "--braid", EXAMPLE_S_WORD, "--grade", "1"]);
    let gamma: Matrix<RatFunc> = serde_json::from_value(v["components"][0]["matrix"].clone()).unwrap();
    assert_eq!(gamma, example_s_gamma());
    let den: LaurentPoly = serde_json::from_value(v["denominator"].clone()).unwrap();
    assert_eq!(den, LaurentPoly::from_int_terms(&[(0, 2), (2, -1)]));
}

#[test]
fn ohtsuki_components_of_example() {
    let v = json(&["compute", "--example-s", "--invariant", "ohtsuki"]);
    for (k, expected) in example_s_components().into_iter().enumerate() {
        let got: Matrix<RatFunc> = serde_json::from_value(v["components"][k]["matrix"].clone()).unwrap();
        assert_eq!(got, expected.map(|x| RatFunc::from(x)), "grade {k}");
    }
    assert_eq!(v["grade0_at_t1"], "1");
}

#[test]
fn pure_braid_scalar_is_one_at_t1() {
    let o = strlink(&["compute", "--strands", "3", "--braid", "1 -2 1", "--invariant", "ohtsuki", "--grade", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("t^(-1/2)"), "{text}");
    assert!(text.contains("grade 0 at t = 1: 1"), "{text}");
}

#[test]
fn identity_braid_gives_identity() {
    let v = json(&["compute", "--strands", "3", "--braid", "", "--grade", "1"]);
    let gamma: Matrix<RatFunc> = serde_json::from_value(v["components"][0]["matrix"].clone()).unwrap();
    assert!(gamma.is_identity());
}

#[test]
fn pretty_output_is_deterministic() {
    let args = ["compute", "--example-s", "--invariant", "brt"];
    assert_eq!(stdout(&strlink(&args)), stdout(&strlink(&args)));
}

#[test]
fn exit_codes() {
    assert_eq!(strlink(&["compute", "--strands", "2", "--braid", "1 x"]).status.code(), Some(2));
    assert_eq!(strlink(&["compute", "--strands", "2", "--braid", "3"]).status.code(), Some(2));
    assert_eq!(strlink(&["compute", "--example-s", "--grade", "5"]).status.code(), Some(2));
    assert_eq!(strlink(&["compute", "--example-s", "--invariant", "nope"]).status.code(), Some(2));
    let o = strlink(&["compute", "--strands", "2", "--close", "1", "--braid", ""]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[3]"));
    assert_eq!(strlink(&["verify", "--strands", "2", "--close", "2", "--braid", "3"]).status.code(), Some(3));
    assert_eq!(strlink(&["oracle", "--example-s", "--t0", "1"]).status.code(), Some(2));
    assert_eq!(strlink(&["oracle", "--example-s", "--t0", "abc"]).status.code(), Some(2));
}

#[test]
fn verify_example_and_random_suite() {
    let v = json(&["verify", "--example-s"]);
    assert_eq!(v["passed"], true);
    let v = json(&["verify", "--random", "--n", "3", "--m", "2", "--trials", "50", "--seed", "7", "--threads", "2"]);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 50);
    assert!(reports.iter().all(|r| r["passed"] == true));
}

#[test]
fn oracle_gap() {
    let v = json(&["oracle", "--example-s", "--terms", "60", "--t0", "9/10"]);
    assert!(v["max_gap"].as_f64().unwrap() < 1e-6);
    assert_eq!(v["non_increasing"], true);
    let v = json(&["oracle", "--strands", "2", "--braid", "1 1", "--terms", "3", "--t0", "0.5"]);
    assert_eq!(v["max_gap"].as_f64().unwrap(), 0.0);
    let v = json(&["oracle", "--example-s", "--terms", "2", "--t0", "0.9"]);
    assert_eq!(v["non_increasing"], true);
}
