use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn ri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ri-ortho")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

const ONES: [&str; 8] = ["--family", "constant", "--param", "A=1", "--param", "B=1", "--param", "C=1"];

fn with_ones<'a>(head: &[&'a str]) -> Vec<&'a str> {
    head.iter().copied().chain(ONES).collect()
}

fn temp_file(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("ri-ortho-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn moments_of_the_all_ones_system() {
    let o = ri(&with_ones(&["moments", "--n", "5"]));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 2 7 29 133 650");
}

#[test]
fn moments_as_json() {
    let o = ri(&with_ones(&["--format", "json", "moments", "--n", "3"]));
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let mu: Vec<&str> = v["moments"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(mu, ["1", "2", "7", "29"]);
}

#[test]
fn param_list_after_one_flag() {
    let o = ri(&["moments", "--n", "2", "--family", "constant", "--param", "A=1", "B=1", "C=1"]);
    assert_eq!(stdout(&o).trim(), "1 2 7");
}

#[test]
fn polynomial_methods_agree() {
    let outs: Vec<String> = ["recurrence", "tiling", "det"]
        .iter()
        .map(|m| stdout(&ri(&with_ones(&["poly", "--n", "4", "--method", m]))))
        .collect();
    assert!(outs.iter().all(|o| *o == outs[0]), "{outs:?}");
}

#[test]
fn functional_kills_q_n() {
    let o = ri(&with_ones(&["functional", "--expr", "Q_3"]));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn path_counts() {
    let got: Vec<String> = (0..6)
        .map(|n| stdout(&ri(&["paths", "count", "--to", &format!("{n},0")])).trim().to_string())
        .collect();
    assert_eq!(got, ["1", "2", "7", "29", "133", "650"]);
}

#[test]
fn path_enumeration_lists_words() {
    let o = ri(&["--format", "json", "paths", "enumerate", "--to", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o).to_string().contains("UV"));
}

#[test]
fn hankel_of_the_all_ones_system() {
    let o = ri(&with_ones(&["--format", "json", "dets", "--kinds", "hankel", "--n", "3"]));
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn family_coefficients_round_trip_through_a_table_file() {
    let o = ri(&["--format", "json", "family", "laguerre", "--param", "a=1/3", "--n", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let mut table = json(&o);
    table.as_object_mut().unwrap().remove("family");
    let file = temp_file("laguerre.json", &table.to_string());
    let from_file = ri(&["moments", "--n", "4", "--coeffs", file.to_str().unwrap()]);
    let from_family = ri(&["moments", "--n", "4", "--family", "laguerre", "--param", "a=1/3"]);
    std::fs::remove_file(&file).ok();
    assert_eq!(from_file.status.code(), Some(0), "{}", stdout(&from_file));
    assert_eq!(stdout(&from_file), stdout(&from_family));
    assert_eq!(stdout(&from_family).trim(), "1 4/3 28/9 280/27 3640/81");
}

#[test]
fn histories_check_and_map() {
    assert_eq!(ri(&["histories", "laguerre", "--n", "4", "--check"]).status.code(), Some(0));
    assert_eq!(ri(&["histories", "meixner", "--n", "4", "--check"]).status.code(), Some(0));
    let o = ri(&["--format", "json", "histories", "laguerre", "--n", "3", "--map"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o).is_array() || json(&o).is_object());
}

#[test]
fn verify_one_suite() {
    let o = ri(&["verify", "--suite", "histories", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
}

#[test]
fn degenerate_systems_exit_2() {
    let zero = ["--family", "constant", "--param", "A=0", "B=0", "C=0"];
    let args: Vec<&str> = ["dets", "--n", "3"].into_iter().chain(zero).collect();
    let o = ri(&args);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("error:"));
    let args: Vec<&str> = ["--format", "json", "poly", "--n", "3", "--method", "det"].into_iter().chain(zero).collect();
    let o = ri(&args);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["exit_code"], 2);
}

#[test]
fn bad_input_exits_3() {
    for args in [
        vec!["bogus"],
        vec!["moments", "--n", "3"],
        vec!["moments", "--n", "3", "--family", "meixner", "--param", "b=1", "c=1"],
        vec!["moments", "--n", "3", "--coeffs", "/nonexistent/table.json"],
        vec!["family", "laguerre", "--param", "a"],
        vec!["verify", "--suite", "nothing"],
        vec!["functional", "--expr", "P_2 +"],
    ] {
        let o = ri(&args);
        assert_eq!(o.status.code(), Some(3), "{args:?}: {}", stdout(&o));
    }
}
