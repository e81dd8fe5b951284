use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

const RAYS: &str = r#"{"dim":2,"pieces":[
  {"eq":[{"a":["0","1"],"b":"0"}],"le":[{"a":["-1","0"],"b":"0"}],"lt":[]},
  {"eq":[{"a":["1","0"],"b":"0"}],"le":[{"a":["0","-1"],"b":"0"}],"lt":[]}]}"#;

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ncx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn ncx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ncx")).args(args).env("NCX_COLOR", "0").output().unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).expect("one JSON value per line")).collect()
}

#[test]
fn check_reports_an_uncovered_point() {
    let f = scratch("rays.json", RAYS);
    let out = ncx(&["check", "--in", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["verdict"], false);
    assert_eq!(v["witness"], serde_json::json!(["1", "1"]));
}

#[test]
fn sum_of_two_rays_is_the_closed_quadrant() {
    let f = scratch("rays-sum.json", RAYS);
    let p = f.to_str().unwrap();
    let out = ncx(&["calc", "--op", "sum", "--a", p, "--b", p]);
    assert_eq!(out.status.code(), Some(0));
    let set = &json_lines(&out)[0];
    assert_eq!(set["pieces"].as_array().unwrap().len(), 1);
    assert_eq!(set["pieces"][0]["le"].as_array().unwrap().len(), 2);
}

#[test]
fn failed_qualification_exits_with_three() {
    let a = scratch("upper.json", r#"{"dim":1,"pieces":[{"eq":[],"le":[{"a":["-1"],"b":"0"}],"lt":[]}]}"#);
    let b = scratch("lower.json", r#"{"dim":1,"pieces":[{"eq":[],"le":[{"a":["1"],"b":"0"}],"lt":[]}]}"#);
    let out = ncx(&["calc", "--op", "intersect", "--a", a.to_str().unwrap(), "--b", b.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unreadable_input_exits_with_two() {
    let out = ncx(&["check", "--in", "/definitely/not/here.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
}

#[test]
fn reproduce_is_plain_without_color() {
    let out = ncx(&["reproduce", "strip-recession"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json_lines(&out).iter().filter(|v| v.get("passed").is_some()).all(|v| v["passed"] == true));
    assert!(!String::from_utf8_lossy(&out.stderr).contains('\u{1b}'));
}

#[test]
fn plot_writes_the_same_svg_twice() {
    let f = scratch("rays-plot.json", RAYS);
    let dir = f.parent().unwrap().to_path_buf();
    let (s1, s2) = (dir.join("a.svg"), dir.join("b.svg"));
    for s in [&s1, &s2] {
        let out = ncx(&["plot", "--in", f.to_str().unwrap(), "--out", s.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let (a, b) = (std::fs::read_to_string(s1).unwrap(), std::fs::read_to_string(s2).unwrap());
    assert!(a.starts_with("<svg"));
    assert_eq!(a, b);
}
