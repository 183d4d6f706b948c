use std::io::Write;
use std::process::{Command, Output, Stdio};

fn spencer(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_spencer"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn principal_class_series_from_flags() {
    let o = spencer(&["hilbert", "--vars", "3", "--degrees", "3,2", "--trunc", "6"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1,3,5,6,6,6,6");
}

#[test]
fn flagship_example_passes() {
    let o = spencer(&["examples", "run", "example7"], None);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.starts_with("PASS example7"));
    assert!(out.contains("note: dim R = 16"));
}

#[test]
fn whole_corpus_passes() {
    let o = spencer(&["examples", "run", "all", "--report", "json"], None);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let list = v.as_array().unwrap();
    assert_eq!(list.len(), 14);
    assert!(list.iter().all(|r| r["error"].is_null()));
}

#[test]
fn unknown_example_is_an_input_error() {
    let o = spencer(&["examples", "run", "nope"], None);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn empty_system() {
    let o = spencer(&["analyze", "-", "--report", "json"], Some("vars=3\n"));
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["codimension"], 0);
    assert_eq!(v["purity"]["pure"], true);
    assert_eq!(v["inverse"]["finite"], false);
    assert!(v["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("infinite")));
}

#[test]
fn json_is_byte_identical() {
    let text = "vars=3; eq: y[3,3,3] - y[1,1]; eq: y[2,2] - y[1,3]";
    let a = spencer(&["analyze", "-", "--report", "json", "--seed", "7"], Some(text));
    let b = spencer(&["analyze", "-", "--report", "json", "--seed", "7"], Some(text));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn parse_errors_exit_with_three() {
    let o = spencer(&["analyze", "-"], Some("vars=3; eq: y[5]"));
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("<stdin>: 1:13"), "{err}");
}

#[test]
fn purity_with_a_frame() {
    let o = spencer(&["purity", "-", "--frame", "1,0,-1;0,1,0;0,0,1"], Some("vars=3; eq: y[1,3]; eq: y[2,3]"));
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("r=1 pure=false"), "{out}");
    assert!(out.contains("z^4"));
}

#[test]
fn singular_frame_is_rejected() {
    let o = spencer(&["purity", "-", "--frame", "1,1;1,1"], Some("vars=2; eq: y[1,1]"));
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn inverse_and_involution_subcommands() {
    let o = spencer(&["inverse", "-"], Some("vars=2; eq: y[2,2]; eq: y[1,2] - y[1,1]"));
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("dim 4\nparametric y, y_{1}, y_{2}, y_{11}"));

    let o = spencer(&["involution", "-", "--report", "json"], Some("vars=3; eq: y[1,1]; eq: y[1,3] - y[2]"));
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 2);
    assert_eq!(v["involutive"], true);
}

#[test]
fn hilbert_of_a_file_and_missing_input() {
    let o = spencer(&["hilbert", "-", "--trunc", "5"], Some("vars=3; eq: y[3,3] - y[1,1]; eq: y[2,3]; eq: y[2,2] - y[1,1]"));
    assert_eq!(stdout(&o).trim(), "1,3,3,1,0,0");
    let o = spencer(&["hilbert"], None);
    assert_eq!(o.status.code(), Some(3));
}
