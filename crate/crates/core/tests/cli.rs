use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn bdtet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bdtet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json on stdout")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn vd_fixture_through_synthesis() {
    let dir = tempfile::tempdir().unwrap();
    let triad = dir.path().join("t.json");
    let module = dir.path().join("m.json");

    let o = bdtet(&[
        "fixture",
        "vd-triad",
        "--d",
        "1",
        "--beta",
        "1",
        "--gamma",
        "2",
        "-o",
        p(&triad),
    ]);
    assert_eq!(code(&o), 0);

    let o = bdtet(&["triad", "verify", p(&triad), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["verified"], true);
    assert_eq!(v["certificate"]["thin"], true);
    assert_eq!(v["certificate"]["reduced"], true);

    let o = bdtet(&["triad", "synthesize", p(&triad), "-o", p(&module), "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["c"], "2");
    assert_eq!(v["a"], "1/2");
    assert_eq!(v["B"], serde_json::json!([["-1", "-2"], ["0", "1"]]));
    assert_eq!(v["Bprime"], serde_json::json!([["1", "4"], ["0", "-1"]]));
    assert_eq!(v["Bdprime"], serde_json::json!([["3", "4"], ["-2", "-3"]]));
    assert_eq!(v["relations_checked"], 54);

    let o = bdtet(&["tet", "verify", p(&module)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("54 of 54"));

    let o = bdtet(&["tet", "corners", p(&module), "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["all_reduced"], true);
}

#[test]
fn counterexample_verifies_but_does_not_synthesize() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ce");
    let o = bdtet(&["fixture", "counterexample", "-o", p(&out)]);
    assert_eq!(code(&o), 0);
    assert!(out.join("x02.json").exists());

    let o = bdtet(&["triad", "verify", p(&out.join("triad.json"))]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert!(text.contains("shape: (1,2,2,1)"));
    assert!(text.contains("thin: no"));

    let module = dir.path().join("m.json");
    let o = bdtet(&[
        "triad",
        "synthesize",
        p(&out.join("triad.json")),
        "-o",
        p(&module),
    ]);
    assert_eq!(code(&o), 1);
    assert!(!module.exists());
}

#[test]
fn reduce_then_synthesize() {
    let dir = tempfile::tempdir().unwrap();
    let shifted = dir.path().join("s.json");
    let reduced = dir.path().join("r.json");
    std::fs::write(
        &shifted,
        r#"{"dim":2,"A":[["1","0"],["2","5"]],"Aprime":[["-1","0"],["2","1"]],"Adprime":[["-1/2","0"],["0","1/2"]]}"#,
    )
    .unwrap();
    let module = dir.path().join("m.json");
    let o = bdtet(&["triad", "synthesize", p(&shifted), "-o", p(&module)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("triad reduce"));

    let o = bdtet(&["triad", "reduce", p(&shifted), "-o", p(&reduced), "--json"]);
    assert_eq!(code(&o), 0);
    let v = json(&o);
    assert_eq!(v["witnesses"][0], serde_json::json!(["1/2", "-3/2"]));
    assert_eq!(v["witnesses"][2], serde_json::json!(["2", "0"]));
    assert_eq!(v["certificate"]["reduced"], true);

    let o = bdtet(&[
        "triad",
        "synthesize",
        p(&reduced),
        "--corner",
        "3021",
        "-o",
        p(&module),
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn refutations_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let jordan = dir.path().join("j.json");
    std::fs::write(
        &jordan,
        r#"{"dim":2,"A":[["1","1"],["0","1"]],"Aprime":[["1","0"],["0","2"]],"Adprime":[["1","0"],["0","2"]]}"#,
    )
    .unwrap();
    let o = bdtet(&["triad", "verify", p(&jordan), "--json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["verified"], false);
    assert!(v["refutation"]
        .as_str()
        .unwrap()
        .contains("not diagonalizable"));

    let module = dir.path().join("m.json");
    std::fs::write(
        &module,
        r#"{"dim":1,"X01":[["1"]],"X02":[["0"]],"X03":[["0"]],"X12":[["0"]],"X13":[["0"]],"X23":[["0"]]}"#,
    )
    .unwrap();
    let o = bdtet(&["tet", "verify", p(&module), "--json"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert_eq!(v["corner_ok"], false);
    assert_eq!(v["antisymmetry_ok"], true);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"dim":2,"A":[["0","0"],["0","1.5"]],"Aprime":[["0","0"],["0","0"]],"Adprime":[["0","0"],["0","0"]]}"#,
    )
    .unwrap();
    let o = bdtet(&["triad", "verify", p(&bad)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("A[1][1]"));

    let o = bdtet(&["triad", "verify", p(&dir.path().join("missing.json"))]);
    assert_eq!(code(&o), 2);

    let o = bdtet(&[
        "fixture", "vd-triad", "--d", "2", "--beta", "1", "--gamma", "0", "-o", "x.json",
    ]);
    assert_eq!(code(&o), 2);

    let o = bdtet(&["triad", "frobnicate"]);
    assert_eq!(code(&o), 2);

    let o = bdtet(&[
        "triad",
        "synthesize",
        p(&bad),
        "--corner",
        "0012",
        "-o",
        "m.json",
    ]);
    assert_eq!(code(&o), 2);
}
