use bott::format::{encode_digraph6, parse_bin};
use std::process::{Command, Output};

fn bott(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bott"))
        .args(args)
        .env_remove("BOTT_ORBIT_BUDGET")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> serde_json::Value {
    let text = String::from_utf8(o.stderr.clone()).unwrap();
    assert_eq!(text.trim_end().lines().count(), 1, "{text}");
    serde_json::from_str(text.trim()).unwrap()
}

#[test]
fn classify_three() {
    let o = bott(&["classify", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(
        (v["D"].as_u64(), v["O"].as_u64(), v["S"].as_u64()),
        (Some(4), Some(2), Some(0))
    );
    assert_eq!(v["classes"].as_array().unwrap().len(), 4);
}

#[test]
fn classify_output_is_stable() {
    let a = bott(&["classify", "--n", "4", "--workers", "1"]);
    let b = bott(&["classify", "--n", "4", "--workers", "5"]);
    assert_eq!(a.stdout, b.stdout);
    let csv = stdout(&bott(&["classify", "--n", "4", "--csv"]));
    assert_eq!(csv.lines().count(), 13);
    assert!(csv.starts_with("canon,members,orientable,symplectic\n"));
}

#[test]
fn iso_class_four() {
    let o = bott(&["iso", "3:5", "3:7"]);
    assert_eq!(stdout(&o).trim(), r#"{"equivalent":true}"#);
    let o = bott(&["iso", "--format", "bin", "011/000/000", "010/001/000"]);
    assert_eq!(stdout(&o).trim(), r#"{"equivalent":false}"#);
}

#[test]
fn check_rejects_cycle() {
    let o = bott(&["check", "010/001/100"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["code"], "not_acyclic");
    let o = bott(&["check", "--format", "d6", "&AW"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors() {
    for args in [
        &["frobnicate"][..],
        &["classify"],
        &["check"],
        &["classify", "--n", "7"],
        &["classify", "--n", "9"],
    ] {
        let o = bott(args);
        assert_eq!(o.status.code(), Some(3), "{args:?}");
        assert!(stderr_json(&o)["code"].is_string());
    }
    let o = bott(&["check", "@/definitely/not/here"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn budget_exceeded() {
    let o = Command::new(env!("CARGO_BIN_EXE_bott"))
        .args(["canon", "3:5"])
        .env("BOTT_ORBIT_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["code"], "orbit_budget_exceeded");
}

#[test]
fn file_inputs() {
    let dir = std::env::temp_dir().join(format!("bott-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let m = dir.join("m.txt");
    std::fs::write(&m, "010\n000\n010\n").unwrap();
    let o = bott(&["decompose", &format!("@{}", m.display())]);
    assert_eq!(stdout(&o).trim(), r#"{"isolated":1,"factors":["2:1"]}"#);

    let s = dir.join("dags.d6");
    let dags = [
        "000/000/000",
        "010/000/000",
        "011/000/000",
        "010/001/000",
        "000/100/100",
        "011/001/000",
    ];
    let lines: Vec<String> = dags.iter().map(|d| encode_digraph6(&parse_bin(d).unwrap())).collect();
    std::fs::write(&s, format!(">>digraph6<<{}\n\n# comment\n", lines.join("\n"))).unwrap();
    let o = bott(&["classify", "--stream", s.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["D"], 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn other_commands() {
    let o = bott(&["betti", "3:5"]);
    assert_eq!(stdout(&o).trim(), r#"{"betti":[1,1,0,0],"rank":2}"#);
    let o = bott(&["invariants", "3:0"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["odd_height"], "inf");
    let o = bott(&["orbit", "3:1", "--limit", "1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["size"], 2);
    assert_eq!(v["members"].as_array().unwrap().len(), 1);
    let o = bott(&["canon", "--format", "bin", "001/000/010"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["canon"], "3:5");
    assert_eq!(bott(&["--help"]).status.code(), Some(0));
}
