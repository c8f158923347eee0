use std::path::PathBuf;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_steiner-degree");

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("steiner-degree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn oracle_on_hitting_set_fixture() {
    let file = scratch("hs.json", "");
    let gen = run(&["gen", "hitting-set-star", "--sets", "[[1,2],[2,3]]", "--out", file.to_str().unwrap()]);
    assert!(gen.status.success());
    let v = json(&run(&["oracle", file.to_str().unwrap()]));
    assert_eq!(v["objective"], 1);
    assert_eq!(v["tree"]["edges"], serde_json::json!([[0, 2]]));
    let csv = run(&["oracle", file.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "u,v\n0,2\n");
}

#[test]
fn exit_codes() {
    let infeasible = scratch("inf.json", r#"{"n":3,"edges":[[0,1],[1,2]],"groups":[[2]],"bounds":[1,1,1],"root":0}"#);
    assert_eq!(run(&["solve-tree", infeasible.to_str().unwrap()]).status.code(), Some(2));
    let ok = scratch("ok.json", r#"{"n":3,"edges":[[0,1],[1,2]],"groups":[[2]],"bounds":[1,2,1],"root":0}"#);
    assert_eq!(run(&["solve-tree", ok.to_str().unwrap(), "--iter-cap", "0"]).status.code(), Some(3));
    assert_eq!(run(&["solve-tree", ok.to_str().unwrap()]).status.code(), Some(0));
    let unknown = scratch("bad.json", r#"{"n":2,"edges":[[0,1]],"groups":[[1]],"extra":1}"#);
    assert_eq!(run(&["oracle", unknown.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn reports_embed_their_configuration() {
    let v = json(&run(&["bench", "--suite", "ktree", "--runs", "3", "--seed", "9"]));
    let report = &v["reports"][0];
    assert_eq!(report["suite"], "ktree");
    assert_eq!(report["seed"], 9);
    assert_eq!(report["runs"], 3);
    assert!(report["constants"].as_object().is_some_and(|c| !c.is_empty()));
    assert!(report.get("wall_time_ms").is_none());
}

#[test]
fn gen_is_repeatable() {
    let args = ["gen", "bounded-tw", "--w", "2", "--n", "14", "--seed", "7"];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, run(&args).stdout);
}
