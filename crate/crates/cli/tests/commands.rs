use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const PD: &str = r#"{
  "players": 2,
  "strategies": [["c", "d"], ["c", "d"]],
  "outcomes": {
    "c,c": {"label": "cc", "utils": [2, 2]},
    "c,d": {"label": "cd", "utils": [0, 3]},
    "d,c": {"label": "dc", "utils": [3, 0]},
    "d,d": {"label": "dd", "utils": [1, 1]}
  }
}"#;

const TIEBREAK_SPEC: &str = r#"{"alternatives": ["a","b","c"], "ballots": ["abc","bca","cab"],
  "rule": "plurality", "tiebreak": "abc"}"#;

fn masl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_masl")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_reports_truth_as_exit_code() {
    let dir = TempDir::new().unwrap();
    let pd = write(&dir, "pd.json", PD);
    let yes = masl(&["check", "--game", s(&pd), "--formula", "[(d,d)] u1=1", "--state", "c,c"]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout(&yes).trim(), "true");
    let no = masl(&["check", "--game", s(&pd), "--formula", "u1=2", "--state", "d,d"]);
    assert_eq!(no.status.code(), Some(1));
    let ext = masl(&["check", "--game", s(&pd), "--property", "nashHere"]);
    assert_eq!(ext.status.code(), Some(0));
    assert_eq!(stdout(&ext), "1 of 4 states\nd,d\n");
}

#[test]
fn bad_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let pd = write(&dir, "pd.json", PD);
    let broken = write(&dir, "broken.json", "{\"players\": 2");
    for args in [
        vec!["check", "--game", s(&broken), "--formula", "T"],
        vec!["check", "--game", s(&pd), "--formula", "[(e,d)] T"],
        vec!["check", "--game", s(&pd), "--formula", "(c,d,c)"],
        vec!["check", "--game", s(&pd), "--formula", "T", "--state", "x,y"],
        vec!["check", "--game", "/no/such/file.json", "--formula", "T"],
        vec!["check", "--game", s(&pd)],
        vec!["demo", "nothing"],
    ] {
        let out = masl(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn nash_agrees_with_oracle() {
    let dir = TempDir::new().unwrap();
    let pd = write(&dir, "pd.json", PD);
    let out = masl(&["nash", "--game", s(&pd)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("oracle:  d,d\nformula: d,d\nagree"));
}

#[test]
fn voting_audit_and_induced_game() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "spec.json", TIEBREAK_SPEC);
    let out = masl(&["voting", "audit", "--spec", s(&spec)]);
    assert_eq!(out.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["resolute"], true);
    assert_eq!(report["strategyProof"], false);
    assert_eq!(report["nonImposed"], true);
    assert_eq!(report["dictators"], Value::Array(vec![]));
    assert_eq!(report["profilesChecked"], 216);
    assert_eq!(report["witness"]["before"], serde_json::json!(["a"]));

    let game = dir.path().join("game.json");
    let out = masl(&["voting", "game", "--spec", s(&spec), "-o", s(&game)]);
    assert_eq!(out.status.code(), Some(0));
    let truthful = masl(&["check", "--game", s(&game), "--formula", "u1=2 & u2=0 & u3=1", "--state", "a,b,c"]);
    assert_eq!(truthful.status.code(), Some(0));
    let nash = masl(&["check", "--game", s(&game), "--property", "nashHere", "--state", "a,c,c"]);
    assert_eq!(nash.status.code(), Some(0));
}

#[test]
fn coalition_commands() {
    let dir = TempDir::new().unwrap();
    let pd = write(&dir, "pd.json", PD);
    let out = masl(&["cl", "translate", "--game", s(&pd), "--formula", "[C {1}] u1>=1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("(d,??)"));
    let out = masl(&["cl", "check", "--game", s(&pd), "--formula", "[C {1,2}] u1=3"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).matches("true").count(), 4);
    let out = masl(&["cl", "check", "--game", s(&pd), "--formula", "[C {1}] u1=3", "--state", "d,c"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn lift_then_check_knowledge() {
    let dir = TempDir::new().unwrap();
    let pd = write(&dir, "pd.json", PD);
    let model = dir.path().join("model.json");
    assert_eq!(masl(&["lift", "--game", s(&pd), "-o", s(&model)]).status.code(), Some(0));
    // player 1 knows their own choice but not player 2's
    let own = masl(&["echeck", "--model", s(&model), "--formula", "[ag1] (c,!!)", "--world", "full:c,d"]);
    assert_eq!(own.status.code(), Some(0));
    let other = masl(&["echeck", "--model", s(&model), "--formula", "[ag1] (!!,d)", "--world", "full:c,d"]);
    assert_eq!(other.status.code(), Some(1));
}

#[test]
fn axioms_report_json() {
    let dir = TempDir::new().unwrap();
    let pd = write(&dir, "pd.json", PD);
    for extra in [None, Some("--epistemic")] {
        let mut args = vec!["axioms", "--game", s(&pd), "--failures-only"];
        args.extend(extra);
        let out = masl(&args);
        assert_eq!(out.status.code(), Some(0), "{extra:?}");
        let reports: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(reports[0]["report"]["invalid"], 0);
        assert!(reports[0]["report"]["instances"].as_u64().unwrap() > 0);
    }
}

#[test]
fn every_demo_passes() {
    for name in ["pd", "vote3", "vote3tb", "fig5"] {
        let out = masl(&["demo", name]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert!(!stdout(&out).contains("FAILED"));
    }
    let vote = stdout(&masl(&["demo", "vote3"]));
    assert!(vote.contains("a,b,c") && vote.contains("(1,1,1)"));
}

#[test]
fn parse_echoes_canonical_form_and_tree() {
    let dir = TempDir::new().unwrap();
    let pd = write(&dir, "pd.json", PD);
    let out = masl(&["parse", "--game", s(&pd), "--formula", "[ ( d , d ) ]u1=1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let (first, rest) = text.split_once('\n').unwrap();
    assert_eq!(first, "[(d,d)] u1=1");
    serde_json::from_str::<Value>(rest).unwrap();
    let tft = masl(&["parse", "--game", s(&pd), "--property", "titForTat(2)"]);
    assert!(stdout(&tft).starts_with("(?(c,!!);(??,c)+?(d,!!);(??,d))*"));
}
