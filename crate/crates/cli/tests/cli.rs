//! End-to-end runs of the binary against golden reports.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the golden files.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn data(name: &str) -> String {
    root().join("data").join(name).display().to_string()
}

fn run(args: &[&str]) -> (Value, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_vasbound"))
        .args(args)
        .output()
        .expect("binary runs");
    let body: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{args:?}: invalid JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    });
    (body, out.status.code().expect("exit code"))
}

fn golden(name: &str, args: &[&str]) {
    let (body, code) = run(args);
    assert_eq!(code, 0, "{args:?}: {body}");
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.json"));
    let text = serde_json::to_string_pretty(&body).unwrap() + "\n";
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, &text).unwrap();
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(text, want, "golden mismatch for {name}");
}

#[test]
fn golden_reports() {
    for net in ["a", "b", "c", "d"] {
        let file = data(&format!("net-{net}.net"));
        golden(&format!("bounded-net-{net}"), &["bounded", &file]);
        golden(&format!("approx-net-{net}"), &["approx", &file]);
        golden(&format!("decompose-net-{net}"), &["decompose", &file]);
        golden(&format!("dclosure-net-{net}"), &["dclosure", &file]);
        golden(&format!("factors-ab-net-{net}"), &["factors", &data("ab.nfa"), &file]);
        golden(&format!("universal-ab-net-{net}"), &["universal", &data("a-or-b.nfa"), &file]);
        golden(&format!("predicate-notb-net-{net}"), &["predicate", "notb", &file]);
        golden(&format!("counting-net-{net}"), &["counting", &data("count-a.ca"), &file]);
    }
    golden("oracle-enum-net-a", &["oracle", "enum", "NET-A", "--maxlen", "4"]);
    golden("oracle-factors-net-a", &["oracle", "factors", "NET-A", "b", "a"]);
    golden("oracle-fcount", &["oracle", "fcount", "abab", &data("ab.nfa")]);
    golden("separable-b-c", &["separable", "NET-B", "NET-C"]);
}

#[test]
fn headline_verdicts() {
    let (b, _) = run(&["bounded", "NET-B"]);
    assert_eq!(b["verdict"], "bounded");
    assert_eq!(b["witness"], "a*b*");
    let (c, _) = run(&["approx", "NET-C"]);
    assert_eq!(c["rows"], 0);
    let (s, _) = run(&["separable", "NET-A", "NET-B"]);
    assert_eq!(s["verdict"], "inseparable");
}

#[test]
fn dclosure_writes_an_automaton() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.nfa");
    let dot = dir.path().join("d.dot");
    let (body, code) = run(&["dclosure", "NET-D", "--out", out.to_str().unwrap(), "--dot", dot.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(body["artifacts"].as_array().unwrap().len(), 2);
    let nfa = vasbound_core::automata::parse_nfa(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let a_star = vasbound_core::automata::Nfa::word_star(&["a"], &["a".to_string()]).unwrap();
    assert!(vasbound_core::automata::Nfa::equivalent(&nfa, &a_star).unwrap());
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("digraph"));
}

#[test]
fn approx_and_decompose_write_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (body, code) = run(&["approx", "NET-B", "--out", d]);
    assert_eq!(code, 0);
    let index = std::fs::read_to_string(dir.path().join("index.txt")).unwrap();
    assert_eq!(index.lines().count(), body["rows"].as_u64().unwrap() as usize);
    let (body, _) = run(&["decompose", "NET-B", "--out", d]);
    let dump = std::fs::read_to_string(dir.path().join("mgts0.txt")).unwrap();
    assert!(dump.contains("component 0") && dump.contains("m="));
    assert_eq!(body["artifacts"].as_array().unwrap().len(), body["mgts"].as_u64().unwrap() as usize);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.net");
    std::fs::write(&bad, "places p\ntrans t pre p9:1 label a\n").unwrap();
    let (body, code) = run(&["bounded", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(body["error"].as_str().unwrap().contains("p9"));

    std::fs::write(&bad, "places p\ninit p:-1\n").unwrap();
    assert_eq!(run(&["bounded", bad.to_str().unwrap()]).1, 1);

    assert_eq!(run(&["bounded", "NET-A", "--no-such-flag"]).1, 1);

    // One worklist item is not enough to decompose NET-B.
    let (body, code) = run(&["bounded", "NET-B", "--max-worklist", "1"]);
    assert_eq!(code, 2);
    assert_eq!(body["verdict"], "unknown");

    let (body, code) = run(&["oracle", "factors", "NET-A", "b", "a", "--max-token", "0"]);
    assert_eq!(code, 2);
    assert_eq!(body["verdict"], "unknown");
}

#[test]
fn net_file_round_trips() {
    let text = std::fs::read_to_string(data("net-a.net")).unwrap();
    let n = vasbound_core::nets::parse_net(&text).unwrap();
    let printed = vasbound_core::nets::print_net(&n);
    assert_eq!(vasbound_core::nets::parse_net(&printed).unwrap(), n);
    assert_eq!(printed, vasbound_core::nets::fixtures::NET_A);
}
