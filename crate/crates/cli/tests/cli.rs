// Copyright contributors to the zxcc project
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use zxcc_core::code::{build_dec, build_enc, fixtures};
use zxcc_core::rewrite::{builtin_rules, RuleLibrary};
use zxcc_core::Diagram;

fn zxcc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zxcc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn put(dir: &Path, name: &str, d: &Diagram) -> String {
    let p = dir.join(name);
    std::fs::write(&p, d.to_json_string()).unwrap();
    p.display().to_string()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures/v1")
        .join(name)
}

#[test]
fn verify_enc_dec_exits_zero() {
    let o = zxcc(&["code", "verify", "--prop", "enc-dec"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("enc-dec      PASS"));
}

#[test]
fn check_prop_prints_witness() {
    let dir = tempfile::tempdir().unwrap();
    let a = put(
        dir.path(),
        "enc_then_dec.json",
        &build_enc().compose(&build_dec()).unwrap(),
    );
    let b = put(dir.path(), "id3.json", &Diagram::identity(3));
    let o = zxcc(&["check-prop", &a, &b]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("proportional: A = "));
    let o = zxcc(&["check-prop", &a, &b, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["proportional"], true);
    assert!(v["witness"].is_string());
}

#[test]
fn check_prop_false_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let a = put(dir.path(), "a.json", &Diagram::identity(3));
    let b = fixture("ccz-l.json");
    let o = zxcc(&["check-prop", &a, b.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
}

#[test]
fn missing_file_exits_two() {
    assert_eq!(code(&zxcc(&["eval", "missing.json"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(code(&zxcc(&["eval", bad.to_str().unwrap()])), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&zxcc(&["frobnicate"])), 2);
    assert_eq!(code(&zxcc(&["code", "verify", "--prop", "pauli-y9"])), 2);
    assert_eq!(
        code(&zxcc(&["code", "verify", "--all", "--prop", "ccz"])),
        2
    );
}

#[test]
fn eval_json_is_deterministic() {
    let f = fixture("cnot-l.json");
    let a = zxcc(&["eval", f.to_str().unwrap(), "--json"]);
    let b = zxcc(&["eval", f.to_str().unwrap(), "--json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["rows"], 8);
    assert_eq!(v["exact"], true);
    assert_eq!(v["entries"][0][0], "1/√2");
    let f = zxcc(&[
        "eval",
        fixture("cnot-l.json").to_str().unwrap(),
        "--json",
        "--float",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&f)).unwrap();
    assert_eq!(v["exact"], false);
}

#[test]
fn eval_entry_cap_is_a_resource_error() {
    let f = fixture("enc.json");
    let o = zxcc(&["eval", f.to_str().unwrap(), "--max-entries", "16"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn simp_then_replay_and_certify() {
    let dir = tempfile::tempdir().unwrap();
    let input = put(
        dir.path(),
        "in.json",
        &build_enc().compose(&build_dec()).unwrap(),
    );
    let out = dir.path().join("out.json");
    let trace = dir.path().join("t.json");
    let o = zxcc(&[
        "simp",
        "--proc",
        "reduce_phase_free",
        &input,
        "-o",
        out.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let reduced = Diagram::from_json_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(zxcc_core::iso_equal(&reduced, &Diagram::identity(3)));
    let o = zxcc(&[
        "replay",
        trace.to_str().unwrap(),
        "--initial",
        &input,
        "--certify",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("certified 38 steps"));
    let o = zxcc(&[
        "certify",
        trace.to_str().unwrap(),
        "--initial",
        &input,
        "--json",
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn doctored_trace_fails() {
    let dir = tempfile::tempdir().unwrap();
    let input = put(
        dir.path(),
        "in.json",
        &build_enc().compose(&build_dec()).unwrap(),
    );
    let out = dir.path().join("out.json");
    let trace = dir.path().join("t.json");
    zxcc(&[
        "simp",
        "--proc",
        "reduce_phase_free",
        &input,
        "-o",
        out.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
    ]);
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    v["steps"][3]["post"] = serde_json::json!("00");
    std::fs::write(&trace, v.to_string()).unwrap();
    let o = zxcc(&["replay", trace.to_str().unwrap(), "--initial", &input]);
    assert_eq!(code(&o), 1);
}

#[test]
fn step_budget_exits_three() {
    let dir = tempfile::tempdir().unwrap();
    let input = put(
        dir.path(),
        "in.json",
        &build_enc().compose(&build_dec()).unwrap(),
    );
    let out = dir.path().join("out.json");
    let trace = dir.path().join("partial.json");
    let o = zxcc(&[
        "simp",
        "--proc",
        "reduce_phase_free",
        &input,
        "-o",
        out.to_str().unwrap(),
        "--trace",
        trace.to_str().unwrap(),
        "--budget",
        "5",
    ]);
    assert_eq!(code(&o), 3);
    assert!(!out.exists());
    let partial =
        zxcc_core::ProofTrace::from_json_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(partial.len(), 5);
}

#[test]
fn rules_check_passes_and_catches_corruption() {
    let o = zxcc(&["rules-check", "--arity", "3"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let dir = tempfile::tempdir().unwrap();
    // green_id with a quarter-turn phase on the LHS spider.
    let mut rules = builtin_rules();
    let id = rules.iter().position(|r| r.name() == "green_id").unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&rules[id].to_json_string()).unwrap();
    let spider = v["lhs"]["vertices"]
        .as_object_mut()
        .unwrap()
        .values_mut()
        .find(|x| x["kind"] == "Z")
        .unwrap();
    spider["phase"] = serde_json::json!("1/4");
    rules[id] = zxcc_core::RewriteRule::from_json_str(&v.to_string()).unwrap();
    let lib = RuleLibrary::new(rules).unwrap();
    let file = dir.path().join("rules.json");
    std::fs::write(&file, lib.to_json_string()).unwrap();
    let o = zxcc(&["rules-check", "--rules", file.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let o = zxcc(&[
        "code",
        "verify",
        "--all",
        "--json",
        "--rules",
        file.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    let lines: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let rules_line = lines.iter().find(|l| l["obligation"] == "rules").unwrap();
    assert_eq!(rules_line["status"], "fail");
    assert!(lines
        .iter()
        .filter(|l| l["obligation"] != "rules")
        .all(|l| l["witness"]["skipped"].is_object()));
    std::fs::write(&file, "[{}]").unwrap();
    assert_eq!(
        code(&zxcc(&["rules-check", "--rules", file.to_str().unwrap()])),
        2
    );
}

#[test]
fn emit_matches_shipped_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    for name in fixtures().unwrap().keys() {
        let out = dir.path().join(format!("{name}.json"));
        let o = zxcc(&["code", "emit", name, "-o", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert_eq!(
            std::fs::read_to_string(&out).unwrap(),
            std::fs::read_to_string(fixture(&format!("{name}.json"))).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn verify_all_json_is_complete_and_stable() {
    let a = zxcc(&["code", "verify", "--all", "--json"]);
    assert_eq!(code(&a), 0, "{}", stdout(&a));
    let b = zxcc(&["code", "verify", "--all", "--json", "--sequential"]);
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<serde_json::Value> = stdout(&a)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 13);
    for l in &lines {
        assert_eq!(l["status"], "pass", "{l}");
        for key in ["obligation", "status", "witness", "trace"] {
            assert!(l.get(key).is_some(), "{key} missing");
        }
    }
}

#[test]
fn verify_writes_traces() {
    let dir = tempfile::tempdir().unwrap();
    let o = zxcc(&[
        "code",
        "verify",
        "--prop",
        "pauli-x1",
        "--json",
        "--trace-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let path = v["trace"].as_str().unwrap();
    assert!(Path::new(path).exists());
}
