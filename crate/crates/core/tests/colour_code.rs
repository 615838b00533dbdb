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

use std::path::Path;

use zxcc_core::code::*;
use zxcc_core::{Diagram, Exec, RuleLibrary};

fn fixture_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/v1"))
}

#[test]
fn shipped_fixtures_are_current() {
    let files = fixture_files(RuleLibrary::builtin()).unwrap();
    for (name, body) in &files {
        let on_disk = std::fs::read_to_string(fixture_dir().join(name))
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(on_disk.trim_end(), body, "{name} is stale");
    }
    let listed = std::fs::read_dir(fixture_dir()).unwrap().count();
    assert_eq!(listed, files.len());
}

#[test]
fn shipped_diagrams_load() {
    for (name, d) in fixtures().unwrap() {
        let text = std::fs::read_to_string(fixture_dir().join(format!("{name}.json"))).unwrap();
        assert_eq!(Diagram::from_json_str(&text).unwrap(), d, "{name}");
    }
}

#[test]
fn scripts_rebuild_identically() {
    let lib = RuleLibrary::builtin();
    assert_eq!(cnot_script(lib).unwrap(), shipped_cnot_script().unwrap());
    assert_eq!(
        encoder_script(lib).unwrap(),
        shipped_encoder_script().unwrap()
    );
}

#[test]
fn cnot_script_uses_two_pivots() {
    let t = shipped_cnot_script().unwrap();
    let rev: Vec<_> = t.steps.iter().filter(|s| s.dir.is_rev()).collect();
    assert_eq!(rev.len(), CNOT_MAX_PIVOTS);
    assert!(rev.iter().all(|s| s.rule == zxcc_core::simproc::PIVOT_RULE));
}

#[test]
fn every_obligation_passes() {
    let reports = run_all(RuleLibrary::builtin(), Exec::default(), None).unwrap();
    let names: Vec<&str> = reports.iter().map(|r| r.obligation.as_str()).collect();
    let mut want: Vec<&str> = OBLIGATIONS.to_vec();
    want.push(RULES_OBLIGATION);
    assert_eq!(names, want);
    for r in &reports {
        assert!(r.passed(), "{}", r.render_text());
    }
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let lib = RuleLibrary::builtin();
    for name in ["codewords", "pauli-x2", "cnot"] {
        let a = verify(lib, name, Exec::Sequential).unwrap().to_json_line();
        let b = verify(lib, name, Exec::Parallel).unwrap().to_json_line();
        assert_eq!(a, b);
    }
}

#[test]
fn traces_are_written_where_reported() {
    let dir = std::env::temp_dir().join(format!("zxcc-traces-{}", std::process::id()));
    let lib = RuleLibrary::builtin();
    let mut reps = vec![verify(lib, "enc-dec", Exec::default()).unwrap()];
    write_traces(&mut reps, &dir).unwrap();
    let path = reps[0].trace.clone().unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let t = zxcc_core::ProofTrace::from_json_str(&text).unwrap();
    assert_eq!(Some(&t), reps[0].proof.as_ref());
    std::fs::remove_dir_all(dir).unwrap();
}
