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

//! Proof scripts and the versioned fixture directory.
//!
//! The two proofs that need steps the strategies cannot find on their own
//! ship as trace files. They are rebuilt by [`cnot_script`] and
//! [`encoder_script`] and checked against the shipped copies in tests.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::Result;
use crate::graph::Diagram;
use crate::rewrite::RuleLibrary;
use crate::simproc::{
    prove_by_common_reduct, reduce_with_pivots, ProofTrace, Simproc, DEFAULT_STEP_BUDGET,
};

use super::derive::{derive_cnot_physical, encoder_circuit};
use super::fixture::{build_cnot_logical, build_dec, build_enc, fixtures};

pub const FIXTURE_VERSION: &str = "v1";
pub const CNOT_SCRIPT_FILE: &str = "cnot-2-3.trace.json";
pub const ENCODER_SCRIPT_FILE: &str = "enc-circuit.trace.json";
/// Pivots the CNOT script may use.
pub const CNOT_MAX_PIVOTS: usize = 2;

const SHIPPED_CNOT: &str = include_str!("../../../../fixtures/v1/cnot-2-3.trace.json");
const SHIPPED_ENCODER: &str = include_str!("../../../../fixtures/v1/enc-circuit.trace.json");

/// `fixtures/v1/<file>`, as reported in verification output.
pub fn fixture_path(file: &str) -> String {
    format!("fixtures/{FIXTURE_VERSION}/{file}")
}

/// Enc, then the physical circuit, then Dec.
pub fn cnot_composite(physical: &Diagram) -> Result<Diagram> {
    build_enc().compose(physical)?.compose(&build_dec())
}

/// The CNOT(2,3) proof: reduce_phase_free with pivots until the composite
/// is isomorphic to the logical CNOT.
pub fn cnot_script(lib: &RuleLibrary) -> Result<ProofTrace> {
    let physical = derive_cnot_physical(2, 3)?;
    let start = cnot_composite(&physical.diagram)?;
    let goal = build_cnot_logical(2, 3)?;
    let s = Simproc::builtin("reduce_phase_free")?;
    let (t, _) = reduce_with_pivots(lib, &s, &start, &goal, CNOT_MAX_PIVOTS, DEFAULT_STEP_BUDGET)?;
    Ok(t)
}

/// Enc to the prepared encoder circuit through their basic_simp reduct.
pub fn encoder_script(lib: &RuleLibrary) -> Result<ProofTrace> {
    let s = Simproc::builtin("basic_simp")?;
    prove_by_common_reduct(
        lib,
        &s,
        &build_enc(),
        &encoder_circuit().prepared,
        DEFAULT_STEP_BUDGET,
    )
}

pub fn shipped_cnot_script() -> Result<ProofTrace> {
    ProofTrace::from_json_str(SHIPPED_CNOT)
}

pub fn shipped_encoder_script() -> Result<ProofTrace> {
    ProofTrace::from_json_str(SHIPPED_ENCODER)
}

/// Every fixture file by name: the code diagrams, the prepared encoder
/// circuit and the two scripts.
pub fn fixture_files(lib: &RuleLibrary) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (name, d) in fixtures()? {
        out.insert(format!("{name}.json"), d.to_json_string());
    }
    out.insert(
        "enc-circuit.json".into(),
        encoder_circuit().prepared.to_json_string(),
    );
    out.insert(CNOT_SCRIPT_FILE.into(), cnot_script(lib)?.to_json_string());
    out.insert(
        ENCODER_SCRIPT_FILE.into(),
        encoder_script(lib)?.to_json_string(),
    );
    Ok(out)
}

/// Writes [`fixture_files`] into `dir`, creating it.
pub fn write_fixtures(lib: &RuleLibrary, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for (name, body) in fixture_files(lib)? {
        let path = dir.join(name);
        std::fs::write(&path, body + "\n")?;
        written.push(path);
    }
    Ok(written)
}
