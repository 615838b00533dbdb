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

//! Proof obligations about the code, each checked semantically and, where a
//! rewrite proof exists, by replaying and certifying it.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};

use crate::canon::iso_equal;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Diagram;
use crate::matrix::ExactMatrix;
use crate::rewrite::{check_soundness_with, default_phase_samples, RuleLibrary};
use crate::ring::ExactScalar;
use crate::semantics::{evaluate_with, product_state, proportional_equal, EvalOptions};
use crate::simproc::{
    certify_with, prove_by_common_reduct, replay_all, run_with, ProofTrace, Simproc,
    DEFAULT_STEP_BUDGET,
};

use super::derive::{derive_cnot_physical, encoder_circuit};
use super::fixture::*;
use super::store::{
    cnot_composite, fixture_path, shipped_cnot_script, shipped_encoder_script, CNOT_SCRIPT_FILE,
    ENCODER_SCRIPT_FILE,
};

/// Largest arity the rule check instantiates.
pub const RULE_CHECK_ARITY: usize = 4;

/// Every obligation, in report order.
pub const OBLIGATIONS: [&str; 12] = [
    "ccz",
    "cnot",
    "codewords",
    "distance-2",
    "enc-circuit",
    "enc-dec",
    "pauli-x1",
    "pauli-x2",
    "pauli-x3",
    "pauli-z1",
    "pauli-z2",
    "pauli-z3",
];

/// The obligation that gates all others.
pub const RULES_OBLIGATION: &str = "rules";

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

impl Check {
    fn new(name: &str, passed: bool, detail: Value) -> Check {
        Check {
            name: name.to_string(),
            passed,
            detail,
        }
    }

    /// A check whose computation itself failed.
    fn errored(name: &str, e: &Error) -> Check {
        Check::new(name, false, json!({ "error": e.to_string() }))
    }

    fn from_result(name: &str, r: Result<(bool, Value)>) -> Check {
        match r {
            Ok((ok, detail)) => Check::new(name, ok, detail),
            Err(e) => Check::errored(name, &e),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ObligationReport {
    pub obligation: String,
    pub checks: Vec<Check>,
    /// Where the proof trace lives, if there is one on disk.
    pub trace: Option<String>,
    /// The proof trace itself, when one was produced.
    pub proof: Option<ProofTrace>,
}

impl ObligationReport {
    fn new(obligation: &str) -> ObligationReport {
        ObligationReport {
            obligation: obligation.to_string(),
            checks: Vec::new(),
            trace: None,
            proof: None,
        }
    }

    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// `{"obligation","status","witness","trace"}`.
    pub fn to_json(&self) -> Value {
        let witness: serde_json::Map<String, Value> = self
            .checks
            .iter()
            .map(|c| {
                (
                    c.name.clone(),
                    json!({ "passed": c.passed, "detail": c.detail }),
                )
            })
            .collect();
        json!({
            "obligation": self.obligation,
            "status": self.status(),
            "witness": witness,
            "trace": self.trace,
        })
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut s = format!("{:<12} {}\n", self.obligation, self.status().to_uppercase());
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            s.push_str(&format!("  {mark} {}: {}\n", c.name, c.detail));
        }
        if let Some(t) = &self.trace {
            s.push_str(&format!("  trace: {t}\n"));
        }
        s
    }
}

fn scalar_json(z: &Option<ExactScalar>) -> Value {
    match z {
        Some(z) => Value::String(z.to_string()),
        None => Value::Null,
    }
}

/// Proportionality of two exact matrices as a check result.
fn prop_check(a: &ExactMatrix, b: &ExactMatrix) -> Result<(bool, Value)> {
    let p = proportional_equal(a, b)?;
    Ok((p.proportional, json!({ "scalar": scalar_json(&p.witness) })))
}

fn exact(d: &Diagram, exec: Exec) -> Result<ExactMatrix> {
    evaluate_with::<ExactScalar>(d, &EvalOptions::with_exec(exec))
}

fn semantic_equal(a: &Diagram, b: &Diagram, exec: Exec) -> Result<(bool, Value)> {
    prop_check(&exact(a, exec)?, &exact(b, exec)?)
}

/// Replays `t` from `start`, checks that it ends isomorphic to `goal`, and
/// certifies every step.
fn replay_and_certify(
    lib: &RuleLibrary,
    t: &ProofTrace,
    start: &Diagram,
    goal: &Diagram,
    exec: Exec,
) -> Result<(bool, Value)> {
    let path = replay_all(lib, t, start)?;
    let reached = iso_equal(path.last().unwrap(), goal);
    let cert = certify_with(lib, t, start, exec)?;
    let expansions = t.steps.iter().filter(|s| s.dir.is_rev()).count();
    Ok((
        reached && cert.passed(),
        json!({
            "steps": t.len(),
            "expansions": expansions,
            "reaches_goal": reached,
            "certified": cert.passed(),
            "failed_step": cert.failure.as_ref().map(|f| f.step),
        }),
    ))
}

/// Every shipped rule is sound at arity ≤ [`RULE_CHECK_ARITY`].
pub fn verify_rules(lib: &RuleLibrary, exec: Exec) -> ObligationReport {
    let mut rep = ObligationReport::new(RULES_OBLIGATION);
    let phases = default_phase_samples();
    for fam in lib.families() {
        let r = check_soundness_with(fam.base(), RULE_CHECK_ARITY, &phases, exec);
        let detail = json!({
            "instances": r.instances,
            "counterexamples": r.counterexamples.iter().map(|c| json!({
                "counts": c.counts,
                "assignment": c.assignment.iter().map(|(k, v)| (k.clone(), v.to_string())).collect::<BTreeMap<_, _>>(),
                "reason": c.reason,
            })).collect::<Vec<_>>(),
        });
        rep.checks.push(Check::new(&r.rule, r.passed(), detail));
    }
    rep
}

pub fn verify_enc_dec(lib: &RuleLibrary, exec: Exec) -> ObligationReport {
    verify_enc_dec_with(lib, &build_enc(), &build_dec(), exec)
}

/// Enc followed by Dec is the identity: semantically, at matrix level, and
/// by a certified reduce_phase_free run.
pub fn verify_enc_dec_with(
    lib: &RuleLibrary,
    enc: &Diagram,
    dec: &Diagram,
    exec: Exec,
) -> ObligationReport {
    let mut rep = ObligationReport::new("enc-dec");
    let id = Diagram::identity(LOGICAL);
    let composite = enc.compose(dec);
    let composite = match composite {
        Ok(c) => c,
        Err(e) => {
            rep.checks.push(Check::errored("semantic", &e));
            return rep;
        }
    };
    rep.checks.push(Check::from_result(
        "semantic",
        semantic_equal(&composite, &id, exec),
    ));
    rep.checks.push(Check::from_result(
        "isometry",
        exact(enc, exec).and_then(|m| {
            prop_check(
                &m.adjoint().matmul(&m)?,
                &ExactMatrix::identity(1 << LOGICAL),
            )
        }),
    ));
    let rewrite = (|| {
        let s = Simproc::builtin("reduce_phase_free")?;
        let (out, t) = run_with(lib, &s, &composite, DEFAULT_STEP_BUDGET)?;
        let (ok, mut detail) = replay_and_certify(lib, &t, &composite, &id, exec)?;
        detail["reduct_interior"] = json!(out.num_interior());
        Ok(((ok, detail), t))
    })();
    match rewrite {
        Ok((r, t)) => {
            rep.checks.push(Check::from_result("rewrite", Ok(r)));
            rep.proof = Some(t);
        }
        Err(e) => rep.checks.push(Check::errored("rewrite", &e)),
    }
    rep
}

/// The logical wire and Pauli type of `pauli-x1` … `pauli-z3`. Equation k
/// acts on logical wire 4 − k.
pub fn pauli_equation(which: &str) -> Result<(char, usize)> {
    let name = which.strip_prefix("pauli-").unwrap_or(which);
    let mut cs = name.chars();
    match (cs.next(), cs.next().and_then(|c| c.to_digit(10)), cs.next()) {
        (Some(p @ ('x' | 'z')), Some(k @ 1..=3), None) => Ok((p, LOGICAL + 1 - k as usize)),
        _ => Err(Error::UnknownObligation(which.to_string())),
    }
}

pub fn verify_pauli(lib: &RuleLibrary, which: &str, exec: Exec) -> Result<ObligationReport> {
    let (p, wire) = pauli_equation(which)?;
    let support = if p == 'x' { x_support() } else { z_support() };
    verify_pauli_with(lib, which, &support[&wire], exec)
}

/// A logical Pauli before Enc equals the physical layer on `support` after
/// Enc: semantically, and by iso reducts under push_pauli_x (or its colour
/// dual) joined into one certified trace.
pub fn verify_pauli_with(
    lib: &RuleLibrary,
    which: &str,
    support: &BTreeSet<usize>,
    exec: Exec,
) -> Result<ObligationReport> {
    let (p, wire) = pauli_equation(which)?;
    let mut rep = ObligationReport::new(&format!("pauli-{}", which.trim_start_matches("pauli-")));
    let enc = build_enc();
    let (logical, physical, proc_name) = if p == 'x' {
        (logical_x(wire), physical_x(support), "push_pauli_x")
    } else {
        (logical_z(wire), physical_z(support), "push_pauli_z")
    };
    let lhs = logical.compose(&enc)?;
    let rhs = enc.compose(&physical)?;
    let mut sem = Check::from_result("semantic", semantic_equal(&lhs, &rhs, exec));
    sem.detail["logical_wire"] = json!(wire);
    sem.detail["support"] = json!(support);
    rep.checks.push(sem);
    let rewrite = (|| {
        let s = Simproc::builtin(proc_name)?;
        let (a, _) = run_with(lib, &s, &lhs, DEFAULT_STEP_BUDGET)?;
        let (b, _) = run_with(lib, &s, &rhs, DEFAULT_STEP_BUDGET)?;
        let iso = iso_equal(&a, &b);
        if !iso {
            return Ok((
                (false, json!({ "simproc": proc_name, "reducts_iso": false })),
                None,
            ));
        }
        let t = prove_by_common_reduct(lib, &s, &lhs, &rhs, DEFAULT_STEP_BUDGET)?;
        let (ok, mut detail) = replay_and_certify(lib, &t, &lhs, &rhs, exec)?;
        detail["simproc"] = json!(proc_name);
        detail["reducts_iso"] = json!(true);
        Ok(((ok, detail), Some(t)))
    })();
    match rewrite {
        Ok((r, t)) => {
            rep.checks.push(Check::from_result("rewrite", Ok(r)));
            rep.proof = t;
        }
        Err(e) => rep.checks.push(Check::errored("rewrite", &e)),
    }
    Ok(rep)
}

/// Permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Cycle notation of a 0-based permutation, 1-based labels.
fn cycles(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cyc = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            cyc.push((i + 1).to_string());
            i = perm[i];
        }
        out.push_str(&format!("({})", cyc.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

fn bits_index(bits: &[u8]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

/// Logical permutations under which every column of ⟦Enc⟧ matches the
/// published table with one common scalar. `perm[j]` is the Enc input
/// that carries table letter `j`.
pub fn codeword_permutations(enc: &ExactMatrix) -> Result<Vec<(Vec<usize>, Option<ExactScalar>)>> {
    let mut table = ExactMatrix::zeros(1 << PHYSICAL, 1 << LOGICAL);
    let labels: Vec<[u8; LOGICAL]> = CODEWORD_TABLE.iter().map(|(l, _)| parse_bits(l)).collect();
    for (c, (_, word)) in CODEWORD_TABLE.iter().enumerate() {
        let state = codeword_state(&parse_bits(word));
        for r in 0..state.rows() {
            table.set(r, c, state.get(r, 0));
        }
    }
    let mut found = Vec::new();
    for perm in permutations(LOGICAL) {
        let mut cols = ExactMatrix::zeros(1 << PHYSICAL, 1 << LOGICAL);
        for (c, label) in labels.iter().enumerate() {
            let mut input = [0u8; LOGICAL];
            for j in 0..LOGICAL {
                input[perm[j]] = label[j];
            }
            let k = bits_index(&input);
            for r in 0..enc.rows() {
                cols.set(r, c, enc.get(r, k));
            }
        }
        let p = proportional_equal(&cols, &table)?;
        if p.proportional {
            found.push((perm, p.witness));
        }
    }
    Ok(found)
}

/// Every column of ⟦Enc⟧ against the table, up to one scalar and one
/// permutation of the logical wires, reported as the witness.
pub fn verify_codewords(exec: Exec) -> ObligationReport {
    let mut rep = ObligationReport::new("codewords");
    let r = (|| {
        let enc = exact(&build_enc(), exec)?;
        let found = codeword_permutations(&enc)?;
        let identity = found
            .iter()
            .any(|(p, _)| p.iter().enumerate().all(|(i, &j)| i == j));
        let ok = !found.is_empty();
        let detail = json!({
            "permutations": found.iter().map(|(p, z)| json!({
                "cycles": cycles(p),
                "scalar": scalar_json(z),
            })).collect::<Vec<_>>(),
            "identity_matches": identity,
        });
        Ok((ok, detail))
    })();
    rep.checks.push(Check::from_result("table", r));
    rep
}

pub fn verify_cnot(lib: &RuleLibrary, exec: Exec) -> ObligationReport {
    let mut rep = ObligationReport::new("cnot");
    let physical = match derive_cnot_physical(2, 3) {
        Ok(p) => p,
        Err(e) => {
            rep.checks.push(Check::errored("derive", &e));
            return rep;
        }
    };
    rep.checks.push(Check::new(
        "derive",
        physical.gates.len() <= super::MAX_PHYSICAL_CNOTS,
        json!({ "gates": physical.gates }),
    ));
    let script = shipped_cnot_script();
    rep.checks.extend(check_cnot_circuit(
        lib,
        &physical.diagram,
        script.as_ref().ok(),
        exec,
    ));
    if let Err(e) = &script {
        rep.checks.push(Check::errored("script", e));
    }
    let variants: Vec<(usize, usize)> = (1..=LOGICAL)
        .flat_map(|c| (1..=LOGICAL).filter(move |&t| t != c).map(move |t| (c, t)))
        .collect();
    let results = exec.map_slice(&variants, |&(c, t)| -> Result<Value> {
        let p = derive_cnot_physical(c, t)?;
        let (ok, _) = semantic_equal(
            &cnot_composite(&p.diagram)?,
            &build_cnot_logical(c, t)?,
            exec,
        )?;
        Ok(json!({ "control": c, "target": t, "gates": p.gates, "passed": ok }))
    });
    let mut all = true;
    let mut detail = Vec::new();
    for r in results {
        match r {
            Ok(v) => {
                all &= v["passed"] == json!(true);
                detail.push(v);
            }
            Err(e) => {
                all = false;
                detail.push(json!({ "error": e.to_string() }));
            }
        }
    }
    rep.checks
        .push(Check::new("variants", all, Value::Array(detail)));
    rep.trace = Some(fixture_path(CNOT_SCRIPT_FILE));
    rep.proof = script.ok();
    rep
}

/// The semantic and rewrite checks of CNOT(2,3) for a given physical
/// circuit. Without a script only the semantic check runs.
pub fn check_cnot_circuit(
    lib: &RuleLibrary,
    physical: &Diagram,
    script: Option<&ProofTrace>,
    exec: Exec,
) -> Vec<Check> {
    let goal = match build_cnot_logical(2, 3) {
        Ok(g) => g,
        Err(e) => return vec![Check::errored("semantic", &e)],
    };
    let composite = match cnot_composite(physical) {
        Ok(c) => c,
        Err(e) => return vec![Check::errored("semantic", &e)],
    };
    let mut out = vec![Check::from_result(
        "semantic",
        semantic_equal(&composite, &goal, exec),
    )];
    if let Some(t) = script {
        out.push(Check::from_result(
            "rewrite",
            replay_and_certify(lib, t, &composite, &goal, exec),
        ));
    }
    out
}

fn ccz_matrix() -> ExactMatrix {
    let mut m = ExactMatrix::identity(1 << LOGICAL);
    m.set(7, 7, -ExactScalar::ONE);
    m
}

/// Dec ∘ CCZ^P ∘ Enc against CCZ: the eight state equations, the
/// sum-of-basis check and the full matrix.
pub fn verify_ccz(exec: Exec) -> ObligationReport {
    verify_ccz_with(&build_ccz_physical(), exec)
}

pub fn verify_ccz_with(layer: &Diagram, exec: Exec) -> ObligationReport {
    let mut rep = ObligationReport::new("ccz");
    let m = build_enc()
        .compose(layer)
        .and_then(|d| d.compose(&build_dec()))
        .and_then(|d| exact(&d, exec));
    let m = match m {
        Ok(m) => m,
        Err(e) => {
            rep.checks.push(Check::errored("states", &e));
            return rep;
        }
    };
    let states = (|| {
        let mut ok = true;
        let mut detail = Vec::new();
        for xy in ["00", "01", "10", "11"] {
            for s in ['+', '-'] {
                let out = if xy == "11" {
                    if s == '+' {
                        '-'
                    } else {
                        '+'
                    }
                } else {
                    s
                };
                let input = format!("{xy}{s}");
                let want = format!("{xy}{out}");
                let got = m.matmul(&product_state(&input)?)?;
                let p = proportional_equal(&got, &product_state(&want)?)?;
                ok &= p.proportional;
                let mut entry = json!({
                    "input": input,
                    "expected": want,
                    "passed": p.proportional,
                    "scalar": scalar_json(&p.witness),
                });
                if !p.proportional {
                    entry["got"] = json!(got.to_string());
                }
                detail.push(entry);
            }
        }
        Ok((ok, Value::Array(detail)))
    })();
    rep.checks.push(Check::from_result("states", states));
    rep.checks.push(Check::from_result(
        "sum-of-basis",
        product_state("+++")
            .and_then(|plus| prop_check(&m.matmul(&plus)?, &ccz_matrix().matmul(&plus)?)),
    ));
    rep.checks
        .push(Check::from_result("matrix", prop_check(&m, &ccz_matrix())));
    rep
}

/// The encoder as a circuit with five ancillas: unitary, equal to Enc once
/// the ancillas are prepared, and joined to Enc by the shipped certified
/// trace.
pub fn verify_encoder_circuit(lib: &RuleLibrary, exec: Exec) -> ObligationReport {
    let mut rep = ObligationReport::new("enc-circuit");
    let ec = encoder_circuit();
    rep.checks.push(Check::new(
        "ancillas",
        ec.ancillas() == PHYSICAL - LOGICAL,
        json!({
            "ancillas": ec.ancillas(),
            "logical_wires": ec.logical_wires,
            "starts": ec.starts.iter().map(|s| format!("{s:?}")).collect::<Vec<_>>(),
            "gates": ec.gates,
        }),
    ));
    rep.checks.push(Check::from_result(
        "unitary",
        exact(&ec.unitary, exec).and_then(|u| {
            prop_check(
                &u.adjoint().matmul(&u)?,
                &ExactMatrix::identity(1 << PHYSICAL),
            )
        }),
    ));
    let enc = build_enc();
    rep.checks.push(Check::from_result(
        "prepared",
        semantic_equal(&ec.prepared, &enc, exec),
    ));
    match shipped_encoder_script() {
        Ok(t) => {
            rep.checks.push(Check::from_result(
                "rewrite",
                replay_and_certify(lib, &t, &enc, &ec.prepared, exec),
            ));
            rep.proof = Some(t);
        }
        Err(e) => rep.checks.push(Check::errored("rewrite", &e)),
    }
    rep.trace = Some(fixture_path(ENCODER_SCRIPT_FILE));
    rep
}

fn pauli_matrix(p: char) -> ExactMatrix {
    let (o, z) = (ExactScalar::ONE, ExactScalar::ZERO);
    let i = ExactScalar::omega_pow(2);
    let data = match p {
        'I' => vec![o, z, z, o],
        'X' => vec![z, o, o, z],
        'Y' => vec![z, -i, i, z],
        _ => vec![o, z, z, -o],
    };
    ExactMatrix::from_vec(2, 2, data)
}

/// `E·m` for a single-qubit X or Z on physical wire `wire` (1-based),
/// acting on the row index of `m`.
fn apply_physical_error(m: &ExactMatrix, kind: char, wire: usize) -> ExactMatrix {
    let bit = 1 << (PHYSICAL - wire);
    let mut out = ExactMatrix::zeros(m.rows(), m.cols());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c);
            match kind {
                'X' => out.set(r ^ bit, c, v),
                _ => out.set(r, c, if r & bit != 0 { -v } else { v }),
            }
        }
    }
    out
}

/// No single physical X or Z error, seen through Enc and Dec, is
/// proportional to a logical Pauli layer.
pub fn verify_distance_two(exec: Exec) -> ObligationReport {
    let mut rep = ObligationReport::new("distance-2");
    let r = (|| {
        let enc = exact(&build_enc(), exec)?;
        let dec = enc.adjoint();
        let mut paulis = Vec::new();
        for a in "IXYZ".chars() {
            for b in "IXYZ".chars() {
                for c in "IXYZ".chars() {
                    let m = pauli_matrix(a)
                        .kron(&pauli_matrix(b))
                        .kron(&pauli_matrix(c));
                    paulis.push((format!("{a}{b}{c}"), m));
                }
            }
        }
        let mut offenders = Vec::new();
        let mut detected = 0;
        let mut errors = 0;
        for kind in ['X', 'Z'] {
            for wire in 1..=PHYSICAL {
                errors += 1;
                let m = dec.matmul(&apply_physical_error(&enc, kind, wire))?;
                if m.is_zero() {
                    detected += 1;
                }
                for (name, p) in &paulis {
                    if proportional_equal(&m, p)?.proportional {
                        offenders.push(format!("{kind}{wire} ~ {name}"));
                    }
                }
            }
        }
        Ok((
            offenders.is_empty(),
            json!({
                "errors": errors,
                "logical_paulis": paulis.len(),
                "annihilated": detected,
                "offenders": offenders,
            }),
        ))
    })();
    rep.checks.push(Check::from_result("single-errors", r));
    rep
}

/// Runs one obligation by name.
pub fn verify(lib: &RuleLibrary, name: &str, exec: Exec) -> Result<ObligationReport> {
    Ok(match name {
        RULES_OBLIGATION => verify_rules(lib, exec),
        "enc-dec" => verify_enc_dec(lib, exec),
        "codewords" => verify_codewords(exec),
        "cnot" => verify_cnot(lib, exec),
        "ccz" => verify_ccz(exec),
        "enc-circuit" => verify_encoder_circuit(lib, exec),
        "distance-2" => verify_distance_two(exec),
        other if other.starts_with("pauli-") => verify_pauli(lib, other, exec)?,
        other => return Err(Error::UnknownObligation(other.to_string())),
    })
}

/// Rule soundness first; if it fails every other obligation is reported as
/// skipped. Otherwise all run, concurrently under `exec`. Proof traces are
/// written to `trace_dir` when given. Reports come back in name order with
/// the rule check last.
pub fn run_all(
    lib: &RuleLibrary,
    exec: Exec,
    trace_dir: Option<&Path>,
) -> Result<Vec<ObligationReport>> {
    let rules = verify_rules(lib, exec);
    let mut out: Vec<ObligationReport> = if rules.passed() {
        exec.map_slice(&OBLIGATIONS, |name| verify(lib, name, exec))
            .into_iter()
            .collect::<Result<_>>()?
    } else {
        OBLIGATIONS
            .iter()
            .map(|name| {
                let mut r = ObligationReport::new(name);
                r.checks
                    .push(Check::new("skipped", false, json!("rule soundness failed")));
                r
            })
            .collect()
    };
    out.push(rules);
    if let Some(dir) = trace_dir {
        write_traces(&mut out, dir)?;
    }
    Ok(out)
}

/// Writes each report's proof to `dir/<obligation>.trace.json` and points
/// the report at it.
pub fn write_traces(reports: &mut [ObligationReport], dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for r in reports {
        if let Some(t) = &r.proof {
            let path = dir.join(format!("{}.trace.json", r.obligation));
            std::fs::write(&path, t.to_json_string() + "\n")?;
            r.trace = Some(path.display().to_string());
        }
    }
    Ok(())
}
