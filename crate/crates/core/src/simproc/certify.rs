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

//! Step-by-step semantic certification of traces.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Diagram;
use crate::matrix::ExactMatrix;
use crate::rewrite::RuleLibrary;
use crate::ring::ExactScalar;
use crate::semantics::{evaluate_with, proportional_equal, EvalOptions};

use super::engine::replay_all;
use super::trace::ProofTrace;

/// Largest boundary (inputs plus outputs) a certified diagram may have.
pub const CERTIFY_MAX_WIRES: usize = 11;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepCertificate {
    pub step: usize,
    pub proportional: bool,
    /// `before = witness · after`, when exact.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepFailure {
    pub step: usize,
    pub before: ExactMatrix,
    pub after: ExactMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificationReport {
    pub steps: Vec<StepCertificate>,
    pub failure: Option<StepFailure>,
}

impl CertificationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that consecutive diagrams are proportional. Step `i` is the pair
/// `(diagrams[i-1], diagrams[i])`.
pub fn certify_sequence(diagrams: &[Diagram], exec: Exec) -> Result<CertificationReport> {
    for (i, d) in diagrams.iter().enumerate() {
        let (a, b) = d.arity();
        if a + b > CERTIFY_MAX_WIRES {
            return Err(Error::Certification(format!(
                "diagram {i} has {} boundary wires, more than {CERTIFY_MAX_WIRES}",
                a + b
            )));
        }
    }
    let opts = EvalOptions::with_exec(exec);
    let matrices = exec.map_slice(diagrams, |d| evaluate_with::<ExactScalar>(d, &opts));
    let matrices: Vec<ExactMatrix> = matrices.into_iter().collect::<Result<_>>()?;
    let pairs: Vec<usize> = (1..matrices.len()).collect();
    let checks = exec.map_slice(&pairs, |&i| {
        proportional_equal(&matrices[i - 1], &matrices[i])
    });
    let mut steps = Vec::new();
    let mut failure = None;
    for (&i, c) in pairs.iter().zip(checks) {
        let p = c?;
        if !p.proportional && failure.is_none() {
            failure = Some(StepFailure {
                step: i,
                before: matrices[i - 1].clone(),
                after: matrices[i].clone(),
            });
        }
        steps.push(StepCertificate {
            step: i,
            proportional: p.proportional,
            witness: p.witness.map(|w| w.to_string()),
        });
    }
    Ok(CertificationReport { steps, failure })
}

/// Replays `t` from `d` and certifies every step.
pub fn certify(t: &ProofTrace, d: &Diagram) -> Result<CertificationReport> {
    certify_with(RuleLibrary::builtin(), t, d, Exec::default())
}

pub fn certify_with(
    lib: &RuleLibrary,
    t: &ProofTrace,
    d: &Diagram,
    exec: Exec,
) -> Result<CertificationReport> {
    let diagrams = replay_all(lib, t, d)?;
    certify_sequence(&diagrams, exec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::digest;
    use crate::phase::Phase;
    use crate::rewrite::{find_matches, green_id, RuleLibrary};
    use crate::simproc::{run, Direction, Simproc, TraceStep, DEFAULT_STEP_BUDGET};

    #[test]
    fn expansion_steps_certify() {
        let lib = RuleLibrary::builtin();
        let d = Diagram::identity(1);
        let rule = lib.concrete("green_id", &[], true).unwrap();
        let m = find_matches(&rule, &d).remove(0);
        let next = crate::rewrite::apply(&rule, &d, &m).unwrap();
        let mut t = ProofTrace::new(digest(&d));
        t.steps.push(TraceStep {
            rule: green_id().name().to_string(),
            dir: Direction::Rev,
            matched: m,
            post: digest(&next),
        });
        let rep = certify(&t, &d).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.steps.len(), 1);
    }

    #[test]
    fn skipping_a_pi_commute_fails() {
        let mut d = Diagram::new();
        let i = d.add_input();
        let x = d.add_x(Phase::PI);
        let z = d.add_z(Phase::new(1, 4));
        d.add_edge(i, x);
        d.add_edge(x, z);
        for _ in 0..2 {
            let y = d.add_x(Phase::ZERO);
            d.add_edge(z, y);
            for _ in 0..2 {
                let o = d.add_output();
                d.add_edge(y, o);
            }
        }
        let s = Simproc::builtin("push_pauli_x").unwrap();
        let (_, t) = run(&s, &d, DEFAULT_STEP_BUDGET).unwrap();
        assert!(certify(&t, &d).unwrap().passed());
        let mut seq = replay_all(RuleLibrary::builtin(), &t, &d).unwrap();
        let pi_step = t
            .steps
            .iter()
            .position(|s| s.rule == "red_pi_lemma")
            .unwrap();
        // Drop the π instead of pushing it.
        let mut skipped = seq[pi_step].clone();
        skipped.set_kind(x, crate::graph::VertexKind::X(Phase::ZERO));
        seq[pi_step + 1] = skipped;
        let rep = certify_sequence(&seq, Exec::default()).unwrap();
        assert!(!rep.passed());
        assert_eq!(rep.failure.unwrap().step, pi_step + 1);
    }
}
