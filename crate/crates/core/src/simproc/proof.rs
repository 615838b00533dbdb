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

//! Equational proofs: reduce both sides to a common form, then walk the
//! second reduction backwards with inverted rules.

use crate::canon::{digest, iso_equal};
use crate::error::{Error, Result};
use crate::graph::Diagram;
use crate::rewrite::{apply_unchecked, find_all_matches_with, RuleLibrary};

use super::engine::{replay_all, run_with};
use super::strategy::Simproc;
use super::trace::{Direction, ProofTrace, TraceStep};

/// Appends to `trace` (which currently ends at `current`) the inverse of
/// `other`, a trace from `start`. `current` must be isomorphic to the end
/// of `other`. Returns the new end, isomorphic to `start`.
pub fn append_reversed(
    lib: &RuleLibrary,
    trace: &mut ProofTrace,
    current: Diagram,
    other: &ProofTrace,
    start: &Diagram,
) -> Result<Diagram> {
    let path = replay_all(lib, other, start)?;
    if !iso_equal(&current, path.last().unwrap()) {
        return Err(Error::SearchExhausted(
            "the two reductions end in different diagrams".into(),
        ));
    }
    let mut current = current;
    for (k, s) in other.steps.iter().enumerate().rev() {
        let goal = &path[k];
        let goal_digest = digest(goal);
        let flipped = !s.dir.is_rev();
        let rule = lib.concrete(&s.rule, &s.matched.counts, flipped)?;
        let mut found = None;
        for m in find_all_matches_with(&rule, &current, &s.matched.assignment) {
            let next = apply_unchecked(&rule, &current, &m)?;
            if digest(&next) == goal_digest && iso_equal(&next, goal) {
                found = Some((m, next));
                break;
            }
        }
        let Some((m, next)) = found else {
            return Err(Error::SearchExhausted(format!(
                "no inverse of step {} (`{}`) reaches the earlier diagram",
                k + 1,
                s.rule
            )));
        };
        trace.steps.push(TraceStep {
            rule: s.rule.clone(),
            dir: if flipped {
                Direction::Rev
            } else {
                Direction::Fwd
            },
            matched: m,
            post: goal_digest,
        });
        current = next;
    }
    trace.close(&current);
    Ok(current)
}

/// A trace from `lhs` to a diagram isomorphic to `rhs`, found by running
/// `s` on both sides.
pub fn prove_by_common_reduct(
    lib: &RuleLibrary,
    s: &Simproc,
    lhs: &Diagram,
    rhs: &Diagram,
    budget: usize,
) -> Result<ProofTrace> {
    let (r1, mut t1) = run_with(lib, s, lhs, budget)?;
    let (_, t2) = run_with(lib, s, rhs, budget)?;
    append_reversed(lib, &mut t1, r1, &t2, rhs)?;
    Ok(t1)
}
