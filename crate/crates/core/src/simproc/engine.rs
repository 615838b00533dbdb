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

//! Running strategies and replaying traces.

use crate::canon::digest;
use crate::error::{Error, Result};
use crate::graph::Diagram;
use crate::rewrite::{apply, apply_unchecked, RuleLibrary};

use super::strategy::Simproc;
use super::trace::{Direction, ProofTrace, TraceStep};

pub const DEFAULT_STEP_BUDGET: usize = 10_000;

struct Runner<'a> {
    lib: &'a RuleLibrary,
    budget: usize,
    current: Diagram,
    trace: ProofTrace,
}

impl Runner<'_> {
    /// One application of `rule` at its first match. `Ok(false)` when it
    /// does not match.
    fn step(&mut self, rule: &str) -> Result<bool> {
        let fam = self.lib.family(rule)?;
        let Some((inst, m)) = fam.first_match(&self.current) else {
            return Ok(false);
        };
        if self.trace.steps.len() >= self.budget {
            let mut trace = self.trace.clone();
            trace.close(&self.current);
            return Err(Error::StepBudget {
                budget: self.budget,
                trace: Box::new(trace),
            });
        }
        let next = apply_unchecked(inst, &self.current, &m)?;
        self.trace.steps.push(TraceStep {
            rule: rule.to_string(),
            dir: Direction::Fwd,
            matched: m,
            post: digest(&next),
        });
        self.current = next;
        Ok(true)
    }

    /// Runs `s`, returning the number of steps it took.
    fn run(&mut self, s: &Simproc) -> Result<usize> {
        let before = self.trace.steps.len();
        match s {
            Simproc::Rewrite(r) => {
                self.step(r)?;
            }
            Simproc::Reduce(r) => while self.step(r)? {},
            Simproc::ReduceAll { rules, .. } => loop {
                let mut changed = false;
                for r in rules {
                    changed |= self.step(r)?;
                }
                if !changed {
                    break;
                }
            },
            Simproc::Loop(body) => while self.run(body)? > 0 {},
            Simproc::Seq(parts) => {
                for p in parts {
                    self.run(p)?;
                }
            }
        }
        Ok(self.trace.steps.len() - before)
    }
}

/// Runs a strategy with the shipped rules.
pub fn run(s: &Simproc, d: &Diagram, budget: usize) -> Result<(Diagram, ProofTrace)> {
    run_with(RuleLibrary::builtin(), s, d, budget)
}

pub fn run_with(
    lib: &RuleLibrary,
    s: &Simproc,
    d: &Diagram,
    budget: usize,
) -> Result<(Diagram, ProofTrace)> {
    for r in s.rules() {
        lib.family(r)?;
    }
    let mut runner = Runner {
        lib,
        budget,
        current: d.clone(),
        trace: ProofTrace::new(digest(d)),
    };
    runner.run(s)?;
    runner.trace.close(&runner.current);
    Ok((runner.current, runner.trace))
}

/// Re-applies every step of `t` to `d`, checking each digest. Returns all
/// intermediate diagrams, `d` first.
pub fn replay_all(lib: &RuleLibrary, t: &ProofTrace, d: &Diagram) -> Result<Vec<Diagram>> {
    let found = digest(d);
    if found != t.initial {
        return Err(Error::DigestMismatch {
            step: 0,
            expected: t.initial.clone(),
            found,
        });
    }
    let mut out = vec![d.clone()];
    for (i, s) in t.steps.iter().enumerate() {
        let m = &s.matched;
        if m.rule != s.rule || m.inverted != s.dir.is_rev() {
            return Err(Error::StaleMatch(format!(
                "step {}: match does not belong to `{}` ({:?})",
                i + 1,
                s.rule,
                s.dir
            )));
        }
        let rule = lib.concrete(&s.rule, &m.counts, s.dir.is_rev())?;
        let next = apply(&rule, out.last().unwrap(), m)?;
        let found = digest(&next);
        if found != s.post {
            return Err(Error::DigestMismatch {
                step: i + 1,
                expected: s.post.clone(),
                found,
            });
        }
        out.push(next);
    }
    Ok(out)
}

/// Replays `t` from `d` with the shipped rules and returns the last diagram.
pub fn replay(t: &ProofTrace, d: &Diagram) -> Result<Diagram> {
    Ok(replay_all(RuleLibrary::builtin(), t, d)?.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::iso_equal;
    use crate::phase::Phase;

    fn chain(n: usize) -> Diagram {
        let mut d = Diagram::new();
        let mut prev = d.add_input();
        for _ in 0..n {
            let z = d.add_z(Phase::ZERO);
            d.add_edge(prev, z);
            prev = z;
        }
        let o = d.add_output();
        d.add_edge(prev, o);
        d
    }

    #[test]
    fn fixed_point_gives_empty_trace() {
        let s = Simproc::builtin("push_pauli_x").unwrap();
        let d = Diagram::identity(2);
        let (out, t) = run(&s, &d, DEFAULT_STEP_BUDGET).unwrap();
        assert_eq!(out, d);
        assert!(t.is_empty());
        assert_eq!(replay(&t, &d).unwrap(), d);
    }

    #[test]
    fn chain_reduces_to_wire_and_replays() {
        let s = Simproc::builtin("reduce_phase_free").unwrap();
        let d = chain(4);
        let (out, t) = run(&s, &d, DEFAULT_STEP_BUDGET).unwrap();
        assert!(iso_equal(&out, &Diagram::identity(1)));
        assert!(!t.is_empty());
        assert_eq!(replay(&t, &d).unwrap(), out);
        let (again, t2) = run(&s, &d, DEFAULT_STEP_BUDGET).unwrap();
        assert_eq!(again, out);
        assert_eq!(t2, t);
        let back = ProofTrace::from_json_str(&t.to_json_string()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn budget_keeps_partial_trace() {
        let s = Simproc::builtin("reduce_phase_free").unwrap();
        match run(&s, &chain(5), 2) {
            Err(Error::StepBudget { budget, trace }) => {
                assert_eq!(budget, 2);
                assert_eq!(trace.len(), 2);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn corrupted_digest_names_the_step() {
        let s = Simproc::builtin("reduce_phase_free").unwrap();
        let d = chain(3);
        let (_, mut t) = run(&s, &d, DEFAULT_STEP_BUDGET).unwrap();
        t.steps[1].post = "00".repeat(32);
        match replay(&t, &d) {
            Err(Error::DigestMismatch { step, .. }) => assert_eq!(step, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            replay(&t, &chain(1)),
            Err(Error::DigestMismatch { step: 0, .. })
        ));
    }
}
