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

//! Semantic soundness sweeps over box counts and phase samples.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::Error;
use crate::error::Result;
use crate::exec::Exec;
use crate::graph::{Diagram, Pattern};
use crate::phase::Phase;
use num_complex::Complex64;

use crate::ring::ExactScalar;
use crate::semantics::{evaluate_with, proportional_equal, proportional_equal_float, EvalOptions};

use super::rule::RewriteRule;

/// The phases every rule is tried at by default.
pub fn default_phase_samples() -> Vec<Phase> {
    vec![Phase::ZERO, Phase::new(1, 4), Phase::new(1, 2), Phase::PI]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub counts: Vec<usize>,
    pub assignment: BTreeMap<String, Phase>,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SoundnessReport {
    pub rule: String,
    pub instances: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn assignments(vars: &[String], phases: &[Phase]) -> Vec<BTreeMap<String, Phase>> {
    let mut out = vec![BTreeMap::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|a| {
                phases.iter().map(move |&p| {
                    let mut a = a.clone();
                    a.insert(v.clone(), p);
                    a
                })
            })
            .collect();
    }
    out
}

fn concrete(p: &Pattern, a: &BTreeMap<String, Phase>) -> Option<Diagram> {
    let mut ok = true;
    let d = p.map_phases(|e| {
        e.eval(a).unwrap_or_else(|| {
            ok = false;
            Phase::ZERO
        })
    });
    ok.then_some(d)
}

fn check_one(
    rule: &RewriteRule,
    a: &BTreeMap<String, Phase>,
    exec: Exec,
) -> Result<Option<String>> {
    let (Some(l), Some(r)) = (concrete(rule.lhs(), a), concrete(rule.rhs(), a)) else {
        return Ok(Some("unbound variable".into()));
    };
    // Both sides are read with the rule's boundary order: left boundary
    // lists are authoritative, right ones follow the boundary map.
    let map = rule.boundary_map();
    let mut r = r;
    r.set_inputs(l.inputs().iter().map(|v| map[v]).collect());
    r.set_outputs(l.outputs().iter().map(|v| map[v]).collect());
    let opts = EvalOptions::with_exec(exec);
    let exact = evaluate_with::<ExactScalar>(&l, &opts)
        .and_then(|ml| Ok((ml, evaluate_with::<ExactScalar>(&r, &opts)?)));
    let same = match exact {
        Ok((ml, mr)) => proportional_equal(&ml, &mr)?.proportional,
        Err(Error::InexactPhase(_)) => proportional_equal_float(
            &evaluate_with::<Complex64>(&l, &opts)?,
            &evaluate_with::<Complex64>(&r, &opts)?,
            1e-9,
        )?,
        Err(e) => return Err(e),
    };
    Ok((!same).then(|| "sides are not proportional".to_string()))
}

/// Checks `rule` at every box instantiation whose boundary count is at most
/// `arity`, for every assignment of its variables from `phases`.
pub fn check_soundness(rule: &RewriteRule, arity: usize, phases: &[Phase]) -> SoundnessReport {
    check_soundness_with(rule, arity, phases, Exec::default())
}

pub fn check_soundness_with(
    rule: &RewriteRule,
    arity: usize,
    phases: &[Phase],
    exec: Exec,
) -> SoundnessReport {
    let vars: Vec<String> = rule.vars().iter().cloned().collect();
    let mut work = Vec::new();
    let mut failures = Vec::new();
    for counts in rule.count_vectors(arity) {
        let inst = match rule.instantiate(&counts) {
            Ok(r) => r,
            Err(e) => {
                failures.push(Counterexample {
                    counts,
                    assignment: BTreeMap::new(),
                    reason: e.to_string(),
                });
                continue;
            }
        };
        let (i, o) = inst.lhs().arity();
        if i + o > arity {
            continue;
        }
        for a in assignments(&vars, phases) {
            work.push((counts.clone(), inst.clone(), a));
        }
    }
    let instances = work.len();
    let results = exec.map_slice(&work, |(_, inst, a)| check_one(inst, a, exec));
    for ((counts, _, assignment), res) in work.into_iter().zip(results) {
        let reason = match res {
            Ok(None) => continue,
            Ok(Some(r)) => r,
            Err(e) => e.to_string(),
        };
        failures.push(Counterexample {
            counts,
            assignment,
            reason,
        });
    }
    SoundnessReport {
        rule: rule.name().to_string(),
        instances,
        counterexamples: failures,
    }
}


#[cfg(test)]
mod mutation {
    use super::*;
    use crate::graph::Pattern;
    use crate::phase::PhaseExpr;

    #[test]
    fn corrupted_euler_is_caught() {
        let q = PhaseExpr::constant(Phase::new(1, 4));
        let mut l = Pattern::new();
        let (i, h, o) = (l.add_input(), l.add_h(), l.add_output());
        l.add_edge(i, h);
        l.add_edge(h, o);
        let mut r = Pattern::new();
        let ri = r.add_input();
        let a = r.add_z(q.clone());
        let b = r.add_x(q.clone());
        let c = r.add_z(q);
        let ro = r.add_output();
        r.add_edge(ri, a);
        r.add_edge(a, b);
        r.add_edge(b, c);
        r.add_edge(c, ro);
        let bad = RewriteRule::new("euler", l, r, &[(i, ri), (o, ro)], vec![]).unwrap();
        let rep = check_soundness(&bad, 4, &default_phase_samples());
        assert!(!rep.passed());
        assert_eq!(rep.counterexamples[0].counts, Vec::<usize>::new());
    }
}
