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

//! Pivots: one inverted bialgebra step on an interior Z–X edge. After
//! fusion and hopf this eliminates both ends, which gets a phase-free
//! reduct past quasi-normal forms the reducer cannot leave on its own.

use crate::canon::{digest, iso_equal};
use crate::error::{Error, Result};
use crate::graph::{Diagram, VertexId, VertexKind};
use crate::rewrite::{apply_unchecked, find_matches, RuleLibrary};

use super::engine::run_with;
use super::strategy::Simproc;
use super::trace::{Direction, ProofTrace, TraceStep};

/// Rule applied, inverted, at a pivot.
pub const PIVOT_RULE: &str = "gen_bialg";

fn is_z(d: &Diagram, v: VertexId) -> bool {
    matches!(d.kind(v), Some(VertexKind::Z(p)) if p.is_zero())
}

fn is_x(d: &Diagram, v: VertexId) -> bool {
    matches!(d.kind(v), Some(VertexKind::X(p)) if p.is_zero())
}

/// Edges `(z, x)` joining phase-free spiders by a single wire, where every
/// other neighbour of `z` is an X spider and every other neighbour of `x`
/// a Z spider. In edge order.
pub fn pivot_sites(d: &Diagram) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for (_, a, b) in d.edges() {
        let (z, x) = if is_z(d, a) && is_x(d, b) {
            (a, b)
        } else if is_z(d, b) && is_x(d, a) {
            (b, a)
        } else {
            continue;
        };
        if d.edge_multiplicity(z, x) != 1 || out.contains(&(z, x)) {
            continue;
        }
        if d.neighbors(z).iter().all(|&w| w == x || is_x(d, w))
            && d.neighbors(x).iter().all(|&w| w == z || is_z(d, w))
        {
            out.push((z, x));
        }
    }
    out
}

/// Applies the pivot at `(z, x)`.
pub fn pivot(
    lib: &RuleLibrary,
    d: &Diagram,
    z: VertexId,
    x: VertexId,
) -> Result<(Diagram, TraceStep)> {
    let counts = [d.degree(x) - 1, d.degree(z) - 1];
    let rule = lib.concrete(PIVOT_RULE, &counts, true)?;
    let m = find_matches(&rule, d)
        .into_iter()
        .find(|m| {
            let mut img: Vec<VertexId> = m.vertices.values().copied().collect();
            img.sort_unstable();
            img == [z.min(x), z.max(x)]
        })
        .ok_or_else(|| Error::SearchExhausted(format!("no pivot at ({z}, {x})")))?;
    let next = apply_unchecked(&rule, d, &m)?;
    let step = TraceStep {
        rule: PIVOT_RULE.to_string(),
        dir: Direction::Rev,
        matched: m,
        post: digest(&next),
    };
    Ok((next, step))
}

/// Runs `s`, then while the result is not isomorphic to `goal` pivots at the
/// first site and runs `s` again, at most `max_pivots` times. Returns the
/// trace and the number of pivots used.
pub fn reduce_with_pivots(
    lib: &RuleLibrary,
    s: &Simproc,
    d: &Diagram,
    goal: &Diagram,
    max_pivots: usize,
    budget: usize,
) -> Result<(ProofTrace, usize)> {
    let mut trace = ProofTrace::new(digest(d));
    let mut current = d.clone();
    let mut pivots = 0;
    loop {
        let left = budget.saturating_sub(trace.len());
        let (next, t) = run_with(lib, s, &current, left)?;
        trace.steps.extend(t.steps);
        current = next;
        if iso_equal(&current, goal) {
            trace.close(&current);
            return Ok((trace, pivots));
        }
        if pivots == max_pivots {
            return Err(Error::SearchExhausted(format!(
                "not isomorphic to the goal after {pivots} pivots"
            )));
        }
        let Some(&(z, x)) = pivot_sites(&current).first() else {
            return Err(Error::SearchExhausted(
                "reduct differs from the goal and has no pivot site".into(),
            ));
        };
        let (next, step) = pivot(lib, &current, z, x)?;
        trace.steps.push(step);
        current = next;
        pivots += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::Phase;
    use crate::simproc::{certify, replay};

    /// Two Z spiders both joined to two X spiders on the wires.
    fn twin() -> Diagram {
        let mut d = Diagram::new();
        let i0 = d.add_input();
        let i1 = d.add_input();
        let a = d.add_z(Phase::ZERO);
        let b = d.add_z(Phase::ZERO);
        let x1 = d.add_x(Phase::ZERO);
        let x2 = d.add_x(Phase::ZERO);
        let o0 = d.add_output();
        let o1 = d.add_output();
        d.add_edge(i0, x1);
        d.add_edge(x1, o0);
        d.add_edge(i1, x2);
        d.add_edge(x2, o1);
        for x in [x1, x2] {
            d.add_edge(a, x);
            d.add_edge(b, x);
        }
        d
    }

    #[test]
    fn sites_need_fusable_neighbours() {
        let d = twin();
        // x1 and x2 touch boundaries, so no site.
        assert!(pivot_sites(&d).is_empty());
    }

    #[test]
    fn pivot_is_replayable_and_certified() {
        let mut d = Diagram::new();
        let i = d.add_input();
        let o = d.add_output();
        let za = d.add_z(Phase::ZERO);
        let zb = d.add_z(Phase::ZERO);
        let xa = d.add_x(Phase::ZERO);
        let xb = d.add_x(Phase::ZERO);
        let zc = d.add_z(Phase::ZERO);
        d.add_edge(i, za);
        d.add_edge(zb, o);
        d.add_edge(za, xa);
        d.add_edge(za, xb);
        d.add_edge(zb, xa);
        d.add_edge(zb, xb);
        d.add_edge(zc, xa);
        d.add_edge(zc, xb);
        let sites = pivot_sites(&d);
        assert!(sites.contains(&(zc, xa)));
        let lib = RuleLibrary::builtin();
        let (next, step) = pivot(lib, &d, zc, xa).unwrap();
        let mut t = ProofTrace::new(digest(&d));
        t.steps.push(step);
        t.close(&next);
        assert_eq!(replay(&t, &d).unwrap(), next);
        assert!(certify(&t, &d).unwrap().passed());
    }
}
