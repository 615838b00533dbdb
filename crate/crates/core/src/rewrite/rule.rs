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

//! Rewrite rules: two patterns over a shared boundary, with optional
//! repetition boxes that are expanded to a fixed count before matching.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Pattern, VertexId};
use crate::json::GraphJson;

/// Default upper bound on the repetition count of a box.
pub const DEFAULT_BOX_MAX: usize = 8;

/// A marked set of vertices (on either side of a rule) that may be repeated
/// between 0 and `max` times.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepetitionBox {
    pub vertices: BTreeSet<VertexId>,
    pub max: usize,
}

/// A directed equation `lhs => rhs`. Vertex ids of the two sides are
/// disjoint so that boxes can name vertices on both.
#[derive(Clone, Debug, PartialEq)]
pub struct RewriteRule {
    name: String,
    lhs: Pattern,
    rhs: Pattern,
    boundary_map: BTreeMap<VertexId, VertexId>,
    boxes: Vec<RepetitionBox>,
    vars: BTreeSet<String>,
    inverted: bool,
    counts: Option<Vec<usize>>,
}

impl RewriteRule {
    /// Builds and validates a rule. If the two sides share vertex ids the
    /// right-hand side is renumbered past the left; `boundary_map` and box
    /// vertex lists always refer to the ids as given.
    pub fn new(
        name: &str,
        lhs: Pattern,
        rhs: Pattern,
        boundary_map: &[(VertexId, VertexId)],
        boxes: Vec<(Vec<VertexId>, Vec<VertexId>, usize)>,
    ) -> Result<RewriteRule> {
        let offset = lhs.vertex_id_bound();
        let overlap = rhs.vertex_ids().any(|v| lhs.contains_vertex(v));
        let shift = if overlap { offset } else { 0 };
        let rhs = if overlap { rhs.shifted(offset) } else { rhs };
        let boundary_map = boundary_map.iter().map(|&(l, r)| (l, r + shift)).collect();
        let boxes = boxes
            .into_iter()
            .map(|(l, r, max)| RepetitionBox {
                vertices: l
                    .into_iter()
                    .chain(r.into_iter().map(|v| v + shift))
                    .collect(),
                max,
            })
            .collect();
        let rule = RewriteRule::from_parts(name, lhs, rhs, boundary_map, boxes, false, None)?;
        for (_, k) in rule.lhs.vertices() {
            if let Some(p) = k.phase() {
                let single = p.terms.len() <= 1 && p.terms.values().all(|c| c.abs() == 1);
                if !single {
                    return Err(
                        rule.invalid(format!("left-hand phase `{p}` is not of the form ±v + c"))
                    );
                }
            }
        }
        Ok(rule)
    }

    fn from_parts(
        name: &str,
        lhs: Pattern,
        rhs: Pattern,
        boundary_map: BTreeMap<VertexId, VertexId>,
        boxes: Vec<RepetitionBox>,
        inverted: bool,
        counts: Option<Vec<usize>>,
    ) -> Result<RewriteRule> {
        let vars = lhs
            .vertices()
            .filter_map(|(_, k)| k.phase())
            .flat_map(|p| p.vars().map(str::to_string).collect::<Vec<_>>())
            .collect();
        let rule = RewriteRule {
            name: name.to_string(),
            lhs,
            rhs,
            boundary_map,
            boxes,
            vars,
            inverted,
            counts,
        };
        rule.validate()?;
        Ok(rule)
    }

    fn invalid(&self, reason: String) -> Error {
        Error::InvalidRule {
            rule: self.name.clone(),
            reason,
        }
    }

    fn validate(&self) -> Result<()> {
        self.lhs
            .validate()
            .map_err(|e| self.invalid(format!("left-hand side: {e}")))?;
        self.rhs
            .validate()
            .map_err(|e| self.invalid(format!("right-hand side: {e}")))?;
        if self.rhs.vertex_ids().any(|v| self.lhs.contains_vertex(v)) {
            return Err(self.invalid("the two sides share vertex ids".into()));
        }

        let role = |g: &Pattern, v: VertexId| {
            if g.inputs().contains(&v) {
                Some("input")
            } else if g.outputs().contains(&v) {
                Some("output")
            } else {
                None
            }
        };
        let mut image = BTreeSet::new();
        for (&l, &r) in &self.boundary_map {
            let (rl, rr) = (role(&self.lhs, l), role(&self.rhs, r));
            if rl.is_none() || rr.is_none() {
                return Err(
                    self.invalid(format!("boundary pair ({l}, {r}) is not a boundary pair"))
                );
            }
            if rl != rr {
                return Err(self.invalid(format!(
                    "boundary pair ({l}, {r}) maps an {} to an {}",
                    rl.unwrap(),
                    rr.unwrap()
                )));
            }
            if !image.insert(r) {
                return Err(self.invalid(format!("right boundary {r} is hit twice")));
            }
        }
        let (li, lo) = self.lhs.arity();
        let (ri, ro) = self.rhs.arity();
        if self.boundary_map.len() != li + lo || image.len() != ri + ro {
            return Err(self.invalid("boundary map is not a bijection".into()));
        }

        for (_, k) in self.rhs.vertices() {
            if let Some(p) = k.phase() {
                if let Some(v) = p.vars().find(|v| !self.vars.contains(*v)) {
                    return Err(self.invalid(format!("variable `{v}` only occurs on the right")));
                }
            }
        }

        let mut owner = BTreeMap::new();
        for (i, b) in self.boxes.iter().enumerate() {
            for &v in &b.vertices {
                if !self.lhs.contains_vertex(v) && !self.rhs.contains_vertex(v) {
                    return Err(self.invalid(format!("box {i} names missing vertex {v}")));
                }
                if owner.insert(v, i).is_some() {
                    return Err(self.invalid(format!("vertex {v} is in two boxes")));
                }
            }
        }
        for (&l, &r) in &self.boundary_map {
            if owner.get(&l) != owner.get(&r) {
                return Err(self.invalid(format!(
                    "boundary pair ({l}, {r}) is boxed on one side only"
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lhs(&self) -> &Pattern {
        &self.lhs
    }

    pub fn rhs(&self) -> &Pattern {
        &self.rhs
    }

    /// Left boundary id to right boundary id.
    pub fn boundary_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.boundary_map
    }

    pub fn boxes(&self) -> &[RepetitionBox] {
        &self.boxes
    }

    pub fn vars(&self) -> &BTreeSet<String> {
        &self.vars
    }

    pub fn is_inverted(&self) -> bool {
        self.inverted
    }

    pub(crate) fn renamed(&self, name: &str) -> RewriteRule {
        RewriteRule {
            name: name.to_string(),
            counts: None,
            ..self.clone()
        }
    }

    /// The box counts this rule was instantiated with, if it is an instance.
    pub fn counts(&self) -> Option<&[usize]> {
        self.counts.as_deref()
    }

    pub fn is_box_free(&self) -> bool {
        self.boxes.is_empty()
    }

    /// Swaps the two sides.
    pub fn invert(&self) -> RewriteRule {
        RewriteRule {
            name: self.name.clone(),
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
            boundary_map: self.boundary_map.iter().map(|(&l, &r)| (r, l)).collect(),
            boxes: self.boxes.clone(),
            vars: self
                .rhs
                .vertices()
                .filter_map(|(_, k)| k.phase())
                .flat_map(|p| p.vars().map(str::to_string).collect::<Vec<_>>())
                .collect(),
            inverted: !self.inverted,
            counts: self.counts.clone(),
        }
    }

    /// The same rule with Z and X exchanged on both sides.
    pub fn color_dual(&self, name: &str) -> RewriteRule {
        RewriteRule {
            name: name.to_string(),
            lhs: self.lhs.color_swapped(),
            rhs: self.rhs.color_swapped(),
            ..self.clone()
        }
    }

    /// Every count vector within the box bounds, in lexicographic order.
    pub fn count_vectors(&self, cap: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for b in &self.boxes {
            let top = b.max.min(cap);
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..=top).map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out
    }

    /// Expands every box `counts[i]` times on both sides. Boxed boundary
    /// vertices take the place of the original in the boundary lists, copy
    /// after copy.
    pub fn instantiate(&self, counts: &[usize]) -> Result<RewriteRule> {
        if counts.len() != self.boxes.len() {
            return Err(self.invalid(format!(
                "{} counts given for {} boxes",
                counts.len(),
                self.boxes.len()
            )));
        }
        for (i, (b, &c)) in self.boxes.iter().zip(counts).enumerate() {
            if c > b.max {
                return Err(Error::BoxCount {
                    rule: self.name.clone(),
                    index: i,
                    count: c,
                    max: b.max,
                });
            }
        }
        let owner: BTreeMap<VertexId, usize> = self
            .boxes
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.vertices.iter().map(move |&v| (v, i)))
            .collect();
        let (lhs, lmap) = expand(&self.lhs, &owner, counts);
        let (rhs, rmap) = expand(&self.rhs, &owner, counts);
        let offset = lhs.vertex_id_bound();
        let rhs = rhs.shifted(offset);
        let mut boundary_map = BTreeMap::new();
        for (&l, &r) in &self.boundary_map {
            let copies = owner.get(&l).map_or(1, |&i| counts[i]);
            for k in 0..copies {
                boundary_map.insert(lmap[&(l, k)], rmap[&(r, k)] + offset);
            }
        }
        let counts = Some(match &self.counts {
            Some(c) if self.boxes.is_empty() => c.clone(),
            _ => counts.to_vec(),
        });
        RewriteRule::from_parts(
            &self.name,
            lhs,
            rhs,
            boundary_map,
            Vec::new(),
            self.inverted,
            counts,
        )
    }

    pub fn to_json(&self) -> RuleJson {
        RuleJson {
            name: self.name.clone(),
            lhs: self.lhs.to_json(),
            rhs: self.rhs.to_json(),
            boundary_map: self.boundary_map.iter().map(|(&l, &r)| [l, r]).collect(),
            boxes: self.boxes.clone(),
            vars: self.vars.iter().cloned().collect(),
        }
    }

    pub fn from_json(json: &RuleJson) -> Result<RewriteRule> {
        let lhs = Pattern::from_json(&json.lhs)?;
        let rhs = Pattern::from_json(&json.rhs)?;
        let boundary_map: Vec<_> = json.boundary_map.iter().map(|p| (p[0], p[1])).collect();
        let boxes = json
            .boxes
            .iter()
            .map(|b| {
                let (l, r): (Vec<_>, Vec<_>) =
                    b.vertices.iter().partition(|&&v| lhs.contains_vertex(v));
                (l, r, b.max)
            })
            .collect();
        if rhs.vertex_ids().any(|v| lhs.contains_vertex(v)) {
            return Err(Error::InvalidRule {
                rule: json.name.clone(),
                reason: "the two sides share vertex ids".into(),
            });
        }
        let rule = RewriteRule::new(&json.name, lhs, rhs, &boundary_map, boxes)?;
        let declared: BTreeSet<String> = json.vars.iter().cloned().collect();
        if !rule.vars.is_subset(&declared) {
            return Err(rule.invalid("`vars` does not list every left-hand variable".into()));
        }
        Ok(rule)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("rule json serializes")
    }

    pub fn from_json_str(s: &str) -> Result<RewriteRule> {
        RewriteRule::from_json(&serde_json::from_str(s)?)
    }
}

/// The rule file format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RuleJson {
    pub name: String,
    pub lhs: GraphJson,
    pub rhs: GraphJson,
    pub boundary_map: Vec<[VertexId; 2]>,
    #[serde(default)]
    pub boxes: Vec<RepetitionBox>,
    #[serde(default)]
    pub vars: Vec<String>,
}

/// Copies boxed vertices `counts[box]` times. Returns the new graph and a
/// map from (old vertex, copy index) to new vertex; unboxed vertices only
/// have copy 0.
fn expand(
    g: &Pattern,
    owner: &BTreeMap<VertexId, usize>,
    counts: &[usize],
) -> (Pattern, BTreeMap<(VertexId, usize), VertexId>) {
    let mut out = Pattern::new();
    let mut map = BTreeMap::new();
    let copies = |v: &VertexId| owner.get(v).map_or(1, |&i| counts[i]);
    for (v, k) in g.vertices() {
        for c in 0..copies(&v) {
            map.insert((v, c), out.add_vertex(k.clone()));
        }
    }
    for (_, a, b) in g.edges() {
        let (ba, bb) = (owner.get(&a), owner.get(&b));
        // Two different boxes: every copy of one meets every copy of the other.
        let na = if ba.is_some() { copies(&a) } else { 1 };
        let nb = if bb.is_some() { copies(&b) } else { 1 };
        if ba.is_some() && ba == bb {
            for c in 0..na {
                out.add_edge(map[&(a, c)], map[&(b, c)]);
            }
        } else {
            for ca in 0..na {
                for cb in 0..nb {
                    out.add_edge(map[&(a, ca)], map[&(b, cb)]);
                }
            }
        }
    }
    let list = |l: &[VertexId]| -> Vec<VertexId> {
        l.iter()
            .flat_map(|v| (0..copies(v)).map(|c| map[&(*v, c)]).collect::<Vec<_>>())
            .collect()
    };
    out.set_inputs(list(g.inputs()));
    out.set_outputs(list(g.outputs()));
    (out, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexKind;
    use crate::phase::{Phase, PhaseExpr};
    use crate::rewrite::{builtin_rules, green_pi, green_sp};

    #[test]
    fn spider_counts_one_one_is_binary_fusion() {
        let r = green_sp().instantiate(&[1, 1]).unwrap();
        assert_eq!(r.lhs().num_interior(), 2);
        assert_eq!(r.lhs().arity(), (0, 2));
        assert_eq!(r.rhs().num_interior(), 1);
        assert!(r.is_box_free());
        assert_eq!(r.counts(), Some(&[1, 1][..]));
    }

    #[test]
    fn pi_commute_with_two_legs() {
        let r = green_pi().instantiate(&[2]).unwrap();
        let xs = r
            .rhs()
            .vertices()
            .filter(|(_, k)| matches!(k, VertexKind::X(p) if *p == PhaseExpr::constant(Phase::PI)))
            .count();
        assert_eq!(xs, 2);
        assert_eq!(r.lhs().arity(), (0, 3));
    }

    #[test]
    fn zero_counts_drop_boxed_parts() {
        for r in builtin_rules() {
            let zeros = vec![0; r.boxes().len()];
            let inst = r.instantiate(&zeros).unwrap();
            let boxed = |g: &Pattern| {
                r.boxes()
                    .iter()
                    .flat_map(|b| &b.vertices)
                    .filter(|v| g.contains_vertex(**v))
                    .count()
            };
            assert_eq!(
                inst.lhs().num_vertices(),
                r.lhs().num_vertices() - boxed(r.lhs())
            );
            assert_eq!(
                inst.rhs().num_vertices(),
                r.rhs().num_vertices() - boxed(r.rhs())
            );
        }
    }

    #[test]
    fn counts_out_of_range() {
        let r = green_sp();
        assert!(matches!(
            r.instantiate(&[17, 0]),
            Err(Error::BoxCount { index: 0, .. })
        ));
        assert!(r.instantiate(&[1]).is_err());
    }

    #[test]
    fn invert_twice_is_identity() {
        for r in builtin_rules() {
            assert_eq!(r.invert().invert(), r);
        }
    }

    #[test]
    fn json_round_trip() {
        for r in builtin_rules() {
            let back = RewriteRule::from_json_str(&r.to_json_string()).unwrap();
            assert_eq!(back.lhs(), r.lhs(), "{}", r.name());
            assert_eq!(back.boundary_map(), r.boundary_map());
            assert_eq!(back.boxes(), r.boxes());
        }
    }

    #[test]
    fn rejects_role_mismatch_and_fresh_variables() {
        let mut l = Pattern::new();
        let i = l.add_input();
        let z = l.add_z(PhaseExpr::var("a"));
        l.add_edge(i, z);
        let mut r = Pattern::new();
        let o = r.add_output();
        let w = r.add_z(PhaseExpr::var("a"));
        r.add_edge(o, w);
        assert!(RewriteRule::new("bad", l.clone(), r, &[(i, o)], vec![]).is_err());

        let mut r = Pattern::new();
        let ri = r.add_input();
        let w = r.add_z(PhaseExpr::var("c"));
        r.add_edge(ri, w);
        let err = RewriteRule::new("bad", l, r, &[(i, ri)], vec![]).unwrap_err();
        assert!(err.to_string().contains("only occurs on the right"));
    }
}
