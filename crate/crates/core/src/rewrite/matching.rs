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

//! Finding rule left-hand sides inside a diagram and replacing them.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::canon::digest;
use crate::error::{Error, Result};
use crate::graph::{Diagram, EdgeId, VertexId, VertexKind};
use crate::phase::Phase;

use super::rule::RewriteRule;

/// One end of an edge: `end` 0 is the smaller endpoint id, 1 the larger.
/// For a self-loop the two ends are told apart only by this index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfEdge {
    pub edge: EdgeId,
    pub end: u8,
}

/// An occurrence of a concrete rule's left-hand side in a target diagram.
///
/// Each left boundary vertex is sent to the half-edge it replaces: the
/// `end` is the side inside the match and the rule's wire continues to the
/// other side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Match {
    pub rule: String,
    #[serde(default)]
    pub inverted: bool,
    #[serde(default)]
    pub counts: Vec<usize>,
    pub target: String,
    pub vertices: BTreeMap<VertexId, VertexId>,
    pub edges: BTreeMap<EdgeId, EdgeId>,
    pub boundary: BTreeMap<VertexId, HalfEdge>,
    pub assignment: BTreeMap<String, Phase>,
}

impl Match {
    /// Sorted target vertex ids covered by the match.
    pub fn image(&self) -> Vec<VertexId> {
        let mut v: Vec<_> = self.vertices.values().copied().collect();
        v.sort_unstable();
        v
    }

    /// Ordering and de-duplication key.
    fn key(&self, legs: bool) -> MatchKey {
        let mut wires: Vec<EdgeId> = if self.vertices.is_empty() {
            self.boundary.values().map(|h| h.edge).collect()
        } else {
            Vec::new()
        };
        wires.sort_unstable();
        wires.dedup();
        let boundary = if legs {
            self.boundary.iter().map(|(&b, &h)| (b, h)).collect()
        } else {
            Vec::new()
        };
        (self.image(), wires, boundary)
    }
}

type MatchKey = (Vec<VertexId>, Vec<EdgeId>, Vec<(VertexId, HalfEdge)>);

fn far_end(d: &Diagram, h: HalfEdge) -> Option<VertexId> {
    let (a, b) = d.endpoints(h.edge)?;
    Some(if h.end == 0 { b } else { a })
}

/// Half-edges of `d` sitting at `v`, loops contributing both ends.
fn half_edges_at(d: &Diagram, v: VertexId) -> Vec<HalfEdge> {
    let mut out = Vec::new();
    let mut seen_loops = BTreeSet::new();
    for &e in d.incident(v) {
        let (a, b) = d.endpoints(e).unwrap();
        if a == b {
            if seen_loops.insert(e) {
                out.push(HalfEdge { edge: e, end: 0 });
                out.push(HalfEdge { edge: e, end: 1 });
            }
        } else {
            out.push(HalfEdge {
                edge: e,
                end: u8::from(a != v),
            });
        }
    }
    out.sort();
    out
}

/// Edges joining `a` and `b` (loops when equal), ascending.
fn edges_between<P: crate::graph::PhaseLabel>(
    g: &crate::graph::Graph<P>,
    a: VertexId,
    b: VertexId,
) -> Vec<EdgeId> {
    let mut out: Vec<EdgeId> = g
        .incident(a)
        .iter()
        .copied()
        .filter(|&e| {
            let (x, y) = g.endpoints(e).unwrap();
            (x == a && y == b) || (x == b && y == a)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Boundary vertices of the rule's left side attached to `u`, ascending.
fn boundary_legs(rule: &RewriteRule, u: VertexId) -> Vec<VertexId> {
    let lhs = rule.lhs();
    let mut legs: Vec<VertexId> = lhs
        .neighbors(u)
        .into_iter()
        .filter(|&w| lhs.kind(w).unwrap().is_boundary())
        .collect();
    legs.sort_unstable();
    legs.dedup();
    legs
}

/// Every way to hand the half-edges in `spare` to the leg classes, legs
/// within a class taking their half-edges in ascending order.
fn distribute(spare: &[HalfEdge], classes: &[Vec<VertexId>]) -> Vec<Vec<(VertexId, HalfEdge)>> {
    let Some((first, rest)) = classes.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    for chosen in combinations(spare.len(), first.len()) {
        let picked: Vec<(VertexId, HalfEdge)> = first
            .iter()
            .zip(chosen.iter())
            .map(|(&b, &i)| (b, spare[i]))
            .collect();
        let left: Vec<HalfEdge> = (0..spare.len())
            .filter(|i| !chosen.contains(i))
            .map(|i| spare[i])
            .collect();
        for tail in distribute(&left, rest) {
            let mut v = picked.clone();
            v.extend(tail);
            out.push(v);
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

struct Matcher<'a> {
    rule: &'a RewriteRule,
    target: &'a Diagram,
    order: Vec<VertexId>,
    anchor: BTreeMap<VertexId, VertexId>,
    target_interior: Vec<VertexId>,
    wires: Vec<(VertexId, VertexId)>,
    digest: String,
    /// Interchangeable boundary legs per left vertex; set when every way
    /// of attaching the legs is wanted rather than one per image.
    leg_classes: Option<BTreeMap<VertexId, Vec<Vec<VertexId>>>>,
    found: BTreeMap<MatchKey, Match>,
}

impl<'a> Matcher<'a> {
    fn new(rule: &'a RewriteRule, target: &'a Diagram) -> Matcher<'a> {
        let lhs = rule.lhs();
        let interior: Vec<VertexId> = lhs.interior_vertices().collect();
        let mut order = Vec::new();
        let mut anchor = BTreeMap::new();
        let mut placed = BTreeSet::new();
        for &start in &interior {
            if placed.contains(&start) {
                continue;
            }
            placed.insert(start);
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for w in lhs.neighbors(u) {
                    if !lhs.kind(w).unwrap().is_boundary() && placed.insert(w) {
                        anchor.insert(w, u);
                        queue.push_back(w);
                    }
                }
            }
        }
        let wires = lhs
            .edges()
            .filter(|&(_, a, b)| {
                lhs.kind(a).unwrap().is_boundary() && lhs.kind(b).unwrap().is_boundary()
            })
            .map(|(_, a, b)| (a, b))
            .collect();
        Matcher {
            rule,
            target,
            order,
            anchor,
            target_interior: target.interior_vertices().collect(),
            wires,
            digest: digest(target),
            leg_classes: None,
            found: BTreeMap::new(),
        }
    }

    fn with_all_legs(mut self) -> Self {
        let rule = self.rule;
        let lhs = rule.lhs();
        let mut bounds: Vec<VertexId> = rule.boundary_map().keys().copied().collect();
        bounds.sort_unstable();
        let labelled = |order: &[VertexId]| {
            let mut g = rule.rhs().clone();
            g.set_inputs(Vec::new());
            g.set_outputs(order.iter().map(|b| rule.boundary_map()[b]).collect());
            g
        };
        let reference = labelled(&bounds);
        let mut classes = BTreeMap::new();
        for u in lhs.interior_vertices() {
            let legs = boundary_legs(rule, u);
            let mut groups: Vec<Vec<VertexId>> = Vec::new();
            for b in legs {
                let slot = groups.iter_mut().find(|g| {
                    let mut order = bounds.clone();
                    let i = order.iter().position(|x| *x == b).unwrap();
                    let j = order.iter().position(|x| *x == g[0]).unwrap();
                    order.swap(i, j);
                    crate::canon::iso_equal(&reference, &labelled(&order))
                });
                match slot {
                    Some(g) => g.push(b),
                    None => groups.push(vec![b]),
                }
            }
            classes.insert(u, groups);
        }
        self.leg_classes = Some(classes);
        self
    }

    fn search(
        &mut self,
        idx: usize,
        vmap: &mut BTreeMap<VertexId, VertexId>,
        used: &mut BTreeSet<VertexId>,
        assignment: &BTreeMap<String, Phase>,
    ) {
        if idx == self.order.len() {
            self.complete(vmap, assignment);
            return;
        }
        let lhs = self.rule.lhs();
        let u = self.order[idx];
        let candidates: Vec<VertexId> = match self.anchor.get(&u) {
            Some(p) => {
                let mut n = self.target.neighbors(vmap[p]);
                n.sort_unstable();
                n.dedup();
                n
            }
            None => self.target_interior.clone(),
        };
        let ku = lhs.kind(u).unwrap();
        for c in candidates {
            if used.contains(&c) {
                continue;
            }
            let kc = self.target.kind(c).unwrap();
            if !ku.same_type(kc) || lhs.degree(u) != self.target.degree(c) {
                continue;
            }
            if lhs.edge_multiplicity(u, u) > self.target.edge_multiplicity(c, c) {
                continue;
            }
            let fits = vmap.iter().all(|(&q, &qc)| {
                lhs.edge_multiplicity(u, q) <= self.target.edge_multiplicity(c, qc)
            });
            if !fits {
                continue;
            }
            let mut next = assignment.clone();
            if let (Some(pe), Some(&p)) = (ku.phase(), kc.phase()) {
                if !pe.unify(p, &mut next) {
                    continue;
                }
            }
            vmap.insert(u, c);
            used.insert(c);
            self.search(idx + 1, vmap, used, &next);
            vmap.remove(&u);
            used.remove(&c);
        }
    }

    fn complete(
        &mut self,
        vmap: &BTreeMap<VertexId, VertexId>,
        assignment: &BTreeMap<String, Phase>,
    ) {
        let lhs = self.rule.lhs();
        let mut edges = BTreeMap::new();
        let mut used_edges = BTreeSet::new();
        let keys: Vec<VertexId> = vmap.keys().copied().collect();
        for (i, &u) in keys.iter().enumerate() {
            for &q in &keys[i..] {
                let le = edges_between(lhs, u, q);
                if le.is_empty() {
                    continue;
                }
                let te = edges_between(self.target, vmap[&u], vmap[&q]);
                for (l, t) in le.into_iter().zip(te) {
                    edges.insert(l, t);
                    used_edges.insert(t);
                }
            }
        }
        let mut slots = Vec::new();
        for (&u, &c) in vmap {
            let spare: Vec<HalfEdge> = half_edges_at(self.target, c)
                .into_iter()
                .filter(|h| !used_edges.contains(&h.edge))
                .collect();
            let legs = boundary_legs(self.rule, u);
            if legs.len() != spare.len() {
                return;
            }
            let options = match &self.leg_classes {
                None => vec![legs.into_iter().zip(spare).collect()],
                Some(classes) => distribute(&spare, &classes[&u]),
            };
            slots.push(options);
        }
        let mut boundaries = vec![BTreeMap::new()];
        for options in slots {
            boundaries = boundaries
                .into_iter()
                .flat_map(|b| {
                    options.iter().map(move |o| {
                        let mut b = b.clone();
                        b.extend(o.iter().copied());
                        b
                    })
                })
                .collect();
        }
        for boundary in boundaries {
            if self.closes_free_loop(&boundary) {
                continue;
            }
            let mut taken: BTreeSet<EdgeId> = used_edges.clone();
            taken.extend(boundary.values().map(|h: &HalfEdge| h.edge));
            let base = Match {
                rule: self.rule.name().to_string(),
                inverted: self.rule.is_inverted(),
                counts: self
                    .rule
                    .counts()
                    .map(<[usize]>::to_vec)
                    .unwrap_or_default(),
                target: self.digest.clone(),
                vertices: vmap.clone(),
                edges: edges.clone(),
                boundary,
                assignment: assignment.clone(),
            };
            let free: Vec<EdgeId> = self
                .target
                .edges()
                .map(|(e, _, _)| e)
                .filter(|e| !taken.contains(e))
                .collect();
            self.place_wires(0, base, &free, &mut BTreeSet::new());
        }
    }

    /// A right-hand bare wire whose two legs are the ends of one target edge
    /// would leave a free loop: sound, but it only trades one loop for another.
    fn closes_free_loop(&self, boundary: &BTreeMap<VertexId, HalfEdge>) -> bool {
        let rhs = self.rule.rhs();
        let lhs_of: BTreeMap<VertexId, VertexId> = self
            .rule
            .boundary_map()
            .iter()
            .map(|(&l, &r)| (r, l))
            .collect();
        rhs.edges().any(|(_, a, b)| {
            let bare = matches!(rhs.kind(a), Some(VertexKind::Boundary))
                && matches!(rhs.kind(b), Some(VertexKind::Boundary));
            bare && match (
                lhs_of.get(&a).and_then(|l| boundary.get(l)),
                lhs_of.get(&b).and_then(|l| boundary.get(l)),
            ) {
                (Some(x), Some(y)) => x.edge == y.edge,
                _ => false,
            }
        })
    }

    fn place_wires(&mut self, idx: usize, m: Match, free: &[EdgeId], taken: &mut BTreeSet<EdgeId>) {
        if idx == self.wires.len() {
            let key = m.key(self.leg_classes.is_some());
            self.found.entry(key).or_insert(m);
            return;
        }
        let (a, b) = self.wires[idx];
        for &e in free {
            if taken.contains(&e) {
                continue;
            }
            taken.insert(e);
            let mut next = m.clone();
            next.boundary.insert(a, HalfEdge { edge: e, end: 1 });
            next.boundary.insert(b, HalfEdge { edge: e, end: 0 });
            self.place_wires(idx + 1, next, free, taken);
            taken.remove(&e);
        }
    }
}

/// All matches of a box-free rule in `target`, ordered by sorted image.
pub fn find_matches(rule: &RewriteRule, target: &Diagram) -> Vec<Match> {
    find_matches_with(rule, target, &BTreeMap::new())
}

/// As [`find_matches`], with some phase variables fixed in advance. This is
/// how inverted rules whose left side mentions `a+b` get their split.
pub fn find_matches_with(
    rule: &RewriteRule,
    target: &Diagram,
    fixed: &BTreeMap<String, Phase>,
) -> Vec<Match> {
    if !rule.is_box_free() {
        return Vec::new();
    }
    let mut m = Matcher::new(rule, target);
    m.search(0, &mut BTreeMap::new(), &mut BTreeSet::new(), fixed);
    m.found.into_values().collect()
}

/// Like [`find_matches_with`], but keeps every inequivalent way of
/// attaching the boundary legs instead of one match per image. Used to
/// search for expansion steps.
pub fn find_all_matches_with(
    rule: &RewriteRule,
    target: &Diagram,
    fixed: &BTreeMap<String, Phase>,
) -> Vec<Match> {
    if !rule.is_box_free() {
        return Vec::new();
    }
    let mut m = Matcher::new(rule, target).with_all_legs();
    m.search(0, &mut BTreeMap::new(), &mut BTreeSet::new(), fixed);
    m.found.into_values().collect()
}

/// Where the wire behind a left boundary continues in the target.
enum Outside {
    Vertex(VertexId),
    Boundary(VertexId),
}

/// Applies a match produced by [`find_matches`] against this very diagram.
pub fn apply(rule: &RewriteRule, target: &Diagram, m: &Match) -> Result<Diagram> {
    if m.rule != rule.name() || m.inverted != rule.is_inverted() {
        return Err(Error::StaleMatch(format!(
            "match is for rule `{}`, not `{}`",
            m.rule,
            rule.name()
        )));
    }
    let found = digest(target);
    if found != m.target {
        return Err(Error::StaleMatch(format!(
            "diagram digest {found} differs from the matched {}",
            m.target
        )));
    }
    validate_match(rule, target, m).map_err(Error::StaleMatch)?;
    apply_unchecked(rule, target, m)
}

fn vertex_at(d: &Diagram, h: HalfEdge) -> Option<VertexId> {
    let (a, b) = d.endpoints(h.edge)?;
    Some(if h.end == 0 { a } else { b })
}

/// Checks that `m` is an occurrence of the rule's left side in `target`
/// with full edge coverage at every matched vertex.
pub(crate) fn validate_match(
    rule: &RewriteRule,
    target: &Diagram,
    m: &Match,
) -> Result<(), String> {
    let lhs = rule.lhs();
    let interior: BTreeSet<VertexId> = lhs.interior_vertices().collect();
    if m.vertices.keys().copied().collect::<BTreeSet<_>>() != interior {
        return Err("vertex map does not cover the left side".into());
    }
    let image: BTreeSet<VertexId> = m.vertices.values().copied().collect();
    if image.len() != interior.len() {
        return Err("vertex map is not injective".into());
    }
    for (&u, &c) in &m.vertices {
        let (ku, kc) = match (lhs.kind(u), target.kind(c)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(format!("target vertex {c} does not exist")),
        };
        if !ku.same_type(kc) || kc.is_boundary() || lhs.degree(u) != target.degree(c) {
            return Err(format!("vertex {u} cannot map to {c}"));
        }
        if let (Some(pe), Some(&p)) = (ku.phase(), kc.phase()) {
            if pe.eval(&m.assignment) != Some(p) {
                return Err(format!("phase of {c} does not fit `{pe}`"));
            }
        }
    }
    let mut used: BTreeSet<HalfEdge> = BTreeSet::new();
    let mut claim = |h: HalfEdge| -> Result<(), String> {
        if used.insert(h) {
            Ok(())
        } else {
            Err(format!("half-edge {h:?} used twice"))
        }
    };
    let inner_edges: BTreeSet<EdgeId> = lhs
        .edges()
        .filter(|&(_, a, b)| interior.contains(&a) && interior.contains(&b))
        .map(|(e, _, _)| e)
        .collect();
    if m.edges.keys().copied().collect::<BTreeSet<_>>() != inner_edges {
        return Err("edge map does not cover the left side".into());
    }
    for (&le, &te) in &m.edges {
        let (a, b) = lhs.endpoints(le).unwrap();
        let (x, y) = target
            .endpoints(te)
            .ok_or_else(|| format!("target edge {te} does not exist"))?;
        let (ma, mb) = (m.vertices[&a], m.vertices[&b]);
        if !((x == ma && y == mb) || (x == mb && y == ma)) {
            return Err(format!("edge {le} cannot map to {te}"));
        }
        claim(HalfEdge { edge: te, end: 0 })?;
        claim(HalfEdge { edge: te, end: 1 })?;
    }
    let bounds: BTreeSet<VertexId> = rule.boundary_map().keys().copied().collect();
    if m.boundary.keys().copied().collect::<BTreeSet<_>>() != bounds {
        return Err("boundary map does not cover the left side".into());
    }
    for (&b, &h) in &m.boundary {
        if h.end > 1 {
            return Err(format!("bad half-edge end {}", h.end));
        }
        let at =
            vertex_at(target, h).ok_or_else(|| format!("target edge {} does not exist", h.edge))?;
        let e = lhs.incident(b)[0];
        let w = lhs.other_end(e, b).unwrap();
        if interior.contains(&w) {
            if at != m.vertices[&w] {
                return Err(format!(
                    "boundary {b} is not attached at {}",
                    m.vertices[&w]
                ));
            }
        } else {
            let twin = m.boundary[&w];
            if twin.edge != h.edge || twin.end == h.end || image.contains(&at) {
                return Err(format!("bare wire at boundary {b} is inconsistent"));
            }
        }
        claim(h)?;
    }
    for &c in &image {
        if half_edges_at(target, c).iter().any(|h| !used.contains(h)) {
            return Err(format!("an edge at {c} is not covered"));
        }
    }
    Ok(())
}

/// Applies a match known to be current.
pub(crate) fn apply_unchecked(rule: &RewriteRule, target: &Diagram, m: &Match) -> Result<Diagram> {
    let mut d = target.clone();
    let half_owner: BTreeMap<HalfEdge, VertexId> =
        m.boundary.iter().map(|(&b, &h)| (h, b)).collect();
    let image: BTreeSet<VertexId> = m.vertices.values().copied().collect();
    let mut outside = BTreeMap::new();
    for (&b, &h) in &m.boundary {
        let far = far_end(target, h)
            .ok_or_else(|| Error::StaleMatch(format!("edge {} missing", h.edge)))?;
        let twin = HalfEdge {
            edge: h.edge,
            end: 1 - h.end,
        };
        let o = match half_owner.get(&twin) {
            Some(&b2) if image.contains(&far) => Outside::Boundary(b2),
            _ => Outside::Vertex(far),
        };
        outside.insert(b, o);
    }

    for &v in m.vertices.values() {
        d.remove_vertex(v);
    }
    for h in m.boundary.values() {
        if d.contains_edge(h.edge) {
            d.remove_edge(h.edge);
        }
    }

    let mut temp = BTreeMap::new();
    for &b in m.boundary.keys() {
        temp.insert(b, d.add_vertex(VertexKind::Boundary));
    }
    for (&b, o) in &outside {
        match *o {
            Outside::Vertex(w) => {
                d.add_edge(temp[&b], w);
            }
            Outside::Boundary(b2) => {
                if b < b2 {
                    d.add_edge(temp[&b], temp[&b2]);
                }
            }
        }
    }

    let rhs = rule.rhs();
    let mut placed = BTreeMap::new();
    for (v, k) in rhs.vertices() {
        let kind = match k {
            VertexKind::Z(p) => VertexKind::Z(eval(rule, p, &m.assignment)?),
            VertexKind::X(p) => VertexKind::X(eval(rule, p, &m.assignment)?),
            VertexKind::H => VertexKind::H,
            VertexKind::Boundary => VertexKind::Boundary,
        };
        placed.insert(v, d.add_vertex(kind));
    }
    for (_, a, b) in rhs.edges() {
        d.add_edge(placed[&a], placed[&b]);
    }
    for (&l, &r) in rule.boundary_map() {
        d.splice(temp[&l], placed[&r]);
    }
    d.validate()?;
    Ok(d)
}

fn eval(
    rule: &RewriteRule,
    p: &crate::phase::PhaseExpr,
    a: &BTreeMap<String, Phase>,
) -> Result<Phase> {
    p.eval(a).ok_or_else(|| Error::InvalidRule {
        rule: rule.name().to_string(),
        reason: format!("right-hand phase `{p}` has an unbound variable"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::Circuit;
    use crate::canon::iso_equal;
    use crate::rewrite::{green_id, green_pi, green_sp, hopf, RuleLibrary};
    use crate::semantics::{evaluate_exact, proportional_equal};

    fn chain(phases: &[Phase]) -> Diagram {
        let mut d = Diagram::new();
        let mut prev = d.add_input();
        for &p in phases {
            let z = d.add_z(p);
            d.add_edge(prev, z);
            prev = z;
        }
        let o = d.add_output();
        d.add_edge(prev, o);
        d
    }

    fn assert_prop(a: &Diagram, b: &Diagram) {
        let p =
            proportional_equal(&evaluate_exact(a).unwrap(), &evaluate_exact(b).unwrap()).unwrap();
        assert!(p.proportional);
    }

    #[test]
    fn binary_fusion_on_three_chain() {
        let r = green_sp().instantiate(&[1, 1]).unwrap();
        let d = chain(&[Phase::ZERO, Phase::new(1, 4), Phase::PI]);
        let ms = find_matches(&r, &d);
        assert_eq!(ms.len(), 2);
        assert!(ms[0].image() < ms[1].image());
    }

    #[test]
    fn identity_rule_needs_an_interior_vertex() {
        assert!(find_matches(&green_id(), &Diagram::identity(1)).is_empty());
    }

    #[test]
    fn hopf_misses_cnot() {
        let mut c = Circuit::new(2);
        c.cnot(0, 1);
        let fam = RuleLibrary::builtin().family("hopf").unwrap();
        assert!(fam.matches(&c.finish()).is_empty());
        assert!(find_matches(&hopf().instantiate(&[1, 1]).unwrap(), &c.finish()).is_empty());
    }

    #[test]
    fn fusion_adds_phases() {
        let r = green_sp().instantiate(&[1, 1]).unwrap();
        let d = chain(&[Phase::new(1, 4), Phase::new(1, 4)]);
        let m = &find_matches(&r, &d)[0];
        let out = apply(&r, &d, m).unwrap();
        assert!(iso_equal(&out, &chain(&[Phase::new(1, 2)])));
    }

    #[test]
    fn pi_commute_fans_out() {
        let r = green_pi().instantiate(&[2]).unwrap();
        let mut d = Diagram::new();
        let i = d.add_input();
        let x = d.add_x(Phase::PI);
        let z = d.add_z(Phase::new(1, 4));
        let (o1, o2) = (d.add_output(), d.add_output());
        d.add_edge(i, x);
        d.add_edge(x, z);
        d.add_edge(z, o1);
        d.add_edge(z, o2);
        let ms = find_matches(&r, &d);
        assert_eq!(ms.len(), 1);
        let out = apply(&r, &d, &ms[0]).unwrap();
        let mut want = Diagram::new();
        let i = want.add_input();
        let z = want.add_z(Phase::new(7, 4));
        want.add_edge(i, z);
        for _ in 0..2 {
            let x = want.add_x(Phase::PI);
            let o = want.add_output();
            want.add_edge(z, x);
            want.add_edge(x, o);
        }
        assert!(iso_equal(&out, &want));
        assert_prop(&d, &out);
    }

    #[test]
    fn identity_removal_leaves_a_wire() {
        let d = chain(&[Phase::ZERO]);
        let m = &find_matches(&green_id(), &d)[0];
        let out = apply(&green_id(), &d, m).unwrap();
        assert!(iso_equal(&out, &Diagram::identity(1)));
    }

    #[test]
    fn inverted_identity_inserts_a_vertex() {
        let r = green_id().invert();
        let d = Diagram::identity(1);
        let ms = find_matches(&r, &d);
        assert_eq!(ms.len(), 1);
        let out = apply(&r, &d, &ms[0]).unwrap();
        assert!(iso_equal(&out, &chain(&[Phase::ZERO])));
    }

    #[test]
    fn inverted_fusion_splits_a_phase() {
        let r = green_sp().instantiate(&[1, 1]).unwrap().invert();
        assert_eq!(r.invert(), green_sp().instantiate(&[1, 1]).unwrap());
        let d = chain(&[Phase::new(1, 2)]);
        assert!(find_matches(&r, &d).is_empty());
        let fixed = BTreeMap::from([("a".to_string(), Phase::new(1, 4))]);
        let ms = find_matches_with(&r, &d, &fixed);
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].assignment["b"], Phase::new(1, 4));
        let out = apply(&r, &d, &ms[0]).unwrap();
        assert!(iso_equal(
            &out,
            &chain(&[Phase::new(1, 4), Phase::new(1, 4)])
        ));
        assert_prop(&d, &out);
    }

    #[test]
    fn parallel_edges_become_a_loop() {
        let r = green_sp().instantiate(&[1, 1]).unwrap();
        let mut d = Diagram::new();
        let (u, v) = (d.add_z(Phase::ZERO), d.add_z(Phase::ZERO));
        d.add_edge(u, v);
        d.add_edge(u, v);
        let m = &find_matches(&r, &d)[0];
        let out = apply(&r, &d, m).unwrap();
        assert_eq!(out.num_vertices(), 1);
        assert_eq!(out.num_edges(), 1);
        assert_prop(&d, &out);
    }

    #[test]
    fn identity_skips_a_bare_loop() {
        let mut d = Diagram::new();
        let x = d.add_x(Phase::ZERO);
        d.add_edge(x, x);
        let lib = RuleLibrary::builtin();
        assert!(find_matches(&lib.concrete("red_id", &[], false).unwrap(), &d).is_empty());
        assert_eq!(
            find_matches(&lib.concrete("red_loop", &[0], false).unwrap(), &d).len(),
            1
        );
    }

    #[test]
    fn stale_matches_are_rejected() {
        let r = green_id();
        let d = chain(&[Phase::ZERO, Phase::ZERO]);
        let m = find_matches(&r, &d)[0].clone();
        let once = apply(&r, &d, &m).unwrap();
        assert!(matches!(apply(&r, &once, &m), Err(Error::StaleMatch(_))));
        let mut forged = m.clone();
        forged
            .vertices
            .insert(*forged.vertices.keys().next().unwrap(), 999);
        assert!(matches!(apply(&r, &d, &forged), Err(Error::StaleMatch(_))));
    }

    #[test]
    fn untouched_vertices_keep_their_ids() {
        let r = green_sp().instantiate(&[1, 1]).unwrap();
        let d = chain(&[Phase::ZERO, Phase::new(1, 4), Phase::PI]);
        let m = &find_matches(&r, &d)[0];
        let out = apply(&r, &d, m).unwrap();
        for (v, k) in d.vertices() {
            if !m.vertices.values().any(|&x| x == v) {
                assert_eq!(out.kind(v), Some(k));
            }
        }
        assert_eq!(apply(&r, &d, m).unwrap(), out);
    }
}
