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

//! Open multigraphs with ordered boundaries: the terms of the calculus.

use std::collections::BTreeMap;
use std::fmt::Display;

use crate::error::{Error, Result};
use crate::phase::{Phase, PhaseExpr};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind<P> {
    Z(P),
    X(P),
    H,
    Boundary,
}

impl<P> VertexKind<P> {
    pub fn is_boundary(&self) -> bool {
        matches!(self, VertexKind::Boundary)
    }

    pub fn phase(&self) -> Option<&P> {
        match self {
            VertexKind::Z(p) | VertexKind::X(p) => Some(p),
            _ => None,
        }
    }

    /// Same constructor, ignoring the phase.
    pub fn same_type<Q>(&self, other: &VertexKind<Q>) -> bool {
        matches!(
            (self, other),
            (VertexKind::Z(_), VertexKind::Z(_))
                | (VertexKind::X(_), VertexKind::X(_))
                | (VertexKind::H, VertexKind::H)
                | (VertexKind::Boundary, VertexKind::Boundary)
        )
    }

    pub fn map_phase<Q>(&self, f: impl FnOnce(&P) -> Q) -> VertexKind<Q> {
        match self {
            VertexKind::Z(p) => VertexKind::Z(f(p)),
            VertexKind::X(p) => VertexKind::X(f(p)),
            VertexKind::H => VertexKind::H,
            VertexKind::Boundary => VertexKind::Boundary,
        }
    }

    /// Z ↔ X, phases kept.
    pub fn color_swapped(&self) -> VertexKind<P>
    where
        P: Clone,
    {
        match self {
            VertexKind::Z(p) => VertexKind::X(p.clone()),
            VertexKind::X(p) => VertexKind::Z(p.clone()),
            VertexKind::H => VertexKind::H,
            VertexKind::Boundary => VertexKind::Boundary,
        }
    }

    pub fn type_letter(&self) -> &'static str {
        match self {
            VertexKind::Z(_) => "Z",
            VertexKind::X(_) => "X",
            VertexKind::H => "H",
            VertexKind::Boundary => "B",
        }
    }
}

/// Phase labels that can be negated, so diagrams over them have adjoints.
pub trait PhaseLabel: Clone + PartialEq + Display {
    fn negated(&self) -> Self;
    fn zero() -> Self;
}

impl PhaseLabel for Phase {
    fn negated(&self) -> Self {
        -*self
    }
    fn zero() -> Self {
        Phase::ZERO
    }
}

impl PhaseLabel for PhaseExpr {
    fn negated(&self) -> Self {
        self.negate()
    }
    fn zero() -> Self {
        PhaseExpr::default()
    }
}

/// An open multigraph with phased Z/X vertices, H vertices and boundary
/// vertices listed in input and output order. Self-loops and parallel edges
/// are allowed. Vertex and edge ids are never reused within one graph.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph<P> {
    vertices: BTreeMap<VertexId, VertexKind<P>>,
    edges: BTreeMap<EdgeId, (VertexId, VertexId)>,
    incidence: BTreeMap<VertexId, Vec<EdgeId>>,
    inputs: Vec<VertexId>,
    outputs: Vec<VertexId>,
    next_vertex: VertexId,
    next_edge: EdgeId,
}

/// A concrete diagram.
pub type Diagram = Graph<Phase>;
/// A rule side whose phases may mention variables.
pub type Pattern = Graph<PhaseExpr>;

impl<P> Default for Graph<P> {
    fn default() -> Self {
        Graph {
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
            incidence: BTreeMap::new(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            next_vertex: 0,
            next_edge: 0,
        }
    }
}

impl<P: PhaseLabel> Graph<P> {
    pub fn new() -> Self {
        Self::default()
    }

    /// `n` bare wires.
    pub fn identity(n: usize) -> Self {
        let mut g = Self::new();
        let ins: Vec<_> = (0..n).map(|_| g.add_input()).collect();
        for i in ins {
            let o = g.add_output();
            g.add_edge(i, o);
        }
        g
    }

    pub fn add_vertex(&mut self, kind: VertexKind<P>) -> VertexId {
        let id = self.next_vertex;
        self.next_vertex += 1;
        self.vertices.insert(id, kind);
        self.incidence.insert(id, Vec::new());
        id
    }

    pub(crate) fn add_vertex_with_id(&mut self, id: VertexId, kind: VertexKind<P>) -> Result<()> {
        if self.vertices.contains_key(&id) {
            return Err(Error::InvalidDiagram(format!("duplicate vertex id {id}")));
        }
        self.vertices.insert(id, kind);
        self.incidence.insert(id, Vec::new());
        self.next_vertex = self.next_vertex.max(id + 1);
        Ok(())
    }

    pub fn add_z(&mut self, p: P) -> VertexId {
        self.add_vertex(VertexKind::Z(p))
    }

    pub fn add_x(&mut self, p: P) -> VertexId {
        self.add_vertex(VertexKind::X(p))
    }

    pub fn add_h(&mut self) -> VertexId {
        self.add_vertex(VertexKind::H)
    }

    pub fn add_input(&mut self) -> VertexId {
        let v = self.add_vertex(VertexKind::Boundary);
        self.inputs.push(v);
        v
    }

    pub fn add_output(&mut self) -> VertexId {
        let v = self.add_vertex(VertexKind::Boundary);
        self.outputs.push(v);
        v
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) -> EdgeId {
        assert!(
            self.vertices.contains_key(&a) && self.vertices.contains_key(&b),
            "edge endpoint missing: {a}-{b}"
        );
        let id = self.next_edge;
        self.next_edge += 1;
        let pair = if a <= b { (a, b) } else { (b, a) };
        self.edges.insert(id, pair);
        self.incidence.get_mut(&a).unwrap().push(id);
        self.incidence.get_mut(&b).unwrap().push(id);
        id
    }

    pub fn remove_edge(&mut self, e: EdgeId) {
        if let Some((a, b)) = self.edges.remove(&e) {
            for v in [a, b] {
                if let Some(list) = self.incidence.get_mut(&v) {
                    if let Some(pos) = list.iter().position(|&x| x == e) {
                        list.remove(pos);
                    }
                }
            }
        }
    }

    /// Removes a vertex with all incident edges. Boundary vertices are also
    /// dropped from the boundary lists.
    pub fn remove_vertex(&mut self, v: VertexId) {
        let incident = self.incidence.get(&v).cloned().unwrap_or_default();
        for e in incident {
            self.remove_edge(e);
        }
        self.vertices.remove(&v);
        self.incidence.remove(&v);
        self.inputs.retain(|&x| x != v);
        self.outputs.retain(|&x| x != v);
    }

    pub fn set_kind(&mut self, v: VertexId, kind: VertexKind<P>) {
        if let Some(k) = self.vertices.get_mut(&v) {
            *k = kind;
        }
    }

    pub fn kind(&self, v: VertexId) -> Option<&VertexKind<P>> {
        self.vertices.get(&v)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains_key(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, &VertexKind<P>)> {
        self.vertices.iter().map(|(&v, k)| (v, k))
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.keys().copied()
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices
            .iter()
            .filter(|(_, k)| !k.is_boundary())
            .map(|(&v, _)| v)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_interior(&self) -> usize {
        self.vertices.values().filter(|k| !k.is_boundary()).count()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().map(|(&e, &(a, b))| (e, a, b))
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(&e).copied()
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.edges.contains_key(&e)
    }

    /// Incident edge ids; a self-loop is listed twice.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        self.incidence.get(&v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    /// The far endpoint of `e` seen from `v`.
    pub fn other_end(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let (a, b) = self.endpoints(e)?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    /// Number of edges joining `a` and `b` (self-loops when `a == b`).
    pub fn edge_multiplicity(&self, a: VertexId, b: VertexId) -> usize {
        let pair = if a <= b { (a, b) } else { (b, a) };
        self.incident(a)
            .iter()
            .filter(|&&e| self.edges.get(&e) == Some(&pair))
            .count()
            / if a == b { 2 } else { 1 }
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.incident(v)
            .iter()
            .filter_map(|&e| self.other_end(e, v))
            .collect()
    }

    pub fn inputs(&self) -> &[VertexId] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[VertexId] {
        &self.outputs
    }

    pub fn set_inputs(&mut self, inputs: Vec<VertexId>) {
        self.inputs = inputs;
    }

    pub fn set_outputs(&mut self, outputs: Vec<VertexId>) {
        self.outputs = outputs;
    }

    pub fn arity(&self) -> (usize, usize) {
        (self.inputs.len(), self.outputs.len())
    }

    /// One past the largest vertex id ever allocated.
    pub fn vertex_id_bound(&self) -> VertexId {
        self.next_vertex
    }

    /// The same graph with every vertex id shifted by `offset`.
    pub fn shifted(&self, offset: VertexId) -> Graph<P> {
        let mut g = Graph::new();
        for (&v, k) in &self.vertices {
            g.add_vertex_with_id(v + offset, k.clone())
                .expect("shifted ids stay distinct");
        }
        for (_, a, b) in self.edges() {
            g.add_edge(a + offset, b + offset);
        }
        g.inputs = self.inputs.iter().map(|v| v + offset).collect();
        g.outputs = self.outputs.iter().map(|v| v + offset).collect();
        g.next_vertex = self.next_vertex + offset;
        g
    }

    /// Checks the structural invariants: boundary lists partition the
    /// boundary vertices, boundaries have degree 1 and H vertices degree 2.
    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeMap::new();
        for (&v, role) in self
            .inputs
            .iter()
            .map(|v| (v, "input"))
            .chain(self.outputs.iter().map(|v| (v, "output")))
        {
            match self.vertices.get(&v) {
                Some(VertexKind::Boundary) => {}
                Some(_) => {
                    return Err(Error::InvalidDiagram(format!(
                        "{role} {v} is not a boundary vertex"
                    )))
                }
                None => return Err(Error::InvalidDiagram(format!("{role} {v} does not exist"))),
            }
            if seen.insert(v, role).is_some() {
                return Err(Error::InvalidDiagram(format!(
                    "boundary {v} listed more than once"
                )));
            }
        }
        for (&e, &(a, b)) in &self.edges {
            if !self.vertices.contains_key(&a) || !self.vertices.contains_key(&b) {
                return Err(Error::InvalidDiagram(format!(
                    "edge {e} has a missing endpoint"
                )));
            }
        }
        for (&v, kind) in &self.vertices {
            let deg = self.degree(v);
            match kind {
                VertexKind::Boundary => {
                    if !seen.contains_key(&v) {
                        return Err(Error::InvalidDiagram(format!(
                            "boundary vertex {v} is neither an input nor an output"
                        )));
                    }
                    if deg != 1 {
                        return Err(Error::InvalidDiagram(format!(
                            "boundary vertex {v} has degree {deg}, expected 1"
                        )));
                    }
                }
                VertexKind::H if deg != 2 => {
                    return Err(Error::InvalidDiagram(format!(
                        "H vertex {v} has degree {deg}, expected 2"
                    )))
                }
                _ => {}
            }
        }
        let incidences: usize = self.incidence.values().map(Vec::len).sum();
        if incidences != 2 * self.edges.len() {
            return Err(Error::InvalidDiagram(
                "incidence bookkeeping out of sync".into(),
            ));
        }
        Ok(())
    }

    /// Copies every vertex and edge of `other` into `self` under fresh ids.
    /// Returns the vertex id map. Boundary lists are not touched.
    pub(crate) fn import(&mut self, other: &Graph<P>) -> BTreeMap<VertexId, VertexId> {
        let map: BTreeMap<_, _> = other
            .vertices
            .iter()
            .map(|(&v, k)| (v, self.add_vertex(k.clone())))
            .collect();
        for (_, a, b) in other.edges() {
            self.add_edge(map[&a], map[&b]);
        }
        map
    }

    /// Removes two degree-1 vertices and joins whatever they were attached
    /// to. Two such vertices attached to each other close into a loop, kept
    /// as a phase-free Z vertex with a self-loop so the scalar survives.
    pub(crate) fn splice(&mut self, p: VertexId, q: VertexId) {
        let ep = self.incident(p)[0];
        let eq = self.incident(q)[0];
        if ep == eq {
            self.remove_vertex(p);
            self.remove_vertex(q);
            let z = self.add_vertex(VertexKind::Z(P::zero()));
            self.add_edge(z, z);
            return;
        }
        let x = self.other_end(ep, p).unwrap();
        let y = self.other_end(eq, q).unwrap();
        self.remove_vertex(p);
        self.remove_vertex(q);
        self.add_edge(x, y);
    }

    /// Sequential composition: `self` first, then `next`. The i-th output of
    /// `self` is plugged into the i-th input of `next`.
    pub fn compose(&self, next: &Graph<P>) -> Result<Graph<P>> {
        if self.outputs.len() != next.inputs.len() {
            return Err(Error::ArityMismatch {
                outputs: self.outputs.len(),
                inputs: next.inputs.len(),
            });
        }
        let mut g = self.clone();
        let map = g.import(next);
        let plugs: Vec<_> = self
            .outputs
            .iter()
            .zip(&next.inputs)
            .map(|(&o, i)| (o, map[i]))
            .collect();
        g.inputs = self.inputs.clone();
        g.outputs = next.outputs.iter().map(|o| map[o]).collect();
        for (o, i) in plugs {
            g.splice(o, i);
        }
        Ok(g)
    }

    /// Parallel composition; boundaries of `self` come first.
    pub fn tensor(&self, other: &Graph<P>) -> Graph<P> {
        let mut g = self.clone();
        let map = g.import(other);
        g.inputs.extend(other.inputs.iter().map(|v| map[v]));
        g.outputs.extend(other.outputs.iter().map(|v| map[v]));
        g
    }

    /// Mirror image: inputs and outputs swap and phases are negated.
    pub fn adjoint(&self) -> Graph<P> {
        let mut g = self.clone();
        for k in g.vertices.values_mut() {
            *k = k.map_phase(P::negated);
        }
        std::mem::swap(&mut g.inputs, &mut g.outputs);
        g
    }

    /// Exchanges Z and X everywhere.
    pub fn color_swapped(&self) -> Graph<P> {
        let mut g = self.clone();
        for k in g.vertices.values_mut() {
            *k = k.color_swapped();
        }
        g
    }

    pub fn map_phases<Q>(&self, mut f: impl FnMut(&P) -> Q) -> Graph<Q> {
        Graph {
            vertices: self
                .vertices
                .iter()
                .map(|(&v, k)| (v, k.map_phase(&mut f)))
                .collect(),
            edges: self.edges.clone(),
            incidence: self.incidence.clone(),
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            next_vertex: self.next_vertex,
            next_edge: self.next_edge,
        }
    }

    /// Reorders the outputs: new output `i` is old output `perm[i]`.
    pub fn permute_outputs(&self, perm: &[usize]) -> Graph<P> {
        let mut g = self.clone();
        g.outputs = perm.iter().map(|&i| self.outputs[i]).collect();
        g
    }

    /// Reorders the inputs: new input `i` is old input `perm[i]`.
    pub fn permute_inputs(&self, perm: &[usize]) -> Graph<P> {
        let mut g = self.clone();
        g.inputs = perm.iter().map(|&i| self.inputs[i]).collect();
        g
    }
}

impl Diagram {
    /// A single spider with the given numbers of input and output legs.
    pub fn spider(kind: VertexKind<Phase>, inputs: usize, outputs: usize) -> Diagram {
        let mut g = Diagram::new();
        let ins: Vec<_> = (0..inputs).map(|_| g.add_input()).collect();
        let v = g.add_vertex(kind);
        for i in ins {
            g.add_edge(i, v);
        }
        for _ in 0..outputs {
            let o = g.add_output();
            g.add_edge(v, o);
        }
        g
    }

    /// True when every phase lies on the π/4 grid.
    pub fn is_clifford_t(&self) -> bool {
        self.vertices
            .values()
            .all(|k| k.phase().is_none_or(|p| p.eighths().is_some()))
    }

    /// No phases other than 0 and no H vertices.
    pub fn is_phase_free(&self) -> bool {
        self.vertices.values().all(|k| match k {
            VertexKind::Z(p) | VertexKind::X(p) => p.is_zero(),
            VertexKind::H => false,
            VertexKind::Boundary => true,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_gate(p: Phase) -> Diagram {
        Diagram::spider(VertexKind::Z(p), 1, 1)
    }

    #[test]
    fn identity_is_bare_wires() {
        let id = Diagram::identity(3);
        id.validate().unwrap();
        assert_eq!(id.num_interior(), 0);
        assert_eq!(id.num_edges(), 3);
        for (&i, &o) in id.inputs().iter().zip(id.outputs()) {
            assert_eq!(id.edge_multiplicity(i, o), 1);
        }
    }

    #[test]
    fn compose_bare_wires_stays_bare() {
        let id = Diagram::identity(2);
        let c = id.compose(&id).unwrap();
        c.validate().unwrap();
        assert_eq!(c.num_vertices(), 4);
        assert_eq!(c.num_edges(), 2);
    }

    #[test]
    fn compose_arity_mismatch() {
        let err = Diagram::identity(2)
            .compose(&Diagram::identity(3))
            .unwrap_err();
        assert!(matches!(
            err,
            Error::ArityMismatch {
                outputs: 2,
                inputs: 3
            }
        ));
    }

    #[test]
    fn compose_gates_chains_spiders() {
        let c = z_gate(Phase::new(1, 4))
            .compose(&z_gate(Phase::new(1, 2)))
            .unwrap();
        c.validate().unwrap();
        assert_eq!(c.num_interior(), 2);
        assert_eq!(c.num_edges(), 3);
    }

    #[test]
    fn cup_then_cap_is_a_loop() {
        let mut cup = Diagram::new();
        let a = cup.add_output();
        let b = cup.add_output();
        cup.add_edge(a, b);
        let cap = cup.adjoint();
        let c = cup.compose(&cap).unwrap();
        c.validate().unwrap();
        assert_eq!(c.arity(), (0, 0));
        assert_eq!(c.num_interior(), 1);
        let v = c.interior_vertices().next().unwrap();
        assert_eq!(c.edge_multiplicity(v, v), 1);
    }

    #[test]
    fn adjoint_negates_and_swaps() {
        let d = Diagram::spider(VertexKind::Z(Phase::new(1, 4)), 1, 2);
        let a = d.adjoint();
        assert_eq!(a.arity(), (2, 1));
        let v = a.interior_vertices().next().unwrap();
        assert_eq!(a.kind(v), Some(&VertexKind::Z(Phase::new(7, 4))));
        assert_eq!(a.adjoint(), d);
    }

    #[test]
    fn validate_catches_bad_h_degree() {
        let mut g = Diagram::new();
        let i = g.add_input();
        let h = g.add_h();
        g.add_edge(i, h);
        assert!(g.validate().is_err());
    }

    #[test]
    fn tensor_orders_boundaries() {
        let t = Diagram::identity(1).tensor(&z_gate(Phase::PI));
        t.validate().unwrap();
        assert_eq!(t.arity(), (2, 2));
        let first_in = t.inputs()[0];
        assert_eq!(t.edge_multiplicity(first_in, t.outputs()[0]), 1);
    }
}
