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

//! Colour refinement over diagrams: iso-invariant digests and isomorphism
//! search respecting kinds, phases, multiplicities and boundary order.

use std::collections::{BTreeMap, BTreeSet};

use sha2::{Digest, Sha256};

use crate::graph::{Graph, PhaseLabel, VertexId, VertexKind};

type Coloring = BTreeMap<VertexId, usize>;

fn initial_label<P: PhaseLabel>(g: &Graph<P>, v: VertexId) -> String {
    let kind = g.kind(v).expect("vertex exists");
    let phase = kind.phase().map(|p| p.to_string()).unwrap_or_default();
    let role = if let Some(i) = g.inputs().iter().position(|&x| x == v) {
        format!("in{i}")
    } else if let Some(i) = g.outputs().iter().position(|&x| x == v) {
        format!("out{i}")
    } else {
        String::new()
    };
    format!(
        "{}:{}:{}:{}:{}",
        kind.type_letter(),
        phase,
        g.degree(v),
        g.edge_multiplicity(v, v),
        role
    )
}

/// Stable colour refinement run jointly over several graphs so that colours
/// are comparable between them.
fn refine<P: PhaseLabel>(graphs: &[&Graph<P>]) -> (Vec<Coloring>, Vec<String>) {
    let mut labels: Vec<(usize, VertexId, String)> = Vec::new();
    for (gi, g) in graphs.iter().enumerate() {
        for v in g.vertex_ids() {
            labels.push((gi, v, initial_label(g, v)));
        }
    }
    let distinct: BTreeSet<&String> = labels.iter().map(|(_, _, l)| l).collect();
    let class_labels: Vec<String> = distinct.iter().map(|s| (*s).clone()).collect();
    let rank: BTreeMap<&String, usize> = distinct
        .into_iter()
        .enumerate()
        .map(|(i, s)| (s, i))
        .collect();
    let mut colors: Vec<Coloring> = vec![Coloring::new(); graphs.len()];
    for (gi, v, l) in &labels {
        colors[*gi].insert(*v, rank[l]);
    }
    let mut classes = rank.len();
    // Each round maps colour -> (old colour, sorted neighbour colours).
    let mut first_label_of: BTreeMap<usize, String> = class_labels
        .iter()
        .enumerate()
        .map(|(i, l)| (i, l.clone()))
        .collect();
    loop {
        let mut sigs: Vec<(usize, VertexId, (usize, Vec<usize>))> = Vec::new();
        for (gi, g) in graphs.iter().enumerate() {
            for v in g.vertex_ids() {
                let mut nb: Vec<usize> = g
                    .incident(v)
                    .iter()
                    .map(|&e| colors[gi][&g.other_end(e, v).unwrap()])
                    .collect();
                nb.sort_unstable();
                sigs.push((gi, v, (colors[gi][&v], nb)));
            }
        }
        let distinct: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().map(|(_, _, s)| s).collect();
        let rank: BTreeMap<&(usize, Vec<usize>), usize> = distinct
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let new_classes = rank.len();
        let mut next: Vec<Coloring> = vec![Coloring::new(); graphs.len()];
        let mut next_label = BTreeMap::new();
        for (gi, v, s) in &sigs {
            let c = rank[s];
            next[*gi].insert(*v, c);
            next_label
                .entry(c)
                .or_insert_with(|| first_label_of[&s.0].clone());
        }
        colors = next;
        first_label_of = next_label;
        if new_classes == classes {
            break;
        }
        classes = new_classes;
    }
    let labels = (0..classes).map(|c| first_label_of[&c].clone()).collect();
    (colors, labels)
}

/// Iso-invariant SHA-256 digest of a diagram, hex encoded.
pub fn digest<P: PhaseLabel>(g: &Graph<P>) -> String {
    let (colors, labels) = refine(&[g]);
    let colors = &colors[0];
    let mut vertex_colors: Vec<usize> = colors.values().copied().collect();
    vertex_colors.sort_unstable();
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .map(|(_, a, b)| {
            let (x, y) = (colors[&a], colors[&b]);
            (x.min(y), x.max(y))
        })
        .collect();
    edges.sort_unstable();
    let mut h = Sha256::new();
    for (c, l) in labels.iter().enumerate() {
        h.update(format!("c{c}={l};").as_bytes());
    }
    h.update(format!("v{vertex_colors:?};e{edges:?};").as_bytes());
    let ins: Vec<usize> = g.inputs().iter().map(|v| colors[v]).collect();
    let outs: Vec<usize> = g.outputs().iter().map(|v| colors[v]).collect();
    h.update(format!("i{ins:?};o{outs:?}").as_bytes());
    hex::encode(h.finalize())
}

/// A bijection between the vertices of `a` and `b` preserving kinds,
/// phases, edge multiplicities and boundary order, if one exists.
pub fn find_isomorphism<P: PhaseLabel>(
    a: &Graph<P>,
    b: &Graph<P>,
) -> Option<BTreeMap<VertexId, VertexId>> {
    if a.arity() != b.arity()
        || a.num_vertices() != b.num_vertices()
        || a.num_edges() != b.num_edges()
    {
        return None;
    }
    let (colors, _) = refine(&[a, b]);
    let (ca, cb) = (&colors[0], &colors[1]);
    let mut hist_a: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    let mut hist_b: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
    for (&v, &c) in ca {
        hist_a.entry(c).or_default().push(v);
    }
    for (&v, &c) in cb {
        hist_b.entry(c).or_default().push(v);
    }
    if hist_a.len() != hist_b.len()
        || hist_a
            .iter()
            .any(|(c, vs)| hist_b.get(c).map(Vec::len) != Some(vs.len()))
    {
        return None;
    }
    // Small classes first, then grow along edges so adjacency checks prune early.
    let mut order: Vec<VertexId> = Vec::with_capacity(a.num_vertices());
    let mut placed = BTreeSet::new();
    let mut seeds: Vec<VertexId> = ca.keys().copied().collect();
    seeds.sort_by_key(|v| (hist_a[&ca[v]].len(), *v));
    for s in seeds {
        if placed.contains(&s) {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([s]);
        placed.insert(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut nb = a.neighbors(v);
            nb.sort_by_key(|u| (hist_a[&ca[u]].len(), *u));
            for u in nb {
                if placed.insert(u) {
                    queue.push_back(u);
                }
            }
        }
    }
    let mut map = BTreeMap::new();
    let mut inv = BTreeMap::new();
    if extend(a, b, ca, &hist_b, &order, 0, &mut map, &mut inv) {
        Some(map)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend<P: PhaseLabel>(
    a: &Graph<P>,
    b: &Graph<P>,
    ca: &Coloring,
    hist_b: &BTreeMap<usize, Vec<VertexId>>,
    order: &[VertexId],
    depth: usize,
    map: &mut BTreeMap<VertexId, VertexId>,
    inv: &mut BTreeMap<VertexId, VertexId>,
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    let mut nb_a = a.neighbors(v);
    nb_a.sort_unstable();
    nb_a.dedup();
    nb_a.retain(|u| *u != v && map.contains_key(u));
    for &w in &hist_b[&ca[&v]] {
        if inv.contains_key(&w) || a.edge_multiplicity(v, v) != b.edge_multiplicity(w, w) {
            continue;
        }
        let forward = nb_a
            .iter()
            .all(|u| a.edge_multiplicity(v, *u) == b.edge_multiplicity(w, map[u]));
        let backward = forward
            && b.neighbors(w).iter().all(|x| {
                *x == w
                    || inv
                        .get(x)
                        .is_none_or(|pre| a.edge_multiplicity(v, *pre) > 0)
            });
        if !backward {
            continue;
        }
        map.insert(v, w);
        inv.insert(w, v);
        if extend(a, b, ca, hist_b, order, depth + 1, map, inv) {
            return true;
        }
        map.remove(&v);
        inv.remove(&w);
    }
    false
}

/// Graph isomorphism respecting kinds, exact phases, multiplicities and
/// boundary order. Syntactic: a phase-free Z vertex is not a bare wire.
pub fn iso_equal<P: PhaseLabel>(a: &Graph<P>, b: &Graph<P>) -> bool {
    find_isomorphism(a, b).is_some()
}

/// Helper used by kind-aware callers that want the class of a vertex.
pub fn kind_signature<P: PhaseLabel>(k: &VertexKind<P>) -> String {
    format!(
        "{}{}",
        k.type_letter(),
        k.phase().map(|p| p.to_string()).unwrap_or_default()
    )
}
