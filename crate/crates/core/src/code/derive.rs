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

//! Circuits re-derived from the code's structure: the transversal-style
//! physical CNOT and the ancilla-based encoder.

use std::collections::BTreeMap;

use crate::builders::{Circuit, WireStart};
use crate::error::{Error, Result};
use crate::graph::Diagram;
use crate::semantics::{evaluate_exact, proportional_equal};

use super::fixture::{
    build_cnot_logical, build_dec, build_enc, cnot_circuit, x_support, LOGICAL, PHYSICAL,
};

/// Largest physical CNOT count searched.
pub const MAX_PHYSICAL_CNOTS: usize = 5;

#[derive(Clone, Debug)]
pub struct PhysicalCnot {
    pub control: usize,
    pub target: usize,
    /// 1-based (control, target) pairs in circuit order.
    pub gates: Vec<(usize, usize)>,
    pub diagram: Diagram,
}

type Frame = [u8; LOGICAL + 1];

fn mask(wires: impl IntoIterator<Item = usize>) -> u8 {
    wires.into_iter().fold(0, |m, p| m | (1 << (p - 1)))
}

fn cnot_on(v: u8, c: usize, t: usize) -> u8 {
    if v >> (c - 1) & 1 == 1 {
        v ^ (1 << (t - 1))
    } else {
        v
    }
}

fn act(f: &Frame, gate: (usize, usize)) -> Frame {
    f.map(|v| cnot_on(v, gate.0, gate.1))
}

fn all_gates() -> Vec<(usize, usize)> {
    let mut g = Vec::new();
    for c in 1..=PHYSICAL {
        for t in 1..=PHYSICAL {
            if c != t {
                g.push((c, t));
            }
        }
    }
    g
}

/// Shortest gate sequences from `start`, up to `depth` gates, keyed by the
/// frame they reach. Ties keep the lexicographically first sequence.
fn sequences(start: Frame, depth: usize) -> BTreeMap<Frame, Vec<(usize, usize)>> {
    let gates = all_gates();
    let mut seen = BTreeMap::from([(start, Vec::new())]);
    let mut layer = vec![(start, Vec::new())];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (f, seq) in &layer {
            for &g in &gates {
                let h = act(f, g);
                if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(h) {
                    let mut s: Vec<(usize, usize)> = seq.clone();
                    s.push(g);
                    e.insert(s.clone());
                    next.push((h, s));
                }
            }
        }
        layer = next;
    }
    seen
}

/// CNOT circuits on the physical wires, at most [`MAX_PHYSICAL_CNOTS`]
/// gates, whose action on the codeword frame (all-ones and the three X
/// supports) is that of a logical CNOT. Shortest first, then
/// lexicographic. Not yet checked semantically.
pub fn cnot_frame_candidates(control: usize, target: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    build_cnot_logical(control, target)?;
    let support = x_support();
    let ones = mask(1..=PHYSICAL);
    let s: Vec<u8> = (1..=LOGICAL)
        .map(|j| mask(support[&j].iter().copied()))
        .collect();
    let start: Frame = [ones, s[0], s[1], s[2]];
    // Each logical support may pick up the all-ones vector: that only
    // relabels the GHZ branch.
    let mut goals = Vec::new();
    for flips in 0..(1u8 << LOGICAL) {
        let mut g: Frame = start;
        g[control] ^= s[target - 1];
        for j in 0..LOGICAL {
            if flips >> j & 1 == 1 {
                g[j + 1] ^= ones;
            }
        }
        goals.push(g);
    }
    let back_depth = 2;
    let forward = sequences(start, MAX_PHYSICAL_CNOTS - back_depth);
    let gates = all_gates();
    let mut backs: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    let mut frontier = backs.clone();
    for _ in 0..back_depth {
        frontier = frontier
            .iter()
            .flat_map(|b| {
                gates.iter().map(move |&g| {
                    let mut nb = b.clone();
                    nb.push(g);
                    nb
                })
            })
            .collect();
        backs.extend(frontier.iter().cloned());
    }
    let mut candidates: Vec<Vec<(usize, usize)>> = Vec::new();
    for goal in &goals {
        for b in &backs {
            // Undo the tail `b` from the goal; CNOTs are involutions.
            let mid = b.iter().rev().fold(*goal, |f, &g| act(&f, g));
            if let Some(front) = forward.get(&mid) {
                let mut full = front.clone();
                full.extend(b.iter().copied());
                candidates.push(full);
            }
        }
    }
    candidates.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    candidates.dedup();
    Ok(candidates)
}

/// The first of [`cnot_frame_candidates`] that the exact semantics
/// accepts.
pub fn derive_cnot_physical(control: usize, target: usize) -> Result<PhysicalCnot> {
    let logical = build_cnot_logical(control, target)?;
    let candidates = cnot_frame_candidates(control, target)?;
    let enc = build_enc();
    let dec = build_dec();
    let want = evaluate_exact(&logical)?;
    for gates in candidates {
        let diagram = cnot_circuit(&gates)?;
        let got = evaluate_exact(&enc.compose(&diagram)?.compose(&dec)?)?;
        if proportional_equal(&got, &want)?.proportional {
            return Ok(PhysicalCnot {
                control,
                target,
                gates,
                diagram,
            });
        }
    }
    Err(Error::SearchExhausted(format!(
        "no circuit of at most {MAX_PHYSICAL_CNOTS} CNOTs implements logical CNOT({control}, {target})"
    )))
}

/// The circuit form of the encoder.
#[derive(Clone, Debug)]
pub struct EncoderCircuit {
    /// How each physical wire starts.
    pub starts: Vec<WireStart>,
    /// 1-based (control, target) pairs.
    pub gates: Vec<(usize, usize)>,
    /// Logical wire j enters on this physical wire.
    pub logical_wires: Vec<usize>,
    /// The circuit with its ancillas prepared: a 3→8 diagram.
    pub prepared: Diagram,
    /// The bare 8→8 circuit.
    pub unitary: Diagram,
}

impl EncoderCircuit {
    pub fn ancillas(&self) -> usize {
        self.starts
            .iter()
            .filter(|s| **s != WireStart::Input)
            .count()
    }
}

/// Reads a circuit off the encoder's structure: each logical qubit enters
/// on the one wire its X support owns alone (or the highest such), the
/// other wires start in |0⟩ except the last, which starts in |+⟩ and
/// becomes the GHZ control.
pub fn encoder_circuit() -> EncoderCircuit {
    let support = x_support();
    let mut logical_wires = Vec::new();
    for j in 1..=LOGICAL {
        let own = support[&j]
            .iter()
            .copied()
            .filter(|p| {
                (1..=LOGICAL)
                    .filter(|&k| k != j)
                    .all(|k| !support[&k].contains(p))
            })
            .max()
            .expect("every support has a private wire");
        logical_wires.push(own);
    }
    let mut starts = vec![WireStart::Zero; PHYSICAL];
    for &w in &logical_wires {
        starts[w - 1] = WireStart::Input;
    }
    starts[PHYSICAL - 1] = WireStart::Plus;
    let mut gates = Vec::new();
    for (j, &w) in logical_wires.iter().enumerate() {
        for &p in &support[&(j + 1)] {
            if p != w {
                gates.push((w, p));
            }
        }
    }
    for p in 1..PHYSICAL {
        gates.push((PHYSICAL, p));
    }
    let build = |starts: &[WireStart]| {
        let mut c = Circuit::with_starts(starts);
        for &(a, b) in &gates {
            c.cnot(a - 1, b - 1);
        }
        c.finish()
    };
    // Inputs are created in wire order; put them in logical order.
    let mut by_wire: Vec<usize> = logical_wires.clone();
    by_wire.sort_unstable();
    let perm: Vec<usize> = logical_wires
        .iter()
        .map(|w| by_wire.iter().position(|x| x == w).unwrap())
        .collect();
    let prepared = build(&starts).permute_inputs(&perm);
    let unitary = build(&[WireStart::Input; PHYSICAL]);
    EncoderCircuit {
        starts,
        gates,
        logical_wires,
        prepared,
        unitary,
    }
}
