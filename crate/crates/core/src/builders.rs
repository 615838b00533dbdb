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

//! Gate-level construction of diagrams.

use crate::graph::{Diagram, VertexId, VertexKind};
use crate::phase::Phase;

/// How a circuit wire begins.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WireStart {
    /// An input boundary of the diagram.
    Input,
    /// Ancilla prepared in |0⟩ (a phase-free X unit).
    Zero,
    /// Ancilla prepared in |+⟩ (a phase-free Z unit).
    Plus,
}

/// Builds a diagram gate by gate on numbered wires (0-based here; the
/// public wire numbering elsewhere is 1-based).
#[derive(Clone, Debug)]
pub struct Circuit {
    diagram: Diagram,
    frontier: Vec<VertexId>,
}

impl Circuit {
    pub fn new(wires: usize) -> Circuit {
        Circuit::with_starts(&vec![WireStart::Input; wires])
    }

    pub fn with_starts(starts: &[WireStart]) -> Circuit {
        let mut diagram = Diagram::new();
        let frontier = starts
            .iter()
            .map(|s| match s {
                WireStart::Input => diagram.add_input(),
                WireStart::Zero => diagram.add_x(Phase::ZERO),
                WireStart::Plus => diagram.add_z(Phase::ZERO),
            })
            .collect();
        Circuit { diagram, frontier }
    }

    pub fn wires(&self) -> usize {
        self.frontier.len()
    }

    fn push(&mut self, wire: usize, kind: VertexKind<Phase>) -> VertexId {
        let v = self.diagram.add_vertex(kind);
        self.diagram.add_edge(self.frontier[wire], v);
        self.frontier[wire] = v;
        v
    }

    pub fn z(&mut self, wire: usize, p: Phase) -> &mut Self {
        self.push(wire, VertexKind::Z(p));
        self
    }

    pub fn x(&mut self, wire: usize, p: Phase) -> &mut Self {
        self.push(wire, VertexKind::X(p));
        self
    }

    pub fn h(&mut self, wire: usize) -> &mut Self {
        self.push(wire, VertexKind::H);
        self
    }

    pub fn t(&mut self, wire: usize) -> &mut Self {
        self.z(wire, Phase::quarter(1))
    }

    pub fn tdg(&mut self, wire: usize) -> &mut Self {
        self.z(wire, Phase::quarter(7))
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> &mut Self {
        assert_ne!(control, target, "CNOT control equals target");
        let c = self.push(control, VertexKind::Z(Phase::ZERO));
        let t = self.push(target, VertexKind::X(Phase::ZERO));
        self.diagram.add_edge(c, t);
        self
    }

    pub fn cz(&mut self, a: usize, b: usize) -> &mut Self {
        assert_ne!(a, b, "CZ on a single wire");
        let u = self.push(a, VertexKind::Z(Phase::ZERO));
        let v = self.push(b, VertexKind::Z(Phase::ZERO));
        let h = self.diagram.add_h();
        self.diagram.add_edge(u, h);
        self.diagram.add_edge(h, v);
        self
    }

    /// Closes every wire with an output boundary.
    pub fn finish(&self) -> Diagram {
        let mut d = self.diagram.clone();
        for &f in &self.frontier {
            let o = d.add_output();
            d.add_edge(f, o);
        }
        d
    }
}

/// A single-wire phase layer: Z(p_i) on wire i.
pub fn z_layer(phases: &[Phase]) -> Diagram {
    let mut c = Circuit::new(phases.len());
    for (w, &p) in phases.iter().enumerate() {
        if !p.is_zero() {
            c.z(w, p);
        }
    }
    c.finish()
}

/// X(π) on the listed (0-based) wires of an `n`-wire register.
pub fn x_layer(n: usize, wires: &[usize]) -> Diagram {
    let mut c = Circuit::new(n);
    for &w in wires {
        c.x(w, Phase::PI);
    }
    c.finish()
}

/// Z(π) on the listed (0-based) wires of an `n`-wire register.
pub fn z_pi_layer(n: usize, wires: &[usize]) -> Diagram {
    let mut c = Circuit::new(n);
    for &w in wires {
        c.z(w, Phase::PI);
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ExactMatrix;
    use crate::ring::ExactScalar;
    use crate::semantics::{evaluate_exact, proportional_equal};

    fn perm_matrix(n_bits: usize, f: impl Fn(usize) -> usize) -> ExactMatrix {
        let n = 1 << n_bits;
        let mut m = ExactMatrix::zeros(n, n);
        for c in 0..n {
            m.set(f(c), c, ExactScalar::ONE);
        }
        m
    }

    #[test]
    fn cnot_diagram_is_cnot() {
        let mut c = Circuit::new(2);
        c.cnot(0, 1);
        let m = evaluate_exact(&c.finish()).unwrap();
        let cnot = perm_matrix(2, |x| if x & 2 != 0 { x ^ 1 } else { x });
        assert!(proportional_equal(&m, &cnot).unwrap().proportional);
    }

    #[test]
    fn cz_diagram_is_cz() {
        let mut c = Circuit::new(2);
        c.cz(0, 1);
        let m = evaluate_exact(&c.finish()).unwrap();
        let mut cz = ExactMatrix::identity(4);
        cz.set(3, 3, -ExactScalar::ONE);
        assert!(proportional_equal(&m, &cz).unwrap().proportional);
    }

    #[test]
    fn consecutive_z_phases_add() {
        let mut c = Circuit::new(1);
        c.z(0, Phase::quarter(1)).z(0, Phase::quarter(2));
        let m = evaluate_exact(&c.finish()).unwrap();
        let mut expect = ExactMatrix::identity(2);
        expect.set(1, 1, ExactScalar::omega_pow(3));
        assert!(proportional_equal(&m, &expect).unwrap().proportional);
    }

    #[test]
    fn prepared_ancillas() {
        let c = Circuit::with_starts(&[WireStart::Zero, WireStart::Plus]).finish();
        let m = evaluate_exact(&c).unwrap();
        let expect = ExactMatrix::column(vec![
            ExactScalar::ONE,
            ExactScalar::ONE,
            ExactScalar::ZERO,
            ExactScalar::ZERO,
        ]);
        assert!(proportional_equal(&m, &expect).unwrap().proportional);
    }
}
