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

//! Diagrams of the [[8,3,2]] colour code. Logical wires and physical
//! wires are numbered from 1 in this module's public API; wire 1 is the
//! most significant bit of a basis index.

use std::collections::{BTreeMap, BTreeSet};

use crate::builders::{x_layer, z_layer, z_pi_layer, Circuit};
use crate::error::{Error, Result};
use crate::graph::Diagram;
use crate::matrix::ExactMatrix;
use crate::phase::Phase;
use crate::ring::ExactScalar;

pub const LOGICAL: usize = 3;
pub const PHYSICAL: usize = 8;

/// Physical wires flipped by a logical X on each logical wire.
pub fn x_support() -> BTreeMap<usize, BTreeSet<usize>> {
    BTreeMap::from([
        (1, BTreeSet::from([1, 3, 5, 7])),
        (2, BTreeSet::from([1, 2, 5, 6])),
        (3, BTreeSet::from([1, 2, 3, 4])),
    ])
}

/// Physical wires carrying a Z for a logical Z on each logical wire.
pub fn z_support() -> BTreeMap<usize, BTreeSet<usize>> {
    BTreeMap::from([
        (1, BTreeSet::from([1, 2])),
        (2, BTreeSet::from([1, 3])),
        (3, BTreeSet::from([1, 5])),
    ])
}

/// The phase pattern of the transversal CCZ, in quarter turns.
pub const CCZ_PHYSICAL_QUARTERS: [i64; PHYSICAL] = [1, 7, 7, 1, 7, 1, 1, 7];

/// The published codeword table: logical label and one of the two
/// complementary codeword strings.
pub const CODEWORD_TABLE: [(&str, &str); 8] = [
    ("000", "00000000"),
    ("001", "10101010"),
    ("010", "11001100"),
    ("011", "01100110"),
    ("100", "11110000"),
    ("101", "01011010"),
    ("110", "00111100"),
    ("111", "10010110"),
];

/// The encoder for a given X-support table: a GHZ spine of one Z spider
/// with eight legs, an X spider on each of the first seven legs, and per
/// logical input a Z spider copying it onto the X spiders of its support.
pub fn build_enc_with(support: &BTreeMap<usize, BTreeSet<usize>>) -> Diagram {
    let mut d = Diagram::new();
    let inputs: Vec<_> = (0..LOGICAL).map(|_| d.add_input()).collect();
    let spine = d.add_z(Phase::ZERO);
    let mut parity = Vec::new();
    for _ in 1..PHYSICAL {
        let x = d.add_x(Phase::ZERO);
        d.add_edge(spine, x);
        parity.push(x);
    }
    for p in 1..=PHYSICAL {
        let o = d.add_output();
        d.add_edge(if p < PHYSICAL { parity[p - 1] } else { spine }, o);
    }
    for (j, &i) in inputs.iter().enumerate() {
        let g = d.add_z(Phase::ZERO);
        d.add_edge(i, g);
        for &p in &support[&(j + 1)] {
            d.add_edge(g, parity[p - 1]);
        }
    }
    d
}

pub fn build_enc() -> Diagram {
    build_enc_with(&x_support())
}

/// The decoder is the encoder read backwards.
pub fn build_dec() -> Diagram {
    build_enc().adjoint()
}

fn check_pair(control: usize, target: usize, n: usize) -> Result<()> {
    if control == target || !(1..=n).contains(&control) || !(1..=n).contains(&target) {
        return Err(Error::InvalidDiagram(format!(
            "CNOT({control}, {target}) needs two distinct wires in 1..={n}"
        )));
    }
    Ok(())
}

pub fn build_cnot_logical(control: usize, target: usize) -> Result<Diagram> {
    check_pair(control, target, LOGICAL)?;
    let mut c = Circuit::new(LOGICAL);
    c.cnot(control - 1, target - 1);
    Ok(c.finish())
}

/// CCZ from seven T-type gates on the parities x, y, z, x⊕y, x⊕y⊕z, y⊕z
/// and x⊕z.
pub fn build_ccz_logical() -> Diagram {
    let (a, b, c) = (0, 1, 2);
    let mut k = Circuit::new(LOGICAL);
    k.t(a).t(b).t(c);
    k.cnot(a, b).tdg(b);
    k.cnot(b, c).t(c);
    k.cnot(a, c).tdg(c);
    k.cnot(b, c).tdg(c);
    k.cnot(a, b);
    k.cnot(a, c);
    k.finish()
}

pub fn build_ccz_physical() -> Diagram {
    let phases: Vec<Phase> = CCZ_PHYSICAL_QUARTERS
        .iter()
        .map(|&q| Phase::quarter(q))
        .collect();
    z_layer(&phases)
}

/// A physical circuit of CNOTs, given as 1-based (control, target) pairs.
pub fn cnot_circuit(gates: &[(usize, usize)]) -> Result<Diagram> {
    let mut c = Circuit::new(PHYSICAL);
    for &(ctl, tgt) in gates {
        check_pair(ctl, tgt, PHYSICAL)?;
        c.cnot(ctl - 1, tgt - 1);
    }
    Ok(c.finish())
}

/// Logical Pauli X on one logical wire.
pub fn logical_x(wire: usize) -> Diagram {
    x_layer(LOGICAL, &[wire - 1])
}

/// Logical Pauli Z on one logical wire.
pub fn logical_z(wire: usize) -> Diagram {
    z_pi_layer(LOGICAL, &[wire - 1])
}

/// X on each listed physical wire.
pub fn physical_x(wires: &BTreeSet<usize>) -> Diagram {
    x_layer(PHYSICAL, &wires.iter().map(|w| w - 1).collect::<Vec<_>>())
}

/// Z on each listed physical wire.
pub fn physical_z(wires: &BTreeSet<usize>) -> Diagram {
    z_pi_layer(PHYSICAL, &wires.iter().map(|w| w - 1).collect::<Vec<_>>())
}

/// The bit string of `x` flipped on every wire of the supports of the set
/// logical bits. `logical` is given most significant (wire 1) first.
pub fn codeword_bits(logical: &[u8; LOGICAL]) -> [u8; PHYSICAL] {
    let mut bits = [0u8; PHYSICAL];
    for (j, s) in x_support() {
        if logical[j - 1] == 1 {
            for p in s {
                bits[p - 1] ^= 1;
            }
        }
    }
    bits
}

fn index_of(bits: &[u8]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize)
}

/// `(|c⟩ + |c̄⟩)/√2` for a codeword string `c`.
pub fn codeword_state(bits: &[u8; PHYSICAL]) -> ExactMatrix {
    let mut v = ExactMatrix::zeros(1 << PHYSICAL, 1);
    let flipped: Vec<u8> = bits.iter().map(|b| b ^ 1).collect();
    v.set(index_of(bits), 0, ExactScalar::inv_sqrt2_pow(1));
    v.set(index_of(&flipped), 0, ExactScalar::inv_sqrt2_pow(1));
    v
}

pub(crate) fn parse_bits<const N: usize>(s: &str) -> [u8; N] {
    let mut out = [0u8; N];
    for (o, c) in out.iter_mut().zip(s.bytes()) {
        *o = c - b'0';
    }
    out
}

/// Every diagram of the code, by fixture name.
pub fn fixtures() -> Result<BTreeMap<&'static str, Diagram>> {
    let cnot_p = super::derive_cnot_physical(2, 3)?;
    Ok(BTreeMap::from([
        ("enc", build_enc()),
        ("dec", build_dec()),
        ("cnot-l", build_cnot_logical(2, 3)?),
        ("cnot-p", cnot_p.diagram),
        ("ccz-l", build_ccz_logical()),
        ("ccz-p", build_ccz_physical()),
    ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::iso_equal;
    use crate::semantics::{evaluate_exact, product_state, proportional_equal};

    #[test]
    fn ghz_column() {
        let m = evaluate_exact(&build_enc()).unwrap();
        let col = m.matmul(&product_state("000").unwrap()).unwrap();
        let want = codeword_state(&[0; 8]);
        assert!(proportional_equal(&col, &want).unwrap().proportional);
    }

    #[test]
    fn decoder_is_adjoint() {
        assert!(iso_equal(&build_dec(), &build_enc().adjoint()));
        assert!(iso_equal(&build_dec().adjoint(), &build_enc()));
    }

    #[test]
    fn ccz_logical_is_diagonal_sign() {
        let m = evaluate_exact(&build_ccz_logical()).unwrap();
        let mut want = ExactMatrix::identity(8);
        want.set(7, 7, -ExactScalar::ONE);
        assert!(proportional_equal(&m, &want).unwrap().proportional);
        let v = m.matmul(&product_state("110").unwrap()).unwrap();
        assert_eq!(v.get(6, 0), m.get(0, 0));
    }

    #[test]
    fn cnot_truth_table() {
        let m = evaluate_exact(&build_cnot_logical(2, 3).unwrap()).unwrap();
        let v = m.matmul(&product_state("011").unwrap()).unwrap();
        let w = product_state("010").unwrap();
        assert!(proportional_equal(&v, &w).unwrap().proportional);
        assert!(build_cnot_logical(2, 2).is_err());
        assert!(build_cnot_logical(0, 1).is_err());
    }
}
