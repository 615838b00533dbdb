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

//! The standard interpretation of diagrams as linear maps, computed by
//! tensor contraction, and proportional equality of the results.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{Diagram, VertexKind};
use crate::matrix::{ExactMatrix, FloatMatrix, Matrix, Scalar};
use crate::phase::Phase;
use crate::ring::ExactScalar;

/// Largest intermediate tensor the contraction may create.
pub const DEFAULT_ENTRY_CAP: usize = 1 << 22;

/// Tensors smaller than this are filled sequentially whatever the mode.
const PARALLEL_MIN_ENTRIES: usize = 1 << 12;

fn exec_for(exec: Exec, entries: usize) -> Exec {
    if entries < PARALLEL_MIN_ENTRIES {
        Exec::Sequential
    } else {
        exec
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContractionOrder {
    /// Always contract the pair with the smallest result.
    Greedy,
    /// Pairs picked pseudo-randomly from the given seed.
    Shuffled(u64),
}

#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    pub entry_cap: usize,
    pub exec: Exec,
    pub order: ContractionOrder,
}

impl EvalOptions {
    pub fn with_exec(exec: Exec) -> EvalOptions {
        EvalOptions {
            exec,
            ..EvalOptions::default()
        }
    }
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions {
            entry_cap: DEFAULT_ENTRY_CAP,
            exec: Exec::default(),
            order: ContractionOrder::Greedy,
        }
    }
}

/// The value of a generator on the given leg bits.
fn generator_entry<S: Scalar>(kind: &VertexKind<Phase>, legs: &[u8]) -> Result<S> {
    match kind {
        VertexKind::Z(p) => {
            let e = S::phase(*p).ok_or_else(|| Error::InexactPhase(p.to_string()))?;
            if legs.is_empty() {
                Ok(S::one().add(e))
            } else if legs.iter().all(|&b| b == 0) {
                Ok(S::one())
            } else if legs.iter().all(|&b| b == 1) {
                Ok(e)
            } else {
                Ok(S::zero())
            }
        }
        VertexKind::X(p) => {
            let e = S::phase(*p).ok_or_else(|| Error::InexactPhase(p.to_string()))?;
            let odd = legs.iter().filter(|&&b| b == 1).count() % 2 == 1;
            let mut v = if odd {
                S::one().add(e.neg())
            } else {
                S::one().add(e)
            };
            for _ in 0..legs.len() {
                v = v.mul(S::inv_sqrt2());
            }
            Ok(v)
        }
        VertexKind::H => {
            if legs.len() != 2 {
                return Err(Error::InvalidDiagram(format!(
                    "H vertex with {} legs",
                    legs.len()
                )));
            }
            let v = S::inv_sqrt2();
            Ok(if legs[0] == 1 && legs[1] == 1 {
                v.neg()
            } else {
                v
            })
        }
        VertexKind::Boundary => Err(Error::InvalidDiagram("boundary has no generator".into())),
    }
}

/// Matrix of a single generator with `inputs` input legs and `outputs`
/// output legs: `2^outputs × 2^inputs`.
pub fn generator_matrix<S: Scalar>(
    kind: &VertexKind<Phase>,
    inputs: usize,
    outputs: usize,
) -> Result<Matrix<S>> {
    if matches!(kind, VertexKind::H) && (inputs, outputs) != (1, 1) {
        return Err(Error::InvalidDiagram(format!(
            "H generator must be 1→1, got {inputs}→{outputs}"
        )));
    }
    let (rows, cols) = (1usize << outputs, 1usize << inputs);
    let mut m = Matrix::zeros(rows, cols);
    let mut legs = vec![0u8; inputs + outputs];
    for r in 0..rows {
        for c in 0..cols {
            for (i, leg) in legs.iter_mut().take(outputs).enumerate() {
                *leg = ((r >> (outputs - 1 - i)) & 1) as u8;
            }
            for j in 0..inputs {
                legs[outputs + j] = ((c >> (inputs - 1 - j)) & 1) as u8;
            }
            m.set(r, c, generator_entry(kind, &legs)?);
        }
    }
    Ok(m)
}

/// A dense tensor; `labels[0]` is the most significant bit of the index.
#[derive(Clone, Debug)]
struct Tensor<S> {
    labels: Vec<usize>,
    data: Vec<S>,
}

/// The tensor of one vertex over its distinct edge labels. A label seen
/// twice is a self-loop and is traced out here.
fn vertex_tensor<S: Scalar>(kind: &VertexKind<Phase>, leg_labels: &[usize]) -> Result<Tensor<S>> {
    let distinct: BTreeSet<usize> = leg_labels.iter().copied().collect();
    let (labels, loops): (Vec<usize>, Vec<usize>) = distinct
        .into_iter()
        .partition(|l| leg_labels.iter().filter(|x| *x == l).count() == 1);
    let n = labels.len();
    let mut legs = vec![0u8; leg_labels.len()];
    let mut data = Vec::with_capacity(1 << n);
    for idx in 0..(1usize << n) {
        let mut acc = S::zero();
        for t in 0..(1usize << loops.len()) {
            for (leg, l) in leg_labels.iter().enumerate() {
                legs[leg] = match labels.iter().position(|x| x == l) {
                    Some(p) => ((idx >> (n - 1 - p)) & 1) as u8,
                    None => {
                        let p = loops.iter().position(|x| x == l).unwrap();
                        ((t >> p) & 1) as u8
                    }
                };
            }
            acc = acc.add(generator_entry(kind, &legs)?);
        }
        data.push(acc);
    }
    Ok(Tensor { labels, data })
}

fn contract_pair<S: Scalar>(a: &Tensor<S>, b: &Tensor<S>, exec: Exec) -> Tensor<S> {
    let shared: Vec<usize> = a
        .labels
        .iter()
        .copied()
        .filter(|l| b.labels.contains(l))
        .collect();
    let result: Vec<usize> = a
        .labels
        .iter()
        .chain(&b.labels)
        .copied()
        .filter(|l| !shared.contains(l))
        .collect();
    let weight = |labels: &[usize], l: usize| -> usize {
        labels
            .iter()
            .position(|&x| x == l)
            .map(|p| 1usize << (labels.len() - 1 - p))
            .unwrap_or(0)
    };
    let shared_offsets: Vec<(usize, usize)> = (0..(1usize << shared.len()))
        .map(|s| {
            let mut oa = 0;
            let mut ob = 0;
            for (k, &l) in shared.iter().enumerate() {
                if (s >> (shared.len() - 1 - k)) & 1 == 1 {
                    oa += weight(&a.labels, l);
                    ob += weight(&b.labels, l);
                }
            }
            (oa, ob)
        })
        .collect();
    let result_weights: Vec<(usize, usize)> = result
        .iter()
        .map(|&l| (weight(&a.labels, l), weight(&b.labels, l)))
        .collect();
    let n = result.len();
    let data = exec_for(exec, 1 << n).map_range(1usize << n, |r| {
        let mut ba = 0;
        let mut bb = 0;
        for (k, &(wa, wb)) in result_weights.iter().enumerate() {
            if (r >> (n - 1 - k)) & 1 == 1 {
                ba += wa;
                bb += wb;
            }
        }
        let mut acc = S::zero();
        for &(oa, ob) in &shared_offsets {
            let x = a.data[ba + oa];
            if x.is_zero() {
                continue;
            }
            let y = b.data[bb + ob];
            if y.is_zero() {
                continue;
            }
            acc = acc.add(x.mul(y));
        }
        acc
    });
    Tensor {
        labels: result,
        data,
    }
}

fn result_labels(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|l| !b.contains(l)).count() + b.iter().filter(|l| !a.contains(l)).count()
}

/// Deterministic splitmix64 stream for shuffled contraction orders.
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// Contracts the diagram's tensor network into a `2^outputs × 2^inputs`
/// matrix over the scalar type `S`.
pub fn evaluate_with<S: Scalar>(d: &Diagram, opts: &EvalOptions) -> Result<Matrix<S>> {
    d.validate()?;
    // Every edge is a wire label; a boundary's open index is the label of
    // its single edge.
    let mut tensors: Vec<Tensor<S>> = Vec::new();
    for (v, kind) in d.vertices() {
        if kind.is_boundary() {
            continue;
        }
        let legs: Vec<usize> = d.incident(v).to_vec();
        let distinct = legs.iter().collect::<BTreeSet<_>>().len();
        if distinct >= 63 || (1usize << distinct) > opts.entry_cap {
            return Err(Error::Resource {
                cut: format!("legs of vertex {v}"),
                entries: 1usize.checked_shl(distinct as u32).unwrap_or(usize::MAX),
                cap: opts.entry_cap,
            });
        }
        tensors.push(vertex_tensor(kind, &legs)?);
    }
    let mut rng = match opts.order {
        ContractionOrder::Shuffled(seed) => Some(SplitMix(seed)),
        ContractionOrder::Greedy => None,
    };
    while tensors.len() > 1 {
        let (i, j) = match rng.as_mut() {
            Some(rng) => {
                let n = tensors.len() as u64;
                let i = (rng.next() % n) as usize;
                let mut j = (rng.next() % (n - 1)) as usize;
                if j >= i {
                    j += 1;
                }
                (i.min(j), i.max(j))
            }
            None => {
                let mut best = (usize::MAX, 0, 0);
                for i in 0..tensors.len() {
                    for j in (i + 1)..tensors.len() {
                        let size = result_labels(&tensors[i].labels, &tensors[j].labels);
                        if size < best.0 {
                            best = (size, i, j);
                        }
                    }
                }
                (best.1, best.2)
            }
        };
        let size = result_labels(&tensors[i].labels, &tensors[j].labels);
        let entries = 1usize.checked_shl(size as u32).unwrap_or(usize::MAX);
        if size >= usize::BITS as usize || entries > opts.entry_cap {
            let cut: BTreeSet<usize> = tensors[i]
                .labels
                .iter()
                .chain(&tensors[j].labels)
                .copied()
                .filter(|l| !(tensors[i].labels.contains(l) && tensors[j].labels.contains(l)))
                .collect();
            return Err(Error::Resource {
                cut: cut
                    .iter()
                    .map(|e| format!("e{e}"))
                    .collect::<Vec<_>>()
                    .join(","),
                entries,
                cap: opts.entry_cap,
            });
        }
        let b = tensors.remove(j);
        let a = tensors.remove(i);
        tensors.push(contract_pair(&a, &b, opts.exec));
    }
    let network = tensors.pop().unwrap_or(Tensor {
        labels: Vec::new(),
        data: vec![S::one()],
    });

    let out_labels: Vec<usize> = d.outputs().iter().map(|&b| d.incident(b)[0]).collect();
    let in_labels: Vec<usize> = d.inputs().iter().map(|&b| d.incident(b)[0]).collect();
    let (m, n) = (out_labels.len(), in_labels.len());
    let rows = 1usize << m;
    let cols = 1usize << n;
    let k = network.labels.len();
    let label_pos: BTreeMap<usize, usize> = network
        .labels
        .iter()
        .enumerate()
        .map(|(i, &l)| (l, i))
        .collect();
    let data = exec_for(opts.exec, rows * cols).map_range(rows * cols, |idx| {
        let (r, c) = (idx / cols, idx % cols);
        let mut assigned: BTreeMap<usize, usize> = BTreeMap::new();
        let bits = out_labels
            .iter()
            .enumerate()
            .map(|(i, &l)| (l, (r >> (m - 1 - i)) & 1))
            .chain(
                in_labels
                    .iter()
                    .enumerate()
                    .map(|(j, &l)| (l, (c >> (n - 1 - j)) & 1)),
            );
        for (l, bit) in bits {
            if let Some(&prev) = assigned.get(&l) {
                if prev != bit {
                    return S::zero();
                }
            }
            assigned.insert(l, bit);
        }
        let mut t = 0usize;
        for (&l, &p) in &label_pos {
            if assigned[&l] == 1 {
                t |= 1 << (k - 1 - p);
            }
        }
        network.data[t]
    });
    Ok(Matrix::from_vec(rows, cols, data))
}

/// Exact interpretation; fails on phases off the π/4 grid.
pub fn evaluate_exact(d: &Diagram) -> Result<ExactMatrix> {
    evaluate_with(d, &EvalOptions::default())
}

/// Double-precision interpretation, valid for any phase.
pub fn evaluate_float(d: &Diagram) -> Result<FloatMatrix> {
    evaluate_with(d, &EvalOptions::default())
}

/// Result of [`evaluate`]: exact when all phases permit it.
#[derive(Clone, Debug, PartialEq)]
pub enum Evaluation {
    Exact(ExactMatrix),
    Approximate(FloatMatrix),
}

impl Evaluation {
    pub fn to_float(&self) -> FloatMatrix {
        match self {
            Evaluation::Exact(m) => m.to_float(),
            Evaluation::Approximate(m) => m.clone(),
        }
    }
}

/// Exact backend for Clifford+T phases, floating point otherwise.
pub fn evaluate(d: &Diagram) -> Result<Evaluation> {
    if d.is_clifford_t() {
        evaluate_exact(d).map(Evaluation::Exact)
    } else {
        evaluate_float(d).map(Evaluation::Approximate)
    }
}

/// Outcome of a proportionality test.
#[derive(Clone, Debug, PartialEq)]
pub struct Proportionality {
    pub proportional: bool,
    /// `z` with `a = z·b`, when it lies in the exact ring.
    pub witness: Option<ExactScalar>,
}

/// Decides whether `a = z·b` for some nonzero `z`.
pub fn proportional_equal(a: &ExactMatrix, b: &ExactMatrix) -> Result<Proportionality> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::Dimension(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let no = Proportionality {
        proportional: false,
        witness: None,
    };
    let (za, zb) = (a.is_zero(), b.is_zero());
    if za && zb {
        return Ok(Proportionality {
            proportional: true,
            witness: Some(ExactScalar::ONE),
        });
    }
    if za || zb {
        return Ok(no);
    }
    let p = b.pivot().unwrap();
    let (ap, bp) = (a.data()[p], b.data()[p]);
    if ap.is_zero() {
        return Ok(no);
    }
    let same = a
        .data()
        .iter()
        .zip(b.data())
        .all(|(&x, &y)| x * bp == y * ap);
    if !same {
        return Ok(no);
    }
    Ok(Proportionality {
        proportional: true,
        witness: ap.checked_div(&bp),
    })
}

/// Floating-point proportionality with an absolute tolerance on the
/// normalized cross-multiplied entries.
pub fn proportional_equal_float(a: &FloatMatrix, b: &FloatMatrix, tol: f64) -> Result<bool> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::Dimension("float matrices differ in shape".into()));
    }
    let norm = |m: &FloatMatrix| m.data().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let (na, nb) = (norm(a), norm(b));
    if na <= tol && nb <= tol {
        return Ok(true);
    }
    if na <= tol || nb <= tol {
        return Ok(false);
    }
    let p = b
        .data()
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .map(|(i, _)| i)
        .unwrap();
    let z: Complex64 = a.data()[p] / b.data()[p];
    Ok(a.data()
        .iter()
        .zip(b.data())
        .all(|(x, y)| (x - z * y).norm() <= tol * na.max(1.0)))
}

/// Exact single-qubit basis states: `0`, `1`, `+`, `-`.
pub fn basis_state(symbol: char) -> Result<ExactMatrix> {
    let h = ExactScalar::inv_sqrt2_pow(1);
    let v = match symbol {
        '0' => [ExactScalar::ONE, ExactScalar::ZERO],
        '1' => [ExactScalar::ZERO, ExactScalar::ONE],
        '+' => [h, h],
        '-' => [h, -h],
        other => return Err(Error::Basis(format!("unknown basis symbol `{other}`"))),
    };
    Ok(ExactMatrix::column(v.to_vec()))
}

/// The product state named by a string over `{0,1,+,-}`.
pub fn product_state(symbols: &str) -> Result<ExactMatrix> {
    let mut acc = ExactMatrix::identity(1);
    for c in symbols.chars() {
        acc = acc.kron(&basis_state(c)?);
    }
    Ok(acc)
}

/// `⟦d⟧` applied to the product state `symbols`, one symbol per input wire.
pub fn apply_to_basis(d: &Diagram, symbols: &str) -> Result<ExactMatrix> {
    let n = symbols.chars().count();
    if n != d.inputs().len() {
        return Err(Error::Basis(format!(
            "diagram has {} inputs but `{symbols}` names {n} wires",
            d.inputs().len()
        )));
    }
    evaluate_exact(d)?.matmul(&product_state(symbols)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(n: i64) -> ExactScalar {
        ExactScalar::integer(n)
    }

    #[test]
    fn z_unit_is_plus() {
        let m: ExactMatrix = generator_matrix(&VertexKind::Z(Phase::ZERO), 0, 1).unwrap();
        assert_eq!(m, ExactMatrix::column(vec![ex(1), ex(1)]));
    }

    #[test]
    fn x_pi_unit_is_one_ket() {
        let m: ExactMatrix = generator_matrix(&VertexKind::X(Phase::PI), 0, 1).unwrap();
        assert!(m.get(0, 0).is_zero());
        assert!(!m.get(1, 0).is_zero());
    }

    #[test]
    fn hadamard_exact() {
        let m: ExactMatrix = generator_matrix(&VertexKind::H, 1, 1).unwrap();
        let h = ExactScalar::inv_sqrt2_pow(1);
        assert_eq!(m, ExactMatrix::from_vec(2, 2, vec![h, h, h, -h]));
        assert!(generator_matrix::<ExactScalar>(&VertexKind::H, 2, 1).is_err());
    }

    #[test]
    fn identity_wires() {
        for n in 0..4 {
            let m = evaluate_exact(&Diagram::identity(n)).unwrap();
            assert_eq!(m, ExactMatrix::identity(1 << n));
        }
    }

    #[test]
    fn bare_wire_basis() {
        let col = apply_to_basis(&Diagram::identity(1), "1").unwrap();
        assert_eq!(col, ExactMatrix::column(vec![ex(0), ex(1)]));
        assert!(apply_to_basis(&Diagram::identity(1), "10").is_err());
    }

    #[test]
    fn proportionality_cases() {
        let m = ExactMatrix::from_vec(1, 2, vec![ex(1), ExactScalar::omega_pow(1)]);
        let two_m = m.scale(ex(2));
        let r = proportional_equal(&m, &two_m).unwrap();
        assert!(r.proportional);
        assert_eq!(r.witness, Some(ExactScalar::inv_sqrt2_pow(2)));
        let zero = ExactMatrix::zeros(1, 2);
        assert!(!proportional_equal(&m, &zero).unwrap().proportional);
        assert!(proportional_equal(&zero, &zero).unwrap().proportional);
        assert!(proportional_equal(&m, &ExactMatrix::zeros(2, 1)).is_err());
        let other = ExactMatrix::from_vec(1, 2, vec![ex(1), ex(1)]);
        assert!(!proportional_equal(&m, &other).unwrap().proportional);
    }

    #[test]
    fn resource_cap_reports_cut() {
        let d = Diagram::spider(VertexKind::Z(Phase::ZERO), 3, 3);
        let opts = EvalOptions {
            entry_cap: 4,
            ..EvalOptions::default()
        };
        let err = evaluate_with::<ExactScalar>(&d, &opts).unwrap_err();
        assert!(err.is_resource(), "{err}");
    }

    #[test]
    fn non_grid_phase_needs_float() {
        let d = Diagram::spider(VertexKind::Z(Phase::new(1, 3)), 1, 1);
        assert!(matches!(evaluate_exact(&d), Err(Error::InexactPhase(_))));
        assert!(matches!(evaluate(&d).unwrap(), Evaluation::Approximate(_)));
    }
}
