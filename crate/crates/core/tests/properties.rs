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

//! Algebraic laws of the interpretation and determinism of rewriting,
//! checked on random small diagrams.

use proptest::prelude::*;
use zxcc_core::semantics::{evaluate_with, ContractionOrder, EvalOptions};
use zxcc_core::simproc::{certify, replay_all, DEFAULT_STEP_BUDGET};
use zxcc_core::{
    digest, evaluate_exact, evaluate_float, iso_equal, replay, run, Diagram, ExactMatrix,
    ExactScalar, Phase, RuleLibrary, Simproc, VertexKind,
};

const MAX_INTERIOR: usize = 8;

/// Interior spider: colour and phase in quarter turns.
type SpiderShape = (bool, i64);
/// Interior edge between spider indices, optionally through an H box.
type EdgeShape = (usize, usize, bool);

#[derive(Clone, Debug)]
struct Shape {
    spiders: Vec<SpiderShape>,
    edges: Vec<EdgeShape>,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
}

impl Shape {
    fn build(&self) -> Diagram {
        let mut d = Diagram::new();
        let ids: Vec<_> = self
            .spiders
            .iter()
            .map(|&(green, k)| {
                let p = Phase::quarter(k);
                d.add_vertex(if green {
                    VertexKind::Z(p)
                } else {
                    VertexKind::X(p)
                })
            })
            .collect();
        let n = ids.len();
        for &(a, b, h) in &self.edges {
            let (a, b) = (ids[a % n], ids[b % n]);
            if h && d.num_interior() < MAX_INTERIOR {
                let m = d.add_h();
                d.add_edge(a, m);
                d.add_edge(m, b);
            } else {
                d.add_edge(a, b);
            }
        }
        for &s in &self.inputs {
            let i = d.add_input();
            d.add_edge(i, ids[s % n]);
        }
        for &s in &self.outputs {
            let o = d.add_output();
            d.add_edge(ids[s % n], o);
        }
        d
    }
}

fn shape(inputs: usize, outputs: usize) -> impl Strategy<Value = Shape> {
    (1usize..=MAX_INTERIOR)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec((any::<bool>(), 0i64..8), n),
                prop::collection::vec((0..n, 0..n, prop::bool::weighted(0.25)), 0..=2 * n),
                prop::collection::vec(0..n, inputs),
                prop::collection::vec(0..n, outputs),
            )
        })
        .prop_map(|(spiders, edges, inputs, outputs)| Shape {
            spiders,
            edges,
            inputs,
            outputs,
        })
}

fn diagram() -> impl Strategy<Value = Diagram> {
    (0usize..=2, 0usize..=2)
        .prop_flat_map(|(i, o)| shape(i, o))
        .prop_map(|s| s.build())
}

fn phase_free() -> impl Strategy<Value = Diagram> {
    (0usize..=2, 0usize..=2)
        .prop_flat_map(|(i, o)| shape(i, o))
        .prop_map(|mut s| {
            s.spiders.iter_mut().for_each(|sp| sp.1 = 0);
            s.edges.iter_mut().for_each(|e| e.2 = false);
            s.build()
        })
}

/// Three diagrams composable as `a ; b ; c`.
fn chain() -> impl Strategy<Value = (Diagram, Diagram, Diagram)> {
    (0usize..=2, 0usize..=2, 0usize..=2, 0usize..=2)
        .prop_flat_map(|(i, m, n, o)| (shape(i, m), shape(m, n), shape(n, o)))
        .prop_map(|(a, b, c)| (a.build(), b.build(), c.build()))
}

/// Two diagrams whose arities line up for `a ; b`, at most 4 wires each.
fn composable() -> impl Strategy<Value = (Diagram, Diagram)> {
    (0usize..=2, 0usize..=2, 0usize..=2)
        .prop_flat_map(|(i, m, o)| (shape(i, m), shape(m, o)))
        .prop_map(|(a, b)| (a.build(), b.build()))
}

fn exact(d: &Diagram) -> ExactMatrix {
    evaluate_exact(d).expect("small diagrams evaluate")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_is_matrix_product((a, b) in composable()) {
        let ab = a.compose(&b).unwrap();
        prop_assert!(ab.validate().is_ok());
        prop_assert_eq!(exact(&ab), exact(&b).matmul(&exact(&a)).unwrap());
    }

    #[test]
    fn composition_is_associative((a, b, c) in chain()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert!(left.validate().is_ok());
        prop_assert!(iso_equal(&left, &right));
    }

    #[test]
    fn adjoint_reverses_composition((a, b) in composable()) {
        let lhs = a.compose(&b).unwrap().adjoint();
        let rhs = b.adjoint().compose(&a.adjoint()).unwrap();
        prop_assert!(rhs.validate().is_ok());
        prop_assert!(iso_equal(&lhs, &rhs));
        prop_assert!(iso_equal(&a.adjoint().adjoint(), &a));
    }

    #[test]
    fn tensor_is_kronecker_product(a in diagram(), b in diagram()) {
        prop_assert!(a.tensor(&b).validate().is_ok());
        prop_assert_eq!(exact(&a.tensor(&b)), exact(&a).kron(&exact(&b)));
    }

    #[test]
    fn adjoint_is_conjugate_transpose(d in diagram()) {
        prop_assert_eq!(exact(&d.adjoint()), exact(&d).adjoint());
    }

    #[test]
    fn identity_is_neutral(d in diagram()) {
        let (i, o) = d.arity();
        let framed = Diagram::identity(i).compose(&d).unwrap().compose(&Diagram::identity(o)).unwrap();
        prop_assert_eq!(exact(&framed), exact(&d));
    }

    #[test]
    fn contraction_order_is_irrelevant(d in diagram(), seed in any::<u64>()) {
        let opts = EvalOptions { order: ContractionOrder::Shuffled(seed), ..EvalOptions::default() };
        prop_assert_eq!(evaluate_with::<ExactScalar>(&d, &opts).unwrap(), exact(&d));
    }

    #[test]
    fn exact_and_float_agree(d in diagram()) {
        let e = exact(&d).to_float();
        let f = evaluate_float(&d).unwrap();
        let scale = e.data().iter().map(|z| z.norm()).fold(1.0, f64::max);
        prop_assert!(e.max_abs_diff(&f) <= 1e-9 * scale);
    }

    #[test]
    fn json_round_trips(d in diagram()) {
        let back = Diagram::from_json_str(&d.to_json_string()).unwrap();
        prop_assert!(iso_equal(&d, &back));
        prop_assert_eq!(digest(&d), digest(&back));
        prop_assert_eq!(back.to_json_string(), d.to_json_string());
    }

    #[test]
    fn matching_is_deterministic(d in diagram()) {
        let copy = Diagram::from_json_str(&d.to_json_string()).unwrap();
        for family in RuleLibrary::builtin().families() {
            let rule = family.base();
            let first = zxcc_core::rewrite::find_matches(rule, &d);
            prop_assert_eq!(&first, &zxcc_core::rewrite::find_matches(rule, &copy));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn runs_are_deterministic_and_certified(d in diagram(), which in 0usize..4) {
        let name = Simproc::builtin_names()[which];
        let s = Simproc::builtin(name).unwrap();
        let Ok((out, t)) = run(&s, &d, 200) else {
            // Budget overruns are allowed; they must be reproducible too.
            prop_assert!(run(&s, &d, 200).is_err());
            return Ok(());
        };
        let (out2, t2) = run(&s, &d, 200).unwrap();
        prop_assert_eq!(t.to_json_string(), t2.to_json_string());
        prop_assert!(iso_equal(&out, &out2));
        let report = certify(&t, &d).unwrap();
        prop_assert!(report.passed(), "{name}: {report:?}");
        prop_assert_eq!(digest(&replay(&t, &d).unwrap()), digest(&out));
    }

    #[test]
    fn phase_free_reduction_strictly_shrinks(d in phase_free()) {
        let s = Simproc::builtin("reduce_phase_free").unwrap();
        let (_, t) = run(&s, &d, DEFAULT_STEP_BUDGET).unwrap();
        let steps = replay_all(RuleLibrary::builtin(), &t, &d).unwrap();
        let size = |g: &Diagram| (g.num_interior(), g.num_edges());
        for (step, pair) in t.steps.iter().zip(steps.windows(2)) {
            prop_assert!(pair[1].validate().is_ok());
            // copy and hopf may add vertices but always drop edges
            let shrinks = if step.rule.ends_with("_copy") || step.rule == "hopf" {
                pair[1].num_edges() < pair[0].num_edges()
            } else {
                size(&pair[1]) < size(&pair[0])
            };
            prop_assert!(shrinks, "{} on {}", step.rule, pair[0].to_json_string());
        }
    }
}
