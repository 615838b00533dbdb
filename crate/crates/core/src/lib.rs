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

//! ZX-calculus diagrams with exact semantics, certifying rewriting and the
//! [[8,3,2]] colour code built on top of them.
//!
//! * [`graph`], [`json`], [`phase`]: open graphs of Z/X spiders and H boxes.
//! * [`semantics`], [`ring`], [`matrix`]: tensor contraction over
//!   Z[ω, 1/√2], with a floating-point fallback.
//! * [`canon`]: digests and boundary-respecting isomorphism.
//! * [`rewrite`]: rules with repetition boxes, matching, application and a
//!   soundness checker.
//! * [`simproc`]: strategies, traces, replay and certification.
//! * [`code`]: the colour code fixtures and their proof obligations.

pub mod builders;
pub mod canon;
pub mod code;
pub mod error;
pub mod exec;
pub mod graph;
pub mod json;
pub mod matrix;
pub mod phase;
pub mod rewrite;
pub mod ring;
pub mod semantics;
pub mod simproc;

pub use canon::{digest, iso_equal};
pub use error::{Error, Result};
pub use exec::Exec;
pub use graph::{Diagram, Pattern, VertexId, VertexKind};
pub use matrix::{ExactMatrix, FloatMatrix};
pub use phase::{Phase, PhaseExpr};
pub use rewrite::{RewriteRule, RuleLibrary};
pub use ring::ExactScalar;
pub use semantics::{evaluate, evaluate_exact, evaluate_float, proportional_equal};
pub use simproc::{certify, replay, run, ProofTrace, Simproc};
