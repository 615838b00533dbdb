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

//! Simplification procedures: strategies, traces, replay and certification.

mod certify;
mod engine;
mod pivot;
mod proof;
mod strategy;
mod trace;

pub use certify::{
    certify, certify_sequence, certify_with, CertificationReport, StepCertificate, StepFailure,
    CERTIFY_MAX_WIRES,
};
pub use engine::{replay, replay_all, run, run_with, DEFAULT_STEP_BUDGET};
pub use pivot::{pivot, pivot_sites, reduce_with_pivots, PIVOT_RULE};
pub use proof::{append_reversed, prove_by_common_reduct};
pub use strategy::{dual_rule_name, reduction_before_pi, Simproc};
pub use trace::{Direction, ProofTrace, TraceStep};
