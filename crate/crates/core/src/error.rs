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

use thiserror::Error;

use crate::simproc::ProofTrace;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arity mismatch: first diagram has {outputs} outputs, second has {inputs} inputs")]
    ArityMismatch { outputs: usize, inputs: usize },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error(
        "contraction would create a tensor with {entries} entries (cap {cap}) over cut [{cut}]"
    )]
    Resource {
        cut: String,
        entries: usize,
        cap: usize,
    },

    #[error("phase {0} is not a multiple of π/4; the exact backend cannot represent it")]
    InexactPhase(String),

    #[error("invalid rule `{rule}`: {reason}")]
    InvalidRule { rule: String, reason: String },

    #[error("repetition count {count} for box {index} of rule `{rule}` exceeds its bound {max}")]
    BoxCount {
        rule: String,
        index: usize,
        count: usize,
        max: usize,
    },

    #[error("stale match: {0}")]
    StaleMatch(String),

    #[error("unknown rule `{0}`")]
    UnknownRule(String),

    #[error("unknown simproc `{0}`")]
    UnknownSimproc(String),

    #[error("step budget of {budget} exceeded after {} steps", trace.steps.len())]
    StepBudget {
        budget: usize,
        trace: Box<ProofTrace>,
    },

    #[error("digest mismatch at step {step}: expected {expected}, found {found}")]
    DigestMismatch {
        step: usize,
        expected: String,
        found: String,
    },

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("invalid basis input: {0}")]
    Basis(String),

    #[error("unknown obligation `{0}`")]
    UnknownObligation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Resource-type failures (caps, budgets) as opposed to malformed input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource { .. } | Error::StepBudget { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
