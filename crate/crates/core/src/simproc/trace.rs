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

//! Proof traces: the sequence of rule applications between two diagrams.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::Diagram;
use crate::json::GraphJson;
use crate::rewrite::Match;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Fwd,
    Rev,
}

impl Direction {
    pub fn is_rev(self) -> bool {
        self == Direction::Rev
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: String,
    pub dir: Direction,
    #[serde(rename = "match")]
    pub matched: Match,
    /// Digest of the diagram after this step.
    pub post: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofTrace {
    /// Digest of the starting diagram.
    pub initial: String,
    pub steps: Vec<TraceStep>,
    #[serde(rename = "final", default, skip_serializing_if = "Option::is_none")]
    pub final_diagram: Option<GraphJson>,
}

impl ProofTrace {
    pub fn new(initial: String) -> ProofTrace {
        ProofTrace {
            initial,
            steps: Vec::new(),
            final_diagram: None,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn final_diagram(&self) -> Option<Result<Diagram>> {
        self.final_diagram.as_ref().map(Diagram::from_json)
    }

    pub(crate) fn close(&mut self, d: &Diagram) {
        self.final_diagram = Some(d.to_json());
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json_str(s: &str) -> Result<ProofTrace> {
        Ok(serde_json::from_str(s)?)
    }
}
