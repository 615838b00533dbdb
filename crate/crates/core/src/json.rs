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

//! The diagram JSON format:
//! `{"inputs":[..],"outputs":[..],"vertices":{"id":{"kind":"Z","phase":"1/4"}},"edges":[[a,b],..]}`.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, PhaseLabel, VertexId, VertexKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub inputs: Vec<VertexId>,
    pub outputs: Vec<VertexId>,
    pub vertices: BTreeMap<VertexId, VertexJson>,
    pub edges: Vec<[VertexId; 2]>,
}

impl<P> Graph<P>
where
    P: PhaseLabel + FromStr<Err = Error>,
{
    pub fn to_json(&self) -> GraphJson {
        let vertices = self
            .vertices()
            .map(|(v, k)| {
                let phase = k
                    .phase()
                    .filter(|p| **p != P::zero())
                    .map(|p| p.to_string());
                (
                    v,
                    VertexJson {
                        kind: k.type_letter().to_string(),
                        phase,
                    },
                )
            })
            .collect();
        GraphJson {
            inputs: self.inputs().to_vec(),
            outputs: self.outputs().to_vec(),
            vertices,
            edges: self.edges().map(|(_, a, b)| [a, b]).collect(),
        }
    }

    pub fn from_json(json: &GraphJson) -> Result<Self> {
        let mut g = Graph::new();
        for (&id, v) in &json.vertices {
            let phase = || -> Result<P> {
                match &v.phase {
                    Some(s) => s.parse(),
                    None => Ok(P::zero()),
                }
            };
            let kind = match v.kind.as_str() {
                "Z" => VertexKind::Z(phase()?),
                "X" => VertexKind::X(phase()?),
                "H" => VertexKind::H,
                "B" => VertexKind::Boundary,
                other => return Err(Error::Parse(format!("unknown vertex kind `{other}`"))),
            };
            if matches!(kind, VertexKind::H | VertexKind::Boundary) && v.phase.is_some() {
                return Err(Error::Parse(format!(
                    "vertex {id} of kind {} cannot carry a phase",
                    v.kind
                )));
            }
            g.add_vertex_with_id(id, kind)?;
        }
        for &[a, b] in &json.edges {
            if !g.contains_vertex(a) || !g.contains_vertex(b) {
                return Err(Error::Parse(format!(
                    "edge [{a},{b}] references an undeclared vertex"
                )));
            }
            g.add_edge(a, b);
        }
        g.set_inputs(json.inputs.clone());
        g.set_outputs(json.outputs.clone());
        g.validate()?;
        Ok(g)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("diagram json serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let json: GraphJson = serde_json::from_str(s)?;
        Self::from_json(&json)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::iso_equal;
    use crate::graph::Diagram;
    use crate::phase::{Phase, PhaseExpr};

    #[test]
    fn parses_documented_example() {
        let src = r#"{"inputs":[0],"outputs":[2],
            "vertices":{"0":{"kind":"B"},"1":{"kind":"Z","phase":"1/4"},"2":{"kind":"B"}},
            "edges":[[0,1],[1,2],[1,1]]}"#;
        let d = Diagram::from_json_str(src).unwrap();
        assert_eq!(d.kind(1), Some(&VertexKind::Z(Phase::new(1, 4))));
        assert_eq!(d.edge_multiplicity(1, 1), 1);
        let back = Diagram::from_json_str(&d.to_json_string()).unwrap();
        assert!(iso_equal(&d, &back));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Diagram::from_json_str("{").is_err());
        let bad_kind = r#"{"inputs":[],"outputs":[],"vertices":{"0":{"kind":"Q"}},"edges":[]}"#;
        assert!(Diagram::from_json_str(bad_kind).is_err());
        let dangling =
            r#"{"inputs":[],"outputs":[],"vertices":{"0":{"kind":"Z"}},"edges":[[0,5]]}"#;
        assert!(Diagram::from_json_str(dangling).is_err());
        let bad_boundary =
            r#"{"inputs":[0],"outputs":[],"vertices":{"0":{"kind":"B"}},"edges":[]}"#;
        assert!(Diagram::from_json_str(bad_boundary).is_err());
    }

    #[test]
    fn pattern_phases_round_trip() {
        let src = r#"{"inputs":[],"outputs":[],"vertices":{"0":{"kind":"Z","phase":"a+b"},"1":{"kind":"X","phase":"-a+1/2"}},"edges":[[0,1]]}"#;
        let p = Graph::<PhaseExpr>::from_json_str(src).unwrap();
        let back = Graph::<PhaseExpr>::from_json_str(&p.to_json_string()).unwrap();
        assert_eq!(p, back);
    }
}
