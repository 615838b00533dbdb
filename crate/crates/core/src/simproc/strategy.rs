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

//! Strategy trees over named rules.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Simproc {
    /// Apply the first match of a rule once, if there is one.
    Rewrite(String),
    /// Apply a rule until it no longer matches.
    Reduce(String),
    /// Cycle through a named rule set in order, one application per rule
    /// per cycle, until a whole cycle changes nothing.
    ReduceAll {
        name: String,
        rules: Vec<String>,
    },
    /// Repeat the body until one pass makes no step.
    Loop(Box<Simproc>),
    Seq(Vec<Simproc>),
}

/// The rule set `reduction_before_pi` used when pushing Paulis.
pub fn reduction_before_pi() -> Vec<String> {
    [
        "red_copy",
        "red_sp",
        "green_sp",
        "hopf",
        "red_scalar",
        "green_scalar",
        "green_id",
        "red_id",
        "red_loop",
        "green_loop",
    ]
    .map(String::from)
    .to_vec()
}

fn phase_free_set(bialgebra: bool) -> Vec<String> {
    let mut rules: Vec<String> = [
        "green_sp",
        "red_sp",
        "green_id",
        "red_id",
        "green_elim",
        "red_elim",
        "green_loop",
        "red_loop",
        "green_scalar",
        "red_scalar",
        "hopf",
        "green_copy",
        "red_copy",
    ]
    .map(String::from)
    .to_vec();
    if bialgebra {
        rules.push("gen_bialg_simp".into());
    }
    rules
}

/// Name of the colour-swapped counterpart of a shipped rule.
pub fn dual_rule_name(name: &str) -> String {
    match name {
        "euler" => "euler2".into(),
        "euler2" => "euler".into(),
        "green_to_red" => "red_to_green".into(),
        "red_to_green" => "green_to_red".into(),
        _ => {
            if let Some(rest) = name.strip_prefix("green_") {
                format!("red_{rest}")
            } else if let Some(rest) = name.strip_prefix("red_") {
                format!("green_{rest}")
            } else {
                name.to_string()
            }
        }
    }
}

impl Simproc {
    pub fn rewrite(rule: &str) -> Simproc {
        Simproc::Rewrite(rule.into())
    }

    pub fn reduce(rule: &str) -> Simproc {
        Simproc::Reduce(rule.into())
    }

    pub fn reduce_all(name: &str, rules: Vec<String>) -> Simproc {
        Simproc::ReduceAll {
            name: name.into(),
            rules,
        }
    }

    pub fn looped(body: Simproc) -> Simproc {
        Simproc::Loop(Box::new(body))
    }

    /// The shipped strategies.
    pub fn builtin(name: &str) -> Result<Simproc> {
        Ok(match name {
            "push_pauli_x" => Simproc::looped(Simproc::Seq(vec![
                Simproc::reduce_all("reduction_before_pi", reduction_before_pi()),
                Simproc::rewrite("red_pi_lemma"),
                Simproc::reduce("red_sp"),
            ])),
            "push_pauli_z" => Simproc::builtin("push_pauli_x")?.color_swapped(),
            "reduce_phase_free" => {
                Simproc::looped(Simproc::reduce_all("phase_free", phase_free_set(true)))
            }
            "basic_simp" => Simproc::reduce_all("basic", phase_free_set(false)),
            _ => return Err(Error::UnknownSimproc(name.to_string())),
        })
    }

    pub fn builtin_names() -> [&'static str; 4] {
        [
            "basic_simp",
            "reduce_phase_free",
            "push_pauli_x",
            "push_pauli_z",
        ]
    }

    /// The same tree with every rule replaced by its colour dual.
    pub fn color_swapped(&self) -> Simproc {
        match self {
            Simproc::Rewrite(r) => Simproc::Rewrite(dual_rule_name(r)),
            Simproc::Reduce(r) => Simproc::Reduce(dual_rule_name(r)),
            Simproc::ReduceAll { name, rules } => Simproc::ReduceAll {
                name: name.clone(),
                rules: rules.iter().map(|r| dual_rule_name(r)).collect(),
            },
            Simproc::Loop(b) => Simproc::looped(b.color_swapped()),
            Simproc::Seq(v) => Simproc::Seq(v.iter().map(Simproc::color_swapped).collect()),
        }
    }

    /// Every rule name the tree refers to.
    pub fn rules(&self) -> Vec<&str> {
        match self {
            Simproc::Rewrite(r) | Simproc::Reduce(r) => vec![r.as_str()],
            Simproc::ReduceAll { rules, .. } => rules.iter().map(String::as_str).collect(),
            Simproc::Loop(b) => b.rules(),
            Simproc::Seq(v) => v.iter().flat_map(Simproc::rules).collect(),
        }
    }
}

impl fmt::Display for Simproc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Simproc::Rewrite(r) => write!(f, "REWRITE {r}"),
            Simproc::Reduce(r) => write!(f, "REDUCE {r}"),
            Simproc::ReduceAll { name, .. } => write!(f, "REDUCE_ALL {name}"),
            Simproc::Loop(b) => write!(f, "LOOP ( {b} )"),
            Simproc::Seq(v) => {
                for (i, s) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ++ ")?;
                    }
                    write!(f, "{s}")?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn push_pauli_x_shape() {
        let s = Simproc::builtin("push_pauli_x").unwrap();
        assert_eq!(
            s.to_string(),
            "LOOP ( REDUCE_ALL reduction_before_pi ++ REWRITE red_pi_lemma ++ REDUCE red_sp )"
        );
        let Simproc::Loop(body) = &s else { panic!() };
        let Simproc::Seq(parts) = body.as_ref() else {
            panic!()
        };
        assert_eq!(
            parts[0],
            Simproc::reduce_all("reduction_before_pi", reduction_before_pi())
        );
    }

    #[test]
    fn push_pauli_z_is_the_dual() {
        let z = Simproc::builtin("push_pauli_z").unwrap();
        assert_eq!(z.color_swapped(), Simproc::builtin("push_pauli_x").unwrap());
        assert!(z.rules().contains(&"green_pi_lemma"));
        assert!(z.rules().contains(&"green_copy") && !z.rules().contains(&"red_copy"));
    }

    #[test]
    fn shipped_strategies_avoid_the_general_bialgebra() {
        for n in Simproc::builtin_names() {
            assert!(!Simproc::builtin(n).unwrap().rules().contains(&"gen_bialg"));
        }
        assert!(matches!(
            Simproc::builtin("nope"),
            Err(Error::UnknownSimproc(_))
        ));
    }
}
