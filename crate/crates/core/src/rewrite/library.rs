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

//! The shipped rule set, and rule families that cache box instances.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::graph::{Diagram, Pattern, VertexId};
use crate::phase::{Phase, PhaseExpr};

use super::matching::{find_matches, Match};
use super::rule::{RewriteRule, RuleJson};

/// Box bound of the shipped variadic rules. Large enough for the widest
/// spider met in the code proofs (a fused pair of 8-legged spiders).
pub const LIBRARY_BOX_MAX: usize = 16;

fn ex(s: &str) -> PhaseExpr {
    s.parse().expect("library phase expressions parse")
}

fn zero() -> PhaseExpr {
    PhaseExpr::constant(Phase::ZERO)
}

fn pi() -> PhaseExpr {
    PhaseExpr::constant(Phase::PI)
}

fn half() -> PhaseExpr {
    PhaseExpr::constant(Phase::new(1, 2))
}

fn leg(g: &mut Pattern, v: VertexId) -> VertexId {
    let b = g.add_output();
    g.add_edge(v, b);
    b
}

fn rule(
    name: &str,
    lhs: Pattern,
    rhs: Pattern,
    map: &[(VertexId, VertexId)],
    boxes: Vec<(Vec<VertexId>, Vec<VertexId>)>,
) -> RewriteRule {
    let boxes = boxes
        .into_iter()
        .map(|(l, r)| (l, r, LIBRARY_BOX_MAX))
        .collect();
    RewriteRule::new(name, lhs, rhs, map, boxes).expect("library rules are well formed")
}

/// Two adjacent Z spiders fuse, adding phases.
pub fn green_sp() -> RewriteRule {
    let mut l = Pattern::new();
    let u = l.add_z(ex("a"));
    let v = l.add_z(ex("b"));
    l.add_edge(u, v);
    let (lu, lv) = (leg(&mut l, u), leg(&mut l, v));
    let mut r = Pattern::new();
    let w = r.add_z(ex("a+b"));
    let (ru, rv) = (leg(&mut r, w), leg(&mut r, w));
    rule(
        "green_sp",
        l,
        r,
        &[(lu, ru), (lv, rv)],
        vec![(vec![lu], vec![ru]), (vec![lv], vec![rv])],
    )
}

/// A phase-free Z vertex of degree 2 is a wire.
pub fn green_id() -> RewriteRule {
    let mut l = Pattern::new();
    let i = l.add_input();
    let z = l.add_z(zero());
    let o = l.add_output();
    l.add_edge(i, z);
    l.add_edge(z, o);
    let mut r = Pattern::new();
    let ri = r.add_input();
    let ro = r.add_output();
    r.add_edge(ri, ro);
    rule("green_id", l, r, &[(i, ri), (o, ro)], vec![])
}

/// A plain self-loop on a Z spider disappears.
pub fn green_loop() -> RewriteRule {
    let mut l = Pattern::new();
    let z = l.add_z(ex("a"));
    l.add_edge(z, z);
    let lb = leg(&mut l, z);
    let mut r = Pattern::new();
    let w = r.add_z(ex("a"));
    let rb = leg(&mut r, w);
    rule("green_loop", l, r, &[(lb, rb)], vec![(vec![lb], vec![rb])])
}

/// A self-loop through an H vertex disappears and adds π.
pub fn green_antiloop() -> RewriteRule {
    let mut l = Pattern::new();
    let z = l.add_z(ex("a"));
    let h = l.add_h();
    l.add_edge(z, h);
    l.add_edge(h, z);
    let lb = leg(&mut l, z);
    let mut r = Pattern::new();
    let w = r.add_z(ex("a+1"));
    let rb = leg(&mut r, w);
    rule(
        "green_antiloop",
        l,
        r,
        &[(lb, rb)],
        vec![(vec![lb], vec![rb])],
    )
}

/// An isolated phase-free Z vertex is a non-zero scalar.
pub fn green_scalar() -> RewriteRule {
    let mut l = Pattern::new();
    l.add_z(zero());
    rule("green_scalar", l, Pattern::new(), &[], vec![])
}

/// An X(π) on one leg of a Z spider moves to all the other legs and
/// negates the phase.
pub fn green_pi() -> RewriteRule {
    let mut l = Pattern::new();
    let x = l.add_x(pi());
    let z = l.add_z(ex("a"));
    l.add_edge(x, z);
    let l0 = leg(&mut l, x);
    let lb = leg(&mut l, z);
    let mut r = Pattern::new();
    let w = r.add_z(ex("-a"));
    let r0 = leg(&mut r, w);
    let rx = r.add_x(pi());
    r.add_edge(w, rx);
    let rb = leg(&mut r, rx);
    rule(
        "green_pi",
        l,
        r,
        &[(l0, r0), (lb, rb)],
        vec![(vec![lb], vec![rx, rb])],
    )
}

/// A phase-free X state is copied through a Z spider.
pub fn green_copy() -> RewriteRule {
    let mut l = Pattern::new();
    let x = l.add_x(zero());
    let z = l.add_z(ex("a"));
    l.add_edge(x, z);
    let lb = leg(&mut l, z);
    let mut r = Pattern::new();
    let rx = r.add_x(zero());
    let rb = leg(&mut r, rx);
    rule(
        "green_copy",
        l,
        r,
        &[(lb, rb)],
        vec![(vec![lb], vec![rx, rb])],
    )
}

/// A phase-free Z state plugged into an X effect of any phase is a
/// non-zero scalar.
pub fn green_elim() -> RewriteRule {
    let mut l = Pattern::new();
    let z = l.add_z(zero());
    let x = l.add_x(ex("a"));
    l.add_edge(z, x);
    rule("green_elim", l, Pattern::new(), &[], vec![])
}

/// Two parallel edges between a Z and an X spider cancel.
pub fn hopf() -> RewriteRule {
    let mut l = Pattern::new();
    let z = l.add_z(ex("a"));
    let x = l.add_x(ex("b"));
    l.add_edge(z, x);
    l.add_edge(z, x);
    let (lz, lx) = (leg(&mut l, z), leg(&mut l, x));
    let mut r = Pattern::new();
    let rz = r.add_z(ex("a"));
    let rx = r.add_x(ex("b"));
    let (bz, bx) = (leg(&mut r, rz), leg(&mut r, rx));
    rule(
        "hopf",
        l,
        r,
        &[(lz, bz), (lx, bx)],
        vec![(vec![lz], vec![bz]), (vec![lx], vec![bx])],
    )
}

/// The bialgebra law: a complete bipartite Z/X graph becomes an X hub
/// joined to a Z hub.
pub fn gen_bialg() -> RewriteRule {
    let mut l = Pattern::new();
    let z = l.add_z(zero());
    let bz = l.add_input();
    l.add_edge(bz, z);
    let x = l.add_x(zero());
    let bx = l.add_output();
    l.add_edge(x, bx);
    l.add_edge(z, x);
    let mut r = Pattern::new();
    let rbz = r.add_input();
    let hx = r.add_x(zero());
    let hz = r.add_z(zero());
    let rbx = r.add_output();
    r.add_edge(rbz, hx);
    r.add_edge(hx, hz);
    r.add_edge(hz, rbx);
    rule(
        "gen_bialg",
        l,
        r,
        &[(bz, rbz), (bx, rbx)],
        vec![(vec![z, bz], vec![rbz]), (vec![x, bx], vec![rbx])],
    )
}

/// The 2×2 case of [`gen_bialg`].
pub fn gen_bialg_simp() -> RewriteRule {
    gen_bialg()
        .instantiate(&[2, 2])
        .expect("count within bound")
        .renamed("gen_bialg_simp")
}

fn h_wire(steps: &[Option<PhaseExpr>], z_first: bool) -> Pattern {
    let mut g = Pattern::new();
    let i = g.add_input();
    let mut prev = i;
    let mut green = z_first;
    for s in steps {
        let v = match s {
            Some(p) if green => g.add_z(p.clone()),
            Some(p) => g.add_x(p.clone()),
            None => g.add_h(),
        };
        if s.is_some() {
            green = !green;
        }
        g.add_edge(prev, v);
        prev = v;
    }
    let o = g.add_output();
    g.add_edge(prev, o);
    g
}

fn wire_rule(name: &str, lhs: Pattern, rhs: Pattern) -> RewriteRule {
    let map = [
        (lhs.inputs()[0], rhs.inputs()[0]),
        (lhs.outputs()[0], rhs.outputs()[0]),
    ];
    rule(name, lhs, rhs, &map, vec![])
}

/// H as three quarter turns, Z X Z.
pub fn euler() -> RewriteRule {
    let q = Some(half());
    wire_rule(
        "euler",
        h_wire(&[None], true),
        h_wire(&[q.clone(), q.clone(), q], true),
    )
}

/// H as three quarter turns, X Z X.
pub fn euler2() -> RewriteRule {
    let q = Some(half());
    wire_rule(
        "euler2",
        h_wire(&[None], true),
        h_wire(&[q.clone(), q.clone(), q], false),
    )
}

/// Two H vertices in a row are a wire.
pub fn h_cancel() -> RewriteRule {
    wire_rule("h-cancel", h_wire(&[None, None], true), h_wire(&[], true))
}

/// A Z spider is an X spider with an H on every leg.
pub fn green_to_red() -> RewriteRule {
    let mut l = Pattern::new();
    let z = l.add_z(ex("a"));
    let lb = leg(&mut l, z);
    let mut r = Pattern::new();
    let x = r.add_x(ex("a"));
    let h = r.add_h();
    r.add_edge(x, h);
    let rb = leg(&mut r, h);
    rule(
        "green_to_red",
        l,
        r,
        &[(lb, rb)],
        vec![(vec![lb], vec![h, rb])],
    )
}

/// Every shipped rule, in a fixed order.
pub fn builtin_rules() -> Vec<RewriteRule> {
    let mut out = Vec::new();
    for (g, red) in [
        (green_sp(), "red_sp"),
        (green_id(), "red_id"),
        (green_loop(), "red_loop"),
        (green_antiloop(), "red_antiloop"),
        (green_scalar(), "red_scalar"),
        (green_pi(), "red_pi"),
        (green_copy(), "red_copy"),
        (green_elim(), "red_elim"),
    ] {
        let r = g.color_dual(red);
        out.push(g);
        out.push(r);
    }
    out.push(green_to_red());
    out.push(green_to_red().color_dual("red_to_green"));
    out.push(green_pi().renamed("red_pi_lemma"));
    out.push(green_pi().color_dual("green_pi_lemma"));
    out.push(hopf());
    out.push(gen_bialg());
    out.push(gen_bialg_simp());
    out.push(euler());
    out.push(euler2());
    out.push(h_cancel());
    out
}

/// A rule together with its box instances, each tagged with the
/// (type, degree) profile its interior vertices need in a target.
/// Per interior vertex: type letter and degree.
type Profile = Vec<(&'static str, usize)>;

#[derive(Clone, Debug)]
pub struct RuleFamily {
    base: RewriteRule,
    instances: Vec<(Vec<usize>, RewriteRule, Profile)>,
}

fn profile(r: &RewriteRule) -> Profile {
    let mut p: Vec<_> = r
        .lhs()
        .interior_vertices()
        .map(|v| (r.lhs().kind(v).unwrap().type_letter(), r.lhs().degree(v)))
        .collect();
    p.sort_unstable();
    p.dedup();
    p
}

impl RuleFamily {
    pub fn new(base: RewriteRule) -> Result<RuleFamily> {
        let mut instances = Vec::new();
        for counts in base.count_vectors(usize::MAX) {
            let inst = base.instantiate(&counts)?;
            let p = profile(&inst);
            instances.push((counts, inst, p));
        }
        Ok(RuleFamily { base, instances })
    }

    pub fn base(&self) -> &RewriteRule {
        &self.base
    }

    pub fn name(&self) -> &str {
        self.base.name()
    }

    pub fn instance(&self, counts: &[usize]) -> Option<&RewriteRule> {
        self.instances
            .iter()
            .find(|(c, _, _)| c == counts)
            .map(|(_, r, _)| r)
    }

    /// Every match of every instance, ordered by image and then by counts.
    pub fn matches(&self, target: &Diagram) -> Vec<(&RewriteRule, Match)> {
        let present: std::collections::BTreeSet<(&'static str, usize)> = target
            .interior_vertices()
            .map(|v| (target.kind(v).unwrap().type_letter(), target.degree(v)))
            .collect();
        let mut out: Vec<(&RewriteRule, Match)> = Vec::new();
        for (_, inst, p) in &self.instances {
            if p.iter().all(|k| present.contains(k)) {
                out.extend(find_matches(inst, target).into_iter().map(|m| (inst, m)));
            }
        }
        out.sort_by(|a, b| (a.1.image(), &a.1.counts).cmp(&(b.1.image(), &b.1.counts)));
        out
    }

    /// The first match in that order.
    pub fn first_match(&self, target: &Diagram) -> Option<(&RewriteRule, Match)> {
        self.matches(target).into_iter().next()
    }
}

/// Rule families by name.
#[derive(Clone, Debug, Default)]
pub struct RuleLibrary {
    families: BTreeMap<String, RuleFamily>,
}

impl RuleLibrary {
    pub fn new(rules: Vec<RewriteRule>) -> Result<RuleLibrary> {
        let mut families = BTreeMap::new();
        for r in rules {
            families.insert(r.name().to_string(), RuleFamily::new(r)?);
        }
        Ok(RuleLibrary { families })
    }

    /// The shipped rules, built once per process.
    pub fn builtin() -> &'static RuleLibrary {
        static LIB: OnceLock<RuleLibrary> = OnceLock::new();
        LIB.get_or_init(|| RuleLibrary::new(builtin_rules()).expect("builtin rules instantiate"))
    }

    pub fn family(&self, name: &str) -> Result<&RuleFamily> {
        self.families
            .get(name)
            .ok_or_else(|| Error::UnknownRule(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.families.keys().map(String::as_str)
    }

    pub fn families(&self) -> impl Iterator<Item = &RuleFamily> {
        self.families.values()
    }

    /// The base rules as a JSON array.
    pub fn to_json_string(&self) -> String {
        let rules: Vec<_> = self.families().map(|f| f.base().to_json()).collect();
        serde_json::to_string_pretty(&rules).expect("rule json serializes")
    }

    pub fn from_json_str(s: &str) -> Result<RuleLibrary> {
        let rules: Vec<RuleJson> = serde_json::from_str(s)?;
        RuleLibrary::new(
            rules
                .iter()
                .map(RewriteRule::from_json)
                .collect::<Result<_>>()?,
        )
    }

    /// A copy with the rule of the same name replaced.
    pub fn with_rule(&self, rule: RewriteRule) -> Result<RuleLibrary> {
        let mut families = self.families.clone();
        families.insert(rule.name().to_string(), RuleFamily::new(rule)?);
        Ok(RuleLibrary { families })
    }

    /// A concrete rule: the named family at `counts`, optionally inverted.
    pub fn concrete(&self, name: &str, counts: &[usize], inverted: bool) -> Result<RewriteRule> {
        let fam = self.family(name)?;
        let inst = match fam.instance(counts) {
            Some(r) => r.clone(),
            None => fam.base.instantiate(counts)?,
        };
        Ok(if inverted { inst.invert() } else { inst })
    }
}
