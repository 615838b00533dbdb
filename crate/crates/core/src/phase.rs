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

//! Exact phases in units of π, and linear phase expressions used by rewrite
//! rules.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Rational64;

use crate::error::Error;

/// An angle stored as a reduced rational multiple of π, normalized into
/// `[0, 2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phase(Rational64);

impl Phase {
    pub const ZERO: Phase = Phase(Rational64::new_raw(0, 1));
    pub const PI: Phase = Phase(Rational64::new_raw(1, 1));

    /// `numer/denom` in units of π.
    pub fn new(numer: i64, denom: i64) -> Phase {
        assert!(denom != 0, "phase with zero denominator");
        Phase::from_rational(Rational64::new(numer, denom))
    }

    pub fn from_rational(r: Rational64) -> Phase {
        let two = Rational64::from_integer(2);
        let mut r = r % two;
        if r < Rational64::from_integer(0) {
            r += two;
        }
        Phase(r)
    }

    pub fn quarter(k: i64) -> Phase {
        Phase::new(k, 4)
    }

    pub fn as_rational(self) -> Rational64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        *self.0.numer() == 0
    }

    pub fn is_pi(self) -> bool {
        self == Phase::PI
    }

    /// `Some(k)` with `self = kπ/4`, `0 <= k < 8`, when the phase lies in the
    /// eighth-root-of-unity grid.
    pub fn eighths(self) -> Option<u8> {
        let d = *self.0.denom();
        if 4 % d != 0 {
            return None;
        }
        Some((self.0.numer() * (4 / d)) as u8)
    }

    /// Radians, for the floating-point backend.
    pub fn radians(self) -> f64 {
        std::f64::consts::PI * (*self.0.numer() as f64) / (*self.0.denom() as f64)
    }
}

impl Default for Phase {
    fn default() -> Self {
        Phase::ZERO
    }
}

impl Add for Phase {
    type Output = Phase;
    fn add(self, rhs: Phase) -> Phase {
        Phase::from_rational(self.0 + rhs.0)
    }
}

impl Sub for Phase {
    type Output = Phase;
    fn sub(self, rhs: Phase) -> Phase {
        Phase::from_rational(self.0 - rhs.0)
    }
}

impl Neg for Phase {
    type Output = Phase;
    fn neg(self) -> Phase {
        Phase::from_rational(-self.0)
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, self.0)
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: Rational64) -> fmt::Result {
    if *r.denom() == 1 {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

fn parse_rational(s: &str) -> Result<Rational64, Error> {
    let bad = || Error::Parse(format!("invalid phase literal `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (
            n.trim().parse::<i64>().map_err(|_| bad())?,
            d.trim().parse::<i64>().map_err(|_| bad())?,
        ),
        None => (s.trim().parse::<i64>().map_err(|_| bad())?, 1),
    };
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational64::new(n, d))
}

impl FromStr for Phase {
    type Err = Error;
    fn from_str(s: &str) -> Result<Phase, Error> {
        Ok(Phase::from_rational(parse_rational(s.trim())?))
    }
}

impl serde::Serialize for Phase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Phase {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Phase, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A linear combination of phase variables plus a constant, read mod 2π.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PhaseExpr {
    pub constant: Phase,
    /// Variable name to integer coefficient; zero coefficients are never
    /// stored.
    pub terms: BTreeMap<String, i64>,
}

impl PhaseExpr {
    pub fn constant(p: Phase) -> PhaseExpr {
        PhaseExpr {
            constant: p,
            terms: BTreeMap::new(),
        }
    }

    pub fn var(name: &str) -> PhaseExpr {
        PhaseExpr::constant(Phase::ZERO).plus_var(name, 1)
    }

    pub fn plus_var(mut self, name: &str, coeff: i64) -> PhaseExpr {
        let c = self.terms.entry(name.to_string()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(name);
        }
        self
    }

    pub fn plus_const(mut self, p: Phase) -> PhaseExpr {
        self.constant = self.constant + p;
        self
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.terms.keys().map(String::as_str)
    }

    pub fn eval(&self, assignment: &BTreeMap<String, Phase>) -> Option<Phase> {
        let mut acc = self.constant.as_rational();
        for (v, &c) in &self.terms {
            acc += assignment.get(v)?.as_rational() * c;
        }
        Some(Phase::from_rational(acc))
    }

    /// Extends `assignment` so that this expression evaluates to `target`.
    /// Succeeds when at most one variable is still unknown and it has
    /// coefficient ±1.
    pub fn unify(&self, target: Phase, assignment: &mut BTreeMap<String, Phase>) -> bool {
        let mut acc = self.constant.as_rational();
        let mut unknown = None;
        for (v, &c) in &self.terms {
            match assignment.get(v) {
                Some(p) => acc += p.as_rational() * c,
                None if unknown.is_none() && c.abs() == 1 => unknown = Some((v, c)),
                None => return false,
            }
        }
        match unknown {
            None => Phase::from_rational(acc) == target,
            Some((v, c)) => {
                let rest = target.as_rational() - acc;
                let value = if c == 1 { rest } else { -rest };
                assignment.insert(v.clone(), Phase::from_rational(value));
                true
            }
        }
    }

    pub fn negate(&self) -> PhaseExpr {
        PhaseExpr {
            constant: -self.constant,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v)).collect(),
        }
    }
}

impl From<Phase> for PhaseExpr {
    fn from(p: Phase) -> Self {
        PhaseExpr::constant(p)
    }
}

impl fmt::Display for PhaseExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, &c) in &self.terms {
            if c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        if first {
            return write!(f, "{}", self.constant);
        }
        if !self.constant.is_zero() {
            write!(f, "+{}", self.constant)?;
        }
        Ok(())
    }
}

impl FromStr for PhaseExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<PhaseExpr, Error> {
        let src = s.trim();
        if src.is_empty() {
            return Err(Error::Parse("empty phase expression".into()));
        }
        let mut expr = PhaseExpr::default();
        let mut rest = src;
        let mut first = true;
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if first => (1, rest),
                _ => return Err(Error::Parse(format!("invalid phase expression `{src}`"))),
            };
            first = false;
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = body[..end].trim();
            rest = body[end..].trim_start();
            if term.is_empty() {
                return Err(Error::Parse(format!("invalid phase expression `{src}`")));
            }
            let (coeff, name) = match term.split_once('*') {
                Some((k, v)) => (
                    k.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("invalid coefficient in `{src}`")))?,
                    v.trim(),
                ),
                None => (1, term),
            };
            if name
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            {
                if !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                    return Err(Error::Parse(format!("invalid variable name `{name}`")));
                }
                expr = expr.plus_var(name, sign * coeff);
            } else {
                let r = parse_rational(term)?;
                expr.constant = Phase::from_rational(expr.constant.as_rational() + r * sign);
            }
        }
        Ok(expr)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_mod_two() {
        assert_eq!(Phase::new(9, 4), Phase::new(1, 4));
        assert_eq!(Phase::new(-1, 4), Phase::new(7, 4));
        assert_eq!(Phase::new(4, 2), Phase::ZERO);
        assert_eq!(-Phase::new(1, 4), Phase::new(7, 4));
        assert_eq!(Phase::new(1, 4) + Phase::new(1, 4), Phase::new(1, 2));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(Phase::new(2, 8).to_string(), "1/4");
        assert_eq!(Phase::PI.to_string(), "1");
        assert_eq!("7/4".parse::<Phase>().unwrap(), Phase::new(-1, 4));
        assert!("1/0".parse::<Phase>().is_err());
        assert!("x".parse::<Phase>().is_err());
    }

    #[test]
    fn eighths_grid() {
        assert_eq!(Phase::new(3, 4).eighths(), Some(3));
        assert_eq!(Phase::new(1, 2).eighths(), Some(2));
        assert_eq!(Phase::new(1, 3).eighths(), None);
    }

    #[test]
    fn expr_parse_display() {
        for s in ["a+b", "-a", "a+1/2", "1/4", "a-b+1", "2*a"] {
            let e: PhaseExpr = s.parse().unwrap();
            let back: PhaseExpr = e.to_string().parse().unwrap();
            assert_eq!(e, back, "{s}");
        }
        let e: PhaseExpr = "a+1/2".parse().unwrap();
        assert_eq!(e.terms.get("a"), Some(&1));
        assert_eq!(e.constant, Phase::new(1, 2));
        assert!("a+".parse::<PhaseExpr>().is_err());
    }

    #[test]
    fn unify_single_variable() {
        let e: PhaseExpr = "-a+1/2".parse().unwrap();
        let mut asg = BTreeMap::new();
        assert!(e.unify(Phase::new(1, 4), &mut asg));
        assert_eq!(asg["a"], Phase::new(1, 4));
        assert_eq!(e.eval(&asg), Some(Phase::new(1, 4)));

        let sum: PhaseExpr = "a+b".parse().unwrap();
        let mut empty = BTreeMap::new();
        assert!(!sum.unify(Phase::PI, &mut empty));
        let mut partial = BTreeMap::from([("a".to_string(), Phase::new(1, 4))]);
        assert!(sum.unify(Phase::new(1, 2), &mut partial));
        assert_eq!(partial["b"], Phase::new(1, 4));
    }
}
