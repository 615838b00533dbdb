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

//! Exact arithmetic in Z[ω, 1/√2] with ω = e^{iπ/4}.
//!
//! An element is stored as `(a + bω + cω² + dω³) / √2^k`. The canonical form
//! has either `k = 0` or a numerator that is not divisible by √2, so
//! structural equality is value equality.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactScalar {
    /// Coefficients of 1, ω, ω², ω³.
    pub coeffs: [i64; 4],
    /// Power of √2 in the denominator.
    pub k: u32,
}

/// Multiply a numerator by √2 = ω − ω³.
fn mul_sqrt2(x: [i64; 4]) -> [i64; 4] {
    let [a, b, c, d] = x;
    [b - d, a + c, b + d, c - a]
}

/// Multiply a numerator by ω.
fn mul_omega(x: [i64; 4]) -> [i64; 4] {
    let [a, b, c, d] = x;
    [-d, a, b, c]
}

/// Divide a numerator by √2 if the result stays in Z[ω].
fn div_sqrt2(x: [i64; 4]) -> Option<[i64; 4]> {
    let y = mul_sqrt2(x);
    if y.iter().all(|v| v % 2 == 0) {
        Some(y.map(|v| v / 2))
    } else {
        None
    }
}

fn mul_num(x: [i64; 4], y: [i64; 4]) -> [i64; 4] {
    let mut out = [0i64; 4];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            let p = xi * yj;
            let e = i + j;
            if e < 4 {
                out[e] += p;
            } else {
                out[e - 4] -= p;
            }
        }
    }
    out
}

impl ExactScalar {
    pub const ZERO: ExactScalar = ExactScalar {
        coeffs: [0; 4],
        k: 0,
    };
    pub const ONE: ExactScalar = ExactScalar {
        coeffs: [1, 0, 0, 0],
        k: 0,
    };

    pub fn new(coeffs: [i64; 4], k: u32) -> ExactScalar {
        ExactScalar { coeffs, k }.canonical()
    }

    pub fn integer(n: i64) -> ExactScalar {
        ExactScalar::new([n, 0, 0, 0], 0)
    }

    /// ω^j.
    pub fn omega_pow(j: u8) -> ExactScalar {
        let mut x = [1, 0, 0, 0];
        for _ in 0..(j % 8) {
            x = mul_omega(x);
        }
        ExactScalar { coeffs: x, k: 0 }
    }

    pub fn sqrt2() -> ExactScalar {
        ExactScalar::new([0, 1, 0, -1], 0)
    }

    /// 1/√2^k.
    pub fn inv_sqrt2_pow(k: u32) -> ExactScalar {
        ExactScalar::new([1, 0, 0, 0], k)
    }

    fn canonical(mut self) -> ExactScalar {
        if self.coeffs == [0; 4] {
            return ExactScalar::ZERO;
        }
        while self.k > 0 {
            match div_sqrt2(self.coeffs) {
                Some(y) => {
                    self.coeffs = y;
                    self.k -= 1;
                }
                None => break,
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs == [0; 4]
    }

    /// Complex conjugate: ω ↦ ω⁷ = −ω³.
    pub fn conj(&self) -> ExactScalar {
        let [a, b, c, d] = self.coeffs;
        ExactScalar {
            coeffs: [a, -d, -c, -b],
            k: self.k,
        }
    }

    fn raise_k(coeffs: [i64; 4], from: u32, to: u32) -> [i64; 4] {
        let mut x = coeffs;
        for _ in from..to {
            x = mul_sqrt2(x);
        }
        x
    }

    /// Galois automorphism ω ↦ ω^j for odd j, on a numerator.
    fn galois(x: [i64; 4], j: u8) -> [i64; 4] {
        let mut out = [0i64; 4];
        for (i, &xi) in x.iter().enumerate() {
            let e = (i as u32 * j as u32) % 8;
            let (slot, sign) = if e < 4 {
                (e as usize, 1)
            } else {
                (e as usize - 4, -1)
            };
            out[slot] += sign * xi;
        }
        out
    }

    /// Exact quotient `self / other`, if it lies in the ring.
    pub fn checked_div(&self, other: &ExactScalar) -> Option<ExactScalar> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(ExactScalar::ZERO);
        }
        // other_num⁻¹ = σ3σ5σ7(other_num) / N with N the (rational) norm.
        let b = other.coeffs;
        let cofactor = mul_num(
            mul_num(Self::galois(b, 3), Self::galois(b, 5)),
            Self::galois(b, 7),
        );
        let norm = mul_num(b, cofactor);
        debug_assert!(norm[1] == 0 && norm[2] == 0 && norm[3] == 0);
        let mut n = norm[0];
        let mut y = mul_num(self.coeffs, cofactor);
        if n < 0 {
            n = -n;
            y = y.map(|v| -v);
        }
        let mut twos = 0u32;
        while n % 2 == 0 {
            n /= 2;
            twos += 1;
        }
        if y.iter().any(|v| v % n != 0) {
            return None;
        }
        let y = y.map(|v| v / n);
        // self / other = y · √2^(other.k) / √2^(self.k + 2·twos)
        Some(ExactScalar::new(
            Self::raise_k(y, 0, other.k),
            self.k + 2 * twos,
        ))
    }

    pub fn to_complex(&self) -> Complex64 {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let w = Complex64::new(s, s);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut p = Complex64::new(1.0, 0.0);
        for &c in &self.coeffs {
            acc += p * c as f64;
            p *= w;
        }
        acc * 2f64.powf(-(self.k as f64) / 2.0)
    }
}

impl Add for ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: ExactScalar) -> ExactScalar {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let k = self.k.max(rhs.k);
        let x = ExactScalar::raise_k(self.coeffs, self.k, k);
        let y = ExactScalar::raise_k(rhs.coeffs, rhs.k, k);
        ExactScalar::new([x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]], k)
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        *self = *self + rhs;
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            coeffs: self.coeffs.map(|v| -v),
            k: self.k,
        }
    }
}

impl Sub for ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: ExactScalar) -> ExactScalar {
        self + (-rhs)
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        if self.is_zero() || rhs.is_zero() {
            return ExactScalar::ZERO;
        }
        ExactScalar::new(mul_num(self.coeffs, rhs.coeffs), self.k + rhs.k)
    }
}

impl fmt::Display for ExactScalar {
    /// Nonzero terms of `a + bω + cω² + dω³`, then `/√2^k` when `k > 0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (v, sym) in self.coeffs.iter().zip(["", "ω", "ω²", "ω³"]) {
            let t = match (*v, sym) {
                (0, _) => continue,
                (v, "") => v.to_string(),
                (1, s) => s.to_string(),
                (-1, s) => format!("-{s}"),
                (v, s) => format!("{v}{s}"),
            };
            terms.push(t);
        }
        let mut num = terms[0].clone();
        for t in &terms[1..] {
            if t.starts_with('-') {
                num.push_str(t);
            } else {
                num.push('+');
                num.push_str(t);
            }
        }
        if terms.len() > 1 && self.k > 0 {
            num = format!("({num})");
        }
        match self.k {
            0 => write!(f, "{num}"),
            1 => write!(f, "{num}/√2"),
            k => write!(f, "{num}/√2^{k}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_compact() {
        assert_eq!(ExactScalar::ZERO.to_string(), "0");
        assert_eq!(ExactScalar::integer(-3).to_string(), "-3");
        assert_eq!(ExactScalar::inv_sqrt2_pow(1).to_string(), "1/√2");
        assert_eq!(ExactScalar::omega_pow(2).to_string(), "ω²");
        let z = ExactScalar::new([1, -1, 0, 0], 3);
        assert_eq!(z.to_string(), "(1-ω)/√2^3");
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn omega_to_the_eighth_is_one() {
        assert_eq!(ExactScalar::omega_pow(8), ExactScalar::ONE);
        let w = ExactScalar::omega_pow(1);
        let mut p = ExactScalar::ONE;
        for _ in 0..8 {
            p = p * w;
        }
        assert_eq!(p, ExactScalar::ONE);
        assert_eq!(ExactScalar::omega_pow(4), -ExactScalar::ONE);
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let s = ExactScalar::sqrt2();
        assert_eq!(s * s, ExactScalar::integer(2));
        assert_eq!(
            ExactScalar::inv_sqrt2_pow(2) * ExactScalar::integer(2),
            ExactScalar::ONE
        );
        assert_eq!(ExactScalar::inv_sqrt2_pow(1) * s, ExactScalar::ONE);
    }

    #[test]
    fn canonical_form_is_unique() {
        // 2/√2^2 == 1
        assert_eq!(ExactScalar::new([2, 0, 0, 0], 2), ExactScalar::ONE);
        // √2/√2 == 1
        assert_eq!(ExactScalar::new([0, 1, 0, -1], 1), ExactScalar::ONE);
        assert_eq!(ExactScalar::new([0, 0, 0, 0], 5), ExactScalar::ZERO);
        let h = ExactScalar::inv_sqrt2_pow(1);
        assert_eq!(h + h, ExactScalar::sqrt2());
    }

    #[test]
    fn conjugation() {
        let w = ExactScalar::omega_pow(1);
        assert_eq!(w * w.conj(), ExactScalar::ONE);
        let x = ExactScalar::new([1, 2, -3, 4], 3);
        assert!(close(x.conj().to_complex(), x.to_complex().conj()));
    }

    #[test]
    fn division() {
        let x = ExactScalar::new([1, 2, -3, 4], 3);
        let y = ExactScalar::omega_pow(3) * ExactScalar::inv_sqrt2_pow(5);
        let q = (x * y).checked_div(&y).unwrap();
        assert_eq!(q, x);
        let half = ExactScalar::ONE
            .checked_div(&ExactScalar::integer(2))
            .unwrap();
        assert_eq!(half, ExactScalar::inv_sqrt2_pow(2));
        assert_eq!(ExactScalar::ONE.checked_div(&ExactScalar::integer(3)), None);
        assert_eq!(ExactScalar::ONE.checked_div(&ExactScalar::ZERO), None);
        let big = ExactScalar::integer(6)
            .checked_div(&ExactScalar::sqrt2())
            .unwrap();
        assert!(close(
            big.to_complex(),
            Complex64::new(6.0 / 2f64.sqrt(), 0.0)
        ));
    }

    #[test]
    fn float_agrees() {
        let a = ExactScalar::new([3, -1, 2, 5], 1);
        let b = ExactScalar::new([0, 4, -2, 1], 4);
        assert!(close((a * b).to_complex(), a.to_complex() * b.to_complex()));
        assert!(close((a + b).to_complex(), a.to_complex() + b.to_complex()));
    }
}
