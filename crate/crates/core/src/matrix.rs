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

//! Dense matrices over an exact or floating-point scalar field.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::phase::Phase;
use crate::ring::ExactScalar;

/// The operations tensor contraction needs from a scalar type.
pub trait Scalar: Copy + Send + Sync + PartialEq + fmt::Debug + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;
    fn neg(self) -> Self;
    fn conj(self) -> Self;
    fn is_zero(&self) -> bool;
    /// 1/√2.
    fn inv_sqrt2() -> Self;
    /// e^{iπ·phase}; `None` when the phase is not representable.
    fn phase(p: Phase) -> Option<Self>;
    fn to_complex(&self) -> Complex64;
}

impl Scalar for ExactScalar {
    fn zero() -> Self {
        ExactScalar::ZERO
    }
    fn one() -> Self {
        ExactScalar::ONE
    }
    fn add(self, rhs: Self) -> Self {
        self + rhs
    }
    fn mul(self, rhs: Self) -> Self {
        self * rhs
    }
    fn neg(self) -> Self {
        -self
    }
    fn conj(self) -> Self {
        ExactScalar::conj(&self)
    }
    fn is_zero(&self) -> bool {
        ExactScalar::is_zero(self)
    }
    fn inv_sqrt2() -> Self {
        ExactScalar::inv_sqrt2_pow(1)
    }
    fn phase(p: Phase) -> Option<Self> {
        p.eighths().map(ExactScalar::omega_pow)
    }
    fn to_complex(&self) -> Complex64 {
        ExactScalar::to_complex(self)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn add(self, rhs: Self) -> Self {
        self + rhs
    }
    fn mul(self, rhs: Self) -> Self {
        self * rhs
    }
    fn neg(self) -> Self {
        -self
    }
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    fn is_zero(&self) -> bool {
        self.norm() == 0.0
    }
    fn inv_sqrt2() -> Self {
        Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
    }
    fn phase(p: Phase) -> Option<Self> {
        Some(Complex64::from_polar(1.0, p.radians()))
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
}

/// Row-major dense matrix. For diagram semantics rows index output basis
/// states and columns index input basis states, wire 1 being the most
/// significant bit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

pub type ExactMatrix = Matrix<ExactScalar>;
pub type FloatMatrix = Matrix<Complex64>;

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = S::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { rows, cols, data }
    }

    pub fn column(data: Vec<S>) -> Self {
        let n = data.len();
        Self::from_vec(n, 1, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> S {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(S::is_zero)
    }

    pub fn scale(&self, z: S) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| v.mul(z)).collect(),
        }
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self, Error> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let idx = i * rhs.cols + j;
                    out.data[idx] = out.data[idx].add(a.mul(rhs.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set(i * rhs.rows + k, j * rhs.cols + l, a.mul(rhs.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn to_float(&self) -> FloatMatrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(Scalar::to_complex).collect(),
        }
    }

    /// Row-major index of the first nonzero entry.
    pub fn pivot(&self) -> Option<usize> {
        self.data.iter().position(|v| !v.is_zero())
    }
}

impl FloatMatrix {
    pub fn max_abs_diff(&self, other: &FloatMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "{}", row.join("  "))?;
        }
        Ok(())
    }
}

impl FloatMatrix {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| {
                    let v = self.get(r, c);
                    format!("{:+.6}{:+.6}i", v.re, v.im)
                })
                .collect();
            out.push_str(&row.join("  "));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_and_matmul_dimensions() {
        let i2 = ExactMatrix::identity(2);
        let i4 = i2.kron(&i2);
        assert_eq!(i4, ExactMatrix::identity(4));
        let m = ExactMatrix::from_vec(1, 2, vec![ExactScalar::ONE, ExactScalar::integer(2)]);
        assert!(m.matmul(&m).is_err());
        let p = m.matmul(&m.adjoint()).unwrap();
        assert_eq!(p.get(0, 0), ExactScalar::integer(5));
    }
}
