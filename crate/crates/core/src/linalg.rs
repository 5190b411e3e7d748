// Copyright 2026 The accessor-control Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex matrices, the real Hilbert–Schmidt geometry on them, and an
//! incrementally grown orthonormal basis.
//!
//! Every operator in the crate lives here as a square row-major matrix with
//! `ħ = 1`. Composite spaces are always ordered system ⊗ accessor, so in
//! [`kron`] the left factor is the slow index.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};
use std::ops::Range;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries. Panics if the entry count is
    /// not a perfect square.
    pub fn from_row_major(data: Vec<Complex64>) -> Self {
        let dim = (data.len() as f64).sqrt().round() as usize;
        assert_eq!(dim * dim, data.len(), "entry count must be a square");
        Self { dim, data }
    }

    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            assert_eq!(row.len(), dim, "matrix must be square");
            data.extend_from_slice(row);
        }
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.data[c * n + r] = self.data[r * n + c].conj();
            }
        }
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// ‖a − b‖_F / ‖b‖_F, or the absolute distance when `b` vanishes.
    pub fn relative_distance(&self, reference: &Self) -> f64 {
        let diff = (self - reference).norm();
        let scale = reference.norm();
        if scale > 0.0 {
            diff / scale
        } else {
            diff
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scaled_complex(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_in_place(&mut self, factor: f64) {
        for z in &mut self.data {
            *z *= factor;
        }
    }

    /// `self += alpha * other`
    pub fn axpy(&mut self, alpha: f64, other: &Self) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b * alpha;
        }
    }

    /// Matrix product. Panics on dimension mismatch.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "matmul dimension mismatch");
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            let row = &mut out[r * n..(r + 1) * n];
            for k in 0..n {
                let a = self.data[r * n + k];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let other_row = &other.data[k * n..(k + 1) * n];
                for (o, b) in row.iter_mut().zip(other_row) {
                    *o += a * b;
                }
            }
        }
        Self { dim: n, data: out }
    }

    /// `self·other − other·self`. Panics on dimension mismatch; use
    /// [`commutator`] for a checked version.
    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = self.matmul(other);
        out -= &other.matmul(self);
        out
    }

    /// Re tr(self† other), without dimension checking.
    pub fn hs_dot(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.re * b.re + a.im * b.im)
            .sum()
    }

    /// ‖A − A†‖_F
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for r in 0..n {
            for c in 0..n {
                acc += (self.data[r * n + c] - self.data[c * n + r].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// ‖A + A†‖_F
    pub fn skew_hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut acc = 0.0;
        for r in 0..n {
            for c in 0..n {
                acc += (self.data[r * n + c] + self.data[c * n + r].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol * self.norm().max(1.0)
    }

    pub fn is_skew_hermitian(&self, tol: f64) -> bool {
        self.skew_hermitian_deviation() <= tol * self.norm().max(1.0)
    }

    pub fn is_traceless(&self, tol: f64) -> bool {
        self.trace().norm() <= tol * self.norm().max(1.0)
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for r in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|c| {
                    let z = self[(r, c)];
                    format!("{:+.3}{:+.3}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl AddAssign<&ComplexMatrix> for ComplexMatrix {
    fn add_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.dim, rhs.dim);
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl SubAssign<&ComplexMatrix> for ComplexMatrix {
    fn sub_assign(&mut self, rhs: &ComplexMatrix) {
        assert_eq!(self.dim, rhs.dim);
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a -= b;
        }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

impl Mul<Complex64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: Complex64) -> ComplexMatrix {
        self.scaled_complex(rhs)
    }
}

impl Mul<f64> for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: f64) -> ComplexMatrix {
        self.scaled(rhs)
    }
}

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn neg(self) -> ComplexMatrix {
        self.scaled(-1.0)
    }
}

/// Tolerances shared by the numerical engines.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Relative residual norm at or below which a candidate counts as dependent.
    pub independence: f64,
    /// Relative Frobenius error allowed in certificate and membership checks.
    pub verify: f64,
    pub hermiticity: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            independence: 1e-9,
            verify: 1e-8,
            hermiticity: 1e-10,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("independence", self.independence),
            ("verify", self.verify),
            ("hermiticity", self.hermiticity),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidTolerance(format!(
                    "{name} must be strictly positive, got {v}"
                )));
            }
        }
        if self.independence >= 1.0 {
            return Err(Error::InvalidTolerance(format!(
                "independence must be below 1, got {}",
                self.independence
            )));
        }
        Ok(())
    }
}

/// Tensor product with `a` as the slow (left) factor.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    let n = na * nb;
    let mut out = ComplexMatrix::zeros(n);
    for ar in 0..na {
        for ac in 0..na {
            let x = a[(ar, ac)];
            if x.re == 0.0 && x.im == 0.0 {
                continue;
            }
            for br in 0..nb {
                for bc in 0..nb {
                    out.data[(ar * nb + br) * n + ac * nb + bc] = x * b[(br, bc)];
                }
            }
        }
    }
    out
}

pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_dims(a, b)?;
    Ok(a.bracket(b))
}

/// Real Hilbert–Schmidt inner product Re tr(a† b).
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    check_dims(a, b)?;
    Ok(a.hs_dot(b))
}

pub fn project_traceless(a: &ComplexMatrix) -> ComplexMatrix {
    let shift = a.trace() / a.dim as f64;
    let mut out = a.clone();
    for i in 0..a.dim {
        out[(i, i)] -= shift;
    }
    out
}

fn check_dims(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Insertion {
    Accepted { index: usize, residual: f64 },
    Rejected { residual: f64 },
}

impl Insertion {
    pub fn accepted(&self) -> bool {
        matches!(self, Insertion::Accepted { .. })
    }

    /// Relative residual of the candidate after projection.
    pub fn residual(&self) -> f64 {
        match *self {
            Insertion::Accepted { residual, .. } | Insertion::Rejected { residual } => residual,
        }
    }
}

/// Orthonormal set of traceless skew-Hermitian matrices under [`hs_inner`].
#[derive(Debug, Clone)]
pub struct OrthonormalBasis {
    dim: usize,
    elements: Vec<ComplexMatrix>,
}

impl OrthonormalBasis {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            elements: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    pub fn get(&self, index: usize) -> &ComplexMatrix {
        &self.elements[index]
    }

    /// Checks the insertion preconditions and returns the candidate norm.
    pub fn check_candidate(&self, candidate: &ComplexMatrix, tol: &ToleranceConfig) -> Result<f64> {
        if candidate.dim != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: candidate.dim,
            });
        }
        let norm = candidate.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::ZeroCandidate);
        }
        let deviation = candidate.skew_hermitian_deviation() / norm;
        if deviation > tol.hermiticity {
            return Err(Error::NotSkewHermitian { deviation });
        }
        let trace = candidate.trace().norm();
        if trace > tol.hermiticity * norm * (self.dim as f64).sqrt() {
            return Err(Error::NotTraceless { trace });
        }
        Ok(norm)
    }

    /// Modified Gram–Schmidt against `elements[range]`, followed by one full
    /// re-orthogonalization pass over the same range.
    pub fn reduce_range(&self, v: &mut ComplexMatrix, range: Range<usize>) {
        for _ in 0..2 {
            for e in &self.elements[range.clone()] {
                let c = e.hs_dot(v);
                if c != 0.0 {
                    v.axpy(-c, e);
                }
            }
        }
    }

    /// Appends an already reduced, unit-relative residual if it clears the
    /// independence threshold.
    pub fn push_reduced(&mut self, mut v: ComplexMatrix, tol: &ToleranceConfig) -> Insertion {
        let residual = v.norm();
        if residual > tol.independence {
            v.scale_in_place(1.0 / residual);
            self.elements.push(v);
            Insertion::Accepted {
                index: self.elements.len() - 1,
                residual,
            }
        } else {
            Insertion::Rejected { residual }
        }
    }

    /// Projects `candidate` off the current span and appends the normalized
    /// residual when its relative norm exceeds `tol.independence`.
    pub fn insert(&mut self, candidate: &ComplexMatrix, tol: &ToleranceConfig) -> Result<Insertion> {
        let norm = self.check_candidate(candidate, tol)?;
        let mut v = candidate.scaled(1.0 / norm);
        self.reduce_range(&mut v, 0..self.elements.len());
        Ok(self.push_reduced(v, tol))
    }

    /// Relative residual of `element` against the span (0 for the zero matrix).
    pub fn residual(&self, element: &ComplexMatrix) -> Result<f64> {
        if element.dim != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: element.dim,
            });
        }
        let norm = element.norm();
        if norm == 0.0 {
            return Ok(0.0);
        }
        let mut v = element.scaled(1.0 / norm);
        self.reduce_range(&mut v, 0..self.elements.len());
        Ok(v.norm())
    }

    /// Largest entrywise deviation of the Gram matrix from the identity.
    pub fn gram_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in self.elements.iter().enumerate().skip(i) {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.hs_dot(b) - target).abs());
            }
        }
        worst
    }
}
