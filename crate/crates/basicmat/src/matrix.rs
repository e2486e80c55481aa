//! Dense complex matrices and column vectors.
//!
//! Row-major storage over `num_complex::Complex64`. Validated constructors
//! reject non-finite entries so the rest of the crate can assume clean data.

use num_complex::Complex64;
use std::ops::{Add, Mul, Sub};

use crate::error::Error;
use crate::tolerance::ToleranceModel;

/// Shorthand for building a complex scalar.
#[inline]
pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Dense row-major complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Validated constructor: positive dimensions, matching entry count,
    /// all entries finite.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self, Error> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        for (idx, e) in entries.iter().enumerate() {
            if !(e.re.is_finite() && e.im.is_finite()) {
                return Err(Error::NonFinite {
                    row: idx / cols,
                    col: idx % cols,
                });
            }
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Build entry-by-entry from a closure. Not validated; intended for
    /// matrices computed from already-validated inputs.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Square matrix from row slices of real entries.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        Self::from_fn(n, rows[0].len(), |i, j| cx(rows[i][j], 0.0))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Complex64::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Complex64::ONE } else { Complex64::ZERO })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Require a square matrix, naming the offender otherwise.
    pub fn require_square(&self) -> Result<usize, Error> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).conj())
    }

    /// Entrywise complex conjugate (no transpose).
    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.conj()).collect(),
        }
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * a).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn norm_fro(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Frobenius distance to another matrix of the same shape.
    pub fn fro_distance(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `(A + A*)/2`; exactly Hermitian, diagonal made exactly real.
    pub fn hermitize(&self) -> Self {
        assert!(self.is_square());
        Self::from_fn(self.rows, self.rows, |i, j| {
            if i == j {
                cx(self.get(i, i).re, 0.0)
            } else {
                (self.get(i, j) + self.get(j, i).conj()) * 0.5
            }
        })
    }

    pub fn column(&self, j: usize) -> ColumnVector {
        ColumnVector::from_entries((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    /// Columns of a submatrix range replaced by `block * rot` where `block`
    /// is the selected column range. Used to refine eigenvector blocks.
    pub fn rotate_columns(&mut self, start: usize, rot: &ComplexMatrix) {
        let k = rot.rows();
        assert_eq!(k, rot.cols());
        assert!(start + k <= self.cols);
        for i in 0..self.rows {
            let old: Vec<Complex64> = (0..k).map(|j| self.get(i, start + j)).collect();
            for j in 0..k {
                let mut acc = Complex64::ZERO;
                for (l, o) in old.iter().enumerate() {
                    acc += o * rot.get(l, j);
                }
                self.set(i, start + j, acc);
            }
        }
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(rhs.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = ComplexMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(l, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Complex column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnVector {
    entries: Vec<Complex64>,
}

impl ColumnVector {
    /// Validated constructor: nonempty, finite entries.
    pub fn new(entries: Vec<Complex64>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                got: 0,
            });
        }
        for (idx, e) in entries.iter().enumerate() {
            if !(e.re.is_finite() && e.im.is_finite()) {
                return Err(Error::NonFinite { row: idx, col: 0 });
            }
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_entries(entries: Vec<Complex64>) -> Self {
        Self { entries }
    }

    pub fn from_reals(entries: &[f64]) -> Self {
        Self {
            entries: entries.iter().map(|&r| cx(r, 0.0)).collect(),
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn get(&self, i: usize) -> Complex64 {
        self.entries[i]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `self* . other` (conjugate-linear in `self`).
    pub fn inner(&self, other: &ColumnVector) -> Complex64 {
        assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, a: Complex64) -> Self {
        Self {
            entries: self.entries.iter().map(|e| e * a).collect(),
        }
    }

    pub fn sub(&self, other: &ColumnVector) -> Self {
        assert_eq!(self.dim(), other.dim());
        Self {
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Rank-1 projector `v v*`.
    pub fn outer_self(&self) -> ComplexMatrix {
        let n = self.dim();
        ComplexMatrix::from_fn(n, n, |i, j| self.entries[i] * self.entries[j].conj())
    }

    /// True when the 2-norm is within `eps_struct` of 1.
    pub fn is_unit(&self, tol: &ToleranceModel) -> bool {
        (self.norm() - 1.0).abs() <= tol.eps_struct
    }
}

/// Modified Gram-Schmidt with one re-orthogonalization pass.
///
/// Output vectors are unit and pairwise orthogonal within `eps_struct`.
/// Inputs that are linearly dependent on earlier ones (residual norm after
/// projection below `eps_cluster` times the largest input norm) are dropped.
pub fn orthonormalize(vs: &[ColumnVector], tol: &ToleranceModel) -> Vec<ColumnVector> {
    if vs.is_empty() {
        return Vec::new();
    }
    let dim = vs[0].dim();
    assert!(vs.iter().all(|v| v.dim() == dim), "vectors must share a dimension");
    let max_norm = vs.iter().map(ColumnVector::norm).fold(0.0, f64::max);
    let drop_below = tol.eps_cluster * max_norm;

    let mut basis: Vec<ColumnVector> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        // two projection passes keep orthogonality near machine precision
        for _ in 0..2 {
            for b in &basis {
                let coeff = b.inner(&w);
                w = w.sub(&b.scale(coeff));
            }
        }
        let norm = w.norm();
        if norm <= drop_below {
            continue;
        }
        basis.push(w.scale(cx(1.0 / norm, 0.0)));
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceModel {
        ToleranceModel::default()
    }

    #[test]
    fn adjoint_is_involution() {
        let a = ComplexMatrix::new(
            2,
            3,
            vec![
                cx(1.0, 2.0),
                cx(0.0, -1.0),
                cx(3.0, 0.0),
                cx(-1.0, 1.0),
                cx(0.5, 0.5),
                cx(0.0, 0.0),
            ],
        )
        .unwrap();
        assert_eq!(a.adjoint().adjoint(), a);
    }

    #[test]
    fn adjoint_of_pauli_y_is_itself() {
        let y = ComplexMatrix::new(
            2,
            2,
            vec![cx(0.0, 0.0), cx(0.0, -1.0), cx(0.0, 1.0), cx(0.0, 0.0)],
        )
        .unwrap();
        assert_eq!(y.adjoint(), y);
    }

    #[test]
    fn adjoint_conjugates_scalars() {
        let a = ComplexMatrix::new(1, 1, vec![cx(1.0, 1.0)]).unwrap();
        assert_eq!(a.adjoint().get(0, 0), cx(1.0, -1.0));
        let id = ComplexMatrix::identity(4);
        assert_eq!(id.adjoint(), id);
    }

    #[test]
    fn rejects_non_finite_entries() {
        let err = ComplexMatrix::new(1, 2, vec![cx(1.0, 0.0), cx(f64::NAN, 0.0)]);
        assert_eq!(err, Err(Error::NonFinite { row: 0, col: 1 }));
    }

    #[test]
    fn rejects_empty_dimensions() {
        assert!(ComplexMatrix::new(0, 2, vec![]).is_err());
    }

    #[test]
    fn matmul_against_hand_product() {
        let a = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[3.0, 4.0]]);
        let b = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let ab = &a * &b;
        assert_eq!(ab, ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[4.0, 3.0]]));
    }

    #[test]
    fn orthonormalize_normalizes_orthogonal_inputs() {
        let v1 = ColumnVector::from_reals(&[1.0, 1.0]);
        let v2 = ColumnVector::from_reals(&[1.0, -1.0]);
        let basis = orthonormalize(&[v1, v2], &tol());
        assert_eq!(basis.len(), 2);
        let s = 1.0 / 2f64.sqrt();
        assert!((basis[0].get(0).re - s).abs() < 1e-15);
        assert!((basis[1].get(1).re + s).abs() < 1e-15);
        assert!(basis[0].inner(&basis[1]).norm() < 1e-15);
    }

    #[test]
    fn orthonormalize_drops_dependent_vector() {
        let v1 = ColumnVector::from_reals(&[1.0, 0.0]);
        let v2 = ColumnVector::from_reals(&[2.0, 0.0]);
        let basis = orthonormalize(&[v1, v2], &tol());
        assert_eq!(basis.len(), 1);
        assert!((basis[0].get(0).re - 1.0).abs() < 1e-15);
    }
}
