//! Mixed density matrices and their unique canonical form.
//!
//! A density matrix admits many ensemble presentations, but exactly one
//! expansion `sum_j p_j F_j` over distinct weights and orthogonal
//! eigenprojectors; splitting each projector into its st-ordered rank-1
//! parts pins the representation down completely.

use crate::error::Error;
use crate::factorization::{factor_normal, pseudo_inverse};
use crate::idempotent::{decompose_pure, PureDecomposition, SymmetricIdempotent};
use crate::matrix::{cx, ColumnVector, ComplexMatrix};
use crate::tolerance::ToleranceModel;

/// A validated density matrix: Hermitian, trace 1, positive semidefinite
/// up to `eps_cluster` of numerical slack below zero.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, tol: &ToleranceModel) -> Result<Self, Error> {
        matrix.require_square().map_err(|_| Error::NotDensity)?;
        if matrix.fro_distance(&matrix.adjoint()) > tol.eps_struct {
            return Err(Error::NotDensity);
        }
        if (matrix.trace().re - 1.0).abs() > tol.eps_struct
            || matrix.trace().im.abs() > tol.eps_struct
        {
            return Err(Error::NotDensity);
        }
        let eig = crate::eigen::hermitian_eigen(&matrix, tol).map_err(|_| Error::NotDensity)?;
        if eig.values.first().is_some_and(|&lo| lo < -tol.eps_cluster) {
            return Err(Error::NotDensity);
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }
}

/// The unique expansion of a density matrix: strictly decreasing weights,
/// one st-ordered block per eigenprojector, and the kernel projector.
#[derive(Debug, Clone)]
pub struct DensityCanonicalForm {
    pub weights: Vec<f64>,
    pub blocks: Vec<PureDecomposition>,
    pub residual: SymmetricIdempotent,
}

impl DensityCanonicalForm {
    /// `sum_j p_j rank(F_j)`, which must be 1 for a valid form.
    pub fn weight_rank_sum(&self) -> f64 {
        self.weights
            .iter()
            .zip(&self.blocks)
            .map(|(p, b)| p * b.parts.len() as f64)
            .sum()
    }

    /// Rebuild the density matrix from the form.
    pub fn reconstruct(&self, n: usize) -> ComplexMatrix {
        let mut acc = ComplexMatrix::zeros(n, n);
        for (p, block) in self.weights.iter().zip(&self.blocks) {
            acc = &acc + &block.sum().scale(cx(*p, 0.0));
        }
        acc
    }
}

/// Build a density matrix from an ensemble of weighted unit vectors.
/// Weights must be positive and sum to 1; the vectors need not be
/// orthogonal — only the resulting matrix is validated.
pub fn density_from_ensemble(
    pairs: &[(f64, ColumnVector)],
    tol: &ToleranceModel,
) -> Result<DensityMatrix, Error> {
    if pairs.is_empty() {
        return Err(Error::WeightsInvalid);
    }
    let total: f64 = pairs.iter().map(|(p, _)| p).sum();
    if pairs.iter().any(|(p, _)| *p <= 0.0) || (total - 1.0).abs() > tol.eps_cluster {
        return Err(Error::WeightsInvalid);
    }
    if pairs.iter().any(|(_, u)| !u.is_unit(tol)) {
        return Err(Error::NotUnit);
    }
    let n = pairs[0].1.dim();
    let mut acc = ComplexMatrix::zeros(n, n);
    for (p, u) in pairs {
        acc = &acc + &u.outer_self().scale(cx(*p, 0.0));
    }
    DensityMatrix::new(acc, tol)
}

/// Compute the canonical form: factor the matrix, read the distinct
/// weights off the eigenvalue clusters in descending order, split each
/// eigenprojector into its st-ordered rank-1 parts, and keep the kernel
/// projector separately. Eigenvalues within `eps_cluster` of zero fold
/// into the kernel.
pub fn canonical_density(
    rho: &DensityMatrix,
    tol: &ToleranceModel,
) -> Result<DensityCanonicalForm, Error> {
    let f = factor_normal(rho.matrix(), tol).map_err(|_| Error::NotDensity)?;
    let n = rho.size();

    let mut weighted: Vec<(f64, SymmetricIdempotent)> = Vec::new();
    let mut kernel = SymmetricIdempotent::zero(n);
    for factor in f.factors() {
        let p = factor.eigenvalue.re;
        if factor.eigenvalue.norm() == 0.0 {
            kernel = factor.idempotent.clone();
        } else if p > 0.0 {
            weighted.push((p, factor.idempotent.clone()));
        } else {
            return Err(Error::NotDensity);
        }
    }
    if !f.residual().is_zero() {
        weighted.push((1.0, f.residual().clone()));
    }
    weighted.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite weights"));

    let mut weights = Vec::with_capacity(weighted.len());
    let mut blocks = Vec::with_capacity(weighted.len());
    for (p, projector) in weighted {
        weights.push(p);
        blocks.push(decompose_pure(&projector, tol)?);
    }
    Ok(DensityCanonicalForm {
        weights,
        blocks,
        residual: kernel,
    })
}

/// Moore-Penrose pseudo-inverse of a density matrix: invert each weight on
/// its eigenprojector, annihilate the kernel.
pub fn density_pseudo_inverse(
    rho: &DensityMatrix,
    tol: &ToleranceModel,
) -> Result<ComplexMatrix, Error> {
    let f = factor_normal(rho.matrix(), tol).map_err(|_| Error::NotDensity)?;
    Ok(pseudo_inverse(&f))
}
