//! Symmetric idempotents (orthogonal projectors) and their unique
//! rank-1 decompositions.
//!
//! A symmetric idempotent of rank r splits as a sum of r rank-1 projectors
//! in many ways, but exactly one of those sums has strictly increasing
//! st-indices (leading-zero counts). `decompose_pure` computes it by
//! repeatedly projecting out the first nonzero column;
//! `column_space_decomposition` provides an independent route to the same
//! sum via an orthonormal basis of the column space.

use crate::error::Error;
use crate::matrix::{cx, orthonormalize, ColumnVector, ComplexMatrix};
use crate::tolerance::ToleranceModel;

/// A validated symmetric idempotent: `E^2 = E`, `E* = E`, trace within
/// tolerance of a nonnegative integer (its rank).
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricIdempotent {
    matrix: ComplexMatrix,
    rank: usize,
}

impl SymmetricIdempotent {
    /// Validate and wrap a matrix. Rejection happens here at the boundary
    /// so every operation downstream may assume the invariants.
    pub fn new(matrix: ComplexMatrix, tol: &ToleranceModel) -> Result<Self, Error> {
        let n = matrix.require_square()?;
        let norm = matrix.norm_fro();
        if matrix.fro_distance(&matrix.adjoint()) > tol.eps_struct {
            return Err(Error::NotIdempotent);
        }
        if (&matrix * &matrix).fro_distance(&matrix) > tol.eps_struct * norm.max(1.0) {
            return Err(Error::NotIdempotent);
        }
        let trace = matrix.trace().re;
        let rank = trace.round();
        if (trace - rank).abs() > tol.eps_cluster * n as f64 || rank < 0.0 {
            return Err(Error::TraceNotInteger { trace });
        }
        Ok(Self {
            matrix,
            rank: rank as usize,
        })
    }

    /// The zero projector, vacuously idempotent.
    pub fn zero(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::zeros(n, n),
            rank: 0,
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }
}

/// The unique st-ordered sum of rank-1 projectors.
#[derive(Debug, Clone)]
pub struct PureDecomposition {
    pub parts: Vec<SymmetricIdempotent>,
    pub st_indices: Vec<usize>,
}

impl PureDecomposition {
    pub fn sum(&self) -> ComplexMatrix {
        let n = self
            .parts
            .first()
            .map(SymmetricIdempotent::size)
            .unwrap_or(0);
        let mut acc = ComplexMatrix::zeros(n.max(1), n.max(1));
        for p in &self.parts {
            acc = &acc + p.matrix();
        }
        acc
    }
}

/// Mutually orthogonal idempotents together with the projector completing
/// them to the identity. `complete` is set when the member ranks already
/// sum to the full dimension, making the residual exactly zero.
#[derive(Debug, Clone)]
pub struct OrthogonalFamily {
    pub members: Vec<SymmetricIdempotent>,
    pub residual: SymmetricIdempotent,
    pub complete: bool,
}

impl OrthogonalFamily {
    pub fn size(&self) -> usize {
        self.residual.size()
    }
}

/// Rank-1 projector `u u*` from a unit vector.
pub fn pure_from_vector(
    u: &ColumnVector,
    tol: &ToleranceModel,
) -> Result<SymmetricIdempotent, Error> {
    if !u.is_unit(tol) {
        return Err(Error::NotUnit);
    }
    SymmetricIdempotent::new(u.outer_self(), tol)
}

/// Rank of a symmetric idempotent: the rounded real trace. Exact for valid
/// inputs, O(n), and never touches an SVD.
pub fn rank_of(e: &SymmetricIdempotent) -> usize {
    e.rank()
}

/// Number of leading zero entries of a vector; entries with modulus at or
/// below `eps_struct` count as zero. For `E = u u*` this equals the number
/// of leading zero rows and columns of `E`.
pub fn st_index(v: &ColumnVector, tol: &ToleranceModel) -> Result<usize, Error> {
    let leading = v
        .entries()
        .iter()
        .take_while(|e| e.norm() <= tol.eps_struct)
        .count();
    if leading == v.dim() {
        return Err(Error::ZeroVector);
    }
    Ok(leading)
}

/// Split a symmetric idempotent into its unique st-ordered rank-1 parts.
///
/// Loop: take the first nonzero column `v` of the running residual,
/// emit `(v/|v|)(v/|v|)*`, subtract, repeat until the residual vanishes.
/// The residual is re-validated as an idempotent on every pass; a failure
/// means the input was not a clean idempotent and aborts loudly instead of
/// emitting garbage parts.
pub fn decompose_pure(
    e: &SymmetricIdempotent,
    tol: &ToleranceModel,
) -> Result<PureDecomposition, Error> {
    let n = e.size();
    let scale = e.matrix().norm_fro().max(1.0);
    let column_floor = tol.eps_cluster * scale;
    let idem_floor = 10.0 * tol.eps_struct * scale;

    let mut residual = e.matrix().clone();
    let mut parts: Vec<SymmetricIdempotent> = Vec::new();
    let mut st_indices: Vec<usize> = Vec::new();

    loop {
        let col = (0..n).find(|&j| column_norm(&residual, j) > column_floor);
        let Some(j) = col else { break };
        if parts.len() == n {
            return Err(Error::MaxIterations);
        }
        if (&residual * &residual).fro_distance(&residual) > idem_floor {
            return Err(Error::NotIdempotent);
        }
        if let Some(&last) = st_indices.last() {
            if j <= last {
                // st-indices must strictly increase for a true idempotent
                return Err(Error::NotIdempotent);
            }
        }
        let v = residual.column(j);
        let u = v.scale(cx(1.0 / v.norm(), 0.0));
        let part = u.outer_self();
        residual = &residual - &part;
        parts.push(SymmetricIdempotent::new(part, tol)?);
        st_indices.push(j);
    }

    if parts.len() != e.rank() {
        return Err(Error::NotIdempotent);
    }
    Ok(PureDecomposition { parts, st_indices })
}

/// Rank-1 projectors over an orthonormal basis of the column space.
///
/// The parts generally differ from `decompose_pure`'s, but both sums equal
/// `E`; that makes this the independent cross-check for the st-ordered
/// route.
pub fn column_space_decomposition(
    e: &SymmetricIdempotent,
    tol: &ToleranceModel,
) -> Result<Vec<SymmetricIdempotent>, Error> {
    let n = e.size();
    let columns: Vec<ColumnVector> = (0..n).map(|j| e.matrix().column(j)).collect();
    let basis = orthonormalize(&columns, tol);
    basis
        .iter()
        .map(|b| SymmetricIdempotent::new(b.outer_self(), tol))
        .collect()
}

/// Assemble an orthogonal family, computing the completing residual
/// `I - sum(members)` and checking the rank bookkeeping.
pub fn make_family(
    members: Vec<SymmetricIdempotent>,
    tol: &ToleranceModel,
) -> Result<OrthogonalFamily, Error> {
    let n = match members.first() {
        Some(m) => m.size(),
        None => return Err(Error::LengthMismatch),
    };
    if members.iter().any(|m| m.size() != n) {
        return Err(Error::LengthMismatch);
    }
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            let prod = members[i].matrix() * members[j].matrix();
            if prod.norm_fro() > tol.eps_struct {
                return Err(Error::NotOrthogonal { i, j });
            }
        }
    }
    let rank_sum: usize = members.iter().map(SymmetricIdempotent::rank).sum();
    if rank_sum > n {
        return Err(Error::RankOverflow {
            sum: rank_sum,
            size: n,
        });
    }
    let complete = rank_sum == n;
    let residual = if complete {
        SymmetricIdempotent::zero(n)
    } else {
        let mut acc = ComplexMatrix::identity(n);
        for m in &members {
            acc = &acc - m.matrix();
        }
        SymmetricIdempotent::new(acc, tol)?
    };
    Ok(OrthogonalFamily {
        members,
        residual,
        complete,
    })
}

fn column_norm(m: &ComplexMatrix, j: usize) -> f64 {
    (0..m.rows())
        .map(|i| m.get(i, j).norm_sqr())
        .sum::<f64>()
        .sqrt()
}
