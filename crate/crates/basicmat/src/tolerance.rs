//! Residual and clustering tolerances.

use crate::error::Error;

/// Tolerance pair threaded through every validating operation.
///
/// `eps_struct` bounds structural residuals (Hermitian symmetry,
/// idempotency, unitarity, reconstruction). `eps_cluster` decides when two
/// eigenvalues count as the same one and when a column counts as zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceModel {
    pub eps_struct: f64,
    pub eps_cluster: f64,
}

impl ToleranceModel {
    /// Build a model, enforcing `0 < eps_struct < eps_cluster < 1`.
    pub fn new(eps_struct: f64, eps_cluster: f64) -> Result<Self, Error> {
        if !(eps_struct > 0.0 && eps_struct < eps_cluster && eps_cluster < 1.0) {
            return Err(Error::InvalidTolerance);
        }
        Ok(Self {
            eps_struct,
            eps_cluster,
        })
    }
}

impl Default for ToleranceModel {
    /// Double-precision Jacobi leaves residuals near 1e-14; these margins
    /// absorb growth with matrix size.
    fn default() -> Self {
        Self {
            eps_struct: 1e-10,
            eps_cluster: 1e-7,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        let t = ToleranceModel::default();
        assert!(ToleranceModel::new(t.eps_struct, t.eps_cluster).is_ok());
    }

    #[test]
    fn rejects_inverted_pair() {
        assert_eq!(
            ToleranceModel::new(1e-7, 1e-10),
            Err(Error::InvalidTolerance)
        );
        assert_eq!(ToleranceModel::new(0.0, 1e-7), Err(Error::InvalidTolerance));
        assert_eq!(ToleranceModel::new(1e-3, 1.5), Err(Error::InvalidTolerance));
    }
}
