//! Structural classification of square matrices.

use crate::error::Error;
use crate::matrix::ComplexMatrix;
use crate::tolerance::ToleranceModel;

/// Structure flags for a square matrix. Downward-consistent: `unitary` or
/// `hermitian` forces `normal`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StructureReport {
    pub normal: bool,
    pub hermitian: bool,
    pub unitary: bool,
    pub symmetric_unitary: bool,
    pub idempotent: bool,
}

/// Classify a square matrix by its structural residuals:
///
/// * normal:     `|AA* - A*A|_F <= eps_struct * max(1, |A|_F^2)`
/// * hermitian:  `|A - A*|_F    <= eps_struct * max(1, |A|_F)`
/// * unitary:    `|AA* - I|_F   <= eps_struct * sqrt(n)`
/// * idempotent: `|A^2 - A|_F   <= eps_struct * max(1, |A|_F)`
pub fn classify(a: &ComplexMatrix, tol: &ToleranceModel) -> Result<StructureReport, Error> {
    let n = a.require_square()?;
    let adj = a.adjoint();
    let norm = a.norm_fro();

    let aa = a * &adj;
    let a_a = &adj * a;
    let normal_res = aa.fro_distance(&a_a);
    let hermitian_res = a.fro_distance(&adj);
    let unitary_res = aa.fro_distance(&ComplexMatrix::identity(n));
    let idem_res = (a * a).fro_distance(a);

    let hermitian = hermitian_res <= tol.eps_struct * norm.max(1.0);
    let unitary = unitary_res <= tol.eps_struct * (n as f64).sqrt();
    let normal =
        normal_res <= tol.eps_struct * (norm * norm).max(1.0) || hermitian || unitary;
    Ok(StructureReport {
        normal,
        hermitian,
        unitary,
        symmetric_unitary: hermitian && unitary,
        idempotent: idem_res <= tol.eps_struct * norm.max(1.0),
    })
}
