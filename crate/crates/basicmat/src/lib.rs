//! Unique building blocks for normal matrices.
//!
//! A normal matrix factors into a product of commuting *basic* matrices
//! `I - E + alpha E`, one per distinct eigenvalue, each built on a symmetric
//! idempotent `E`; the product is unique apart from order. This crate
//! computes that factorization and everything that falls out of it:
//! powers, complete n-th root enumeration, Moore-Penrose pseudo-inverses,
//! the unique st-ordered rank-1 split of a symmetric idempotent, canonical
//! forms of density matrices, and a catalog of quantum logic gates with
//! their factorizations.

pub mod classify;
pub mod density;
pub mod eigen;
pub mod error;
pub mod factorization;
pub mod gates;
pub mod idempotent;
pub mod matrix;
pub mod tolerance;

pub use classify::{classify, StructureReport};
pub use density::{
    canonical_density, density_from_ensemble, density_pseudo_inverse, DensityCanonicalForm,
    DensityMatrix,
};
pub use eigen::{hermitian_eigen, normal_eigen, HermitianEigen, NormalEigen};
pub use error::Error;
pub use factorization::{
    all_nth_roots, canonical_equal, factor_normal, involution_idempotent, nth_root, power,
    pseudo_inverse, reconstruct, scaled_involution_idempotent, BasicFactor,
    CanonicalFactorization, RootSelector, DEFAULT_ROOT_CAP,
};
pub use gates::{
    build_from_frame, build_identity_root, gate, gate_names, Frame, GateParams, GateSpec,
};
pub use idempotent::{
    column_space_decomposition, decompose_pure, make_family, pure_from_vector, rank_of, st_index,
    OrthogonalFamily, PureDecomposition, SymmetricIdempotent,
};
pub use matrix::{cx, orthonormalize, ColumnVector, ComplexMatrix};
pub use tolerance::ToleranceModel;
