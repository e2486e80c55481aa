//! Catalog of quantum logic gates with their published basic-matrix
//! factorizations, plus builders that assemble normal matrices from
//! orthonormal frames and from roots of the identity.
//!
//! Each gate lives behind the [`GateBuilder`] trait and is registered by
//! name, so front ends can select gates at runtime; `gate("swap", ...)` is
//! the only lookup path.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::classify::classify;
use crate::error::Error;
use crate::factorization::CanonicalFactorization;
use crate::idempotent::OrthogonalFamily;
use crate::matrix::{cx, ColumnVector, ComplexMatrix};
use crate::tolerance::ToleranceModel;

/// Named real parameters for parametric gates (currently just `theta`).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GateParams(BTreeMap<String, f64>);

impl GateParams {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: f64) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn get(&self, name: &str) -> Option<f64> {
        self.0.get(name).copied()
    }

    fn require(&self, name: &str) -> Result<f64, Error> {
        self.get(name).ok_or_else(|| Error::MissingParameter {
            name: name.to_string(),
        })
    }
}

/// A catalog gate: its unitary matrix and the published factorization that
/// reconstructs it.
#[derive(Debug, Clone)]
pub struct GateSpec {
    pub name: String,
    pub parameters: GateParams,
    pub matrix: ComplexMatrix,
    pub published_factorization: CanonicalFactorization,
}

/// One gate variant: builds its matrix and published factorization from
/// runtime parameters.
pub trait GateBuilder: Send + Sync {
    fn name(&self) -> &'static str;

    /// Parameter names the gate requires.
    fn parameters(&self) -> &'static [&'static str] {
        &[]
    }

    fn build(&self, params: &GateParams, tol: &ToleranceModel) -> Result<GateSpec, Error>;
}

/// Look up a gate by name and build it.
pub fn gate(name: &str, params: &GateParams, tol: &ToleranceModel) -> Result<GateSpec, Error> {
    match registry().get(name) {
        Some(builder) => builder.build(params, tol),
        None => Err(Error::UnknownGate {
            name: name.to_string(),
        }),
    }
}

/// The stable public gate identifiers, sorted.
pub fn gate_names() -> Vec<&'static str> {
    registry().keys().copied().collect()
}

fn registry() -> &'static BTreeMap<&'static str, Box<dyn GateBuilder>> {
    static REGISTRY: OnceLock<BTreeMap<&'static str, Box<dyn GateBuilder>>> = OnceLock::new();
    REGISTRY.get_or_init(|| {
        let builders: Vec<Box<dyn GateBuilder>> = vec![
            Box::new(Hadamard),
            Box::new(PauliX),
            Box::new(PauliY),
            Box::new(PauliZ),
            Box::new(Phase),
            Box::new(Not),
            Box::new(SqrtNot),
            Box::new(Swap),
            Box::new(SqrtSwap),
            Box::new(Cnot),
            Box::new(Bell),
            Box::new(Rotation),
        ];
        builders.into_iter().map(|b| (b.name(), b)).collect()
    })
}

/// Assemble a `GateSpec`, checking that the published factorization
/// reconstructs the gate matrix.
fn spec(
    name: &str,
    parameters: GateParams,
    matrix: ComplexMatrix,
    parts: Vec<(Complex64, ComplexMatrix)>,
    tol: &ToleranceModel,
) -> Result<GateSpec, Error> {
    let n = matrix.rows();
    let hint = classify(&matrix, tol)?;
    let published = CanonicalFactorization::from_parts(n, parts, hint, tol)?;
    debug_assert!(
        crate::factorization::reconstruct(&published).fro_distance(&matrix) <= tol.eps_struct,
        "catalog factorization must reconstruct the gate matrix"
    );
    Ok(GateSpec {
        name: name.to_string(),
        parameters,
        matrix,
        published_factorization: published,
    })
}

fn half_block_projector(n: usize, i: usize, j: usize, sign: f64) -> ComplexMatrix {
    // projector with (1/2)[[1, sign], [sign, 1]] on rows/cols {i, j}
    let mut m = ComplexMatrix::zeros(n, n);
    m.set(i, i, cx(0.5, 0.0));
    m.set(j, j, cx(0.5, 0.0));
    m.set(i, j, cx(0.5 * sign, 0.0));
    m.set(j, i, cx(0.5 * sign, 0.0));
    m
}

fn rotation_projectors() -> (ComplexMatrix, ComplexMatrix) {
    // (1/2)[[1, -i], [i, 1]] for e^{i theta}, its conjugate for e^{-i theta}
    let e1 = ComplexMatrix::new(
        2,
        2,
        vec![cx(0.5, 0.0), cx(0.0, -0.5), cx(0.0, 0.5), cx(0.5, 0.0)],
    )
    .expect("const projector");
    let e2 = e1.conj();
    (e1, e2)
}

struct Hadamard;

impl GateBuilder for Hadamard {
    fn name(&self) -> &'static str {
        "hadamard"
    }

    fn build(&self, _params: &GateParams, tol: &ToleranceModel) -> Result<GateSpec, Error> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let matrix = ComplexMatrix::from_real_rows(&[&[s, s], &[s, -s]]);
        let e = ComplexMatrix::from_real_rows(&[
            &[0.5 * (1.0 - s), -0.5 * s],
            &[-0.5 * s, 0.5 * (1.0 + s)],
        ]);
        spec(self.name(), GateParams::new(), matrix, vec![(cx(-1.0, 0.0), e)], tol)
    }
}

struct PauliX;

impl GateBuilder for PauliX {
    fn name(&self) -> &'static str {
        "pauli_x"
    }

    fn build(&self, _params: &GateParams, tol: &ToleranceModel) -> Result<GateSpec, Error> {
        let matrix = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let e = half_block_projector(2, 0, 1, -1.0);
        spec(self.name(), GateParams::new(), matrix, vec![(cx(-1.0, 0.0), e)], tol)
    }
}

struct PauliY;

impl GateBuilder for PauliY {
    fn name(&self) -> &'static str {
        "pauli_y"
    }

    fn build(&self, _params: &GateParams, tol: &ToleranceModel) -> Result<GateSpec, Error> {
        let matrix = ComplexMatrix::new(
            2,
            2,
            vec![cx(0.0, 0.0), cx(0.0, -1.0), cx(0.0, 1.0), cx(0.0, 0.0)],
        )
        .expect("const matrix");
        let e = ComplexMatrix::new(
            2,
            2,
            vec![cx(0.5, 0.0), cx(0.0, 0.5), cx(0.0, -0.5), cx(0.5, 0.0)],
        )
        .expect("const matrix");
        spec(self.name(), GateParams::new(), matrix, vec![(cx(-1.0, 0.0), e)], tol)
    }
}

struct PauliZ;

impl GateBuilder for PauliZ {
    fn name(&self) -> &'static str {
        "pauli_z"
    }

    fn build(&self, _params: &GateParams, tol: &ToleranceModel) -> Result<GateSpec, Error> {
        let matrix = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, -1.0]]);
        let e = ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[0.0, 1.0]]);
        spec(self.name(), GateParams::new(), matrix, vec![(cx(-1.0, 0.0), e)], tol)
    }
}

struct Phase;

impl GateBuilder for Phase {
    fn name(&self) -> &'static str {
        "phase"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["theta"]
    }

    fn build(&self, params: &GateParams, tol: &ToleranceModel) -> Result<GateSpec, Error> {
        let theta = params.require("theta")?;
        let alpha = Complex64::from_polar(1.0, theta);
        let matrix = ComplexMatrix::new(
            2,
            2,
            vec![cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), alpha],
        )
        .expect("const matrix");
        let e = ComplexMatrix::from_real_rows(&[&[0.0, 0.0], &[0.0, 1.0]]);
        spec(
            self.name(),
            GateParams::new().with("theta", theta),
            matrix,
            vec![(alpha, e)],
            tol,
        )
    }
}

/// Same matrix as `pauli_x`: the logical NOT is catalogued under both
/// names.
struct Not;

impl GateBuilder for Not {
    fn name(&self) -> &'static str {
        "not"
    }

    fn build(&self, params: &GateParams, tol: &ToleranceModel) -> Result<GateSpec, Error> {
        let mut s = PauliX.build(params, tol)?;
        s.name = self.name().to_string();
        Ok(s)
    }
}

struct SqrtNot;

impl GateBuilder for SqrtNot {
    fn name(&self) -> &'static str {
        "sqrt_not"
    }

    fn build(&self, _params: &GateParams, tol: &ToleranceModel) -> Result<GateSpec, Error> {
        let matrix = ComplexMatrix::new(
            2,
            2,
            vec![cx(0.5, 0.5), cx(0.5, -0.5), cx(0.5, -0.5), cx(0.5, 0.5)],
        )
        .expect("const matrix");
        let e = half_block_projector(2, 0, 1, -1.0);
        spec(self.name(), GateParams::new(), matrix, vec![(cx(0.0, 1.0), e)], tol)
    }
}

struct Swap;

impl GateBuilder for Swap {
    fn name(&self) -> &'static str {
        "swap"
    }

    fn build(&self, _params: &GateParams, tol: &ToleranceModel) -> Result<GateSpec, Error> {
        let matrix = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
        ]);
        let e = half_block_projector(4, 1, 2, -1.0);
        spec(self.name(), GateParams::new(), matrix, vec![(cx(-1.0, 0.0), e)], tol)
    }
}

struct SqrtSwap;

impl GateBuilder for SqrtSwap {
    fn name(&self) -> &'static str {
        "sqrt_swap"
    }

    fn build(&self, _params: &GateParams, tol: &ToleranceModel) -> Result<GateSpec, Error> {
        let h = cx(0.5, 0.5);
        let g = cx(0.5, -0.5);
        let matrix = ComplexMatrix::new(
            4,
            4,
            vec![
                cx(1.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0),
                cx(0.0, 0.0), h, g, cx(0.0, 0.0),
                cx(0.0, 0.0), g, h, cx(0.0, 0.0),
                cx(0.0, 0.0), cx(0.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0),
            ],
        )
        .expect("const matrix");
        let e = half_block_projector(4, 1, 2, -1.0);
        spec(self.name(), GateParams::new(), matrix, vec![(cx(0.0, 1.0), e)], tol)
    }
}

struct Cnot;

impl GateBuilder for Cnot {
    fn name(&self) -> &'static str {
        "cnot"
    }

    fn build(&self, _params: &GateParams, tol: &ToleranceModel) -> Result<GateSpec, Error> {
        let matrix = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
        ]);
        let e = half_block_projector(4, 2, 3, -1.0);
        spec(self.name(), GateParams::new(), matrix, vec![(cx(-1.0, 0.0), e)], tol)
    }
}

/// The non-symmetric 2x2 rotation generator with eigenvalues +-i.
struct Bell;

impl GateBuilder for Bell {
    fn name(&self) -> &'static str {
        "bell"
    }

    fn build(&self, _params: &GateParams, tol: &ToleranceModel) -> Result<GateSpec, Error> {
        let matrix = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        let (f, e) = rotation_projectors();
        // eigenvalue +i rides on (1/2)[[1,-i],[i,1]], -i on its conjugate
        spec(
            self.name(),
            GateParams::new(),
            matrix,
            vec![(cx(0.0, 1.0), f), (cx(0.0, -1.0), e)],
            tol,
        )
    }
}

struct Rotation;

impl GateBuilder for Rotation {
    fn name(&self) -> &'static str {
        "rotation"
    }

    fn parameters(&self) -> &'static [&'static str] {
        &["theta"]
    }

    fn build(&self, params: &GateParams, tol: &ToleranceModel) -> Result<GateSpec, Error> {
        let theta = params.require("theta")?;
        let matrix = ComplexMatrix::from_real_rows(&[
            &[theta.cos(), theta.sin()],
            &[-theta.sin(), theta.cos()],
        ]);
        let (e1, e2) = rotation_projectors();
        spec(
            self.name(),
            GateParams::new().with("theta", theta),
            matrix,
            vec![
                (Complex64::from_polar(1.0, theta), e1),
                (Complex64::from_polar(1.0, -theta), e2),
            ],
            tol,
        )
    }
}

/// Orthonormal vectors paired with the eigenvalues to hang on them.
#[derive(Debug, Clone)]
pub struct Frame {
    vectors: Vec<ColumnVector>,
    alphas: Vec<Complex64>,
}

impl Frame {
    /// Validate unit norms, pairwise orthogonality, and alignment.
    pub fn new(
        vectors: Vec<ColumnVector>,
        alphas: Vec<Complex64>,
        tol: &ToleranceModel,
    ) -> Result<Self, Error> {
        if vectors.len() != alphas.len() {
            return Err(Error::LengthMismatch);
        }
        if let Some(first) = vectors.first() {
            let dim = first.dim();
            if vectors.iter().any(|v| v.dim() != dim) {
                return Err(Error::LengthMismatch);
            }
            if vectors.len() > dim {
                return Err(Error::NotOrthonormal);
            }
            for (i, v) in vectors.iter().enumerate() {
                if !v.is_unit(tol) {
                    return Err(Error::NotOrthonormal);
                }
                for w in vectors.iter().skip(i + 1) {
                    if v.inner(w).norm() > tol.eps_struct {
                        return Err(Error::NotOrthonormal);
                    }
                }
            }
        }
        Ok(Self { vectors, alphas })
    }

    pub fn vectors(&self) -> &[ColumnVector] {
        &self.vectors
    }

    pub fn alphas(&self) -> &[Complex64] {
        &self.alphas
    }
}

/// Build the factorization `prod (I - u_i u_i* + alpha_i u_i u_i*)` from a
/// frame. Equal eigenvalues amalgamate into one factor; eigenvalue-1 mass
/// joins the residual. The result is unitary exactly when every alpha has
/// unit modulus.
pub fn build_from_frame(
    frame: &Frame,
    dim: usize,
    tol: &ToleranceModel,
) -> Result<CanonicalFactorization, Error> {
    if let Some(first) = frame.vectors().first() {
        if first.dim() != dim {
            return Err(Error::LengthMismatch);
        }
    }
    let parts: Vec<(Complex64, ComplexMatrix)> = frame
        .alphas()
        .iter()
        .zip(frame.vectors())
        .map(|(&alpha, v)| (alpha, v.outer_self()))
        .collect();
    let hint = classify(&sum_with_complement(dim, &parts), tol)?;
    CanonicalFactorization::from_parts(dim, parts, hint, tol)
}

/// Build an n-th root of the identity from an orthogonal family: factor
/// `j` carries `e^{i 2 pi r_j / n}` with `1 <= r_j <= n-1`.
pub fn build_identity_root(
    family: &OrthogonalFamily,
    exponents: &[u32],
    n: u32,
    tol: &ToleranceModel,
) -> Result<CanonicalFactorization, Error> {
    if exponents.len() != family.members.len() {
        return Err(Error::LengthMismatch);
    }
    for &r in exponents {
        if r == 0 || r >= n {
            return Err(Error::ExponentOutOfRange {
                value: r,
                max: n.saturating_sub(1),
            });
        }
    }
    let tau = std::f64::consts::TAU;
    let parts: Vec<(Complex64, ComplexMatrix)> = exponents
        .iter()
        .zip(&family.members)
        .map(|(&r, e)| {
            (
                Complex64::from_polar(1.0, tau * r as f64 / n as f64),
                e.matrix().clone(),
            )
        })
        .collect();
    let size = family.size();
    let hint = classify(&sum_with_complement(size, &parts), tol)?;
    CanonicalFactorization::from_parts(size, parts, hint, tol)
}

fn sum_with_complement(n: usize, parts: &[(Complex64, ComplexMatrix)]) -> ComplexMatrix {
    let mut acc = ComplexMatrix::identity(n);
    for (alpha, e) in parts {
        acc = &(&acc - e) + &e.scale(*alpha);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{canonical_equal, factor_normal, reconstruct};
    use crate::idempotent::{make_family, pure_from_vector};

    fn tol() -> ToleranceModel {
        ToleranceModel::default()
    }

    #[test]
    fn pauli_z_catalog_entry() {
        let g = gate("pauli_z", &GateParams::new(), &tol()).unwrap();
        assert_eq!(g.matrix.get(1, 1), cx(-1.0, 0.0));
        let f = &g.published_factorization;
        assert_eq!(f.factors().len(), 1);
        assert_eq!(f.factors()[0].idempotent.matrix().get(1, 1), cx(1.0, 0.0));
        assert!(reconstruct(f).fro_distance(&g.matrix) < 1e-15);
    }

    #[test]
    fn phase_gate_quarter_turn() {
        let g = gate(
            "phase",
            &GateParams::new().with("theta", std::f64::consts::FRAC_PI_2),
            &tol(),
        )
        .unwrap();
        assert!((g.matrix.get(1, 1) - cx(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(g.published_factorization.factors().len(), 1);
    }

    #[test]
    fn rotation_zero_is_identity() {
        let g = gate("rotation", &GateParams::new().with("theta", 0.0), &tol()).unwrap();
        assert!(g.published_factorization.factors().is_empty());
        assert_eq!(g.published_factorization.residual().rank(), 2);
    }

    #[test]
    fn unknown_gate_and_missing_parameter() {
        assert_eq!(
            gate("toffoli", &GateParams::new(), &tol()).err(),
            Some(Error::UnknownGate {
                name: "toffoli".into()
            })
        );
        assert_eq!(
            gate("phase", &GateParams::new(), &tol()).err(),
            Some(Error::MissingParameter {
                name: "theta".into()
            })
        );
    }

    #[test]
    fn every_catalog_gate_reconstructs_and_cross_checks() {
        let t = tol();
        let theta = std::f64::consts::PI / 5.0;
        for name in gate_names() {
            let params = GateParams::new().with("theta", theta);
            let g = gate(name, &params, &t).unwrap();
            assert!(
                reconstruct(&g.published_factorization).fro_distance(&g.matrix) < 1e-12,
                "{name} catalog reconstruction"
            );
            let direct = factor_normal(&g.matrix, &t).unwrap();
            assert!(
                canonical_equal(&direct, &g.published_factorization, &t),
                "{name} catalog vs direct factorization"
            );
        }
    }

    #[test]
    fn frame_of_one_vector_rebuilds_pauli_x() {
        let s = 1.0 / 2f64.sqrt();
        let v = ColumnVector::from_reals(&[s, -s]);
        let frame = Frame::new(vec![v], vec![cx(-1.0, 0.0)], &tol()).unwrap();
        let f = build_from_frame(&frame, 2, &tol()).unwrap();
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!(reconstruct(&f).fro_distance(&x) < 1e-14);
    }

    #[test]
    fn empty_frame_builds_identity() {
        let frame = Frame::new(vec![], vec![], &tol()).unwrap();
        let f = build_from_frame(&frame, 3, &tol()).unwrap();
        assert!(f.factors().is_empty());
        assert!(reconstruct(&f).fro_distance(&ComplexMatrix::identity(3)) < 1e-15);
    }

    #[test]
    fn frame_rejects_skewed_vectors() {
        let v1 = ColumnVector::from_reals(&[1.0, 0.0]);
        let v2 = ColumnVector::from_reals(&[0.8, 0.6]);
        assert_eq!(
            Frame::new(vec![v1, v2], vec![cx(1.0, 0.0); 2], &tol()).err(),
            Some(Error::NotOrthonormal)
        );
    }

    #[test]
    fn four_vector_frame_amalgamates_alphas() {
        let vs: Vec<ColumnVector> = [
            [1.0, 1.0, 1.0, -1.0],
            [1.0, 1.0, -1.0, 1.0],
            [1.0, -1.0, 1.0, 1.0],
            [-1.0, 1.0, 1.0, 1.0],
        ]
        .iter()
        .map(|r| ColumnVector::from_reals(&r.map(|x| x / 2.0)))
        .collect();
        let alphas = vec![cx(0.0, 1.0), cx(0.0, 1.0), cx(-1.0, 0.0), cx(1.0, 0.0)];
        let frame = Frame::new(vs, alphas, &tol()).unwrap();
        let f = build_from_frame(&frame, 4, &tol()).unwrap();
        assert_eq!(f.factors().len(), 2);
        let ranks: Vec<(Complex64, usize)> = f
            .factors()
            .iter()
            .map(|x| (x.eigenvalue, x.rank()))
            .collect();
        assert!(ranks.iter().any(|(a, r)| (a - cx(0.0, 1.0)).norm() < 1e-12 && *r == 2));
        assert!(ranks.iter().any(|(a, r)| (a - cx(-1.0, 0.0)).norm() < 1e-12 && *r == 1));
        assert_eq!(f.residual().rank(), 1);
        // closes under refactorization
        let again = factor_normal(&reconstruct(&f), &tol()).unwrap();
        assert!(canonical_equal(&f, &again, &tol()));
    }

    #[test]
    fn identity_root_from_single_projector() {
        let e = pure_from_vector(
            &ColumnVector::from_reals(&[1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt()]),
            &tol(),
        )
        .unwrap();
        let family = make_family(vec![e], &tol()).unwrap();
        let f = build_identity_root(&family, &[1], 2, &tol()).unwrap();
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        assert!(reconstruct(&f).fro_distance(&x) < 1e-14);
    }

    #[test]
    fn identity_root_rejects_zero_exponent() {
        let e = pure_from_vector(&ColumnVector::from_reals(&[1.0, 0.0]), &tol()).unwrap();
        let family = make_family(vec![e], &tol()).unwrap();
        assert_eq!(
            build_identity_root(&family, &[0], 4, &tol()).err(),
            Some(Error::ExponentOutOfRange { value: 0, max: 3 })
        );
        let e2 = pure_from_vector(&ColumnVector::from_reals(&[1.0, 0.0]), &tol()).unwrap();
        let family2 = make_family(vec![e2], &tol()).unwrap();
        assert_eq!(
            build_identity_root(&family2, &[4], 4, &tol()).err(),
            Some(Error::ExponentOutOfRange { value: 4, max: 3 })
        );
    }

    #[test]
    fn fourth_root_family_from_hadamard_basis() {
        let vs: Vec<ColumnVector> = [
            [1.0, 1.0, 1.0, -1.0],
            [1.0, 1.0, -1.0, 1.0],
            [1.0, -1.0, 1.0, 1.0],
            [-1.0, 1.0, 1.0, 1.0],
        ]
        .iter()
        .map(|r| ColumnVector::from_reals(&r.map(|x| x / 2.0)))
        .collect();
        let members: Vec<_> = vs
            .iter()
            .map(|v| pure_from_vector(v, &tol()).unwrap())
            .collect();
        let family = make_family(members, &tol()).unwrap();
        assert!(family.complete);
        let f = build_identity_root(&family, &[1, 2, 3, 1], 4, &tol()).unwrap();
        let u = reconstruct(&f);
        let mut u4 = ComplexMatrix::identity(4);
        for _ in 0..4 {
            u4 = &u4 * &u;
        }
        assert!(u4.fro_distance(&ComplexMatrix::identity(4)) < 1e-13);
        assert!(classify(&u, &tol()).unwrap().unitary);
    }
}
