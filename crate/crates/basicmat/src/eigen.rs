//! Eigendecomposition of Hermitian and normal matrices.
//!
//! Hermitian matrices are diagonalized by cyclic Jacobi rotations with
//! complex phase, the plane-rotation analogue of the classic real symmetric
//! sweep. A general normal matrix `B` is split into its commuting Hermitian
//! parts `H1 = (B + B*)/2` and `H2 = (B - B*)/(2i)`; `H1` is diagonalized
//! first, then inside each eigenvalue cluster of `H1` the restriction of
//! `H2` is diagonalized, recursing with the roles swapped until every
//! restriction is scalar. This stays inside Hermitian Jacobi territory and
//! exploits normality the same way the underlying theory does.

use num_complex::Complex64;

use crate::classify::classify;
use crate::error::Error;
use crate::matrix::{cx, ComplexMatrix};
use crate::tolerance::ToleranceModel;

/// Eigensystem of a Hermitian matrix: real eigenvalues sorted ascending,
/// eigenvectors as the columns of a unitary matrix, aligned by index.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

/// Eigensystem of a normal matrix: complex eigenvalues sorted by
/// `(re, im)`, orthonormal eigenvector columns aligned by index.
#[derive(Debug, Clone)]
pub struct NormalEigen {
    pub values: Vec<Complex64>,
    pub vectors: ComplexMatrix,
}

/// Sweep cap; exceeding it reports `NoConvergence` rather than returning a
/// partial answer. Jacobi converges quadratically, so well-conditioned
/// inputs finish in well under ten sweeps.
const MAX_SWEEPS: usize = 30;

/// Off-diagonal mass must fall below this multiple of the Frobenius norm.
const CONV_FACTOR: f64 = 1e-14;

/// Eigenvalue gap (relative to scale) below which two eigenvalues of a
/// Hermitian part are treated as one cluster during the normal split.
/// Roughly sqrt(machine epsilon): past that point the data cannot say
/// whether the pair is degenerate, and the co-diagonalization recursion
/// resolves whatever structure remains.
const SPLIT_FACTOR: f64 = 1e-8;

const MAX_REFINE_DEPTH: usize = 4;

/// Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.
pub fn hermitian_eigen(h: &ComplexMatrix, tol: &ToleranceModel) -> Result<HermitianEigen, Error> {
    let report = classify(h, tol)?;
    if !report.hermitian {
        return Err(Error::NotHermitian);
    }
    let (values, vectors) = jacobi_sorted(h)?;
    Ok(HermitianEigen { values, vectors })
}

/// Diagonalize a normal matrix via its commuting Hermitian parts.
pub fn normal_eigen(b: &ComplexMatrix, tol: &ToleranceModel) -> Result<NormalEigen, Error> {
    let report = classify(b, tol)?;
    if !report.normal {
        return Err(Error::NotNormal);
    }
    let n = b.rows();

    let mut vectors = if report.hermitian {
        jacobi_sorted(b)?.1
    } else {
        let adj = b.adjoint();
        let h1 = (b + &adj).scale(cx(0.5, 0.0)).hermitize();
        let h2 = (b - &adj).scale(cx(0.0, -0.5)).hermitize();
        let (vals1, mut v) = jacobi_sorted(&h1)?;
        let split = SPLIT_FACTOR * b.norm_fro().max(1.0);
        for range in cluster_ranges(&vals1, split) {
            refine_block(&h2, &h1, &mut v, range.0, range.1, split, MAX_REFINE_DEPTH)?;
        }
        v
    };

    // Rayleigh quotients pair each column with its most consistent
    // eigenvalue; then sort columns for a deterministic output order.
    let mut pairs: Vec<(Complex64, usize)> = (0..n)
        .map(|j| (rayleigh(b, &vectors, j), j))
        .collect();
    pairs.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .expect("finite eigenvalues")
    });
    let values: Vec<Complex64> = pairs.iter().map(|p| p.0).collect();
    let perm: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    vectors = permute_columns(&vectors, &perm);
    Ok(NormalEigen { values, vectors })
}

fn rayleigh(b: &ComplexMatrix, v: &ComplexMatrix, col: usize) -> Complex64 {
    let n = b.rows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let mut bv = Complex64::new(0.0, 0.0);
        for l in 0..n {
            bv += b.get(i, l) * v.get(l, col);
        }
        acc += v.get(i, col).conj() * bv;
    }
    acc
}

fn permute_columns(m: &ComplexMatrix, perm: &[usize]) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| m.get(i, perm[j]))
}

/// Contiguous index ranges of a sorted value list, split wherever the gap
/// between neighbours exceeds `split`.
fn cluster_ranges(sorted: &[f64], split: f64) -> Vec<(usize, usize)> {
    let mut ranges = Vec::new();
    let mut start = 0;
    for i in 1..=sorted.len() {
        if i == sorted.len() || sorted[i] - sorted[i - 1] > split {
            ranges.push((start, i));
            start = i;
        }
    }
    ranges
}

/// Diagonalize the restriction of `h_this` to the eigenvector block
/// `v[:, lo..hi]`, then recurse into its own clusters with the companion
/// matrix, alternating until every restriction is scalar.
fn refine_block(
    h_this: &ComplexMatrix,
    h_other: &ComplexMatrix,
    v: &mut ComplexMatrix,
    lo: usize,
    hi: usize,
    split: f64,
    depth: usize,
) -> Result<(), Error> {
    if hi - lo < 2 || depth == 0 {
        return Ok(());
    }
    let t = restriction(h_this, v, lo, hi);
    let (vals, w) = jacobi_sorted(&t)?;
    v.rotate_columns(lo, &w);
    for (s, e) in cluster_ranges(&vals, split) {
        refine_block(h_other, h_this, v, lo + s, lo + e, split, depth - 1)?;
    }
    Ok(())
}

/// `W* H W` for the column block `W = v[:, lo..hi]`, re-hermitized.
fn restriction(h: &ComplexMatrix, v: &ComplexMatrix, lo: usize, hi: usize) -> ComplexMatrix {
    let n = h.rows();
    let k = hi - lo;
    let mut hw = ComplexMatrix::zeros(n, k);
    for i in 0..n {
        for j in 0..k {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..n {
                acc += h.get(i, l) * v.get(l, lo + j);
            }
            hw.set(i, j, acc);
        }
    }
    let mut t = ComplexMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..n {
                acc += v.get(l, lo + i).conj() * hw.get(l, j);
            }
            t.set(i, j, acc);
        }
    }
    t.hermitize()
}

/// Cyclic Jacobi on a Hermitian matrix; returns eigenvalues sorted
/// ascending and the matching unitary eigenvector matrix.
fn jacobi_sorted(h: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix), Error> {
    let n = h.require_square()?;
    let mut a = h.hermitize();
    let mut v = ComplexMatrix::identity(n);

    let scale = a.norm_fro();
    if scale > 0.0 {
        let target = CONV_FACTOR * scale;
        let skip_below = target / (10.0 * (n * n) as f64);
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= target {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, p, q, skip_below);
                }
            }
        }
        if !converged && off_diagonal_norm(&a) > target {
            return Err(Error::NoConvergence);
        }
    }

    let mut pairs: Vec<(f64, usize)> = (0..n).map(|i| (a.get(i, i).re, i)).collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite eigenvalues"));
    let values: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let perm: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    Ok((values, permute_columns(&v, &perm)))
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                sum += a.get(p, q).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
///
/// With `a[p][q] = |b| e^{i phi}`, the rotation is the unitary that is the
/// identity outside the (p,q) plane and
/// `[[c, s e^{i phi}], [-s e^{-i phi}, c]]` inside it; `c`, `s` solve the
/// same quadratic as the real symmetric case with `|b|` in place of the
/// off-diagonal entry.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, skip_below: f64) {
    let b = a.get(p, q);
    let absb = b.norm();
    if absb <= skip_below {
        return;
    }
    let ph = b / absb;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let tau = (aqq - app) / (2.0 * absb);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let n = a.rows();
    let s_ph = ph * s;
    // columns: A <- A U
    for j in 0..n {
        let ajp = a.get(j, p);
        let ajq = a.get(j, q);
        a.set(j, p, ajp * c - ajq * s_ph.conj());
        a.set(j, q, ajp * s_ph + ajq * c);
    }
    // rows: A <- U* A
    for j in 0..n {
        let apj = a.get(p, j);
        let aqj = a.get(q, j);
        a.set(p, j, apj * c - aqj * s_ph);
        a.set(q, j, apj * s_ph.conj() + aqj * c);
    }
    // eigenvectors: V <- V U
    for j in 0..n {
        let vjp = v.get(j, p);
        let vjq = v.get(j, q);
        v.set(j, p, vjp * c - vjq * s_ph.conj());
        v.set(j, q, vjp * s_ph + vjq * c);
    }
    // pin the rotated 2x2 core to its exact analytic values
    a.set(p, p, cx(app - t * absb, 0.0));
    a.set(q, q, cx(aqq + t * absb, 0.0));
    a.set(p, q, cx(0.0, 0.0));
    a.set(q, p, cx(0.0, 0.0));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceModel {
        ToleranceModel::default()
    }

    fn reconstruct_hermitian(e: &HermitianEigen) -> ComplexMatrix {
        let n = e.values.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lam) in e.values.iter().enumerate() {
            let col = e.vectors.column(k);
            out = &out + &col.outer_self().scale(cx(lam, 0.0));
        }
        out
    }

    #[test]
    fn diagonal_matrix_sorted_ascending() {
        let d = ComplexMatrix::from_real_rows(&[&[3.0, 0.0], &[0.0, 1.0]]);
        let e = hermitian_eigen(&d, &tol()).unwrap();
        assert_eq!(e.values, vec![1.0, 3.0]);
        // eigenvectors are a permutation of the identity
        assert!((e.vectors.get(0, 1).norm() - 1.0).abs() < 1e-14);
        assert!((e.vectors.get(1, 0).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rank_one_projector_eigenvalues() {
        let e = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        let sys = hermitian_eigen(&e, &tol()).unwrap();
        assert!((sys.values[0] - 0.0).abs() < 1e-14);
        assert!((sys.values[1] - 1.0).abs() < 1e-14);
        assert!(reconstruct_hermitian(&sys).fro_distance(&e) < 1e-13);
    }

    #[test]
    fn two_by_two_matches_characteristic_roots() {
        // closed-form oracle for [[a, b], [b, c]]
        let cases = [
            [1.0, 2.0, 3.0],
            [0.0, 1.0, 0.0],
            [4.0, -0.5, 4.0],
            [-2.0, 0.25, 7.0],
        ];
        for [a, b, c] in cases {
            let m = ComplexMatrix::from_real_rows(&[&[a, b], &[b, c]]);
            let disc = ((a - c) * (a - c) + 4.0 * b * b).sqrt();
            let lo = (a + c - disc) / 2.0;
            let hi = (a + c + disc) / 2.0;
            let e = hermitian_eigen(&m, &tol()).unwrap();
            assert!((e.values[0] - lo).abs() < 1e-12, "low root for {a},{b},{c}");
            assert!((e.values[1] - hi).abs() < 1e-12, "high root for {a},{b},{c}");
        }
    }

    #[test]
    fn complex_hermitian_reconstructs() {
        let h = ComplexMatrix::new(
            2,
            2,
            vec![cx(2.0, 0.0), cx(0.0, -1.0), cx(0.0, 1.0), cx(2.0, 0.0)],
        )
        .unwrap();
        let e = hermitian_eigen(&h, &tol()).unwrap();
        assert!((e.values[0] - 1.0).abs() < 1e-13);
        assert!((e.values[1] - 3.0).abs() < 1e-13);
        assert!(reconstruct_hermitian(&e).fro_distance(&h) < 1e-13);
    }

    #[test]
    fn not_hermitian_is_rejected() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]);
        assert_eq!(
            hermitian_eigen(&m, &tol()).err(),
            Some(Error::NotHermitian)
        );
    }

    #[test]
    fn normal_eigen_swap_values() {
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let e = normal_eigen(&x, &tol()).unwrap();
        assert!((e.values[0] - cx(-1.0, 0.0)).norm() < 1e-13);
        assert!((e.values[1] - cx(1.0, 0.0)).norm() < 1e-13);
        // eigenvector for +1 is (1,1)/sqrt(2) up to phase
        let v = e.vectors.column(1);
        assert!((v.get(0).norm() - 1.0 / 2f64.sqrt()).abs() < 1e-13);
        assert!((v.get(0) - v.get(1)).norm() < 1e-13);
    }

    #[test]
    fn normal_eigen_rotation_pi_3() {
        let th = std::f64::consts::PI / 3.0;
        let u = ComplexMatrix::from_real_rows(&[
            &[th.cos(), th.sin()],
            &[-th.sin(), th.cos()],
        ]);
        let e = normal_eigen(&u, &tol()).unwrap();
        let expect = [cx(th.cos(), -th.sin()), cx(th.cos(), th.sin())];
        for (got, want) in e.values.iter().zip(expect.iter()) {
            assert!((got - want).norm() < 1e-13, "{got} vs {want}");
        }
    }

    #[test]
    fn normal_eigen_scalar_case() {
        let m = ComplexMatrix::from_real_rows(&[&[5.0]]);
        let e = normal_eigen(&m, &tol()).unwrap();
        assert!((e.values[0] - cx(5.0, 0.0)).norm() < 1e-15);
        assert!((e.vectors.get(0, 0).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn normal_eigen_rejects_jordan_block() {
        let j = ComplexMatrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
        assert_eq!(normal_eigen(&j, &tol()).err(), Some(Error::NotNormal));
    }
}
