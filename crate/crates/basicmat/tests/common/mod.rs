//! Shared generators for randomized test inputs. Everything is seeded, so
//! failures reproduce exactly.
#![allow(dead_code)] // each test target uses a different subset

use basicmat::{cx, orthonormalize, ColumnVector, ComplexMatrix, SymmetricIdempotent, ToleranceModel};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn tol() -> ToleranceModel {
    ToleranceModel::default()
}

pub fn random_vector(n: usize, rng: &mut ChaCha8Rng) -> ColumnVector {
    ColumnVector::new(
        (0..n)
            .map(|_| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect(),
    )
    .expect("finite entries")
}

/// A random orthonormal basis of C^n.
pub fn random_basis(n: usize, rng: &mut ChaCha8Rng) -> Vec<ColumnVector> {
    loop {
        let raw: Vec<ColumnVector> = (0..n).map(|_| random_vector(n, rng)).collect();
        let basis = orthonormalize(&raw, &tol());
        if basis.len() == n {
            return basis;
        }
    }
}

/// `sum_i values[i] v_i v_i*` over a random orthonormal basis: a random
/// normal matrix with a prescribed spectrum.
pub fn normal_with_spectrum(values: &[Complex64], rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let n = values.len();
    let basis = random_basis(n, rng);
    let mut acc = ComplexMatrix::zeros(n, n);
    for (v, &lam) in basis.iter().zip(values) {
        acc = &acc + &v.outer_self().scale(lam);
    }
    acc
}

pub fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
    let a = ComplexMatrix::from_fn(n, n, |_, _| {
        cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    (&a + &a.adjoint()).scale(cx(0.5, 0.0))
}

/// Random spectrum with pairwise separation at least `min_gap`, avoiding 0
/// and 1 by the same margin unless asked for.
pub fn separated_spectrum(
    count: usize,
    min_gap: f64,
    rng: &mut ChaCha8Rng,
) -> Vec<Complex64> {
    let mut values: Vec<Complex64> = Vec::with_capacity(count);
    while values.len() < count {
        let cand = cx(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let clear = values.iter().all(|v| (v - cand).norm() >= min_gap)
            && (cand - cx(1.0, 0.0)).norm() >= min_gap
            && cand.norm() >= min_gap;
        if clear {
            values.push(cand);
        }
    }
    values
}

/// Random rank-k projector from a random orthonormal set.
pub fn random_idempotent(n: usize, k: usize, rng: &mut ChaCha8Rng) -> SymmetricIdempotent {
    let basis = random_basis(n, rng);
    let mut acc = ComplexMatrix::zeros(n, n);
    for v in basis.iter().take(k) {
        acc = &acc + &v.outer_self();
    }
    SymmetricIdempotent::new(acc.hermitize(), &tol()).expect("sum of projectors")
}

pub fn matrix_pow(a: &ComplexMatrix, m: u32) -> ComplexMatrix {
    let mut acc = ComplexMatrix::identity(a.rows());
    for _ in 0..m {
        acc = &acc * a;
    }
    acc
}

pub fn max_entry_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            worst = worst.max((a.get(i, j) - b.get(i, j)).norm());
        }
    }
    worst
}
