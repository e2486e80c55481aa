//! Canonical factorization of normal matrices into commuting basic
//! matrices, with powers, complete root enumeration, and pseudo-inverses.
//!
//! A basic matrix is `I - E + alpha E` for a symmetric idempotent `E`. Any
//! normal matrix is a product of basic matrices with pairwise distinct
//! eigenvalues, none equal to 1, times the identity acting on the
//! eigenvalue-1 space; that product is unique apart from order. The
//! eigenvalue-1 projector is stored separately as `residual` so each
//! matrix has exactly one representation.

use num_complex::Complex64;

use crate::classify::{classify, StructureReport};
use crate::eigen::normal_eigen;
use crate::error::Error;
use crate::idempotent::SymmetricIdempotent;
use crate::matrix::{cx, ComplexMatrix};
use crate::tolerance::ToleranceModel;

/// Default cap on how many roots `all_nth_roots` will materialize.
pub const DEFAULT_ROOT_CAP: u128 = 4096;

/// One basic matrix `I - E + alpha E`.
#[derive(Debug, Clone)]
pub struct BasicFactor {
    pub idempotent: SymmetricIdempotent,
    pub eigenvalue: Complex64,
}

impl BasicFactor {
    /// Materialize `I - E + alpha E`.
    pub fn matrix(&self) -> ComplexMatrix {
        let n = self.idempotent.size();
        let e = self.idempotent.matrix();
        &(&ComplexMatrix::identity(n) - e) + &e.scale(self.eigenvalue)
    }

    pub fn rank(&self) -> usize {
        self.idempotent.rank()
    }
}

/// The unique product of basic matrices with distinct eigenvalues != 1,
/// plus the eigenvalue-1 projector. Factors are sorted by principal
/// argument (quantized to the cluster tolerance), then modulus.
#[derive(Debug, Clone)]
pub struct CanonicalFactorization {
    size: usize,
    factors: Vec<BasicFactor>,
    residual: SymmetricIdempotent,
    class_hint: StructureReport,
}

impl CanonicalFactorization {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn factors(&self) -> &[BasicFactor] {
        &self.factors
    }

    pub fn residual(&self) -> &SymmetricIdempotent {
        &self.residual
    }

    pub fn class_hint(&self) -> StructureReport {
        self.class_hint
    }

    /// The identity factorization in dimension `n`: no factors, residual I.
    pub fn identity(n: usize, tol: &ToleranceModel) -> Self {
        let residual = SymmetricIdempotent::new(ComplexMatrix::identity(n), tol)
            .expect("identity is idempotent");
        Self {
            size: n,
            factors: Vec::new(),
            residual,
            class_hint: StructureReport {
                normal: true,
                hermitian: true,
                unitary: true,
                symmetric_unitary: true,
                idempotent: true,
            },
        }
    }

    /// Index of the zero-eigenvalue factor, if the matrix is singular.
    pub fn zero_factor(&self) -> Option<usize> {
        self.factors.iter().position(|f| f.eigenvalue == Complex64::new(0.0, 0.0))
    }

    /// Assemble a canonical factorization from raw `(alpha, projector)`
    /// parts. Clusters nearby eigenvalues, merges their projectors, snaps
    /// structural values (unit modulus for unitary inputs, real axis for
    /// Hermitian ones, exact 0 and 1), folds eigenvalue-1 mass into the
    /// residual, and fixes the canonical order.
    pub fn from_parts(
        size: usize,
        parts: Vec<(Complex64, ComplexMatrix)>,
        class_hint: StructureReport,
        tol: &ToleranceModel,
    ) -> Result<Self, Error> {
        let mut groups = cluster_parts(parts, tol);
        for g in &mut groups {
            g.0 = snap_eigenvalue(g.0, &class_hint, tol);
        }
        // snapping can make previously distinct representatives collide
        let groups = cluster_parts(groups, tol);

        let mut factors: Vec<BasicFactor> = Vec::new();
        let mut projector_sum = ComplexMatrix::zeros(size, size);
        for (alpha, matrix) in groups {
            if alpha == Complex64::new(1.0, 0.0) {
                continue; // eigenvalue 1 lives only in the residual
            }
            projector_sum = &projector_sum + &matrix;
            factors.push(BasicFactor {
                idempotent: SymmetricIdempotent::new(matrix.hermitize(), tol)?,
                eigenvalue: alpha,
            });
        }
        let residual_matrix = &ComplexMatrix::identity(size) - &projector_sum;
        let residual = if residual_matrix.trace().re.round() == 0.0 {
            SymmetricIdempotent::zero(size)
        } else {
            SymmetricIdempotent::new(residual_matrix.hermitize(), tol)?
        };

        factors.sort_by_key(|f| eigenvalue_sort_key(f.eigenvalue, tol));
        Ok(Self {
            size,
            factors,
            residual,
            class_hint,
        })
    }
}

/// Branch choices for one n-th root: one index per factor plus one for the
/// residual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSelector {
    pub branch_indices: Vec<u32>,
    pub residual_index: u32,
}

impl RootSelector {
    /// The all-zeros selector defining the principal root.
    pub fn principal(factor_count: usize) -> Self {
        Self {
            branch_indices: vec![0; factor_count],
            residual_index: 0,
        }
    }
}

/// Factor a normal matrix into its canonical basic-matrix product.
pub fn factor_normal(
    a: &ComplexMatrix,
    tol: &ToleranceModel,
) -> Result<CanonicalFactorization, Error> {
    let report = classify(a, tol)?;
    if !report.normal {
        return Err(Error::NotNormal);
    }
    let n = a.rows();
    let eig = normal_eigen(a, tol)?;

    // group eigenvalues, then sum v v* over each group
    let groups = cluster_indices(&eig.values, tol);
    let mut parts = Vec::with_capacity(groups.len());
    for idx in groups {
        let alpha = mean(&idx.iter().map(|&i| eig.values[i]).collect::<Vec<_>>());
        let mut proj = ComplexMatrix::zeros(n, n);
        for &i in &idx {
            proj = &proj + &eig.vectors.column(i).outer_self();
        }
        parts.push((alpha, proj));
    }
    CanonicalFactorization::from_parts(n, parts, report, tol)
}

/// Rebuild the matrix as `sum(alpha_j E_j) + residual`, which equals the
/// factor product because the idempotents are mutually orthogonal.
pub fn reconstruct(f: &CanonicalFactorization) -> ComplexMatrix {
    let mut acc = f.residual().matrix().clone();
    for factor in f.factors() {
        acc = &acc + &factor.idempotent.matrix().scale(factor.eigenvalue);
    }
    acc
}

/// Executable uniqueness: equal factor counts, eigenvalues matching within
/// the cluster tolerance, matched idempotents within `10 * eps_struct`,
/// and agreeing residuals.
pub fn canonical_equal(
    f1: &CanonicalFactorization,
    f2: &CanonicalFactorization,
    tol: &ToleranceModel,
) -> bool {
    if f1.size() != f2.size() || f1.factors().len() != f2.factors().len() {
        return false;
    }
    let scale = f1
        .factors()
        .iter()
        .chain(f2.factors())
        .map(|f| f.eigenvalue.norm())
        .fold(1.0, f64::max);
    let value_tol = tol.eps_cluster * scale;
    let matrix_tol = 10.0 * tol.eps_struct;

    let mut used = vec![false; f2.factors().len()];
    for a in f1.factors() {
        let found = f2.factors().iter().enumerate().find(|(j, b)| {
            !used[*j] && (a.eigenvalue - b.eigenvalue).norm() <= value_tol
        });
        match found {
            Some((j, b)) => {
                if a.idempotent
                    .matrix()
                    .fro_distance(b.idempotent.matrix())
                    > matrix_tol
                {
                    return false;
                }
                used[j] = true;
            }
            None => return false,
        }
    }
    f1.residual()
        .matrix()
        .fro_distance(f2.residual().matrix())
        <= matrix_tol
}

/// Raise a factorization to the m-th power: every eigenvalue is powered
/// and colliding values re-cluster; powers that land on 1 are absorbed
/// into the residual.
pub fn power(
    f: &CanonicalFactorization,
    m: u32,
    tol: &ToleranceModel,
) -> Result<CanonicalFactorization, Error> {
    assert!(m >= 1, "exponent must be positive");
    let parts = f
        .factors()
        .iter()
        .map(|fac| (fac.eigenvalue.powu(m), fac.idempotent.matrix().clone()))
        .collect();
    let hint = powered_hint(f.class_hint());
    CanonicalFactorization::from_parts(f.size(), parts, hint, tol)
}

/// One n-th root. A factor `(E, |a| e^{i theta})` with `theta` in
/// `[0, 2pi)` maps to `(E, |a|^{1/n} e^{i (theta + 2 pi r)/n})`; a nonzero
/// residual with branch `r > 0` becomes the factor `(F0, e^{i 2 pi r/n})`.
/// Zero eigenvalues admit only the zero branch.
pub fn nth_root(
    f: &CanonicalFactorization,
    n: u32,
    sel: &RootSelector,
    tol: &ToleranceModel,
) -> Result<CanonicalFactorization, Error> {
    assert!(n >= 1, "root degree must be positive");
    if sel.branch_indices.len() != f.factors().len() {
        return Err(Error::SelectorMismatch);
    }
    if sel.branch_indices.iter().any(|&r| r >= n) || sel.residual_index >= n {
        return Err(Error::SelectorMismatch);
    }
    if f.residual().is_zero() && sel.residual_index != 0 {
        return Err(Error::SelectorMismatch);
    }

    let tau = std::f64::consts::TAU;
    let mut parts: Vec<(Complex64, ComplexMatrix)> = Vec::new();
    for (factor, &r) in f.factors().iter().zip(&sel.branch_indices) {
        let alpha = factor.eigenvalue;
        if alpha == Complex64::new(0.0, 0.0) {
            if r != 0 {
                return Err(Error::ZeroBranch);
            }
            parts.push((alpha, factor.idempotent.matrix().clone()));
            continue;
        }
        let theta = principal_argument(alpha);
        let root = Complex64::from_polar(
            alpha.norm().powf(1.0 / n as f64),
            (theta + tau * r as f64) / n as f64,
        );
        parts.push((root, factor.idempotent.matrix().clone()));
    }
    if !f.residual().is_zero() && sel.residual_index > 0 {
        let root = Complex64::from_polar(1.0, tau * sel.residual_index as f64 / n as f64);
        parts.push((root, f.residual().matrix().clone()));
    }
    let hint = root_hint(f.class_hint());
    CanonicalFactorization::from_parts(f.size(), parts, hint, tol)
}

/// Enumerate every n-th root in lexicographic selector order. The count is
/// `n^k` over the nonzero factors, times `n` when the residual is nonzero;
/// above `cap` the enumeration is refused and the count reported instead.
pub fn all_nth_roots(
    f: &CanonicalFactorization,
    n: u32,
    cap: u128,
    tol: &ToleranceModel,
) -> Result<Vec<(RootSelector, CanonicalFactorization)>, Error> {
    assert!(n >= 1, "root degree must be positive");
    let branching: Vec<u32> = f
        .factors()
        .iter()
        .map(|fac| {
            if fac.eigenvalue == Complex64::new(0.0, 0.0) {
                1
            } else {
                n
            }
        })
        .collect();
    let residual_branches: u32 = if f.residual().is_zero() { 1 } else { n };
    let mut count: u128 = residual_branches as u128;
    for &b in &branching {
        count = count.saturating_mul(b as u128);
    }
    if count > cap {
        return Err(Error::TooManyRoots { count });
    }

    let mut out = Vec::with_capacity(count as usize);
    let mut sel = RootSelector::principal(f.factors().len());
    loop {
        out.push((sel.clone(), nth_root(f, n, &sel, tol)?));
        // odometer over (branch_indices, residual_index), last digit fastest
        if sel.residual_index + 1 < residual_branches {
            sel.residual_index += 1;
            continue;
        }
        sel.residual_index = 0;
        let mut pos = sel.branch_indices.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            if sel.branch_indices[pos] + 1 < branching[pos] {
                sel.branch_indices[pos] += 1;
                break;
            }
            sel.branch_indices[pos] = 0;
        }
    }
}

/// Moore-Penrose pseudo-inverse from the factorization: invert every
/// nonzero eigenvalue, keep the residual, drop the kernel.
pub fn pseudo_inverse(f: &CanonicalFactorization) -> ComplexMatrix {
    let mut acc = f.residual().matrix().clone();
    for factor in f.factors() {
        if factor.eigenvalue == Complex64::new(0.0, 0.0) {
            continue;
        }
        acc = &acc + &factor.idempotent.matrix().scale(factor.eigenvalue.inv());
    }
    acc
}

/// For a normal involution (`A^2 = I`), recover the idempotent of its
/// `I - 2E` form. The rank of `E` is the multiplicity of eigenvalue -1.
pub fn involution_idempotent(
    a: &ComplexMatrix,
    tol: &ToleranceModel,
) -> Result<SymmetricIdempotent, Error> {
    let report = classify(a, tol)?;
    let n = a.rows();
    if !report.normal {
        return Err(Error::NotInvolution);
    }
    let sq = a * a;
    if sq.fro_distance(&ComplexMatrix::identity(n)) > tol.eps_struct * (n as f64).sqrt() {
        return Err(Error::NotInvolution);
    }
    let e = (&ComplexMatrix::identity(n) - a).scale(cx(0.5, 0.0));
    SymmetricIdempotent::new(e, tol).map_err(|_| Error::NotInvolution)
}

/// For Hermitian `H` with `H^2 = c I`, `c > 0`: return `sqrt(c)` and the
/// idempotent of `H = sqrt(c) (I - 2E)`. Covers symmetric Hadamard-type
/// matrices, where `c` is the dimension.
pub fn scaled_involution_idempotent(
    h: &ComplexMatrix,
    tol: &ToleranceModel,
) -> Result<(f64, SymmetricIdempotent), Error> {
    let report = classify(h, tol)?;
    let n = h.rows();
    if !report.hermitian {
        return Err(Error::NotScaledInvolution);
    }
    let sq = h * h;
    let c = sq.trace().re / n as f64;
    if c <= 0.0 {
        return Err(Error::NotScaledInvolution);
    }
    let scaled_id = ComplexMatrix::identity(n).scale(cx(c, 0.0));
    if sq.fro_distance(&scaled_id) > tol.eps_struct * c.max(1.0) * (n as f64).sqrt() {
        return Err(Error::NotScaledInvolution);
    }
    let scale = c.sqrt();
    let e = (&ComplexMatrix::identity(n) - &h.scale(cx(1.0 / scale, 0.0))).scale(cx(0.5, 0.0));
    let e = SymmetricIdempotent::new(e, tol).map_err(|_| Error::NotScaledInvolution)?;
    Ok((scale, e))
}

/// Argument mapped to `[0, 2pi)`.
fn principal_argument(z: Complex64) -> f64 {
    let a = z.arg();
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

/// Canonical factor order: principal argument quantized to the cluster
/// tolerance, then modulus. Any fixed total order realizes uniqueness;
/// argument-first reads naturally for unitary spectra.
fn eigenvalue_sort_key(alpha: Complex64, tol: &ToleranceModel) -> (i64, u64) {
    let arg_bucket = (principal_argument(alpha) / tol.eps_cluster).round() as i64;
    (arg_bucket, alpha.norm().to_bits())
}

/// Union parts whose eigenvalues sit within the cluster tolerance of each
/// other (transitively, over all pairs), summing their projectors and
/// averaging their eigenvalues weighted by projector trace.
fn cluster_parts(
    parts: Vec<(Complex64, ComplexMatrix)>,
    tol: &ToleranceModel,
) -> Vec<(Complex64, ComplexMatrix)> {
    if parts.is_empty() {
        return parts;
    }
    let scale = parts
        .iter()
        .map(|p| p.0.norm())
        .fold(1.0, f64::max);
    let threshold = tol.eps_cluster * scale;

    let mut find = UnionFind::new(parts.len());
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            if (parts[i].0 - parts[j].0).norm() <= threshold {
                find.union(i, j);
            }
        }
    }

    let mut grouped: Vec<Option<(Complex64, f64, ComplexMatrix)>> = vec![None; parts.len()];
    for (i, (alpha, matrix)) in parts.into_iter().enumerate() {
        let root = find.find(i);
        let weight = matrix.trace().re.max(f64::MIN_POSITIVE);
        match &mut grouped[root] {
            Some((acc_alpha, acc_w, acc_m)) => {
                *acc_alpha += alpha * weight;
                *acc_w += weight;
                *acc_m = &*acc_m + &matrix;
            }
            slot @ None => *slot = Some((alpha * weight, weight, matrix)),
        }
    }
    grouped
        .into_iter()
        .flatten()
        .map(|(alpha, w, m)| (alpha / w, m))
        .collect()
}

/// Per-eigenvalue index groups for the spectral clustering in
/// `factor_normal`, transitive over all pairs within tolerance.
fn cluster_indices(values: &[Complex64], tol: &ToleranceModel) -> Vec<Vec<usize>> {
    let scale = values.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let threshold = tol.eps_cluster * scale;
    let mut find = UnionFind::new(values.len());
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if (values[i] - values[j]).norm() <= threshold {
                find.union(i, j);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); values.len()];
    for i in 0..values.len() {
        groups[find.find(i)].push(i);
    }
    groups.retain(|g| !g.is_empty());
    groups
}

fn mean(values: &[Complex64]) -> Complex64 {
    values.iter().sum::<Complex64>() / values.len() as f64
}

fn snap_eigenvalue(
    alpha: Complex64,
    hint: &StructureReport,
    tol: &ToleranceModel,
) -> Complex64 {
    let mut a = alpha;
    if hint.unitary && a.norm() > 0.0 {
        a /= a.norm();
    }
    if hint.hermitian {
        a = cx(a.re, 0.0);
    }
    if (a - Complex64::new(1.0, 0.0)).norm() <= tol.eps_cluster {
        return Complex64::new(1.0, 0.0);
    }
    if a.norm() <= tol.eps_cluster {
        return Complex64::new(0.0, 0.0);
    }
    a
}

/// Structure survives powering: unitary and Hermitian inputs stay so.
fn powered_hint(hint: StructureReport) -> StructureReport {
    StructureReport {
        normal: true,
        hermitian: hint.hermitian,
        unitary: hint.unitary,
        symmetric_unitary: hint.hermitian && hint.unitary,
        idempotent: hint.idempotent,
    }
}

/// Roots of a unitary matrix stay unitary; Hermitian structure does not
/// survive (a root of a negative eigenvalue leaves the real axis).
fn root_hint(hint: StructureReport) -> StructureReport {
    StructureReport {
        normal: true,
        hermitian: false,
        unitary: hint.unitary,
        symmetric_unitary: false,
        idempotent: false,
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, i: usize, j: usize) {
        let (ri, rj) = (self.find(i), self.find(j));
        if ri != rj {
            // smaller index wins so grouping is order-independent
            let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
            self.parent[hi] = lo;
        }
    }
}
