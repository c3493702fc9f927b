//! Dense complex linear algebra: adjoints, tolerance-aware rank, orthonormal
//! bases of column spaces and null spaces, and least-squares solves.
//!
//! Rank and null spaces come from a one-sided Jacobi SVD. Column
//! spaces are orthonormalized by column-pivoted Gram-Schmidt, which also
//! reports which original columns were kept.

mod matrix;
mod svd;

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use matrix::ComplexMatrix;

/// Relative cutoffs separating numerical noise from structure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    /// Singular values below `rank_rel * sigma_max` count as zero.
    pub rank_rel: f64,
    /// Residuals below `residual_rel * ||b||` count as an exact solve.
    pub residual_rel: f64,
}

impl Tolerance {
    pub const DEFAULT_RANK_REL: f64 = 1e-10;
    pub const DEFAULT_RESIDUAL_REL: f64 = 1e-9;

    pub fn new(rank_rel: f64, residual_rel: f64) -> Result<Self> {
        for (name, value) in [("rank_rel", rank_rel), ("residual_rel", residual_rel)] {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::InvalidTolerance { name, value });
            }
        }
        Ok(Self {
            rank_rel,
            residual_rel,
        })
    }

    /// Bound on Frobenius-norm defects of structural identities such as
    /// `P^2 = P` or `B^+B = I`.
    pub fn matrix_tol(&self) -> f64 {
        10.0 * self.residual_rel
    }

    /// Band separating residual noise from genuine intermediate
    /// probabilities; probabilities are squared residuals, hence the root.
    pub fn probability_band(&self) -> f64 {
        libm::sqrt(self.residual_rel)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rank_rel: Self::DEFAULT_RANK_REL,
            residual_rel: Self::DEFAULT_RESIDUAL_REL,
        }
    }
}

pub fn adjoint(m: &ComplexMatrix) -> ComplexMatrix {
    m.adjoint()
}

/// Singular values in descending order.
pub fn singular_values(m: &ComplexMatrix) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    svd::decompose(m).sigma
}

fn count_above(sv: &[f64], rel: f64, floor: f64) -> usize {
    let sigma_max = sv.first().copied().unwrap_or(0.0);
    let scale = sigma_max.max(floor);
    if scale == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s >= rel * scale).count()
}

/// Number of singular values `sigma >= rank_rel * sigma_max`; zero for the
/// zero matrix.
pub fn rank(m: &ComplexMatrix, tol: &Tolerance) -> usize {
    count_above(&singular_values(m), tol.rank_rel, 0.0)
}

/// Rank with the cutoff measured against `max(sigma_max, reference_norm)`.
///
/// Projectors have operator norm 1 unless they vanish, so their ranks are
/// taken with `reference_norm = 1`; rounding noise in `I - P` for `P ~ I`
/// then counts as rank 0 rather than full rank.
pub fn rank_with_reference(m: &ComplexMatrix, tol: &Tolerance, reference_norm: f64) -> usize {
    count_above(&singular_values(m), tol.rank_rel, reference_norm)
}

/// Result of column-pivoted Gram-Schmidt.
#[derive(Debug, Clone)]
pub struct PivotedColumns {
    /// Orthonormal columns, one per pivot.
    pub basis: ComplexMatrix,
    /// Indices of the selected original columns, in selection order.
    pub pivots: Vec<usize>,
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn vec_norm(a: &[Complex64]) -> f64 {
    libm::sqrt(a.iter().map(|z| z.norm_sqr()).sum::<f64>())
}

/// Selects `count` columns of `m` greedily by largest residual norm and
/// orthonormalizes them (modified Gram-Schmidt with one reorthogonalization
/// pass). Ties go to the lowest column index. Stops early if every remaining
/// residual is exactly zero.
pub fn pivoted_columns(m: &ComplexMatrix, count: usize) -> PivotedColumns {
    let n = m.rows();
    let mut work: Vec<Vec<Complex64>> = (0..m.cols()).map(|j| m.col(j)).collect();
    let mut used = alloc::vec![false; m.cols()];
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(count);
    let mut pivots = Vec::with_capacity(count);

    for _ in 0..count.min(m.cols()) {
        let mut best: Option<(usize, f64)> = None;
        for (j, w) in work.iter().enumerate() {
            if used[j] {
                continue;
            }
            let nrm = vec_norm(w);
            if best.is_none_or(|(_, b)| nrm > b) {
                best = Some((j, nrm));
            }
        }
        let Some((j, nrm)) = best else { break };
        if nrm == 0.0 {
            break;
        }
        used[j] = true;
        let mut v = work[j].clone();
        for prev in &q {
            let c = dot(prev, &v);
            for (vi, pi) in v.iter_mut().zip(prev) {
                *vi -= c * pi;
            }
        }
        let vn = vec_norm(&v);
        if vn == 0.0 {
            break;
        }
        for vi in v.iter_mut() {
            *vi /= vn;
        }
        for (k, w) in work.iter_mut().enumerate() {
            if used[k] {
                continue;
            }
            let c = dot(&v, w);
            for (wi, vi) in w.iter_mut().zip(&v) {
                *wi -= c * vi;
            }
        }
        q.push(v);
        pivots.push(j);
    }

    let basis = ComplexMatrix::from_fn(n, q.len(), |i, k| q[k][i]);
    PivotedColumns { basis, pivots }
}

/// Orthonormal basis of the column space; as many columns as `rank(m)`.
pub fn orthonormal_column_basis(m: &ComplexMatrix, tol: &Tolerance) -> ComplexMatrix {
    pivoted_columns(m, rank(m, tol)).basis
}

/// Orthonormal basis of `{x : Mx = 0}` using the last `cols - rank` right
/// singular vectors.
pub(crate) fn null_space_with_rank(m: &ComplexMatrix, rank: usize) -> ComplexMatrix {
    let n = m.cols();
    if m.rows() == 0 || rank == 0 {
        return ComplexMatrix::identity(n);
    }
    if rank >= n {
        return ComplexMatrix::zeros(n, 0);
    }
    let v = svd::decompose(m).v;
    let keep: Vec<usize> = (rank..n).collect();
    v.select_columns(&keep)
}

/// Orthonormal basis of the null space; `cols - rank(m)` columns.
pub fn null_space_basis(m: &ComplexMatrix, tol: &Tolerance) -> ComplexMatrix {
    null_space_with_rank(m, rank(m, tol))
}

/// Outcome of a least-squares solve.
#[derive(Debug, Clone)]
pub struct LeastSquares {
    /// Minimum-norm minimizer of `||Ax - b||`.
    pub solution: ComplexMatrix,
    /// `||Ax - b||` at the returned solution.
    pub residual_norm: f64,
    /// Numerical rank of `A` under the solve's tolerance.
    pub rank: usize,
    /// `A` lacks full column rank; the minimizer is not unique.
    pub rank_deficient: bool,
}

/// Minimum-norm least-squares solution of `Ax = b` through the SVD
/// pseudo-inverse, truncating singular values below `rank_rel * sigma_max`.
pub fn least_squares_solve(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    tol: &Tolerance,
) -> Result<LeastSquares> {
    if !b.is_column() {
        return Err(Error::NotAColumn { cols: b.cols() });
    }
    if a.rows() != b.rows() {
        return Err(Error::ShapeMismatch {
            expected: (a.rows(), 1),
            found: b.shape(),
        });
    }
    let n = a.cols();
    let mut x = ComplexMatrix::zeros(n, 1);
    let mut rank = 0;
    if n > 0 && a.rows() > 0 {
        let svd = svd::decompose(a);
        let sigma_max = svd.sigma.first().copied().unwrap_or(0.0);
        for (k, &s) in svd.sigma.iter().enumerate() {
            if sigma_max == 0.0 || s < tol.rank_rel * sigma_max {
                continue;
            }
            rank += 1;
            // coefficient (u_k^+ b) / sigma_k along v_k
            let mut c = Complex64::new(0.0, 0.0);
            for i in 0..a.rows() {
                c += svd.u[(i, k)].conj() * b[(i, 0)];
            }
            c /= s;
            for j in 0..n {
                x[(j, 0)] += svd.v[(j, k)] * c;
            }
        }
    }
    let residual_norm = (&(a * &x) - b).norm();
    Ok(LeastSquares {
        solution: x,
        residual_norm,
        rank,
        rank_deficient: rank < n,
    })
}
