//! Closed subspaces of `C^n` held as orthonormal bases, projectors, and the
//! ortholattice operations between them.

use num_complex::Complex64;

use crate::clinalg::{self, ComplexMatrix, Tolerance};
use crate::error::{Error, Result};

/// Hermitian idempotent matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: ComplexMatrix,
}

impl Projector {
    /// Validates `P = P^+` and `P^2 = P` to `10 * residual_rel` in the
    /// Frobenius norm.
    pub fn new(matrix: ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if matrix.rows() == 0 {
            return Err(Error::ZeroDimension);
        }
        let hermitian = (&matrix - &matrix.adjoint()).norm();
        if hermitian > tol.matrix_tol() {
            return Err(Error::NotHermitian {
                deviation: hermitian,
            });
        }
        let idempotent = (&(&matrix * &matrix) - &matrix).norm();
        if idempotent > tol.matrix_tol() {
            return Err(Error::NotIdempotent {
                deviation: idempotent,
            });
        }
        Ok(Self { matrix })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::zeros(n, n),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(n),
        }
    }

    /// `|v><v| / <v|v>`.
    pub fn onto_vector(v: &ComplexMatrix) -> Result<Self> {
        if !v.is_column() {
            return Err(Error::NotAColumn { cols: v.cols() });
        }
        let nrm = v.norm();
        if nrm == 0.0 {
            return Err(Error::ZeroVector);
        }
        let u = v.scale(Complex64::new(1.0 / nrm, 0.0));
        Ok(Self {
            matrix: &u * &u.adjoint(),
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `I - P`.
    pub fn complement(&self) -> Self {
        Self {
            matrix: &ComplexMatrix::identity(self.dim()) - &self.matrix,
        }
    }

    /// Rank measured against the unit operator norm of a nonzero projector.
    pub fn rank(&self, tol: &Tolerance) -> usize {
        clinalg::rank_with_reference(&self.matrix, tol, 1.0)
    }

    pub fn apply(&self, v: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.matrix.matmul(v)
    }
}

/// Closed linear subspace given by an orthonormal column basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    basis: ComplexMatrix,
}

impl Subspace {
    /// Accepts a basis that is already orthonormal.
    pub fn from_orthonormal(basis: ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        if basis.rows() == 0 {
            return Err(Error::ZeroDimension);
        }
        let defect = (&(&basis.adjoint() * &basis) - &ComplexMatrix::identity(basis.cols())).norm();
        if defect > tol.matrix_tol() {
            return Err(Error::NotOrthonormal { deviation: defect });
        }
        Ok(Self { basis })
    }

    /// Span of the columns of `m`; redundant columns are dropped.
    pub fn span(m: &ComplexMatrix, tol: &Tolerance) -> Result<Self> {
        if m.rows() == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self {
            basis: clinalg::orthonormal_column_basis(m, tol),
        })
    }

    /// The subspace `{0}`.
    pub fn zero(n: usize) -> Self {
        Self {
            basis: ComplexMatrix::zeros(n, 0),
        }
    }

    /// The whole space `C^n`.
    pub fn whole(n: usize) -> Self {
        Self {
            basis: ComplexMatrix::identity(n),
        }
    }

    pub fn basis(&self) -> &ComplexMatrix {
        &self.basis
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.ambient()
    }
}

fn same_ambient(a: &Subspace, b: &Subspace) -> Result<()> {
    if a.ambient() != b.ambient() {
        return Err(Error::DimensionMismatch {
            expected: a.ambient(),
            found: b.ambient(),
        });
    }
    Ok(())
}

/// Column span of the projector.
pub fn range_of(p: &Projector, tol: &Tolerance) -> Subspace {
    let r = p.rank(tol);
    Subspace {
        basis: clinalg::pivoted_columns(p.matrix(), r).basis,
    }
}

/// Vectors annihilated by the projector, i.e. the range of `I - P`.
pub fn kernel_of(p: &Projector, tol: &Tolerance) -> Subspace {
    Subspace {
        basis: clinalg::null_space_with_rank(p.matrix(), p.rank(tol)),
    }
}

/// `B B^+` for the orthonormal basis `B`.
pub fn projector_of(s: &Subspace) -> Projector {
    Projector {
        matrix: &s.basis * &s.basis.adjoint(),
    }
}

/// `||v - B B^+ v|| <= residual_rel * ||v||`. The zero vector is rejected.
pub fn contains(s: &Subspace, v: &ComplexMatrix, tol: &Tolerance) -> Result<bool> {
    if !v.is_column() {
        return Err(Error::NotAColumn { cols: v.cols() });
    }
    if v.rows() != s.ambient() {
        return Err(Error::DimensionMismatch {
            expected: s.ambient(),
            found: v.rows(),
        });
    }
    let nrm = v.norm();
    if nrm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let coords = &s.basis.adjoint() * v;
    let residual = (v - &(&s.basis * &coords)).norm();
    Ok(residual <= tol.residual_rel * nrm)
}

/// Orthogonal complement; needs no tolerance since the basis is orthonormal.
pub fn ortho_complement(s: &Subspace) -> Subspace {
    let n = s.ambient();
    let basis = if s.dim() == 0 {
        ComplexMatrix::identity(n)
    } else {
        clinalg::null_space_with_rank(&s.basis.adjoint(), s.dim())
    };
    Subspace { basis }
}

/// Closed span of the union.
pub fn join(a: &Subspace, b: &Subspace, tol: &Tolerance) -> Result<Subspace> {
    same_ambient(a, b)?;
    let stacked = ComplexMatrix::hstack(&[&a.basis, &b.basis])?;
    Ok(Subspace {
        basis: clinalg::orthonormal_column_basis(&stacked, tol),
    })
}

/// Intersection, computed as `(A^perp v B^perp)^perp`.
pub fn meet(a: &Subspace, b: &Subspace, tol: &Tolerance) -> Result<Subspace> {
    same_ambient(a, b)?;
    let j = join(&ortho_complement(a), &ortho_complement(b), tol)?;
    Ok(ortho_complement(&j))
}

/// Equality of the orthogonal projectors to `10 * residual_rel`. Subspaces of
/// different ambient spaces are never equal.
pub fn equals(a: &Subspace, b: &Subspace, tol: &Tolerance) -> bool {
    if a.ambient() != b.ambient() {
        return false;
    }
    (projector_of(a).matrix() - projector_of(b).matrix()).norm() <= tol.matrix_tol()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn projector_validation() {
        let tol = Tolerance::default();
        let not_hermitian = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            Projector::new(not_hermitian, &tol),
            Err(Error::NotHermitian { .. })
        ));
        let not_idempotent = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        assert!(matches!(
            Projector::new(not_idempotent, &tol),
            Err(Error::NotIdempotent { .. })
        ));
        assert!(matches!(
            Projector::new(ComplexMatrix::zeros(2, 3), &tol),
            Err(Error::NotSquare { .. })
        ));
        assert!(Projector::new(ComplexMatrix::identity(3), &tol).is_ok());
    }

    #[test]
    fn trivial_projectors() {
        let tol = Tolerance::default();
        assert!(range_of(&Projector::identity(4), &tol).is_whole());
        assert!(range_of(&Projector::zero(4), &tol).is_zero());
        assert!(kernel_of(&Projector::zero(4), &tol).is_whole());
        assert!(kernel_of(&Projector::identity(4), &tol).is_zero());
        assert_eq!(projector_of(&Subspace::zero(3)), Projector::zero(3));
        assert_eq!(projector_of(&Subspace::whole(3)), Projector::identity(3));
    }

    #[test]
    fn contains_rejects_zero_vector() {
        let tol = Tolerance::default();
        let s = Subspace::whole(2);
        assert_eq!(
            contains(&s, &ComplexMatrix::zeros(2, 1), &tol),
            Err(Error::ZeroVector)
        );
        assert!(contains(&s, &ComplexMatrix::zeros(3, 1), &tol).is_err());
        let v = ComplexMatrix::column(&[c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        assert!(contains(&s, &v, &tol).unwrap());
        assert!(!contains(&Subspace::zero(2), &v, &tol).unwrap());
    }

    #[test]
    fn lattice_identities_on_axes() {
        let tol = Tolerance::default();
        let e = |k: usize| {
            let mut v = ComplexMatrix::zeros(3, 1);
            v[(k, 0)] = c(1.0, 0.0);
            Subspace::span(&v, &tol).unwrap()
        };
        let x = e(0);
        let y = e(1);
        assert!(meet(&x, &y, &tol).unwrap().is_zero());
        assert_eq!(join(&x, &y, &tol).unwrap().dim(), 2);
        assert!(equals(&meet(&x, &x, &tol).unwrap(), &x, &tol));
        assert!(equals(
            &meet(&x, &Subspace::whole(3), &tol).unwrap(),
            &x,
            &tol
        ));
        assert!(equals(
            &join(&x, &Subspace::zero(3), &tol).unwrap(),
            &x,
            &tol
        ));
        assert!(ortho_complement(&Subspace::whole(3)).is_zero());
        assert!(equals(&ortho_complement(&ortho_complement(&x)), &x, &tol));
        let xy = join(&x, &y, &tol).unwrap();
        assert!(equals(&ortho_complement(&xy), &e(2), &tol));
    }

    #[test]
    fn mismatched_ambients() {
        let tol = Tolerance::default();
        let a = Subspace::whole(2);
        let b = Subspace::whole(3);
        assert!(join(&a, &b, &tol).is_err());
        assert!(meet(&a, &b, &tol).is_err());
        assert!(!equals(&a, &b, &tol));
    }

    #[test]
    fn from_orthonormal_checks_columns() {
        let tol = Tolerance::default();
        let skew = ComplexMatrix::new(
            2,
            2,
            vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        )
        .unwrap();
        assert!(matches!(
            Subspace::from_orthonormal(skew, &tol),
            Err(Error::NotOrthonormal { .. })
        ));
    }
}
