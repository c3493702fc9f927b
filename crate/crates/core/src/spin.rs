//! Spin-j angular momentum matrices in the z-basis, eigenprojectors of
//! Hermitian matrices, and the hard-coded spin-3/2 fixture set.

use alloc::vec::Vec;

use nalgebra::SymmetricEigen;
use num_complex::Complex64;

use crate::clinalg::{ComplexMatrix, Tolerance};
use crate::error::{Error, Result};
use crate::subspace::Projector;
use crate::valuation::StateVector;

/// Spin quantum number `j`, stored as the positive integer `2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Spin(u32);

impl Spin {
    pub fn from_twice(twice_j: u32) -> Result<Self> {
        if twice_j == 0 {
            return Err(Error::InvalidSpin { twice_j });
        }
        Ok(Self(twice_j))
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// `2j + 1`.
    pub fn multiplicity(self) -> usize {
        self.0 as usize + 1
    }
}

/// `(S_x, S_y, S_z)` in units of hbar.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinMatrices {
    pub x: ComplexMatrix,
    pub y: ComplexMatrix,
    pub z: ComplexMatrix,
}

/// Builds the spin matrices from the ladder operator
/// `<m+1|S_+|m> = sqrt(j(j+1) - m(m+1))`, basis ordered `m = j, j-1, ..., -j`.
pub fn spin_matrices(j: Spin) -> SpinMatrices {
    let d = j.multiplicity();
    let jv = j.value();
    let m = |k: usize| jv - k as f64;
    let mut raise = ComplexMatrix::zeros(d, d);
    for k in 1..d {
        let mk = m(k);
        raise[(k - 1, k)] = Complex64::new(libm::sqrt(jv * (jv + 1.0) - mk * (mk + 1.0)), 0.0);
    }
    let lower = raise.adjoint();
    let x = (&raise + &lower).scale(Complex64::new(0.5, 0.0));
    // (S+ - S-) / 2i
    let y = (&raise - &lower).scale(Complex64::new(0.0, -0.5));
    let z = ComplexMatrix::from_fn(d, d, |a, b| {
        if a == b {
            Complex64::new(m(a), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    SpinMatrices { x, y, z }
}

fn check_hermitian(m: &ComplexMatrix, tol: &Tolerance) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.rows() == 0 {
        return Err(Error::ZeroDimension);
    }
    let deviation = (m - &m.adjoint()).norm();
    if deviation > tol.matrix_tol() * m.norm().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(())
}

/// Eigenvalues (ascending) and matching orthonormal eigenvectors as columns.
pub fn hermitian_eigen(m: &ComplexMatrix, tol: &Tolerance) -> Result<(Vec<f64>, ComplexMatrix)> {
    check_hermitian(m, tol)?;
    let eig = SymmetricEigen::new(m.to_nalgebra());
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = ComplexMatrix::from_fn(m.rows(), order.len(), |i, k| {
        eig.eigenvectors[(i, order[k])]
    });
    Ok((values, vectors))
}

/// Projector onto the eigenspace of `lambda`. Eigenvalues within
/// `residual_rel * max(1, ||M||_F)` of `lambda` are included.
pub fn eigenprojector(m: &ComplexMatrix, lambda: f64, tol: &Tolerance) -> Result<Projector> {
    let (values, vectors) = hermitian_eigen(m, tol)?;
    let window = tol.residual_rel * m.norm().max(1.0);
    let picked: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| (v - lambda).abs() <= window)
        .map(|(k, _)| k)
        .collect();
    if picked.is_empty() {
        return Err(Error::NotAnEigenvalue { value: lambda });
    }
    let basis = vectors.select_columns(&picked);
    Projector::new(&basis * &basis.adjoint(), tol)
}

const SQRT_3: f64 = 1.732_050_807_568_877_2;
/// `1 / (2 sqrt 2)`
const KET_SCALE: f64 = 0.353_553_390_593_273_73;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ket(entries: [Complex64; 4], label: &str) -> StateVector {
    let v: Vec<Complex64> = entries.iter().map(|z| z * KET_SCALE).collect();
    StateVector::new(ComplexMatrix::column(&v).expect("four entries"))
        .expect("fixture kets are unit vectors")
        .with_label(label)
}

/// Spin-3/2 propositions and states written out in the z-basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinFixtureSet {
    /// Projector for "spin along Y is +3/2".
    pub projector_y32: Projector,
    /// `|Y+3/2>`
    pub ket_y32: StateVector,
    /// `|Y+1/2>`
    pub ket_y12: StateVector,
    /// `|X+3/2>`
    pub ket_x32: StateVector,
}

impl SpinFixtureSet {
    pub const PROJECTOR_Y32: &'static str = "Y+3/2";
    pub const KET_Y32: &'static str = "|Y+3/2>";
    pub const KET_Y12: &'static str = "|Y+1/2>";
    pub const KET_X32: &'static str = "|X+3/2>";
    pub const PROJECTOR_X32: &'static str = "X+3/2";

    /// Projector onto `|X+3/2>`.
    pub fn projector_x32(&self) -> Projector {
        Projector::onto_vector(self.ket_x32.vector()).expect("nonzero fixture ket")
    }

    /// The column `(1, i sqrt3, -sqrt3, -i)` generating the range of the
    /// `Y+3/2` projector (eight times its first column).
    pub fn range_generator(&self) -> ComplexMatrix {
        ComplexMatrix::column(&[c(1.0, 0.0), c(0.0, SQRT_3), c(-SQRT_3, 0.0), c(0.0, -1.0)])
            .expect("four entries")
    }

    /// Three columns generating the kernel of the `Y+3/2` projector: the
    /// first three columns of `8 (I - P)`.
    pub fn kernel_generators(&self) -> ComplexMatrix {
        let rows = [
            [c(7.0, 0.0), c(0.0, SQRT_3), c(SQRT_3, 0.0)],
            [c(0.0, -SQRT_3), c(5.0, 0.0), c(0.0, 3.0)],
            [c(SQRT_3, 0.0), c(0.0, -3.0), c(5.0, 0.0)],
            [c(0.0, 1.0), c(SQRT_3, 0.0), c(0.0, -SQRT_3)],
        ];
        ComplexMatrix::new(4, 3, rows.iter().flatten().copied().collect()).expect("4x3 entries")
    }
}

/// The spin-3/2 fixtures, hard-coded rather than derived.
pub fn spin32_fixtures() -> SpinFixtureSet {
    let s = SQRT_3;
    let rows = [
        [c(1.0, 0.0), c(0.0, -s), c(-s, 0.0), c(0.0, 1.0)],
        [c(0.0, s), c(3.0, 0.0), c(0.0, -3.0), c(-s, 0.0)],
        [c(-s, 0.0), c(0.0, 3.0), c(3.0, 0.0), c(0.0, -s)],
        [c(0.0, -1.0), c(-s, 0.0), c(0.0, s), c(1.0, 0.0)],
    ];
    let y32 = ComplexMatrix::new(4, 4, rows.iter().flatten().map(|z| z / 8.0).collect())
        .expect("4x4 entries");
    SpinFixtureSet {
        projector_y32: Projector::new(y32, &Tolerance::default())
            .expect("fixture projector is valid"),
        ket_y32: ket(
            [c(0.0, 1.0), c(-s, 0.0), c(0.0, -s), c(1.0, 0.0)],
            SpinFixtureSet::KET_Y32,
        ),
        ket_y12: ket(
            [c(0.0, -s), c(1.0, 0.0), c(0.0, -1.0), c(s, 0.0)],
            SpinFixtureSet::KET_Y12,
        ),
        ket_x32: ket(
            [c(1.0, 0.0), c(s, 0.0), c(s, 0.0), c(1.0, 0.0)],
            SpinFixtureSet::KET_X32,
        ),
    }
}
