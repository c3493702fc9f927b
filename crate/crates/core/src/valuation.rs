//! Truth values of propositions in a pure state.
//!
//! Membership of the state in the range or kernel of a projector is decided
//! two ways. The residual method measures `||(I - P)psi||` and `||P psi||`
//! directly. The linear-system method keeps only linearly independent columns
//! of `P` (giving `R`) and of `I - P` (giving `K`) and asks whether the
//! overdetermined systems `RX = psi` and `KX = psi` have exact least-squares
//! solutions. Both are retained; their agreement is tested.
//!
//! A state in the range makes the proposition true and a state in the kernel
//! makes it false. A state in neither is a truth-value gap under
//! [`Semantics::Supervaluation`] and false under
//! [`Semantics::QuantumLogicTotal`].

use alloc::string::String;
use core::fmt;
use core::ops::{BitAnd, BitOr, Not};

use num_complex::Complex64;

use crate::clinalg::{self, ComplexMatrix, Tolerance};
use crate::error::{Error, Result};
use crate::subspace::Projector;

/// Three-valued outcome with strong Kleene connectives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthValue {
    True,
    False,
    /// Neither true nor false.
    Gap,
}

impl TruthValue {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::True => "true",
            Self::False => "false",
            Self::Gap => "gap",
        }
    }

    /// Bivalent reading with the gap collapsed to false.
    pub fn gap_as_false(self) -> Self {
        match self {
            Self::Gap => Self::False,
            v => v,
        }
    }
}

impl From<bool> for TruthValue {
    fn from(b: bool) -> Self {
        if b {
            Self::True
        } else {
            Self::False
        }
    }
}

impl Not for TruthValue {
    type Output = Self;

    fn not(self) -> Self {
        match self {
            Self::True => Self::False,
            Self::False => Self::True,
            Self::Gap => Self::Gap,
        }
    }
}

impl BitAnd for TruthValue {
    type Output = Self;

    fn bitand(self, other: Self) -> Self {
        match (self, other) {
            (Self::False, _) | (_, Self::False) => Self::False,
            (Self::True, Self::True) => Self::True,
            _ => Self::Gap,
        }
    }
}

impl BitOr for TruthValue {
    type Output = Self;

    fn bitor(self, other: Self) -> Self {
        match (self, other) {
            (Self::True, _) | (_, Self::True) => Self::True,
            (Self::False, Self::False) => Self::False,
            _ => Self::Gap,
        }
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Semantics {
    /// Partial valuation: states in neither range nor kernel give a gap.
    #[default]
    Supervaluation,
    /// Total valuation: the gap case is read as false.
    QuantumLogicTotal,
}

impl Semantics {
    /// Short code used in reports: `SV` or `QL`.
    pub fn code(self) -> &'static str {
        match self {
            Self::Supervaluation => "SV",
            Self::QuantumLogicTotal => "QL",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MembershipMethod {
    #[default]
    Residual,
    LinearSystem,
}

impl MembershipMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Residual => "residual",
            Self::LinearSystem => "linsys",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Membership {
    InRange,
    InKernel,
    /// In neither range nor kernel.
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipOutcome {
    pub membership: Membership,
    pub method: MembershipMethod,
    /// Distance from the state to the range (residual of `RX = psi`).
    pub residual_range: f64,
    /// Distance from the state to the kernel (residual of `KX = psi`).
    pub residual_kernel: f64,
}

impl MembershipOutcome {
    pub fn truth(&self, semantics: Semantics) -> TruthValue {
        match (self.membership, semantics) {
            (Membership::InRange, _) => TruthValue::True,
            (Membership::InKernel, _) => TruthValue::False,
            (Membership::Neither, Semantics::Supervaluation) => TruthValue::Gap,
            (Membership::Neither, Semantics::QuantumLogicTotal) => TruthValue::False,
        }
    }
}

/// Unit column vector describing a pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    vector: ComplexMatrix,
    label: Option<String>,
}

impl StateVector {
    pub const NORM_TOL: f64 = 1e-12;

    /// Accepts a column with `| ||v|| - 1 | <= 1e-12`.
    pub fn new(vector: ComplexMatrix) -> Result<Self> {
        if !vector.is_column() {
            return Err(Error::NotAColumn {
                cols: vector.cols(),
            });
        }
        if vector.rows() == 0 {
            return Err(Error::ZeroDimension);
        }
        let norm = vector.norm();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        if (norm - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::NotUnit { norm });
        }
        Ok(Self {
            vector,
            label: None,
        })
    }

    /// Rescales a nonzero column to unit norm.
    pub fn normalized(vector: ComplexMatrix) -> Result<Self> {
        if !vector.is_column() {
            return Err(Error::NotAColumn {
                cols: vector.cols(),
            });
        }
        let norm = vector.norm();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        Self::new(vector.scale(Complex64::new(1.0 / norm, 0.0)))
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn vector(&self) -> &ComplexMatrix {
        &self.vector
    }

    pub fn dim(&self) -> usize {
        self.vector.rows()
    }
}

fn check_dims(state: &StateVector, p: &Projector) -> Result<()> {
    if state.dim() != p.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: state.dim(),
        });
    }
    Ok(())
}

fn classify(residual_range: f64, residual_kernel: f64, tol: &Tolerance) -> Membership {
    // unit states: ||P psi||^2 + ||(I-P)psi||^2 = 1, so both cannot be small
    if residual_range <= tol.residual_rel {
        Membership::InRange
    } else if residual_kernel <= tol.residual_rel {
        Membership::InKernel
    } else {
        Membership::Neither
    }
}

/// Builds `R` from independent columns of `P` and `K` from independent
/// columns of `I - P`. Column counts are `m = rank(P)` and `k = n - m`.
pub fn system_matrices(p: &Projector, tol: &Tolerance) -> (ComplexMatrix, ComplexMatrix) {
    let m = p.rank(tol);
    let complement = p.complement();
    let r_cols = clinalg::pivoted_columns(p.matrix(), m).pivots;
    let k_cols = clinalg::pivoted_columns(complement.matrix(), p.dim() - m).pivots;
    (
        p.matrix().select_columns(&r_cols),
        complement.matrix().select_columns(&k_cols),
    )
}

/// Decides whether the state lies in the range, the kernel, or neither.
pub fn membership(
    state: &StateVector,
    p: &Projector,
    method: MembershipMethod,
    tol: &Tolerance,
) -> Result<MembershipOutcome> {
    check_dims(state, p)?;
    let psi = state.vector();
    let (residual_range, residual_kernel) = match method {
        MembershipMethod::Residual => {
            let (range_part, kernel_part) = decompose(state, p)?;
            (kernel_part.norm(), range_part.norm())
        }
        MembershipMethod::LinearSystem => {
            let (r, k) = system_matrices(p, tol);
            let in_range = clinalg::least_squares_solve(&r, psi, tol)?;
            let in_kernel = clinalg::least_squares_solve(&k, psi, tol)?;
            (in_range.residual_norm, in_kernel.residual_norm)
        }
    };
    Ok(MembershipOutcome {
        membership: classify(residual_range, residual_kernel, tol),
        method,
        residual_range,
        residual_kernel,
    })
}

/// Truth value of the proposition `P` in the state, via the residual method.
pub fn valuate(
    state: &StateVector,
    p: &Projector,
    semantics: Semantics,
    tol: &Tolerance,
) -> Result<TruthValue> {
    Ok(membership(state, p, MembershipMethod::Residual, tol)?.truth(semantics))
}

/// `(P psi, (I - P) psi)`.
pub fn decompose(state: &StateVector, p: &Projector) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_dims(state, p)?;
    let range_part = p.apply(state.vector())?;
    let kernel_part = state.vector() - &range_part;
    Ok((range_part, kernel_part))
}

/// Born probability `<psi|P|psi> = ||P psi||^2`, clamped to `[0, 1]`.
pub fn born_probability(state: &StateVector, p: &Projector) -> Result<f64> {
    check_dims(state, p)?;
    let pv = p.apply(state.vector())?;
    Ok(pv.inner(&pv).re.clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsistencyReport {
    pub truth: TruthValue,
    pub probability: f64,
    pub consistent: bool,
}

/// Checks a truth value against the Born probability: true needs
/// probability 1, false under supervaluation needs 0, and a gap needs a
/// probability strictly inside `(band, 1 - band)` with
/// `band = sqrt(residual_rel)`.
pub fn check_consistency(
    state: &StateVector,
    p: &Projector,
    semantics: Semantics,
    tol: &Tolerance,
) -> Result<ConsistencyReport> {
    let truth = valuate(state, p, semantics, tol)?;
    let probability = born_probability(state, p)?;
    let band = tol.probability_band();
    let consistent = match (truth, semantics) {
        (TruthValue::True, _) => (probability - 1.0).abs() <= band,
        (TruthValue::False, Semantics::Supervaluation) => probability <= band,
        (TruthValue::False, Semantics::QuantumLogicTotal) => probability < 1.0 - band,
        (TruthValue::Gap, _) => probability > band && probability < 1.0 - band,
    };
    Ok(ConsistencyReport {
        truth,
        probability,
        consistent,
    })
}
