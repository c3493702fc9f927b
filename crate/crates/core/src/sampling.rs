//! Randomized demonstrations that total two-valued valuations fail: random
//! rank-1 propositions leave the `R` and `K` systems overdetermined, and Haar
//! random states almost surely land in neither range nor kernel.
//!
//! Every random draw comes from a ChaCha20 stream keyed by `(seed, index)`.
//! Stream 0 of a seed feeds [`haar_state`] and [`random_projector`]; trial
//! `t` of [`gap_frequency`] uses stream `t + 1`, so trials can run in any
//! order or in parallel and still tally identically.

use alloc::vec::Vec;
use core::ops::{Add, AddAssign};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::clinalg::{self, ComplexMatrix, Tolerance};
use crate::error::{Error, Result};
use crate::subspace::Projector;
use crate::valuation::{self, Membership, MembershipMethod, MembershipOutcome, StateVector};

/// Deterministic generator for stream `index` of `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform unit vector in `C^n`: normalized i.i.d. complex Gaussians.
pub fn haar_state_from<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<StateVector> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    loop {
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        let v = ComplexMatrix::column(&v)?;
        if v.norm() > 0.0 {
            return StateVector::normalized(v);
        }
    }
}

pub fn haar_state(n: usize, seed: u64) -> Result<StateVector> {
    haar_state_from(&mut stream(seed, 0), n)
}

/// Projector onto the span of `rank` Haar vectors.
pub fn random_projector_from<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    rank: usize,
) -> Result<Projector> {
    if n == 0 {
        return Err(Error::ZeroDimension);
    }
    if rank == 0 || rank >= n {
        return Err(Error::TrivialRank { dim: n, rank });
    }
    let tol = Tolerance::default();
    loop {
        let vectors: Vec<StateVector> = (0..rank)
            .map(|_| haar_state_from(rng, n))
            .collect::<Result<_>>()?;
        let columns: Vec<&ComplexMatrix> = vectors.iter().map(|s| s.vector()).collect();
        let basis = clinalg::orthonormal_column_basis(&ComplexMatrix::hstack(&columns)?, &tol);
        if basis.cols() == rank {
            return Projector::new(&basis * &basis.adjoint(), &tol);
        }
    }
}

pub fn random_projector(n: usize, rank: usize, seed: u64) -> Result<Projector> {
    random_projector_from(&mut stream(seed, 0), n, rank)
}

/// Unknown counts of the `RX = psi` and `KX = psi` systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OverdeterminationReport {
    pub n: usize,
    /// Independent columns of `P`.
    pub m: usize,
    /// Independent columns of `I - P`.
    pub k: usize,
    pub overdetermined_r: bool,
    pub overdetermined_k: bool,
}

pub fn overdetermination_report(p: &Projector, tol: &Tolerance) -> OverdeterminationReport {
    let n = p.dim();
    let m = p.rank(tol);
    let k = p.complement().rank(tol);
    OverdeterminationReport {
        n,
        m,
        k,
        overdetermined_r: m < n,
        overdetermined_k: k < n,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GapCounts {
    pub in_range: u64,
    pub in_kernel: u64,
    pub gap: u64,
}

impl GapCounts {
    pub fn record(&mut self, m: Membership) {
        match m {
            Membership::InRange => self.in_range += 1,
            Membership::InKernel => self.in_kernel += 1,
            Membership::Neither => self.gap += 1,
        }
    }

    pub fn total(&self) -> u64 {
        self.in_range + self.in_kernel + self.gap
    }
}

impl Add for GapCounts {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            in_range: self.in_range + rhs.in_range,
            in_kernel: self.in_kernel + rhs.in_kernel,
            gap: self.gap + rhs.gap,
        }
    }
}

impl AddAssign for GapCounts {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GapStatistics {
    pub dimension: usize,
    pub projector_rank: usize,
    pub trials: u64,
    pub counts: GapCounts,
    pub seed: u64,
}

impl GapStatistics {
    pub fn gap_fraction(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.counts.gap as f64 / self.trials as f64
        }
    }
}

/// Membership of the Haar state drawn for trial `t`.
pub fn classify_trial(p: &Projector, seed: u64, t: u64, tol: &Tolerance) -> Result<Membership> {
    let state = haar_state_from(&mut stream(seed, t + 1), p.dim())?;
    Ok(valuation::membership(&state, p, MembershipMethod::Residual, tol)?.membership)
}

/// Tallies range, kernel, and gap outcomes of `trials` Haar states against
/// one fixed `random_projector(n, rank, seed)`.
pub fn gap_frequency(
    n: usize,
    rank: usize,
    trials: u64,
    seed: u64,
    tol: &Tolerance,
) -> Result<GapStatistics> {
    let p = random_projector(n, rank, seed)?;
    let mut counts = GapCounts::default();
    for t in 0..trials {
        counts.record(classify_trial(&p, seed, t, tol)?);
    }
    Ok(GapStatistics {
        dimension: n,
        projector_rank: rank,
        trials,
        counts,
        seed,
    })
}

/// A state and a rank-1 proposition it neither satisfies nor refutes.
#[derive(Debug, Clone)]
pub struct GapWitness {
    pub state: StateVector,
    pub projector: Projector,
    pub outcome: MembershipOutcome,
}

pub const WITNESS_ATTEMPTS: usize = 64;

/// Samples rank-1 projectors and Haar states until a gap appears whose Born
/// probability also sits inside the probability band. The first attempt
/// succeeds almost surely.
pub fn find_gap_witness(n: usize, seed: u64, tol: &Tolerance) -> Result<GapWitness> {
    if n < 2 {
        return Err(Error::TrivialRank { dim: n, rank: 1 });
    }
    let band = tol.probability_band();
    for attempt in 0..WITNESS_ATTEMPTS {
        let mut rng = stream(seed, attempt as u64);
        let projector = random_projector_from(&mut rng, n, 1)?;
        let state = haar_state_from(&mut rng, n)?;
        let outcome = valuation::membership(&state, &projector, MembershipMethod::Residual, tol)?;
        let prob = valuation::born_probability(&state, &projector)?;
        if outcome.membership == Membership::Neither && prob > band && prob < 1.0 - band {
            return Ok(GapWitness {
                state,
                projector,
                outcome,
            });
        }
    }
    Err(Error::WitnessBudgetExhausted {
        attempts: WITNESS_ATTEMPTS,
    })
}
