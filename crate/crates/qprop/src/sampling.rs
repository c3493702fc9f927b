//! Parallel gap-frequency runs and dimension/rank sweeps.
//!
//! Trial `t` draws its state from its own substream of the master seed, so
//! with the residual method the tallies match the serial
//! `qprop_core::sampling::gap_frequency` exactly, whatever the thread count.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use qprop_core::sampling::{haar_state_from, random_projector, stream, GapCounts, GapStatistics};
use qprop_core::valuation::membership;
use qprop_core::{MembershipMethod, Result, Tolerance};

pub fn gap_frequency_par(
    n: usize,
    rank: usize,
    trials: u64,
    seed: u64,
    method: MembershipMethod,
    tol: &Tolerance,
) -> Result<GapStatistics> {
    let p = random_projector(n, rank, seed)?;
    let counts = (0..trials)
        .into_par_iter()
        .map(|t| {
            let state = haar_state_from(&mut stream(seed, t + 1), n)?;
            let mut c = GapCounts::default();
            c.record(membership(&state, &p, method, tol)?.membership);
            Ok(c)
        })
        .try_reduce(GapCounts::default, |a, b| Ok(a + b))?;
    Ok(GapStatistics {
        dimension: n,
        projector_rank: rank,
        trials,
        counts,
        seed,
    })
}

/// Runs every `(dimension, rank)` pair with the same seed.
pub fn sweep(
    dims: &[usize],
    ranks: &[usize],
    trials: u64,
    seed: u64,
    method: MembershipMethod,
    tol: &Tolerance,
) -> Result<Vec<GapStatistics>> {
    let mut out = Vec::with_capacity(dims.len() * ranks.len());
    for &n in dims {
        for &r in ranks {
            out.push(gap_frequency_par(n, r, trials, seed, method, tol)?);
        }
    }
    Ok(out)
}

/// JSON view of a run.
#[derive(Debug, Clone, Serialize)]
pub struct StatisticsJson {
    pub dimension: usize,
    pub projector_rank: usize,
    pub trials: u64,
    pub seed: u64,
    pub in_range: u64,
    pub in_kernel: u64,
    pub gap: u64,
    pub gap_fraction: f64,
}

impl From<&GapStatistics> for StatisticsJson {
    fn from(s: &GapStatistics) -> Self {
        Self {
            dimension: s.dimension,
            projector_rank: s.projector_rank,
            trials: s.trials,
            seed: s.seed,
            in_range: s.counts.in_range,
            in_kernel: s.counts.in_kernel,
            gap: s.counts.gap,
            gap_fraction: s.gap_fraction(),
        }
    }
}

#[derive(Serialize)]
struct CsvRow {
    dimension: usize,
    rank: usize,
    gap_fraction: f64,
}

/// Writes `dimension,rank,gap_fraction` rows with a header.
pub fn write_csv<W: Write>(out: W, stats: &[GapStatistics]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for s in stats {
        w.serialize(CsvRow {
            dimension: s.dimension,
            rank: s.projector_rank,
            gap_fraction: s.gap_fraction(),
        })?;
    }
    w.flush()?;
    Ok(())
}
