//! Numerical checks of designs on random realizations of the structured
//! matrices.
//!
//! A design is distributed observable when `(W ⊗ A, D_H)` is observable, with
//! `W` row-stochastic and `D_H = blockdiag(H_1^T H_1, ..., H_m^T H_m)`.
//! Structural results hold for almost every realization, so a random draw
//! with entries away from zero is a reliable witness.

pub mod rank;

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use rank::{kalman_rank_observable, KroneckerOperator, RankResult, TransposeOperator};

use crate::error::{Error, Result};
use crate::graph::{DesignResult, ProblemInstance, StructuredMatrix};
use crate::seed::derive_seed;
use crate::structural::distributed_gate;

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
/// Above this many states in `W ⊗ A` the Kronecker product is never formed.
pub const DENSE_KRONECKER_LIMIT: usize = 400;
const MAX_REDRAWS: u64 = 64;

/// Dense matrix with nonzeros drawn uniformly from `[0.5, 1.5]`.
pub fn realize_numeric(pattern: &StructuredMatrix, seed: u64) -> DMatrix<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = DMatrix::zeros(pattern.rows(), pattern.cols());
    for (i, j) in pattern.iter() {
        out[(i, j)] = rng.random_range(0.5..=1.5);
    }
    out
}

/// Realizes the network pattern plus a self-loop per sensor and scales each
/// row to sum to one.
pub fn make_row_stochastic(w_pattern: &StructuredMatrix, seed: u64) -> Result<DMatrix<f64>> {
    let m = w_pattern.require_square()?;
    let with_loops = StructuredMatrix::new(
        m,
        m,
        w_pattern
            .iter()
            .filter(|&(i, j)| i != j)
            .chain((0..m).map(|i| (i, i))),
    )?;
    let mut w = realize_numeric(&with_loops, seed);
    for mut row in w.row_iter_mut() {
        let sum: f64 = row.iter().sum();
        row /= sum;
    }
    Ok(w)
}

/// Realizes `H` and returns `blockdiag(H_1^T H_1, ..., H_m^T H_m)`.
pub fn build_dh(h_pattern: &StructuredMatrix, seed: u64) -> Result<DMatrix<f64>> {
    for row in 0..h_pattern.rows() {
        let count = h_pattern.row(row).count();
        if count != 1 {
            return Err(Error::MeasurementRow { row, count });
        }
    }
    Ok(dh_from_numeric(&realize_numeric(h_pattern, seed)))
}

pub fn dh_from_numeric(h: &DMatrix<f64>) -> DMatrix<f64> {
    let (m, n) = h.shape();
    let mut out = DMatrix::zeros(m * n, m * n);
    for j in 0..m {
        let hj = h.row(j);
        let block = hj.transpose() * hj;
        out.view_mut((j * n, j * n), (n, n)).copy_from(&block);
    }
    out
}

/// Realization of a square pattern redrawn until numerically nonsingular.
pub fn realize_nonsingular(pattern: &StructuredMatrix, seed: u64, tolerance: f64) -> DMatrix<f64> {
    let mut a = realize_numeric(pattern, seed);
    for attempt in 1..=MAX_REDRAWS {
        let sv = a.clone().singular_values();
        if sv.max() > 0.0 && sv.min() > tolerance * sv.max() {
            break;
        }
        a = realize_numeric(pattern, derive_seed(seed, "redraw", attempt));
    }
    a
}

/// Kalman rank of `(A, H)` on one random realization.
pub fn realized_pair_rank(
    a_pattern: &StructuredMatrix,
    h_pattern: &StructuredMatrix,
    seed: u64,
    tolerance: f64,
) -> Result<RankResult> {
    let n = a_pattern.require_square()?;
    h_pattern.require_shape(h_pattern.rows(), n)?;
    let a = realize_numeric(a_pattern, derive_seed(seed, "realize-A", 0));
    let h = realize_numeric(h_pattern, derive_seed(seed, "realize-H", 0));
    Ok(kalman_rank_observable(&a, &h, tolerance))
}

/// Outcome of repeated numerical trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub trials: usize,
    pub passes: usize,
    pub tolerance: f64,
    /// Rank deficit of each failed trial, in trial order.
    pub rank_deficits: Vec<usize>,
}

impl VerificationReport {
    pub fn pass_rate(&self) -> f64 {
        self.passes as f64 / self.trials as f64
    }

    pub fn to_json(&self) -> String {
        crate::graph::json::to_pretty(self)
    }
}

/// One trial of the `(W ⊗ A, D_H)` rank test. No structural gate.
pub fn distributed_rank_trial(
    a_pattern: &StructuredMatrix,
    h_pattern: &StructuredMatrix,
    w_pattern: &StructuredMatrix,
    seed: u64,
    trial: u64,
    tolerance: f64,
) -> Result<RankResult> {
    let n = a_pattern.require_square()?;
    let m = w_pattern.require_square()?;
    h_pattern.require_shape(m, n)?;
    let a = realize_nonsingular(a_pattern, derive_seed(seed, "realize-A", trial), tolerance);
    let w = make_row_stochastic(w_pattern, derive_seed(seed, "realize-W", trial))?;
    let dh = build_dh(h_pattern, derive_seed(seed, "realize-H", trial))?;
    if m * n <= DENSE_KRONECKER_LIMIT {
        Ok(kalman_rank_observable(&w.kronecker(&a), &dh, tolerance))
    } else {
        let op = KroneckerOperator { w: &w, a: &a };
        Ok(rank::observable_subspace_rank(&op, &dh, tolerance))
    }
}

/// Repeats [`distributed_rank_trial`] without checking the design first.
pub fn numeric_trials(
    a_pattern: &StructuredMatrix,
    h_pattern: &StructuredMatrix,
    w_pattern: &StructuredMatrix,
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<VerificationReport> {
    if trials == 0 {
        return Err(Error::invalid("trials", "at least one trial is required"));
    }
    let mut passes = 0;
    let mut rank_deficits = Vec::new();
    for trial in 0..trials {
        let r = distributed_rank_trial(a_pattern, h_pattern, w_pattern, seed, trial as u64, tolerance)?;
        if r.observable {
            passes += 1;
        } else {
            rank_deficits.push(r.deficit());
        }
    }
    Ok(VerificationReport {
        trials,
        passes,
        tolerance,
        rank_deficits,
    })
}

/// Numerical distributed-observability check of a design that passes the
/// structural gate.
pub fn verify_design_numeric(
    instance: &ProblemInstance,
    design: &DesignResult,
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<VerificationReport> {
    if let Some(reason) = distributed_gate(instance, &design.measurement, &design.network)? {
        return Err(Error::StructuralGate(reason));
    }
    numeric_trials(
        instance.system(),
        &design.measurement,
        &design.network,
        trials,
        seed,
        tolerance,
    )
}
