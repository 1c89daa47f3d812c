//! Argmax frequency experiments: draw random Gaussian pairs, find which of
//! the 62 representative words attains the largest normalized spectral
//! radius, and count wins per representative.
//!
//! Runs are reproducible bit-for-bit: sample `i` of a run with seed `s` draws
//! from the dedicated stream (s, i), so any partitioning across workers
//! produces the same table.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::mat2::{normalized_spectral_radius, MatrixPair, SPECTRAL_TOL};
use crate::rng::{gaussian_pair, stream_rng, Dist};
use crate::words::{enumerate_representatives, Word, WordError};

/// Draws one matrix pair: 8 independent standard normals in real mode, 16 in
/// complex mode.
pub fn sample_pair(dist: Dist, rng: &mut ChaCha8Rng) -> MatrixPair {
    gaussian_pair(rng, dist)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExperimentConfig {
    pub samples: u64,
    pub dist: Dist,
    pub seed: u64,
    pub max_len: usize,
    pub tie_epsilon: f64,
}

impl ExperimentConfig {
    pub fn new(samples: u64, dist: Dist, seed: u64) -> Self {
        ExperimentConfig {
            samples,
            dist,
            seed,
            max_len: 8,
            tie_epsilon: SPECTRAL_TOL,
        }
    }
}

/// Win counts per representative word, in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrequencyTable {
    pub counts: Vec<u64>,
    /// Samples where the runner-up radius was within `tie_epsilon` relative
    /// of the winner. Such samples still count for the winning index.
    pub ties: u64,
    pub samples: u64,
    pub max_len: usize,
}

/// Index of the representative with the largest normalized spectral radius,
/// ties broken toward the smallest index, plus a near-tie flag.
pub fn argmax_word(p: &MatrixPair, reps: &[Word], tie_epsilon: f64) -> (usize, bool) {
    assert!(!reps.is_empty());
    let mut best = f64::NEG_INFINITY;
    let mut second = f64::NEG_INFINITY;
    let mut best_idx = 0;
    for (i, w) in reps.iter().enumerate() {
        let r = normalized_spectral_radius(w, p);
        if r > best {
            second = best;
            best = r;
            best_idx = i;
        } else if r > second {
            second = r;
        }
    }
    let tie = if reps.len() == 1 {
        false
    } else if best > 0.0 {
        (best - second) < tie_epsilon * best
    } else {
        // All radii zero (or indistinguishable from it).
        second == best
    };
    (best_idx, tie)
}

/// Runs the experiment described by `cfg`. Deterministic for a given config,
/// regardless of the rayon worker count.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<FrequencyTable, WordError> {
    let reps = enumerate_representatives(cfg.max_len)?;
    let n = reps.len();
    let (counts, ties) = (0..cfg.samples)
        .into_par_iter()
        .fold(
            || (vec![0u64; n], 0u64),
            |(mut counts, mut ties), index| {
                let mut rng = stream_rng(cfg.seed, index);
                let p = sample_pair(cfg.dist, &mut rng);
                let (idx, tie) = argmax_word(&p, &reps, cfg.tie_epsilon);
                counts[idx] += 1;
                ties += u64::from(tie);
                (counts, ties)
            },
        )
        .reduce(
            || (vec![0u64; n], 0u64),
            |(mut ca, ta), (cb, tb)| {
                for (a, b) in ca.iter_mut().zip(&cb) {
                    *a += b;
                }
                (ca, ta + tb)
            },
        );
    Ok(FrequencyTable {
        counts,
        ties,
        samples: cfg.samples,
        max_len: cfg.max_len,
    })
}

/// Percent of samples whose winning word has length L, for L = 1..8.
/// Lengths above `max_len` report zero.
pub fn length_distribution(t: &FrequencyTable) -> [f64; 8] {
    let reps = enumerate_representatives(t.max_len).expect("table max_len was validated");
    assert_eq!(reps.len(), t.counts.len(), "table does not match its word list");
    assert!(t.samples > 0, "empty table has no distribution");
    let mut out = [0.0; 8];
    for (rep, &count) in reps.iter().zip(&t.counts) {
        out[rep.len() - 1] += count as f64;
    }
    for share in &mut out {
        *share *= 100.0 / t.samples as f64;
    }
    out
}
