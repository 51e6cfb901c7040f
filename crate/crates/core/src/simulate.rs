//! Exact and Monte Carlo evaluation of analyzer chains.
//!
//! A photon prepared in `initial` passes through a sequence of polarization
//! measurements. Each stage yields `+` or `−` with the single-step
//! probability from [`probability`], after which the photon is taken to be
//! exactly in the state labelled by that stage's direction and outcome
//! (projective collapse). Outcome sequences are indexed with the first stage
//! as the most significant bit and `Minus` as `1`, so index order is
//! lexicographic with `+` before `−`.
//!
//! # Random streams
//!
//! Sampling uses [`ChaCha8Rng`]. Trials are split into consecutive chunks of
//! [`CHUNK_TRIALS`]; chunk `k` draws from `ChaCha8Rng::seed_from_u64(seed)`
//! with `set_stream(k)` and consumes one uniform `f64` per stage per trial.
//! Chunks run in parallel and their integer counts are summed, so a report
//! depends only on `(scenario, seed, trials)` and never on the number of
//! worker threads.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::amplitude::{probability, Branch, BranchLabel, Direction};
use crate::error::{Error, Result};

/// Default maximum number of stages; `2^20` outcome sequences.
pub const DEFAULT_STAGE_CAP: usize = 20;

/// Trials per random stream.
pub const CHUNK_TRIALS: u64 = 1 << 16;

/// Hard upper bound on the stage cap, set by the `u32` sequence encoding.
pub const MAX_STAGE_CAP: usize = 31;

#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementScenario {
    pub initial: BranchLabel,
    pub stages: Vec<Direction>,
}

impl MeasurementScenario {
    pub fn new(initial: BranchLabel, stages: Vec<Direction>) -> Result<Self> {
        let s = Self { initial, stages };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.stages.is_empty() {
            return Err(Error::NoStages);
        }
        if !self.initial.direction.is_finite() {
            return Err(Error::NonFiniteAngle("initial direction".into()));
        }
        if let Some(k) = self.stages.iter().position(|d| !d.is_finite()) {
            return Err(Error::NonFiniteAngle(format!("stage {}", k + 1)));
        }
        Ok(())
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        self.validate()?;
        let cap = cap.min(MAX_STAGE_CAP);
        if self.stages.len() > cap {
            return Err(Error::StageCapExceeded {
                stages: self.stages.len(),
                cap,
            });
        }
        Ok(())
    }

    /// Outcome probabilities `[P(+), P(−)]` at each stage, indexed by the
    /// previous stage's outcome. The first row uses the initial label for
    /// both entries.
    fn transition_table(&self) -> Vec<[[f64; 2]; 2]> {
        let step = |from: BranchLabel, to: Direction| {
            [probability(from, to.plus()), probability(from, to.minus())]
        };
        let mut rows = Vec::with_capacity(self.stages.len());
        let mut prev: Option<Direction> = None;
        for &stage in &self.stages {
            let row = match prev {
                None => {
                    let p = step(self.initial, stage);
                    [p, p]
                }
                Some(d) => [step(d.plus(), stage), step(d.minus(), stage)],
            };
            rows.push(row);
            prev = Some(stage);
        }
        rows
    }
}

/// One outcome per stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BranchSequence {
    bits: u32,
    len: u8,
}

impl BranchSequence {
    pub fn from_index(index: usize, len: usize) -> Self {
        assert!(len <= MAX_STAGE_CAP && index < (1usize << len));
        Self {
            bits: index as u32,
            len: len as u8,
        }
    }

    pub fn from_branches(branches: &[Branch]) -> Self {
        let bits = branches
            .iter()
            .fold(0u32, |acc, b| (acc << 1) | (*b == Branch::Minus) as u32);
        Self::from_index(bits as usize, branches.len())
    }

    pub fn index(&self) -> usize {
        self.bits as usize
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Outcome at stage `k` (0-based).
    pub fn get(&self, k: usize) -> Branch {
        assert!(k < self.len());
        if (self.bits >> (self.len() - 1 - k)) & 1 == 1 {
            Branch::Minus
        } else {
            Branch::Plus
        }
    }

    pub fn branches(&self) -> Vec<Branch> {
        (0..self.len()).map(|k| self.get(k)).collect()
    }
}

impl fmt::Display for BranchSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..self.len() {
            write!(f, "{}", self.get(k))?;
        }
        Ok(())
    }
}

/// Probability of every outcome sequence, in index order.
#[derive(Debug, Clone, PartialEq)]
pub struct OutcomeDistribution {
    stages: usize,
    probs: Vec<f64>,
}

impl OutcomeDistribution {
    pub fn stages(&self) -> usize {
        self.stages
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn probability(&self, seq: BranchSequence) -> f64 {
        assert_eq!(seq.len(), self.stages);
        self.probs[seq.index()]
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (BranchSequence, f64)> + '_ {
        self.probs
            .iter()
            .enumerate()
            .map(move |(i, &p)| (BranchSequence::from_index(i, self.stages), p))
    }

    /// Sums out the final stage. `None` for a single-stage distribution.
    pub fn marginalize_last(&self) -> Option<OutcomeDistribution> {
        if self.stages < 2 {
            return None;
        }
        Some(OutcomeDistribution {
            stages: self.stages - 1,
            probs: self.probs.chunks_exact(2).map(|c| c[0] + c[1]).collect(),
        })
    }
}

pub fn exact_distribution(scenario: &MeasurementScenario) -> Result<OutcomeDistribution> {
    exact_distribution_capped(scenario, DEFAULT_STAGE_CAP)
}

pub fn exact_distribution_capped(
    scenario: &MeasurementScenario,
    stage_cap: usize,
) -> Result<OutcomeDistribution> {
    scenario.check_cap(stage_cap)?;
    let rows = scenario.transition_table();
    let mut probs = vec![1.0];
    for (k, row) in rows.iter().enumerate() {
        let mut next = Vec::with_capacity(probs.len() * 2);
        for (i, &p) in probs.iter().enumerate() {
            // previous outcome is the low bit of the prefix index
            let prev = if k == 0 { 0 } else { i & 1 };
            next.push(p * row[prev][0]);
            next.push(p * row[prev][1]);
        }
        probs = next;
    }
    Ok(OutcomeDistribution {
        stages: rows.len(),
        probs,
    })
}

/// Monte Carlo counts for a scenario with each sequence's deviation from the
/// exact probability in binomial standard deviations.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleReport {
    pub seed: u64,
    pub trials: u64,
    pub stages: usize,
    /// Counts in sequence index order; they sum to `trials`.
    pub counts: Vec<u64>,
    /// `(count/trials − p) / sqrt(p(1−p)/trials)` per sequence. Zero when
    /// `p` is exactly 0 or 1 and the count agrees, infinite otherwise.
    pub deviations_sigma: Vec<f64>,
    pub max_abs_deviation_sigma: f64,
}

impl SampleReport {
    pub fn count(&self, seq: BranchSequence) -> u64 {
        self.counts[seq.index()]
    }

    pub fn frequency(&self, seq: BranchSequence) -> f64 {
        self.count(seq) as f64 / self.trials as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = (BranchSequence, u64, f64)> + '_ {
        self.counts
            .iter()
            .zip(&self.deviations_sigma)
            .enumerate()
            .map(move |(i, (&c, &d))| (BranchSequence::from_index(i, self.stages), c, d))
    }
}

pub fn sample(scenario: &MeasurementScenario, seed: u64, trials: u64) -> Result<SampleReport> {
    sample_capped(scenario, seed, trials, DEFAULT_STAGE_CAP)
}

pub fn sample_capped(
    scenario: &MeasurementScenario,
    seed: u64,
    trials: u64,
    stage_cap: usize,
) -> Result<SampleReport> {
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let exact = exact_distribution_capped(scenario, stage_cap)?;
    let rows = scenario.transition_table();
    let size = exact.probs.len();
    let chunks = trials.div_ceil(CHUNK_TRIALS);

    let counts = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let start = chunk * CHUNK_TRIALS;
            let end = (start + CHUNK_TRIALS).min(trials);
            let mut local = vec![0u64; size];
            for _ in start..end {
                let mut index = 0usize;
                let mut prev = 0usize;
                for row in &rows {
                    let u: f64 = rng.random();
                    let minus = (u >= row[prev][0]) as usize;
                    index = (index << 1) | minus;
                    prev = minus;
                }
                local[index] += 1;
            }
            local
        })
        .reduce(
            || vec![0u64; size],
            |mut acc, part| {
                acc.iter_mut().zip(part).for_each(|(a, b)| *a += b);
                acc
            },
        );

    let n = trials as f64;
    let deviations_sigma: Vec<f64> = counts
        .iter()
        .zip(&exact.probs)
        .map(|(&c, &p)| {
            let sigma = (p * (1.0 - p) / n).sqrt();
            if sigma > 0.0 {
                (c as f64 / n - p) / sigma
            } else if (p == 0.0 && c == 0) || (p == 1.0 && c == trials) {
                0.0
            } else {
                f64::INFINITY
            }
        })
        .collect();
    let max_abs_deviation_sigma = deviations_sigma
        .iter()
        .fold(0.0f64, |m, d| m.max(d.abs()));

    Ok(SampleReport {
        seed,
        trials,
        stages: exact.stages,
        counts,
        deviations_sigma,
        max_abs_deviation_sigma,
    })
}
