use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{Alphabet, MosaicMatrix};
use crate::target::target_space;
use crate::verify::{cover_into, CoverageSet, DEFAULT_GUARD_BITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub trials: u64,
    pub n: usize,
    pub k: usize,
    pub a: u32,
    pub guard_bits: u32,
}

impl ExperimentConfig {
    pub fn new(n: usize, k: usize, a: u32, trials: u64, seed: u64) -> Self {
        Self {
            seed,
            trials,
            n,
            k,
            a,
            guard_bits: DEFAULT_GUARD_BITS,
        }
    }
}

/// Estimates with standard errors; `per_target` is only filled by exact
/// enumeration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissingStats {
    pub n: usize,
    pub k: usize,
    pub a: u32,
    pub samples: u64,
    pub p_omni_hat: f64,
    pub p_omni_stderr: f64,
    pub ex_missing_hat: f64,
    pub ex_missing_stderr: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub per_target: Option<Vec<f64>>,
}

/// Generator for trial `trial`: ChaCha8 keyed by `seed`, stream `trial`.
/// Every trial draws from its own stream, so results do not depend on how
/// trials are split between workers.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// An `n`x`n` matrix with independent uniform entries, filled row-major.
pub fn random_matrix<R: Rng + ?Sized>(n: usize, a: Alphabet, rng: &mut R) -> MosaicMatrix {
    let entries = (0..n * n).map(|_| rng.random_range(0..a.size()) as u8).collect();
    MosaicMatrix::from_parts_unchecked(n, n, a, entries)
}

fn check_config(cfg: &ExperimentConfig) -> Result<(Alphabet, u64)> {
    let alphabet = Alphabet::new(cfg.a)?;
    if cfg.trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if cfg.k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let space = target_space(cfg.k, cfg.a)
        .filter(|&s| cfg.guard_bits >= 63 || s <= 1u64 << cfg.guard_bits)
        .ok_or(Error::CoverageGuard {
            k: cfg.k,
            a: cfg.a,
            guard_bits: cfg.guard_bits,
        })?;
    Ok((alphabet, space))
}

#[derive(Default, Clone, Copy)]
struct Tally {
    omni: u64,
    missing: u128,
    missing_sq: u128,
}

impl Tally {
    fn merge(self, o: Tally) -> Tally {
        Tally {
            omni: self.omni + o.omni,
            missing: self.missing + o.missing,
            missing_sq: self.missing_sq + o.missing_sq,
        }
    }
}

pub(crate) fn stats_from_moments(
    n: usize,
    k: usize,
    a: u32,
    samples: u64,
    omni: u64,
    missing: u128,
    missing_sq: u128,
) -> MissingStats {
    let t = samples as f64;
    let p = omni as f64 / t;
    let mean = missing as f64 / t;
    let var = if samples > 1 {
        ((missing_sq as f64 - t * mean * mean) / (t - 1.0)).max(0.0)
    } else {
        0.0
    };
    MissingStats {
        n,
        k,
        a,
        samples,
        p_omni_hat: p,
        p_omni_stderr: (p * (1.0 - p) / t).sqrt(),
        ex_missing_hat: mean,
        ex_missing_stderr: (var / t).sqrt(),
        per_target: None,
    }
}

/// Monte-Carlo estimates of `P(omni)` and `E(missing)` over `cfg.trials`
/// random matrices. Tallies are integers, so the result is identical for
/// any number of workers.
pub fn estimate(cfg: &ExperimentConfig) -> Result<MissingStats> {
    let (alphabet, space) = check_config(cfg)?;
    let (n, k, a) = (cfg.n, cfg.k, cfg.a);
    let tally = (0..cfg.trials)
        .into_par_iter()
        .fold(
            || (Tally::default(), CoverageSet::empty(k, a, space)),
            |(acc, mut set), trial| {
                let m = random_matrix(n, alphabet, &mut trial_rng(cfg.seed, trial));
                set.clear();
                cover_into(m.entries(), n, n, &mut set);
                let missing = (space - set.count()) as u128;
                let t = Tally {
                    omni: (missing == 0) as u64,
                    missing,
                    missing_sq: missing * missing,
                };
                (acc.merge(t), set)
            },
        )
        .map(|(t, _)| t)
        .reduce(Tally::default, Tally::merge);
    Ok(stats_from_moments(
        n,
        k,
        a,
        cfg.trials,
        tally.omni,
        tally.missing,
        tally.missing_sq,
    ))
}

/// One estimate per size in `ns`, all sharing `seed`.
pub fn sweep(ns: &[usize], k: usize, a: u32, trials: u64, seed: u64) -> Result<Vec<MissingStats>> {
    ns.iter()
        .map(|&n| estimate(&ExperimentConfig::new(n, k, a, trials, seed)))
        .collect()
}
