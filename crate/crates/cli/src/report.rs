//! Verification reports and the trial runner.

use std::num::NonZeroUsize;
use std::thread;
use std::time::Instant;

use serde::Serialize;

use crate::suites::{Property, Suite};

/// Failures listed per property; the count is always complete.
pub const MAX_LISTED_FAILURES: usize = 16;

#[derive(Debug, Clone, Serialize)]
pub struct Failure {
    /// Reproduce with `trial_rng(seed, trial)` at dimension `dim`.
    pub trial: u64,
    pub dim: usize,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PropertyReport {
    pub name: &'static str,
    pub tol: f64,
    pub max_residual: f64,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub suite: &'static str,
    pub seed: u64,
    pub trials: u64,
    pub failures: usize,
    pub properties: Vec<PropertyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_seconds: Option<f64>,
}

/// Worker count: `OCTOPARA_THREADS` if set to a positive integer, capped by
/// the available parallelism.
pub fn worker_count() -> usize {
    let available = thread::available_parallelism().map(NonZeroUsize::get).unwrap_or(1);
    match std::env::var("OCTOPARA_THREADS").ok().and_then(|v| v.trim().parse::<usize>().ok()) {
        Some(cap) if cap > 0 => cap.min(available),
        _ => available,
    }
}

pub fn dim_for(trial: u64) -> usize {
    1 + (trial % 4) as usize
}

fn residuals(property: &Property, seed: u64, trials: u64, workers: usize) -> Vec<f64> {
    let workers = workers.clamp(1, trials.max(1) as usize);
    let chunk = trials.div_ceil(workers as u64).max(1);
    let mut out = vec![0.0; trials as usize];
    thread::scope(|s| {
        for (w, slot) in out.chunks_mut(chunk as usize).enumerate() {
            let start = w as u64 * chunk;
            s.spawn(move || {
                for (i, r) in slot.iter_mut().enumerate() {
                    let trial = start + i as u64;
                    let mut rng = octopara::random::trial_rng(seed, trial);
                    let v = (property.check)(&mut rng, dim_for(trial)).unwrap_or(f64::MAX);
                    // Errors and NaN come back as the largest finite value so
                    // they fail every tolerance and still serialize.
                    *r = if v.is_finite() { v } else { f64::MAX };
                }
            });
        }
    });
    out
}

/// Runs every property of `suite` for `trials` trials. `tol` overrides the
/// per-property tolerances.
pub fn run_suite(suite: &Suite, seed: u64, trials: u64, tol: Option<f64>, workers: usize) -> RunReport {
    let start = Instant::now();
    let properties: Vec<PropertyReport> = suite
        .properties
        .iter()
        .map(|p| {
            let tol = tol.unwrap_or(p.tol);
            let rs = residuals(p, seed, trials, workers);
            let bad: Vec<Failure> = rs
                .iter()
                .enumerate()
                .filter(|(_, r)| **r > tol)
                .map(|(t, r)| Failure { trial: t as u64, dim: dim_for(t as u64), residual: *r })
                .collect();
            PropertyReport {
                name: p.name,
                tol,
                max_residual: rs.iter().copied().fold(0.0, f64::max),
                failure_count: bad.len(),
                failures: bad.into_iter().take(MAX_LISTED_FAILURES).collect(),
            }
        })
        .collect();
    RunReport {
        suite: suite.name,
        seed,
        trials,
        failures: properties.iter().map(|p| p.failure_count).sum(),
        properties,
        wall_seconds: Some(start.elapsed().as_secs_f64()),
    }
}
