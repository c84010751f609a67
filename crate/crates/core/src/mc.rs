//! Monte Carlo estimates over `Γ(n, p)`.
//!
//! Trial `t` of a run with seed `s` samples its graph from
//! [`trial_seed`]`(s, t)`, so trials are independent of each other and of
//! the order they run in. Trials run on a rayon pool whose size can be
//! capped with the `RAAG_OUT_THREADS` environment variable.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::decide::{decide, Status};
use crate::error::{Error, Result};
use crate::gen::{gnp, GnpConfig};
use crate::graph::SimplicialGraph;
use crate::order::{equivalence_classes, order_pairs};
use crate::sil::has_sil_pair;

pub const THREADS_ENV: &str = "RAAG_OUT_THREADS";

pub const CSV_HEADER: &str = "n,p,samples,seed,freq_connected,freq_no_sil,freq_no_equiv_pair,\
freq_single_equiv_pair,out_yes,out_no,out_unknown,mean_order_pairs";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialReport {
    pub n: usize,
    pub p: f64,
    pub samples: usize,
    pub seed: u64,
    pub freq_connected: f64,
    pub freq_no_sil: f64,
    pub freq_no_equiv_pair: f64,
    pub freq_single_equiv_pair: f64,
    pub out_yes: usize,
    pub out_no: usize,
    pub out_unknown: usize,
    pub mean_order_pairs: f64,
}

impl TrialReport {
    pub fn freq_out_no(&self) -> f64 {
        self.out_no as f64 / self.samples as f64
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.6},{:.6},{:.6},{:.6},{},{},{},{:.6}",
            self.n,
            self.p,
            self.samples,
            self.seed,
            self.freq_connected,
            self.freq_no_sil,
            self.freq_no_equiv_pair,
            self.freq_single_equiv_pair,
            self.out_yes,
            self.out_no,
            self.out_unknown,
            self.mean_order_pairs
        )
    }
}

pub fn to_csv(reports: &[TrialReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}

/// SplitMix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `mix(seed + (trial + 1) · φ)` with `φ = 0x9E3779B97F4A7C15`.
pub fn trial_seed(seed: u64, trial: u64) -> u64 {
    mix(seed.wrapping_add(trial.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

pub fn trial_graph(n: usize, p: f64, seed: u64, trial: u64) -> Result<SimplicialGraph> {
    gnp(GnpConfig {
        n,
        p,
        seed: trial_seed(seed, trial),
    })
}

#[derive(Clone, Copy, Debug, Default)]
struct Sample {
    connected: bool,
    no_sil: bool,
    equiv_pairs: usize,
    out: Option<Status>,
    order_pairs: usize,
}

fn sample(g: &SimplicialGraph) -> Result<Sample> {
    let equiv_pairs = equivalence_classes(g)
        .iter()
        .map(|c| {
            let k = c.members.len();
            k * (k - 1) / 2
        })
        .sum();
    Ok(Sample {
        connected: g.is_connected(),
        no_sil: !has_sil_pair(g),
        equiv_pairs,
        out: Some(decide(g)?.verdict.out_status),
        order_pairs: order_pairs(g).len(),
    })
}

fn with_pool<T: Send>(f: impl FnOnce() -> T + Send) -> Result<T> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => {
            let threads: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build()
                .map_err(|e| Error::InvalidParameter(e.to_string()))?;
            Ok(pool.install(f))
        }
        Err(_) => Ok(f()),
    }
}

pub fn run_trials(n: usize, p: f64, samples: usize, seed: u64) -> Result<TrialReport> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    // Validate parameters once up front so workers never fail on them.
    trial_graph(n, p, seed, 0)?;
    let results: Vec<Sample> = with_pool(|| {
        (0..samples as u64)
            .into_par_iter()
            .map(|t| trial_graph(n, p, seed, t).and_then(|g| sample(&g)))
            .collect::<Result<Vec<_>>>()
    })??;
    let count = |f: &dyn Fn(&Sample) -> bool| results.iter().filter(|s| f(s)).count();
    let freq = |k: usize| k as f64 / samples as f64;
    Ok(TrialReport {
        n,
        p,
        samples,
        seed,
        freq_connected: freq(count(&|s| s.connected)),
        freq_no_sil: freq(count(&|s| s.no_sil)),
        freq_no_equiv_pair: freq(count(&|s| s.equiv_pairs == 0)),
        freq_single_equiv_pair: freq(count(&|s| s.equiv_pairs == 1)),
        out_yes: count(&|s| s.out == Some(Status::Yes)),
        out_no: count(&|s| s.out == Some(Status::No)),
        out_unknown: count(&|s| s.out == Some(Status::Unknown)),
        mean_order_pairs: results.iter().map(|s| s.order_pairs as f64).sum::<f64>() / samples as f64,
    })
}

/// One report per `(n, p)` in `ns × ps`, `ns`-major.
pub fn sweep(ns: &[usize], ps: &[f64], samples: usize, seed: u64) -> Result<Vec<TrialReport>> {
    if ns.is_empty() || ps.is_empty() {
        return Err(Error::InvalidParameter("sweep needs at least one n and one p".into()));
    }
    let mut out = Vec::new();
    for &n in ns {
        for &p in ps {
            out.push(run_trials(n, p, samples, seed)?);
        }
    }
    Ok(out)
}
