//! Monte Carlo sweeps over transmit power and ADC resolution.
//!
//! Every trial draws one channel realization and feeds it to every
//! algorithm at every grid point, so comparisons are paired. Trials run in
//! parallel; results do not depend on thread count because each trial owns
//! its random streams.

use std::collections::BTreeMap;

use anyhow::{bail, ensure, Context, Result};
use beamsched_core::channel::{dft_codebook, draw_channel_matrix, to_beamspace, BeamspaceMatrix, ChannelMatrix, SystemConfig};
use beamsched_core::quantize::AqnmParams;
use beamsched_core::schedulers::{run_scheduler, subset_count, Algorithm, MAX_EXHAUSTIVE_SUBSETS};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

/// Everything needed to reproduce one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    /// Transmit powers in dB relative to the unit noise variance.
    pub rho_db_grid: Vec<f64>,
    pub bits_grid: Vec<u32>,
    pub trials: usize,
    /// Scenario; its transmit power is replaced by each grid value.
    pub base_config: SystemConfig,
    /// `N_OL` to use at a given resolution instead of the base value.
    pub n_ol_overrides: BTreeMap<u32, usize>,
    pub algorithms: Vec<Algorithm>,
    pub master_seed: u64,
    /// Threshold for SUS when it should differ from the CSS one.
    pub sus_epsilon: Option<f64>,
}

/// One `(rho, b)` combination.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub rho_db: f64,
    pub bits: u32,
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

impl SweepSpec {
    /// Grid points in power-major order.
    pub fn grid_points(&self) -> Vec<GridPoint> {
        self.rho_db_grid
            .iter()
            .flat_map(|&rho_db| self.bits_grid.iter().map(move |&bits| GridPoint { rho_db, bits }))
            .collect()
    }

    /// Scheduler configuration at one grid point for one algorithm.
    pub fn config_at(&self, point: GridPoint, algorithm: Algorithm) -> SystemConfig {
        let mut cfg = self.base_config.clone();
        cfg.transmit_power = db_to_linear(point.rho_db);
        if let Some(&n_ol) = self.n_ol_overrides.get(&point.bits) {
            cfg.beam_overlap_limit = n_ol;
        }
        if algorithm == Algorithm::Sus {
            if let Some(eps) = self.sus_epsilon {
                cfg.ortho_threshold = eps;
            }
        }
        cfg
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(!self.rho_db_grid.is_empty(), "power grid is empty");
        ensure!(!self.bits_grid.is_empty(), "bit grid is empty");
        ensure!(self.trials >= 1, "need at least one trial");
        ensure!(!self.algorithms.is_empty(), "no algorithms selected");
        ensure!(
            self.rho_db_grid.iter().all(|r| r.is_finite()),
            "power grid values must be finite"
        );
        for &b in &self.bits_grid {
            AqnmParams::from_bits(b).with_context(|| format!("invalid resolution {b}"))?;
        }
        for point in self.grid_points() {
            for &alg in &self.algorithms {
                self.config_at(point, alg)
                    .validate()
                    .with_context(|| format!("invalid configuration for {alg} at {point:?}"))?;
            }
        }
        if self.algorithms.contains(&Algorithm::Exhaustive) {
            let cfg = &self.base_config;
            let n = subset_count(cfg.num_users, cfg.num_scheduled);
            if n > MAX_EXHAUSTIVE_SUBSETS {
                bail!(
                    "exhaustive search over {n} subsets exceeds the limit of {MAX_EXHAUSTIVE_SUBSETS}"
                );
            }
        }
        Ok(())
    }
}

/// Random streams of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    Channel,
    Scheduler,
}

/// ChaCha8 seeded with the master seed, positioned on stream
/// `2 * trial` for the channel and `2 * trial + 1` for the random
/// scheduler. Streams never overlap, so trials can run in any order.
pub fn trial_rng(master_seed: u64, trial: usize, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    let offset = match stream {
        Stream::Channel => 0,
        Stream::Scheduler => 1,
    };
    rng.set_stream(2 * trial as u64 + offset);
    rng
}

/// SHA-256 of the antenna-domain channel (real and imaginary parts as
/// little-endian `f64`, column-major), truncated to 128 bits, in hex.
pub fn channel_digest(h: &ChannelMatrix) -> String {
    let mut hasher = Sha256::new();
    hasher.update((h.0.rows() as u64).to_le_bytes());
    hasher.update((h.0.cols() as u64).to_le_bytes());
    for x in h.0.as_slice() {
        hasher.update(x.re.to_le_bytes());
        hasher.update(x.im.to_le_bytes());
    }
    hasher.finalize()[..16].iter().map(|b| format!("{b:02x}")).collect()
}

/// Channel of one trial, in the antenna domain and in beamspace.
pub fn draw_trial_channel(spec: &SweepSpec, trial: usize) -> Result<(ChannelMatrix, BeamspaceMatrix)> {
    let mut rng = trial_rng(spec.master_seed, trial, Stream::Channel);
    let h = draw_channel_matrix(&mut rng, &spec.base_config)?;
    let hb = to_beamspace(&h, &dft_codebook(spec.base_config.num_antennas))?;
    Ok((h, hb))
}

/// One scheduler run.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub algorithm: Algorithm,
    pub rho_db: f64,
    pub bits: u32,
    pub trial: usize,
    pub sum_rate: f64,
    /// May fall short of `N_s` for the filtering schedulers.
    pub num_selected: usize,
    pub candidate_sizes: Vec<usize>,
    /// Links the row to its channel draw; equal across algorithms and
    /// grid points of a trial.
    pub channel_digest: String,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    /// Rows for one algorithm at one grid point, in trial order.
    pub fn select(&self, algorithm: Algorithm, point: GridPoint) -> impl Iterator<Item = &SweepRow> + '_ {
        self.rows
            .iter()
            .filter(move |r| r.algorithm == algorithm && r.rho_db == point.rho_db && r.bits == point.bits)
    }
}

fn run_trial(spec: &SweepSpec, points: &[GridPoint], trial: usize) -> Result<Vec<SweepRow>> {
    let (h, hb) = draw_trial_channel(spec, trial)?;
    let digest = channel_digest(&h);
    let scheduler_rng = trial_rng(spec.master_seed, trial, Stream::Scheduler);
    let mut rows = Vec::with_capacity(points.len() * spec.algorithms.len());
    for &point in points {
        let params = AqnmParams::from_bits(point.bits)?;
        for &alg in &spec.algorithms {
            let cfg = spec.config_at(point, alg);
            // Same random picks at every grid point of the trial.
            let mut rng = scheduler_rng.clone();
            let trace = run_scheduler(alg, &hb, &cfg, &params, &mut rng)
                .with_context(|| format!("{alg} failed in trial {trial} at {point:?}"))?;
            rows.push(SweepRow {
                algorithm: alg,
                rho_db: point.rho_db,
                bits: point.bits,
                trial,
                sum_rate: trace.sum_rate(),
                num_selected: trace.selected.len(),
                candidate_sizes: trace.candidate_sizes,
                channel_digest: digest.clone(),
            });
        }
    }
    Ok(rows)
}

/// Runs the sweep. Rows are ordered by grid point, then algorithm (in
/// spec order), then trial.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    spec.validate()?;
    let points = spec.grid_points();
    let per_trial: Vec<Vec<SweepRow>> = (0..spec.trials)
        .into_par_iter()
        .map(|t| run_trial(spec, &points, t))
        .collect::<Result<_>>()?;
    let mut rows: Vec<SweepRow> = per_trial.into_iter().flatten().collect();
    let point_index = |r: &SweepRow| {
        points
            .iter()
            .position(|p| p.rho_db == r.rho_db && p.bits == r.bits)
            .unwrap_or(usize::MAX)
    };
    let alg_index = |r: &SweepRow| spec.algorithms.iter().position(|&a| a == r.algorithm).unwrap_or(usize::MAX);
    rows.sort_by_key(|r| (point_index(r), alg_index(r), r.trial));
    Ok(SweepResult { rows })
}
