//! Plain-text sweep configuration.
//!
//! One `key = value` pair per line; `#` starts a comment. Lists are
//! comma-separated. Recognised keys:
//!
//! ```text
//! preset            named starting point (default desk-fig2)
//! rho_db            power grid in dB, e.g. -10, 0, 10
//! bits              resolution grid, e.g. 1, 2, 3
//! trials            Monte Carlo trials
//! seed              master seed
//! algorithms        scheduler ids, e.g. css, greedy, random
//! epsilon           semi-orthogonality threshold for CSS (and SUS)
//! sus_epsilon       separate threshold for SUS
//! n_ol              beam-overlap limit at every resolution
//! n_ol_overrides    per-resolution limits, e.g. 1:2, 4:3
//! num_antennas, num_users, num_scheduled, num_paths, num_stored_beams,
//! antenna_spacing   scenario scalars
//! ```
//!
//! Values given on the command line take precedence over the file, which
//! takes precedence over the preset.

use std::collections::BTreeMap;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use beamsched_core::schedulers::Algorithm;

use crate::harness::SweepSpec;
use crate::presets::figure_preset;

pub const DEFAULT_PRESET: &str = "desk-fig2";

/// Optional changes on top of a preset.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SweepOverrides {
    pub preset: Option<String>,
    pub rho_db: Option<Vec<f64>>,
    pub bits: Option<Vec<u32>>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub algorithms: Option<Vec<Algorithm>>,
    pub epsilon: Option<f64>,
    pub sus_epsilon: Option<f64>,
    /// Also clears the preset's per-resolution limits unless
    /// `n_ol_overrides` is given too.
    pub n_ol: Option<usize>,
    pub n_ol_overrides: Option<BTreeMap<u32, usize>>,
    pub num_antennas: Option<usize>,
    pub num_users: Option<usize>,
    pub num_scheduled: Option<usize>,
    pub num_paths: Option<usize>,
    pub num_stored_beams: Option<usize>,
    pub antenna_spacing: Option<f64>,
}

fn parse_scalar<T: FromStr>(key: &str, value: &str) -> Result<T>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    value.trim().parse().with_context(|| format!("bad value {value:?} for {key}"))
}

pub fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_scalar(key, s))
        .collect()
}

pub fn parse_algorithms(value: &str) -> Result<Vec<Algorithm>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|e| anyhow!("{s:?}: {e}")))
        .collect()
}

/// Parses `bits:n_ol` pairs.
pub fn parse_overlap_overrides(value: &str) -> Result<BTreeMap<u32, usize>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (b, n) = pair
                .split_once(':')
                .ok_or_else(|| anyhow!("expected bits:n_ol, got {pair:?}"))?;
            Ok((parse_scalar("n_ol_overrides", b)?, parse_scalar("n_ol_overrides", n)?))
        })
        .collect()
}

impl SweepOverrides {
    pub fn parse(text: &str) -> Result<Self> {
        let mut o = Self::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or_default().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key = value", n + 1))?;
            let (key, value) = (key.trim(), value.trim());
            o.set(key, value).with_context(|| format!("line {}", n + 1))?;
        }
        Ok(o)
    }

    fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "preset" => self.preset = Some(value.to_owned()),
            "rho_db" => self.rho_db = Some(parse_list(key, value)?),
            "bits" => self.bits = Some(parse_list(key, value)?),
            "trials" => self.trials = Some(parse_scalar(key, value)?),
            "seed" => self.seed = Some(parse_scalar(key, value)?),
            "algorithms" => self.algorithms = Some(parse_algorithms(value)?),
            "epsilon" => self.epsilon = Some(parse_scalar(key, value)?),
            "sus_epsilon" => self.sus_epsilon = Some(parse_scalar(key, value)?),
            "n_ol" => self.n_ol = Some(parse_scalar(key, value)?),
            "n_ol_overrides" => self.n_ol_overrides = Some(parse_overlap_overrides(value)?),
            "num_antennas" => self.num_antennas = Some(parse_scalar(key, value)?),
            "num_users" => self.num_users = Some(parse_scalar(key, value)?),
            "num_scheduled" => self.num_scheduled = Some(parse_scalar(key, value)?),
            "num_paths" => self.num_paths = Some(parse_scalar(key, value)?),
            "num_stored_beams" => self.num_stored_beams = Some(parse_scalar(key, value)?),
            "antenna_spacing" => self.antenna_spacing = Some(parse_scalar(key, value)?),
            other => bail!("unknown key {other:?}"),
        }
        Ok(())
    }

    /// Values from `other` win where both are set.
    pub fn merged(self, other: SweepOverrides) -> SweepOverrides {
        SweepOverrides {
            preset: other.preset.or(self.preset),
            rho_db: other.rho_db.or(self.rho_db),
            bits: other.bits.or(self.bits),
            trials: other.trials.or(self.trials),
            seed: other.seed.or(self.seed),
            algorithms: other.algorithms.or(self.algorithms),
            epsilon: other.epsilon.or(self.epsilon),
            sus_epsilon: other.sus_epsilon.or(self.sus_epsilon),
            n_ol: other.n_ol.or(self.n_ol),
            n_ol_overrides: other.n_ol_overrides.or(self.n_ol_overrides),
            num_antennas: other.num_antennas.or(self.num_antennas),
            num_users: other.num_users.or(self.num_users),
            num_scheduled: other.num_scheduled.or(self.num_scheduled),
            num_paths: other.num_paths.or(self.num_paths),
            num_stored_beams: other.num_stored_beams.or(self.num_stored_beams),
            antenna_spacing: other.antenna_spacing.or(self.antenna_spacing),
        }
    }

    /// Starts from the preset and applies every override.
    pub fn resolve(self) -> Result<SweepSpec> {
        let mut spec = figure_preset(self.preset.as_deref().unwrap_or(DEFAULT_PRESET))?;
        let cfg = &mut spec.base_config;
        if let Some(v) = self.num_antennas {
            cfg.num_antennas = v;
        }
        if let Some(v) = self.num_users {
            cfg.num_users = v;
        }
        if let Some(v) = self.num_scheduled {
            cfg.num_scheduled = v;
        }
        if let Some(v) = self.num_paths {
            cfg.num_paths = v;
        }
        if let Some(v) = self.num_stored_beams {
            cfg.num_stored_beams = v;
        }
        if let Some(v) = self.antenna_spacing {
            cfg.antenna_spacing = v;
        }
        if let Some(v) = self.epsilon {
            cfg.ortho_threshold = v;
        }
        if let Some(v) = self.n_ol {
            cfg.beam_overlap_limit = v;
            spec.n_ol_overrides.clear();
        }
        if let Some(v) = self.n_ol_overrides {
            spec.n_ol_overrides = v;
        }
        if let Some(v) = self.rho_db {
            spec.rho_db_grid = v;
        }
        if let Some(v) = self.bits {
            spec.bits_grid = v;
        }
        if let Some(v) = self.trials {
            spec.trials = v;
        }
        if let Some(v) = self.seed {
            spec.master_seed = v;
        }
        if let Some(v) = self.algorithms {
            spec.algorithms = v;
        }
        if let Some(v) = self.sus_epsilon {
            spec.sus_epsilon = Some(v);
        }
        Ok(spec)
    }
}
