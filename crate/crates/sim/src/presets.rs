//! Named sweep configurations.

use std::collections::BTreeMap;

use anyhow::{bail, Result};
use beamsched_core::channel::SystemConfig;
use beamsched_core::schedulers::Algorithm;

use crate::harness::SweepSpec;

pub const PRESET_NAMES: [&str; 6] = ["fig2", "fig3", "fig4", "desk-fig2", "desk-fig3", "desk-fig4"];

pub const DEFAULT_SEED: u64 = 2018;

/// `N_OL` per resolution for the bit sweep. Beam overlap hurts less as the
/// quantization noise fades, so the limit is relaxed with more bits.
pub fn bit_sweep_overlap_schedule() -> BTreeMap<u32, usize> {
    BTreeMap::from([(1, 2), (2, 2), (3, 2), (4, 3), (5, 3), (6, 4), (7, 4), (8, 5), (9, 5)])
}

fn plotted_algorithms() -> Vec<Algorithm> {
    vec![
        Algorithm::Css,
        Algorithm::Greedy,
        Algorithm::Sus,
        Algorithm::BeamSelect,
        Algorithm::Random,
    ]
}

fn power_sweep(base_config: SystemConfig, rho_db_grid: Vec<f64>, trials: usize) -> SweepSpec {
    SweepSpec {
        rho_db_grid,
        bits_grid: vec![2],
        trials,
        base_config: SystemConfig {
            beam_overlap_limit: 3,
            ..base_config
        },
        n_ol_overrides: BTreeMap::new(),
        algorithms: plotted_algorithms(),
        master_seed: DEFAULT_SEED,
        sus_epsilon: None,
    }
}

fn bit_sweep(base_config: SystemConfig, trials: usize) -> SweepSpec {
    SweepSpec {
        rho_db_grid: vec![5.0],
        bits_grid: (1..=9).collect(),
        trials,
        base_config,
        n_ol_overrides: bit_sweep_overlap_schedule(),
        algorithms: plotted_algorithms(),
        master_seed: DEFAULT_SEED,
        sus_epsilon: None,
    }
}

fn set_size_point(base_config: SystemConfig, trials: usize) -> SweepSpec {
    SweepSpec {
        rho_db_grid: vec![6.0],
        algorithms: vec![Algorithm::Css, Algorithm::Greedy, Algorithm::Sus, Algorithm::BeamSelect],
        ..power_sweep(base_config, Vec::new(), trials)
    }
}

/// Looks up a preset. `fig*` use `N_r = 128`, `N_u = 200`, `N_s = 10`;
/// `desk-*` use `N_r = 64`, `N_u = 100`, `N_s = 8` with 200 trials.
pub fn figure_preset(name: &str) -> Result<SweepSpec> {
    let full = SystemConfig::full_scale();
    let desk = SystemConfig::desk_scale();
    Ok(match name {
        "fig2" => power_sweep(full, (-5..=10).map(|i| 2.0 * i as f64).collect(), 500),
        "fig3" => bit_sweep(full, 500),
        "fig4" => set_size_point(full, 100),
        "desk-fig2" => power_sweep(desk, (-2..=4).map(|i| 5.0 * i as f64).collect(), 200),
        "desk-fig3" => bit_sweep(desk, 200),
        "desk-fig4" => set_size_point(desk, 200),
        other => bail!("unknown preset {other:?}; valid presets: {}", PRESET_NAMES.join(", ")),
    })
}
