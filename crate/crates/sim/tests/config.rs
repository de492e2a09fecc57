use std::collections::BTreeMap;

use beamsched::config::SweepOverrides;
use beamsched::presets::figure_preset;
use beamsched_core::schedulers::Algorithm;

#[test]
fn file_values_override_the_preset() {
    let text = "
        # comment
        preset = fig3
        trials = 12   # trailing comment
        algorithms = css, SUS
        rho_db = -3, 4.5
        sus_epsilon = 0.3
        num_users = 50
    ";
    let spec = SweepOverrides::parse(text).unwrap().resolve().unwrap();
    assert_eq!(spec.trials, 12);
    assert_eq!(spec.algorithms, vec![Algorithm::Css, Algorithm::Sus]);
    assert_eq!(spec.rho_db_grid, vec![-3.0, 4.5]);
    assert_eq!(spec.sus_epsilon, Some(0.3));
    assert_eq!(spec.base_config.num_users, 50);
    assert_eq!(spec.bits_grid, figure_preset("fig3").unwrap().bits_grid);
}

#[test]
fn command_line_wins_over_file() {
    let file = SweepOverrides::parse("trials = 5\nseed = 1\npreset = fig2").unwrap();
    let cli = SweepOverrides {
        trials: Some(9),
        preset: Some("desk-fig4".to_owned()),
        ..SweepOverrides::default()
    };
    let spec = file.merged(cli).resolve().unwrap();
    assert_eq!((spec.trials, spec.master_seed), (9, 1));
    assert_eq!(spec.rho_db_grid, vec![6.0]);
}

#[test]
fn default_preset_is_desk_power_sweep() {
    assert_eq!(SweepOverrides::default().resolve().unwrap(), figure_preset("desk-fig2").unwrap());
}

#[test]
fn uniform_overlap_limit_replaces_schedule() {
    let spec = SweepOverrides::parse("preset = fig3\nn_ol = 4").unwrap().resolve().unwrap();
    assert!(spec.n_ol_overrides.is_empty());
    assert_eq!(spec.base_config.beam_overlap_limit, 4);

    let spec = SweepOverrides::parse("preset = fig3\nn_ol = 4\nn_ol_overrides = 1:1, 9:6")
        .unwrap()
        .resolve()
        .unwrap();
    assert_eq!(spec.n_ol_overrides, BTreeMap::from([(1, 1), (9, 6)]));
}

#[test]
fn bad_lines_are_reported() {
    for text in ["trials", "colour = blue", "trials = many", "algorithms = css, nope", "n_ol_overrides = 3"] {
        assert!(SweepOverrides::parse(text).is_err(), "{text}");
    }
    let err = SweepOverrides::parse("x = 1").unwrap_err();
    assert!(format!("{err:#}").contains("line 1"));
    assert!(SweepOverrides::parse("preset = nope").unwrap().resolve().is_err());
}
