use beamsched_core::channel::{complex_gaussian, make_virtual_channel, BeamspaceMatrix, Spread, VirtualChannelSpec};
use beamsched_core::linalg::{norm_sq, CMatrix};
use beamsched_core::quantize::AqnmParams;
use beamsched_core::rates::{
    approx_sinr, closed_form_single_user_rate, exact_sinrs, rate_limit_infinite_power, sum_rate, user_rate,
    zf_combiner,
};
use beamsched_core::C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_hb(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> BeamspaceMatrix {
    BeamspaceMatrix::new(CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng)))
}

/// Single-user beamspace vector with the given per-beam powers on the first
/// beams and random phases.
fn with_powers(rng: &mut ChaCha8Rng, n_r: usize, powers: &[f64]) -> BeamspaceMatrix {
    let mut h = vec![C64::new(0.0, 0.0); n_r];
    for (x, p) in h.iter_mut().zip(powers) {
        *x = C64::from_polar(p.sqrt(), rng.random_range(0.0..std::f64::consts::TAU));
    }
    BeamspaceMatrix::from_columns(&[h]).unwrap()
}

fn equal_spread(rng: &mut ChaCha8Rng, support: Vec<usize>, gamma: f64, n_r: usize) -> Vec<C64> {
    let spec = VirtualChannelSpec {
        support,
        norm_sq: gamma,
        spread: Spread::Equal,
    };
    make_virtual_channel(&spec, n_r, rng).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn zf_is_a_left_inverse(seed in any::<u64>(), rows in 4usize..24, cols in 1usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hb = random_hb(&mut rng, rows, cols.min(rows));
        let w = zf_combiner(&hb).unwrap();
        let prod = w.matrix().adjoint_mul(hb.matrix()).unwrap();
        prop_assert!(prod.max_abs_diff(&CMatrix::identity(hb.num_users())) < 1e-8);
    }

    #[test]
    fn ideal_adcs_give_classical_zf_rate(seed in any::<u64>(), rho in 0.01f64..100.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let hb = random_hb(&mut rng, 16, 3);
        let w = zf_combiner(&hb).unwrap();
        let report = sum_rate(&hb, rho, &AqnmParams::ideal()).unwrap();
        for k in 0..3 {
            let classical = (1.0 + rho / norm_sq(w.column(k))).log2();
            prop_assert!((report.per_user_rates[k] - classical).abs() < 1e-12);
        }
    }

    #[test]
    fn closed_form_increases_with_paths(gamma in 0.1f64..1e4, rho in 0.01f64..1e3, beta in 1e-4f64..0.9, l in 1usize..32) {
        let alpha = 1.0 - beta;
        prop_assert!(closed_form_single_user_rate(gamma, l + 1, rho, alpha) > closed_form_single_user_rate(gamma, l, rho, alpha));
        prop_assert!(rate_limit_infinite_power(l + 1, alpha) > rate_limit_infinite_power(l, alpha));
    }
}

#[test]
fn single_user_approx_sinr_is_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..1000 {
        let n_r = rng.random_range(2..64);
        let hb = random_hb(&mut rng, n_r, 1);
        let rho = 10f64.powf(rng.random_range(-1.0..2.0));
        let params = AqnmParams::from_bits(rng.random_range(1..=8)).unwrap();
        let exact = exact_sinrs(&hb, rho, &params).unwrap()[0];
        let approx = approx_sinr(&hb, 0, rho, &params);
        assert!((approx / exact - 1.0).abs() < 1e-10, "{approx} vs {exact}");
    }
}

#[test]
fn equal_spread_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..1000 {
        let n_r = 32;
        let l = rng.random_range(1..=8);
        let gamma = 10f64.powf(rng.random_range(-1.0..3.0));
        let rho = 10f64.powf(rng.random_range(-1.0..2.0));
        let params = AqnmParams::from_bits(rng.random_range(1..=9)).unwrap();
        let support = rand::seq::index::sample(&mut rng, n_r, l).into_vec();
        let hb = BeamspaceMatrix::from_columns(&[equal_spread(&mut rng, support, gamma, n_r)]).unwrap();
        let got = user_rate(&hb, 0, rho, &params).unwrap();
        let want = closed_form_single_user_rate(gamma, l, rho, params.alpha());
        assert!((got / want - 1.0).abs() < 1e-9, "{got} vs {want}");
    }
}

#[test]
fn equal_spread_maximizes_single_user_rate() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let (n_r, l, gamma, rho) = (16, 4, 8.0, 5.0);
    for bits in 1..=4 {
        let params = AqnmParams::from_bits(bits).unwrap();
        let best = user_rate(&with_powers(&mut rng, n_r, &[gamma / 4.0; 4]), 0, rho, &params).unwrap();
        // Every point of the simplex grid with step gamma / 20.
        let steps = 20;
        let mut checked = 0;
        for a in 0..=steps {
            for b in 0..=steps - a {
                for c in 0..=steps - a - b {
                    let d = steps - a - b - c;
                    let p: Vec<f64> = [a, b, c, d].iter().map(|&n| gamma * n as f64 / steps as f64).collect();
                    let r = user_rate(&with_powers(&mut rng, n_r, &p), 0, rho, &params).unwrap();
                    assert!(r <= best + 1e-9, "b={bits} {p:?}: {r} > {best}");
                    checked += 1;
                }
            }
        }
        assert_eq!(checked, 1771);
        for _ in 0..10_000 {
            let raw: Vec<f64> = (0..l).map(|_| rng.random::<f64>() + 1e-12).collect();
            let s: f64 = raw.iter().sum();
            let p: Vec<f64> = raw.iter().map(|x| gamma * x / s).collect();
            let r = user_rate(&with_powers(&mut rng, n_r, &p), 0, rho, &params).unwrap();
            assert!(r <= best + 1e-9);
        }
    }
}

#[test]
fn phases_do_not_change_single_user_rate() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let params = AqnmParams::from_bits(2).unwrap();
    let powers = [0.5, 2.0, 1.25, 3.0];
    let base = user_rate(&with_powers(&mut rng, 16, &powers), 0, 4.0, &params).unwrap();
    for _ in 0..100 {
        let r = user_rate(&with_powers(&mut rng, 16, &powers), 0, 4.0, &params).unwrap();
        assert!((r - base).abs() < 1e-12);
    }
}

#[test]
fn disjoint_equal_spread_users_attain_the_bound() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let (n_r, l, n_s) = (16, 4, 3);
    for _ in 0..200 {
        let gamma = 10f64.powf(rng.random_range(-1.0..2.0));
        let rho = 10f64.powf(rng.random_range(-1.0..2.0));
        let params = AqnmParams::from_bits(rng.random_range(1..=6)).unwrap();
        let beams = rand::seq::index::sample(&mut rng, n_r, l * n_s).into_vec();
        let cols: Vec<Vec<C64>> = beams
            .chunks(l)
            .map(|s| equal_spread(&mut rng, s.to_vec(), gamma, n_r))
            .collect();
        let hb = BeamspaceMatrix::from_columns(&cols).unwrap();
        let bound = closed_form_single_user_rate(gamma, l, rho, params.alpha());
        let report = sum_rate(&hb, rho, &params).unwrap();
        for r in &report.per_user_rates {
            assert!((r - bound).abs() < 1e-9, "{r} vs {bound}");
        }
        // Disjoint users are rated as if alone.
        for (k, c) in cols.iter().enumerate() {
            let alone = user_rate(&BeamspaceMatrix::from_columns(&[c]).unwrap(), 0, rho, &params).unwrap();
            assert!((report.per_user_rates[k] - alone).abs() < 1e-9);
        }
    }
}

#[test]
fn beam_overlap_never_helps() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    let (n_r, l) = (16, 4);
    for _ in 0..1000 {
        let gamma = 10f64.powf(rng.random_range(-1.0..2.0));
        let rho = 10f64.powf(rng.random_range(-1.0..2.0));
        let params = AqnmParams::from_bits(rng.random_range(1..=5)).unwrap();
        let beams = rand::seq::index::sample(&mut rng, n_r, 2 * l).into_vec();
        let u1 = equal_spread(&mut rng, beams[..l].to_vec(), gamma, n_r);
        let u2 = equal_spread(&mut rng, beams[l..].to_vec(), gamma, n_r);
        let base = sum_rate(&BeamspaceMatrix::from_columns(&[&u1, &u2]).unwrap(), rho, &params).unwrap();

        // Move one of user 2's beams onto one of user 1's, keeping its gain.
        let from = beams[l + rng.random_range(0..l)];
        let onto = beams[rng.random_range(0..l)];
        let mut moved = u2.clone();
        moved[onto] = moved[from];
        moved[from] = C64::new(0.0, 0.0);
        let perturbed = sum_rate(&BeamspaceMatrix::from_columns(&[&u1, &moved]).unwrap(), rho, &params).unwrap();
        assert!(
            perturbed.sum_rate <= base.sum_rate * 1.001,
            "{} > {}",
            perturbed.sum_rate,
            base.sum_rate
        );
    }
}
