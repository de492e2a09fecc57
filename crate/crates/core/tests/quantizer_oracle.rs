//! Lloyd-Max distortion against an independent quadrature design, plus
//! Monte Carlo checks of the AQNM.

use beamsched_core::channel::{complex_gaussian, BeamspaceMatrix};
use beamsched_core::linalg::CMatrix;
use beamsched_core::quantize::{
    beta_for_bits, quantization_covariance, simulate_quantizer, simulate_quantizer_per_entry, AqnmParams,
    LloydMaxQuantizer,
};
use beamsched_core::C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Distortions from a separate scipy `quad` Lloyd-Max run (levels converged
/// to 1e-14).
const FROZEN_BETA: [f64; 5] = [
    0.3633802276324188,
    0.11748184782932931,
    0.03454776078850373,
    0.009501008008191888,
    0.0025046683556747985,
];

fn gauss(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Composite Simpson rule on `[a, b]`.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// Lloyd-Max by brute-force numerical integration over `[-12, 12]`; shares
/// no code with the library's closed-form moments.
fn quadrature_lloyd_max(bits: u32) -> (Vec<f64>, f64) {
    let n = 1usize << bits;
    let mut levels: Vec<f64> = (0..n).map(|i| -2.0 + 4.0 * (i as f64 + 0.5) / n as f64).collect();
    let edges = |levels: &[f64]| {
        let mut e = vec![-12.0];
        e.extend(levels.windows(2).map(|w| 0.5 * (w[0] + w[1])));
        e.push(12.0);
        e
    };
    for _ in 0..5000 {
        let e = edges(&levels);
        let mut moved = 0.0f64;
        for i in 0..n {
            let p = simpson(gauss, e[i], e[i + 1], 4000);
            let m = simpson(|x| x * gauss(x), e[i], e[i + 1], 4000);
            let next = m / p;
            moved = moved.max((next - levels[i]).abs());
            levels[i] = next;
        }
        if moved < 1e-13 {
            break;
        }
    }
    let e = edges(&levels);
    let d = (0..n)
        .map(|i| simpson(|x| (x - levels[i]).powi(2) * gauss(x), e[i], e[i + 1], 4000))
        .sum();
    (levels, d)
}

#[test]
fn design_agrees_with_quadrature_oracle() {
    for bits in 1..=3 {
        let (levels, d) = quadrature_lloyd_max(bits);
        let q = LloydMaxQuantizer::design(bits).unwrap();
        assert!((q.distortion() - d).abs() < 1e-10, "b={bits}: {} vs {d}", q.distortion());
        for (a, b) in q.levels().iter().zip(&levels) {
            assert!((a - b).abs() < 1e-8, "b={bits} level {a} vs {b}");
        }
    }
}

#[test]
fn beta_matches_frozen_table() {
    for (i, want) in FROZEN_BETA.iter().enumerate() {
        let got = beta_for_bits(i as u32 + 1).unwrap();
        assert!((got - want).abs() < 1e-10, "b={}: {got} vs {want}", i + 1);
    }
    // One bit is analytic.
    assert!((FROZEN_BETA[0] - (1.0 - 2.0 / std::f64::consts::PI)).abs() < 1e-15);
}

#[test]
fn empirical_distortion_matches_beta() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let variance = 0.8;
    let y: Vec<C64> = (0..100_000)
        .map(|_| complex_gaussian(&mut rng) * (2.0f64 * variance).sqrt())
        .collect();
    for bits in 1..=3 {
        let s = simulate_quantizer(&y, bits, variance).unwrap();
        let err: f64 = s.input.iter().zip(&s.output).map(|(a, b)| (a - b).norm_sqr()).sum();
        let pow: f64 = s.input.iter().map(|a| a.norm_sqr()).sum();
        let beta = beta_for_bits(bits).unwrap();
        let rel = (err / pow) / beta - 1.0;
        assert!(rel.abs() < 0.02, "b={bits}: empirical/beta - 1 = {rel}");
    }
}

#[test]
fn quantization_noise_covariance_matches_aqnm() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let (n_r, n_s, samples) = (8, 3, 100_000);
    for &rho in &[1.0, 10.0] {
        let hb = BeamspaceMatrix::new(CMatrix::from_fn(n_r, n_s, |_, _| complex_gaussian(&mut rng)));
        let rows = hb.matrix().row_norms_sq();
        let component_var: Vec<f64> = rows.iter().map(|r| 0.5 * (rho * r + 1.0)).collect();
        for bits in [2, 3] {
            let params = AqnmParams::from_bits(bits).unwrap();
            let want = quantization_covariance(&hb, rho, &params);
            let mut cov = vec![C64::new(0.0, 0.0); n_r * n_r];
            for _ in 0..samples {
                let s: Vec<C64> = (0..n_s).map(|_| complex_gaussian(&mut rng)).collect();
                let y: Vec<C64> = (0..n_r)
                    .map(|i| {
                        let sig: C64 = (0..n_s).map(|k| hb.matrix()[(i, k)] * s[k]).sum();
                        sig * rho.sqrt() + complex_gaussian(&mut rng)
                    })
                    .collect();
                let out = simulate_quantizer_per_entry(&y, bits, &component_var).unwrap().output;
                let q: Vec<C64> = out.iter().zip(&y).map(|(yq, y)| yq - y * params.alpha()).collect();
                for i in 0..n_r {
                    for j in 0..n_r {
                        cov[i * n_r + j] += q[i] * q[j].conj();
                    }
                }
            }
            for c in &mut cov {
                *c /= samples as f64;
            }
            for i in 0..n_r {
                let d = cov[i * n_r + i].re;
                let rel = d / want.diagonal()[i] - 1.0;
                assert!(rel.abs() < 0.10, "rho={rho} b={bits} row {i}: rel err {rel}");
                let off: f64 = (0..n_r).filter(|&j| j != i).map(|j| cov[i * n_r + j].norm()).sum();
                assert!(off < d, "rho={rho} b={bits} row {i} not diagonally dominant: {off} vs {d}");
            }
        }
    }
}
