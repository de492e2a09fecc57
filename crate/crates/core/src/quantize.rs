//! Additive quantization noise model for low-resolution ADCs.
//!
//! Each real and imaginary component passes through a `b`-bit scalar MMSE
//! quantizer. The AQNM linearizes this as `y_q = alpha * y + q` with
//! `alpha = 1 - beta`, where `beta` is the normalized mean squared error of
//! the quantizer and `q` is uncorrelated with `y`.
//!
//! For `b <= 5` bits `beta` comes from an optimal (Lloyd-Max) quantizer for
//! a unit-variance Gaussian designed here; above that the high-resolution
//! approximation `beta = (pi * sqrt(3) / 2) * 2^(-2b)` is used.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, PI};

// Shadowed by inherent float methods whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use once_cell::race::OnceBox;

use crate::channel::BeamspaceMatrix;
use crate::{Error, Result, C64};

/// Highest resolution served by the Lloyd-Max design in [`beta_for_bits`].
pub const MAX_DESIGNED_BITS: u32 = 5;

/// Largest resolution [`LloydMaxQuantizer::design`] accepts.
pub const MAX_QUANTIZER_BITS: u32 = 8;

/// Convergence tolerance on the distortion between Lloyd iterations.
pub const DISTORTION_TOLERANCE: f64 = 1e-12;

/// Largest level movement allowed in the final Lloyd iteration. The fixed
/// point converges linearly and slowly for many levels, so a small change in
/// distortion alone does not mean the levels have settled.
pub const LEVEL_TOLERANCE: f64 = 1e-10;

const MAX_ITERATIONS: usize = 200_000;

fn pdf(x: f64) -> f64 {
    if x.is_infinite() {
        return 0.0;
    }
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// Upper tail `P(X > x)`.
fn tail(x: f64) -> f64 {
    0.5 * libm::erfc(x * FRAC_1_SQRT_2)
}

/// `P(a < X <= b)`, evaluated on the side of zero that avoids cancellation.
fn prob(a: f64, b: f64) -> f64 {
    if a >= 0.0 {
        tail(a) - tail(b)
    } else if b <= 0.0 {
        tail(-b) - tail(-a)
    } else {
        1.0 - tail(b) - tail(-a)
    }
}

/// `x * pdf(x)` with the limit zero at infinity.
fn xpdf(x: f64) -> f64 {
    if x.is_infinite() {
        0.0
    } else {
        x * pdf(x)
    }
}

/// Optimal scalar quantizer for a unit-variance Gaussian source.
#[derive(Debug, Clone, PartialEq)]
pub struct LloydMaxQuantizer {
    bits: u32,
    levels: Vec<f64>,
    thresholds: Vec<f64>,
    distortion: f64,
    iterations: usize,
}

impl LloydMaxQuantizer {
    /// Runs the Lloyd-Max fixed point (nearest-level cells, centroid
    /// levels) until the distortion moves by less than
    /// [`DISTORTION_TOLERANCE`] and no level by more than
    /// [`LEVEL_TOLERANCE`].
    pub fn design(bits: u32) -> Result<Self> {
        if bits == 0 {
            return Err(Error::Domain("quantizer needs at least one bit"));
        }
        if bits > MAX_QUANTIZER_BITS {
            return Err(Error::Domain("quantizer resolution too high to design"));
        }
        let n = 1usize << bits;
        // Uniform start spanning roughly the optimal loading range.
        let range = 1.0 + 0.6 * bits as f64;
        let step = 2.0 * range / n as f64;
        let mut levels: Vec<f64> = (0..n)
            .map(|i| (i as f64 - (n as f64 - 1.0) / 2.0) * step)
            .collect();
        let mut thresholds = alloc::vec![0.0; n - 1];
        let mut distortion = f64::INFINITY;
        let mut iterations = 0;
        while iterations < MAX_ITERATIONS {
            iterations += 1;
            for (t, w) in thresholds.iter_mut().zip(levels.windows(2)) {
                *t = 0.5 * (w[0] + w[1]);
            }
            let mut moved = 0.0f64;
            for (i, y) in levels.iter_mut().enumerate() {
                let (a, b) = cell(&thresholds, i);
                let p = prob(a, b);
                if p > 0.0 {
                    let next = (pdf(a) - pdf(b)) / p;
                    moved = moved.max((next - *y).abs());
                    *y = next;
                }
            }
            let d = mse(&levels, &thresholds);
            let done = (distortion - d).abs() < DISTORTION_TOLERANCE && moved < LEVEL_TOLERANCE;
            distortion = d;
            if done {
                break;
            }
        }
        for (t, w) in thresholds.iter_mut().zip(levels.windows(2)) {
            *t = 0.5 * (w[0] + w[1]);
        }
        Ok(Self {
            bits,
            distortion: mse(&levels, &thresholds),
            levels,
            thresholds,
            iterations,
        })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Reconstruction levels, ascending.
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Decision thresholds between consecutive levels.
    pub fn thresholds(&self) -> &[f64] {
        &self.thresholds
    }

    /// Mean squared error for a unit-variance Gaussian input.
    pub fn distortion(&self) -> f64 {
        self.distortion
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Quantizes a unit-scale sample.
    pub fn quantize(&self, x: f64) -> f64 {
        let idx = self.thresholds.partition_point(|&t| t < x);
        self.levels[idx]
    }
}

fn cell(thresholds: &[f64], i: usize) -> (f64, f64) {
    let a = if i == 0 { f64::NEG_INFINITY } else { thresholds[i - 1] };
    let b = thresholds.get(i).copied().unwrap_or(f64::INFINITY);
    (a, b)
}

/// Exact `E[(X - Q(X))^2]` for `X ~ N(0, 1)`.
fn mse(levels: &[f64], thresholds: &[f64]) -> f64 {
    levels
        .iter()
        .enumerate()
        .map(|(i, &y)| {
            let (a, b) = cell(thresholds, i);
            let p = prob(a, b);
            let m1 = pdf(a) - pdf(b);
            let m2 = p + xpdf(a) - xpdf(b);
            m2 - 2.0 * y * m1 + y * y * p
        })
        .sum()
}

/// Lloyd-Max designs for 1..=[`MAX_DESIGNED_BITS`] bits, built on first use
/// and read-only afterwards.
pub fn designed_table() -> &'static [LloydMaxQuantizer] {
    static TABLE: OnceBox<Vec<LloydMaxQuantizer>> = OnceBox::new();
    TABLE.get_or_init(|| {
        Box::new(
            (1..=MAX_DESIGNED_BITS)
                .map(|b| LloydMaxQuantizer::design(b).expect("bits within design range"))
                .collect(),
        )
    })
}

/// Calls `f` with the Lloyd-Max design for `bits`: cached up to
/// [`MAX_DESIGNED_BITS`], designed on the spot above that.
pub fn with_lloyd_max<T>(bits: u32, f: impl FnOnce(&LloydMaxQuantizer) -> T) -> Result<T> {
    if (1..=MAX_DESIGNED_BITS).contains(&bits) {
        return Ok(f(&designed_table()[bits as usize - 1]));
    }
    LloydMaxQuantizer::design(bits).map(|q| f(&q))
}

/// High-resolution distortion approximation `(pi sqrt(3) / 2) 2^(-2b)`.
pub fn high_resolution_beta(bits: u32) -> f64 {
    PI * 3.0f64.sqrt() / 2.0 * 2.0f64.powi(-2 * bits as i32)
}

/// Normalized quantization distortion `beta` for a `b`-bit ADC.
pub fn beta_for_bits(bits: u32) -> Result<f64> {
    match bits {
        0 => Err(Error::Domain("ADC resolution must be at least one bit")),
        b if b <= MAX_DESIGNED_BITS => with_lloyd_max(b, |q| q.distortion()),
        b => Ok(high_resolution_beta(b)),
    }
}

/// Quantization gain and distortion pair, `alpha = 1 - beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AqnmParams {
    bits: Option<u32>,
    beta: f64,
    alpha: f64,
}

impl AqnmParams {
    pub fn from_bits(bits: u32) -> Result<Self> {
        let beta = beta_for_bits(bits)?;
        Ok(Self {
            bits: Some(bits),
            beta,
            alpha: 1.0 - beta,
        })
    }

    /// Parameters for an arbitrary distortion in `[0, 1)`, not tied to a
    /// bit count.
    pub fn from_beta(beta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&beta) {
            return Err(Error::Domain("distortion factor must lie in [0, 1)"));
        }
        Ok(Self {
            bits: None,
            beta,
            alpha: 1.0 - beta,
        })
    }

    /// Infinite-resolution ADCs: `beta = 0`, `alpha = 1`.
    pub fn ideal() -> Self {
        Self {
            bits: None,
            beta: 0.0,
            alpha: 1.0,
        }
    }

    pub fn bits(&self) -> Option<u32> {
        self.bits
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// Diagonal of the quantization noise covariance `R_qq`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantCovariance(pub Vec<f64>);

impl QuantCovariance {
    pub fn diagonal(&self) -> &[f64] {
        &self.0
    }
}

/// `R_qq = alpha * beta * diag(rho H_b H_b^H + I)`.
pub fn quantization_covariance(h_b: &BeamspaceMatrix, rho: f64, params: &AqnmParams) -> QuantCovariance {
    let ab = params.alpha() * params.beta();
    QuantCovariance(
        h_b.matrix()
            .row_norms_sq()
            .into_iter()
            .map(|r| ab * (rho * r + 1.0))
            .collect(),
    )
}

/// Analog input and quantized output of one receive vector.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedRxSample {
    pub input: Vec<C64>,
    pub output: Vec<C64>,
}

/// Quantizes each real and imaginary component with the `b`-bit Lloyd-Max
/// codebook scaled by `sqrt(input_variance)`, the per-component standard
/// deviation of the input.
pub fn simulate_quantizer(y: &[C64], bits: u32, input_variance: f64) -> Result<QuantizedRxSample> {
    if input_variance.is_nan() || input_variance <= 0.0 {
        return Err(Error::Domain("input variance must be positive"));
    }
    let sigma = input_variance.sqrt();
    let output = with_lloyd_max(bits, |q| {
        y.iter()
            .map(|x| C64::new(sigma * q.quantize(x.re / sigma), sigma * q.quantize(x.im / sigma)))
            .collect()
    })?;
    Ok(QuantizedRxSample {
        input: y.to_vec(),
        output,
    })
}

/// Quantizes each entry with its own per-component variance, as needed when
/// the beamspace rows carry different powers.
pub fn simulate_quantizer_per_entry(y: &[C64], bits: u32, component_variance: &[f64]) -> Result<QuantizedRxSample> {
    if y.len() != component_variance.len() {
        return Err(Error::DimensionMismatch {
            expected: (y.len(), 1),
            found: (component_variance.len(), 1),
        });
    }
    if component_variance.iter().any(|v| v.is_nan() || *v <= 0.0) {
        return Err(Error::Domain("input variance must be positive"));
    }
    let output = with_lloyd_max(bits, |q| {
        y.iter()
            .zip(component_variance)
            .map(|(x, v)| {
                let s = v.sqrt();
                C64::new(s * q.quantize(x.re / s), s * q.quantize(x.im / s))
            })
            .collect()
    })?;
    Ok(QuantizedRxSample {
        input: y.to_vec(),
        output,
    })
}
