//! Zero-forcing receiver rates under the AQNM.
//!
//! With `W_zf = H_b (H_b^H H_b)^-1`, user `k` achieves
//!
//! ```text
//! R_k = log2(1 + alpha^2 rho / (w_k^H R_qq w_k + alpha^2 ||w_k||^2))
//! ```
//!
//! in bits/s/Hz. The closed forms below hold for on-grid channels with
//! equal power on `L` beams.

use alloc::vec::Vec;

// Shadowed by inherent float methods whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::channel::BeamspaceMatrix;
use crate::linalg::{norm_sq, CMatrix, Cholesky};
use crate::quantize::{quantization_covariance, AqnmParams};
use crate::{Error, Result};

/// Zero-forcing combiner, one column `w_k` per scheduled user.
#[derive(Debug, Clone, PartialEq)]
pub struct ZfCombiner(CMatrix);

impl ZfCombiner {
    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn column(&self, k: usize) -> &[crate::C64] {
        self.0.col(k)
    }
}

/// Pseudo-inverse combiner. Fails with [`Error::Singular`] for (numerically)
/// rank-deficient channel sets; nothing is regularized.
pub fn zf_combiner(h_b: &BeamspaceMatrix) -> Result<ZfCombiner> {
    let h = h_b.matrix();
    if h.cols() == 0 {
        return Err(Error::EmptyInput);
    }
    let inv = Cholesky::new(&h.gram())?.inverse();
    h.mul(&inv).map(ZfCombiner)
}

/// Per-user rates and their total.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RateReport {
    pub per_user_rates: Vec<f64>,
    pub sum_rate: f64,
}

impl RateReport {
    pub fn from_rates(per_user_rates: Vec<f64>) -> Self {
        let sum_rate = per_user_rates.iter().sum();
        Self {
            per_user_rates,
            sum_rate,
        }
    }
}

/// Exact post-ZF SINR of every column of `h_b`.
pub fn exact_sinrs(h_b: &BeamspaceMatrix, rho: f64, params: &AqnmParams) -> Result<Vec<f64>> {
    let w = zf_combiner(h_b)?;
    let rqq = quantization_covariance(h_b, rho, params);
    let a2 = params.alpha() * params.alpha();
    Ok(w.matrix()
        .columns()
        .map(|wk| {
            let quant: f64 = wk
                .iter()
                .zip(rqq.diagonal())
                .map(|(x, r)| r * x.norm_sqr())
                .sum();
            a2 * rho / (quant + a2 * norm_sq(wk))
        })
        .collect())
}

pub fn sum_rate(h_b: &BeamspaceMatrix, rho: f64, params: &AqnmParams) -> Result<RateReport> {
    let rates = exact_sinrs(h_b, rho, params)?
        .into_iter()
        .map(|s| (1.0 + s).log2())
        .collect();
    Ok(RateReport::from_rates(rates))
}

/// Achievable rate of user (column) `k` within the scheduled set `h_b`.
pub fn user_rate(h_b: &BeamspaceMatrix, k: usize, rho: f64, params: &AqnmParams) -> Result<f64> {
    if k >= h_b.num_users() {
        return Err(Error::Domain("user index outside the scheduled set"));
    }
    let sinr = exact_sinrs(h_b, rho, params)?[k];
    Ok((1.0 + sinr).log2())
}

/// Selection metric that avoids the matrix inverse by assuming
/// `w_k = h_k / ||h_k||^2`:
///
/// ```text
/// alpha rho ||h_k||^4 / ((1 - alpha) h_k^H D h_k),
/// D = diag(rho H_b H_b^H + I / (1 - alpha))
/// ```
///
/// Returns `f64::INFINITY` when `alpha == 1`: without quantization noise the
/// metric is undefined and rates must use the ideal-ADC path instead. A
/// zero column scores zero.
pub fn approx_sinr(h_b: &BeamspaceMatrix, k: usize, rho: f64, params: &AqnmParams) -> f64 {
    let rows = h_b.matrix().row_norms_sq();
    approx_sinr_with_rows(h_b.column(k), &rows, rho, params.alpha())
}

/// [`approx_sinr`] given the precomputed row powers `||[H_b]_{i,:}||^2` of
/// the matrix that contains `h_k`.
pub(crate) fn approx_sinr_with_rows(h_k: &[crate::C64], rows: &[f64], rho: f64, alpha: f64) -> f64 {
    let beta = 1.0 - alpha;
    if beta == 0.0 {
        return f64::INFINITY;
    }
    let gamma = norm_sq(h_k);
    if gamma == 0.0 {
        return 0.0;
    }
    // (1 - alpha) D_ii = (1 - alpha) rho r_i + 1
    let denom: f64 = h_k
        .iter()
        .zip(rows)
        .map(|(x, r)| x.norm_sqr() * (beta * rho * r + 1.0))
        .sum();
    alpha * rho * gamma * gamma / denom
}

/// `log2(1 + alpha rho / ((1 - alpha) rho / L + 1 / gamma))`, the rate of a
/// single user whose power `gamma` is spread evenly over `L` beams.
pub fn closed_form_single_user_rate(gamma: f64, num_paths: usize, rho: f64, alpha: f64) -> f64 {
    let denom = (1.0 - alpha) * rho / num_paths as f64 + 1.0 / gamma;
    (1.0 + alpha * rho / denom).log2()
}

/// Limit of [`closed_form_single_user_rate`] as `gamma -> infinity`:
/// `log2(1 + alpha L / (1 - alpha))`. Infinite for `alpha == 1`.
pub fn rate_limit_infinite_power(num_paths: usize, alpha: f64) -> f64 {
    if alpha >= 1.0 {
        return f64::INFINITY;
    }
    (1.0 + alpha * num_paths as f64 / (1.0 - alpha)).log2()
}
