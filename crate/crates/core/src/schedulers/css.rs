//! Channel structure-based scheduling.
//!
//! Each stage picks the candidate with the largest approximate SINR when
//! appended to the already selected set, computes its component orthogonal
//! to the previous selections (Gram-Schmidt), and then drops every remaining
//! candidate that is not semi-orthogonal to that component (cosine below
//! `epsilon`) or whose dominant beams overlap the new user's in more than
//! `N_OL` indices. Filtered users never re-enter.

use alloc::vec;
use alloc::vec::Vec;


use super::{argmax, check_input, cosine, finish, Algorithm, ScheduleTrace, StageScores};
use crate::channel::{dominant_beams, overlap_count, BeamspaceMatrix, SystemConfig};
use crate::linalg::{dot, norm, norm_sq};
use crate::quantize::AqnmParams;
use crate::rates::approx_sinr_with_rows;
use crate::{Result, C64};

/// Approximate SINR of `h_k` appended to a selection with row powers
/// `selected_rows`.
fn augmented_sinr(h_k: &[C64], selected_rows: &[f64], rho: f64, alpha: f64) -> f64 {
    let rows: Vec<f64> = h_k
        .iter()
        .zip(selected_rows)
        .map(|(x, r)| r + x.norm_sqr())
        .collect();
    approx_sinr_with_rows(h_k, &rows, rho, alpha)
}

/// May return fewer than `N_s` users when the filters empty the candidate
/// set early.
pub fn schedule_css(h_b: &BeamspaceMatrix, cfg: &SystemConfig, params: &AqnmParams) -> Result<ScheduleTrace> {
    check_input(h_b, cfg)?;
    let n_u = h_b.num_users();
    let rho = cfg.transmit_power;
    let beams: Vec<Vec<usize>> = (0..n_u)
        .map(|k| dominant_beams(h_b.column(k), cfg.num_stored_beams))
        .collect();
    let norms: Vec<f64> = (0..n_u).map(|k| norm(h_b.column(k))).collect();

    let mut candidates: Vec<usize> = (0..n_u).collect();
    let mut selected = Vec::with_capacity(cfg.num_scheduled);
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(cfg.num_scheduled);
    let mut selected_rows = vec![0.0; h_b.num_beams()];
    let mut sizes = Vec::new();
    let mut all_scores: Vec<StageScores> = Vec::new();

    while selected.len() < cfg.num_scheduled && !candidates.is_empty() {
        sizes.push(candidates.len());
        let scores: StageScores = candidates
            .iter()
            .map(|&k| (k, augmented_sinr(h_b.column(k), &selected_rows, rho, params.alpha())))
            .collect();
        let Some(pos) = argmax(&scores) else { break };
        let chosen = candidates.remove(pos);
        all_scores.push(scores);
        selected.push(chosen);

        let h = h_b.column(chosen);
        for (r, x) in selected_rows.iter_mut().zip(h) {
            *r += x.norm_sqr();
        }

        let mut f = h.to_vec();
        for g in &basis {
            let coeff = dot(g, h) / norm_sq(g);
            for (fi, gi) in f.iter_mut().zip(g) {
                *fi -= coeff * gi;
            }
        }
        let f_norm = norm(&f);
        candidates.retain(|&k| {
            cosine(&f, f_norm, h_b.column(k), norms[k]) < cfg.ortho_threshold
                && overlap_count(&beams[chosen], &beams[k]) <= cfg.beam_overlap_limit
        });
        basis.push(f);
    }

    finish(Algorithm::Css, h_b, cfg, params, selected, sizes, all_scores)
}
