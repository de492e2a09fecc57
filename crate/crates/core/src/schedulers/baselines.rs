//! Quantization-blind reference schedulers.

use alloc::vec::Vec;

use rand::Rng;

use super::{argmax, check_input, cosine, finish, Algorithm, ScheduleTrace, StageScores};
use crate::channel::{dominant_beams, overlap_count, BeamspaceMatrix, SystemConfig};
use crate::linalg::{dot, norm, norm_sq};
use crate::quantize::AqnmParams;
use crate::{Error, Result, C64};

/// Semi-orthogonal user selection. Each stage picks the candidate whose
/// component orthogonal to the span of the selected channels is largest,
/// then keeps only candidates with cosine similarity to that component
/// below `epsilon`. No beam-overlap test.
pub fn schedule_sus(h_b: &BeamspaceMatrix, cfg: &SystemConfig, params: &AqnmParams) -> Result<ScheduleTrace> {
    check_input(h_b, cfg)?;
    let n_u = h_b.num_users();
    let norms: Vec<f64> = (0..n_u).map(|k| norm(h_b.column(k))).collect();
    let mut candidates: Vec<usize> = (0..n_u).collect();
    let mut selected = Vec::with_capacity(cfg.num_scheduled);
    let mut basis: Vec<Vec<C64>> = Vec::new();
    let mut sizes = Vec::new();
    let mut all_scores: Vec<StageScores> = Vec::new();

    let residual = |basis: &[Vec<C64>], h: &[C64]| {
        let mut g = h.to_vec();
        for f in basis {
            let coeff = dot(f, h) / norm_sq(f);
            for (gi, fi) in g.iter_mut().zip(f) {
                *gi -= coeff * fi;
            }
        }
        g
    };

    while selected.len() < cfg.num_scheduled && !candidates.is_empty() {
        sizes.push(candidates.len());
        let scores: StageScores = candidates
            .iter()
            .map(|&k| (k, norm_sq(&residual(&basis, h_b.column(k)))))
            .collect();
        let Some(pos) = argmax(&scores) else { break };
        let chosen = candidates.remove(pos);
        all_scores.push(scores);
        selected.push(chosen);

        let f = residual(&basis, h_b.column(chosen));
        let f_norm = norm(&f);
        candidates.retain(|&k| cosine(&f, f_norm, h_b.column(k), norms[k]) < cfg.ortho_threshold);
        basis.push(f);
    }

    finish(Algorithm::Sus, h_b, cfg, params, selected, sizes, all_scores)
}

/// Beam-selection scheduler, labelled "variant" in output since it is a
/// simplified rule: users are taken in descending order of their
/// strongest beamspace gain, and after each pick every remaining user whose
/// `N_b` dominant beams share more than `N_OL` indices with the pick is
/// dropped.
pub fn schedule_beam_select(h_b: &BeamspaceMatrix, cfg: &SystemConfig, params: &AqnmParams) -> Result<ScheduleTrace> {
    check_input(h_b, cfg)?;
    let n_u = h_b.num_users();
    let beams: Vec<Vec<usize>> = (0..n_u)
        .map(|k| dominant_beams(h_b.column(k), cfg.num_stored_beams))
        .collect();
    let peak: Vec<f64> = (0..n_u)
        .map(|k| h_b.column(k).iter().map(|x| x.norm()).fold(0.0, f64::max))
        .collect();
    let mut candidates: Vec<usize> = (0..n_u).collect();
    let mut selected = Vec::with_capacity(cfg.num_scheduled);
    let mut sizes = Vec::new();
    let mut all_scores: Vec<StageScores> = Vec::new();

    while selected.len() < cfg.num_scheduled && !candidates.is_empty() {
        sizes.push(candidates.len());
        let scores: StageScores = candidates.iter().map(|&k| (k, peak[k])).collect();
        let Some(pos) = argmax(&scores) else { break };
        let chosen = candidates.remove(pos);
        all_scores.push(scores);
        selected.push(chosen);
        candidates.retain(|&k| overlap_count(&beams[chosen], &beams[k]) <= cfg.beam_overlap_limit);
    }

    finish(Algorithm::BeamSelect, h_b, cfg, params, selected, sizes, all_scores)
}

/// Uniformly random set of `n_s` distinct users out of `n_u`, ascending.
pub fn random_selection<R: Rng + ?Sized>(rng: &mut R, n_u: usize, n_s: usize) -> Result<Vec<usize>> {
    if n_s > n_u {
        return Err(Error::InvalidConfig("cannot schedule more users than exist"));
    }
    let mut picked = rand::seq::index::sample(rng, n_u, n_s).into_vec();
    picked.sort_unstable();
    Ok(picked)
}

/// Random scheduling. Candidate sizes follow the shrinking pool
/// `N_u, N_u - 1, ...`.
pub fn schedule_random<R: Rng + ?Sized>(
    rng: &mut R,
    h_b: &BeamspaceMatrix,
    cfg: &SystemConfig,
    params: &AqnmParams,
) -> Result<ScheduleTrace> {
    check_input(h_b, cfg)?;
    let n_u = h_b.num_users();
    let selected = random_selection(rng, n_u, cfg.num_scheduled)?;
    let sizes = (0..selected.len()).map(|i| n_u - i).collect();
    finish(Algorithm::Random, h_b, cfg, params, selected, sizes, Vec::new())
}
