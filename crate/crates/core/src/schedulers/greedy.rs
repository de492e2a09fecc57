//! Greedy sum-rate scheduling: each stage adds the candidate that maximizes
//! the exact zero-forcing sum rate of the enlarged set.

use alloc::vec::Vec;

use super::{argmax, check_input, finish, Algorithm, ScheduleTrace, StageScores};
use crate::channel::{BeamspaceMatrix, SystemConfig};
use crate::quantize::AqnmParams;
use crate::rates::sum_rate;
use crate::{Error, Result};

/// Candidates that would make the Gram matrix singular score `-inf` and are
/// never picked. Stops early only if every remaining candidate is singular.
pub fn schedule_greedy(h_b: &BeamspaceMatrix, cfg: &SystemConfig, params: &AqnmParams) -> Result<ScheduleTrace> {
    check_input(h_b, cfg)?;
    let mut candidates: Vec<usize> = (0..h_b.num_users()).collect();
    let mut selected: Vec<usize> = Vec::with_capacity(cfg.num_scheduled);
    let mut sizes = Vec::new();
    let mut all_scores: Vec<StageScores> = Vec::new();
    let mut trial = Vec::with_capacity(cfg.num_scheduled);

    while selected.len() < cfg.num_scheduled && !candidates.is_empty() {
        sizes.push(candidates.len());
        let mut scores = StageScores::with_capacity(candidates.len());
        for &k in &candidates {
            trial.clear();
            trial.extend_from_slice(&selected);
            trial.push(k);
            let score = match sum_rate(&h_b.select(&trial), cfg.transmit_power, params) {
                Ok(r) => r.sum_rate,
                Err(Error::Singular) => f64::NEG_INFINITY,
                Err(e) => return Err(e),
            };
            scores.push((k, score));
        }
        let Some(pos) = argmax(&scores).filter(|&p| scores[p].1.is_finite()) else {
            break;
        };
        selected.push(candidates.remove(pos));
        all_scores.push(scores);
    }

    finish(Algorithm::Greedy, h_b, cfg, params, selected, sizes, all_scores)
}
