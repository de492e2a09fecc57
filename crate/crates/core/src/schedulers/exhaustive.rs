//! Brute-force optimum over all `N_s`-subsets.

use alloc::vec::Vec;

use super::{check_input, finish, Algorithm, ScheduleTrace};
use crate::channel::{BeamspaceMatrix, SystemConfig};
use crate::quantize::AqnmParams;
use crate::rates::sum_rate;
use crate::{Error, Result};

/// Refuse enumerations larger than this many subsets.
pub const MAX_EXHAUSTIVE_SUBSETS: u128 = 1_000_000;

/// Binomial coefficient `C(n, k)`, saturating.
pub fn subset_count(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    c
}

/// Exact maximizer of the sum rate over subsets of size exactly `N_s`
/// (or `N_u` if smaller). Singular subsets are skipped; ties keep the
/// lexicographically first subset. `candidate_sizes` holds the number of
/// subsets evaluated.
pub fn schedule_exhaustive(h_b: &BeamspaceMatrix, cfg: &SystemConfig, params: &AqnmParams) -> Result<ScheduleTrace> {
    check_input(h_b, cfg)?;
    let n = h_b.num_users();
    let k = cfg.num_scheduled.min(n);
    let subsets = subset_count(n, k);
    if subsets > MAX_EXHAUSTIVE_SUBSETS {
        return Err(Error::TooManySubsets {
            subsets,
            limit: MAX_EXHAUSTIVE_SUBSETS,
        });
    }

    let mut idx: Vec<usize> = (0..k).collect();
    let mut best: Option<(f64, Vec<usize>)> = None;
    loop {
        match sum_rate(&h_b.select(&idx), cfg.transmit_power, params) {
            Ok(r) => {
                if best.as_ref().is_none_or(|(b, _)| r.sum_rate > *b) {
                    best = Some((r.sum_rate, idx.clone()));
                }
            }
            Err(Error::Singular) => {}
            Err(e) => return Err(e),
        }
        // Advance to the next combination in lexicographic order.
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            break;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }

    let (_, selected) = best.ok_or(Error::Singular)?;
    finish(
        Algorithm::Exhaustive,
        h_b,
        cfg,
        params,
        selected,
        alloc::vec![subsets as usize],
        Vec::new(),
    )
}
