//! User schedulers.
//!
//! Every scheduler takes the beamspace channels of all `N_u` candidate users
//! (one column each) and returns a [`ScheduleTrace`]. Selections are
//! evaluated with the exact AQNM zero-forcing rate regardless of the metric
//! the scheduler used to pick them. Ties are broken in favour of the lowest
//! user index everywhere.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::channel::{BeamspaceMatrix, SystemConfig};
use crate::quantize::AqnmParams;
use crate::rates::{self, RateReport};
use crate::{Error, Result};

mod baselines;
mod css;
mod exhaustive;
mod greedy;

pub use baselines::{random_selection, schedule_beam_select, schedule_random, schedule_sus};
pub use css::schedule_css;
pub use exhaustive::{schedule_exhaustive, subset_count, MAX_EXHAUSTIVE_SUBSETS};
pub use greedy::schedule_greedy;

/// Scheduler identifiers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Css,
    Greedy,
    Sus,
    BeamSelect,
    Random,
    Exhaustive,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Css,
        Algorithm::Greedy,
        Algorithm::Sus,
        Algorithm::BeamSelect,
        Algorithm::Random,
        Algorithm::Exhaustive,
    ];

    /// Short id used on the command line and in CSV output.
    pub fn id(self) -> &'static str {
        match self {
            Algorithm::Css => "css",
            Algorithm::Greedy => "greedy",
            Algorithm::Sus => "sus",
            Algorithm::BeamSelect => "beam-select",
            Algorithm::Random => "random",
            Algorithm::Exhaustive => "exhaustive",
        }
    }

    /// Human-readable label for tables and plots.
    pub fn label(self) -> &'static str {
        match self {
            Algorithm::Css => "CSS",
            Algorithm::Greedy => "greedy",
            Algorithm::Sus => "SUS",
            Algorithm::BeamSelect => "beam-select (variant)",
            Algorithm::Random => "random",
            Algorithm::Exhaustive => "exhaustive",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// Unknown scheduler id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownAlgorithm;

impl fmt::Display for UnknownAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown scheduler; expected one of css, greedy, sus, beam-select, random, exhaustive")
    }
}

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.id().eq_ignore_ascii_case(s))
            .ok_or(UnknownAlgorithm)
    }
}

/// Candidate index and the score it had at one selection stage.
pub type StageScores = Vec<(usize, f64)>;

/// Outcome of one scheduler run.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleTrace {
    pub algorithm: Algorithm,
    /// Selected users in selection order.
    pub selected: Vec<usize>,
    /// Candidate-set size at the start of each selection stage.
    pub candidate_sizes: Vec<usize>,
    /// Per-stage scores of every candidate, for schedulers that score.
    pub stage_scores: Vec<StageScores>,
    /// Exact rates of the final selection.
    pub rate_report: RateReport,
}

impl ScheduleTrace {
    pub fn sum_rate(&self) -> f64 {
        self.rate_report.sum_rate
    }
}

/// Runs `algorithm` on one channel realization. The random scheduler draws
/// from `rng`; the others ignore it.
pub fn run_scheduler<R: rand::Rng + ?Sized>(
    algorithm: Algorithm,
    h_b: &BeamspaceMatrix,
    cfg: &SystemConfig,
    params: &AqnmParams,
    rng: &mut R,
) -> Result<ScheduleTrace> {
    match algorithm {
        Algorithm::Css => schedule_css(h_b, cfg, params),
        Algorithm::Greedy => schedule_greedy(h_b, cfg, params),
        Algorithm::Sus => schedule_sus(h_b, cfg, params),
        Algorithm::BeamSelect => schedule_beam_select(h_b, cfg, params),
        Algorithm::Random => schedule_random(rng, h_b, cfg, params),
        Algorithm::Exhaustive => schedule_exhaustive(h_b, cfg, params),
    }
}

/// Position of the first maximal score, skipping NaN.
pub(crate) fn argmax(scores: &[(usize, f64)]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (pos, &(_, s)) in scores.iter().enumerate() {
        if s.is_nan() {
            continue;
        }
        if best.is_none_or(|(_, b)| s > b) {
            best = Some((pos, s));
        }
    }
    best.map(|(pos, _)| pos)
}

pub(crate) fn check_input(h_b: &BeamspaceMatrix, cfg: &SystemConfig) -> Result<()> {
    if h_b.num_users() == 0 || h_b.num_beams() == 0 {
        return Err(Error::EmptyInput);
    }
    if cfg.num_scheduled == 0 {
        return Err(Error::InvalidConfig("must schedule at least one user"));
    }
    if !(0.0..=1.0).contains(&cfg.ortho_threshold) {
        return Err(Error::InvalidConfig("orthogonality threshold must lie in [0, 1]"));
    }
    Ok(())
}

pub(crate) fn finish(
    algorithm: Algorithm,
    h_b: &BeamspaceMatrix,
    cfg: &SystemConfig,
    params: &AqnmParams,
    selected: Vec<usize>,
    candidate_sizes: Vec<usize>,
    stage_scores: Vec<StageScores>,
) -> Result<ScheduleTrace> {
    let rate_report = rates::sum_rate(&h_b.select(&selected), cfg.transmit_power, params)?;
    Ok(ScheduleTrace {
        algorithm,
        selected,
        candidate_sizes,
        stage_scores,
        rate_report,
    })
}

/// `|a^H b| / (||a|| ||b||)`; one when either vector vanishes, so such
/// users are always filtered.
pub(crate) fn cosine(a: &[crate::C64], a_norm: f64, b: &[crate::C64], b_norm: f64) -> f64 {
    if a_norm == 0.0 || b_norm == 0.0 {
        return 1.0;
    }
    crate::linalg::dot(a, b).norm() / (a_norm * b_norm)
}
