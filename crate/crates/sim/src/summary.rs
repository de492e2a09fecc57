//! Per-grid-point statistics of a sweep.

use std::fmt::Write as _;

use beamsched_core::schedulers::Algorithm;

use crate::harness::{GridPoint, SweepResult, SweepSpec};

/// Sample mean and its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanSe {
    pub mean: f64,
    pub se: f64,
    pub n: usize,
}

impl MeanSe {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let v: Vec<f64> = values.into_iter().collect();
        let n = v.len();
        if n == 0 {
            return Self { mean: f64::NAN, se: f64::NAN, n };
        }
        let mean = v.iter().sum::<f64>() / n as f64;
        let se = if n > 1 {
            let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        Self { mean, se, n }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointSummary {
    pub algorithm: Algorithm,
    pub point: GridPoint,
    pub sum_rate: MeanSe,
    pub mean_selected: f64,
    /// Mean candidate-set size per stage. Trials that stopped early count
    /// as zero at the missing stages.
    pub mean_candidate_sizes: Vec<f64>,
}

pub fn summarize(spec: &SweepSpec, result: &SweepResult) -> Vec<PointSummary> {
    let mut out = Vec::new();
    for point in spec.grid_points() {
        for &algorithm in &spec.algorithms {
            let rows: Vec<_> = result.select(algorithm, point).collect();
            let stages = rows.iter().map(|r| r.candidate_sizes.len()).max().unwrap_or(0);
            let n = rows.len().max(1) as f64;
            let mean_candidate_sizes = (0..stages)
                .map(|i| rows.iter().map(|r| r.candidate_sizes.get(i).copied().unwrap_or(0) as f64).sum::<f64>() / n)
                .collect();
            out.push(PointSummary {
                algorithm,
                point,
                sum_rate: MeanSe::of(rows.iter().map(|r| r.sum_rate)),
                mean_selected: rows.iter().map(|r| r.num_selected as f64).sum::<f64>() / n,
                mean_candidate_sizes,
            });
        }
    }
    out
}

/// Fixed-width table of mean sum rate ± standard error.
pub fn format_table(summaries: &[PointSummary]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<22} {:>8} {:>4} {:>10} {:>8} {:>8}",
        "algorithm", "rho_db", "bits", "mean", "se", "users"
    );
    for p in summaries {
        let _ = writeln!(
            s,
            "{:<22} {:>8.2} {:>4} {:>10.4} {:>8.4} {:>8.2}",
            p.algorithm.label(),
            p.point.rho_db,
            p.point.bits,
            p.sum_rate.mean,
            p.sum_rate.se,
            p.mean_selected
        );
    }
    s
}
