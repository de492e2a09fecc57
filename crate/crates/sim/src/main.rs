use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use beamsched::config::{parse_algorithms, parse_list, parse_overlap_overrides, SweepOverrides};
use beamsched::harness::run_sweep;
use beamsched::output::{emit_csv, write_csv};
use beamsched::summary::{format_table, summarize};
use beamsched::verify::CRITERIA;
use beamsched_core::quantize::{beta_for_bits, high_resolution_beta, with_lloyd_max, MAX_DESIGNED_BITS};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "beamsched", version, about = "Uplink beamspace user scheduling with low-resolution ADCs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a Monte Carlo sweep and write one CSV row per scheduler run.
    Sweep(Box<SweepArgs>),
    /// Run the acceptance checks, one line per criterion.
    Verify {
        /// Only these criteria, e.g. 1,3,7.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
    /// Print the quantizer distortion per resolution.
    QuantizerTable {
        #[arg(long, default_value_t = 9)]
        max_bits: u32,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// Starting configuration: fig2, fig3, fig4, desk-fig2, desk-fig3, desk-fig4.
    #[arg(long)]
    preset: Option<String>,
    /// key = value file applied on top of the preset.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Transmit powers in dB, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    rho_db: Option<String>,
    /// ADC resolutions, comma-separated.
    #[arg(long)]
    bits: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Scheduler ids: css, greedy, sus, beam-select, random, exhaustive.
    #[arg(long)]
    algorithms: Option<String>,
    /// Semi-orthogonality threshold for CSS and SUS.
    #[arg(long)]
    epsilon: Option<f64>,
    /// Separate threshold for SUS.
    #[arg(long)]
    sus_epsilon: Option<f64>,
    /// Beam-overlap limit at every resolution.
    #[arg(long)]
    n_ol: Option<usize>,
    /// Per-resolution limits as bits:n_ol pairs, e.g. 1:2,4:3.
    #[arg(long)]
    n_ol_overrides: Option<String>,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print mean sum rate and standard error per grid point.
    #[arg(long)]
    summary: bool,
}

impl SweepArgs {
    fn overrides(&self) -> Result<SweepOverrides> {
        Ok(SweepOverrides {
            preset: self.preset.clone(),
            rho_db: self.rho_db.as_deref().map(|v| parse_list("rho_db", v)).transpose()?,
            bits: self.bits.as_deref().map(|v| parse_list("bits", v)).transpose()?,
            trials: self.trials,
            seed: self.seed,
            algorithms: self.algorithms.as_deref().map(parse_algorithms).transpose()?,
            epsilon: self.epsilon,
            sus_epsilon: self.sus_epsilon,
            n_ol: self.n_ol,
            n_ol_overrides: self.n_ol_overrides.as_deref().map(parse_overlap_overrides).transpose()?,
            ..SweepOverrides::default()
        })
    }
}

fn sweep(args: &SweepArgs) -> Result<()> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
            SweepOverrides::parse(&text).with_context(|| format!("in {}", path.display()))?
        }
        None => SweepOverrides::default(),
    };
    let spec = file.merged(args.overrides()?).resolve()?;
    let result = run_sweep(&spec)?;
    let table = args.summary.then(|| format_table(&summarize(&spec, &result)));
    match &args.out {
        Some(path) => {
            emit_csv(&result, path).with_context(|| format!("cannot write {}", path.display()))?;
            if let Some(t) = table {
                print!("{t}");
            }
        }
        None => {
            write_csv(&result, io::stdout().lock())?;
            if let Some(t) = table {
                eprint!("{t}");
            }
        }
    }
    Ok(())
}

fn verify(only: &[u32]) -> bool {
    let mut all = true;
    for c in CRITERIA.iter().filter(|c| only.is_empty() || only.contains(&c.id)) {
        let outcome = c.run();
        println!("{outcome}");
        all &= outcome.passed;
    }
    all
}

fn quantizer_table(max_bits: u32) -> Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "{:>4} {:>14} {:>14} {:>14}  source", "bits", "beta", "alpha", "high-res beta")?;
    for b in 1..=max_bits {
        let beta = beta_for_bits(b)?;
        let source = if b <= MAX_DESIGNED_BITS {
            let iterations = with_lloyd_max(b, |q| q.iterations())?;
            format!("Lloyd-Max, {iterations} iterations")
        } else {
            "high-resolution formula".to_owned()
        };
        writeln!(out, "{b:>4} {beta:>14.8e} {:>14.10} {:>14.8e}  {source}", 1.0 - beta, high_resolution_beta(b))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Sweep(args) => sweep(args),
        Command::Verify { only } => {
            return if verify(only) { ExitCode::SUCCESS } else { ExitCode::FAILURE };
        }
        Command::QuantizerTable { max_bits } => quantizer_table(*max_bits),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
