//! CSV output of sweep results.
//!
//! Columns, in order:
//!
//! | column            | content                                          |
//! |-------------------|--------------------------------------------------|
//! | `algorithm`       | scheduler id (`css`, `greedy`, ...)              |
//! | `rho_db`          | transmit power in dB                             |
//! | `bits`            | ADC resolution                                   |
//! | `trial`           | zero-based trial index                           |
//! | `sum_rate`        | bits/s/Hz, shortest round-trip decimal           |
//! | `num_selected`    | users actually scheduled                         |
//! | `candidate_sizes` | quoted, `;`-joined candidate-set size per stage  |
//! | `channel_digest`  | hex digest of the trial's channel draw           |
//!
//! Files are UTF-8 with LF line endings.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use anyhow::{Context, Result};

use crate::harness::{SweepResult, SweepRow};

pub const HEADER: &str = "algorithm,rho_db,bits,trial,sum_rate,num_selected,candidate_sizes,channel_digest";

pub fn write_csv<W: Write>(result: &SweepResult, mut out: W) -> io::Result<()> {
    writeln!(out, "{HEADER}")?;
    for r in &result.rows {
        let sizes: Vec<String> = r.candidate_sizes.iter().map(usize::to_string).collect();
        writeln!(
            out,
            "{},{},{},{},{},{},\"{}\",{}",
            r.algorithm.id(),
            r.rho_db,
            r.bits,
            r.trial,
            r.sum_rate,
            r.num_selected,
            sizes.join(";"),
            r.channel_digest
        )?;
    }
    out.flush()
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> io::Result<()> {
    write_csv(result, BufWriter::new(File::create(path)?))
}

pub fn parse_csv<R: Read>(input: R) -> Result<Vec<SweepRow>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header: Vec<String> = reader.headers()?.iter().map(str::to_owned).collect();
    anyhow::ensure!(header.join(",") == HEADER, "unexpected CSV header {:?}", header.join(","));
    let mut rows = Vec::new();
    for (n, record) in reader.records().enumerate() {
        let rec = record?;
        let field = |i: usize| rec.get(i).unwrap_or_default();
        let line = n + 2;
        let candidate_sizes = if field(6).is_empty() {
            Vec::new()
        } else {
            field(6)
                .split(';')
                .map(str::parse)
                .collect::<Result<_, _>>()
                .with_context(|| format!("line {line}: bad candidate sizes"))?
        };
        rows.push(SweepRow {
            algorithm: field(0)
                .parse()
                .map_err(|e| anyhow::anyhow!("line {line}: {e}"))?,
            rho_db: field(1).parse().with_context(|| format!("line {line}: bad rho_db"))?,
            bits: field(2).parse().with_context(|| format!("line {line}: bad bits"))?,
            trial: field(3).parse().with_context(|| format!("line {line}: bad trial"))?,
            sum_rate: field(4).parse().with_context(|| format!("line {line}: bad sum_rate"))?,
            num_selected: field(5).parse().with_context(|| format!("line {line}: bad num_selected"))?,
            candidate_sizes,
            channel_digest: field(7).to_owned(),
        });
    }
    Ok(rows)
}

pub fn read_csv(path: &Path) -> Result<Vec<SweepRow>> {
    let file = File::open(path).with_context(|| format!("cannot open {}", path.display()))?;
    parse_csv(file)
}
