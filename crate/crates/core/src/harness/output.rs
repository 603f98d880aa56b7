//! Per-trial CSV rows and per-point summaries with 95% confidence intervals.

use std::collections::BTreeMap;
use std::fs::{self, File};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::error::Result;
use crate::scheme::Scheme;

/// One scheme evaluated on one trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub scheme: Scheme,
    pub sweep_param: String,
    pub sweep_value: f64,
    pub trial: usize,
    pub throughput_bps_hz: f64,
    pub ao_iterations: usize,
    pub runtime_ms: f64,
}

/// Mean throughput of one scheme at one sweep point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub scheme: Scheme,
    pub sweep_param: String,
    pub sweep_value: f64,
    pub n: usize,
    pub mean_throughput_bps_hz: f64,
    /// Student-t half width; zero below two samples.
    pub ci95_half_width: f64,
}

impl SummaryRow {
    pub fn low(&self) -> f64 {
        self.mean_throughput_bps_hz - self.ci95_half_width
    }

    pub fn high(&self) -> f64 {
        self.mean_throughput_bps_hz + self.ci95_half_width
    }
}

fn ci95_half_width(values: &[f64], mean: f64) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let t = StudentsT::new(0.0, 1.0, (n - 1) as f64)
        .expect("positive degrees of freedom")
        .inverse_cdf(0.975);
    t * (var / n as f64).sqrt()
}

/// Groups rows by (scheme, sweep value) in scheme then value order.
pub fn summarize(rows: &[TrialResult]) -> Vec<SummaryRow> {
    let mut groups: BTreeMap<(Scheme, u64), (&str, f64, Vec<f64>)> = BTreeMap::new();
    for r in rows {
        // Order-preserving key for finite floats.
        let bits = r.sweep_value.to_bits();
        let key = if r.sweep_value.is_sign_negative() {
            !bits
        } else {
            bits | 1 << 63
        };
        groups
            .entry((r.scheme, key))
            .or_insert_with(|| (r.sweep_param.as_str(), r.sweep_value, Vec::new()))
            .2
            .push(r.throughput_bps_hz);
    }
    groups
        .into_iter()
        .map(|((scheme, _), (param, value, ts))| {
            let mean = ts.iter().sum::<f64>() / ts.len() as f64;
            SummaryRow {
                scheme,
                sweep_param: param.to_string(),
                sweep_value: value,
                n: ts.len(),
                mean_throughput_bps_hz: mean,
                ci95_half_width: ci95_half_width(&ts, mean),
            }
        })
        .collect()
}

fn write_rows<R: Serialize>(rows: &[R], header: &[&str], path: &Path) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(File::create(path)?);
    w.write_record(header)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_results(rows: &[TrialResult], path: &Path) -> Result<()> {
    let header = [
        "scheme",
        "sweep_param",
        "sweep_value",
        "trial",
        "throughput_bps_hz",
        "ao_iterations",
        "runtime_ms",
    ];
    write_rows(rows, &header, path)
}

pub fn write_summary(rows: &[SummaryRow], path: &Path) -> Result<()> {
    let header = [
        "scheme",
        "sweep_param",
        "sweep_value",
        "n",
        "mean_throughput_bps_hz",
        "ci95_half_width",
    ];
    write_rows(rows, &header, path)
}

pub fn read_results(path: &Path) -> Result<Vec<TrialResult>> {
    let mut r = csv::Reader::from_path(path)?;
    Ok(r.deserialize().collect::<Result<_, _>>()?)
}

/// Writes `results.csv` and `summary.csv` into `dir`, creating it if needed.
/// Returns the two paths.
pub fn emit_results(rows: &[TrialResult], dir: &Path) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir)?;
    let results = dir.join("results.csv");
    let summary = dir.join("summary.csv");
    write_results(rows, &results)?;
    write_summary(&summarize(rows), &summary)?;
    Ok((results, summary))
}
