//! Monte-Carlo experiment driver: realizations, sweeps and result files.

mod config;
mod output;

pub use config::{ExperimentConfig, SweepAxis, SweepPoint};
pub use output::{emit_results, read_results, summarize, write_results, write_summary, SummaryRow, TrialResult};

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::channel::{generate_topology, Topology};
use crate::error::{invariant, Result};
use crate::idnc::{update_wants, SideInfo};
use crate::scalar::Scalar;
use crate::scheme::{run_scheme, Outcome, SchemeResult};

/// SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Child seed number `stream` of `parent`.
pub fn derive_seed(parent: u64, stream: u64) -> u64 {
    splitmix64(parent ^ splitmix64(stream))
}

/// Seed of one trial at one sweep point.
pub fn trial_seed(base_seed: u64, sweep_index: usize, trial: usize) -> u64 {
    derive_seed(derive_seed(base_seed, sweep_index as u64), trial as u64)
}

pub fn topology_seed(trial_seed: u64) -> u64 {
    derive_seed(trial_seed, 0)
}

pub fn wants_seed(trial_seed: u64) -> u64 {
    derive_seed(trial_seed, 1)
}

/// Side information where each receiver holds each packet with probability `mu`.
pub fn generate_wants(num_receivers: usize, num_packets: usize, mu: f64, seed: u64) -> Result<SideInfo> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let wants: Vec<Vec<usize>> = (0..num_receivers)
        .map(|_| (0..num_packets).filter(|_| rng.random::<f64>() >= mu).collect())
        .collect();
    SideInfo::new(num_packets, wants)
}

/// The topology and side information of one trial.
pub fn realize(cfg: &ExperimentConfig, point: &SweepPoint, trial: usize) -> Result<(Topology<f64>, SideInfo)> {
    let seed = trial_seed(cfg.base_seed, point.index, trial);
    let topology = generate_topology(&cfg.topology_config(point), topology_seed(seed))?;
    let wants = generate_wants(point.receivers, point.packets, point.mu, wants_seed(seed))?;
    Ok((topology, wants))
}

/// Cheap structural checks on a scheme result.
pub fn check_result<T: Scalar>(topology: &Topology<T>, wants: &SideInfo, result: &SchemeResult<T>) -> Result<()> {
    let fail = |what: &str| invariant(format!("{}: {what}", result.scheme));
    if !result.throughput.is_finite() || result.throughput < T::zero() {
        return Err(fail("throughput is negative or not finite"));
    }
    if let Outcome::Idnc(d) = &result.outcome {
        let slack = T::lit(1e-9);
        if (d.power.total() - topology.p_max).abs() > slack * topology.p_max {
            return Err(fail("power split does not use the budget"));
        }
        let far_caps = topology.far_capacities(&d.power);
        let near_caps = topology.near_capacities(&d.power);
        let after_far = match &d.far.packet {
            Some(q) => update_wants(wants, q, &d.far.targets)?,
            None => wants.clone(),
        };
        for (layer, caps, side) in [(&d.far, &far_caps, wants), (&d.near, &near_caps, &after_far)] {
            let Some(q) = &layer.packet else {
                if !layer.targets.is_empty() {
                    return Err(fail("absent layer has targets"));
                }
                continue;
            };
            for &m in &layer.targets {
                if caps[m] < layer.rate * (T::one() - slack) {
                    return Err(fail("layer rate above a target's capacity"));
                }
                if !side.instantly_decodes(m, q) {
                    return Err(fail("target cannot decode instantly"));
                }
            }
        }
        if d.near.targets.iter().any(|&m| !topology.receivers[m].is_near()) {
            return Err(fail("near layer targets a far receiver"));
        }
    }
    Ok(())
}

/// Runs every configured scheme on every trial of every sweep point.
///
/// Trials run in parallel; the returned rows are sorted by scheme, sweep value
/// and trial, so output does not depend on scheduling.
pub fn run_sweep(cfg: &ExperimentConfig) -> Result<Vec<TrialResult>> {
    cfg.validate()?;
    let axis = cfg.sweep_axis()?;
    let params = cfg.scheme_params();
    let units: Vec<(SweepPoint, usize)> = cfg
        .points()?
        .into_iter()
        .flat_map(|p| (0..cfg.trials).map(move |t| (p, t)))
        .collect();
    let chunks: Vec<Vec<TrialResult>> = units
        .par_iter()
        .map(|(point, trial)| {
            let (topology, wants) = realize(cfg, point, *trial)?;
            cfg.schemes
                .iter()
                .map(|&scheme| {
                    let start = Instant::now();
                    let result = run_scheme(scheme, &topology, &wants, &params)?;
                    let elapsed = start.elapsed().as_secs_f64() * 1e3;
                    check_result(&topology, &wants, &result)?;
                    Ok(TrialResult {
                        scheme,
                        sweep_param: axis.key().to_string(),
                        sweep_value: point.value,
                        trial: *trial,
                        throughput_bps_hz: result.throughput,
                        ao_iterations: result.ao_iterations,
                        runtime_ms: if cfg.record_runtime { elapsed } else { 0.0 },
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<TrialResult> = chunks.into_iter().flatten().collect();
    rows.sort_by(|a, b| {
        a.scheme
            .cmp(&b.scheme)
            .then(a.sweep_value.total_cmp(&b.sweep_value))
            .then(a.trial.cmp(&b.trial))
    });
    Ok(rows)
}
