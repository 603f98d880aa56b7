//! Experiment configuration: a flat `key = value` text format.
//!
//! One key per line, `#` starts a comment, lists are comma-separated. Exactly
//! one of `M`, `L`, `mu`, `p_max_dbm_hz` is the sweep axis; it may hold several
//! values, the others hold one. Example:
//!
//! ```text
//! seed = 7
//! trials = 200
//! M = 10, 15, 20, 25, 30
//! L = 20
//! mu = 0.6
//! p_max_dbm_hz = -42.6
//! schemes = NOMA-IDNC-MWV, R-IDNC-MWV, RLNC
//! ```

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::channel::{self, dbm_per_hz_to_watts, TopologyConfig};
use crate::error::{config, Error, Result};
use crate::power::{IfeOptions, IFE_MAX_ITER, IFE_TOL};
use crate::scheme::{Scheme, SchemeParams, AO_TOL, FTPA_ALPHA, INIT_BETA, MAX_AO_ITER};
use crate::search::ORACLE_VERTEX_CAP;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SweepAxis {
    Receivers,
    Packets,
    BufferRatio,
    MaxPower,
}

impl SweepAxis {
    pub fn key(self) -> &'static str {
        match self {
            SweepAxis::Receivers => "M",
            SweepAxis::Packets => "L",
            SweepAxis::BufferRatio => "mu",
            SweepAxis::MaxPower => "p_max_dbm_hz",
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "m" => Ok(SweepAxis::Receivers),
            "l" => Ok(SweepAxis::Packets),
            "mu" => Ok(SweepAxis::BufferRatio),
            "p_max_dbm_hz" | "p_max" => Ok(SweepAxis::MaxPower),
            other => Err(config(format!("unknown sweep axis {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub base_seed: u64,
    pub trials: usize,
    pub receivers: Vec<usize>,
    pub packets: Vec<usize>,
    pub mu: Vec<f64>,
    pub p_max_dbm_hz: Vec<f64>,
    pub r_min_bps_hz: f64,
    pub cell_radius_m: f64,
    pub min_distance_m: f64,
    pub noise_dbm_hz: f64,
    /// Carried for reporting; all rates are per Hz.
    pub bandwidth_hz: f64,
    pub schemes: Vec<Scheme>,
    pub ao_tol: f64,
    pub max_ao_iter: usize,
    pub init_beta: f64,
    pub ftpa_alpha: f64,
    pub strict_sic: bool,
    pub ife_tol: f64,
    pub ife_max_iter: usize,
    /// Explicit sweep axis; inferred from the multi-valued key when absent.
    pub sweep: Option<SweepAxis>,
    /// Fill `runtime_ms` with wall-clock times. Off by default so that output
    /// files are reproducible byte for byte.
    pub record_runtime: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            base_seed: 1,
            trials: 200,
            receivers: vec![20],
            packets: vec![20],
            mu: vec![0.6],
            p_max_dbm_hz: vec![channel::P_MAX_DBM_HZ],
            r_min_bps_hz: channel::R_MIN_BPS_HZ,
            cell_radius_m: channel::CELL_RADIUS_M,
            min_distance_m: channel::MIN_DISTANCE_M,
            noise_dbm_hz: channel::NOISE_DBM_HZ,
            bandwidth_hz: 5e6,
            schemes: Scheme::ALL.to_vec(),
            ao_tol: AO_TOL,
            max_ao_iter: MAX_AO_ITER,
            init_beta: INIT_BETA,
            ftpa_alpha: FTPA_ALPHA,
            strict_sic: false,
            ife_tol: IFE_TOL,
            ife_max_iter: IFE_MAX_ITER,
            sweep: None,
            record_runtime: false,
        }
    }
}

/// One point of the swept axis with every parameter resolved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub index: usize,
    pub value: f64,
    pub receivers: usize,
    pub packets: usize,
    pub mu: f64,
    pub p_max_dbm_hz: f64,
}

fn parse_one<V: FromStr>(key: &str, raw: &str) -> Result<V> {
    raw.trim()
        .parse()
        .map_err(|_| config(format!("{key}: cannot parse {:?}", raw.trim())))
}

fn parse_list<V: FromStr>(key: &str, raw: &str) -> Result<Vec<V>> {
    let items: Vec<V> = raw
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_one(key, s))
        .collect::<Result<_>>()?;
    if items.is_empty() {
        return Err(config(format!("{key}: empty list")));
    }
    Ok(items)
}

fn parse_bool(key: &str, raw: &str) -> Result<bool> {
    match raw.trim().to_ascii_lowercase().as_str() {
        "1" | "true" | "yes" | "on" => Ok(true),
        "0" | "false" | "no" | "off" => Ok(false),
        _ => Err(config(format!("{key}: expected a boolean, got {raw:?}"))),
    }
}

impl ExperimentConfig {
    /// Parses config text on top of the defaults and validates the result.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            cfg.set_pair(line).map_err(|e| config(format!("line {}: {e}", n + 1)))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Applies one `key=value` assignment (no validation).
    pub fn set_pair(&mut self, pair: &str) -> Result<()> {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| config(format!("expected key = value, got {pair:?}")))?;
        self.set(key.trim(), value.trim())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key.to_ascii_lowercase().as_str() {
            "seed" | "base_seed" => self.base_seed = parse_one(key, value)?,
            "trials" => self.trials = parse_one(key, value)?,
            "m" => self.receivers = parse_list(key, value)?,
            "l" => self.packets = parse_list(key, value)?,
            "mu" => self.mu = parse_list(key, value)?,
            "p_max_dbm_hz" => self.p_max_dbm_hz = parse_list(key, value)?,
            "r_min_bps_hz" => self.r_min_bps_hz = parse_one(key, value)?,
            "cell_radius_m" => self.cell_radius_m = parse_one(key, value)?,
            "min_distance_m" => self.min_distance_m = parse_one(key, value)?,
            "noise_dbm_hz" => self.noise_dbm_hz = parse_one(key, value)?,
            "bandwidth_hz" => self.bandwidth_hz = parse_one(key, value)?,
            "schemes" => self.schemes = parse_list(key, value)?,
            "ao_tol" => self.ao_tol = parse_one(key, value)?,
            "max_ao_iter" => self.max_ao_iter = parse_one(key, value)?,
            "init_beta" => self.init_beta = parse_one(key, value)?,
            "ftpa_alpha" => self.ftpa_alpha = parse_one(key, value)?,
            "strict_sic" => self.strict_sic = parse_bool(key, value)?,
            "ife_tol" => self.ife_tol = parse_one(key, value)?,
            "ife_max_iter" => self.ife_max_iter = parse_one(key, value)?,
            "sweep" => self.sweep = Some(value.parse()?),
            "record_runtime" => self.record_runtime = parse_bool(key, value)?,
            _ => return Err(config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    fn axis_len(&self, axis: SweepAxis) -> usize {
        match axis {
            SweepAxis::Receivers => self.receivers.len(),
            SweepAxis::Packets => self.packets.len(),
            SweepAxis::BufferRatio => self.mu.len(),
            SweepAxis::MaxPower => self.p_max_dbm_hz.len(),
        }
    }

    /// The swept axis: explicit, or the one key holding several values, or `M`.
    pub fn sweep_axis(&self) -> Result<SweepAxis> {
        const AXES: [SweepAxis; 4] = [
            SweepAxis::Receivers,
            SweepAxis::Packets,
            SweepAxis::BufferRatio,
            SweepAxis::MaxPower,
        ];
        let multi: Vec<SweepAxis> = AXES.into_iter().filter(|&a| self.axis_len(a) > 1).collect();
        let axis = match (self.sweep, multi.as_slice()) {
            (Some(a), _) => a,
            (None, []) => SweepAxis::Receivers,
            (None, [a]) => *a,
            (None, _) => return Err(config("only one of M, L, mu, p_max_dbm_hz may list several values")),
        };
        if let Some(other) = multi.iter().find(|&&a| a != axis) {
            return Err(config(format!(
                "{other} lists several values but the sweep axis is {axis}"
            )));
        }
        Ok(axis)
    }

    pub fn validate(&self) -> Result<()> {
        self.sweep_axis()?;
        if self.trials == 0 {
            return Err(config("trials must be at least 1"));
        }
        if self.receivers.contains(&0) {
            return Err(config("M must be at least 1"));
        }
        if self.packets.contains(&0) {
            return Err(config("L must be at least 1"));
        }
        if self.mu.iter().any(|mu| !(0.0..=1.0).contains(mu)) {
            return Err(config("mu must lie in [0, 1]"));
        }
        if self.p_max_dbm_hz.iter().any(|p| !p.is_finite()) {
            return Err(config("p_max_dbm_hz must be finite"));
        }
        if !(self.r_min_bps_hz >= 0.0) {
            return Err(config("r_min_bps_hz must be non-negative"));
        }
        if !(self.cell_radius_m > 0.0) || !(self.min_distance_m > 0.0) {
            return Err(config("cell_radius_m and min_distance_m must be positive"));
        }
        if self.min_distance_m >= self.cell_radius_m * 3f64.sqrt() / 2.0 {
            return Err(config("min_distance_m must be below the cell apothem"));
        }
        if self.schemes.is_empty() {
            return Err(config("at least one scheme is required"));
        }
        if !(self.init_beta > 0.0 && self.init_beta < 1.0) {
            return Err(config("init_beta must lie in (0, 1)"));
        }
        if self.max_ao_iter == 0 || self.ife_max_iter == 0 {
            return Err(config("iteration caps must be at least 1"));
        }
        if !(self.ao_tol >= 0.0) || !(self.ife_tol > 0.0) || !(self.ftpa_alpha >= 0.0) {
            return Err(config("tolerances must be positive and ftpa_alpha non-negative"));
        }
        Ok(())
    }

    /// Resolved sweep points in list order.
    pub fn points(&self) -> Result<Vec<SweepPoint>> {
        let axis = self.sweep_axis()?;
        Ok((0..self.axis_len(axis))
            .map(|i| {
                let pick = |len: usize| if len > 1 { i } else { 0 };
                let receivers = self.receivers[pick(self.receivers.len())];
                let packets = self.packets[pick(self.packets.len())];
                let mu = self.mu[pick(self.mu.len())];
                let p_max_dbm_hz = self.p_max_dbm_hz[pick(self.p_max_dbm_hz.len())];
                let value = match axis {
                    SweepAxis::Receivers => receivers as f64,
                    SweepAxis::Packets => packets as f64,
                    SweepAxis::BufferRatio => mu,
                    SweepAxis::MaxPower => p_max_dbm_hz,
                };
                SweepPoint {
                    index: i,
                    value,
                    receivers,
                    packets,
                    mu,
                    p_max_dbm_hz,
                }
            })
            .collect())
    }

    pub fn topology_config(&self, point: &SweepPoint) -> TopologyConfig<f64> {
        TopologyConfig {
            num_receivers: point.receivers,
            cell_radius_m: self.cell_radius_m,
            min_distance_m: self.min_distance_m,
            p_max: dbm_per_hz_to_watts(point.p_max_dbm_hz),
            r_min: self.r_min_bps_hz,
            noise: dbm_per_hz_to_watts(self.noise_dbm_hz),
        }
    }

    pub fn scheme_params(&self) -> SchemeParams<f64> {
        SchemeParams {
            ao_tol: self.ao_tol,
            max_ao_iter: self.max_ao_iter,
            init_beta: self.init_beta,
            ftpa_alpha: self.ftpa_alpha,
            strict_sic: self.strict_sic,
            ife: IfeOptions {
                tol: self.ife_tol,
                max_iter: self.ife_max_iter,
                init: None,
            },
            oracle_cap: ORACLE_VERTEX_CAP,
        }
    }
}
