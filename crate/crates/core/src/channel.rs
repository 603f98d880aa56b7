//! Cell topology generation and per-receiver NOMA capacities.
//!
//! All powers are linear power spectral densities in W/Hz and all rates are
//! spectral efficiencies in bps/Hz. Decibel quantities only appear at the
//! configuration boundary (see [`dbm_per_hz_to_watts`]).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::error::{config, contract, Result};
use crate::scalar::Scalar;

/// Thermal noise density used for every receiver, in dBm/Hz.
pub const NOISE_DBM_HZ: f64 = -174.0;
/// Default cell circumradius in meters.
pub const CELL_RADIUS_M: f64 = 500.0;
/// Default minimum BS-receiver distance in meters.
pub const MIN_DISTANCE_M: f64 = 10.0;
/// Default per-Hz power budget in dBm/Hz.
pub const P_MAX_DBM_HZ: f64 = -42.6;
/// Default minimum rate per targeted receiver.
pub const R_MIN_BPS_HZ: f64 = 0.4;

/// Converts a power density in dBm/Hz to W/Hz.
pub fn dbm_per_hz_to_watts(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Large-scale path loss in dB at `distance_km`: `128.1 + 37.6 log10(d)`.
pub fn path_loss_db<T: Scalar>(distance_km: T) -> T {
    T::lit(128.1) + T::lit(37.6) * distance_km.log10()
}

/// Receiver group: near receivers can run SIC and decode the second layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Group {
    Near,
    Far,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Receiver<T> {
    pub id: usize,
    pub distance_m: T,
    /// Linear power gain `|h|^2` (path loss times the fading draw).
    pub gain: T,
    /// Noise power density in W/Hz.
    pub noise: T,
    pub group: Group,
}

impl<T: Scalar> Receiver<T> {
    pub fn new(id: usize, distance_m: T, gain: T, noise: T, group: Group) -> Result<Self> {
        if !(gain > T::zero() && noise > T::zero() && distance_m > T::zero()) {
            return Err(config(format!(
                "receiver {id}: gain, noise and distance must be positive"
            )));
        }
        Ok(Self {
            id,
            distance_m,
            gain,
            noise,
            group,
        })
    }

    /// Noise-to-gain ratio `sigma^2 / |h|^2`; larger means weaker.
    pub fn inv_snr(&self) -> T {
        self.noise / self.gain
    }

    /// Rate at which the superposed far-layer signal is decodable, treating the
    /// near layer as interference.
    pub fn capacity_far(&self, p: &PowerAllocation<T>) -> T {
        let sinr = p.p_far * self.gain / (p.p_near * self.gain + self.noise);
        sinr.ln_1p() / T::LN_2()
    }

    /// Interference-free near-layer rate after cancelling the far layer.
    pub fn capacity_near(&self, p: &PowerAllocation<T>) -> T {
        let snr = p.p_near * self.gain / self.noise;
        snr.ln_1p() / T::LN_2()
    }

    /// Single-user capacity when the whole budget `power` carries one signal.
    pub fn single_user_capacity(&self, power: T) -> T {
        (power * self.gain / self.noise).ln_1p() / T::LN_2()
    }

    pub fn is_near(&self) -> bool {
        self.group == Group::Near
    }
}

/// Split of the power budget between the far and near layers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerAllocation<T> {
    pub p_far: T,
    pub p_near: T,
}

impl<T: Scalar> PowerAllocation<T> {
    pub fn new(p_far: T, p_near: T, p_max: T) -> Result<Self> {
        let slack = p_max * T::lit(1e-12);
        if p_far < T::zero() || p_near < T::zero() || p_far + p_near > p_max + slack {
            return Err(contract(format!(
                "power split ({p_far}, {p_near}) violates the budget {p_max}"
            )));
        }
        Ok(Self { p_far, p_near })
    }

    /// `p_near` to the near layer and the remainder of `p_max` to the far layer.
    pub fn split(p_max: T, p_near: T) -> Self {
        let p_near = p_near.max(T::zero()).min(p_max);
        Self {
            p_far: p_max - p_near,
            p_near,
        }
    }

    /// Everything on the far layer.
    pub fn full(p_max: T) -> Self {
        Self {
            p_far: p_max,
            p_near: T::zero(),
        }
    }

    pub fn total(&self) -> T {
        self.p_far + self.p_near
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Topology<T> {
    pub receivers: Vec<Receiver<T>>,
    /// Power budget in W/Hz.
    pub p_max: T,
    /// Minimum rate guaranteed to each targeted receiver, bps/Hz.
    pub r_min: T,
    pub cell_radius_m: T,
}

impl<T: Scalar> Topology<T> {
    /// Validates and assembles a topology. Receiver ids must be `0..M` in order.
    pub fn new(receivers: Vec<Receiver<T>>, p_max: T, r_min: T, cell_radius_m: T) -> Result<Self> {
        if !(p_max > T::zero()) {
            return Err(config("p_max must be positive"));
        }
        if !(r_min >= T::zero()) {
            return Err(config("r_min must be non-negative"));
        }
        if !(cell_radius_m > T::zero()) {
            return Err(config("cell radius must be positive"));
        }
        let half = cell_radius_m / T::lit(2.0);
        for (i, r) in receivers.iter().enumerate() {
            if r.id != i {
                return Err(config(format!("receiver ids must be dense, found {} at {i}", r.id)));
            }
            if (r.distance_m < half) != r.is_near() {
                return Err(config(format!(
                    "receiver {i}: group {:?} inconsistent with distance {}",
                    r.group, r.distance_m
                )));
            }
        }
        Ok(Self {
            receivers,
            p_max,
            r_min,
            cell_radius_m,
        })
    }

    pub fn len(&self) -> usize {
        self.receivers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.receivers.is_empty()
    }

    pub fn all_ids(&self) -> Vec<usize> {
        (0..self.receivers.len()).collect()
    }

    pub fn near_ids(&self) -> Vec<usize> {
        self.receivers.iter().filter(|r| r.is_near()).map(|r| r.id).collect()
    }

    pub fn far_capacities(&self, p: &PowerAllocation<T>) -> Vec<T> {
        self.receivers.iter().map(|r| r.capacity_far(p)).collect()
    }

    pub fn near_capacities(&self, p: &PowerAllocation<T>) -> Vec<T> {
        self.receivers.iter().map(|r| r.capacity_near(p)).collect()
    }

    /// Full-power single-user capacities `log2(1 + P_max |h|^2 / sigma^2)`.
    pub fn full_power_capacities(&self) -> Vec<T> {
        self.receivers
            .iter()
            .map(|r| r.single_user_capacity(self.p_max))
            .collect()
    }
}

/// Parameters for [`generate_topology`].
#[derive(Debug, Clone, PartialEq)]
pub struct TopologyConfig<T> {
    pub num_receivers: usize,
    pub cell_radius_m: T,
    pub min_distance_m: T,
    /// Power budget in W/Hz.
    pub p_max: T,
    pub r_min: T,
    /// Noise density in W/Hz.
    pub noise: T,
}

impl<T: Scalar> Default for TopologyConfig<T> {
    fn default() -> Self {
        Self {
            num_receivers: 20,
            cell_radius_m: T::lit(CELL_RADIUS_M),
            min_distance_m: T::lit(MIN_DISTANCE_M),
            p_max: T::lit(dbm_per_hz_to_watts(P_MAX_DBM_HZ)),
            r_min: T::lit(R_MIN_BPS_HZ),
            noise: T::lit(dbm_per_hz_to_watts(NOISE_DBM_HZ)),
        }
    }
}

/// Point-in-hexagon test for a flat-topped regular hexagon of circumradius `r`
/// centred at the origin.
fn in_hexagon(x: f64, y: f64, r: f64) -> bool {
    let sqrt3 = 3f64.sqrt();
    let (x, y) = (x.abs(), y.abs());
    y <= sqrt3 / 2.0 * r && sqrt3 * x + y <= sqrt3 * r
}

/// Drops `cfg.num_receivers` receivers uniformly in a hexagonal cell around the
/// base station, each with path loss and an independent Rayleigh power fade.
///
/// Positions come from rejection sampling on the bounding disc; points inside
/// `min_distance_m` are rejected too. Deterministic for a given `seed`.
pub fn generate_topology<T: Scalar>(cfg: &TopologyConfig<T>, seed: u64) -> Result<Topology<T>> {
    let radius = cfg.cell_radius_m.as_f64();
    let d_min = cfg.min_distance_m.as_f64();
    if cfg.num_receivers == 0 {
        return Err(config("num_receivers must be at least 1"));
    }
    if !(radius > 0.0) || !radius.is_finite() {
        return Err(config("cell radius must be positive"));
    }
    // The apothem bounds the largest disc inside the hexagon.
    if !(d_min > 0.0) || d_min >= radius * 3f64.sqrt() / 2.0 {
        return Err(config("min distance must lie in (0, cell apothem)"));
    }
    if !(cfg.noise > T::zero()) {
        return Err(config("noise density must be positive"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut receivers = Vec::with_capacity(cfg.num_receivers);
    for id in 0..cfg.num_receivers {
        let (x, y) = loop {
            let rho = radius * rng.random::<f64>().sqrt();
            let theta = std::f64::consts::TAU * rng.random::<f64>();
            let (x, y) = (rho * theta.cos(), rho * theta.sin());
            if rho >= d_min && in_hexagon(x, y, radius) {
                break (x, y);
            }
        };
        let distance = x.hypot(y);
        let fade: f64 = rng.sample(Exp1);
        let gain = 10f64.powf(-path_loss_db(distance / 1000.0) / 10.0) * fade;
        // A zero exponential draw is possible in principle; clamp to keep gain > 0.
        let gain = gain.max(f64::MIN_POSITIVE);
        let group = if distance < radius / 2.0 {
            Group::Near
        } else {
            Group::Far
        };
        receivers.push(Receiver::new(id, T::lit(distance), T::lit(gain), cfg.noise, group)?);
    }
    Topology::new(receivers, cfg.p_max, cfg.r_min, cfg.cell_radius_m)
}
