//! The alternating-optimization NOMA-IDNC scheduler and the comparison schemes.

use std::fmt;
use std::str::FromStr;

use crate::channel::{PowerAllocation, Topology};
use crate::error::{config, Error, Result};
use crate::graph::build_graph;
use crate::idnc::{targeted_receivers, update_wants, ScheduleDecision, ScheduleLayer, SideInfo};
use crate::power::{bottlenecks, bounds, feasibility, ife_optimize, IfeOptions, LayerSizes};
use crate::scalar::{count, Scalar};
use crate::search::{find_clique, near_eligible, two_stage_schedule, Heuristic, StageOptions, ORACLE_VERTEX_CAP};

/// Default relative throughput change that ends the alternation.
pub const AO_TOL: f64 = 1e-6;
pub const MAX_AO_ITER: usize = 20;
/// Default initial share of the budget on the near layer.
pub const INIT_BETA: f64 = 0.2;
/// Default exponent of the fractional transmit power allocation.
pub const FTPA_ALPHA: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scheme {
    NomaIdncMwv,
    NomaIdncMwpMwv,
    RIdncMwv,
    RIdncMwpMwv,
    IdncMwv,
    IdncMwpMwv,
    Rlnc,
    NomaRlnc,
}

impl Scheme {
    pub const ALL: [Scheme; 8] = [
        Scheme::NomaIdncMwv,
        Scheme::NomaIdncMwpMwv,
        Scheme::RIdncMwv,
        Scheme::RIdncMwpMwv,
        Scheme::IdncMwv,
        Scheme::IdncMwpMwv,
        Scheme::Rlnc,
        Scheme::NomaRlnc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::NomaIdncMwv => "NOMA-IDNC-MWV",
            Scheme::NomaIdncMwpMwv => "NOMA-IDNC-MWP-MWV",
            Scheme::RIdncMwv => "R-IDNC-MWV",
            Scheme::RIdncMwpMwv => "R-IDNC-MWP-MWV",
            Scheme::IdncMwv => "IDNC-MWV",
            Scheme::IdncMwpMwv => "IDNC-MWP-MWV",
            Scheme::Rlnc => "RLNC",
            Scheme::NomaRlnc => "NOMA-RLNC",
        }
    }

    /// Clique heuristic used by the IDNC-based schemes.
    pub fn heuristic(self) -> Option<Heuristic> {
        match self {
            Scheme::NomaIdncMwv | Scheme::RIdncMwv | Scheme::IdncMwv => Some(Heuristic::Mwv),
            Scheme::NomaIdncMwpMwv | Scheme::RIdncMwpMwv | Scheme::IdncMwpMwv => Some(Heuristic::MwpMwv),
            Scheme::Rlnc | Scheme::NomaRlnc => None,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_uppercase().replace('_', "-");
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name() == wanted)
            .ok_or_else(|| config(format!("unknown scheme {s:?}")))
    }
}

/// Tunables shared by all schemes.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeParams<T> {
    pub ao_tol: T,
    pub max_ao_iter: usize,
    pub init_beta: T,
    pub ftpa_alpha: T,
    pub strict_sic: bool,
    pub ife: IfeOptions<T>,
    pub oracle_cap: usize,
}

impl<T: Scalar> Default for SchemeParams<T> {
    fn default() -> Self {
        Self {
            ao_tol: T::lit(AO_TOL),
            max_ao_iter: MAX_AO_ITER,
            init_beta: T::lit(INIT_BETA),
            ftpa_alpha: T::lit(FTPA_ALPHA),
            strict_sic: false,
            ife: IfeOptions::default(),
            oracle_cap: ORACLE_VERTEX_CAP,
        }
    }
}

/// Rates and audiences of the two RLNC streams.
#[derive(Debug, Clone, PartialEq)]
pub struct RlncSummary<T> {
    pub power: PowerAllocation<T>,
    pub rate_far: T,
    pub rate_near: T,
    pub served_far: usize,
    pub served_near: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome<T> {
    Idnc(ScheduleDecision<T>),
    Rlnc(RlncSummary<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SchemeResult<T> {
    pub scheme: Scheme,
    pub throughput: T,
    pub ao_iterations: usize,
    pub outcome: Outcome<T>,
}

impl<T: Scalar> SchemeResult<T> {
    pub fn decision(&self) -> Option<&ScheduleDecision<T>> {
        match &self.outcome {
            Outcome::Idnc(d) => Some(d),
            Outcome::Rlnc(_) => None,
        }
    }
}

fn min_over<T: Scalar>(ids: &[usize], values: &[T]) -> Option<T> {
    ids.iter().map(|&m| values[m]).reduce(T::min)
}

/// Single full-power layer chosen jointly over packet and rate.
pub fn r_idnc_layer<T: Scalar>(
    topology: &Topology<T>,
    wants: &SideInfo,
    heuristic: Heuristic,
    oracle_cap: usize,
) -> Result<ScheduleLayer<T>> {
    let all = topology.all_ids();
    let caps = topology.full_power_capacities();
    let g = build_graph(wants, &caps, &all);
    let k = find_clique(g.graph(), heuristic, oracle_cap)?;
    g.clique_to_layer(&k, wants, &caps, &all)
}

fn single_layer_decision<T: Scalar>(topology: &Topology<T>, far: ScheduleLayer<T>) -> ScheduleDecision<T> {
    ScheduleDecision {
        far,
        near: ScheduleLayer::absent(),
        power: PowerAllocation::full(topology.p_max),
    }
}

/// Rate-aware IDNC: one layer at full power.
pub fn r_idnc<T: Scalar>(
    topology: &Topology<T>,
    wants: &SideInfo,
    heuristic: Heuristic,
    oracle_cap: usize,
) -> Result<SchemeResult<T>> {
    let layer = r_idnc_layer(topology, wants, heuristic, oracle_cap)?;
    let decision = single_layer_decision(topology, layer);
    Ok(SchemeResult {
        scheme: match heuristic {
            Heuristic::Mwv => Scheme::RIdncMwv,
            _ => Scheme::RIdncMwpMwv,
        },
        throughput: decision.throughput(),
        ao_iterations: 1,
        outcome: Outcome::Idnc(decision),
    })
}

/// Rate-blind IDNC: the largest decodable audience, sent at the rate of its
/// weakest member with full power.
pub fn idnc_plain<T: Scalar>(
    topology: &Topology<T>,
    wants: &SideInfo,
    heuristic: Heuristic,
    oracle_cap: usize,
) -> Result<SchemeResult<T>> {
    let all = topology.all_ids();
    let unit = vec![T::one(); topology.len()];
    let g = build_graph(wants, &unit, &all);
    let k = find_clique(g.graph(), heuristic, oracle_cap)?;
    let picked = g.clique_to_layer(&k, wants, &unit, &all)?;
    let full = topology.full_power_capacities();
    let layer = match (picked.packet, min_over(&picked.targets, &full)) {
        (Some(packet), Some(rate)) => ScheduleLayer {
            packet: Some(packet),
            rate,
            targets: picked.targets,
        },
        _ => ScheduleLayer::absent(),
    };
    let decision = single_layer_decision(topology, layer);
    Ok(SchemeResult {
        scheme: match heuristic {
            Heuristic::Mwv => Scheme::IdncMwv,
            _ => Scheme::IdncMwpMwv,
        },
        throughput: decision.throughput(),
        ao_iterations: 1,
        outcome: Outcome::Idnc(decision),
    })
}

/// RLNC at full power: every still-wanting receiver gains one degree of
/// freedom at the rate of the weakest receiver in the cell.
pub fn rlnc<T: Scalar>(topology: &Topology<T>, wants: &SideInfo) -> SchemeResult<T> {
    let rate = min_over(&topology.all_ids(), &topology.full_power_capacities()).unwrap_or_else(T::zero);
    let served = wants.wanting_count();
    SchemeResult {
        scheme: Scheme::Rlnc,
        throughput: count::<T>(served) * rate,
        ao_iterations: 1,
        outcome: Outcome::Rlnc(RlncSummary {
            power: PowerAllocation::full(topology.p_max),
            rate_far: rate,
            rate_near: T::zero(),
            served_far: served,
            served_near: 0,
        }),
    }
}

/// Power split by fractional transmit power allocation on the weakest SNR of
/// each audience: `w = snr_min^-alpha`, power proportional to `w`.
pub fn ftpa_split<T: Scalar>(snr_far_min: T, snr_near_min: T, p_max: T, alpha: T) -> PowerAllocation<T> {
    let w_far = snr_far_min.powf(-alpha);
    let w_near = snr_near_min.powf(-alpha);
    PowerAllocation::split(p_max, p_max * w_near / (w_far + w_near))
}

/// Two superposed RLNC streams: one for everyone, one for the near group.
/// Falls back to [`rlnc`] when the near group is empty.
pub fn noma_rlnc<T: Scalar>(topology: &Topology<T>, wants: &SideInfo, alpha: T) -> SchemeResult<T> {
    let near = topology.near_ids();
    if near.is_empty() {
        return SchemeResult {
            scheme: Scheme::NomaRlnc,
            ..rlnc(topology, wants)
        };
    }
    let all = topology.all_ids();
    let snr: Vec<T> = topology
        .receivers
        .iter()
        .map(|r| topology.p_max / r.inv_snr())
        .collect();
    let power = ftpa_split(
        min_over(&all, &snr).expect("non-empty cell"),
        min_over(&near, &snr).expect("non-empty near group"),
        topology.p_max,
        alpha,
    );
    let rate_far = min_over(&all, &topology.far_capacities(&power)).expect("non-empty cell");
    let rate_near = min_over(&near, &topology.near_capacities(&power)).expect("non-empty near group");
    let served_far = wants.wanting_count();
    let served_near = near.iter().filter(|&&m| !wants.is_satisfied(m)).count();
    SchemeResult {
        scheme: Scheme::NomaRlnc,
        throughput: count::<T>(served_far) * rate_far + count::<T>(served_near) * rate_near,
        ao_iterations: 1,
        outcome: Outcome::Rlnc(RlncSummary {
            power,
            rate_far,
            rate_near,
            served_far,
            served_near,
        }),
    }
}

/// Re-targets a layer after a power change: previous targets that can still
/// decode set the rate (their minimum capacity), then the audience is recomputed
/// from the decodability predicate at that rate.
fn revalidate_layer<T: Scalar>(
    layer: &ScheduleLayer<T>,
    capacities: &[T],
    wants: &SideInfo,
    eligible: &[usize],
) -> ScheduleLayer<T> {
    let Some(packet) = &layer.packet else {
        return ScheduleLayer::absent();
    };
    let kept: Vec<usize> = layer
        .targets
        .iter()
        .copied()
        .filter(|m| eligible.contains(m) && wants.instantly_decodes(*m, packet))
        .collect();
    let rate = match min_over(&kept, capacities) {
        Some(r) if r > T::zero() => r,
        _ => return ScheduleLayer::absent(),
    };
    let targets = targeted_receivers(packet, rate, capacities, wants, eligible);
    let rate = min_over(&targets, capacities).expect("kept receivers qualify");
    ScheduleLayer {
        packet: Some(packet.clone()),
        rate,
        targets,
    }
}

/// Applies a new power split to a two-layer schedule, re-targeting both layers.
pub fn revalidate<T: Scalar>(
    topology: &Topology<T>,
    wants: &SideInfo,
    far: &ScheduleLayer<T>,
    near: &ScheduleLayer<T>,
    power: PowerAllocation<T>,
    strict_sic: bool,
) -> Result<ScheduleDecision<T>> {
    let far_caps = topology.far_capacities(&power);
    let far = revalidate_layer(far, &far_caps, wants, &topology.all_ids());
    let updated = match &far.packet {
        Some(q) => update_wants(wants, q, &far.targets)?,
        None => wants.clone(),
    };
    let eligible = near_eligible(topology, &far, &far_caps, strict_sic);
    let near = revalidate_layer(near, &topology.near_capacities(&power), &updated, &eligible);
    Ok(ScheduleDecision { far, near, power })
}

fn power_step<T: Scalar>(
    topology: &Topology<T>,
    wants: &SideInfo,
    far: &ScheduleLayer<T>,
    near: &ScheduleLayer<T>,
    heuristic: Heuristic,
    params: &SchemeParams<T>,
) -> Result<ScheduleDecision<T>> {
    if !far.targets.is_empty() && !near.targets.is_empty() {
        let b = bottlenecks(&far.targets, &near.targets, topology)?;
        if feasibility(&b, topology.r_min, topology.p_max) {
            let bnds = bounds(&b, topology.r_min, topology.p_max);
            if bnds.is_feasible() {
                let sizes = LayerSizes {
                    far: far.targets.len(),
                    near: near.targets.len(),
                };
                let ife = IfeOptions {
                    init: None,
                    ..params.ife
                };
                let out = ife_optimize(sizes, &b, &bnds, topology.p_max, &ife)?;
                let power = PowerAllocation::split(topology.p_max, out.p_near);
                return revalidate(topology, wants, far, near, power, params.strict_sic);
            }
        }
    }
    let layer = r_idnc_layer(topology, wants, heuristic, params.oracle_cap)?;
    Ok(single_layer_decision(topology, layer))
}

/// Alternating optimization of the two-layer schedule and the power split.
///
/// Starting from `init_beta * p_max` on the near layer, each round picks both
/// layers at the current powers, then re-optimizes the split for those layers
/// (or falls back to one full-power rate-aware layer when no split meets the
/// minimum rate). The best decision seen across rounds is returned.
pub fn noma_idnc<T: Scalar>(
    topology: &Topology<T>,
    wants: &SideInfo,
    heuristic: Heuristic,
    params: &SchemeParams<T>,
) -> Result<SchemeResult<T>> {
    if !(params.init_beta > T::zero() && params.init_beta < T::one()) {
        return Err(config("init_beta must lie in (0, 1)"));
    }
    if params.max_ao_iter == 0 {
        return Err(config("max_ao_iter must be at least 1"));
    }
    let opts = StageOptions {
        heuristic,
        strict_sic: params.strict_sic,
        oracle_cap: params.oracle_cap,
    };
    let mut power = PowerAllocation::split(topology.p_max, params.init_beta * topology.p_max);
    let mut best: Option<ScheduleDecision<T>> = None;
    let mut previous: Option<T> = None;
    let mut iterations = 0;
    while iterations < params.max_ao_iter {
        iterations += 1;
        let stage = two_stage_schedule(topology, wants, &power, &opts)?;
        let decision = power_step(topology, wants, &stage.far, &stage.near, heuristic, params)?;
        let value = decision.throughput();
        power = decision.power;
        if best.as_ref().is_none_or(|b| value > b.throughput()) {
            best = Some(decision);
        }
        if previous.is_some_and(|prev| (value - prev).abs() <= params.ao_tol * prev.abs()) {
            break;
        }
        previous = Some(value);
    }
    let decision = best.expect("at least one round");
    Ok(SchemeResult {
        scheme: match heuristic {
            Heuristic::Mwv => Scheme::NomaIdncMwv,
            _ => Scheme::NomaIdncMwpMwv,
        },
        throughput: decision.throughput(),
        ao_iterations: iterations,
        outcome: Outcome::Idnc(decision),
    })
}

/// Runs `scheme` on one realization.
pub fn run_scheme<T: Scalar>(
    scheme: Scheme,
    topology: &Topology<T>,
    wants: &SideInfo,
    params: &SchemeParams<T>,
) -> Result<SchemeResult<T>> {
    match scheme {
        Scheme::NomaIdncMwv => noma_idnc(topology, wants, Heuristic::Mwv, params),
        Scheme::NomaIdncMwpMwv => noma_idnc(topology, wants, Heuristic::MwpMwv, params),
        Scheme::RIdncMwv => r_idnc(topology, wants, Heuristic::Mwv, params.oracle_cap),
        Scheme::RIdncMwpMwv => r_idnc(topology, wants, Heuristic::MwpMwv, params.oracle_cap),
        Scheme::IdncMwv => idnc_plain(topology, wants, Heuristic::Mwv, params.oracle_cap),
        Scheme::IdncMwpMwv => idnc_plain(topology, wants, Heuristic::MwpMwv, params.oracle_cap),
        Scheme::Rlnc => Ok(rlnc(topology, wants)),
        Scheme::NomaRlnc => Ok(noma_rlnc(topology, wants, params.ftpa_alpha)),
    }
}

impl serde::Serialize for Scheme {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> serde::Deserialize<'de> for Scheme {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        name.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{Group, Receiver};
    use approx::assert_relative_eq;

    /// Unit power and noise; each receiver gets full-power capacity `cap`.
    fn cell(spec: &[(f64, bool)], r_min: f64) -> Topology<f64> {
        let rx = spec
            .iter()
            .enumerate()
            .map(|(i, &(cap, near))| {
                let (d, g) = if near {
                    (100.0, Group::Near)
                } else {
                    (400.0, Group::Far)
                };
                Receiver::new(i, d, cap.exp2() - 1.0, 1.0, g).unwrap()
            })
            .collect();
        Topology::new(rx, 1.0, r_min, 500.0).unwrap()
    }

    fn wants(l: usize, sets: &[&[usize]]) -> SideInfo {
        SideInfo::new(l, sets.iter().map(|s| s.to_vec())).unwrap()
    }

    #[test]
    fn scheme_names_round_trip() {
        for s in Scheme::ALL {
            assert_eq!(s.name().parse::<Scheme>().unwrap(), s);
        }
        assert_eq!("noma_rlnc".parse::<Scheme>().unwrap(), Scheme::NomaRlnc);
        assert!("NOMA".parse::<Scheme>().is_err());
    }

    #[test]
    fn rlnc_min_rule() {
        let t = cell(&[(2.0, false), (3.0, false), (5.0, true)], 0.0);
        let w = wants(2, &[&[0], &[1], &[0, 1]]);
        let r = rlnc(&t, &w);
        assert_relative_eq!(r.throughput, 6.0, max_relative = 1e-12);
        assert_eq!(r.ao_iterations, 1);
        // Satisfied receivers still set the rate but are not counted.
        let w = wants(2, &[&[0], &[], &[1]]);
        assert_relative_eq!(rlnc(&t, &w).throughput, 4.0, max_relative = 1e-12);
    }

    #[test]
    fn idnc_plain_rate_follows_weakest_target() {
        let t = cell(&[(1.0, false), (10.0, true)], 0.0);
        let w = wants(1, &[&[0], &[0]]);
        for h in [Heuristic::Mwv, Heuristic::MwpMwv] {
            let r = idnc_plain(&t, &w, h, ORACLE_VERTEX_CAP).unwrap();
            assert_relative_eq!(r.throughput, 2.0, max_relative = 1e-12);
        }
        let single = cell(&[(3.5, false)], 0.0);
        let r = idnc_plain(&single, &wants(2, &[&[1]]), Heuristic::Mwv, 0).unwrap();
        assert_relative_eq!(r.throughput, 3.5, max_relative = 1e-12);
    }

    #[test]
    fn r_idnc_picks_rate_jointly() {
        let t = cell(&[(1.0, false), (10.0, true)], 0.0);
        let w = wants(1, &[&[0], &[0]]);
        let r = r_idnc(&t, &w, Heuristic::Exact, ORACLE_VERTEX_CAP).unwrap();
        assert_relative_eq!(r.throughput, 10.0, max_relative = 1e-12);
        let one = cell(&[(2.5, false)], 0.0);
        let r = r_idnc(&one, &wants(1, &[&[0]]), Heuristic::Mwv, 0).unwrap();
        assert_relative_eq!(r.throughput, 2.5, max_relative = 1e-12);
    }

    #[test]
    fn ftpa_weights() {
        let p = ftpa_split(0.5, 20.0, 2.0, 0.0);
        assert_relative_eq!(p.p_near, 1.0);
        assert_relative_eq!(p.p_far, 1.0);
        let p = ftpa_split(1.0, 16.0, 1.0, 0.5);
        assert_relative_eq!(p.p_near, 0.25 / 1.25, max_relative = 1e-12);
        assert!(p.p_far > p.p_near);
    }

    #[test]
    fn noma_rlnc_streams() {
        let t = cell(&[(2.0, false), (6.0, true)], 0.0);
        let w = wants(2, &[&[0, 1], &[1]]);
        let r = noma_rlnc(&t, &w, 0.4);
        let Outcome::Rlnc(s) = &r.outcome else {
            panic!("expected a summary")
        };
        assert_eq!((s.served_far, s.served_near), (2, 1));
        assert_relative_eq!(s.power.total(), 1.0, max_relative = 1e-12);
        // Rate splitting on the near receiver: both streams add to its capacity.
        let near = &t.receivers[1];
        assert_relative_eq!(
            near.capacity_far(&s.power) + near.capacity_near(&s.power),
            6.0,
            max_relative = 1e-12
        );
        assert_relative_eq!(r.throughput, 2.0 * s.rate_far + s.rate_near, max_relative = 1e-12);
        assert!(r.throughput >= rlnc(&t, &w).throughput);

        let far_only = cell(&[(2.0, false), (3.0, false)], 0.0);
        let r = noma_rlnc(&far_only, &w, 0.4);
        assert_eq!(r.scheme, Scheme::NomaRlnc);
        assert_eq!(r.throughput, rlnc(&far_only, &w).throughput);
    }

    #[test]
    fn noma_idnc_without_near_group_is_r_idnc() {
        let t = cell(&[(1.0, false), (2.0, false), (3.0, false)], 0.1);
        let w = wants(3, &[&[0, 1], &[1], &[2, 0]]);
        let params = SchemeParams::default();
        for h in [Heuristic::Mwv, Heuristic::MwpMwv] {
            let n = noma_idnc(&t, &w, h, &params).unwrap();
            let r = r_idnc(&t, &w, h, params.oracle_cap).unwrap();
            assert_eq!(n.throughput, r.throughput);
            assert!(n.ao_iterations >= 1);
        }
    }

    #[test]
    fn satisfied_cell_yields_zero() {
        let t = cell(&[(1.0, false), (4.0, true)], 0.1);
        let w = wants(3, &[&[], &[]]);
        for s in Scheme::ALL {
            let r = run_scheme(s, &t, &w, &SchemeParams::default()).unwrap();
            assert_eq!(r.throughput, 0.0, "{s}");
        }
    }

    #[test]
    fn noma_idnc_serves_both_layers() {
        // Five far receivers want packet 0; the near one wants both packets.
        let mut spec = vec![(2.0, false); 5];
        spec.push((8.0, true));
        let t = cell(&spec, 0.1);
        let w = wants(2, &[&[0], &[0], &[0], &[0], &[0], &[0, 1]]);
        let n = noma_idnc(&t, &w, Heuristic::Mwv, &SchemeParams::default()).unwrap();
        let d = n.decision().unwrap();
        assert_eq!(d.far.targets, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(d.near.targets, vec![5]);
        // Interior optimum of the split: p = (N b_f - F b_n) / (F - N).
        let p = (1.0 / 3.0 - 6.0 / 255.0) / 5.0;
        assert_relative_eq!(d.power.p_near, p, max_relative = 1e-6);
        assert!(n.throughput > r_idnc(&t, &w, Heuristic::Mwv, 0).unwrap().throughput);
        assert_relative_eq!(d.power.total(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn rejects_bad_params() {
        let t = cell(&[(1.0, false)], 0.0);
        let w = wants(1, &[&[0]]);
        let bad = SchemeParams {
            init_beta: 1.0,
            ..SchemeParams::default()
        };
        assert!(noma_idnc(&t, &w, Heuristic::Mwv, &bad).is_err());
        let bad = SchemeParams {
            max_ao_iter: 0,
            ..SchemeParams::default()
        };
        assert!(noma_idnc(&t, &w, Heuristic::Mwv, &bad).is_err());
    }
}
