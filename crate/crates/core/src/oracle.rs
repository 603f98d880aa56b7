//! Exhaustive reference solvers and the self-check suites built on them.
//!
//! The solvers here enumerate the raw problem (packet subsets, candidate rates,
//! vertex subsets) and never call into the graph or search code they check.

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::{generate_topology, PowerAllocation, Topology, TopologyConfig};
use crate::error::{contract, Result};
use crate::graph::{build_graph, WeightedGraph};
use crate::harness::{check_result, derive_seed, generate_wants};
use crate::idnc::{ScheduleLayer, SideInfo};
use crate::power::{bottlenecks, bounds, feasibility, grid_oracle, ife_optimize, phi, IfeOptions, LayerSizes};
use crate::scalar::{count, Scalar};
use crate::scheme::{run_scheme, Scheme, SchemeParams};
use crate::search::{find_clique, two_stage_schedule, Heuristic, StageOptions};

/// Largest packet count [`best_layer`] will enumerate.
pub const MAX_ORACLE_PACKETS: usize = 16;
/// Largest vertex count [`best_clique_weight`] will enumerate.
pub const MAX_ORACLE_VERTICES: usize = 22;

/// Receivers in `eligible` that decode `packet` at `rate`, computed directly.
pub fn decoders<T: Scalar>(wants: &SideInfo, packet: &[usize], rate: T, caps: &[T], eligible: &[usize]) -> Vec<usize> {
    eligible
        .iter()
        .copied()
        .filter(|&m| rate <= caps[m] && packet.iter().filter(|&&l| wants.wants(m, l)).count() == 1)
        .collect()
}

/// Best single layer found by trying every packet combination at every
/// positive receiver capacity.
#[derive(Debug, Clone, PartialEq)]
pub struct LayerOptimum<T> {
    pub value: T,
    pub packet: Vec<usize>,
    pub rate: T,
    pub targets: Vec<usize>,
}

pub fn best_layer<T: Scalar>(wants: &SideInfo, caps: &[T], eligible: &[usize]) -> Result<LayerOptimum<T>> {
    let l = wants.num_packets();
    if l > MAX_ORACLE_PACKETS {
        return Err(contract(format!("{l} packets is too many to enumerate")));
    }
    let mut best = LayerOptimum {
        value: T::zero(),
        packet: vec![],
        rate: T::zero(),
        targets: vec![],
    };
    let rates: Vec<T> = eligible.iter().map(|&m| caps[m]).filter(|&c| c > T::zero()).collect();
    for mask in 1u32..(1 << l) {
        let packet: Vec<usize> = (0..l).filter(|&i| mask >> i & 1 == 1).collect();
        for &rate in &rates {
            let targets = decoders(wants, &packet, rate, caps, eligible);
            let value = count::<T>(targets.len()) * rate;
            if value > best.value {
                best = LayerOptimum {
                    value,
                    packet: packet.clone(),
                    rate,
                    targets,
                };
            }
        }
    }
    Ok(best)
}

/// Maximum clique weight by enumerating every vertex subset.
pub fn best_clique_weight<T: Scalar>(g: &WeightedGraph<T>) -> Result<T> {
    let n = g.len();
    if n > MAX_ORACLE_VERTICES {
        return Err(contract(format!("{n} vertices is too many to enumerate")));
    }
    // clique[mask] holds whether the subset is a clique; built from the
    // subset without its highest vertex.
    let mut clique = FixedBitSet::with_capacity(1 << n);
    let mut weight = vec![T::zero(); 1 << n];
    clique.insert(0);
    let mut best = T::zero();
    for mask in 1usize..(1 << n) {
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << top);
        if !clique.contains(rest) || (0..top).any(|v| rest >> v & 1 == 1 && !g.is_adjacent(v, top)) {
            continue;
        }
        clique.insert(mask);
        weight[mask] = weight[rest] + g.weight(top);
        if weight[mask] > best {
            best = weight[mask];
        }
    }
    Ok(best)
}

/// Physical parameters plus sizes for random small instances.
#[derive(Debug, Clone)]
pub struct InstanceSpec {
    pub topology: TopologyConfig<f64>,
    pub max_receivers: usize,
    pub max_packets: usize,
}

/// A random topology and side information with at most the given sizes.
pub fn random_instance(spec: &InstanceSpec, seed: u64) -> Result<(Topology<f64>, SideInfo)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.random_range(1..=spec.max_receivers);
    let l = rng.random_range(1..=spec.max_packets);
    let mu = rng.random_range(0.0..0.8);
    let cfg = TopologyConfig {
        num_receivers: m,
        ..spec.topology.clone()
    };
    let topology = generate_topology(&cfg, derive_seed(seed, 0))?;
    let wants = generate_wants(m, l, mu, derive_seed(seed, 1))?;
    Ok((topology, wants))
}

/// A random power split with the near share drawn from `[0.02, 0.5]`.
pub fn random_split(topology: &Topology<f64>, seed: u64) -> PowerAllocation<f64> {
    let beta = ChaCha8Rng::seed_from_u64(seed).random_range(0.02..=0.5);
    PowerAllocation::split(topology.p_max, beta * topology.p_max)
}

fn layer_value(layer: &ScheduleLayer<f64>) -> f64 {
    layer.throughput()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1e-12)
}

/// Outcome of one self-check suite.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            failures: vec![],
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exact clique search against subset enumeration; heuristics must return
/// maximal cliques no heavier than the optimum.
pub fn check_cliques(spec: &InstanceSpec, instances: usize, seed: u64) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("clique");
    for i in 0..instances {
        let s = derive_seed(seed, i as u64);
        let (topology, wants) = random_instance(spec, s)?;
        let power = random_split(&topology, derive_seed(s, 2));
        let g = build_graph(&wants, &topology.far_capacities(&power), &topology.all_ids());
        if g.len() > MAX_ORACLE_VERTICES {
            continue;
        }
        report.checked += 1;
        let best = best_clique_weight(g.graph())?;
        let exact = find_clique(g.graph(), Heuristic::Exact, MAX_ORACLE_VERTICES)?;
        if !close(exact.weight(g.graph()), best) {
            report.failures.push(format!(
                "instance {i}: exact {} vs enumeration {best}",
                exact.weight(g.graph())
            ));
        }
        for h in [Heuristic::Mwv, Heuristic::MwpMwv] {
            let k = find_clique(g.graph(), h, 0)?;
            if !g.is_maximal_clique(k.vertices())? || k.weight(g.graph()) > best * (1.0 + 1e-12) {
                report
                    .failures
                    .push(format!("instance {i}: {h} returned an invalid or overweight clique"));
            }
        }
    }
    Ok(report)
}

/// Exact two-stage search against packet/rate enumeration at each stage.
pub fn check_two_stage(spec: &InstanceSpec, instances: usize, seed: u64, strict_sic: bool) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("two-stage");
    let opts = StageOptions {
        heuristic: Heuristic::Exact,
        strict_sic,
        oracle_cap: usize::MAX,
    };
    for i in 0..instances {
        let s = derive_seed(seed, i as u64);
        let (topology, wants) = random_instance(spec, s)?;
        let power = random_split(&topology, derive_seed(s, 2));
        let stage = two_stage_schedule(&topology, &wants, &power, &opts)?;
        report.checked += 1;

        let far_caps = topology.far_capacities(&power);
        let far = best_layer(&wants, &far_caps, &topology.all_ids())?;
        if !close(layer_value(&stage.far), far.value) {
            report.failures.push(format!(
                "instance {i}: far {} vs enumeration {}",
                layer_value(&stage.far),
                far.value
            ));
            continue;
        }
        let mut updated = wants.clone();
        if let Some(q) = &stage.far.packet {
            let packet: Vec<usize> = q.members().collect();
            let expected = decoders(&wants, &packet, stage.far.rate, &far_caps, &topology.all_ids());
            if expected != stage.far.targets {
                report.failures.push(format!(
                    "instance {i}: far targets {:?} vs {expected:?}",
                    stage.far.targets
                ));
                continue;
            }
            updated = apply(&wants, &packet, &expected)?;
        }
        let eligible: Vec<usize> = topology
            .near_ids()
            .into_iter()
            .filter(|&m| !strict_sic || stage.far.packet.is_none() || stage.far.rate <= far_caps[m])
            .collect();
        let near = best_layer(&updated, &topology.near_capacities(&power), &eligible)?;
        if !close(layer_value(&stage.near), near.value) {
            report.failures.push(format!(
                "instance {i}: near {} vs enumeration {}",
                layer_value(&stage.near),
                near.value
            ));
        }
    }
    Ok(report)
}

/// Wants after each target drops its one wanted packet of `packet`.
fn apply(wants: &SideInfo, packet: &[usize], targets: &[usize]) -> Result<SideInfo> {
    let sets: Vec<Vec<usize>> = (0..wants.num_receivers())
        .map(|m| {
            wants
                .wanted_packets(m)
                .filter(|l| !(targets.contains(&m) && packet.contains(l)))
                .collect()
        })
        .collect();
    SideInfo::new(wants.num_packets(), sets)
}

/// Fixed-point power control against a dense grid of the objective.
pub fn check_power(spec: &InstanceSpec, instances: usize, seed: u64, grid_steps: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("power");
    let r_min = spec.topology.r_min;
    let p_max = spec.topology.p_max;
    for i in 0..instances {
        let s = derive_seed(seed, i as u64);
        let (topology, _) = random_instance(
            &InstanceSpec {
                max_receivers: spec.max_receivers.max(2),
                ..spec.clone()
            },
            s,
        )?;
        let near = topology.near_ids();
        if near.is_empty() {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(s, 3));
        let far: Vec<usize> = topology
            .all_ids()
            .into_iter()
            .filter(|_| rng.random_bool(0.6))
            .collect();
        let near: Vec<usize> = near.into_iter().filter(|_| rng.random_bool(0.7)).collect();
        if far.is_empty() || near.is_empty() {
            continue;
        }
        let b = bottlenecks(&far, &near, &topology)?;
        if !feasibility(&b, r_min, p_max) {
            continue;
        }
        let bnds = bounds(&b, r_min, p_max);
        if !bnds.is_feasible() {
            continue;
        }
        report.checked += 1;
        let sizes = LayerSizes {
            far: rng.random_range(1..=20),
            near: rng.random_range(1..=20),
        };
        let out = ife_optimize(sizes, &b, &bnds, p_max, &IfeOptions::default())?;
        let grid = grid_oracle(sizes, &b, &bnds, p_max, grid_steps)?;
        let (got, want) = (phi(out.p_near, sizes, &b, p_max), phi(grid, sizes, &b, p_max));
        if got < want * (1.0 - 1e-6) {
            report
                .failures
                .push(format!("instance {i}: fixed point {got} below grid {want}"));
        }
    }
    Ok(report)
}

/// Every scheme on random instances must yield results passing the
/// structural checks.
pub fn check_schemes(
    spec: &InstanceSpec,
    instances: usize,
    seed: u64,
    params: &SchemeParams<f64>,
) -> Result<SuiteReport> {
    let mut report = SuiteReport::new("schemes");
    for i in 0..instances {
        let s = derive_seed(seed, i as u64);
        let (topology, wants) = random_instance(spec, s)?;
        report.checked += 1;
        for scheme in Scheme::ALL {
            let result = run_scheme(scheme, &topology, &wants, params)?;
            if let Err(e) = check_result(&topology, &wants, &result) {
                report.failures.push(format!("instance {i}: {e}"));
            }
        }
    }
    Ok(report)
}
