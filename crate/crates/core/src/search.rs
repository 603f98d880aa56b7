//! Maximum-weight clique search over [`WeightedGraph`]s and the two-stage
//! (far layer, then near layer) IDNC scheduler built on it.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::channel::{PowerAllocation, Topology};
use crate::error::{config, contract, Error, Result};
use crate::graph::{build_graph, Clique, WeightedGraph};
use crate::idnc::{update_wants, ScheduleLayer, SideInfo};
use crate::scalar::Scalar;

/// Default vertex cap for [`exact_max_weight_clique`].
pub const ORACLE_VERTEX_CAP: usize = 64;

/// Clique search strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Heuristic {
    /// Maximum weight vertex: greedy growth scored by own weight times the
    /// weight of the surviving neighborhood.
    Mwv,
    /// Maximal weight path per start vertex, keep the heaviest path.
    MwpMwv,
    /// Exhaustive branch and bound (small graphs only).
    Exact,
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Heuristic::Mwv => "MWV",
            Heuristic::MwpMwv => "MWP-MWV",
            Heuristic::Exact => "EXACT",
        })
    }
}

impl FromStr for Heuristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "MWV" => Ok(Heuristic::Mwv),
            "MWP-MWV" | "MWP_MWV" | "MWPMWV" => Ok(Heuristic::MwpMwv),
            "EXACT" => Ok(Heuristic::Exact),
            other => Err(config(format!("unknown heuristic {other:?}"))),
        }
    }
}

/// First index holding the largest `score` among `candidates`.
fn argmax_by<T: Scalar>(candidates: impl Iterator<Item = usize>, score: impl Fn(usize) -> T) -> Option<(usize, T)> {
    let mut best: Option<(usize, T)> = None;
    for v in candidates {
        let s = score(v);
        match best {
            Some((_, b)) if !(s > b) => {}
            _ => best = Some((v, s)),
        }
    }
    best
}

/// Greedy maximum-weight-vertex search.
///
/// Each round scores every surviving vertex by `w(v) * sum of w over its
/// surviving neighbors`, takes the best one and shrinks the survivors to its
/// neighborhood. When every score is zero (no surviving edges) the heaviest
/// vertex is taken instead.
pub fn mwv_search<T: Scalar>(g: &WeightedGraph<T>) -> Clique {
    let mut survivors = g.full_set();
    let mut clique = Vec::new();
    while !survivors.is_clear() {
        let scored = argmax_by(survivors.ones(), |v| {
            g.weight(v) * g.neighbor_weight_within(v, &survivors)
        });
        let (mut pick, score) = scored.expect("survivors not empty");
        if !(score > T::zero()) {
            pick = argmax_by(survivors.ones(), |v| g.weight(v))
                .expect("survivors not empty")
                .0;
        }
        clique.push(pick);
        g.restrict_to_neighbors(&mut survivors, pick);
    }
    Clique::new(clique)
}

/// Maximal weight path from `start`: keep appending the heaviest vertex of the
/// running common neighborhood until it is empty. The result is a maximal
/// clique containing `start`.
pub fn mwp_path<T: Scalar>(g: &WeightedGraph<T>, start: usize) -> Result<Clique> {
    if start >= g.len() {
        return Err(contract(format!("start vertex {start} not in graph of {}", g.len())));
    }
    Ok(Clique::new(path_from(g, start)))
}

fn path_from<T: Scalar>(g: &WeightedGraph<T>, start: usize) -> Vec<usize> {
    let mut path = vec![start];
    let mut common = g.neighbor_set(start);
    while let Some((v, _)) = argmax_by(common.ones(), |u| g.weight(u)) {
        path.push(v);
        g.restrict_to_neighbors(&mut common, v);
    }
    path
}

/// Scores every vertex by the weight of its maximal weight path and returns the
/// path of the best-scoring vertex.
pub fn mwp_mwv_search<T: Scalar>(g: &WeightedGraph<T>) -> Clique {
    let best = argmax_by(0..g.len(), |v| g.clique_weight(&path_from(g, v)));
    match best {
        Some((v, _)) => Clique::new(path_from(g, v)),
        None => Clique::empty(),
    }
}

/// Exhaustive maximum weight clique by Bron-Kerbosch enumeration with pivoting
/// and a weight bound. Returns the first maximal clique of largest weight in
/// enumeration order; refuses graphs larger than `cap` vertices.
pub fn exact_max_weight_clique<T: Scalar>(g: &WeightedGraph<T>, cap: usize) -> Result<Clique> {
    if g.len() > cap {
        return Err(Error::OracleRefused { vertices: g.len(), cap });
    }
    if g.is_empty() {
        return Ok(Clique::empty());
    }
    let neighbors: Vec<FixedBitSet> = (0..g.len()).map(|v| g.neighbor_set(v)).collect();
    let mut search = BranchAndBound {
        g,
        neighbors: &neighbors,
        best: None,
    };
    let mut current = Vec::new();
    let empty = FixedBitSet::with_capacity(g.len());
    search.expand(&mut current, T::zero(), g.full_set(), empty);
    Ok(Clique::new(search.best.map(|(_, c)| c).unwrap_or_default()))
}

struct BranchAndBound<'a, T> {
    g: &'a WeightedGraph<T>,
    neighbors: &'a [FixedBitSet],
    best: Option<(T, Vec<usize>)>,
}

impl<T: Scalar> BranchAndBound<'_, T> {
    fn expand(&mut self, current: &mut Vec<usize>, weight: T, mut cand: FixedBitSet, mut excl: FixedBitSet) {
        if cand.is_clear() {
            if excl.is_clear() && self.best.as_ref().is_none_or(|(b, _)| weight > *b) {
                self.best = Some((weight, current.clone()));
            }
            return;
        }
        if let Some((b, _)) = &self.best {
            let bound = weight + cand.ones().map(|v| self.g.weight(v)).sum::<T>();
            if bound <= *b {
                return;
            }
        }
        let pivot = cand
            .ones()
            .chain(excl.ones())
            .max_by_key(|&u| (cand.intersection_count(&self.neighbors[u]), std::cmp::Reverse(u)))
            .expect("candidates not empty");
        let branch: Vec<usize> = cand.difference(&self.neighbors[pivot]).collect();
        for v in branch {
            let mut next_cand = cand.clone();
            next_cand.intersect_with(&self.neighbors[v]);
            let mut next_excl = excl.clone();
            next_excl.intersect_with(&self.neighbors[v]);
            current.push(v);
            self.expand(current, weight + self.g.weight(v), next_cand, next_excl);
            current.pop();
            cand.set(v, false);
            excl.insert(v);
        }
    }
}

/// Runs the chosen strategy. `oracle_cap` only applies to [`Heuristic::Exact`].
pub fn find_clique<T: Scalar>(g: &WeightedGraph<T>, heuristic: Heuristic, oracle_cap: usize) -> Result<Clique> {
    match heuristic {
        Heuristic::Mwv => Ok(mwv_search(g)),
        Heuristic::MwpMwv => Ok(mwp_mwv_search(g)),
        Heuristic::Exact => exact_max_weight_clique(g, oracle_cap),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StageOptions {
    pub heuristic: Heuristic,
    /// Near-layer targets must also decode the far layer at its rate.
    pub strict_sic: bool,
    pub oracle_cap: usize,
}

impl StageOptions {
    pub fn new(heuristic: Heuristic) -> Self {
        Self {
            heuristic,
            strict_sic: false,
            oracle_cap: ORACLE_VERTEX_CAP,
        }
    }
}

/// Far and near layers chosen at fixed powers, plus the Wants sets after the
/// far layer is decoded.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoStageSchedule<T> {
    pub far: ScheduleLayer<T>,
    pub near: ScheduleLayer<T>,
    pub updated_wants: SideInfo,
}

/// Near receivers allowed into the near layer given the far layer.
pub(crate) fn near_eligible<T: Scalar>(
    topology: &Topology<T>,
    far: &ScheduleLayer<T>,
    far_caps: &[T],
    strict_sic: bool,
) -> Vec<usize> {
    topology
        .near_ids()
        .into_iter()
        .filter(|&m| !strict_sic || far.is_absent() || far.rate <= far_caps[m])
        .collect()
}

/// Picks the far layer over all receivers with superposed-signal capacities,
/// applies it to the Wants sets, then picks the near layer over the near group
/// with post-SIC capacities.
pub fn two_stage_schedule<T: Scalar>(
    topology: &Topology<T>,
    wants: &SideInfo,
    power: &PowerAllocation<T>,
    opts: &StageOptions,
) -> Result<TwoStageSchedule<T>> {
    if wants.num_receivers() != topology.len() {
        return Err(contract("side information and topology disagree on receiver count"));
    }
    let all = topology.all_ids();
    let far_caps = topology.far_capacities(power);
    let far_graph = build_graph(wants, &far_caps, &all);
    let far_clique = find_clique(far_graph.graph(), opts.heuristic, opts.oracle_cap)?;
    let far = far_graph.clique_to_layer(&far_clique, wants, &far_caps, &all)?;

    let updated_wants = match &far.packet {
        Some(q) => update_wants(wants, q, &far.targets)?,
        None => wants.clone(),
    };

    let eligible = near_eligible(topology, &far, &far_caps, opts.strict_sic);
    let near_caps = topology.near_capacities(power);
    let near_graph = build_graph(&updated_wants, &near_caps, &eligible);
    let near_clique = find_clique(near_graph.graph(), opts.heuristic, opts.oracle_cap)?;
    let near = near_graph.clique_to_layer(&near_clique, &updated_wants, &near_caps, &eligible)?;

    Ok(TwoStageSchedule {
        far,
        near,
        updated_wants,
    })
}
