//! Rate-annotated IDNC graphs.
//!
//! A vertex `(m, l, r)` says "receiver `m` could recover packet `l` if it were
//! sent at rate `r`". Two vertices are adjacent when they share the rate and a
//! single XOR packet can serve both receivers at once. Cliques are therefore
//! feasible (packet, rate) choices and a clique's weight is the throughput it
//! delivers.

use std::io::Write;

use fixedbitset::FixedBitSet;

use crate::error::{contract, Result};
use crate::idnc::{targeted_receivers, IdncPacket, ScheduleLayer, SideInfo};
use crate::scalar::{approx_eq, Scalar};

/// Graphs up to this many vertices use a bit-matrix; larger ones use lists.
pub const DENSE_ADJACENCY_LIMIT: usize = 20_000;

/// Relative tolerance under which two candidate rates are merged.
pub const RATE_MERGE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
enum Adjacency {
    Dense(Vec<FixedBitSet>),
    Sparse(Vec<Vec<usize>>),
}

impl Adjacency {
    fn with_vertices(n: usize) -> Self {
        if n <= DENSE_ADJACENCY_LIMIT {
            Adjacency::Dense(vec![FixedBitSet::with_capacity(n); n])
        } else {
            Adjacency::Sparse(vec![Vec::new(); n])
        }
    }

    fn add_edge(&mut self, i: usize, j: usize) {
        match self {
            Adjacency::Dense(rows) => {
                rows[i].insert(j);
                rows[j].insert(i);
            }
            Adjacency::Sparse(lists) => {
                lists[i].push(j);
                lists[j].push(i);
            }
        }
    }

    fn finish(&mut self) {
        if let Adjacency::Sparse(lists) = self {
            for l in lists.iter_mut() {
                l.sort_unstable();
                l.dedup();
            }
        }
    }
}

/// Undirected vertex-weighted graph; the substrate for every clique search.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<T> {
    weights: Vec<T>,
    adjacency: Adjacency,
}

impl<T: Scalar> WeightedGraph<T> {
    /// Builds a graph from vertex weights and an undirected edge list.
    pub fn new(weights: Vec<T>, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = weights.len();
        let mut adjacency = Adjacency::with_vertices(n);
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(contract(format!("edge ({i}, {j}) references a missing vertex")));
            }
            if i == j {
                return Err(contract(format!("self-edge on vertex {i}")));
            }
            adjacency.add_edge(i, j);
        }
        adjacency.finish();
        Ok(Self { weights, adjacency })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weight(&self, v: usize) -> T {
        self.weights[v]
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        match &self.adjacency {
            Adjacency::Dense(rows) => rows[i].contains(j),
            Adjacency::Sparse(lists) => lists[i].binary_search(&j).is_ok(),
        }
    }

    /// Neighbors of `v` in increasing index order.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        match &self.adjacency {
            Adjacency::Dense(rows) => rows[v].ones().collect(),
            Adjacency::Sparse(lists) => lists[v].clone(),
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        match &self.adjacency {
            Adjacency::Dense(rows) => rows[v].count_ones(..),
            Adjacency::Sparse(lists) => lists[v].len(),
        }
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |i| {
            self.neighbors(i)
                .into_iter()
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    /// A bitset over all vertices with every bit set.
    pub fn full_set(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }

    pub fn neighbor_set(&self, v: usize) -> FixedBitSet {
        match &self.adjacency {
            Adjacency::Dense(rows) => rows[v].clone(),
            Adjacency::Sparse(lists) => {
                let mut s = FixedBitSet::with_capacity(self.len());
                s.extend(lists[v].iter().copied());
                s
            }
        }
    }

    /// `set <- set ∩ C(v)`.
    pub fn restrict_to_neighbors(&self, set: &mut FixedBitSet, v: usize) {
        match &self.adjacency {
            Adjacency::Dense(rows) => set.intersect_with(&rows[v]),
            Adjacency::Sparse(_) => set.intersect_with(&self.neighbor_set(v)),
        }
    }

    /// Total weight of the neighbors of `v` that lie in `within`.
    pub fn neighbor_weight_within(&self, v: usize, within: &FixedBitSet) -> T {
        match &self.adjacency {
            Adjacency::Dense(rows) => rows[v].intersection(within).map(|u| self.weights[u]).sum(),
            Adjacency::Sparse(lists) => lists[v]
                .iter()
                .filter(|&&u| within.contains(u))
                .map(|&u| self.weights[u])
                .sum(),
        }
    }

    fn check_indices(&self, s: &[usize]) -> Result<()> {
        match s.iter().find(|&&v| v >= self.len()) {
            Some(v) => Err(contract(format!("vertex {v} not in graph of {}", self.len()))),
            None => Ok(()),
        }
    }

    /// True iff the vertices of `s` are pairwise adjacent.
    pub fn is_clique(&self, s: &[usize]) -> Result<bool> {
        self.check_indices(s)?;
        Ok(s.iter()
            .enumerate()
            .all(|(a, &i)| s[a + 1..].iter().all(|&j| i != j && self.is_adjacent(i, j))))
    }

    /// True iff `s` is a clique that no outside vertex extends.
    pub fn is_maximal_clique(&self, s: &[usize]) -> Result<bool> {
        if !self.is_clique(s)? {
            return Ok(false);
        }
        let mut common = self.full_set();
        for &v in s {
            self.restrict_to_neighbors(&mut common, v);
        }
        Ok(common.is_clear())
    }

    pub fn clique_weight(&self, s: &[usize]) -> T {
        s.iter().map(|&v| self.weights[v]).sum()
    }
}

/// A set of vertex indices, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Clique(Vec<usize>);

impl Clique {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self(vertices)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight<T: Scalar>(&self, g: &WeightedGraph<T>) -> T {
        g.clique_weight(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vertex<T> {
    pub receiver: usize,
    pub packet: usize,
    /// Index into the graph's rate set.
    pub rate_index: usize,
    pub rate: T,
}

impl<T: Scalar> Vertex<T> {
    /// The vertex weight is its rate.
    pub fn weight(&self) -> T {
        self.rate
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdncGraph<T> {
    vertices: Vec<Vertex<T>>,
    rate_set: Vec<T>,
    graph: WeightedGraph<T>,
}

/// Distinct positive capacities of the eligible receivers, ascending. Values
/// within [`RATE_MERGE_TOLERANCE`] of each other collapse onto the smallest.
pub fn candidate_rates<T: Scalar>(capacities: &[T], eligible: &[usize]) -> Vec<T> {
    let mut rates: Vec<T> = eligible
        .iter()
        .map(|&m| capacities[m])
        .filter(|c| c.is_finite() && *c > T::zero())
        .collect();
    rates.sort_by(|a, b| a.partial_cmp(b).expect("finite rates"));
    let tol = T::lit(RATE_MERGE_TOLERANCE);
    let mut out: Vec<T> = Vec::with_capacity(rates.len());
    for r in rates {
        match out.last() {
            Some(&last) if (r - last) <= tol * last.abs() => {}
            _ => out.push(r),
        }
    }
    out
}

/// Network-coding compatibility of `(m, l)` and `(m2, l2)`: distinct receivers
/// that either want the same packet or each hold the other's wanted packet.
pub fn coding_compatible(wants: &SideInfo, m: usize, l: usize, m2: usize, l2: usize) -> bool {
    m != m2 && (l == l2 || (wants.has(m, l2) && wants.has(m2, l)))
}

/// Builds the IDNC graph over the `eligible` receivers.
///
/// One vertex per (receiver, wanted packet, candidate rate not above the
/// receiver's capacity), ordered by (rate index, receiver, packet). Edges join
/// vertices of equal rate that are [`coding_compatible`].
pub fn build_graph<T: Scalar>(wants: &SideInfo, capacities: &[T], eligible: &[usize]) -> IdncGraph<T> {
    let rate_set = candidate_rates(capacities, eligible);
    let mut receivers: Vec<usize> = eligible.to_vec();
    receivers.sort_unstable();
    receivers.dedup();

    let mut vertices = Vec::new();
    let mut blocks = Vec::with_capacity(rate_set.len());
    for (k, &rate) in rate_set.iter().enumerate() {
        let start = vertices.len();
        for &m in &receivers {
            if rate <= capacities[m] {
                for l in wants.wanted_packets(m) {
                    vertices.push(Vertex {
                        receiver: m,
                        packet: l,
                        rate_index: k,
                        rate,
                    });
                }
            }
        }
        blocks.push(start..vertices.len());
    }

    let mut adjacency = Adjacency::with_vertices(vertices.len());
    for block in blocks {
        for i in block.clone() {
            let a = vertices[i];
            for (j, b) in vertices.iter().enumerate().take(block.end).skip(i + 1) {
                if coding_compatible(wants, a.receiver, a.packet, b.receiver, b.packet) {
                    adjacency.add_edge(i, j);
                }
            }
        }
    }
    adjacency.finish();

    let weights = vertices.iter().map(Vertex::weight).collect();
    IdncGraph {
        vertices,
        rate_set,
        graph: WeightedGraph { weights, adjacency },
    }
}

impl<T: Scalar> IdncGraph<T> {
    pub fn vertices(&self) -> &[Vertex<T>] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Vertex<T> {
        &self.vertices[v]
    }

    pub fn rate_set(&self) -> &[T] {
        &self.rate_set
    }

    pub fn graph(&self) -> &WeightedGraph<T> {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_clique(&self, s: &[usize]) -> Result<bool> {
        self.graph.is_clique(s)
    }

    pub fn is_maximal_clique(&self, s: &[usize]) -> Result<bool> {
        self.graph.is_maximal_clique(s)
    }

    /// Pairwise adjacent, single rate and pairwise distinct receivers.
    pub fn is_valid_clique(&self, k: &Clique) -> Result<bool> {
        if !self.graph.is_clique(k.vertices())? {
            return Ok(false);
        }
        let vs = k.vertices();
        let single_rate = vs
            .windows(2)
            .all(|w| self.vertices[w[0]].rate_index == self.vertices[w[1]].rate_index);
        let mut receivers: Vec<usize> = vs.iter().map(|&v| self.vertices[v].receiver).collect();
        receivers.sort_unstable();
        let distinct = receivers.windows(2).all(|w| w[0] != w[1]);
        Ok(single_rate && distinct)
    }

    /// Turns a clique into a layer: XOR of its packets at its common rate,
    /// targets recomputed from the decodability predicate.
    pub fn clique_to_layer(
        &self,
        k: &Clique,
        wants: &SideInfo,
        capacities: &[T],
        eligible: &[usize],
    ) -> Result<ScheduleLayer<T>> {
        let Some(&first) = k.vertices().first() else {
            return Ok(ScheduleLayer::absent());
        };
        if let Some(&bad) = k.vertices().iter().find(|&&v| v >= self.len()) {
            return Err(contract(format!("clique vertex {bad} not in graph")));
        }
        let rate = self.vertices[first].rate;
        if k.vertices()
            .iter()
            .any(|&v| !approx_eq(self.vertices[v].rate, rate, T::epsilon()))
        {
            return Err(contract("clique mixes transmission rates"));
        }
        let packet = IdncPacket::new(
            wants.num_packets(),
            k.vertices().iter().map(|&v| self.vertices[v].packet),
        )?;
        let targets = targeted_receivers(&packet, rate, capacities, wants, eligible);
        Ok(ScheduleLayer {
            packet: Some(packet),
            rate,
            targets,
        })
    }

    /// Plain-text dump: one `m l rate` line per vertex in index order, then one
    /// `i j` line per edge with `i < j`.
    pub fn write_dump<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        for v in &self.vertices {
            writeln!(w, "{} {} {}", v.receiver, v.packet, v.rate)?;
        }
        for (i, j) in self.graph.edges() {
            writeln!(w, "{i} {j}")?;
        }
        Ok(())
    }
}
