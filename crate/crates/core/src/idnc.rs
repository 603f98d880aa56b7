//! Receiver side information, instant-decodability predicates and schedule
//! throughput.

use fixedbitset::FixedBitSet;

use crate::channel::PowerAllocation;
use crate::error::{config, contract, Result};
use crate::scalar::{count, Scalar};

/// Per-receiver Wants sets over a block of `num_packets` source packets.
/// The Has set of a receiver is the complement of its Wants set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SideInfo {
    wants: Vec<FixedBitSet>,
    num_packets: usize,
}

impl SideInfo {
    /// Builds side information from explicit per-receiver Wants lists.
    pub fn new<I, J>(num_packets: usize, wants: I) -> Result<Self>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = usize>,
    {
        let wants = wants
            .into_iter()
            .enumerate()
            .map(|(m, packets)| {
                let mut set = FixedBitSet::with_capacity(num_packets);
                for l in packets {
                    if l >= num_packets {
                        return Err(config(format!(
                            "receiver {m} wants packet {l} outside block of {num_packets}"
                        )));
                    }
                    set.insert(l);
                }
                Ok(set)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { wants, num_packets })
    }

    /// Every receiver wants every packet.
    pub fn all_wanting(num_receivers: usize, num_packets: usize) -> Self {
        let mut full = FixedBitSet::with_capacity(num_packets);
        full.insert_range(..);
        Self {
            wants: vec![full; num_receivers],
            num_packets,
        }
    }

    pub fn num_receivers(&self) -> usize {
        self.wants.len()
    }

    pub fn num_packets(&self) -> usize {
        self.num_packets
    }

    pub fn wants_set(&self, m: usize) -> &FixedBitSet {
        &self.wants[m]
    }

    pub fn wants(&self, m: usize, l: usize) -> bool {
        self.wants[m].contains(l)
    }

    pub fn has(&self, m: usize, l: usize) -> bool {
        l < self.num_packets && !self.wants[m].contains(l)
    }

    pub fn wanted_packets(&self, m: usize) -> impl Iterator<Item = usize> + '_ {
        self.wants[m].ones()
    }

    pub fn is_satisfied(&self, m: usize) -> bool {
        self.wants[m].is_clear()
    }

    /// Number of receivers that still want at least one packet.
    pub fn wanting_count(&self) -> usize {
        self.wants.iter().filter(|w| !w.is_clear()).count()
    }

    /// Number of packets of `q` that receiver `m` still wants.
    pub fn wanted_in(&self, m: usize, q: &IdncPacket) -> usize {
        self.wants[m].intersection_count(&q.members)
    }

    /// Receiver `m` can XOR `q` with its Has set to recover exactly one new packet.
    pub fn instantly_decodes(&self, m: usize, q: &IdncPacket) -> bool {
        self.wanted_in(m, q) == 1
    }
}

/// An XOR combination of source packets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IdncPacket {
    members: FixedBitSet,
}

impl IdncPacket {
    pub fn new(num_packets: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = FixedBitSet::with_capacity(num_packets);
        for l in members {
            if l >= num_packets {
                return Err(contract(format!("packet {l} outside block of {num_packets}")));
            }
            set.insert(l);
        }
        if set.is_clear() {
            return Err(contract("an IDNC packet needs at least one member"));
        }
        Ok(Self { members: set })
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn contains(&self, l: usize) -> bool {
        self.members.contains(l)
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }
}

/// One NOMA layer of a transmission: the coded packet, its rate and who decodes it.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleLayer<T> {
    pub packet: Option<IdncPacket>,
    pub rate: T,
    /// Sorted receiver ids.
    pub targets: Vec<usize>,
}

impl<T: Scalar> ScheduleLayer<T> {
    pub fn absent() -> Self {
        Self {
            packet: None,
            rate: T::zero(),
            targets: Vec::new(),
        }
    }

    pub fn is_absent(&self) -> bool {
        self.packet.is_none()
    }

    pub fn throughput(&self) -> T {
        count::<T>(self.targets.len()) * self.rate
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleDecision<T> {
    pub far: ScheduleLayer<T>,
    pub near: ScheduleLayer<T>,
    pub power: PowerAllocation<T>,
}

impl<T: Scalar> ScheduleDecision<T> {
    /// `|targets_far| * rate_far + |targets_near| * rate_near`.
    pub fn throughput(&self) -> T {
        self.far.throughput() + self.near.throughput()
    }
}

/// Receivers in `eligible` that can both receive `q` at `rate` and instantly
/// decode it: `rate <= capacities[m]` and exactly one member of `q` is wanted.
pub fn targeted_receivers<T: Scalar>(
    q: &IdncPacket,
    rate: T,
    capacities: &[T],
    wants: &SideInfo,
    eligible: &[usize],
) -> Vec<usize> {
    let mut out: Vec<usize> = eligible
        .iter()
        .copied()
        .filter(|&m| rate <= capacities[m] && wants.instantly_decodes(m, q))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Removes the decoded packet from the Wants set of every receiver in `targets`.
pub fn update_wants(wants: &SideInfo, q: &IdncPacket, targets: &[usize]) -> Result<SideInfo> {
    let mut next = wants.clone();
    for &m in targets {
        if m >= wants.num_receivers() {
            return Err(contract(format!("target {m} is not a receiver")));
        }
        if !wants.instantly_decodes(m, q) {
            return Err(contract(format!("receiver {m} cannot instantly decode the packet")));
        }
        next.wants[m].difference_with(&q.members);
    }
    Ok(next)
}

/// Throughput gain of the two-layer construction over rate-aware single-layer
/// IDNC when the far layer reuses the single-layer packet:
/// `|tau_near| * min_near_cap - |tau_ridnc| * min_ridnc_cap_at_pnear`.
pub fn theorem1_gain<T: Scalar>(
    tau_near_size: usize,
    min_near_cap: T,
    tau_ridnc_size: usize,
    min_ridnc_cap_at_pnear: T,
) -> T {
    count::<T>(tau_near_size) * min_near_cap - count::<T>(tau_ridnc_size) * min_ridnc_cap_at_pnear
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layer(n: usize, rate: f64) -> ScheduleLayer<f64> {
        ScheduleLayer {
            packet: Some(IdncPacket::new(8, [0]).unwrap()),
            rate,
            targets: (0..n).collect(),
        }
    }

    #[test]
    fn targets_follow_both_conditions() {
        // U1 wants {1,3}, U2 wants {2}, U3 wants {1,2}
        let wants = SideInfo::new(4, vec![vec![1, 3], vec![2], vec![1, 2]]).unwrap();
        let q = IdncPacket::new(4, [1, 2]).unwrap();
        let caps = [5.0, 5.0, 5.0];
        assert_eq!(targeted_receivers(&q, 4.0, &caps, &wants, &[0, 1, 2]), vec![0, 1]);
        assert!(targeted_receivers(&q, 5.5, &caps, &wants, &[0, 1, 2]).is_empty());
        let single = IdncPacket::new(4, [1]).unwrap();
        assert_eq!(targeted_receivers(&single, 0.0, &caps, &wants, &[0, 1, 2]), vec![0, 2]);
        assert_eq!(targeted_receivers(&single, 0.0, &caps, &wants, &[1, 2]), vec![2]);
    }

    #[test]
    fn update_removes_decoded_packet() {
        let wants = SideInfo::new(8, vec![vec![3, 6], vec![5]]).unwrap();
        let q = IdncPacket::new(8, [5, 6]).unwrap();
        let next = update_wants(&wants, &q, &[0]).unwrap();
        assert_eq!(next.wanted_packets(0).collect::<Vec<_>>(), vec![3]);
        assert_eq!(next.wanted_packets(1).collect::<Vec<_>>(), vec![5]);
        assert_eq!(wants.wanted_packets(0).collect::<Vec<_>>(), vec![3, 6]);
        assert_eq!(update_wants(&wants, &q, &[]).unwrap(), wants);
    }

    #[test]
    fn update_rejects_non_decoding_target() {
        let wants = SideInfo::new(4, vec![vec![1, 2]]).unwrap();
        let q = IdncPacket::new(4, [1, 2]).unwrap();
        assert!(update_wants(&wants, &q, &[0]).is_err());
        assert!(update_wants(&wants, &q, &[3]).is_err());
    }

    #[test]
    fn throughput_examples() {
        let p = PowerAllocation {
            p_far: 1.0,
            p_near: 0.0,
        };
        let d = ScheduleDecision {
            far: layer(3, 5.0),
            near: layer(2, 5.0),
            power: p,
        };
        assert_eq!(d.throughput(), 25.0);
        let d = ScheduleDecision {
            far: layer(1, 8.0),
            near: layer(1, 7.0),
            power: p,
        };
        assert_eq!(d.throughput(), 15.0);
        let d = ScheduleDecision {
            far: ScheduleLayer::absent(),
            near: ScheduleLayer::absent(),
            power: p,
        };
        assert_eq!(d.throughput(), 0.0);
    }

    #[test]
    fn theorem1_gain_arithmetic() {
        assert_eq!(theorem1_gain(3, 1.5, 3, 1.5), 0.0);
        assert_eq!(theorem1_gain(2, 2.0, 3, 1.0), 1.0);
    }

    #[test]
    fn packet_validation() {
        assert!(IdncPacket::new(4, []).is_err());
        assert!(IdncPacket::new(4, [4]).is_err());
        assert!(SideInfo::new(2, vec![vec![2]]).is_err());
        let all = SideInfo::all_wanting(3, 5);
        assert_eq!(all.wanted_packets(2).count(), 5);
        assert_eq!(all.wanting_count(), 3);
    }
}
