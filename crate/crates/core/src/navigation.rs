//! Local navigation: messages are forwarded using lattice coordinates and
//! neighborhood information only.
//!
//! * Greedy: forward to the neighbor closest to the destination in lattice
//!   distance.
//! * Two-level: inspect neighbors of neighbors and move to the neighbor
//!   through which the two-hop endpoint closest to the destination is
//!   reached. In [`TwoLevelMode::Rehop`] (the default) the choice is made
//!   again at every node; in [`TwoLevelMode::Commit`] both hops of the chosen
//!   move are taken before deciding again.
//!
//! Ties go to the smaller intermediate label, then to the smaller endpoint.
//! The next move depends only on the current node and the destination, so the
//! all-pairs average is computed per destination with memoized hop counts.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::family::GeneratorSpec;
use crate::graph::{ring_distance, Network, Node};
use crate::metrics::{ensemble_map, mean_over_pairs, EnsembleStats};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwoLevelMode {
    Commit,
    #[default]
    Rehop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NavPolicy {
    Greedy,
    TwoLevel(TwoLevelMode),
}

impl NavPolicy {
    pub const TWO_LEVEL: NavPolicy = NavPolicy::TwoLevel(TwoLevelMode::Rehop);

    /// Search depth: 1 for greedy, 2 for two-level.
    pub fn depth(&self) -> usize {
        match self {
            NavPolicy::Greedy => 1,
            NavPolicy::TwoLevel(_) => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NavResult {
    pub hops: usize,
    /// Visited nodes from source to destination inclusive.
    pub path: Vec<Node>,
}

/// Two-hop moves `(intermediate, endpoint)` of every node in tie-break order,
/// excluding moves that return to the start.
struct TwoHopTable {
    offsets: Vec<u32>,
    moves: Vec<(Node, Node)>,
}

impl TwoHopTable {
    fn new(net: &Network) -> Self {
        let mut offsets = Vec::with_capacity(net.size() + 1);
        let mut moves = Vec::new();
        offsets.push(0);
        for v in 0..net.size() as Node {
            for &mid in net.neighbors(v) {
                for &end in net.neighbors(mid) {
                    if end != v {
                        moves.push((mid, end));
                    }
                }
            }
            offsets.push(moves.len() as u32);
        }
        TwoHopTable { offsets, moves }
    }

    #[inline]
    fn of(&self, v: Node) -> &[(Node, Node)] {
        &self.moves[self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize]
    }
}

/// Precomputed navigator for one network and policy.
pub struct Navigator<'a> {
    net: &'a Network,
    policy: NavPolicy,
    two_hop: Option<TwoHopTable>,
}

impl<'a> Navigator<'a> {
    pub fn new(net: &'a Network, policy: NavPolicy) -> Self {
        let two_hop = matches!(policy, NavPolicy::TwoLevel(_)).then(|| TwoHopTable::new(net));
        Navigator { net, policy, two_hop }
    }

    /// Next node, hops spent getting there and the intermediate node of a
    /// committed two-hop move, for `v != target`.
    #[inline]
    fn step(&self, v: Node, target: Node) -> (Node, u32, Node) {
        let size = self.net.size();
        let dist = |x: Node| ring_distance(size, x as usize, target as usize);
        match self.policy {
            NavPolicy::Greedy => {
                let mut best = (usize::MAX, v);
                for &u in self.net.neighbors(v) {
                    let r = dist(u);
                    if r < best.0 {
                        best = (r, u);
                    }
                }
                (best.1, 1, best.1)
            }
            NavPolicy::TwoLevel(mode) => {
                if self.net.is_adjacent(v, target) {
                    return (target, 1, target);
                }
                let table = self.two_hop.as_ref().expect("two-hop table");
                let mut best = (usize::MAX, v, v);
                for &(mid, end) in table.of(v) {
                    let r = dist(end);
                    if r < best.0 {
                        best = (r, mid, end);
                    }
                }
                match mode {
                    TwoLevelMode::Commit => (best.2, 2, best.1),
                    TwoLevelMode::Rehop => (best.1, 1, best.1),
                }
            }
        }
    }

    fn hop_cap(&self) -> usize {
        4 * self.net.size()
    }

    pub fn route(&self, source: Node, target: Node) -> NavResult {
        let mut path = vec![source];
        let mut hops = 0usize;
        let mut v = source;
        while v != target {
            let (next, cost, mid) = self.step(v, target);
            if cost == 2 {
                path.push(mid);
            }
            path.push(next);
            hops += cost as usize;
            v = next;
            assert!(
                hops <= self.hop_cap(),
                "navigation from {source} to {target} exceeded 4L hops"
            );
        }
        NavResult { hops, path }
    }

    /// Hops from every node to `target`, written into `hops`.
    fn hops_to(&self, target: Node, hops: &mut [u32], chain: &mut Vec<(Node, u32)>) {
        const UNKNOWN: u32 = u32::MAX;
        hops.fill(UNKNOWN);
        hops[target as usize] = 0;
        let cap = self.hop_cap();
        for start in 0..self.net.size() as Node {
            if hops[start as usize] != UNKNOWN {
                continue;
            }
            chain.clear();
            let mut v = start;
            let mut spent = 0usize;
            while hops[v as usize] == UNKNOWN {
                let (next, cost, _) = self.step(v, target);
                chain.push((v, cost));
                spent += cost as usize;
                assert!(spent <= cap, "navigation from {start} to {target} exceeded 4L hops");
                v = next;
            }
            let mut acc = hops[v as usize];
            for &(node, cost) in chain.iter().rev() {
                acc += cost;
                hops[node as usize] = acc;
            }
        }
    }

    /// Aggregate over all ordered pairs `s != t`.
    pub fn summary(&self) -> NavigationSummary {
        let size = self.net.size();
        let (sum, histogram) = (0..size as Node)
            .into_par_iter()
            .fold(
                || (vec![0u32; size], Vec::new(), 0u64, Vec::<u64>::new()),
                |(mut hops, mut chain, mut sum, mut histogram), target| {
                    self.hops_to(target, &mut hops, &mut chain);
                    for (v, &h) in hops.iter().enumerate() {
                        if v as Node == target {
                            continue;
                        }
                        sum += h as u64;
                        if histogram.len() <= h as usize {
                            histogram.resize(h as usize + 1, 0);
                        }
                        histogram[h as usize] += 1;
                    }
                    (hops, chain, sum, histogram)
                },
            )
            .map(|(_, _, sum, histogram)| (sum, histogram))
            .reduce(|| (0, Vec::new()), merge_histograms);
        NavigationSummary {
            policy: self.policy,
            mean: mean_over_pairs(sum, size),
            total_hops: sum,
            max_hops: histogram.len().saturating_sub(1),
            histogram,
        }
    }
}

fn merge_histograms(a: (u64, Vec<u64>), b: (u64, Vec<u64>)) -> (u64, Vec<u64>) {
    let (mut long, short) = if a.1.len() >= b.1.len() { (a.1, b.1) } else { (b.1, a.1) };
    for (slot, count) in long.iter_mut().zip(short) {
        *slot += count;
    }
    (a.0 + b.0, long)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NavigationSummary {
    pub policy: NavPolicy,
    /// Average navigation length over ordered pairs.
    pub mean: f64,
    pub total_hops: u64,
    pub max_hops: usize,
    /// `histogram[h]` counts ordered pairs navigated in exactly `h` hops.
    pub histogram: Vec<u64>,
}

pub fn navigate_greedy(net: &Network, source: Node, target: Node) -> NavResult {
    Navigator::new(net, NavPolicy::Greedy).route(source, target)
}

pub fn navigate_two_level(net: &Network, source: Node, target: Node) -> NavResult {
    Navigator::new(net, NavPolicy::TWO_LEVEL).route(source, target)
}

pub fn navigate(net: &Network, policy: NavPolicy, source: Node, target: Node) -> NavResult {
    Navigator::new(net, policy).route(source, target)
}

/// Average navigation length over ordered pairs `s != t`.
pub fn average_navigation_length(net: &Network, policy: NavPolicy) -> f64 {
    Navigator::new(net, policy).summary().mean
}

pub fn navigation_summary(net: &Network, policy: NavPolicy) -> NavigationSummary {
    Navigator::new(net, policy).summary()
}

/// Average navigation length over a seeded ensemble.
pub fn ensemble_navigation(
    spec: &GeneratorSpec,
    policy: NavPolicy,
    n: usize,
    master_seed: u64,
) -> Result<EnsembleStats> {
    let values = ensemble_map(spec, n, master_seed, |net| Ok(average_navigation_length(net, policy)))?;
    Ok(EnsembleStats::from_values(values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::average_distance;

    fn net_with(size: usize, shortcuts: &[(usize, usize)]) -> Network {
        let mut b = Network::new_ring(size).unwrap().to_builder();
        for &(i, j) in shortcuts {
            b.add_shortcut(i, j).unwrap();
        }
        b.build()
    }

    #[test]
    fn greedy_examples() {
        let ring = Network::new_ring(8).unwrap();
        assert_eq!(navigate_greedy(&ring, 0, 3).hops, 3);
        let net = net_with(8, &[(0, 4)]);
        assert_eq!(navigate_greedy(&net, 0, 4).hops, 1);

        let net = net_with(12, &[(1, 7)]);
        let res = navigate_greedy(&net, 0, 7);
        assert_eq!(res.hops, 5);
        assert_eq!(res.path, vec![0, 11, 10, 9, 8, 7]);
    }

    #[test]
    fn two_level_examples() {
        let net = net_with(12, &[(1, 7)]);
        let res = navigate_two_level(&net, 0, 7);
        assert_eq!(res.hops, 2);
        assert_eq!(res.path, vec![0, 1, 7]);

        let ring = Network::new_ring(8).unwrap();
        assert_eq!(navigate_two_level(&ring, 0, 3).hops, 3);
        assert_eq!(navigate_two_level(&net, 0, 1).hops, 1);
        assert_eq!(navigate_two_level(&net, 1, 7).hops, 1);
    }

    #[test]
    fn commit_takes_both_hops() {
        let net = net_with(12, &[(1, 7)]);
        let res = navigate(&net, NavPolicy::TwoLevel(TwoLevelMode::Commit), 0, 7);
        assert_eq!(res.path, vec![0, 1, 7]);
        assert_eq!(res.hops, 2);
    }

    #[test]
    fn ring_navigation_equals_average_distance() {
        for size in [5usize, 8, 13] {
            let ring = Network::new_ring(size).unwrap();
            let d = average_distance(&ring);
            for policy in [
                NavPolicy::Greedy,
                NavPolicy::TWO_LEVEL,
                NavPolicy::TwoLevel(TwoLevelMode::Commit),
            ] {
                assert!((average_navigation_length(&ring, policy) - d).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn summary_matches_pairwise_routes() {
        let net = net_with(30, &[(0, 15), (3, 22), (7, 9), (11, 27), (5, 18)]);
        for policy in [
            NavPolicy::Greedy,
            NavPolicy::TWO_LEVEL,
            NavPolicy::TwoLevel(TwoLevelMode::Commit),
        ] {
            let nav = Navigator::new(&net, policy);
            let mut total = 0;
            for s in 0..30 {
                for t in 0..30 {
                    if s != t {
                        let r = nav.route(s, t);
                        assert_eq!(r.path.len(), r.hops + 1);
                        total += r.hops as u64;
                    }
                }
            }
            let summary = nav.summary();
            assert_eq!(summary.total_hops, total, "{policy:?}");
            assert_eq!(summary.histogram.iter().sum::<u64>(), 30 * 29);
        }
    }
}
