//! Deterministic constructions: greedy farthest-pair (D1), the hierarchical
//! HN4 network (D2), circulants, hub networks (D3) and subcirculant networks
//! (D4s, D4), together with their closed-form diameter, cost and distance
//! bounds.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{ring_distance, Network, NetworkBuilder, Node};
use crate::metrics::bfs_distances;

/// D1: adds `t` shortcuts one at a time, each joining a pair at maximal graph
/// distance on the current network. Ties go to the smallest lattice distance,
/// then to the lexicographically smallest pair.
pub fn construct_d1(size: usize, t: usize) -> Result<Network> {
    if t == 0 {
        return Err(Error::param("t", "at least one shortcut is required"));
    }
    let mut builder = NetworkBuilder::new(size)?;
    for _ in 0..t {
        let net = builder.clone().build();
        let mut best: Option<(u32, usize, Node, Node)> = None;
        for i in 0..size as Node {
            let dist = bfs_distances(&net, i);
            for j in i + 1..size as Node {
                let g = dist[j as usize];
                let r = ring_distance(size, i as usize, j as usize);
                let better = match best {
                    None => true,
                    Some((bg, br, _, _)) => g > bg || (g == bg && r < br),
                };
                if better {
                    best = Some((g, r, i, j));
                }
            }
        }
        let (g, _, i, j) = best.expect("ring has at least one pair");
        if g < 2 {
            return Err(Error::constraint(
                "D1",
                format!("network is complete after {} shortcuts", builder.shortcut_count()),
            ));
        }
        builder.add_shortcut(i as usize, j as usize)?;
    }
    Ok(builder.build())
}

/// D2 (HN4) on `L = 2^k` nodes.
///
/// With 1-based labels `n = 2^i (2j + 1)`, consecutive labels of the same
/// level `i` are joined around the ring. Levels with fewer than two distinct
/// labels add nothing, so the total shortcut length is `L (k - 3/2)`.
pub fn construct_d2(size: usize) -> Result<Network> {
    if size < 8 || !size.is_power_of_two() {
        return Err(Error::param("L", format!("{size} is not a power of two >= 8")));
    }
    let k = size.trailing_zeros();
    let mut builder = NetworkBuilder::new(size)?;
    // 1-based label n maps to node n - 1 (label L is node L - 1).
    let node = |label: usize| (label + size - 1) % size;
    for level in 0..=k {
        let spacing = 1usize << (level + 1);
        let first = 1usize << level;
        let count = if first >= size { 1 } else { size / spacing };
        if count < 2 {
            continue;
        }
        for j in 0..count {
            let a = first + j * spacing;
            let b = first + ((j + 1) % count) * spacing;
            builder.add_if_new(node(a), node(b));
        }
    }
    Ok(builder.build())
}

/// Circulant `C(L; 1, steps...)`: node `i` joined to `i ± step` for every
/// step. Step 1 is the ring itself and may be omitted.
pub fn construct_circulant(size: usize, steps: &[usize]) -> Result<Network> {
    let mut builder = NetworkBuilder::new(size)?;
    let mut seen = Vec::with_capacity(steps.len());
    for &step in steps {
        if step == 0 || step > size / 2 {
            return Err(Error::param(
                "steps",
                format!("step {step} is outside 1..={}", size / 2),
            ));
        }
        if seen.contains(&step) {
            return Err(Error::param("steps", format!("step {step} is repeated")));
        }
        seen.push(step);
    }
    for &step in &seen {
        if step == 1 {
            continue;
        }
        for i in 0..size {
            builder.add_if_new(i, i + step);
        }
    }
    Ok(builder.build())
}

/// Steps `[1, s, s^2, ..., s^(k-1)]` of the multiplicative circulant on `s^k`
/// nodes.
pub fn multiplicative_steps(s: usize, k: u32) -> Result<Vec<usize>> {
    if s < 2 || k == 0 {
        return Err(Error::param("s", "multiplicative circulants need s >= 2 and k >= 1"));
    }
    (0..k)
        .map(|e| s.checked_pow(e).ok_or_else(|| Error::param("s", "s^k overflows")))
        .collect()
}

pub fn construct_multiplicative(s: usize, k: u32) -> Result<Network> {
    let size = s.checked_pow(k).ok_or_else(|| Error::param("s", "s^k overflows"))?;
    construct_circulant(size, &multiplicative_steps(s, k)?)
}

/// Closed-form diameter of `C(s^k; 1, s, ..., s^(k-1))`.
pub fn circulant_diameter_formula(s: usize, k: usize) -> usize {
    if s % 2 == 1 {
        k * (s / 2)
    } else {
        k * s / 2 - k / 2
    }
}

/// Per-node wiring of a multiplicative circulant counting the lattice edges
/// too: `1 + s + ... + s^(k-1) = (s^k - 1)/(s - 1)`. Equals
/// `wiring_cost().unit_cost + 1` whenever every step is below `L/2`.
pub fn multiplicative_cost_formula(s: usize, k: u32) -> f64 {
    ((s as f64).powi(k as i32) - 1.0) / (s as f64 - 1.0)
}

/// How the D3 hubs are joined to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HubGraphKind {
    /// Hub 0 joined to every other hub.
    Star,
    /// Hub `u` joined to hubs `u ± a` and `u ± b` (mod h).
    DoubleLoop { a: usize, b: usize },
}

/// Lower bound on the diameter of any double-loop circulant on `h` nodes,
/// attained by the optimal generator pairs.
pub fn double_loop_diameter_formula(h: usize) -> usize {
    let x = (-1.0 + ((2 * h) as f64 - 1.0).sqrt()) / 2.0;
    // Guard against sqrt rounding just above an integer.
    let r = x.round();
    if (x - r).abs() < 1e-9 {
        r as usize
    } else {
        x.ceil() as usize
    }
}

fn hub_graph_adjacency(kind: HubGraphKind, h: usize) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); h];
    let mut link = |u: usize, v: usize| {
        if u != v && !adj[u].contains(&v) {
            adj[u].push(v);
            adj[v].push(u);
        }
    };
    match kind {
        HubGraphKind::Star => {
            for u in 1..h {
                link(0, u);
            }
        }
        HubGraphKind::DoubleLoop { a, b } => {
            for u in 0..h {
                link(u, (u + a) % h);
                link(u, (u + b) % h);
            }
        }
    }
    adj
}

/// Diameter of the hub graph `H` on `h` hubs, or `None` if it is
/// disconnected.
pub fn hub_graph_diameter(kind: HubGraphKind, h: usize) -> Option<usize> {
    let adj = hub_graph_adjacency(kind, h);
    let mut diameter = 0;
    for src in 0..h {
        let mut dist = vec![usize::MAX; h];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        diameter = diameter.max(*dist.iter().max()?);
        if dist.contains(&usize::MAX) {
            return None;
        }
    }
    Some(diameter)
}

/// Generator pair `(a, b)`, `1 <= a < b <= h/2`, minimizing the diameter of
/// `C(h; a, b)`. Ties go to the lexicographically smallest pair.
pub fn optimal_double_loop(h: usize) -> Result<HubGraphKind> {
    if h < 5 {
        return Err(Error::param("h", "a double loop needs at least 5 hubs"));
    }
    let mut best: Option<(usize, HubGraphKind)> = None;
    for a in 1..=h / 2 {
        for b in a + 1..=h / 2 {
            let kind = HubGraphKind::DoubleLoop { a, b };
            // Circulants are vertex-transitive: eccentricity of hub 0 suffices.
            let Some(ecc) = circulant_eccentricity(h, a, b) else {
                continue;
            };
            if best.is_none_or(|(d, _)| ecc < d) {
                best = Some((ecc, kind));
            }
        }
    }
    best.map(|(_, kind)| kind)
        .ok_or_else(|| Error::param("h", "no connected double loop"))
}

fn circulant_eccentricity(h: usize, a: usize, b: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; h];
    dist[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    let mut ecc = 0;
    while let Some(u) = queue.pop_front() {
        for v in [(u + a) % h, (u + h - a) % h, (u + b) % h, (u + h - b) % h] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                ecc = dist[v];
                queue.push_back(v);
            }
        }
    }
    (!dist.contains(&usize::MAX)).then_some(ecc)
}

/// Parameters of a D3 hub network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct D3Spec {
    pub size: usize,
    /// Degree `K` of the starting circulant `C(L; 1, ..., K/2)`.
    pub degree: usize,
    pub hubs: usize,
    pub hub_kind: HubGraphKind,
    /// Reserved for a degree-equalizing rewiring pass; currently has no
    /// effect.
    pub equalize_degrees: bool,
}

impl D3Spec {
    pub fn validate(&self) -> Result<()> {
        if self.degree < 2 || !self.degree.is_multiple_of(2) {
            return Err(Error::param("K", format!("{} is not an even number >= 2", self.degree)));
        }
        if self.degree / 2 > self.size / 2 {
            return Err(Error::param("K", "K/2 exceeds L/2"));
        }
        if self.hubs < 2 || self.hubs > self.size {
            return Err(Error::param("h", format!("{} is outside 2..=L", self.hubs)));
        }
        if let HubGraphKind::DoubleLoop { a, b } = self.hub_kind {
            if a == 0 || b == 0 || a == b || a > self.hubs / 2 || b > self.hubs / 2 {
                return Err(Error::param(
                    "hub",
                    format!("invalid double loop C({}; {a}, {b})", self.hubs),
                ));
            }
        }
        Ok(())
    }

    /// Hub positions `floor(u L / h)`.
    pub fn hub_positions(&self) -> Vec<usize> {
        (0..self.hubs).map(|u| u * self.size / self.hubs).collect()
    }
}

pub fn construct_d3(spec: &D3Spec) -> Result<Network> {
    spec.validate()?;
    let size = spec.size;
    let mut builder = NetworkBuilder::new(size)?;
    for step in 2..=spec.degree / 2 {
        for i in 0..size {
            builder.add_if_new(i, i + step);
        }
    }
    let hubs = spec.hub_positions();
    for (u, neighbors) in hub_graph_adjacency(spec.hub_kind, spec.hubs).iter().enumerate() {
        for &v in neighbors {
            if u < v {
                builder.add_if_new(hubs[u], hubs[v]);
            }
        }
    }
    // TODO: degree-equalizing local reorganization when `equalize_degrees`
    // is set; needs the rewiring rules of the original hub construction.
    Ok(builder.build())
}

/// Diameter bound `2 ceil((ceil(L/h) - 1)/K) + D_H` of a D3 network.
pub fn d3_diameter_bound(size: usize, hubs: usize, degree: usize, hub_diameter: usize) -> usize {
    let gap = size.div_ceil(hubs);
    2 * (gap - 1).div_ceil(degree) + hub_diameter
}

/// D4s on `L = m b^k` nodes: for every level `i = 1..=k` the nodes
/// `0, b^i, 2 b^i, ...` are joined in a cycle.
pub fn construct_d4s(size: usize, b: usize, k: u32) -> Result<Network> {
    if b < 2 || k == 0 {
        return Err(Error::param("b", "D4s needs b >= 2 and k >= 1"));
    }
    let top = b.checked_pow(k).ok_or_else(|| Error::param("k", "b^k overflows"))?;
    if !size.is_multiple_of(top) {
        return Err(Error::constraint(
            "L = m b^k",
            format!("{size} is not a multiple of {b}^{k} = {top}"),
        ));
    }
    let mut builder = NetworkBuilder::new(size)?;
    let mut spacing = 1;
    for _ in 1..=k {
        spacing *= b;
        let members: Vec<usize> = (0..size).step_by(spacing).collect();
        join_cycle(&mut builder, &members);
    }
    Ok(builder.build())
}

/// Joins `members` consecutively, closing the cycle. Pairs that are ring
/// edges or existing shortcuts are skipped.
fn join_cycle(builder: &mut NetworkBuilder, members: &[usize]) {
    if members.len() < 2 {
        return;
    }
    for w in members.windows(2) {
        builder.add_if_new(w[0], w[1]);
    }
    builder.add_if_new(members[members.len() - 1], members[0]);
}

/// Parameters of a D4 subcirculant network.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct D4Spec {
    pub size: usize,
    pub b: usize,
    pub k: u32,
}

impl D4Spec {
    pub fn new(size: usize, b: usize, k: u32) -> Result<Self> {
        let spec = D4Spec { size, b, k };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let D4Spec { size, b, k } = *self;
        if size < 3 {
            return Err(Error::InvalidSize(size));
        }
        if k == 0 {
            return Err(Error::param("k", "k must be a positive integer"));
        }
        if !(b > 2 && 2 * b <= size) {
            return Err(Error::constraint("D4-1 (2 < b <= L/2)", format!("b = {b}, L = {size}")));
        }
        let fits = b
            .checked_pow(k)
            .and_then(|p| p.checked_add(k as usize))
            .is_some_and(|v| v < size);
        if !fits {
            return Err(Error::constraint(
                "D4-2 (b^k + k < L)",
                format!("b = {b}, k = {k}, L = {size}"),
            ));
        }
        if (k as usize) > b * b {
            return Err(Error::constraint("D4-3 (k <= b^2)", format!("b = {b}, k = {k}")));
        }
        Ok(())
    }

    /// All `(b, k)` with `b` in `bases` that satisfy the D4 constraints on
    /// `size` nodes.
    pub fn admissible(size: usize, bases: impl IntoIterator<Item = usize>) -> Vec<D4Spec> {
        let mut out = Vec::new();
        for b in bases {
            // Every constraint only gets tighter as k grows.
            for k in 1.. {
                match D4Spec::new(size, b, k) {
                    Ok(spec) => out.push(spec),
                    Err(_) => break,
                }
            }
        }
        out
    }
}

/// D4: levels `i = 2..=k` join `i, i + b^i, ..., i + h_i b^i` in cycles; the
/// first level joins nodes near `1 + j b` that carry no shortcut yet.
pub fn construct_d4(spec: &D4Spec) -> Result<Network> {
    spec.validate()?;
    let D4Spec { size, b, k } = *spec;
    let mut builder = NetworkBuilder::new(size)?;

    for level in 2..=k {
        let spacing = b.pow(level);
        let offset = level as usize;
        let top = (size - offset) / spacing;
        let members: Vec<usize> = (0..=top).map(|j| (offset + j * spacing) % size).collect();
        join_cycle(&mut builder, &members);
    }

    let top = (size - 1) / b;
    let mut taken = vec![false; size];
    let mut picked = Vec::with_capacity(top + 1);
    for j in 0..=top {
        let target = (1 + j * b) % size;
        let q = nearest_free(&builder, &taken, target)
            .ok_or_else(|| Error::constraint("D4 level 1", format!("no free node left for {target}")))?;
        taken[q] = true;
        picked.push(q);
    }
    // Drop the left member of every lattice-adjacent consecutive pair.
    let n = picked.len();
    let level_one: Vec<usize> = (0..n)
        .filter(|&j| n < 2 || ring_distance(size, picked[j], picked[(j + 1) % n]) != 1)
        .map(|j| picked[j])
        .collect();
    join_cycle(&mut builder, &level_one);

    Ok(builder.build())
}

/// Nearest label to `target` (by absolute label difference) without a
/// shortcut end, ties to the larger label.
fn nearest_free(builder: &NetworkBuilder, taken: &[bool], target: usize) -> Option<usize> {
    let size = builder.size();
    let free = |v: usize| !taken[v] && builder.shortcut_ends(v as Node) == 0;
    for delta in 0..size {
        if target + delta < size && free(target + delta) {
            return Some(target + delta);
        }
        if delta > 0 && delta <= target && free(target - delta) {
            return Some(target - delta);
        }
    }
    None
}

/// Estimated upper bound `lambda [k (b + 4)/2 + L/(4 b^k) - 2]` on the
/// average distance of a D4 network.
pub fn d4_distance_bound(size: usize, b: usize, k: u32, lambda: f64) -> f64 {
    let k = k as f64;
    let b = b as f64;
    lambda * (k * (b + 4.0) / 2.0 + size as f64 / (4.0 * b.powf(k)) - 2.0)
}

/// Upper bound on the average distance of a D4s network with `L = m b^k`.
pub fn d4s_distance_bound(b: usize, k: u32, m: usize, size: usize) -> f64 {
    let (bf, kf) = (b as f64, k as f64);
    let lattice = if b.is_multiple_of(2) {
        bf * kf / 2.0
    } else {
        (bf * bf - 1.0) * kf / (2.0 * bf)
    };
    lattice + (m as f64 / 4.0) * size as f64 / (size as f64 - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::{average_distance, diameter};

    #[test]
    fn d1_first_shortcut_is_antipodal() {
        let net = construct_d1(8, 1).unwrap();
        assert_eq!(net.shortcuts(), &[(0, 4)]);
        let net = construct_d1(9, 1).unwrap();
        let (i, j) = net.shortcuts()[0];
        assert_eq!(net.lattice_distance(i, j), 4);
        assert_eq!(net.shortcuts(), &[(0, 4)]);
    }

    #[test]
    fn d1_saturates_small_rings() {
        // L = 5: after (0,2),(0,3),(1,3),(1,4),(2,4) the graph is complete.
        assert!(construct_d1(5, 5).is_ok());
        assert!(matches!(construct_d1(5, 6), Err(Error::Constraint { .. })));
    }

    #[test]
    fn d2_census_for_sixteen_nodes() {
        // k = 4. 1-based levels: i=0 odd labels (8 nodes, spacing 2),
        // i=1 {2,6,10,14} (spacing 4), i=2 {4,12} (one pair, length 8),
        // i=3 {8} and i=4 {16} contribute nothing.
        // Total length 16 + 16 + 8 = 40 = 16 * 2.5.
        let net = construct_d2(16).unwrap();
        assert_eq!(net.shortcut_count(), 8 + 4 + 1);
        assert_eq!(net.wiring_cost().total_length, 40);
        assert_eq!(net.wiring_cost().unit_cost, 2.5);
        // Labels 4 and 12 are nodes 3 and 11.
        assert!(net.has_shortcut(3, 11));
        assert!(net.has_shortcut(0, 2));
        assert!(net.has_shortcut(1, 5));
        assert!(net.has_shortcut(13, 1));
    }

    #[test]
    fn d2_cost_identity() {
        for k in 3..=12u32 {
            let size = 1usize << k;
            let net = construct_d2(size).unwrap();
            assert_eq!(
                net.wiring_cost().total_length as f64,
                size as f64 * (k as f64 - 1.5),
                "k={k}"
            );
        }
        assert!(construct_d2(12).is_err());
        assert!(construct_d2(4).is_err());
    }

    #[test]
    fn circulant_examples() {
        let net = construct_multiplicative(3, 3).unwrap();
        assert_eq!(net.size(), 27);
        assert_eq!(diameter(&net), 3);
        assert_eq!(circulant_diameter_formula(3, 3), 3);
        let net = construct_multiplicative(4, 2).unwrap();
        assert_eq!(diameter(&net), 3);
        assert_eq!(circulant_diameter_formula(4, 2), 3);
        assert_eq!(circulant_diameter_formula(2, 4), 2);
        assert_eq!(diameter(&construct_multiplicative(2, 4).unwrap()), 2);
        assert_eq!(circulant_diameter_formula(5, 1), 2);
        assert_eq!(diameter(&construct_multiplicative(5, 1).unwrap()), 2);
        let ring = construct_circulant(11, &[1]).unwrap();
        assert_eq!(ring.shortcut_count(), 0);
        assert_eq!(diameter(&ring), 5);
    }

    #[test]
    fn circulant_step_validation() {
        assert!(construct_circulant(10, &[1, 6]).is_err());
        assert!(construct_circulant(10, &[3, 3]).is_err());
        assert!(construct_circulant(10, &[0]).is_err());
        let half = construct_circulant(10, &[5]).unwrap();
        assert_eq!(half.shortcut_count(), 5);
    }

    #[test]
    fn multiplicative_cost_counts_the_lattice() {
        let net = construct_multiplicative(3, 3).unwrap();
        assert_eq!(net.wiring_cost().unit_cost, 12.0);
        assert_eq!(multiplicative_cost_formula(3, 3), 13.0);
    }

    #[test]
    fn double_loop_formula() {
        assert_eq!(double_loop_diameter_formula(13), 2);
        assert_eq!(double_loop_diameter_formula(5), 1);
        let kind = optimal_double_loop(13).unwrap();
        assert_eq!(hub_graph_diameter(kind, 13), Some(2));
        for h in [8, 25, 32, 41, 128] {
            let kind = optimal_double_loop(h).unwrap();
            let d = hub_graph_diameter(kind, h).unwrap();
            assert!(d >= double_loop_diameter_formula(h), "h={h}");
            assert!(d <= double_loop_diameter_formula(h) + 1, "h={h}");
        }
    }

    #[test]
    fn d3_bound_examples() {
        assert_eq!(d3_diameter_bound(16, 4, 2, 2), 6);
        assert_eq!(d3_diameter_bound(50, 50, 2, 2), 2);

        let spec = D3Spec {
            size: 16,
            degree: 2,
            hubs: 4,
            hub_kind: HubGraphKind::Star,
            equalize_degrees: false,
        };
        assert_eq!(spec.hub_positions(), vec![0, 4, 8, 12]);
        let net = construct_d3(&spec).unwrap();
        assert!(diameter(&net) <= 6);

        let spec = D3Spec {
            size: 40,
            degree: 2,
            hubs: 40,
            hub_kind: HubGraphKind::Star,
            equalize_degrees: false,
        };
        let net = construct_d3(&spec).unwrap();
        assert_eq!(net.degree(0), 39);
        assert!(diameter(&net) <= 2);
    }

    #[test]
    fn d3_validation() {
        let base = D3Spec {
            size: 64,
            degree: 4,
            hubs: 8,
            hub_kind: HubGraphKind::Star,
            equalize_degrees: false,
        };
        assert!(construct_d3(&D3Spec { degree: 3, ..base }).is_err());
        assert!(construct_d3(&D3Spec { hubs: 65, ..base }).is_err());
        assert!(construct_d3(&D3Spec {
            hub_kind: HubGraphKind::DoubleLoop { a: 2, b: 2 },
            ..base
        })
        .is_err());
        let net = construct_d3(&D3Spec {
            hub_kind: HubGraphKind::DoubleLoop { a: 1, b: 3 },
            ..base
        })
        .unwrap();
        assert!(net.has_shortcut(0, 24));
        assert!(net.has_shortcut(0, 2));
    }

    #[test]
    fn d4s_structure() {
        // Three levels, cycles of 27, 9 and 3 nodes.
        let net = construct_d4s(81, 3, 3).unwrap();
        assert_eq!(net.shortcut_count(), 27 + 9 + 3);
        assert_eq!(net.wiring_cost().total_length, 3 * 81);
        assert_eq!(construct_d4s(5, 5, 1).unwrap().shortcut_count(), 0);
        assert!(construct_d4s(80, 3, 3).is_err());

        let net = construct_d4s(16, 2, 3).unwrap();
        let bound = d4s_distance_bound(2, 3, 2, 16);
        assert!((bound - (3.0 + 0.5 * 16.0 / 15.0)).abs() < 1e-12);
        assert!(average_distance(&net) <= bound);
    }

    #[test]
    fn d4s_bound_examples() {
        assert!((d4s_distance_bound(3, 3, 3, 81) - 4.759375).abs() < 1e-12);
        // m = b, even b: (b/4)(2 log_b L - 1 + 1/(L-1)).
        let (b, k) = (4usize, 3u32);
        let size = b.pow(k) * b;
        let closed = (b as f64 / 4.0) * (2.0 * (size as f64).ln() / (b as f64).ln() - 1.0 + 1.0 / (size as f64 - 1.0));
        assert!((d4s_distance_bound(b, k, b, size) - closed).abs() < 1e-9);
    }

    #[test]
    fn d4_constraints_name_the_violated_equation() {
        let err = D4Spec::new(100, 3, 5).unwrap_err();
        assert!(matches!(err, Error::Constraint { constraint, .. } if constraint.starts_with("D4-2")));
        let err = D4Spec::new(100, 2, 2).unwrap_err();
        assert!(matches!(err, Error::Constraint { constraint, .. } if constraint.starts_with("D4-1")));
        let err = D4Spec::new(100, 51, 1).unwrap_err();
        assert!(matches!(err, Error::Constraint { constraint, .. } if constraint.starts_with("D4-1")));
        let err = D4Spec::new(1 << 20, 3, 10).unwrap_err();
        assert!(matches!(err, Error::Constraint { constraint, .. } if constraint.starts_with("D4-3")));
        assert!(D4Spec::new(81, 3, 3).is_ok());
    }

    #[test]
    fn d4_on_eighty_one_nodes() {
        let net = construct_d4(&D4Spec::new(81, 3, 3).unwrap()).unwrap();
        // Level 3: 3, 30, 57. Level 2: 2, 11, ..., 74. Level 1: 1, 4, ..., 79.
        assert!(net.has_shortcut(3, 30) && net.has_shortcut(30, 57) && net.has_shortcut(3, 57));
        assert!(net.has_shortcut(2, 11) && net.has_shortcut(2, 74));
        assert!(net.has_shortcut(1, 4) && net.has_shortcut(1, 79));
        assert_eq!(net.shortcut_count(), 3 + 9 + 27);
        assert!(net.max_degree() <= 4);
    }

    #[test]
    fn d4_cost_on_powers_of_four() {
        for (size, k) in [(1024usize, 4u32), (4096, 5), (16384, 5)] {
            let net = construct_d4(&D4Spec::new(size, 4, k).unwrap()).unwrap();
            assert_eq!(net.wiring_cost().unit_cost, k as f64, "L={size}");
        }
    }

    #[test]
    fn d4_displaces_level_one_around_higher_levels() {
        // k > b puts level-4 nodes 4 + 81 j on the level-1 lattice 1 + 3 j.
        let spec = D4Spec::new(400, 3, 4).unwrap();
        let net = construct_d4(&spec).unwrap();
        assert!(net.max_degree() <= 8);
        assert!(net.has_shortcut(4, 85));
        assert!(!net.has_shortcut(1, 4));
    }

    #[test]
    fn d4_bound_examples() {
        assert!((d4_distance_bound(4096, 4, 4, 1.0) - 18.0).abs() < 1e-12);
        assert_eq!(d4_distance_bound(4096, 4, 4, 0.0), 0.0);
        assert!((d4_distance_bound(10_000, 5, 5, 1.0) - 21.3).abs() < 1e-9);
    }

    #[test]
    fn d4_admissible_grid() {
        let grid = D4Spec::admissible(1024, 3..=5);
        assert!(grid.contains(&D4Spec { size: 1024, b: 4, k: 4 }));
        assert!(!grid.iter().any(|s| s.b == 4 && s.k == 5));
        assert!(grid.iter().all(|s| s.validate().is_ok()));
    }
}
