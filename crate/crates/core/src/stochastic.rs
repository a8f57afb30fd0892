//! Seeded stochastic constructions S1, S1m and S2.
//!
//! Second shortcut ends follow a power law in lattice distance: a node at
//! distance `r >= 2` from the first end is picked with weight `r^-alpha`.

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{ring_distance, Network, NetworkBuilder, Node};
use crate::seed::{rng_from_seed, InstanceRng};

/// Rejection attempts before switching to an exact draw over the admissible
/// targets. Both paths sample the same conditional distribution.
const REJECTION_ATTEMPTS: usize = 64;

/// Cumulative table over admissible distances `2..=L/2`, weighted by the
/// number of nodes at each distance times `r^-alpha`.
#[derive(Debug, Clone)]
pub struct PowerLawSampler {
    size: usize,
    alpha: f64,
    cumulative: Vec<f64>,
}

impl PowerLawSampler {
    pub fn new(size: usize, alpha: f64) -> Result<Self> {
        if size < 5 {
            return Err(Error::param("L", "power-law sampling needs L >= 5"));
        }
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::param("alpha", format!("{alpha} is not a finite value >= 0")));
        }
        let mut cumulative = Vec::with_capacity(size / 2);
        let mut acc = 0.0;
        for r in 2..=size / 2 {
            acc += multiplicity(size, r) as f64 * relative_weight(alpha, r);
            cumulative.push(acc);
        }
        Ok(PowerLawSampler {
            size,
            alpha,
            cumulative,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Normalized probability of drawing lattice distance `r`.
    pub fn distance_probability(&self, r: usize) -> f64 {
        if r < 2 || r > self.size / 2 {
            return 0.0;
        }
        let total = *self.cumulative.last().unwrap();
        multiplicity(self.size, r) as f64 * relative_weight(self.alpha, r) / total
    }

    /// Draws a target node for `first`, ignoring existing shortcuts.
    pub fn draw<R: Rng + ?Sized>(&self, first: Node, rng: &mut R) -> Node {
        let total = *self.cumulative.last().unwrap();
        let u = rng.random::<f64>() * total;
        let slot = self.cumulative.partition_point(|&c| c <= u);
        let r = 2 + slot.min(self.cumulative.len() - 1);
        let forward = multiplicity(self.size, r) == 1 || rng.random::<bool>();
        let first = first as usize;
        let target = if forward {
            (first + r) % self.size
        } else {
            (first + self.size - r) % self.size
        };
        target as Node
    }
}

fn multiplicity(size: usize, r: usize) -> usize {
    if size.is_multiple_of(2) && r == size / 2 {
        1
    } else {
        2
    }
}

/// `(r/2)^-alpha`, i.e. `r^-alpha` rescaled so that large alpha cannot
/// underflow the whole table.
fn relative_weight(alpha: f64, r: usize) -> f64 {
    if alpha == 0.0 {
        1.0
    } else {
        (-alpha * (r as f64 / 2.0).ln()).exp()
    }
}

/// Chooses the second end of a shortcut whose first end is `first`.
///
/// The result is never a lattice neighbor of `first` and never duplicates an
/// existing shortcut.
pub fn sample_shortcut_end<R: Rng + ?Sized>(
    first: Node,
    sampler: &PowerLawSampler,
    net: &NetworkBuilder,
    rng: &mut R,
) -> Result<Node> {
    for _ in 0..REJECTION_ATTEMPTS {
        let j = sampler.draw(first, rng);
        if !net.has_shortcut(first, j) {
            return Ok(j);
        }
    }

    let size = sampler.size;
    let mut candidates = Vec::new();
    let mut acc = 0.0;
    for j in 0..size as Node {
        let r = ring_distance(size, first as usize, j as usize);
        if net.is_admissible(first, j) {
            acc += relative_weight(sampler.alpha, r);
            candidates.push((acc, j));
        }
    }
    if candidates.is_empty() {
        return Err(Error::Saturated { node: first });
    }
    let u = rng.random::<f64>() * acc;
    let slot = candidates.partition_point(|&(c, _)| c <= u);
    Ok(candidates[slot.min(candidates.len() - 1)].1)
}

/// Parameters of one stochastic family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StochasticSpec {
    /// Each node independently starts a shortcut with probability `p`.
    S1 { size: usize, p: f64, alpha: f64 },
    /// Exactly `t` shortcuts from `t` distinct first ends.
    S1m { size: usize, t: usize, alpha: f64 },
    /// `t - c` shortcuts as in S1m, then `c` attached to nodes that already
    /// carry a shortcut end.
    S2 {
        size: usize,
        t: usize,
        c: usize,
        alpha: f64,
    },
}

impl StochasticSpec {
    pub fn size(&self) -> usize {
        match *self {
            StochasticSpec::S1 { size, .. } | StochasticSpec::S1m { size, .. } | StochasticSpec::S2 { size, .. } => {
                size
            }
        }
    }

    pub fn alpha(&self) -> f64 {
        match *self {
            StochasticSpec::S1 { alpha, .. } | StochasticSpec::S1m { alpha, .. } | StochasticSpec::S2 { alpha, .. } => {
                alpha
            }
        }
    }

    pub fn validate(&self) -> Result<()> {
        let size = self.size();
        if size < 5 {
            return Err(Error::param("L", format!("{size} is below the minimum of 5")));
        }
        let alpha = self.alpha();
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::param("alpha", format!("{alpha} is not a finite value >= 0")));
        }
        match *self {
            StochasticSpec::S1 { p, .. } => {
                if !(p > 0.0 && p <= 1.0) {
                    return Err(Error::param("p", format!("{p} is outside (0, 1]")));
                }
            }
            StochasticSpec::S1m { t, .. } => {
                if t == 0 || t > size {
                    return Err(Error::param("t", format!("{t} is outside 1..={size}")));
                }
            }
            StochasticSpec::S2 { t, c, .. } => {
                if t == 0 || t > size {
                    return Err(Error::param("t", format!("{t} is outside 1..={size}")));
                }
                if c >= t {
                    return Err(Error::param("c", format!("{c} must be smaller than t = {t}")));
                }
            }
        }
        Ok(())
    }

    pub fn construct(&self, seed: u64) -> Result<Network> {
        self.validate()?;
        match *self {
            StochasticSpec::S1 { size, p, alpha } => construct_s1(size, p, alpha, seed),
            StochasticSpec::S1m { size, t, alpha } => construct_s1m(size, t, alpha, seed),
            StochasticSpec::S2 { size, t, c, alpha } => construct_s2(size, t, c, alpha, seed),
        }
    }
}

pub fn construct_s1(size: usize, p: f64, alpha: f64, seed: u64) -> Result<Network> {
    StochasticSpec::S1 { size, p, alpha }.validate()?;
    let sampler = PowerLawSampler::new(size, alpha)?;
    let mut rng = rng_from_seed(seed);
    let mut net = NetworkBuilder::new(size)?;
    for first in 0..size as Node {
        if p >= 1.0 || rng.random::<f64>() < p {
            let second = sample_shortcut_end(first, &sampler, &net, &mut rng)?;
            net.add_shortcut(first as usize, second as usize)?;
        }
    }
    Ok(net.build())
}

pub fn construct_s1m(size: usize, t: usize, alpha: f64, seed: u64) -> Result<Network> {
    StochasticSpec::S1m { size, t, alpha }.validate()?;
    let sampler = PowerLawSampler::new(size, alpha)?;
    let mut rng = rng_from_seed(seed);
    let mut net = NetworkBuilder::new(size)?;
    add_random_shortcuts(&mut net, &sampler, t, &mut rng)?;
    Ok(net.build())
}

pub fn construct_s2(size: usize, t: usize, c: usize, alpha: f64, seed: u64) -> Result<Network> {
    StochasticSpec::S2 { size, t, c, alpha }.validate()?;
    let sampler = PowerLawSampler::new(size, alpha)?;
    let mut rng = rng_from_seed(seed);
    let mut net = NetworkBuilder::new(size)?;
    let added = add_random_shortcuts(&mut net, &sampler, t - c, &mut rng)?;

    // Nodes carrying at least one shortcut end, deduplicated, in order of
    // first appearance.
    let mut carriers: Vec<Node> = Vec::with_capacity(2 * t);
    let mut listed = vec![false; size];
    let mut enlist = |node: Node, carriers: &mut Vec<Node>| {
        if !listed[node as usize] {
            listed[node as usize] = true;
            carriers.push(node);
        }
    };
    for &(i, j) in &added {
        enlist(i, &mut carriers);
        enlist(j, &mut carriers);
    }

    for _ in 0..c {
        // c < t, so the S1m phase left at least one carrier.
        let first = carriers[rng.random_range(0..carriers.len())];
        let second = sample_shortcut_end(first, &sampler, &net, &mut rng)?;
        net.add_shortcut(first as usize, second as usize)?;
        enlist(first, &mut carriers);
        enlist(second, &mut carriers);
    }
    Ok(net.build())
}

/// S1m phase: `count` distinct uniformly chosen first ends. Returns the added
/// pairs in insertion order.
fn add_random_shortcuts(
    net: &mut NetworkBuilder,
    sampler: &PowerLawSampler,
    count: usize,
    rng: &mut InstanceRng,
) -> Result<Vec<(Node, Node)>> {
    let firsts = index::sample(rng, net.size(), count).into_vec();
    let mut added = Vec::with_capacity(count);
    for first in firsts {
        let first = first as Node;
        let second = sample_shortcut_end(first, sampler, net, rng)?;
        net.add_shortcut(first as usize, second as usize)?;
        added.push((first, second));
    }
    Ok(added)
}
