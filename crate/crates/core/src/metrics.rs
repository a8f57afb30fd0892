//! Exact hop-distance measurements on single networks and seeded ensembles.
//!
//! All-pairs quantities run one BFS per source. Per-source results are
//! reduced as integers, so the averages do not depend on thread scheduling.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::GeneratorSpec;
use crate::graph::{Network, Node};
use crate::seed::{derive_seed, rng_from_seed};

const UNSEEN: u32 = u32::MAX;

/// Hop distances from `src` to every node.
pub fn bfs_distances(net: &Network, src: Node) -> Vec<u32> {
    let mut dist = vec![UNSEEN; net.size()];
    let mut queue = Vec::with_capacity(net.size());
    bfs_into(net, src, &mut dist, &mut queue);
    dist
}

/// BFS into caller-owned buffers. Returns `(sum, max)` of the distances.
fn bfs_into(net: &Network, src: Node, dist: &mut [u32], queue: &mut Vec<Node>) -> (u64, u32) {
    dist.fill(UNSEEN);
    queue.clear();
    dist[src as usize] = 0;
    queue.push(src);
    let mut head = 0;
    let mut sum = 0u64;
    let mut max = 0u32;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let du = dist[u as usize];
        sum += du as u64;
        max = max.max(du);
        for &v in net.neighbors(u) {
            if dist[v as usize] == UNSEEN {
                dist[v as usize] = du + 1;
                queue.push(v);
            }
        }
    }
    debug_assert_eq!(queue.len(), net.size(), "ring networks are connected");
    (sum, max)
}

/// Sum of all ordered-pair distances and the diameter, in one pass.
pub fn distance_totals(net: &Network) -> (u64, u32) {
    let size = net.size();
    (0..size as Node)
        .into_par_iter()
        .map_init(
            || (vec![UNSEEN; size], Vec::with_capacity(size)),
            |(dist, queue), src| bfs_into(net, src, dist, queue),
        )
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1.max(b.1)))
}

/// Mean hop distance over ordered pairs `i != j`.
pub fn average_distance(net: &Network) -> f64 {
    let (sum, _) = distance_totals(net);
    mean_over_pairs(sum, net.size())
}

pub(crate) fn mean_over_pairs(sum: u64, size: usize) -> f64 {
    let pairs = size as u64 * (size as u64 - 1);
    sum as f64 / pairs as f64
}

pub fn diameter(net: &Network) -> u32 {
    distance_totals(net).1
}

/// Largest distance from `src`. Equals the diameter on vertex-transitive
/// networks such as circulants.
pub fn eccentricity(net: &Network, src: Node) -> u32 {
    bfs_distances(net, src).into_iter().max().unwrap_or(0)
}

/// Estimate of the average distance from `sources` uniformly drawn BFS
/// roots, for networks too large for the exact all-pairs pass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampledDistance {
    pub mean: f64,
    pub std_error: f64,
    pub sources: usize,
}

pub fn sample_average_distance(net: &Network, sources: usize, seed: u64) -> Result<SampledDistance> {
    if sources < 2 {
        return Err(Error::param("sources", "need at least two sampled sources"));
    }
    let size = net.size();
    let per_source: Vec<f64> = (0..sources as u64)
        .into_par_iter()
        .map_init(
            || (vec![UNSEEN; size], Vec::with_capacity(size)),
            |(dist, queue), k| {
                let mut rng = rng_from_seed(derive_seed(seed, k));
                let src = rand::Rng::random_range(&mut rng, 0..size as Node);
                bfs_into(net, src, dist, queue).0 as f64 / (size - 1) as f64
            },
        )
        .collect();
    let stats = EnsembleStats::from_values(per_source);
    Ok(SampledDistance {
        mean: stats.mean,
        std_error: stats.std_error(),
        sources,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsReport {
    #[serde(rename = "L")]
    pub size: usize,
    pub shortcut_count: usize,
    /// Average distance `d`.
    pub d: f64,
    pub diameter: u32,
    pub total_length: u64,
    #[serde(rename = "C_over_L")]
    pub unit_cost: f64,
}

pub fn measure(net: &Network) -> MetricsReport {
    let (sum, max) = distance_totals(net);
    let cost = net.wiring_cost();
    MetricsReport {
        size: net.size(),
        shortcut_count: net.shortcut_count(),
        d: mean_over_pairs(sum, net.size()),
        diameter: max,
        total_length: cost.total_length,
        unit_cost: cost.unit_cost,
    }
}

/// Summary of one metric over an ensemble. `values` keeps instance order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleStats {
    pub n: usize,
    pub mean: f64,
    /// Sample standard deviation (`n - 1` denominator; 0 for one instance).
    pub std: f64,
    pub min: f64,
    pub max: f64,
    pub values: Vec<f64>,
}

impl EnsembleStats {
    pub fn from_values(values: Vec<f64>) -> Self {
        assert!(!values.is_empty(), "ensemble statistics need at least one value");
        let n = values.len();
        let mean = values.iter().sum::<f64>() / n as f64;
        let std = if n > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        EnsembleStats {
            n,
            mean,
            std,
            min,
            max,
            values,
        }
    }

    pub fn std_error(&self) -> f64 {
        self.std / (self.n as f64).sqrt()
    }

    /// Index of the instance with the `rank`-th smallest value (1-based);
    /// ties resolve to the lower instance index.
    pub fn rank_index(&self, rank: usize) -> Option<usize> {
        if rank == 0 || rank > self.n {
            return None;
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]).then(a.cmp(&b)));
        Some(order[rank - 1])
    }

    /// `rank`-th smallest value (1-based).
    pub fn nth_smallest(&self, rank: usize) -> Option<f64> {
        self.rank_index(rank).map(|i| self.values[i])
    }

    /// Nearest-rank percentile, `0 < pct <= 100`.
    pub fn percentile(&self, pct: f64) -> Option<f64> {
        if !(pct > 0.0 && pct <= 100.0) {
            return None;
        }
        let rank = ((pct / 100.0) * self.n as f64).ceil() as usize;
        self.nth_smallest(rank.max(1))
    }
}

/// Per-metric statistics of a seeded ensemble.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleReport {
    pub family: String,
    pub master_seed: u64,
    pub d: EnsembleStats,
    pub diameter: EnsembleStats,
    pub unit_cost: EnsembleStats,
    pub shortcut_count: EnsembleStats,
}

/// Builds `n` instances of `spec` and measures each one. Instance `k` uses
/// `derive_seed(master_seed, k)`.
pub fn ensemble_measure(spec: &GeneratorSpec, n: usize, master_seed: u64) -> Result<EnsembleReport> {
    let reports = ensemble_map(spec, n, master_seed, |net| Ok(measure(net)))?;
    let column = |f: &dyn Fn(&MetricsReport) -> f64| EnsembleStats::from_values(reports.iter().map(f).collect());
    Ok(EnsembleReport {
        family: spec.family().to_string(),
        master_seed,
        d: column(&|r| r.d),
        diameter: column(&|r| r.diameter as f64),
        unit_cost: column(&|r| r.unit_cost),
        shortcut_count: column(&|r| r.shortcut_count as f64),
    })
}

/// Applies `f` to every instance of an ensemble, in instance order.
pub fn ensemble_map<T, F>(spec: &GeneratorSpec, n: usize, master_seed: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&Network) -> Result<T> + Sync,
{
    if n == 0 {
        return Err(Error::param("n", "ensemble size must be at least 1"));
    }
    spec.validate()?;
    (0..n)
        .into_par_iter()
        .map(|k| {
            let net = spec
                .build(derive_seed(master_seed, k as u64))
                .map_err(|e| Error::Instance {
                    index: k,
                    source: Box::new(e),
                })?;
            f(&net).map_err(|e| Error::Instance {
                index: k,
                source: Box::new(e),
            })
        })
        .collect()
}
