//! Weighted-sum cost/quality targets minimized over parameter grids.
//!
//! A grid is evaluated once ([`evaluate_grid`]); frontiers for any weight list
//! and target kind are then read off the stored per-instance metrics. Every
//! grid point uses the same instance seeds `derive_seed(master_seed, k)`.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::GeneratorSpec;
use crate::metrics::{average_distance, ensemble_map, EnsembleStats};
use crate::navigation::{average_navigation_length, NavPolicy, TwoLevelMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TargetKind {
    /// Quality is the average distance `d`.
    G,
    /// Quality is the greedy navigation length.
    GPrime,
    /// Quality is the two-level navigation length.
    GDoublePrime,
}

impl TargetKind {
    pub const ALL: [TargetKind; 3] = [TargetKind::G, TargetKind::GPrime, TargetKind::GDoublePrime];

    pub fn name(&self) -> &'static str {
        match self {
            TargetKind::G => "G",
            TargetKind::GPrime => "G'",
            TargetKind::GDoublePrime => "G''",
        }
    }

    pub fn parse(text: &str) -> Result<TargetKind> {
        match text {
            "G" | "g" | "d" => Ok(TargetKind::G),
            "G'" | "g1" | "gprime" | "greedy" => Ok(TargetKind::GPrime),
            "G''" | "g2" | "gdoubleprime" | "two-level" => Ok(TargetKind::GDoublePrime),
            other => Err(Error::param("target", format!("unknown target `{other}` (G, g1, g2)"))),
        }
    }

    fn index(&self) -> usize {
        *self as usize
    }
}

/// `w * quality + (1 - w) * cost`.
pub fn target_function(w: f64, quality: f64, cost: f64) -> Result<f64> {
    check_weight(w)?;
    Ok(w * quality + (1.0 - w) * cost)
}

fn check_weight(w: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&w) {
        return Err(Error::param("w", format!("{w} is outside [0, 1]")));
    }
    Ok(())
}

/// `0, 0.05, ..., 1`.
pub fn default_w_grid() -> Vec<f64> {
    (0..=20).map(|i| i as f64 / 20.0).collect()
}

/// Weight in `[0, 1]` where two `(quality, cost)` points have equal targets.
pub fn crossover_weight(a: (f64, f64), b: (f64, f64)) -> Option<f64> {
    let slope = (a.0 - a.1) - (b.0 - b.1);
    if slope == 0.0 {
        return None;
    }
    let w = (b.1 - a.1) / slope;
    (0.0..=1.0).contains(&w).then_some(w)
}

/// Metrics of one instance. Quality entries are `NaN` when not requested.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InstanceMetrics {
    pub cost: f64,
    pub quality: [f64; 3],
}

/// All instances of one grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointEvaluation {
    pub spec: String,
    pub family: String,
    pub params: String,
    pub instances: Vec<InstanceMetrics>,
}

impl PointEvaluation {
    pub fn cost_stats(&self) -> EnsembleStats {
        EnsembleStats::from_values(self.instances.iter().map(|m| m.cost).collect())
    }

    pub fn quality_stats(&self, kind: TargetKind) -> Result<EnsembleStats> {
        let values: Vec<f64> = self.instances.iter().map(|m| m.quality[kind.index()]).collect();
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::param("target", format!("{} was not evaluated", kind.name())));
        }
        Ok(EnsembleStats::from_values(values))
    }

    /// `(quality, cost)` under `selection`.
    pub fn select(&self, kind: TargetKind, selection: Selection) -> Result<(f64, f64)> {
        let quality = self.quality_stats(kind)?;
        match selection {
            Selection::Mean => Ok((quality.mean, self.cost_stats().mean)),
            Selection::Rank(q) => {
                // Deterministic points have a single instance.
                let rank = q.min(quality.n);
                let i = quality
                    .rank_index(rank)
                    .ok_or_else(|| Error::param("q", "rank must be >= 1"))?;
                Ok((quality.values[i], self.instances[i].cost))
            }
        }
    }
}

/// How one grid point is summarized into `(quality, cost)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selection {
    Mean,
    /// The instance with the `q`-th smallest quality (1-based).
    Rank(usize),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SkippedPoint {
    pub spec: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridEvaluation {
    pub points: Vec<PointEvaluation>,
    pub skipped: Vec<SkippedPoint>,
}

/// Evaluates every grid point on `n` instances (one for deterministic
/// families), computing the cost and the qualities of `kinds`.
pub fn evaluate_grid(
    grid: &[GeneratorSpec],
    kinds: &[TargetKind],
    n: usize,
    master_seed: u64,
    mode: TwoLevelMode,
) -> Result<GridEvaluation> {
    if grid.is_empty() {
        return Err(Error::param("grid", "grid is empty"));
    }
    if n == 0 {
        return Err(Error::param("n", "ensemble size must be at least 1"));
    }
    let mut wanted = [false; 3];
    for kind in kinds {
        wanted[kind.index()] = true;
    }
    let results: Vec<Result<Vec<InstanceMetrics>>> = grid
        .par_iter()
        .map(|spec| {
            ensemble_map(spec, spec.instance_count(n), master_seed, |net| {
                let mut quality = [f64::NAN; 3];
                if wanted[0] {
                    quality[0] = average_distance(net);
                }
                if wanted[1] {
                    quality[1] = average_navigation_length(net, NavPolicy::Greedy);
                }
                if wanted[2] {
                    quality[2] = average_navigation_length(net, NavPolicy::TwoLevel(mode));
                }
                Ok(InstanceMetrics {
                    cost: net.wiring_cost().unit_cost,
                    quality,
                })
            })
        })
        .collect();
    let mut points = Vec::new();
    let mut skipped = Vec::new();
    for (spec, result) in grid.iter().zip(results) {
        match result {
            Ok(instances) => points.push(PointEvaluation {
                spec: spec.to_string(),
                family: spec.family().to_string(),
                params: spec.params_string(),
                instances,
            }),
            Err(e) => skipped.push(SkippedPoint {
                spec: spec.to_string(),
                error: e.to_string(),
            }),
        }
    }
    Ok(GridEvaluation { points, skipped })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontierPoint {
    pub family: String,
    pub w: f64,
    pub params: String,
    pub target: f64,
    pub quality: f64,
    pub cost: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Frontier {
    pub kind: TargetKind,
    pub points: Vec<FrontierPoint>,
    pub skipped: Vec<SkippedPoint>,
}

impl Frontier {
    pub fn weights(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.w).collect()
    }

    pub fn targets(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.target).collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_frontier_csv(&self.points, out)
    }
}

impl GridEvaluation {
    /// For every `w`, the grid point minimizing the target. Ties keep the
    /// first point in grid order.
    pub fn frontier(&self, kind: TargetKind, w_list: &[f64], selection: Selection) -> Result<Frontier> {
        if w_list.is_empty() {
            return Err(Error::param("w", "weight list is empty"));
        }
        for &w in w_list {
            check_weight(w)?;
        }
        if let Selection::Rank(0) = selection {
            return Err(Error::param("q", "rank must be >= 1"));
        }
        if self.points.is_empty() {
            return Err(Error::param("grid", "every grid point failed to generate"));
        }
        let summaries: Vec<(f64, f64)> = self
            .points
            .iter()
            .map(|p| p.select(kind, selection))
            .collect::<Result<_>>()?;
        let mut points = Vec::with_capacity(w_list.len());
        for &w in w_list {
            let mut best: Option<(f64, usize)> = None;
            for (i, &(quality, cost)) in summaries.iter().enumerate() {
                let target = target_function(w, quality, cost)?;
                if best.is_none_or(|(b, _)| target < b) {
                    best = Some((target, i));
                }
            }
            let (target, i) = best.expect("non-empty grid");
            points.push(FrontierPoint {
                family: self.points[i].family.clone(),
                w,
                params: self.points[i].params.clone(),
                target,
                quality: summaries[i].0,
                cost: summaries[i].1,
            });
        }
        Ok(Frontier {
            kind,
            points,
            skipped: self.skipped.clone(),
        })
    }
}

/// Ensemble-mean frontier of `kind` over `grid`.
pub fn sweep_minimize(
    grid: &[GeneratorSpec],
    kind: TargetKind,
    w_list: &[f64],
    n: usize,
    master_seed: u64,
) -> Result<Frontier> {
    evaluate_grid(grid, &[kind], n, master_seed, TwoLevelMode::default())?.frontier(kind, w_list, Selection::Mean)
}

/// Frontier where each grid point is represented by its rank-`q` instance.
pub fn percentile_frontier(
    grid: &[GeneratorSpec],
    kind: TargetKind,
    w_list: &[f64],
    n: usize,
    q: usize,
    master_seed: u64,
) -> Result<Frontier> {
    if q == 0 || q > n {
        return Err(Error::param("q", format!("rank {q} is outside 1..={n}")));
    }
    evaluate_grid(grid, &[kind], n, master_seed, TwoLevelMode::default())?.frontier(kind, w_list, Selection::Rank(q))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub w: f64,
    pub targets: Vec<f64>,
    /// Labels attaining the minimum (several on ties).
    pub winners: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub labels: Vec<String>,
    pub rows: Vec<ComparisonRow>,
    /// Fraction of weights where each label is among the winners.
    pub win_fraction: Vec<f64>,
}

impl Comparison {
    pub fn win_fraction_of(&self, label: &str) -> Option<f64> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.win_fraction[i])
    }

    /// Columns `w, <label target>..., winners`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        let mut header = vec!["w".to_string()];
        header.extend(self.labels.iter().cloned());
        header.push("winners".to_string());
        writer.write_record(&header).map_err(io_error)?;
        for row in &self.rows {
            let mut record = vec![row.w.to_string()];
            record.extend(row.targets.iter().map(|t| t.to_string()));
            record.push(row.winners.join(";"));
            writer.write_record(&record).map_err(io_error)?;
        }
        writer
            .flush()
            .map_err(|e| Error::Mismatch(format!("write failed: {e}")))?;
        Ok(())
    }
}

/// Per-weight winners of several frontiers computed on the same weights.
pub fn compare_families(frontiers: &[(String, Vec<FrontierPoint>)]) -> Result<Comparison> {
    let (_, first) = frontiers
        .first()
        .ok_or_else(|| Error::param("frontiers", "nothing to compare"))?;
    let weights: Vec<f64> = first.iter().map(|p| p.w).collect();
    for (label, points) in frontiers {
        let other: Vec<f64> = points.iter().map(|p| p.w).collect();
        if other != weights {
            return Err(Error::Mismatch(format!(
                "frontier `{label}` uses a different weight grid"
            )));
        }
    }
    let labels: Vec<String> = frontiers.iter().map(|(l, _)| l.clone()).collect();
    let mut wins = vec![0usize; labels.len()];
    let mut rows = Vec::with_capacity(weights.len());
    for (i, &w) in weights.iter().enumerate() {
        let targets: Vec<f64> = frontiers.iter().map(|(_, p)| p[i].target).collect();
        let best = targets.iter().copied().fold(f64::INFINITY, f64::min);
        let mut winners = Vec::new();
        for (j, &t) in targets.iter().enumerate() {
            if t == best {
                wins[j] += 1;
                winners.push(labels[j].clone());
            }
        }
        rows.push(ComparisonRow { w, targets, winners });
    }
    let total = weights.len().max(1) as f64;
    Ok(Comparison {
        labels,
        rows,
        win_fraction: wins.iter().map(|&c| c as f64 / total).collect(),
    })
}

fn io_error(e: csv::Error) -> Error {
    Error::Mismatch(format!("csv: {e}"))
}

/// Columns `family, w, params, target, quality, cost`.
pub fn write_frontier_csv<W: Write>(points: &[FrontierPoint], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for p in points {
        writer.serialize(p).map_err(io_error)?;
    }
    writer
        .flush()
        .map_err(|e| Error::Mismatch(format!("write failed: {e}")))?;
    Ok(())
}

/// Reads frontier rows; `#` comment lines such as report headers are skipped.
pub fn read_frontier_csv<R: Read>(input: R) -> Result<Vec<FrontierPoint>> {
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(input);
    reader
        .deserialize()
        .enumerate()
        .map(|(i, row)| row.map_err(|e| Error::parse(format!("row {}", i + 1), e.to_string())))
        .collect()
}
