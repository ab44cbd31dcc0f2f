//! Quality indicators for solution sets: convergence (GD+), uniformity
//! (Spacing and its dominance-aware pairwise form), extensity (maximum
//! spread) and coverage (shared-grid comparison and per-axis reach).
//!
//! Sums run in index order so results do not depend on evaluation order.

use std::collections::BTreeSet;

use crate::dominance::{set_dominance, SetDominance};
use crate::error::{Error, Result};
use crate::model::SolutionSet;

/// Default grid resolution for [`grid_coverage`].
pub const DEFAULT_DIVISIONS: usize = 8;
/// Default gap threshold for [`axis_reach`], as a fraction of the axis range.
pub const DEFAULT_GAP_THRESHOLD: f64 = 0.1;

/// Dominance-compatible distance from `s` to `r`: only the objectives on
/// which `s` is worse than `r` contribute.
pub fn plus_distance(s: &[f64], r: &[f64]) -> f64 {
    s.iter()
        .zip(r)
        .map(|(a, b)| {
            let d = (a - b).max(0.0);
            d * d
        })
        .sum::<f64>()
        .sqrt()
}

/// Mean over `set` of the smallest [`plus_distance`] to any member of
/// `reference`.
pub fn gd_plus(set: &SolutionSet, reference: &SolutionSet) -> Result<f64> {
    set.check_same_dimension(reference)?;
    let s = set.canonical();
    let r = reference.canonical();
    let total: f64 = s
        .iter()
        .map(|a| r.iter().map(|b| plus_distance(a, b)).fold(f64::INFINITY, f64::min))
        .sum();
    Ok(total / s.len() as f64)
}

fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Spacing: sample standard deviation of the L1 nearest-neighbour distances.
pub fn spacing(set: &SolutionSet) -> Result<f64> {
    let n = set.len();
    if n < 2 {
        return Err(Error::InsufficientData { needed: 2, found: n });
    }
    let s = set.solutions();
    let d: Vec<f64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i)
                .map(|j| l1(&s[i], &s[j]))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mean = d.iter().sum::<f64>() / n as f64;
    let var = d.iter().map(|di| (mean - di) * (mean - di)).sum::<f64>() / (n - 1) as f64;
    Ok(var.sqrt())
}

/// Spacing for two sets, overridden to `(0, 1)` / `(1, 0)` when one set
/// dominates the other.
pub fn spacing_pairwise(s1: &SolutionSet, s2: &SolutionSet) -> Result<(f64, f64)> {
    let sp1 = spacing(s1)?;
    let sp2 = spacing(s2)?;
    Ok(match set_dominance(s1, s2)? {
        SetDominance::FirstDominates => (0.0, 1.0),
        SetDominance::SecondDominates => (1.0, 0.0),
        SetDominance::Neither => (sp1, sp2),
    })
}

/// Euclidean norm of the per-objective range vector.
pub fn maximum_spread(set: &SolutionSet) -> f64 {
    set.ranges().iter().map(|(lo, hi)| (hi - lo) * (hi - lo)).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverageReport {
    pub divisions: usize,
    pub covered_fraction_1: f64,
    pub covered_fraction_2: f64,
    /// Per objective, the runs of grid cells the first set leaves empty,
    /// as sorted disjoint `(start, end)` intervals in problem units.
    pub per_axis_gaps_1: Vec<Vec<(f64, f64)>>,
    /// Same for the second set.
    pub per_axis_gaps_2: Vec<Vec<(f64, f64)>>,
}

fn cell(v: f64, lo: f64, hi: f64, divisions: usize) -> usize {
    let t = (v - lo) / (hi - lo);
    ((t * divisions as f64).floor().max(0.0) as usize).min(divisions - 1)
}

fn empty_runs(occupied: &[bool], lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let div = occupied.len() as f64;
    let edge = |c: usize| lo + (hi - lo) * c as f64 / div;
    let mut out = Vec::new();
    let mut start = None;
    for (c, &occ) in occupied.iter().enumerate() {
        match (occ, start) {
            (false, None) => start = Some(c),
            (true, Some(s)) => {
                out.push((edge(s), edge(c)));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((edge(s), hi));
    }
    out
}

/// Shared-grid coverage comparison in the spirit of DCI: both sets are
/// normalized by the union's per-axis bounds, each solution is assigned a
/// hyperbox, and each set's fraction of the jointly occupied boxes is
/// reported. Larger is better.
pub fn grid_coverage(s1: &SolutionSet, s2: &SolutionSet, divisions: usize) -> Result<CoverageReport> {
    s1.check_same_dimension(s2)?;
    if divisions < 2 {
        return Err(Error::InvalidArgument(format!("divisions must be >= 2, got {divisions}")));
    }
    let union = s1.concat(s2)?;
    let ranges = union.ranges();
    for (k, &(lo, hi)) in ranges.iter().enumerate() {
        if lo >= hi {
            return Err(Error::DegenerateAxis { name: union.names()[k].clone(), value: lo });
        }
    }
    let boxes = |s: &SolutionSet| -> BTreeSet<Vec<usize>> {
        s.solutions()
            .iter()
            .map(|v| v.iter().zip(&ranges).map(|(&x, &(lo, hi))| cell(x, lo, hi, divisions)).collect())
            .collect()
    };
    let gaps = |s: &SolutionSet| -> Vec<Vec<(f64, f64)>> {
        ranges
            .iter()
            .enumerate()
            .map(|(k, &(lo, hi))| {
                let mut occupied = vec![false; divisions];
                for v in s.solutions() {
                    occupied[cell(v[k], lo, hi, divisions)] = true;
                }
                empty_runs(&occupied, lo, hi)
            })
            .collect()
    };
    let b1 = boxes(s1);
    let b2 = boxes(s2);
    let total = b1.union(&b2).count() as f64;
    Ok(CoverageReport {
        divisions,
        covered_fraction_1: b1.len() as f64 / total,
        covered_fraction_2: b2.len() as f64 / total,
        per_axis_gaps_1: gaps(s1),
        per_axis_gaps_2: gaps(s2),
    })
}

/// Envelope and internal gaps of one objective.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisReach {
    pub min: f64,
    pub max: f64,
    pub gaps: Vec<(f64, f64)>,
}

/// For every objective, the intervals between consecutive sorted values
/// longer than `gap_threshold * (max - min)`.
pub fn axis_reach(set: &SolutionSet, gap_threshold: f64) -> Result<Vec<AxisReach>> {
    if !(gap_threshold > 0.0 && gap_threshold.is_finite()) {
        return Err(Error::InvalidArgument(format!("gap threshold must be > 0, got {gap_threshold}")));
    }
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok((0..set.m())
        .map(|k| {
            let mut col = set.column(k);
            col.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
            let (min, max) = (col[0], col[col.len() - 1]);
            let limit = gap_threshold * (max - min);
            let gaps = col
                .windows(2)
                .filter(|w| max > min && w[1] - w[0] > limit)
                .map(|w| (w[0], w[1]))
                .collect();
            AxisReach { min, max, gaps }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub gd_plus: Option<f64>,
    /// Absent for single-solution sets.
    pub spacing: Option<f64>,
    pub maximum_spread: f64,
    /// Per objective `(min, max)` in problem units.
    pub per_axis_range: Vec<(f64, f64)>,
}

pub fn metric_report(set: &SolutionSet, reference: Option<&SolutionSet>) -> Result<MetricReport> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(MetricReport {
        gd_plus: reference.map(|r| gd_plus(set, r)).transpose()?,
        spacing: if set.len() >= 2 { Some(spacing(set)?) } else { None },
        maximum_spread: maximum_spread(set),
        per_axis_range: set.ranges(),
    })
}
