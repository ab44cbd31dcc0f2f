//! Objective conflict from segment crossings, and axis-order search.
//!
//! Two solutions' segments between adjacent axes `i` and `j` cross strictly
//! between the axes exactly when the pair is discordant:
//! `(p_i - q_i) * (p_j - q_j) < 0`. Ties on either axis never count. The
//! count depends only on the order of values, so it is unaffected by axis
//! scaling or any strictly increasing transform.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::model::{check_permutation, SolutionSet};

/// Below this many solutions the quadratic pair scan is used.
pub const BRUTE_FORCE_CUTOFF: usize = 64;
/// Largest objective count accepted by exhaustive order search.
pub const EXHAUSTIVE_LIMIT: usize = 9;

/// Discordant pairs by direct enumeration of all `n (n - 1) / 2` pairs.
pub fn count_discordant_brute(x: &[f64], y: &[f64]) -> u64 {
    let mut count = 0;
    for a in 0..x.len() {
        for b in a + 1..x.len() {
            if (x[a] - x[b]) * (y[a] - y[b]) < 0.0 {
                count += 1;
            }
        }
    }
    count
}

/// Discordant pairs in `O(n log n)`.
///
/// Sorting lexicographically by `(x, y)` puts every x-tie group in
/// ascending y, so the strict y-inversions of the sorted sequence are
/// exactly the pairs that are strictly ordered on both axes in opposite
/// directions.
pub fn count_discordant_inversions(x: &[f64], y: &[f64]) -> u64 {
    let mut idx: Vec<usize> = (0..x.len()).collect();
    idx.sort_by(|&a, &b| {
        x[a].partial_cmp(&x[b])
            .unwrap_or(Ordering::Equal)
            .then(y[a].partial_cmp(&y[b]).unwrap_or(Ordering::Equal))
    });
    let mut seq: Vec<f64> = idx.iter().map(|&i| y[i]).collect();
    let mut buf = vec![0.0; seq.len()];
    merge_count(&mut seq, &mut buf)
}

fn merge_count(seq: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = seq.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut count = {
        let (lo, hi) = seq.split_at_mut(mid);
        let (blo, bhi) = buf.split_at_mut(mid);
        merge_count(lo, blo) + merge_count(hi, bhi)
    };
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        // equal values go left first so they are never counted
        if seq[i] <= seq[j] {
            buf[k] = seq[i];
            i += 1;
        } else {
            buf[k] = seq[j];
            count += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&seq[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&seq[j..n]);
    seq.copy_from_slice(&buf[..n]);
    count
}

fn discordant(x: &[f64], y: &[f64]) -> u64 {
    if x.len() < BRUTE_FORCE_CUTOFF {
        count_discordant_brute(x, y)
    } else {
        count_discordant_inversions(x, y)
    }
}

/// Number of solution pairs whose segments cross strictly between the
/// adjacent axes `i` and `j`.
pub fn crossing_count(set: &SolutionSet, i: usize, j: usize) -> Result<u64> {
    set.check_objective(i)?;
    set.check_objective(j)?;
    if set.len() < 2 {
        return Err(Error::InsufficientData { needed: 2, found: set.len() });
    }
    Ok(discordant(&set.column(i), &set.column(j)))
}

/// Pairwise crossing counts and conflict degrees (crossings over all
/// `C(n, 2)` solution pairs).
#[derive(Debug, Clone, PartialEq)]
pub struct ConflictMatrix {
    m: usize,
    pairs: u64,
    crossings: Vec<u64>,
}

impl ConflictMatrix {
    pub fn m(&self) -> usize {
        self.m
    }

    /// `C(n, 2)`, the denominator of every degree.
    pub fn pairs(&self) -> u64 {
        self.pairs
    }

    pub fn crossings(&self, i: usize, j: usize) -> u64 {
        self.crossings[i * self.m + j]
    }

    pub fn degree(&self, i: usize, j: usize) -> f64 {
        self.crossings(i, j) as f64 / self.pairs as f64
    }

    /// Dense `m x m` matrix of degrees.
    pub fn degrees(&self) -> Vec<Vec<f64>> {
        (0..self.m).map(|i| (0..self.m).map(|j| self.degree(i, j)).collect()).collect()
    }
}

pub fn conflict_matrix(set: &SolutionSet) -> Result<ConflictMatrix> {
    let n = set.len();
    if n < 2 {
        return Err(Error::InsufficientData { needed: 2, found: n });
    }
    let m = set.m();
    let columns: Vec<Vec<f64>> = (0..m).map(|k| set.column(k)).collect();
    let mut crossings = vec![0; m * m];
    for i in 0..m {
        for j in i + 1..m {
            let c = discordant(&columns[i], &columns[j]);
            crossings[i * m + j] = c;
            crossings[j * m + i] = c;
        }
    }
    Ok(ConflictMatrix { m, pairs: (n * (n - 1) / 2) as u64, crossings })
}

/// Pairs `i < j` with degree at most `epsilon`, by ascending degree then
/// lexicographically.
pub fn harmonious_pairs(matrix: &ConflictMatrix, epsilon: f64) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..matrix.m)
        .flat_map(|i| (i + 1..matrix.m).map(move |j| (i, j)))
        .filter(|&(i, j)| matrix.degree(i, j) <= epsilon)
        .collect();
    out.sort_by(|&a, &b| matrix.crossings(a.0, a.1).cmp(&matrix.crossings(b.0, b.1)).then(a.cmp(&b)));
    out
}

/// Total crossings over the `m - 1` adjacent gaps of `order`.
pub fn clutter(set: &SolutionSet, order: &[usize]) -> Result<u64> {
    check_permutation(order, set.m())?;
    if set.len() < 2 {
        return Ok(0);
    }
    let columns: Vec<Vec<f64>> = (0..set.m()).map(|k| set.column(k)).collect();
    Ok(order.windows(2).map(|w| discordant(&columns[w[0]], &columns[w[1]])).sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderMode {
    /// Maximize the sum of `1 - degree` over adjacent axes.
    MaxHarmony,
    /// Maximize the sum of `degree` over adjacent axes.
    MaxConflict,
    /// Minimize total crossings over adjacent axes.
    MinClutter,
}

impl OrderMode {
    pub fn as_str(self) -> &'static str {
        match self {
            OrderMode::MaxHarmony => "max_harmony",
            OrderMode::MaxConflict => "max_conflict",
            OrderMode::MinClutter => "min_clutter",
        }
    }

    /// `true` when a larger score is better.
    pub fn maximizes(self) -> bool {
        !matches!(self, OrderMode::MinClutter)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Search {
    Exhaustive,
    Heuristic,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxisOrder {
    /// Zero-based objective indices, left to right.
    pub permutation: Vec<usize>,
    pub mode: OrderMode,
    pub score: f64,
}

/// The mode's objective evaluated on `order`.
pub fn order_score(matrix: &ConflictMatrix, order: &[usize], mode: OrderMode) -> f64 {
    let gaps = order.windows(2);
    match mode {
        OrderMode::MaxHarmony => gaps.map(|w| 1.0 - matrix.degree(w[0], w[1])).sum(),
        OrderMode::MaxConflict => gaps.map(|w| matrix.degree(w[0], w[1])).sum(),
        OrderMode::MinClutter => gaps.map(|w| matrix.crossings(w[0], w[1]) as f64).sum(),
    }
}

/// Integer edge cost minimized by the search. Harmony and clutter both
/// minimize crossings; conflict maximizes them.
struct Costs {
    m: usize,
    cost: Vec<i64>,
}

impl Costs {
    fn new(matrix: &ConflictMatrix, mode: OrderMode) -> Self {
        let sign = if mode == OrderMode::MaxConflict { -1 } else { 1 };
        Costs { m: matrix.m, cost: matrix.crossings.iter().map(|&c| sign * c as i64).collect() }
    }

    fn edge(&self, a: usize, b: usize) -> i64 {
        self.cost[a * self.m + b]
    }

    fn path(&self, order: &[usize]) -> i64 {
        order.windows(2).map(|w| self.edge(w[0], w[1])).sum()
    }
}

/// Orients a path so its first element is smaller than its last.
fn canonical(mut order: Vec<usize>) -> Vec<usize> {
    if order.len() > 1 && order[0] > order[order.len() - 1] {
        order.reverse();
    }
    order
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&v| v > p[i]).expect("a successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

fn exhaustive(costs: &Costs) -> Vec<usize> {
    let mut p: Vec<usize> = (0..costs.m).collect();
    let mut best = p.clone();
    let mut best_cost = costs.path(&p);
    while next_permutation(&mut p) {
        if p[0] > p[costs.m - 1] {
            continue;
        }
        let c = costs.path(&p);
        // lexicographic enumeration: the first order seen wins ties
        if c < best_cost {
            best_cost = c;
            best.copy_from_slice(&p);
        }
    }
    best
}

fn nearest_neighbor(costs: &Costs, start: usize) -> Vec<usize> {
    let mut path = vec![start];
    let mut used = vec![false; costs.m];
    used[start] = true;
    while path.len() < costs.m {
        let last = path[path.len() - 1];
        let next = (0..costs.m)
            .filter(|&v| !used[v])
            .min_by_key(|&v| (costs.edge(last, v), v))
            .expect("unvisited objective remains");
        used[next] = true;
        path.push(next);
    }
    path
}

/// First-improvement 2-opt on an open path; scans `(i, j)` lexicographically.
fn two_opt(costs: &Costs, path: &mut [usize]) {
    let m = path.len();
    loop {
        let mut improved = false;
        for i in 0..m - 1 {
            for j in i + 1..m {
                if i == 0 && j == m - 1 {
                    continue;
                }
                let mut delta = 0;
                if i > 0 {
                    delta += costs.edge(path[i - 1], path[j]) - costs.edge(path[i - 1], path[i]);
                }
                if j + 1 < m {
                    delta += costs.edge(path[i], path[j + 1]) - costs.edge(path[j], path[j + 1]);
                }
                if delta < 0 {
                    path[i..=j].reverse();
                    improved = true;
                }
            }
        }
        if !improved {
            break;
        }
    }
}

fn heuristic(costs: &Costs) -> Vec<usize> {
    (0..costs.m)
        .map(|start| {
            let mut path = nearest_neighbor(costs, start);
            two_opt(costs, &mut path);
            canonical(path)
        })
        .min_by(|a, b| costs.path(a).cmp(&costs.path(b)).then_with(|| a.cmp(b)))
        .expect("m >= 2")
}

/// Chooses an axis order for `mode`. Orders equal up to reversal are
/// identified; among equal scores the lexicographically smallest
/// canonically oriented permutation wins.
pub fn order_axes(set: &SolutionSet, mode: OrderMode, search: Search) -> Result<AxisOrder> {
    let m = set.m();
    if search == Search::Exhaustive && m > EXHAUSTIVE_LIMIT {
        return Err(Error::SearchSize { m, limit: EXHAUSTIVE_LIMIT });
    }
    let matrix = conflict_matrix(set)?;
    Ok(order_from_matrix(&matrix, mode, search))
}

pub fn order_from_matrix(matrix: &ConflictMatrix, mode: OrderMode, search: Search) -> AxisOrder {
    let costs = Costs::new(matrix, mode);
    let permutation = match search {
        Search::Exhaustive => exhaustive(&costs),
        Search::Heuristic => heuristic(&costs),
    };
    let score = order_score(matrix, &permutation, mode);
    AxisOrder { permutation, mode, score }
}

/// `(m - 1, C(m, 2))`: relations visible in one plot versus all pairs.
pub fn relationship_budget(m: usize) -> Result<(usize, usize)> {
    if m < 2 {
        return Err(Error::Dimension { expected: 2, found: m });
    }
    Ok((m - 1, m * (m - 1) / 2))
}
