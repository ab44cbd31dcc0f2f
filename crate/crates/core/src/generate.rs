//! Synthetic solution sets: multi-line distance minimization instances over
//! regular polygons, and samples from linear and spherical Pareto fronts.
//!
//! All generators draw from a `ChaCha8Rng` seeded with `seed_from_u64`, so
//! identical arguments reproduce identical output on every platform.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::model::{ObjectiveVector, SolutionSet};

pub type Point2 = [f64; 2];

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Line `normal . x = offset` with unit `normal` pointing out of the polygon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeLine {
    pub normal: Point2,
    pub offset: f64,
}

impl EdgeLine {
    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.normal[0] * p[0] + self.normal[1] * p[1] - self.offset
    }

    pub fn distance(&self, p: Point2) -> f64 {
        self.signed_distance(p).abs()
    }
}

/// Regular `m`-gon with unit circumradius, first vertex at angle pi/2 and
/// counterclockwise vertex order. Edge `i` joins vertices `i` and `i + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MldmpInstance {
    pub m: usize,
    pub vertices: Vec<Point2>,
    pub edge_lines: Vec<EdgeLine>,
}

impl MldmpInstance {
    pub fn new(m: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidArgument(format!("a polygon needs m >= 3 vertices, got {m}")));
        }
        let vertices: Vec<Point2> = (0..m)
            .map(|i| {
                let a = PI / 2.0 + 2.0 * PI * i as f64 / m as f64;
                [a.cos(), a.sin()]
            })
            .collect();
        let edge_lines = (0..m)
            .map(|i| {
                let (p, q) = (vertices[i], vertices[(i + 1) % m]);
                let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
                let len = dx.hypot(dy);
                let normal = [dy / len, -dx / len];
                let offset = 0.5 * (normal[0] * (p[0] + q[0]) + normal[1] * (p[1] + q[1]));
                EdgeLine { normal, offset }
            })
            .collect();
        Ok(MldmpInstance { m, vertices, edge_lines })
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.edge_lines.iter().all(|l| l.signed_distance(p) <= 0.0)
    }

    /// Distances from `p` to every edge line.
    pub fn objectives(&self, p: Point2) -> ObjectiveVector {
        self.edge_lines.iter().map(|l| l.distance(p)).collect::<Vec<_>>().into()
    }

    fn bounding_box(&self) -> (Point2, Point2) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for v in &self.vertices {
            for d in 0..2 {
                lo[d] = lo[d].min(v[d]);
                hi[d] = hi[d].max(v[d]);
            }
        }
        (lo, hi)
    }
}

pub fn mldmp_objectives(instance: &MldmpInstance, p: Point2) -> ObjectiveVector {
    instance.objectives(p)
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedSet {
    pub decision_points: Option<Vec<Point2>>,
    pub objectives: SolutionSet,
    pub seed: u64,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be >= 1".into()));
    }
    Ok(())
}

/// `n` points drawn uniformly inside the regular `m`-gon by rejection from
/// its bounding box, with their distance vectors.
pub fn generate_mldmp(m: usize, n: usize, seed: u64) -> Result<GeneratedSet> {
    check_n(n)?;
    let inst = MldmpInstance::new(m)?;
    let (lo, hi) = inst.bounding_box();
    let mut rng = rng(seed);
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let p = [
            lo[0] + (hi[0] - lo[0]) * rng.random::<f64>(),
            lo[1] + (hi[1] - lo[1]) * rng.random::<f64>(),
        ];
        if inst.contains(p) {
            points.push(p);
        }
    }
    let rows = points.iter().map(|&p| inst.objectives(p).into_inner()).collect();
    Ok(GeneratedSet { decision_points: Some(points), objectives: SolutionSet::new(rows)?, seed })
}

fn check_m(m: usize) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("need m >= 2 objectives, got {m}")));
    }
    Ok(())
}

/// Uniform samples of the linear front `f >= 0, sum f = 0.5`: sorted
/// uniform cut points, successive differences, scaled by one half.
pub fn generate_simplex_front(m: usize, n: usize, seed: u64) -> Result<GeneratedSet> {
    check_m(m)?;
    check_n(n)?;
    let mut rng = rng(seed);
    let rows = (0..n)
        .map(|_| {
            let mut cuts: Vec<f64> = (0..m - 1).map(|_| rng.random::<f64>()).collect();
            cuts.sort_by(|a, b| a.partial_cmp(b).expect("uniform draws are finite"));
            cuts.push(1.0);
            let mut prev = 0.0;
            cuts.iter()
                .map(|&c| {
                    let d = 0.5 * (c - prev);
                    prev = c;
                    d
                })
                .collect()
        })
        .collect();
    Ok(GeneratedSet { decision_points: None, objectives: SolutionSet::new(rows)?, seed })
}

/// Uniform samples of the unit sphere restricted to the nonnegative orthant.
pub fn generate_sphere_front(m: usize, n: usize, seed: u64) -> Result<GeneratedSet> {
    check_m(m)?;
    check_n(n)?;
    let mut rng = rng(seed);
    let mut rows = Vec::with_capacity(n);
    while rows.len() < n {
        let v: Vec<f64> = (0..m).map(|_| rng.sample::<f64, _>(StandardNormal).abs()).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            rows.push(v.iter().map(|x| x / norm).collect());
        }
    }
    Ok(GeneratedSet { decision_points: None, objectives: SolutionSet::new(rows)?, seed })
}
