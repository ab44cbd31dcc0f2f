//! Point/line duality between Cartesian and parallel coordinates.
//!
//! Two adjacent axes sit at horizontal positions `u = 0` (left) and
//! `u = 1` (right). A Cartesian line `f_j = k * f_i + b` maps to the single
//! dual point `(1 / (1 - k), b / (1 - k))`, through which the segments of
//! every point on that line pass.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{normalize, NormalizationMode, SolutionSet};

/// Default minimum coefficient of determination for a dependence verdict.
pub const DEFAULT_FIT_THRESHOLD: f64 = 0.999;
/// Upper bound on the solution pairs sampled for intersection statistics.
pub const MAX_SAMPLED_PAIRS: usize = 1000;
const PARALLEL_TOLERANCE: f64 = 1e-9;

/// Relation `f_j = k * f_i + b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineParams {
    pub k: f64,
    pub b: f64,
}

/// Position in the plane between two adjacent axes: `u` in axis-gap units,
/// `v` in data units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualPoint {
    pub u: f64,
    pub v: f64,
}

impl DualPoint {
    pub fn distance(&self, other: &DualPoint) -> f64 {
        (self.u - other.u).hypot(self.v - other.v)
    }
}

pub fn rho_from_line(line: LineParams) -> Result<DualPoint> {
    if line.k == 1.0 {
        return Err(Error::ParallelLines);
    }
    let d = 1.0 - line.k;
    Ok(DualPoint { u: 1.0 / d, v: line.b / d })
}

pub fn line_from_rho(p: DualPoint) -> Result<LineParams> {
    if p.u == 0.0 {
        return Err(Error::VerticalLine);
    }
    Ok(LineParams { k: 1.0 - 1.0 / p.u, b: p.v / p.u })
}

/// Where two drawn segments meet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub point: DualPoint,
    /// `true` when the crossing lies strictly between the axes.
    pub inside: bool,
}

/// Crossing of segments `(0, p_i) -> (1, p_j)` and `(0, q_i) -> (1, q_j)`,
/// extended to full lines when they meet outside the axes. `Ok(None)` means
/// the segments are parallel and distinct.
pub fn segment_intersection(p_i: f64, p_j: f64, q_i: f64, q_j: f64) -> Result<Option<Crossing>> {
    let left = p_i - q_i;
    let right = p_j - q_j;
    if left == right {
        return if left == 0.0 { Err(Error::CoincidentSegments) } else { Ok(None) };
    }
    let u = left / (left - right);
    let v = p_i + u * (p_j - p_i);
    Ok(Some(Crossing { point: DualPoint { u, v }, inside: u > 0.0 && u < 1.0 }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SlopeClass {
    /// `k < 0`, other than `-1`.
    BetweenAxes,
    /// `k = -1`.
    Midway,
    /// `k > 1`.
    LeftOfLeft,
    /// `0 < k < 1`.
    RightOfRight,
    /// Vertical line, `k = ±inf`.
    OnLeftAxis,
    /// `k = 0`.
    OnRightAxis,
    /// `k = 1`.
    Parallel,
}

impl SlopeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            SlopeClass::BetweenAxes => "between_axes",
            SlopeClass::Midway => "midway",
            SlopeClass::LeftOfLeft => "left_of_left",
            SlopeClass::RightOfRight => "right_of_right",
            SlopeClass::OnLeftAxis => "on_left_axis",
            SlopeClass::OnRightAxis => "on_right_axis",
            SlopeClass::Parallel => "parallel",
        }
    }
}

/// Position of the dual point implied by slope `k`. Infinite or undefined
/// slopes are vertical lines.
pub fn classify_slope(k: f64) -> SlopeClass {
    if !k.is_finite() {
        SlopeClass::OnLeftAxis
    } else if k == -1.0 {
        SlopeClass::Midway
    } else if k < 0.0 {
        SlopeClass::BetweenAxes
    } else if k == 0.0 {
        SlopeClass::OnRightAxis
    } else if k < 1.0 {
        SlopeClass::RightOfRight
    } else if k == 1.0 {
        SlopeClass::Parallel
    } else {
        SlopeClass::LeftOfLeft
    }
}

/// [`classify_slope`] for a regression estimate: slopes within
/// `1e-9` of -1, 0 or 1 take the boundary class.
pub fn classify_fitted_slope(k: f64) -> SlopeClass {
    for anchor in [-1.0, 0.0, 1.0] {
        if (k - anchor).abs() <= PARALLEL_TOLERANCE {
            return classify_slope(anchor);
        }
    }
    classify_slope(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NegativelyLinear,
    PositivelyLinear,
    ParallelLinear,
    None,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NegativelyLinear => "negatively_linear",
            Verdict::PositivelyLinear => "positively_linear",
            Verdict::ParallelLinear => "parallel_linear",
            Verdict::None => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualityReport {
    pub pair: (usize, usize),
    pub fitted: LineParams,
    pub r_squared: f64,
    pub slope_class: SlopeClass,
    /// Largest distance between any two sampled pair crossings, measured on
    /// per-axis min-max normalized values.
    pub intersection_spread: f64,
    pub sampled_pairs: usize,
    /// Seed used to draw the pair sample when it was capped.
    pub seed: u64,
    pub verdict: Verdict,
}

/// Ordinary least squares `y = k x + b` with its coefficient of
/// determination, clamped to `[0, 1]`.
pub fn least_squares(x: &[f64], y: &[f64]) -> (LineParams, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    let k = sxy / sxx;
    let b = my - k * mx;
    let ss_res: f64 = x.iter().zip(y).map(|(a, c)| (c - (k * a + b)).powi(2)).sum();
    let r2 = if syy > 0.0 { (1.0 - ss_res / syy).clamp(0.0, 1.0) } else { 0.0 };
    (LineParams { k, b }, r2)
}

/// Solution pairs used for intersection statistics: every pair when there
/// are at most [`MAX_SAMPLED_PAIRS`], otherwise a seeded uniform sample.
fn pair_sample(n: usize, seed: u64) -> Vec<(usize, usize)> {
    let total = n * (n - 1) / 2;
    let decode = |mut idx: usize| {
        let mut a = 0;
        while idx >= n - 1 - a {
            idx -= n - 1 - a;
            a += 1;
        }
        (a, a + 1 + idx)
    };
    if total <= MAX_SAMPLED_PAIRS {
        return (0..total).map(decode).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks = sample(&mut rng, total, MAX_SAMPLED_PAIRS).into_vec();
    picks.sort_unstable();
    picks.into_iter().map(decode).collect()
}

/// Tests whether objectives `i` and `j` are linearly related: regresses
/// `f_j` on `f_i` over the raw values and corroborates with the spread of
/// pairwise segment crossings on the normalized plot.
pub fn detect_linear_dependence(
    set: &SolutionSet,
    i: usize,
    j: usize,
    fit_threshold: f64,
    seed: u64,
) -> Result<DualityReport> {
    set.check_objective(i)?;
    set.check_objective(j)?;
    if !(fit_threshold > 0.0 && fit_threshold <= 1.0) {
        return Err(Error::InvalidArgument(format!("fit threshold must lie in (0, 1], got {fit_threshold}")));
    }
    if set.len() < 3 {
        return Err(Error::InsufficientData { needed: 3, found: set.len() });
    }
    let ranges = set.ranges();
    for k in [i, j] {
        if ranges[k].0 >= ranges[k].1 {
            return Err(Error::DegenerateRegression { name: set.names()[k].clone() });
        }
    }
    let x = set.column(i);
    let y = set.column(j);
    let (fitted, r_squared) = least_squares(&x, &y);

    let norm = normalize(set, &NormalizationMode::PerAxisMinMax)?;
    let nx = norm.column(i);
    let ny = norm.column(j);
    let pairs = pair_sample(set.len(), seed);
    let points: Vec<DualPoint> = pairs
        .iter()
        .filter_map(|&(a, b)| segment_intersection(nx[a], ny[a], nx[b], ny[b]).ok().flatten())
        .map(|c| c.point)
        .collect();
    let mut intersection_spread: f64 = 0.0;
    for (a, p) in points.iter().enumerate() {
        for q in &points[a + 1..] {
            intersection_spread = intersection_spread.max(p.distance(q));
        }
    }

    let fits = r_squared >= fit_threshold;
    let verdict = if !fits {
        Verdict::None
    } else if (fitted.k - 1.0).abs() <= PARALLEL_TOLERANCE {
        Verdict::ParallelLinear
    } else if fitted.k < 0.0 {
        Verdict::NegativelyLinear
    } else if fitted.k > 0.0 {
        Verdict::PositivelyLinear
    } else {
        Verdict::None
    };

    Ok(DualityReport {
        pair: (i, j),
        fitted,
        r_squared,
        slope_class: classify_fitted_slope(fitted.k),
        intersection_spread,
        sampled_pairs: pairs.len(),
        seed,
        verdict,
    })
}

/// Reports for every objective pair `i < j`, in lexicographic order.
pub fn all_pair_reports(set: &SolutionSet, fit_threshold: f64, seed: u64) -> Result<Vec<DualityReport>> {
    let m = set.m();
    let mut out = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            out.push(detect_linear_dependence(set, i, j, fit_threshold, seed)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rho_examples() {
        assert_eq!(rho_from_line(LineParams { k: -1.0, b: 0.0 }).unwrap(), DualPoint { u: 0.5, v: 0.0 });
        assert_eq!(rho_from_line(LineParams { k: 0.0, b: 3.0 }).unwrap(), DualPoint { u: 1.0, v: 3.0 });
        assert_eq!(rho_from_line(LineParams { k: 2.0, b: 0.0 }).unwrap(), DualPoint { u: -1.0, v: 0.0 });
        assert_eq!(rho_from_line(LineParams { k: 1.0, b: 2.0 }).unwrap_err(), Error::ParallelLines);
    }

    #[test]
    fn line_examples() {
        assert_eq!(line_from_rho(DualPoint { u: 0.5, v: 0.0 }).unwrap(), LineParams { k: -1.0, b: 0.0 });
        assert_eq!(line_from_rho(DualPoint { u: 1.0, v: 3.0 }).unwrap(), LineParams { k: 0.0, b: 3.0 });
        assert_eq!(line_from_rho(DualPoint { u: 0.0, v: 3.0 }).unwrap_err(), Error::VerticalLine);
    }

    #[test]
    fn segment_examples() {
        let c = segment_intersection(0.0, 1.0, 1.0, 0.0).unwrap().unwrap();
        assert_eq!(c, Crossing { point: DualPoint { u: 0.5, v: 0.5 }, inside: true });
        assert_eq!(segment_intersection(0.0, 0.0, 1.0, 1.0).unwrap(), None);
        assert_eq!(segment_intersection(2.0, 3.0, 2.0, 3.0).unwrap_err(), Error::CoincidentSegments);
        for (x, y) in [(1.0, 3.0), (-2.0, 7.5), (0.25, 0.5)] {
            let c = segment_intersection(x, -x, y, -y).unwrap().unwrap();
            assert_eq!(c.point, DualPoint { u: 0.5, v: 0.0 });
        }
        // k = 2 line: crossing left of the left axis
        let c = segment_intersection(1.0, 2.0, 2.0, 4.0).unwrap().unwrap();
        assert!(!c.inside);
        assert_eq!(c.point.u, -1.0);
    }

    #[test]
    fn fitted_slopes_snap_to_boundaries() {
        assert_eq!(classify_fitted_slope(-1.0 - 1e-12), SlopeClass::Midway);
        assert_eq!(classify_fitted_slope(1e-13), SlopeClass::OnRightAxis);
        assert_eq!(classify_fitted_slope(1.0 + 4e-10), SlopeClass::Parallel);
        assert_eq!(classify_fitted_slope(-0.9), SlopeClass::BetweenAxes);
    }

    #[test]
    fn slope_examples() {
        assert_eq!(classify_slope(-1.0), SlopeClass::Midway);
        assert_eq!(classify_slope(1.0), SlopeClass::Parallel);
        assert_eq!(classify_slope(0.5), SlopeClass::RightOfRight);
        assert_eq!(classify_slope(-3.0), SlopeClass::BetweenAxes);
        assert_eq!(classify_slope(3.0), SlopeClass::LeftOfLeft);
        assert_eq!(classify_slope(0.0), SlopeClass::OnRightAxis);
        assert_eq!(classify_slope(f64::INFINITY), SlopeClass::OnLeftAxis);
        assert_eq!(classify_slope(f64::NEG_INFINITY), SlopeClass::OnLeftAxis);
    }

    fn line_set(f: impl Fn(f64) -> f64, n: usize) -> SolutionSet {
        SolutionSet::new((0..n).map(|t| {
            let x = t as f64 / (n - 1) as f64 * 0.8 + 0.1;
            vec![x, f(x)]
        }).collect()).unwrap()
    }

    #[test]
    fn dependence_verdicts() {
        let r = detect_linear_dependence(&line_set(|x| 1.0 - x, 50), 0, 1, DEFAULT_FIT_THRESHOLD, 0).unwrap();
        assert_eq!(r.verdict, Verdict::NegativelyLinear);
        assert!((r.fitted.k + 1.0).abs() < 1e-12);
        assert!(r.intersection_spread < 1e-9);
        assert_eq!(r.sampled_pairs, 1000);

        let r = detect_linear_dependence(&line_set(|x| x, 20), 0, 1, DEFAULT_FIT_THRESHOLD, 0).unwrap();
        assert_eq!(r.verdict, Verdict::ParallelLinear);
        assert_eq!(r.intersection_spread, 0.0);
        assert_eq!(r.sampled_pairs, 190);

        let r = detect_linear_dependence(&line_set(|x| 3.0 * x + 1.0, 20), 0, 1, DEFAULT_FIT_THRESHOLD, 0).unwrap();
        assert_eq!(r.verdict, Verdict::PositivelyLinear);
        assert_eq!(r.slope_class, SlopeClass::LeftOfLeft);
    }

    #[test]
    fn independent_data_has_no_verdict() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rows = (0..200).map(|_| vec![rng.random::<f64>(), rng.random::<f64>()]).collect();
        let r = detect_linear_dependence(&SolutionSet::new(rows).unwrap(), 0, 1, DEFAULT_FIT_THRESHOLD, 0).unwrap();
        assert_eq!(r.verdict, Verdict::None);
        assert!(r.r_squared < 0.2);
    }

    #[test]
    fn dependence_errors() {
        let s = SolutionSet::new(vec![vec![1.0, 0.0], vec![1.0, 1.0], vec![1.0, 2.0]]).unwrap();
        assert!(matches!(detect_linear_dependence(&s, 0, 1, 0.999, 0), Err(Error::DegenerateRegression { .. })));
        let two = SolutionSet::new(vec![vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(detect_linear_dependence(&two, 0, 1, 0.999, 0), Err(Error::InsufficientData { .. })));
        assert!(matches!(detect_linear_dependence(&s, 0, 5, 0.999, 0), Err(Error::ObjectiveIndex { .. })));
    }

    #[test]
    fn pair_decoding_covers_all_pairs() {
        let pairs = pair_sample(6, 0);
        assert_eq!(pairs.len(), 15);
        assert_eq!(pairs[0], (0, 1));
        assert_eq!(pairs[14], (4, 5));
        let sampled = pair_sample(100, 3);
        assert_eq!(sampled.len(), MAX_SAMPLED_PAIRS);
        assert!(sampled.iter().all(|&(a, b)| a < b && b < 100));
        assert_eq!(sampled, pair_sample(100, 3));
    }

    proptest! {
        #[test]
        fn taxonomy_matches_dual_position(k in -1e3f64..1e3) {
            prop_assume!(k != 1.0);
            let u = rho_from_line(LineParams { k, b: 0.0 }).unwrap().u;
            let class = classify_slope(k);
            prop_assert_eq!(k < 0.0, u > 0.0 && u < 1.0);
            prop_assert_eq!(k > 1.0, u < 0.0);
            prop_assert_eq!(k > 0.0 && k < 1.0, u > 1.0);
            prop_assert_eq!(matches!(class, SlopeClass::BetweenAxes | SlopeClass::Midway), k < 0.0);
        }

        #[test]
        fn segment_intersection_symmetric(a in -5.0f64..5.0, b in -5.0f64..5.0, c in -5.0f64..5.0, d in -5.0f64..5.0) {
            let one = segment_intersection(a, b, c, d);
            let two = segment_intersection(c, d, a, b);
            match (one, two) {
                (Ok(Some(x)), Ok(Some(y))) => {
                    prop_assert_eq!(x.inside, y.inside);
                    prop_assert!(x.point.distance(&y.point) <= 1e-9 * (1.0 + x.point.u.abs() + x.point.v.abs()));
                }
                (x, y) => prop_assert_eq!(x, y),
            }
        }

        #[test]
        fn verdict_survives_positive_rescaling(scale in 0.1f64..100.0) {
            let s = line_set(|x| 2.0 - 0.5 * x, 30);
            let scaled = SolutionSet::new(s.solutions().iter().map(|v| vec![v[0], v[1] * scale]).collect()).unwrap();
            let a = detect_linear_dependence(&s, 0, 1, DEFAULT_FIT_THRESHOLD, 0).unwrap();
            let b = detect_linear_dependence(&scaled, 0, 1, DEFAULT_FIT_THRESHOLD, 0).unwrap();
            prop_assert_eq!(a.verdict, b.verdict);
            prop_assert!((a.r_squared - b.r_squared).abs() < 1e-12);
        }
    }
}
