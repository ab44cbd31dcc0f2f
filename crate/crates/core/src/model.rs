//! Solution sets, objective metadata, CSV ingestion and normalization.
//!
//! Values are stored in problem units. Objectives flagged as maximized are
//! negated on demand by [`SolutionSet::canonical`], so dominance and quality
//! metrics always see a minimization problem while plots and reports keep
//! the original numbers.

use std::borrow::Cow;
use std::io::{Read, Write};
use std::ops::Deref;
use std::path::Path;

use crate::error::{Error, Result};

/// One solution's objective values.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    pub fn new(values: Vec<f64>) -> Self {
        ObjectiveVector(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for ObjectiveVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl From<Vec<f64>> for ObjectiveVector {
    fn from(values: Vec<f64>) -> Self {
        ObjectiveVector(values)
    }
}

/// Optimization sense of one objective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sense {
    #[default]
    Minimize,
    Maximize,
}

/// An ordered, non-empty collection of objective vectors sharing one
/// dimension `m >= 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionSet {
    solutions: Vec<ObjectiveVector>,
    names: Vec<String>,
    sense: Vec<Sense>,
}

pub fn default_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("f{i}")).collect()
}

impl SolutionSet {
    /// Builds a minimization set named `f1..fm`.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let m = rows.first().ok_or(Error::EmptySet)?.len();
        Self::with_metadata(rows, default_names(m), vec![Sense::Minimize; m])
    }

    pub fn with_metadata(rows: Vec<Vec<f64>>, names: Vec<String>, sense: Vec<Sense>) -> Result<Self> {
        let m = rows.first().ok_or(Error::EmptySet)?.len();
        if m < 2 {
            return Err(Error::Dimension { expected: 2, found: m });
        }
        if names.len() != m {
            return Err(Error::Dimension { expected: m, found: names.len() });
        }
        if sense.len() != m {
            return Err(Error::Dimension { expected: m, found: sense.len() });
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Dimension { expected: m, found: row.len() });
            }
            if let Some(c) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::Parse {
                    row: r + 1,
                    column: c + 1,
                    cell: row[c].to_string(),
                });
            }
        }
        Ok(SolutionSet {
            solutions: rows.into_iter().map(ObjectiveVector).collect(),
            names,
            sense,
        })
    }

    /// Number of objectives.
    pub fn m(&self) -> usize {
        self.names.len()
    }

    /// Number of solutions.
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn solutions(&self) -> &[ObjectiveVector] {
        &self.solutions
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn sense(&self) -> &[Sense] {
        &self.sense
    }

    pub fn has_maximized(&self) -> bool {
        self.sense.contains(&Sense::Maximize)
    }

    /// The solutions in canonical minimization form.
    pub fn canonical(&self) -> Cow<'_, [ObjectiveVector]> {
        if !self.has_maximized() {
            return Cow::Borrowed(&self.solutions);
        }
        Cow::Owned(
            self.solutions
                .iter()
                .map(|s| {
                    s.iter()
                        .zip(&self.sense)
                        .map(|(&v, sense)| match sense {
                            Sense::Minimize => v,
                            Sense::Maximize => -v,
                        })
                        .collect::<Vec<_>>()
                        .into()
                })
                .collect(),
        )
    }

    /// Values of objective `k` in solution order.
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.solutions.iter().map(|s| s[k]).collect()
    }

    /// Per-objective `(min, max)` in problem units.
    pub fn ranges(&self) -> Vec<(f64, f64)> {
        (0..self.m())
            .map(|k| {
                self.solutions.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
                    (lo.min(s[k]), hi.max(s[k]))
                })
            })
            .collect()
    }

    pub fn check_objective(&self, index: usize) -> Result<()> {
        if index < self.m() {
            Ok(())
        } else {
            Err(Error::ObjectiveIndex { index, m: self.m() })
        }
    }

    pub fn check_same_dimension(&self, other: &SolutionSet) -> Result<()> {
        if self.m() == other.m() {
            Ok(())
        } else {
            Err(Error::Dimension { expected: self.m(), found: other.m() })
        }
    }

    /// Subset by solution index, keeping metadata and the given order.
    pub fn select(&self, indices: &[usize]) -> SolutionSet {
        SolutionSet {
            solutions: indices.iter().map(|&i| self.solutions[i].clone()).collect(),
            names: self.names.clone(),
            sense: self.sense.clone(),
        }
    }

    /// Reorders the objectives: column `t` of the result is objective
    /// `order[t]` of `self`.
    pub fn permute_objectives(&self, order: &[usize]) -> Result<SolutionSet> {
        check_permutation(order, self.m())?;
        Ok(SolutionSet {
            solutions: self
                .solutions
                .iter()
                .map(|s| ObjectiveVector(order.iter().map(|&k| s[k]).collect()))
                .collect(),
            names: order.iter().map(|&k| self.names[k].clone()).collect(),
            sense: order.iter().map(|&k| self.sense[k]).collect(),
        })
    }

    /// Appends the solutions of `other` (same dimension); metadata of `self` wins.
    pub fn concat(&self, other: &SolutionSet) -> Result<SolutionSet> {
        self.check_same_dimension(other)?;
        let mut out = self.clone();
        out.solutions.extend(other.solutions.iter().cloned());
        Ok(out)
    }

    fn map_values(&self, f: impl Fn(usize, f64) -> f64) -> SolutionSet {
        SolutionSet {
            solutions: self
                .solutions
                .iter()
                .map(|s| ObjectiveVector(s.iter().enumerate().map(|(k, &v)| f(k, v)).collect()))
                .collect(),
            names: self.names.clone(),
            sense: self.sense.clone(),
        }
    }
}

pub fn check_permutation(order: &[usize], m: usize) -> Result<()> {
    let mut seen = vec![false; m];
    if order.len() != m {
        return Err(Error::Permutation(order.to_vec()));
    }
    for &k in order {
        if k >= m || std::mem::replace(&mut seen[k], true) {
            return Err(Error::Permutation(order.to_vec()));
        }
    }
    Ok(())
}

/// How objective values are mapped before plotting or intersection analysis.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum NormalizationMode {
    None,
    #[default]
    PerAxisMinMax,
    /// Per-objective `(lo, hi)` with `lo < hi`.
    Explicit(Vec<(f64, f64)>),
}

/// Per-objective affine bounds that `mode` maps onto `[0, 1]`, or `None`
/// for the identity mode.
pub fn normalization_bounds(set: &SolutionSet, mode: &NormalizationMode) -> Result<Option<Vec<(f64, f64)>>> {
    match mode {
        NormalizationMode::None => Ok(None),
        NormalizationMode::PerAxisMinMax => {
            let ranges = set.ranges();
            for (k, &(lo, hi)) in ranges.iter().enumerate() {
                if lo >= hi {
                    return Err(Error::DegenerateAxis { name: set.names()[k].clone(), value: lo });
                }
            }
            Ok(Some(ranges))
        }
        NormalizationMode::Explicit(bounds) => {
            if bounds.len() != set.m() {
                return Err(Error::Dimension { expected: set.m(), found: bounds.len() });
            }
            check_bounds(bounds)?;
            Ok(Some(bounds.clone()))
        }
    }
}

pub(crate) fn check_bounds(bounds: &[(f64, f64)]) -> Result<()> {
    for (k, &(lo, hi)) in bounds.iter().enumerate() {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidBounds { index: k, lo, hi });
        }
    }
    Ok(())
}

/// Applies `mode` to every objective.
pub fn normalize(set: &SolutionSet, mode: &NormalizationMode) -> Result<SolutionSet> {
    match normalization_bounds(set, mode)? {
        None => Ok(set.clone()),
        Some(bounds) => Ok(set.map_values(|k, v| {
            let (lo, hi) = bounds[k];
            (v - lo) / (hi - lo)
        })),
    }
}

/// CSV ingestion options. `maximize` holds zero-based column indices.
#[derive(Debug, Clone, Default)]
pub struct LoadOptions {
    pub has_header: bool,
    pub maximize: Vec<usize>,
}

pub fn load_csv(path: impl AsRef<Path>, options: &LoadOptions) -> Result<SolutionSet> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    read_csv(file, options)
}

/// Parses CSV text from any reader. Row numbers in errors are 1-based
/// physical records, counting the header when present.
pub fn read_csv<R: Read>(reader: R, options: &LoadOptions) -> Result<SolutionSet> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut names: Option<Vec<String>> = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width: Option<usize> = None;

    for (idx, record) in rdr.records().enumerate() {
        let row = idx + 1;
        let record = record.map_err(|e| Error::Io {
            path: "<csv>".into(),
            message: e.to_string(),
        })?;
        // blank lines are skipped by the csv reader; a lone empty field is too
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        match width {
            None => {
                if record.len() < 2 {
                    return Err(Error::Dimension { expected: 2, found: record.len() });
                }
                width = Some(record.len());
            }
            Some(w) if w != record.len() => {
                return Err(Error::RaggedRow { row, expected: w, found: record.len() });
            }
            _ => {}
        }
        if options.has_header && names.is_none() {
            names = Some(record.iter().map(str::to_owned).collect());
            continue;
        }
        let values = record
            .iter()
            .enumerate()
            .map(|(c, cell)| match cell.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(Error::Parse { row, column: c + 1, cell: cell.to_owned() }),
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(values);
    }

    let m = width.ok_or(Error::EmptySet)?;
    if rows.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut sense = vec![Sense::Minimize; m];
    for &k in &options.maximize {
        if k >= m {
            return Err(Error::ObjectiveIndex { index: k, m });
        }
        sense[k] = Sense::Maximize;
    }
    SolutionSet::with_metadata(rows, names.unwrap_or_else(|| default_names(m)), sense)
}

/// Formats with 17 significant digits, enough to round-trip any `f64`.
pub fn format_exact(v: f64) -> String {
    format!("{v:.16e}")
}

/// Writes the set as CSV in problem units: header row always present,
/// values printed with 17 significant digits.
pub fn write_csv<W: Write>(set: &SolutionSet, writer: W) -> Result<()> {
    let io_err = |e: csv::Error| Error::Io { path: "<csv>".into(), message: e.to_string() };
    let mut wtr = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
    wtr.write_record(set.names()).map_err(io_err)?;
    for s in set.solutions() {
        wtr.write_record(s.iter().map(|&v| format_exact(v))).map_err(io_err)?;
    }
    wtr.flush().map_err(|e| Error::Io { path: "<csv>".into(), message: e.to_string() })
}

pub fn to_csv_string(set: &SolutionSet) -> String {
    let mut buf = Vec::new();
    write_csv(set, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("csv output is UTF-8")
}
