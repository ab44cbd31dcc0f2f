use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the analysis and rendering routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("I/O error on {path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("format error at row {row}: expected {expected} columns, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("parse error at row {row}, column {column}: {cell:?} is not a finite real number")]
    Parse {
        row: usize,
        column: usize,
        cell: String,
    },

    #[error("dimension mismatch: expected {expected} objectives, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("solution set is empty")]
    EmptySet,

    #[error("need at least {needed} solutions, found {found}")]
    InsufficientData { needed: usize, found: usize },

    #[error("objective {name} is constant ({value}); the axis has zero range")]
    DegenerateAxis { name: String, value: f64 },

    #[error("invalid bounds for objective {index}: lo={lo}, hi={hi}")]
    InvalidBounds { index: usize, lo: f64, hi: f64 },

    #[error("invalid permutation {0:?}")]
    Permutation(Vec<usize>),

    #[error("objective index {index} out of range for {m} objectives")]
    ObjectiveIndex { index: usize, m: usize },

    #[error("slope k = 1: the lines are parallel between the axes and have no finite dual point")]
    ParallelLines,

    #[error("dual point lies on the left axis (u = 0): the line is vertical")]
    VerticalLine,

    #[error("the two segments coincide: infinitely many intersections")]
    CoincidentSegments,

    #[error("cannot regress on constant objective {name}")]
    DegenerateRegression { name: String },

    #[error("exhaustive search is limited to m <= {limit} objectives (got {m}); use the heuristic search")]
    SearchSize { m: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
