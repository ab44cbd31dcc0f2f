//! Analysis and parallel-coordinates rendering of many-objective solution
//! sets.
//!
//! - [`model`]: solution sets, CSV ingestion and write-back, normalization
//! - [`dominance`]: Pareto comparison and nondominated filtering
//! - [`metrics`]: GD+, Spacing, maximum spread, grid coverage, axis reach
//! - [`duality`]: point/line duality, segment crossings, linear dependence
//! - [`conflict`]: crossing-based conflict degrees and axis-order search
//! - [`generate`]: polygon distance problems and front samplers
//! - [`render`]: deterministic SVG plots

pub mod conflict;
pub mod dominance;
pub mod duality;
pub mod error;
pub mod generate;
pub mod metrics;
pub mod model;
pub mod render;

pub use error::{Error, Result};
pub use model::{LoadOptions, NormalizationMode, ObjectiveVector, Sense, SolutionSet};
