//! Browser bindings for the static demo page in `www/`.
//!
//! Three operations are exposed: generating a solution set, rendering it as
//! a parallel-coordinates SVG with an optional automatic axis order, and a
//! per-pair conflict/dependence report.

use std::fmt::Write;

use pareto_lens::conflict::{conflict_matrix, order_axes, OrderMode, Search, EXHAUSTIVE_LIMIT};
use pareto_lens::duality::{all_pair_reports, DEFAULT_FIT_THRESHOLD};
use pareto_lens::generate::{generate_mldmp, generate_simplex_front, generate_sphere_front};
use pareto_lens::model::{read_csv, to_csv_string};
use pareto_lens::render::{render, PlotSpec};
use pareto_lens::{LoadOptions, NormalizationMode, SolutionSet};
use wasm_bindgen::prelude::*;

fn parse(csv: &str) -> Result<SolutionSet, String> {
    let has_header = csv
        .lines()
        .find(|l| !l.trim().is_empty())
        .is_some_and(|l| l.split(',').any(|c| c.trim().parse::<f64>().is_err()));
    read_csv(csv.as_bytes(), &LoadOptions { has_header, maximize: Vec::new() }).map_err(|e| e.to_string())
}

fn mode(name: &str) -> Result<Option<OrderMode>, String> {
    match name {
        "" | "none" => Ok(None),
        "harmony" => Ok(Some(OrderMode::MaxHarmony)),
        "conflict" => Ok(Some(OrderMode::MaxConflict)),
        "clutter" => Ok(Some(OrderMode::MinClutter)),
        other => Err(format!("unknown order mode {other:?}")),
    }
}

pub fn generate_text(kind: &str, m: usize, n: usize, seed: u64) -> Result<String, String> {
    let set = match kind {
        "mldmp" => generate_mldmp(m, n, seed),
        "simplex" => generate_simplex_front(m, n, seed),
        "sphere" => generate_sphere_front(m, n, seed),
        other => return Err(format!("unknown generator {other:?}")),
    }
    .map_err(|e| e.to_string())?;
    Ok(to_csv_string(&set.objectives))
}

pub fn plot_text(csv: &str, order_mode: &str, shared_scale: bool, width: f64, height: f64) -> Result<String, String> {
    let set = parse(csv)?;
    let axis_order = match mode(order_mode)? {
        None => None,
        Some(mode) => {
            let search = if set.m() <= EXHAUSTIVE_LIMIT { Search::Exhaustive } else { Search::Heuristic };
            Some(order_axes(&set, mode, search).map_err(|e| e.to_string())?.permutation)
        }
    };
    let spec = PlotSpec {
        width,
        height,
        normalization: if shared_scale { NormalizationMode::None } else { NormalizationMode::PerAxisMinMax },
        axis_order,
        ..PlotSpec::default()
    };
    render(&set, &spec).map(|svg| svg.text).map_err(|e| e.to_string())
}

pub fn conflict_text(csv: &str) -> Result<String, String> {
    let set = parse(csv)?;
    let matrix = conflict_matrix(&set).map_err(|e| e.to_string())?;
    let reports = all_pair_reports(&set, DEFAULT_FIT_THRESHOLD, 0).map_err(|e| e.to_string())?;
    let mut out = format!("{:<8}{:>8}{:>10}{:>8}  {:<16}{}\n", "pair", "degree", "k", "r2", "class", "verdict");
    for r in &reports {
        let (i, j) = r.pair;
        let pair = format!("{},{}", set.names()[i], set.names()[j]);
        let _ = writeln!(
            out,
            "{:<8}{:>8.3}{:>10.3}{:>8.3}  {:<16}{}",
            pair,
            matrix.degree(i, j),
            r.fitted.k,
            r.r_squared,
            r.slope_class.as_str(),
            r.verdict.as_str()
        );
    }
    Ok(out)
}

/// CSV text for `kind` in `mldmp | simplex | sphere`.
#[wasm_bindgen]
pub fn generate(kind: &str, m: usize, n: usize, seed: u32) -> Result<String, JsValue> {
    generate_text(kind, m, n, u64::from(seed)).map_err(|e| JsValue::from_str(&e))
}

/// SVG for the CSV text. `order_mode` is `none | harmony | conflict | clutter`.
#[wasm_bindgen]
pub fn plot(csv: &str, order_mode: &str, shared_scale: bool, width: f64, height: f64) -> Result<String, JsValue> {
    plot_text(csv, order_mode, shared_scale, width, height).map_err(|e| JsValue::from_str(&e))
}

/// Plain-text table of conflict degrees and linear-dependence verdicts.
#[wasm_bindgen]
pub fn conflict(csv: &str) -> Result<String, JsValue> {
    conflict_text(csv).map_err(|e| JsValue::from_str(&e))
}
