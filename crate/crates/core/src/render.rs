//! Deterministic SVG parallel-coordinates plots.
//!
//! Each objective is a vertical axis, equally spaced across the drawable
//! width in display order; each solution is one polyline whose vertex on an
//! axis sits at the height of its (normalized) value, larger values higher.
//! Elements are emitted in a fixed order (axes, polylines, labels) and all
//! coordinates are printed with two decimals, so identical input always
//! yields identical bytes.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::model::{check_bounds, check_permutation, NormalizationMode, SolutionSet};

/// Comparison palette, used in group order.
pub const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];
pub const DEFAULT_OPACITY: f64 = 0.35;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Margins {
    pub top: f64,
    pub right: f64,
    pub bottom: f64,
    pub left: f64,
}

impl Default for Margins {
    fn default() -> Self {
        Margins { top: 40.0, right: 60.0, bottom: 50.0, left: 60.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupStyle {
    pub label: String,
    /// `#rrggbb`
    pub color: String,
    pub opacity: f64,
}

/// Assignment of every solution to one of `styles`.
#[derive(Debug, Clone, PartialEq)]
pub struct Groups {
    pub assignment: Vec<usize>,
    pub styles: Vec<GroupStyle>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub width: f64,
    pub height: f64,
    pub margins: Margins,
    /// `None` plots raw values on one vertical scale shared by all axes.
    pub normalization: NormalizationMode,
    /// Objective shown at each axis position; identity when absent.
    pub axis_order: Option<Vec<usize>>,
    pub groups: Option<Groups>,
    pub stroke_width: f64,
    pub show_ticks: bool,
    pub title: Option<String>,
}

impl Default for PlotSpec {
    fn default() -> Self {
        PlotSpec {
            width: 800.0,
            height: 400.0,
            margins: Margins::default(),
            normalization: NormalizationMode::PerAxisMinMax,
            axis_order: None,
            groups: None,
            stroke_width: 1.0,
            show_ticks: true,
            title: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvgDocument {
    pub text: String,
}

impl SvgDocument {
    pub fn as_str(&self) -> &str {
        &self.text
    }
}

fn is_hex_color(s: &str) -> bool {
    s.len() == 7 && s.starts_with('#') && s[1..].chars().all(|c| c.is_ascii_hexdigit())
}

fn validate(set: &SolutionSet, spec: &PlotSpec) -> Result<Vec<usize>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let m = &spec.margins;
    let positive = |v: f64| v.is_finite() && v > 0.0;
    let nonneg = |v: f64| v.is_finite() && v >= 0.0;
    if !(positive(spec.width) && positive(spec.height) && positive(spec.stroke_width))
        || ![m.top, m.right, m.bottom, m.left].into_iter().all(nonneg)
        || spec.width - m.left - m.right <= 0.0
        || spec.height - m.top - m.bottom <= 0.0
    {
        return Err(Error::InvalidArgument("plot geometry leaves no drawable area".into()));
    }
    let order = match &spec.axis_order {
        Some(order) => {
            check_permutation(order, set.m())?;
            order.clone()
        }
        None => (0..set.m()).collect(),
    };
    if let Some(groups) = &spec.groups {
        if groups.assignment.len() != set.len() {
            return Err(Error::InvalidArgument(format!(
                "group assignment covers {} solutions, set has {}",
                groups.assignment.len(),
                set.len()
            )));
        }
        if let Some(&g) = groups.assignment.iter().find(|&&g| g >= groups.styles.len()) {
            return Err(Error::InvalidArgument(format!("unknown group {g}")));
        }
        for style in &groups.styles {
            if !is_hex_color(&style.color) {
                return Err(Error::InvalidArgument(format!("bad color {:?}", style.color)));
            }
            if !(style.opacity > 0.0 && style.opacity <= 1.0) {
                return Err(Error::InvalidArgument(format!("opacity {} outside (0, 1]", style.opacity)));
            }
        }
    }
    Ok(order)
}

/// Per-objective `(lo, hi)` mapped to the bottom and top of the axis.
pub fn axis_scales(set: &SolutionSet, mode: &NormalizationMode) -> Result<Vec<(f64, f64)>> {
    match mode {
        NormalizationMode::PerAxisMinMax => {
            crate::model::normalization_bounds(set, mode).map(|b| b.expect("min-max has bounds"))
        }
        NormalizationMode::Explicit(bounds) => {
            if bounds.len() != set.m() {
                return Err(Error::Dimension { expected: set.m(), found: bounds.len() });
            }
            check_bounds(bounds)?;
            Ok(bounds.clone())
        }
        NormalizationMode::None => {
            let (lo, hi) = set
                .ranges()
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &(l, h)| (a.min(l), b.max(h)));
            if lo >= hi {
                return Err(Error::DegenerateAxis { name: "all objectives".into(), value: lo });
            }
            Ok(vec![(lo, hi); set.m()])
        }
    }
}

/// Two-decimal fixed point, without a negative zero.
fn coord(v: f64) -> String {
    let s = format!("{v:.2}");
    if s == "-0.00" {
        "0.00".to_owned()
    } else {
        s
    }
}

fn tick_label(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 {
        "0".to_owned()
    } else if (1e-3..1e6).contains(&a) {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        format!("{v:.3e}")
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Horizontal pixel position of axis slot `t` of `m`.
pub fn axis_x(spec: &PlotSpec, t: usize, m: usize) -> f64 {
    let w = spec.width - spec.margins.left - spec.margins.right;
    spec.margins.left + w * t as f64 / (m - 1) as f64
}

/// Vertical pixel position of a value already mapped to `[0, 1]`.
pub fn value_y(spec: &PlotSpec, t: f64) -> f64 {
    let h = spec.height - spec.margins.top - spec.margins.bottom;
    spec.margins.top + (1.0 - t) * h
}

pub fn render(set: &SolutionSet, spec: &PlotSpec) -> Result<SvgDocument> {
    let order = validate(set, spec)?;
    let scales = axis_scales(set, &spec.normalization)?;
    let m = set.m();
    let (w, h) = (spec.width, spec.height);
    let top = spec.margins.top;
    let bottom = h - spec.margins.bottom;
    let xs: Vec<f64> = (0..m).map(|t| axis_x(spec, t, m)).collect();

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        coord(w),
        coord(h),
        coord(w),
        coord(h)
    );
    out.push_str("<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");

    out.push_str("<g class=\"axes\" stroke=\"#333333\" stroke-width=\"1\">\n");
    for &x in &xs {
        let _ = writeln!(out, "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\"/>", coord(x), coord(top), coord(bottom));
    }
    out.push_str("</g>\n");

    let default_style = GroupStyle { label: String::new(), color: PALETTE[0].to_owned(), opacity: DEFAULT_OPACITY };
    let _ = writeln!(
        out,
        "<g class=\"polylines\" fill=\"none\" stroke-width=\"{}\" stroke-linejoin=\"round\">",
        coord(spec.stroke_width)
    );
    for (idx, s) in set.solutions().iter().enumerate() {
        let style = match &spec.groups {
            Some(g) => &g.styles[g.assignment[idx]],
            None => &default_style,
        };
        let points: Vec<String> = order
            .iter()
            .zip(&xs)
            .map(|(&k, &x)| {
                let (lo, hi) = scales[k];
                format!("{},{}", coord(x), coord(value_y(spec, (s[k] - lo) / (hi - lo))))
            })
            .collect();
        let _ = writeln!(
            out,
            "<polyline points=\"{}\" stroke=\"{}\" stroke-opacity=\"{}\"/>",
            points.join(" "),
            style.color,
            tick_label(style.opacity)
        );
    }
    out.push_str("</g>\n");

    out.push_str("<g class=\"labels\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222222\" text-anchor=\"middle\">\n");
    for (&k, &x) in order.iter().zip(&xs) {
        let _ = writeln!(out, "<text x=\"{}\" y=\"{}\">{}</text>", coord(x), coord(bottom + 34.0), escape(&set.names()[k]));
        if spec.show_ticks {
            let (lo, hi) = scales[k];
            let _ = writeln!(out, "<text x=\"{}\" y=\"{}\">{}</text>", coord(x), coord(top - 6.0), tick_label(hi));
            let _ = writeln!(out, "<text x=\"{}\" y=\"{}\">{}</text>", coord(x), coord(bottom + 16.0), tick_label(lo));
        }
    }
    if let Some(title) = &spec.title {
        let _ = writeln!(out, "<text x=\"{}\" y=\"16.00\" font-size=\"14\">{}</text>", coord(w / 2.0), escape(title));
    }
    if let Some(groups) = &spec.groups {
        for (g, style) in groups.styles.iter().enumerate() {
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" fill=\"{}\">{}</text>",
                coord(w - 4.0),
                coord(14.0 + 14.0 * g as f64),
                style.color,
                escape(&style.label)
            );
        }
    }
    out.push_str("</g>\n</svg>\n");
    Ok(SvgDocument { text: out })
}

/// Both sets on shared axes, scaled over their union, one palette color per
/// set. `labels` name the two groups.
pub fn render_comparison(s1: &SolutionSet, s2: &SolutionSet, spec: &PlotSpec, labels: [&str; 2]) -> Result<SvgDocument> {
    if s1.is_empty() || s2.is_empty() {
        return Err(Error::EmptySet);
    }
    let union = s1.concat(s2)?;
    let assignment = (0..union.len()).map(|i| usize::from(i >= s1.len())).collect();
    let styles = labels
        .iter()
        .zip(PALETTE)
        .map(|(label, color)| GroupStyle { label: (*label).to_owned(), color: color.to_owned(), opacity: DEFAULT_OPACITY })
        .collect();
    let spec = PlotSpec { groups: Some(Groups { assignment, styles }), ..spec.clone() };
    render(&union, &spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample3() -> SolutionSet {
        SolutionSet::new(vec![
            vec![15.0, 31.0, 20.0, 50.0],
            vec![10.0, 18.0, 2.0, 30.0],
            vec![20.0, 5.0, 32.0, 20.0],
        ])
        .unwrap()
    }

    fn polylines(svg: &str) -> Vec<Vec<(f64, f64)>> {
        svg.lines()
            .filter_map(|l| l.strip_prefix("<polyline points=\""))
            .map(|rest| {
                rest.split('"').next().unwrap()
                    .split(' ')
                    .map(|p| {
                        let (x, y) = p.split_once(',').unwrap();
                        (x.parse().unwrap(), y.parse().unwrap())
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn sample3_structure() {
        let spec = PlotSpec::default();
        let svg = render(&sample3(), &spec).unwrap();
        let text = svg.as_str();
        assert_eq!(text.matches("<line ").count(), 4);
        assert_eq!(text.matches("<polyline ").count(), 3);
        for name in ["f1", "f2", "f3", "f4"] {
            assert!(text.contains(&format!(">{name}</text>")));
        }
        let lines = polylines(text);
        let bottom = spec.height - spec.margins.bottom;
        assert_eq!(lines[1][2].1, bottom);
        assert_eq!(lines[2][2].1, spec.margins.top);
        assert_eq!(render(&sample3(), &spec).unwrap(), svg);
    }

    #[test]
    fn single_solution() {
        let s = SolutionSet::new(vec![vec![1.0, 2.0, 3.0]]).unwrap();
        let spec = PlotSpec { normalization: NormalizationMode::None, ..Default::default() };
        let svg = render(&s, &spec).unwrap();
        assert_eq!(polylines(svg.as_str()).len(), 1);
        assert_eq!(polylines(svg.as_str())[0].len(), 3);
    }

    #[test]
    fn errors() {
        let flat = SolutionSet::new(vec![vec![1.0, 2.0], vec![3.0, 2.0]]).unwrap();
        assert!(matches!(render(&flat, &PlotSpec::default()), Err(Error::DegenerateAxis { .. })));
        let spec = PlotSpec { axis_order: Some(vec![0, 0, 1, 2]), ..Default::default() };
        assert!(matches!(render(&sample3(), &spec), Err(Error::Permutation(_))));
        let spec = PlotSpec { width: 100.0, ..Default::default() };
        assert!(render(&sample3(), &spec).is_err());
        let two = SolutionSet::new(vec![vec![0.0, 1.0]]).unwrap();
        assert!(matches!(render_comparison(&sample3(), &two, &PlotSpec::default(), ["a", "b"]), Err(Error::Dimension { .. })));
        let empty = sample3().select(&[]);
        assert_eq!(render_comparison(&sample3(), &empty, &PlotSpec::default(), ["a", "b"]).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn comparison_bands_and_overlay() {
        let s1 = SolutionSet::new(vec![vec![0.0, 0.0], vec![1.0, 1.0]]).unwrap();
        let s2 = SolutionSet::new(vec![vec![2.0, 2.0], vec![3.0, 3.0]]).unwrap();
        let spec = PlotSpec::default();
        let svg = render_comparison(&s1, &s2, &spec, ["a", "b"]).unwrap();
        let lines = polylines(svg.as_str());
        let h = spec.height - spec.margins.top - spec.margins.bottom;
        let lower_third = spec.margins.top + h * 2.0 / 3.0;
        for line in &lines[..2] {
            assert!(line.iter().all(|&(_, y)| y >= lower_third - 1e-9));
        }
        assert!(svg.as_str().contains(PALETTE[1]));

        let same = render_comparison(&s1, &s1, &spec, ["a", "b"]).unwrap();
        let lines = polylines(same.as_str());
        assert_eq!(lines[0], lines[2]);
        assert_eq!(lines[1], lines[3]);
    }

    #[test]
    fn escapes_names() {
        let s = SolutionSet::with_metadata(
            vec![vec![0.0, 1.0], vec![1.0, 0.0]],
            vec!["a<b".into(), "c&d".into()],
            vec![Default::default(); 2],
        )
        .unwrap();
        let svg = render(&s, &PlotSpec { title: Some("\"t\"".into()), ..Default::default() }).unwrap();
        assert!(svg.as_str().contains("a&lt;b") && svg.as_str().contains("c&amp;d") && svg.as_str().contains("&quot;t&quot;"));
    }

    #[test]
    fn formatting() {
        assert_eq!(coord(-0.001), "0.00");
        assert_eq!(coord(12.346), "12.35");
        assert_eq!(tick_label(0.35), "0.35");
        assert_eq!(tick_label(20.0), "20");
        assert_eq!(tick_label(1.5e-7), "1.500e-7");
    }
}
