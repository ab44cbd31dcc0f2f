//! Argument parsing and dispatch for the `pareto-lens` command.
//!
//! Exit codes: 0 on success, 1 on domain failures (bad data, degenerate
//! axes, dimension mismatches, I/O), 2 on usage errors.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pareto_lens::conflict::{conflict_matrix, order_axes, relationship_budget, OrderMode, Search, EXHAUSTIVE_LIMIT};
use pareto_lens::dominance::{nondominated_filter, set_dominance, SetDominance};
use pareto_lens::duality::{all_pair_reports, DEFAULT_FIT_THRESHOLD};
use pareto_lens::generate::{generate_mldmp, generate_simplex_front, generate_sphere_front};
use pareto_lens::metrics::{axis_reach, grid_coverage, metric_report, spacing_pairwise, DEFAULT_DIVISIONS, DEFAULT_GAP_THRESHOLD};
use pareto_lens::model::{format_exact, read_csv, to_csv_string};
use pareto_lens::render::{render, render_comparison, PlotSpec};
use pareto_lens::{LoadOptions, NormalizationMode, SolutionSet};

#[derive(Parser, Debug)]
#[command(name = "pareto-lens", version, about = "Analyze many-objective solution sets and plot them in parallel coordinates")]
#[command(arg_required_else_help = true)]
pub struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Suppress informational messages on stderr.
    #[arg(long, short, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Render a parallel-coordinates SVG.
    Plot(PlotArgs),
    /// Quality indicators: GD+, spacing, maximum spread, coverage, axis reach.
    Metrics(MetricsArgs),
    /// Per objective pair: crossings, fitted line, slope class and dependence verdict.
    Conflict(ConflictArgs),
    /// Choose an axis order.
    Order(OrderArgs),
    /// Generate a synthetic solution set.
    Generate(GenerateArgs),
}

#[derive(Args, Debug)]
pub struct InputArgs {
    /// Input CSV; reads stdin when omitted or `-`.
    pub input: Option<PathBuf>,

    /// Treat the first row as a header (default: detect non-numeric first row).
    #[arg(long, conflicts_with = "no_header")]
    pub header: bool,

    /// Treat the first row as data.
    #[arg(long)]
    pub no_header: bool,

    /// Comma-separated 1-based objectives to maximize.
    #[arg(long, value_delimiter = ',')]
    pub maximize: Vec<usize>,

    /// Drop dominated solutions before processing.
    #[arg(long)]
    pub filter_dominated: bool,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Output SVG; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,

    /// auto-harmony | auto-conflict | auto-clutter | i1,i2,... (1-based)
    #[arg(long, value_parser = parse_order)]
    pub order: Option<OrderChoice>,

    /// minmax | none | lo1:hi1,lo2:hi2,...
    #[arg(long, value_parser = parse_normalization, default_value = "minmax")]
    pub normalize: NormalizationMode,

    /// Second set drawn on the same axes.
    #[arg(long)]
    pub compare: Option<PathBuf>,

    #[arg(long, default_value_t = 800.0)]
    pub width: f64,

    #[arg(long, default_value_t = 400.0)]
    pub height: f64,

    #[arg(long)]
    pub title: Option<String>,

    /// Omit the min/max labels on each axis.
    #[arg(long)]
    pub no_ticks: bool,
}

#[derive(Args, Debug)]
pub struct MetricsArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Reference set for GD+.
    #[arg(long = "ref")]
    pub reference: Option<PathBuf>,

    /// Second set for coverage and pairwise spacing.
    #[arg(long)]
    pub compare: Option<PathBuf>,

    #[arg(long, default_value_t = DEFAULT_DIVISIONS)]
    pub divisions: usize,

    /// Minimum reported gap, as a fraction of each axis range.
    #[arg(long, default_value_t = DEFAULT_GAP_THRESHOLD)]
    pub gap_threshold: f64,
}

#[derive(Args, Debug)]
pub struct ConflictArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Minimum r^2 for a linear-dependence verdict.
    #[arg(long, default_value_t = DEFAULT_FIT_THRESHOLD)]
    pub fit_threshold: f64,
}

#[derive(Args, Debug)]
pub struct OrderArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// harmony: most harmonious neighbours; conflict: most conflicting
    /// neighbours; clutter: fewest crossings overall.
    #[arg(long, value_enum)]
    pub mode: ModeArg,

    /// Enumerate every order (m <= 9) instead of nearest-neighbour + 2-opt.
    #[arg(long)]
    pub exhaustive: bool,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(value_enum)]
    pub kind: GenerateKind,

    /// Number of objectives.
    #[arg(long)]
    pub m: usize,

    /// Number of solutions.
    #[arg(long)]
    pub n: usize,

    /// Also write the 2D decision points (mldmp only).
    #[arg(long)]
    pub decision_out: Option<PathBuf>,

    /// Output CSV; stdout when omitted.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Harmony,
    Conflict,
    Clutter,
}

impl From<ModeArg> for OrderMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Harmony => OrderMode::MaxHarmony,
            ModeArg::Conflict => OrderMode::MaxConflict,
            ModeArg::Clutter => OrderMode::MinClutter,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenerateKind {
    Mldmp,
    Simplex,
    Sphere,
}

#[derive(Clone, Debug, PartialEq)]
pub enum OrderChoice {
    Auto(OrderMode),
    /// Zero-based.
    Explicit(Vec<usize>),
}

fn parse_order(s: &str) -> Result<OrderChoice, String> {
    match s {
        "auto-harmony" => Ok(OrderChoice::Auto(OrderMode::MaxHarmony)),
        "auto-conflict" => Ok(OrderChoice::Auto(OrderMode::MaxConflict)),
        "auto-clutter" => Ok(OrderChoice::Auto(OrderMode::MinClutter)),
        _ => s
            .split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(i) if i >= 1 => Ok(i - 1),
                _ => Err(format!("expected auto-harmony|auto-conflict|auto-clutter or 1-based indices, got {s:?}")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(OrderChoice::Explicit),
    }
}

fn parse_normalization(s: &str) -> Result<NormalizationMode, String> {
    match s {
        "minmax" => Ok(NormalizationMode::PerAxisMinMax),
        "none" => Ok(NormalizationMode::None),
        _ => s
            .split(',')
            .map(|pair| {
                let (lo, hi) = pair.split_once(':').ok_or_else(|| format!("bad bounds {pair:?}, expected lo:hi"))?;
                let lo: f64 = lo.trim().parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
                let hi: f64 = hi.trim().parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
                Ok((lo, hi))
            })
            .collect::<Result<Vec<_>, String>>()
            .map(NormalizationMode::Explicit),
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl From<pareto_lens::Error> for Failure {
    fn from(e: pareto_lens::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Domain(format!("{}: {e}", path.display()))
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    quiet: bool,
}

impl Io<'_> {
    fn note(&mut self, msg: &str) {
        if !self.quiet {
            let _ = writeln!(self.stderr, "{msg}");
        }
    }

    fn emit(&mut self, output: Option<&Path>, text: &str) -> Result<(), Failure> {
        match output {
            Some(path) => {
                std::fs::write(path, text).map_err(|e| io_failure(path, e))?;
                self.note(&format!("wrote {}", path.display()));
                Ok(())
            }
            None => self
                .stdout
                .write_all(text.as_bytes())
                .and_then(|_| self.stdout.flush())
                .map_err(|e| Failure::Domain(format!("stdout: {e}"))),
        }
    }
}

fn looks_like_header(text: &str) -> bool {
    text.lines()
        .find(|l| !l.trim().is_empty())
        .is_some_and(|l| l.split(',').any(|cell| cell.trim().parse::<f64>().is_err()))
}

fn load(io: &mut Io<'_>, path: Option<&Path>, args: &InputArgs) -> Result<SolutionSet, Failure> {
    let text = match path {
        Some(p) if p != Path::new("-") => std::fs::read_to_string(p).map_err(|e| io_failure(p, e))?,
        _ => {
            let mut s = String::new();
            io.stdin.read_to_string(&mut s).map_err(|e| Failure::Domain(format!("stdin: {e}")))?;
            s
        }
    };
    let has_header = if args.header {
        true
    } else if args.no_header {
        false
    } else {
        looks_like_header(&text)
    };
    let maximize = args
        .maximize
        .iter()
        .map(|&i| i.checked_sub(1).ok_or_else(|| Failure::Usage("--maximize indices are 1-based".into())))
        .collect::<Result<Vec<_>, _>>()?;
    let set = read_csv(text.as_bytes(), &LoadOptions { has_header, maximize })?;
    Ok(if args.filter_dominated { nondominated_filter(&set) } else { set })
}

fn load_input(io: &mut Io<'_>, args: &InputArgs) -> Result<SolutionSet, Failure> {
    load(io, args.input.as_deref(), args)
}

/// Secondary sets share the primary set's header and sense options.
fn load_other(io: &mut Io<'_>, path: &Path, args: &InputArgs) -> Result<SolutionSet, Failure> {
    load(io, Some(path), args)
}

fn auto_search(m: usize) -> Search {
    if m <= EXHAUSTIVE_LIMIT {
        Search::Exhaustive
    } else {
        Search::Heuristic
    }
}

fn cmd_plot(io: &mut Io<'_>, args: &PlotArgs) -> Result<(), Failure> {
    let set = load_input(io, &args.input)?;
    let other = args.compare.as_deref().map(|p| load_other(io, p, &args.input)).transpose()?;
    let axis_order = match &args.order {
        None => None,
        Some(OrderChoice::Explicit(order)) => Some(order.clone()),
        Some(OrderChoice::Auto(mode)) => {
            let basis = match &other {
                Some(o) => set.concat(o)?,
                None => set.clone(),
            };
            Some(order_axes(&basis, *mode, auto_search(basis.m()))?.permutation)
        }
    };
    let spec = PlotSpec {
        width: args.width,
        height: args.height,
        normalization: args.normalize.clone(),
        axis_order,
        show_ticks: !args.no_ticks,
        title: args.title.clone(),
        ..PlotSpec::default()
    };
    let svg = match &other {
        Some(o) => render_comparison(&set, o, &spec, ["set 1", "set 2"])?,
        None => render(&set, &spec)?,
    };
    io.emit(args.output.as_deref(), svg.as_str())
}

fn fmt_gaps(gaps: &[(f64, f64)]) -> String {
    if gaps.is_empty() {
        return "-".into();
    }
    gaps.iter().map(|(a, b)| format!("[{a:.6}, {b:.6}]")).collect::<Vec<_>>().join(" ")
}

fn cmd_metrics(io: &mut Io<'_>, args: &MetricsArgs) -> Result<(), Failure> {
    let set = load_input(io, &args.input)?;
    let reference = args.reference.as_deref().map(|p| load_other(io, p, &args.input)).transpose()?;
    let other = args.compare.as_deref().map(|p| load_other(io, p, &args.input)).transpose()?;
    let report = metric_report(&set, reference.as_ref())?;
    let reach = axis_reach(&set, args.gap_threshold)?;

    let mut table = String::new();
    let mut kv = String::new();
    let real = |table: &mut String, kv: &mut String, key: &str, v: f64| {
        let _ = writeln!(table, "{key:<22}{v:.6}");
        let _ = writeln!(kv, "{key}={}", format_exact(v));
    };
    let _ = writeln!(table, "{:<22}{}", "solutions", set.len());
    let _ = writeln!(table, "{:<22}{}", "objectives", set.m());
    let _ = writeln!(kv, "n={}\nm={}", set.len(), set.m());
    if let Some(g) = report.gd_plus {
        real(&mut table, &mut kv, "gd_plus", g);
    }
    if let Some(sp) = report.spacing {
        real(&mut table, &mut kv, "spacing", sp);
    }
    real(&mut table, &mut kv, "maximum_spread", report.maximum_spread);

    if let Some(o) = &other {
        let cov = grid_coverage(&set, o, args.divisions)?;
        let _ = writeln!(kv, "coverage_divisions={}", cov.divisions);
        let _ = writeln!(table, "{:<22}{}", "coverage_divisions", cov.divisions);
        real(&mut table, &mut kv, "coverage_fraction_1", cov.covered_fraction_1);
        real(&mut table, &mut kv, "coverage_fraction_2", cov.covered_fraction_2);
        if set.len() >= 2 && o.len() >= 2 {
            let (a, b) = spacing_pairwise(&set, o)?;
            real(&mut table, &mut kv, "spacing_pairwise_1", a);
            real(&mut table, &mut kv, "spacing_pairwise_2", b);
        }
        let verdict = match set_dominance(&set, o)? {
            SetDominance::FirstDominates => "first set dominates",
            SetDominance::SecondDominates => "second set dominates",
            SetDominance::Neither => "neither set dominates",
        };
        let _ = writeln!(table, "{:<22}{verdict}", "set_dominance");
    }

    let _ = writeln!(table, "\n{:<14}{:>16}{:>16}  gaps", "objective", "min", "max");
    for (k, r) in reach.iter().enumerate() {
        let _ = writeln!(table, "{:<14}{:>16.6}{:>16.6}  {}", set.names()[k], r.min, r.max, fmt_gaps(&r.gaps));
        let _ = writeln!(kv, "range_min.{}={}", k + 1, format_exact(report.per_axis_range[k].0));
        let _ = writeln!(kv, "range_max.{}={}", k + 1, format_exact(report.per_axis_range[k].1));
        let _ = writeln!(kv, "gaps.{}={}", k + 1, r.gaps.len());
    }
    table.push('\n');
    table.push_str(&kv);
    io.emit(None, &table)
}

fn cmd_conflict(io: &mut Io<'_>, args: &ConflictArgs, seed: u64) -> Result<(), Failure> {
    let set = load_input(io, &args.input)?;
    let matrix = conflict_matrix(&set)?;
    let reports = all_pair_reports(&set, args.fit_threshold, seed)?;
    let mut out = String::new();
    for r in &reports {
        let (i, j) = r.pair;
        let _ = writeln!(
            out,
            "pair=({},{}) k={} b={} r2={} class={} verdict={} crossings={} degree={}",
            i + 1,
            j + 1,
            format_exact(r.fitted.k),
            format_exact(r.fitted.b),
            format_exact(r.r_squared),
            r.slope_class.as_str(),
            r.verdict.as_str(),
            matrix.crossings(i, j),
            format_exact(matrix.degree(i, j)),
        );
    }
    io.emit(None, &out)
}

fn cmd_order(io: &mut Io<'_>, args: &OrderArgs) -> Result<(), Failure> {
    let set = load_input(io, &args.input)?;
    let search = if args.exhaustive { Search::Exhaustive } else { Search::Heuristic };
    let order = order_axes(&set, args.mode.into(), search)?;
    let (shown, total) = relationship_budget(set.m())?;
    let perm: Vec<String> = order.permutation.iter().map(|k| (k + 1).to_string()).collect();
    let out = format!(
        "order={}\nmode={}\nsearch={}\nscore={}\nshowing {shown} of {total} pairwise relations\n",
        perm.join(","),
        order.mode.as_str(),
        if args.exhaustive { "exhaustive" } else { "heuristic" },
        format_exact(order.score),
    );
    io.emit(None, &out)
}

fn cmd_generate(io: &mut Io<'_>, args: &GenerateArgs, seed: u64) -> Result<(), Failure> {
    let generated = match args.kind {
        GenerateKind::Mldmp => generate_mldmp(args.m, args.n, seed)?,
        GenerateKind::Simplex => generate_simplex_front(args.m, args.n, seed)?,
        GenerateKind::Sphere => generate_sphere_front(args.m, args.n, seed)?,
    };
    if let Some(path) = &args.decision_out {
        let points = generated
            .decision_points
            .as_ref()
            .ok_or_else(|| Failure::Usage("--decision-out is only available for mldmp".into()))?;
        let mut text = String::from("x,y\n");
        for p in points {
            let _ = writeln!(text, "{},{}", format_exact(p[0]), format_exact(p[1]));
        }
        std::fs::write(path, text).map_err(|e| io_failure(path, e))?;
    }
    io.emit(args.output.as_deref(), &to_csv_string(&generated.objectives))
}

/// Runs the command line `args` (including the program name) and returns
/// the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            if code == 0 {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let mut io = Io { stdin, stdout, stderr, quiet: cli.quiet };
    let result = match &cli.command {
        Command::Plot(a) => cmd_plot(&mut io, a),
        Command::Metrics(a) => cmd_metrics(&mut io, a),
        Command::Conflict(a) => cmd_conflict(&mut io, a, cli.seed),
        Command::Order(a) => cmd_order(&mut io, a),
        Command::Generate(a) => cmd_generate(&mut io, a, cli.seed),
    };
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(io.stderr, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(io.stderr, "error: {msg}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_values() {
        assert_eq!(parse_order("auto-clutter").unwrap(), OrderChoice::Auto(OrderMode::MinClutter));
        assert_eq!(parse_order("2,1,3").unwrap(), OrderChoice::Explicit(vec![1, 0, 2]));
        assert!(parse_order("0,1").is_err());
        assert!(parse_order("auto").is_err());
    }

    #[test]
    fn normalization_values() {
        assert_eq!(parse_normalization("none").unwrap(), NormalizationMode::None);
        assert_eq!(
            parse_normalization("0:1,-2:2.5").unwrap(),
            NormalizationMode::Explicit(vec![(0.0, 1.0), (-2.0, 2.5)])
        );
        assert!(parse_normalization("0-1").is_err());
    }

    #[test]
    fn header_detection() {
        assert!(looks_like_header("f1,f2\n1,2\n"));
        assert!(!looks_like_header("\n1,2\n3,4\n"));
        assert!(!looks_like_header("1.5e-1,-2\n"));
    }
}
