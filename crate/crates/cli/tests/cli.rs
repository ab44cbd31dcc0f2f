use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pareto-lens"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

const SAMPLE: &str = "f1,f2,f3,f4\n15,31,20,50\n10,18,2,30\n20,5,32,20\n";

#[test]
fn help_lists_subcommands() {
    let o = run(&["--help"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for cmd in ["plot", "metrics", "conflict", "order", "generate"] {
        assert!(text.contains(cmd), "{cmd} missing from help");
    }
    let order = stdout(&run(&["order", "--help"]));
    for mode in ["harmony", "conflict", "clutter"] {
        assert!(order.contains(mode));
    }
    let v = run(&["--version"]);
    assert_eq!(stdout(&v).trim(), format!("pareto-lens {}", env!("CARGO_PKG_VERSION")));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.csv", SAMPLE);
    let two = write(dir.path(), "two.csv", "1,2\n3,4\n");
    let ragged = write(dir.path(), "bad.csv", "1,2,3\n4,5\n");

    assert_eq!(run(&["metrics", &a]).status.code(), Some(0));
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["order", &a]).status.code(), Some(2));
    assert_eq!(run(&["plot", &a, "--order", "sideways"]).status.code(), Some(2));

    let mismatch = run(&["metrics", &a, "--ref", &two]);
    assert_eq!(mismatch.status.code(), Some(1));
    let err = String::from_utf8_lossy(&mismatch.stderr);
    assert!(err.contains('4') && err.contains('2'), "{err}");

    let r = run(&["conflict", &ragged]);
    assert_eq!(r.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&r.stderr).contains("row"));

    let missing = dir.path().join("nope.csv");
    assert_eq!(run(&["plot", missing.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn metrics_key_values_are_exact_numbers() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.csv", SAMPLE);
    let b = write(dir.path(), "b.csv", "f1,f2,f3,f4\n16,32,21,51\n11,19,3,31\n");
    let o = run(&["metrics", &a, "--ref", &a, "--compare", &b]);
    assert!(o.status.success());
    let text = stdout(&o);
    let kv = text.split("\n\n").last().unwrap();
    let mut keys = Vec::new();
    for line in kv.lines() {
        let (key, value) = line.split_once('=').unwrap();
        keys.push(key.to_owned());
        let integer = value.strip_prefix('-').unwrap_or(value).chars().all(|c| c.is_ascii_digit());
        let exact = {
            let v = value.strip_prefix('-').unwrap_or(value);
            let (mantissa, exp) = v.split_once('e').unwrap_or(("", ""));
            let exp = exp.strip_prefix('-').unwrap_or(exp);
            mantissa.len() == 18
                && mantissa.as_bytes()[0].is_ascii_digit()
                && mantissa.as_bytes()[1] == b'.'
                && mantissa[2..].chars().all(|c| c.is_ascii_digit())
                && !exp.is_empty()
                && exp.chars().all(|c| c.is_ascii_digit())
        };
        assert!(integer || exact, "{line}");
    }
    for key in ["n", "m", "gd_plus", "spacing", "maximum_spread", "coverage_fraction_1", "spacing_pairwise_2", "gaps.4"] {
        assert!(keys.iter().any(|k| k == key), "{key} missing");
    }
    assert!(kv.contains("gd_plus=0.0000000000000000e0"));
    assert!(kv.contains("spacing_pairwise_1=0.0000000000000000e0\n") && kv.contains("spacing_pairwise_2=1.0000000000000000e0\n"));
}

#[test]
fn every_subcommand_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.csv", SAMPLE);
    let cases: Vec<Vec<&str>> = vec![
        vec!["generate", "sphere", "--m", "4", "--n", "50", "--seed", "3"],
        vec!["plot", &a, "--order", "auto-clutter"],
        vec!["metrics", &a, "--ref", &a],
        vec!["conflict", &a, "--seed", "5"],
        vec!["order", &a, "--mode", "conflict"],
    ];
    for args in cases {
        let first = run(&args);
        assert!(first.status.success(), "{args:?}");
        assert!(!first.stdout.is_empty());
        assert_eq!(first.stdout, run(&args).stdout, "{args:?}");
    }
}

#[test]
fn plot_writes_file_and_reads_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("plot.svg");
    let o = run_stdin(&["plot", "-o", out.to_str().unwrap(), "--title", "demo"], SAMPLE.as_bytes());
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let svg = std::fs::read_to_string(&out).unwrap();
    assert!(svg.starts_with("<?xml"));
    assert_eq!(svg.matches("<polyline ").count(), 3);
    assert!(svg.contains("demo"));
}

#[test]
fn generate_round_trips_through_metrics() {
    let g = run(&["generate", "simplex", "--m", "5", "--n", "30", "--seed", "11"]);
    assert!(g.status.success());
    let csv = stdout(&g);
    assert_eq!(csv.lines().count(), 31);
    let m = run_stdin(&["metrics", "-"], csv.as_bytes());
    assert!(stdout(&m).contains("\nn=30\nm=5\n"));
}

#[test]
fn order_reports_budget() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.csv", SAMPLE);
    let text = stdout(&run(&["order", &a, "--mode", "clutter", "--exhaustive"]));
    assert!(text.contains("mode=min_clutter\n"));
    assert!(text.contains("search=exhaustive\n"));
    assert!(text.contains("showing 3 of 6 pairwise relations"));
}

#[test]
fn maximize_flag_changes_dominance_filtering() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "a.csv", "1,1\n2,2\n");
    let min = stdout(&run(&["metrics", &a, "--filter-dominated"]));
    let max = stdout(&run(&["metrics", &a, "--filter-dominated", "--maximize", "1,2"]));
    assert!(min.contains("\nn=1\n") && min.contains("range_min.1=1.0000000000000000e0"));
    assert!(max.contains("\nn=1\n") && max.contains("range_min.1=2.0000000000000000e0"));
}
