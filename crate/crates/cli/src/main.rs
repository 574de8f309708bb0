use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cheeger_cli::corpus::{run_corpus, summarize, BenchRow, CorpusSpec, TrialsMode};
use cheeger_cli::csv_out::{emit_csv, emit_csv_to_path};
use cheeger_core::{
    arbitrary_vector_sweep, bounds_report_with, classical_sweep, exact_cheeger, parse_edge_list,
    random_sweep, spectrum, ArbitraryVectorSpec, BoundsOptions, Cut64, GeneratorSpec, Graph,
    HProvenance, HValue, SweepResult64,
};

const WORKERS_ENV: &str = "CHEEGER_WORKERS";

#[derive(Parser)]
#[command(
    name = "cheeger",
    version,
    about = "Graph Cheeger constants, spectral bounds, and eigenvector sweep cuts",
    after_help = "Single-graph commands print JSON to stdout; `bench` prints CSV.\n\
                  Exit codes: 0 success, 1 usage error, 2 partial per-graph failures."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphInput {
    /// Edge-list file: one `u v` pair per line, `#` comments allowed.
    #[arg(long, value_name = "PATH", required_unless_present = "gen", conflicts_with = "gen")]
    file: Option<PathBuf>,
    /// Generator expression: path(N), cycle(N), complete(N), star(N),
    /// complete_bipartite(A,B), hypercube(D), petersen, gnp(N,P),
    /// random_regular(N,D).
    #[arg(long = "gen", value_name = "EXPR")]
    gen: Option<String>,
}

impl GraphInput {
    fn load(&self, seed: u64) -> Result<Graph, String> {
        if let Some(path) = &self.file {
            let text =
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            let parsed = parse_edge_list(&text).map_err(|e| e.to_string())?;
            if parsed.duplicates_collapsed > 0 {
                eprintln!(
                    "warning: collapsed {} duplicate edge(s) in {}",
                    parsed.duplicates_collapsed,
                    path.display()
                );
            }
            Ok(parsed.graph)
        } else if let Some(expr) = &self.gen {
            let spec = GeneratorSpec::parse(expr).map_err(|e| e.to_string())?;
            spec.build(seed).map_err(|e| e.to_string())
        } else {
            Err("one of --file or --gen is required".into())
        }
    }
}

/// Trial count: the two protocol modes or an explicit number.
#[derive(Debug, Clone, Copy)]
enum TrialsArg {
    NMinus1,
    NSquared,
    Fixed(u64),
}

impl TrialsArg {
    fn resolve(self, n: usize) -> u64 {
        match self {
            TrialsArg::NMinus1 => (n - 1) as u64,
            TrialsArg::NSquared => (n * n) as u64,
            TrialsArg::Fixed(k) => k,
        }
    }
}

fn parse_trials(s: &str) -> Result<TrialsArg, String> {
    match s {
        "n-1" => Ok(TrialsArg::NMinus1),
        "n2" => Ok(TrialsArg::NSquared),
        other => other
            .parse::<u64>()
            .map(TrialsArg::Fixed)
            .map_err(|_| format!("expected `n-1`, `n2`, or a positive integer, got `{other}`")),
    }
}

fn parse_mode(s: &str) -> Result<TrialsMode, String> {
    s.parse()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepMethodArg {
    /// Deterministic prefix sweep over the sorted eigenvector.
    Classical,
    /// Randomized Bernoulli sweep seeded by the lambda1 eigenvector.
    Random,
    /// Randomized sweep on a unit combination of the first k eigenvectors.
    Arbitrary,
}

#[derive(Subcommand)]
enum Command {
    /// Normalized-Laplacian eigenvalues and eigenvector diagnostics.
    Spectrum {
        #[command(flatten)]
        graph: GraphInput,
        /// Seed for random generators.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Cheeger constant: exact enumeration (n <= 24) or best sweep cut.
    Cheeger {
        #[command(flatten)]
        graph: GraphInput,
        /// Exhaustive enumeration instead of sweeps.
        #[arg(long)]
        exact: bool,
        /// Random-sweep trials for the best-found path.
        #[arg(long, default_value = "n2", value_parser = parse_trials)]
        trials: TrialsArg,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        /// Seed for random generators and sweep trials.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run one sweep method and print the best cut found.
    Sweep {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long, value_enum)]
        method: SweepMethodArg,
        /// `n-1`, `n2`, or an explicit count (ignored by classical).
        #[arg(long, default_value = "n-1", value_parser = parse_trials)]
        trials: TrialsArg,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated coefficients over harmonic eigenvectors 1..=k for
        /// --method arbitrary; L2-normalized before use.
        #[arg(long, value_delimiter = ',', value_name = "A1,A2,...")]
        coeffs: Option<Vec<f64>>,
    },
    /// Full bounds report: spectrum, h, quadratic and linear bounds.
    Bounds {
        #[command(flatten)]
        graph: GraphInput,
        /// Random-sweep trials when n > 24 forces best-found mode.
        #[arg(long, default_value = "n2", value_parser = parse_trials)]
        trials: TrialsArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run both sweep protocols over a corpus and emit CSV.
    Bench {
        /// Corpus file: `name<TAB>source` per line.
        #[arg(long, value_name = "FILE")]
        corpus: PathBuf,
        /// Trial protocol: `n-1` or `n2`.
        #[arg(long, value_parser = parse_mode)]
        mode: TrialsMode,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
        /// Master seed; per-entry streams derive from it and the entry name.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV output path (stdout when omitted).
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Worker threads (default: $CHEEGER_WORKERS, then all cores).
        #[arg(long)]
        workers: Option<usize>,
        /// Keep only graphs with at least this many vertices.
        #[arg(long)]
        n_min: Option<usize>,
        /// Keep only graphs with at most this many vertices.
        #[arg(long)]
        n_max: Option<usize>,
    },
}

#[derive(Serialize)]
struct CheegerOutput {
    h: HValue<f64>,
    cut: Cut64,
}

#[derive(Serialize)]
struct SweepOutput {
    result: SweepResult64,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda_k: Option<f64>,
    /// Arbitrary-vector runs also report the bound term
    /// 1/2 - (1 - lambda_k)/(2 |v|_inf^2 vol G).
    #[serde(skip_serializing_if = "Option::is_none")]
    bound_term: Option<f64>,
}

fn print_json<T: Serialize>(value: &T) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    println!("{text}");
    Ok(())
}

fn cmd_spectrum(graph: GraphInput, seed: u64) -> Result<i32, String> {
    let g = graph.load(seed)?;
    let s = spectrum::<f64>(&g).map_err(|e| e.to_string())?;
    print_json(&s.summary())?;
    Ok(0)
}

fn cmd_cheeger(
    graph: GraphInput,
    exact: bool,
    trials: TrialsArg,
    delta: f64,
    seed: u64,
) -> Result<i32, String> {
    let g = graph.load(seed)?;
    let n = g.n();
    let output = if exact {
        let e = exact_cheeger::<f64>(&g).map_err(|err| err.to_string())?;
        CheegerOutput {
            h: HValue {
                value: e.h,
                provenance: HProvenance::Exact,
            },
            cut: e.argmin,
        }
    } else {
        let s = spectrum::<f64>(&g).map_err(|e| e.to_string())?;
        let v = s.harmonic_lambda1();
        let classical = classical_sweep(&g, v).map_err(|e| e.to_string())?;
        let trials = trials.resolve(n);
        let random = random_sweep(&g, v, trials, delta, seed).map_err(|e| e.to_string())?;
        let best = if random.best.ratio < classical.best.ratio {
            random.best
        } else {
            classical.best
        };
        CheegerOutput {
            h: HValue {
                value: best.ratio,
                provenance: HProvenance::BestFound {
                    classical_trials: classical.trials,
                    random_trials: trials,
                    seed,
                },
            },
            cut: best,
        }
    };
    print_json(&output)?;
    Ok(0)
}

fn cmd_sweep(
    graph: GraphInput,
    method: SweepMethodArg,
    trials: TrialsArg,
    delta: f64,
    seed: u64,
    coeffs: Option<Vec<f64>>,
) -> Result<i32, String> {
    let g = graph.load(seed)?;
    let n = g.n();
    let s = spectrum::<f64>(&g).map_err(|e| e.to_string())?;
    let output = match method {
        SweepMethodArg::Classical => SweepOutput {
            result: classical_sweep(&g, s.harmonic_lambda1()).map_err(|e| e.to_string())?,
            lambda_k: None,
            bound_term: None,
        },
        SweepMethodArg::Random => SweepOutput {
            result: random_sweep(&g, s.harmonic_lambda1(), trials.resolve(n), delta, seed)
                .map_err(|e| e.to_string())?,
            lambda_k: None,
            bound_term: None,
        },
        SweepMethodArg::Arbitrary => {
            let raw = coeffs.ok_or("--method arbitrary requires --coeffs")?;
            let norm = raw.iter().map(|a| a * a).sum::<f64>().sqrt();
            if norm == 0.0 {
                return Err("coefficients must not all be zero".into());
            }
            let unit: Vec<f64> = raw.iter().map(|a| a / norm).collect();
            let spec = ArbitraryVectorSpec::new(&s, &unit).map_err(|e| e.to_string())?;
            let report = arbitrary_vector_sweep(&g, &spec, trials.resolve(n), delta, seed)
                .map_err(|e| e.to_string())?;
            SweepOutput {
                result: report.result,
                lambda_k: Some(report.lambda_k),
                bound_term: Some(report.bound_term),
            }
        }
    };
    print_json(&output)?;
    Ok(0)
}

fn cmd_bounds(graph: GraphInput, trials: TrialsArg, seed: u64) -> Result<i32, String> {
    let g = graph.load(seed)?;
    let opts = BoundsOptions {
        random_trials: Some(trials.resolve(g.n())),
        delta: 0.0,
        seed,
    };
    let report = bounds_report_with::<f64>(&g, &opts).map_err(|e| e.to_string())?;
    print_json(&report)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_bench(
    corpus: PathBuf,
    mode: TrialsMode,
    delta: f64,
    seed: u64,
    out: Option<PathBuf>,
    workers: Option<usize>,
    n_min: Option<usize>,
    n_max: Option<usize>,
) -> Result<i32, String> {
    let mut spec = CorpusSpec::load(&corpus, seed).map_err(|e| e.to_string())?;
    spec.n_min = n_min;
    spec.n_max = n_max;
    let workers = workers
        .or_else(|| {
            std::env::var(WORKERS_ENV)
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(0);

    let rows = run_corpus(&spec, mode, delta, workers).map_err(|e| e.to_string())?;

    match &out {
        Some(path) => emit_csv_to_path(&rows, path).map_err(|e| e.to_string())?,
        None => emit_csv(&rows, std::io::stdout().lock()).map_err(|e| e.to_string())?,
    }

    let mut failures = 0usize;
    for row in &rows {
        if let BenchRow::Failed { name, error } = row {
            failures += 1;
            eprintln!("failed: {name}: {error}");
        }
    }
    match summarize(&rows) {
        Ok(summary) => print_summary(&summary, mode),
        Err(e) => eprintln!("summary unavailable: {e}"),
    }
    Ok(if failures > 0 { 2 } else { 0 })
}

fn print_summary(summary: &cheeger_cli::Summary, mode: TrialsMode) {
    let pct = |f: Option<f64>| match f {
        Some(f) => format!("{:.1}%", 100.0 * f),
        None => "n/a".to_string(),
    };
    eprintln!(
        "summary (mode {mode}): {} records, {} failures",
        summary.records, summary.failures
    );
    eprintln!(
        "  tied-or-better: {} ({}/{})  strictly-better: {} ({}/{})",
        pct(summary.overall.tied_or_better),
        summary.overall.tied_or_better_count,
        summary.overall.count,
        pct(summary.overall.strictly_better),
        summary.overall.strictly_better_count,
        summary.overall.count,
    );
    eprintln!(
        "  lambda1 <= 1/8: tied-or-better {} ({} graphs); lambda1 > 1/8: tied-or-better {} ({} graphs)",
        pct(summary.lambda1_le_eighth.tied_or_better),
        summary.lambda1_le_eighth.count,
        pct(summary.lambda1_gt_eighth.tied_or_better),
        summary.lambda1_gt_eighth.count,
    );
    let reference = match mode {
        TrialsMode::NMinus1 => summary.reference.n_minus_1,
        TrialsMode::NSquared => summary.reference.n_squared,
    };
    eprintln!(
        "  reference ({}): tied-or-better {:.1}%, strictly-better {:.1}%",
        summary.reference.note,
        100.0 * reference.tied_or_better,
        100.0 * reference.strictly_better,
    );
}

fn run(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Spectrum { graph, seed } => cmd_spectrum(graph, seed),
        Command::Cheeger {
            graph,
            exact,
            trials,
            delta,
            seed,
        } => cmd_cheeger(graph, exact, trials, delta, seed),
        Command::Sweep {
            graph,
            method,
            trials,
            delta,
            seed,
            coeffs,
        } => cmd_sweep(graph, method, trials, delta, seed, coeffs),
        Command::Bounds { graph, trials, seed } => cmd_bounds(graph, trials, seed),
        Command::Bench {
            corpus,
            mode,
            delta,
            seed,
            out,
            workers,
            n_min,
            n_max,
        } => cmd_bench(corpus, mode, delta, seed, out, workers, n_min, n_max),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            process::exit(code);
        }
    };
    match run(cli) {
        Ok(code) => process::exit(code),
        Err(message) => {
            eprintln!("error: {message}");
            process::exit(1);
        }
    }
}
