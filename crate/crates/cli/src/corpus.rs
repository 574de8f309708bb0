//! Corpus specification and the benchmark run: both sweep methods over every
//! graph, one record per graph, deterministic for a fixed master seed.
//!
//! A corpus file is line-oriented `name <TAB> source`, where source is either
//! a generator expression (`cycle(24)`, `gnp(40,0.2)`, ...) or `file:PATH`
//! pointing at an edge list. Per-entry randomness (generator draws and sweep
//! trials) is derived from the master seed and the entry name, so records do
//! not depend on entry order or worker count.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use cheeger_core::graph::generators::GeneratorSpec;
use cheeger_core::{
    classical_sweep, derive_seed, exact_cheeger, parse_edge_list, random_sweep, spectrum, Graph,
    EXACT_MAX_N,
};

/// Red-line threshold from the summary breakdown: the classical sweep's
/// guarantee `sqrt(2 lambda1)` stops beating the trivial 1/2 cut once
/// `lambda1 > 1/8`.
pub const LAMBDA1_THRESHOLD: f64 = 0.125;

/// `delta_h < -STRICT_TOL` counts as strictly better.
pub const STRICT_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("corpus line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("duplicate corpus entry name `{0}`")]
    DuplicateName(String),
    #[error("corpus is empty")]
    Empty,
    #[error("corpus entry `{name}` is not resolvable: {reason}")]
    Unresolvable { name: String, reason: String },
    #[error("no successful records to summarize")]
    NoRecords,
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Generator(GeneratorSpec),
}

impl GraphSource {
    pub fn parse(text: &str) -> Result<Self, String> {
        let text = text.trim();
        if let Some(path) = text.strip_prefix("file:") {
            if path.is_empty() {
                return Err("empty file path".into());
            }
            Ok(GraphSource::File(PathBuf::from(path)))
        } else {
            GeneratorSpec::parse(text)
                .map(GraphSource::Generator)
                .map_err(|e| e.to_string())
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub source: GraphSource,
}

#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub entries: Vec<CorpusEntry>,
    pub n_min: Option<usize>,
    pub n_max: Option<usize>,
    pub master_seed: u64,
}

impl CorpusSpec {
    /// Parses the `name <TAB> source` format; `#` comments and blank lines
    /// are skipped; names must be unique.
    pub fn parse(text: &str, master_seed: u64) -> Result<Self, CorpusError> {
        let mut entries: Vec<CorpusEntry> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (name, source_text) = line.split_once('\t').ok_or_else(|| CorpusError::Parse {
                line: line_no,
                message: "expected `name<TAB>source`".into(),
            })?;
            let name = name.trim().to_string();
            if name.is_empty() {
                return Err(CorpusError::Parse {
                    line: line_no,
                    message: "empty entry name".into(),
                });
            }
            if entries.iter().any(|e| e.name == name) {
                return Err(CorpusError::DuplicateName(name));
            }
            let source = GraphSource::parse(source_text).map_err(|message| CorpusError::Parse {
                line: line_no,
                message,
            })?;
            entries.push(CorpusEntry { name, source });
        }
        if entries.is_empty() {
            return Err(CorpusError::Empty);
        }
        Ok(CorpusSpec {
            entries,
            n_min: None,
            n_max: None,
            master_seed,
        })
    }

    pub fn load(path: &Path, master_seed: u64) -> Result<Self, CorpusError> {
        let text = fs::read_to_string(path).map_err(|source| CorpusError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text, master_seed)
    }

    /// Checks that every entry can be resolved before any work starts:
    /// referenced files must exist; generator expressions were already
    /// validated at parse time.
    pub fn resolve(&self) -> Result<(), CorpusError> {
        for entry in &self.entries {
            if let GraphSource::File(path) = &entry.source {
                if !path.is_file() {
                    return Err(CorpusError::Unresolvable {
                        name: entry.name.clone(),
                        reason: format!("file not found: {}", path.display()),
                    });
                }
            }
        }
        Ok(())
    }
}

/// FNV-1a over the entry name; feeds the per-entry seed derivation so that
/// records are stable under corpus reordering.
pub fn name_hash(name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.as_bytes() {
        h ^= u64::from(*b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

/// Seed used to build a random-generator entry.
pub fn entry_graph_seed(master_seed: u64, name: &str) -> u64 {
    derive_seed(master_seed, name_hash(name))
}

/// Seed used for the random sweep of an entry. Distinct stream index from
/// the generator seed so graph construction and sweep trials never share
/// randomness; identical across trial-count modes so a longer run is a
/// prefix extension of a shorter one.
pub fn entry_sweep_seed(master_seed: u64, name: &str) -> u64 {
    derive_seed(master_seed, name_hash(name) ^ 0x5357_4545_5053_4545)
}

pub fn load_graph(entry: &CorpusEntry, master_seed: u64) -> Result<Graph, String> {
    match &entry.source {
        GraphSource::File(path) => {
            let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_edge_list(&text)
                .map(|parsed| parsed.graph)
                .map_err(|e| e.to_string())
        }
        GraphSource::Generator(spec) => spec
            .build(entry_graph_seed(master_seed, &entry.name))
            .map_err(|e| e.to_string()),
    }
}

/// The two trial-count protocols: best of `n - 1` draws or best of `n^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TrialsMode {
    #[serde(rename = "n-1")]
    NMinus1,
    #[serde(rename = "n2")]
    NSquared,
}

impl TrialsMode {
    pub fn trials(self, n: usize) -> u64 {
        match self {
            TrialsMode::NMinus1 => (n - 1) as u64,
            TrialsMode::NSquared => (n * n) as u64,
        }
    }
}

impl fmt::Display for TrialsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TrialsMode::NMinus1 => "n-1",
            TrialsMode::NSquared => "n2",
        })
    }
}

impl FromStr for TrialsMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "n-1" => Ok(TrialsMode::NMinus1),
            "n2" => Ok(TrialsMode::NSquared),
            other => Err(format!("expected `n-1` or `n2`, got `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct PhaseRuntimes {
    pub spectrum_ms: f64,
    pub classical_ms: f64,
    pub random_ms: f64,
    pub exact_ms: f64,
}

/// One successful corpus measurement.
#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub name: String,
    pub n: usize,
    pub vol_g: u64,
    pub lambda1: f64,
    pub v_inf: f64,
    pub h_classical: f64,
    pub h_random: f64,
    /// `h_random - h_classical`; negative means the random sweep won.
    pub delta_h: f64,
    /// Exact constant when `n <= 24`.
    pub h_exact: Option<f64>,
    pub mode: TrialsMode,
    pub runtime: PhaseRuntimes,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum BenchRow {
    Record(BenchRecord),
    /// Per-graph failure; isolated so the rest of the corpus still runs.
    Failed { name: String, error: String },
}

impl BenchRow {
    pub fn record(&self) -> Option<&BenchRecord> {
        match self {
            BenchRow::Record(r) => Some(r),
            BenchRow::Failed { .. } => None,
        }
    }
}

fn bench_one(entry: &CorpusEntry, spec: &CorpusSpec, mode: TrialsMode, delta: f64) -> Option<BenchRow> {
    let fail = |error: String| {
        Some(BenchRow::Failed {
            name: entry.name.clone(),
            error,
        })
    };
    let graph = match load_graph(entry, spec.master_seed) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    let n = graph.n();
    if spec.n_min.is_some_and(|lo| n < lo) || spec.n_max.is_some_and(|hi| n > hi) {
        return None;
    }
    if !graph.is_connected() {
        return fail("graph is disconnected".into());
    }

    let t0 = Instant::now();
    let spectral = match spectrum::<f64>(&graph) {
        Ok(s) => s,
        Err(e) => return fail(e.to_string()),
    };
    let spectrum_ms = t0.elapsed().as_secs_f64() * 1e3;
    let v = spectral.harmonic_lambda1();

    let t1 = Instant::now();
    let classical = match classical_sweep(&graph, v) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let classical_ms = t1.elapsed().as_secs_f64() * 1e3;

    let t2 = Instant::now();
    let sweep_seed = entry_sweep_seed(spec.master_seed, &entry.name);
    let random = match random_sweep(&graph, v, mode.trials(n), delta, sweep_seed) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let random_ms = t2.elapsed().as_secs_f64() * 1e3;

    let t3 = Instant::now();
    let h_exact = if n <= EXACT_MAX_N {
        match exact_cheeger::<f64>(&graph) {
            Ok(e) => Some(e.h),
            Err(e) => return fail(e.to_string()),
        }
    } else {
        None
    };
    let exact_ms = t3.elapsed().as_secs_f64() * 1e3;

    Some(BenchRow::Record(BenchRecord {
        name: entry.name.clone(),
        n,
        vol_g: graph.volume_total(),
        lambda1: spectral.lambda1(),
        v_inf: spectral.v_inf(),
        h_classical: classical.best.ratio,
        h_random: random.best.ratio,
        delta_h: random.best.ratio - classical.best.ratio,
        h_exact,
        mode,
        runtime: PhaseRuntimes {
            spectrum_ms,
            classical_ms,
            random_ms,
            exact_ms,
        },
    }))
}

/// Runs both phases over the whole corpus. One row per surviving entry, in
/// corpus order; per-graph failures become [`BenchRow::Failed`] rows instead
/// of aborting the run. `workers = 0` uses the rayon default.
pub fn run_corpus(
    spec: &CorpusSpec,
    mode: TrialsMode,
    delta: f64,
    workers: usize,
) -> Result<Vec<BenchRow>, CorpusError> {
    if spec.entries.is_empty() {
        return Err(CorpusError::Empty);
    }
    spec.resolve()?;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("thread pool construction");
    let rows: Vec<Option<BenchRow>> = pool.install(|| {
        use rayon::prelude::*;
        spec.entries
            .par_iter()
            .map(|entry| bench_one(entry, spec, mode, delta))
            .collect()
    });
    Ok(rows.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BucketSummary {
    pub count: usize,
    pub tied_or_better_count: usize,
    pub strictly_better_count: usize,
    /// `delta_h <= 0` fraction; absent when the bucket is empty.
    pub tied_or_better: Option<f64>,
    /// `delta_h < -1e-12` fraction.
    pub strictly_better: Option<f64>,
}

impl BucketSummary {
    fn from_deltas(deltas: &[f64]) -> Self {
        let count = deltas.len();
        let tied = deltas.iter().filter(|&&d| d <= 0.0).count();
        let strict = deltas.iter().filter(|&&d| d < -STRICT_TOL).count();
        let frac = |k: usize| {
            if count == 0 {
                None
            } else {
                Some(k as f64 / count as f64)
            }
        };
        BucketSummary {
            count,
            tied_or_better_count: tied,
            strictly_better_count: strict,
            tied_or_better: frac(tied),
            strictly_better: frac(strict),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ReferenceFractions {
    pub tied_or_better: f64,
    pub strictly_better: f64,
}

/// Reference fractions measured by the same protocol on the proprietary
/// Wolfram named-graph database (5529 graphs, 10..1500 vertices, n-1 mode;
/// 10..50 vertices, n^2 mode). Context only; nothing is asserted against
/// them, and this substitute corpus is not expected to match them.
#[derive(Debug, Clone, Serialize)]
pub struct ReferenceContext {
    pub note: &'static str,
    pub n_minus_1: ReferenceFractions,
    pub n_squared: ReferenceFractions,
}

impl Default for ReferenceContext {
    fn default() -> Self {
        ReferenceContext {
            note: "measured on the proprietary Wolfram graph database corpus; \
                   shown for context, never asserted",
            n_minus_1: ReferenceFractions {
                tied_or_better: 0.34,
                strictly_better: 0.039,
            },
            n_squared: ReferenceFractions {
                tied_or_better: 0.51,
                strictly_better: 0.19,
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub records: usize,
    pub failures: usize,
    pub overall: BucketSummary,
    /// Records with `lambda1 <= 1/8`, where the classical guarantee is
    /// still strong.
    pub lambda1_le_eighth: BucketSummary,
    /// Records with `lambda1 > 1/8`.
    pub lambda1_gt_eighth: BucketSummary,
    pub reference: ReferenceContext,
}

/// Tied-or-better and strictly-better fractions, overall and broken out by
/// the `lambda1 = 1/8` line. Requires at least one successful record.
pub fn summarize(rows: &[BenchRow]) -> Result<Summary, CorpusError> {
    let records: Vec<&BenchRecord> = rows.iter().filter_map(BenchRow::record).collect();
    if records.is_empty() {
        return Err(CorpusError::NoRecords);
    }
    let failures = rows.len() - records.len();
    let all: Vec<f64> = records.iter().map(|r| r.delta_h).collect();
    let le: Vec<f64> = records
        .iter()
        .filter(|r| r.lambda1 <= LAMBDA1_THRESHOLD)
        .map(|r| r.delta_h)
        .collect();
    let gt: Vec<f64> = records
        .iter()
        .filter(|r| r.lambda1 > LAMBDA1_THRESHOLD)
        .map(|r| r.delta_h)
        .collect();
    Ok(Summary {
        records: records.len(),
        failures,
        overall: BucketSummary::from_deltas(&all),
        lambda1_le_eighth: BucketSummary::from_deltas(&le),
        lambda1_gt_eighth: BucketSummary::from_deltas(&gt),
        reference: ReferenceContext::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_corpus_lines() {
        let spec = CorpusSpec::parse("# comment\nc4\tcycle(4)\npet\tpetersen\n", 1).unwrap();
        assert_eq!(spec.entries.len(), 2);
        assert_eq!(spec.entries[0].name, "c4");
        assert!(matches!(
            spec.entries[1].source,
            GraphSource::Generator(GeneratorSpec::Petersen)
        ));
    }

    #[test]
    fn rejects_duplicates_and_bad_lines() {
        assert!(matches!(
            CorpusSpec::parse("a\tcycle(4)\na\tcycle(5)\n", 1),
            Err(CorpusError::DuplicateName(_))
        ));
        assert!(matches!(
            CorpusSpec::parse("missing-tab cycle(4)\n", 1),
            Err(CorpusError::Parse { line: 1, .. })
        ));
        assert!(matches!(CorpusSpec::parse("\n# only comments\n", 1), Err(CorpusError::Empty)));
    }

    #[test]
    fn file_source_prefix() {
        match GraphSource::parse("file:/tmp/x.edges").unwrap() {
            GraphSource::File(p) => assert_eq!(p, PathBuf::from("/tmp/x.edges")),
            other => panic!("{other:?}"),
        }
        assert!(GraphSource::parse("file:").is_err());
    }

    #[test]
    fn run_small_corpus_records_in_order() {
        let spec = CorpusSpec::parse("c4\tcycle(4)\nk4\tcomplete(4)\npet\tpetersen\n", 7).unwrap();
        let rows = run_corpus(&spec, TrialsMode::NMinus1, 0.0, 1).unwrap();
        assert_eq!(rows.len(), 3);
        let names: Vec<&str> = rows
            .iter()
            .map(|r| r.record().expect("all succeed").name.as_str())
            .collect();
        assert_eq!(names, vec!["c4", "k4", "pet"]);
        let c4 = rows[0].record().unwrap();
        assert!((c4.lambda1 - 1.0).abs() < 1e-9);
        assert_eq!(c4.h_exact, Some(0.5));
        assert!((c4.h_classical - 0.5).abs() < 1e-12);
    }

    #[test]
    fn disconnected_entry_is_isolated_failure() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("two.edges");
        fs::write(&path, "0 1\n2 3\n").unwrap();
        let text = format!("c4\tcycle(4)\nsplit\tfile:{}\n", path.display());
        let spec = CorpusSpec::parse(&text, 7).unwrap();
        let rows = run_corpus(&spec, TrialsMode::NMinus1, 0.0, 1).unwrap();
        assert!(rows[0].record().is_some());
        match &rows[1] {
            BenchRow::Failed { name, error } => {
                assert_eq!(name, "split");
                assert!(error.contains("disconnected"));
            }
            other => panic!("{other:?}"),
        }
        let summary = summarize(&rows).unwrap();
        assert_eq!(summary.records, 1);
        assert_eq!(summary.failures, 1);
    }

    #[test]
    fn unresolvable_file_fails_before_running() {
        let spec = CorpusSpec::parse("x\tfile:/does/not/exist.edges\n", 7).unwrap();
        assert!(matches!(
            run_corpus(&spec, TrialsMode::NMinus1, 0.0, 1),
            Err(CorpusError::Unresolvable { .. })
        ));
    }

    #[test]
    fn summary_all_zero_deltas() {
        let rows = vec![BenchRow::Record(BenchRecord {
            name: "x".into(),
            n: 4,
            vol_g: 8,
            lambda1: 1.0,
            v_inf: 0.5,
            h_classical: 0.5,
            h_random: 0.5,
            delta_h: 0.0,
            h_exact: Some(0.5),
            mode: TrialsMode::NMinus1,
            runtime: PhaseRuntimes::default(),
        })];
        let s = summarize(&rows).unwrap();
        assert_eq!(s.overall.tied_or_better, Some(1.0));
        assert_eq!(s.overall.strictly_better, Some(0.0));
        assert_eq!(s.lambda1_gt_eighth.count, 1);
        assert_eq!(s.lambda1_le_eighth.count, 0);
        assert!(s.lambda1_le_eighth.tied_or_better.is_none());
    }

    #[test]
    fn summarize_needs_a_record() {
        let rows = vec![BenchRow::Failed {
            name: "x".into(),
            error: "nope".into(),
        }];
        assert!(matches!(summarize(&rows), Err(CorpusError::NoRecords)));
    }

    #[test]
    fn workers_do_not_change_rows() {
        let spec = CorpusSpec::parse(
            "c6\tcycle(6)\nk5\tcomplete(5)\ng1\tgnp(12,0.4)\nr1\trandom_regular(12,3)\n",
            99,
        )
        .unwrap();
        let one = run_corpus(&spec, TrialsMode::NSquared, 0.0, 1).unwrap();
        let four = run_corpus(&spec, TrialsMode::NSquared, 0.0, 4).unwrap();
        // runtimes differ; compare the deterministic fields
        for (a, b) in one.iter().zip(four.iter()) {
            let (a, b) = (a.record().unwrap(), b.record().unwrap());
            assert_eq!(a.name, b.name);
            assert_eq!(a.h_classical, b.h_classical);
            assert_eq!(a.h_random, b.h_random);
            assert_eq!(a.h_exact, b.h_exact);
        }
    }
}
