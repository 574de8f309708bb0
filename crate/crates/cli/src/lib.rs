//! Corpus benchmark machinery behind the `cheeger` binary: corpus parsing,
//! the two-protocol sweep comparison, summary statistics, and CSV emission.

pub mod corpus;
pub mod csv_out;

pub use corpus::{
    load_graph, run_corpus, summarize, BenchRecord, BenchRow, CorpusEntry, CorpusError,
    CorpusSpec, GraphSource, Summary, TrialsMode,
};
pub use csv_out::{emit_csv, emit_csv_to_path, parse_csv, to_csv_string, CsvError, CSV_HEADER};
