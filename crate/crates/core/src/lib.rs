//! Graph Cheeger constants, normalized-Laplacian spectra, and eigenvector
//! sweep algorithms.
//!
//! The crate computes the Cheeger constant of small graphs exactly, bounds it
//! spectrally from both sides, and finds low-ratio cuts two ways: the
//! deterministic eigenvector sweep and a randomized sweep that turns the
//! eigenvector into per-vertex inclusion probabilities. Two inequalities are
//! tracked throughout:
//!
//! * quadratic: `lambda1 / 2 <= h <= sqrt(2 lambda1)`
//! * linear: `1/2 - (1 - lambda1)/2 <= h`, with the matching upper term
//!   `1/2 - (1 - lambda1)/(2 |v|_inf^2 vol G)` reported as an asymptotic
//!   diagnostic rather than asserted.
//!
//! All numeric kernels are generic over the scalar type through the
//! [`Real`] trait (`f32` or `f64`); the aliases below fix `f64`, which is
//! what the CLI and the benchmark harness use.
//!
//! Everything is deterministic: generators, the eigensolver, and both sweep
//! algorithms reproduce bit-identical results for identical inputs and
//! seeds. Randomized trials draw from streams derived from `(seed, trial)`,
//! so a longer run extends a shorter one instead of reshuffling it.

pub mod cheeger;
pub mod graph;
pub mod matrix;
mod scalar;
pub mod spectral;
pub mod sweep;

pub use scalar::Real;

pub use cheeger::{
    bounds_report, bounds_report_with, classical_bounds, cut_ratio, exact_cheeger, linear_bounds,
    BoundsOptions, BoundsReport, CheegerError, Cut, ExactCheeger, HProvenance, HValue, EXACT_MAX_N,
};
pub use graph::{
    connected_components, edges_between, parse_edge_list, volume, GeneratorSpec, Graph,
    GraphError, ParsedEdgeList, VertexSet,
};
pub use matrix::{eig_sym, eig_sym_with, DenseSymMatrix, EigenDecomposition, EigenError};
pub use spectral::{
    normalized_laplacian, quadratic_form_edges, spectrum, SpectralData, SpectralSummary,
};
pub use sweep::{
    arbitrary_vector_sweep, bernoulli_probabilities, classical_sweep, derive_seed,
    expected_quadratic_form, random_sweep, ArbitrarySweepReport, ArbitraryVectorSpec,
    ProbabilityVector, SweepError, SweepMethod, SweepResult,
};

/// `f64` instantiations of the generic types.
pub type Matrix64 = DenseSymMatrix<f64>;
pub type SpectralData64 = SpectralData<f64>;
pub type Cut64 = Cut<f64>;
pub type ExactCheeger64 = ExactCheeger<f64>;
pub type BoundsReport64 = BoundsReport<f64>;
pub type SweepResult64 = SweepResult<f64>;
pub type ProbabilityVector64 = ProbabilityVector<f64>;
pub type ArbitraryVectorSpec64 = ArbitraryVectorSpec<f64>;
