//! The two cut-finding algorithms.
//!
//! The classical sweep orders vertices by their harmonic-eigenvector value
//! and evaluates every prefix cut. The randomized sweep uses the eigenvector
//! as a seed for per-vertex inclusion probabilities
//! `p_i = (1 - 2 delta)/2 + v_i / (2 |v|_inf)` and keeps the best cut over
//! many independent draws. A third variant runs the same machinery on a unit
//! combination of the first k harmonic eigenvectors.
//!
//! Trial `t` draws from a stream derived purely from `(seed, t)`, so results
//! are reproducible, independent of execution order, and a longer run shares
//! its prefix of trials with a shorter one.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cheeger::{cut_ratio, Cut, RatioKey};
use crate::graph::{Graph, VertexSet};
use crate::scalar::Real;
use crate::spectral::{inf_norm, signless_walk_matrix, SpectralData};

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("vector length {got} does not match vertex count {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("seed vector is identically zero")]
    ZeroVector,
    #[error("delta must lie in [0, 1/2), got {0}")]
    DeltaOutOfRange(f64),
    #[error("trials must be at least 1")]
    NoTrials,
    #[error("all {trials} trials produced empty or full sets")]
    NoValidCut { trials: u64 },
    #[error("coefficient count {got} exceeds available nontrivial eigenpairs {available}")]
    TooManyCoefficients { got: usize, available: usize },
    #[error("coefficients must have unit square sum, got {0}")]
    NotUnit(f64),
    #[error("combined vector infinity norm {0} exceeds 1/2")]
    InfNormTooLarge(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMethod {
    Classical,
    RandomBernoulli,
    RandomArbitraryVector,
}

/// Best cut found by a sweep, with the trial metadata needed to rerun it.
#[derive(Debug, Clone, Serialize)]
pub struct SweepResult<F> {
    pub best: Cut<F>,
    pub method: SweepMethod,
    pub trials: u64,
    pub seed: u64,
    pub delta: F,
    /// Trials whose draw was the empty or full vertex set.
    pub discarded_trials: u64,
}

/// Per-vertex Bernoulli parameters derived from an eigenvector.
#[derive(Debug, Clone, Serialize)]
pub struct ProbabilityVector<F> {
    pub p: Vec<F>,
    /// Entries that fell outside [0, 1] before clamping. For delta > 0 the
    /// vertex attaining `v_i = -|v|_inf` lands at `-delta`, so a handful of
    /// clamps is expected, and they vanish as delta goes to 0.
    pub clamped: usize,
}

/// SplitMix64 step; the standard 64-bit finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mixes a master seed with a stream index into an independent child seed.
/// Used for per-trial streams here and per-graph streams in the bench
/// harness; the derivation depends only on `(master, index)`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, trial))
}

/// Deterministic eigenvector sweep: vertices sorted by `v_i` descending
/// (ties by index ascending), all `n - 1` prefix cuts evaluated, minimum
/// ratio returned (earliest prefix on ties).
///
/// When `v` is the lambda1 harmonic eigenvector of a connected graph the
/// returned ratio is at most `sqrt(2 lambda1)`; that guarantee is what makes
/// this the constructive half of the quadratic Cheeger inequality. A
/// constant `v` carries no ordering information but the sweep still runs,
/// degrading to index-order prefixes.
pub fn classical_sweep<F: Real>(g: &Graph, v: &[F]) -> Result<SweepResult<F>, SweepError> {
    let n = g.n();
    if v.len() != n {
        return Err(SweepError::LengthMismatch { got: v.len(), want: n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| match v[b].partial_cmp(&v[a]).expect("finite entries") {
        Ordering::Equal => a.cmp(&b),
        unequal => unequal,
    });

    let vol_total = g.volume_total();
    let mut in_s = vec![false; n];
    let mut vol: u64 = 0;
    let mut boundary: i64 = 0;
    let mut best: Option<(RatioKey, usize)> = None;
    for (prefix_len, &vtx) in order.iter().enumerate().take(n - 1) {
        let inside: i64 = g.neighbors(vtx).iter().filter(|&&w| in_s[w as usize]).count() as i64;
        boundary += i64::from(g.degree(vtx)) - 2 * inside;
        vol += u64::from(g.degree(vtx));
        in_s[vtx] = true;
        let key = RatioKey {
            boundary: boundary as u64,
            denom: vol.min(vol_total - vol),
        };
        let better = match &best {
            None => true,
            Some((bk, _)) => key.cmp(bk) == Ordering::Less,
        };
        if better {
            best = Some((key, prefix_len + 1));
        }
    }
    let (key, len) = best.expect("n >= 2 gives at least one prefix");
    let set = VertexSet::from_indices(n, order[..len].iter().copied());
    let best_cut = cut_ratio::<F>(g, &set).expect("prefix cuts are proper");
    debug_assert_eq!(best_cut.key(vol_total), key);
    Ok(SweepResult {
        best: best_cut,
        method: SweepMethod::Classical,
        trials: (n - 1) as u64,
        seed: 0,
        delta: F::zero(),
        discarded_trials: 0,
    })
}

/// Inclusion probabilities `p_i = (1 - 2 delta)/2 + v_i / (2 |v|_inf)`,
/// clamped into [0, 1] with the clamp count recorded.
pub fn bernoulli_probabilities<F: Real>(
    v: &[F],
    delta: F,
) -> Result<ProbabilityVector<F>, SweepError> {
    if delta < F::zero() || delta >= F::half() {
        return Err(SweepError::DeltaOutOfRange(delta.to_f64().unwrap_or(f64::NAN)));
    }
    let v_inf = inf_norm(v);
    if v_inf == F::zero() {
        return Err(SweepError::ZeroVector);
    }
    let two = F::from_f64(2.0).unwrap();
    let base = (F::one() - two * delta) * F::half();
    let mut clamped = 0usize;
    let p = v
        .iter()
        .map(|&vi| {
            let raw = base + vi / (two * v_inf);
            if raw < F::zero() {
                clamped += 1;
                F::zero()
            } else if raw > F::one() {
                clamped += 1;
                F::one()
            } else {
                raw
            }
        })
        .collect();
    Ok(ProbabilityVector { p, clamped })
}

/// Randomized sweep: `trials` independent draws of S (vertex i included
/// with probability `p_i`), empty/full draws discarded and counted, minimum
/// ratio kept. Bit-reproducible: trial `t` uses the stream for `(seed, t)`.
pub fn random_sweep<F: Real>(
    g: &Graph,
    v: &[F],
    trials: u64,
    delta: F,
    seed: u64,
) -> Result<SweepResult<F>, SweepError> {
    let probs = bernoulli_probabilities(v, delta)?;
    let result = run_bernoulli_trials(g, &probs, trials, seed)?;
    Ok(SweepResult {
        method: SweepMethod::RandomBernoulli,
        delta,
        ..result
    })
}

fn run_bernoulli_trials<F: Real>(
    g: &Graph,
    probs: &ProbabilityVector<F>,
    trials: u64,
    seed: u64,
) -> Result<SweepResult<F>, SweepError> {
    let n = g.n();
    if probs.p.len() != n {
        return Err(SweepError::LengthMismatch { got: probs.p.len(), want: n });
    }
    if trials == 0 {
        return Err(SweepError::NoTrials);
    }
    // The inclusion test compares a uniform f64 draw against p in f64; the
    // draw sequence is fixed by (seed, trial) and the vertex order.
    let p64: Vec<f64> = probs.p.iter().map(|p| p.to_f64().unwrap()).collect();
    let vol_total = g.volume_total();

    let mut membership = vec![false; n];
    let mut discarded = 0u64;
    let mut best: Option<(RatioKey, Vec<bool>)> = None;
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let mut count = 0usize;
        for (m, &p) in membership.iter_mut().zip(&p64) {
            *m = rng.gen::<f64>() < p;
            count += *m as usize;
        }
        if count == 0 || count == n {
            discarded += 1;
            continue;
        }
        let mut boundary = 0u64;
        let mut vol = 0u64;
        for &(a, b) in g.edges() {
            if membership[a as usize] != membership[b as usize] {
                boundary += 1;
            }
        }
        for (vtx, &m) in membership.iter().enumerate() {
            if m {
                vol += u64::from(g.degree(vtx));
            }
        }
        let key = RatioKey {
            boundary,
            denom: vol.min(vol_total - vol),
        };
        let better = match &best {
            None => true,
            Some((bk, _)) => key.cmp(bk) == Ordering::Less,
        };
        if better {
            best = Some((key, membership.clone()));
        }
    }

    let (key, members) = best.ok_or(SweepError::NoValidCut { trials })?;
    let set = VertexSet::from_indices(n, members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i));
    let cut = cut_ratio::<F>(g, &set).expect("valid draws are proper subsets");
    debug_assert_eq!(cut.key(vol_total), key);
    Ok(SweepResult {
        best: cut,
        method: SweepMethod::RandomBernoulli,
        trials,
        seed,
        delta: F::zero(),
        discarded_trials: discarded,
    })
}

/// A unit-norm combination of the first `k` nontrivial harmonic
/// eigenvectors, validated for use as a sweep seed.
#[derive(Debug, Clone, Serialize)]
pub struct ArbitraryVectorSpec<F> {
    pub coefficients: Vec<F>,
    pub vector: Vec<F>,
    pub k: usize,
    pub lambda_k: F,
    pub v_inf: F,
}

impl<F: Real> ArbitraryVectorSpec<F> {
    /// Builds `v = sum_i alpha_i v_i` over harmonic eigenvectors 1..=k.
    ///
    /// Requires `sum alpha_i^2 = 1` (which pins `|D^{1/2} v|_2 = 1` by
    /// orthonormality) and `|v|_inf <= 1/2`; the latter keeps
    /// `1/2 + v` a valid probability assignment, the hypothesis the
    /// arbitrary-vector bound needs.
    pub fn new(spectrum: &SpectralData<F>, coefficients: &[F]) -> Result<Self, SweepError> {
        let k = coefficients.len();
        let available = spectrum.eigenvalues.len().saturating_sub(1);
        if k == 0 || k > available {
            return Err(SweepError::TooManyCoefficients { got: k, available });
        }
        let norm_sq: F = coefficients.iter().map(|&a| a * a).sum();
        let tol = F::from_f64(1e-8).unwrap();
        if (norm_sq - F::one()).abs() > tol {
            return Err(SweepError::NotUnit(norm_sq.to_f64().unwrap_or(f64::NAN)));
        }
        let n = spectrum.harmonic[0].len();
        let mut vector = vec![F::zero(); n];
        for (i, &alpha) in coefficients.iter().enumerate() {
            for (x, &h) in vector.iter_mut().zip(&spectrum.harmonic[i + 1]) {
                *x = *x + alpha * h;
            }
        }
        let v_inf = inf_norm(&vector);
        let cap = F::half() + F::from_f64(1e-12).unwrap();
        if v_inf > cap {
            return Err(SweepError::InfNormTooLarge(v_inf.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(ArbitraryVectorSpec {
            coefficients: coefficients.to_vec(),
            vector,
            k,
            lambda_k: spectrum.lambda(k),
            v_inf,
        })
    }
}

/// Randomized sweep seeded by an arbitrary-vector spec, plus the linear
/// upper-bound term `1/2 - (1 - lambda_k) / (2 |v|_inf^2 vol G)` it is to be
/// compared against.
#[derive(Debug, Clone, Serialize)]
pub struct ArbitrarySweepReport<F> {
    pub result: SweepResult<F>,
    pub lambda_k: F,
    pub bound_term: F,
}

/// Identical mechanics to [`random_sweep`] on `spec.vector`; with `k = 1`
/// and `alpha_1 = 1` the cuts coincide with `random_sweep` on the lambda1
/// eigenvector at the same seed.
pub fn arbitrary_vector_sweep<F: Real>(
    g: &Graph,
    spec: &ArbitraryVectorSpec<F>,
    trials: u64,
    delta: F,
    seed: u64,
) -> Result<ArbitrarySweepReport<F>, SweepError> {
    let probs = bernoulli_probabilities(&spec.vector, delta)?;
    let result = run_bernoulli_trials(g, &probs, trials, seed)?;
    let two = F::from_f64(2.0).unwrap();
    let bound_term = F::half()
        - (F::one() - spec.lambda_k)
            / (two * spec.v_inf * spec.v_inf * F::from_count(g.volume_total()));
    Ok(ArbitrarySweepReport {
        result: SweepResult {
            method: SweepMethod::RandomArbitraryVector,
            delta,
            ..result
        },
        lambda_k: spec.lambda_k,
        bound_term,
    })
}

/// Exact expectation of `E(S, S)` (internal edges double-counted) for a
/// random S drawn from independent per-vertex probabilities: evaluates
/// `mu^T (D^{1/2} (I - L) D^{1/2}) mu` with `mu = p` by dense arithmetic.
/// The matrix has zero diagonal, which is why no variance term appears.
pub fn expected_quadratic_form<F: Real>(probs: &ProbabilityVector<F>, g: &Graph) -> F {
    let n = g.n();
    debug_assert_eq!(probs.p.len(), n);
    let m = signless_walk_matrix::<F>(g);
    let weighted: Vec<F> = probs
        .p
        .iter()
        .enumerate()
        .map(|(i, &p)| p * F::from_count(u64::from(g.degree(i))).sqrt())
        .collect();
    m.quad_form(&weighted, &weighted)
}
