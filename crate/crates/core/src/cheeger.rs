//! Cut ratios, the exact Cheeger constant by exhaustive enumeration, and the
//! bounds engine for the quadratic and linear Cheeger inequalities.
//!
//! The Cheeger constant is
//! `h = min over nonempty proper S of E(S, S-bar) / min(vol S, vol S-bar)`;
//! taking the smaller-volume side in the denominator agrees with the usual
//! `vol S <= vol G / 2` restriction while giving every candidate set a
//! well-defined ratio.

use std::cmp::Ordering;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{connected_components, volume, Graph, VertexSet};
use crate::matrix::EigenError;
use crate::scalar::Real;
use crate::spectral::spectrum;
use crate::sweep::{classical_sweep, random_sweep, SweepError};

/// Largest vertex count accepted by [`exact_cheeger`]: 2^(24-1) subsets.
pub const EXACT_MAX_N: usize = 24;

/// Slack used for the boolean bound-satisfaction flags in [`BoundsReport`].
pub const SAT_TOL: f64 = 1e-9;

const LAMBDA_RANGE_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CheegerError {
    #[error("cut must be a nonempty proper subset of the vertices")]
    InvalidCut,
    #[error("exact enumeration limited to n <= {max}, graph has n = {n}")]
    TooLarge { n: usize, max: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("lambda1 = {0} outside [0, 2]")]
    LambdaOutOfRange(f64),
    #[error("eigenvector infinity norm must be positive, got {0}")]
    NonPositiveVInf(f64),
    #[error("volume must be at least 2, got {0}")]
    VolumeTooSmall(u64),
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error(transparent)]
    Sweep(#[from] SweepError),
}

/// A vertex cut with its boundary size, volume, and Cheeger ratio.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cut<F> {
    pub set: VertexSet,
    /// `E(S, S-bar)`.
    pub boundary: u64,
    /// `vol S`.
    pub vol_s: u64,
    /// `boundary / min(vol_s, vol_total - vol_s)`.
    pub ratio: F,
}

impl<F: Real> Cut<F> {
    /// Exact comparison key: ratios compare by integer cross-multiplication,
    /// immune to rounding, so sweep minima and tie detection are exact.
    pub(crate) fn key(&self, vol_total: u64) -> RatioKey {
        RatioKey {
            boundary: self.boundary,
            denom: self.vol_s.min(vol_total - self.vol_s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct RatioKey {
    pub boundary: u64,
    pub denom: u64,
}

impl RatioKey {
    pub fn cmp(&self, other: &RatioKey) -> Ordering {
        let lhs = u128::from(self.boundary) * u128::from(other.denom);
        let rhs = u128::from(other.boundary) * u128::from(self.denom);
        lhs.cmp(&rhs)
    }

    pub fn ratio<F: Real>(&self) -> F {
        F::from_count(self.boundary) / F::from_count(self.denom)
    }
}

/// Evaluates the cut defined by `s`, which must be a nonempty proper subset.
pub fn cut_ratio<F: Real>(g: &Graph, s: &VertexSet) -> Result<Cut<F>, CheegerError> {
    debug_assert_eq!(s.universe_len(), g.n());
    if s.is_empty() || s.is_full() {
        return Err(CheegerError::InvalidCut);
    }
    let mut boundary = 0u64;
    for &(u, v) in g.edges() {
        if s.contains(u as usize) != s.contains(v as usize) {
            boundary += 1;
        }
    }
    let vol_s = volume(g, s);
    let denom = vol_s.min(g.volume_total() - vol_s);
    Ok(Cut {
        set: s.clone(),
        boundary,
        vol_s,
        ratio: F::from_count(boundary) / F::from_count(denom),
    })
}

/// Result of the exhaustive minimization.
#[derive(Debug, Clone, Serialize)]
pub struct ExactCheeger<F> {
    pub h: F,
    pub argmin: Cut<F>,
}

/// Exact Cheeger constant by enumerating every subset with vertex 0 fixed on
/// the complement side (each `{S, S-bar}` class visited once).
///
/// The scan walks subsets in Gray-code order so each step flips one vertex
/// and updates the boundary and volume incrementally. The argmin is the
/// lexicographically least minimizing set among the canonical (vertex-0-free)
/// candidates. Disconnected graphs return `h = 0` with a separating
/// component as the argmin rather than erroring, matching the `lambda1 = 0`
/// limit.
pub fn exact_cheeger<F: Real>(g: &Graph) -> Result<ExactCheeger<F>, CheegerError> {
    let n = g.n();
    let comps = connected_components(g);
    if comps.len() > 1 {
        // Separating component not containing vertex 0 with the smallest
        // leading vertex, i.e. the second component in discovery order.
        let sep = comps[1].clone();
        let cut = cut_ratio::<F>(g, &sep)?;
        debug_assert_eq!(cut.boundary, 0);
        return Ok(ExactCheeger {
            h: F::zero(),
            argmin: cut,
        });
    }
    if n > EXACT_MAX_N {
        return Err(CheegerError::TooLarge { n, max: EXACT_MAX_N });
    }

    // Bit b of the scan mask is vertex b + 1; vertex 0 stays outside S.
    let bits = n - 1;
    let total: u64 = 1 << bits;
    let vol_total = g.volume_total();

    let mut in_s = vec![false; n];
    let mut vol: u64 = 0;
    let mut boundary: i64 = 0;
    let mut mask: u32 = 0;
    let mut best: Option<(RatioKey, u32)> = None;

    for code in 1..total {
        let bit = code.trailing_zeros() as usize;
        let v = bit + 1;
        let mut inside_neighbors = 0i64;
        for &w in g.neighbors(v) {
            if in_s[w as usize] {
                inside_neighbors += 1;
            }
        }
        let deg = i64::from(g.degree(v));
        if in_s[v] {
            in_s[v] = false;
            mask &= !(1u32 << bit);
            vol -= deg as u64;
            boundary -= deg - 2 * inside_neighbors;
        } else {
            in_s[v] = true;
            mask |= 1u32 << bit;
            vol += deg as u64;
            boundary += deg - 2 * inside_neighbors;
        }
        debug_assert!(boundary >= 0);

        let key = RatioKey {
            boundary: boundary as u64,
            denom: vol.min(vol_total - vol),
        };
        match &best {
            None => best = Some((key, mask)),
            Some((best_key, best_mask)) => match key.cmp(best_key) {
                Ordering::Less => best = Some((key, mask)),
                Ordering::Equal => {
                    if mask_lex_cmp(mask, *best_mask) == Ordering::Less {
                        best = Some((key, mask));
                    }
                }
                Ordering::Greater => {}
            },
        }
    }

    let (key, best_mask) = best.expect("n >= 2 guarantees at least one candidate");
    let set = VertexSet::from_indices(n, (0..bits).filter(|&b| best_mask >> b & 1 == 1).map(|b| b + 1));
    let argmin = cut_ratio::<F>(g, &set)?;
    debug_assert_eq!(argmin.key(vol_total), key);
    Ok(ExactCheeger {
        h: key.ratio(),
        argmin,
    })
}

/// Lexicographic order of the vertex sets `{b+1 : bit b set}`, matching
/// `VertexSet::lex_cmp` on the decoded sets.
fn mask_lex_cmp(a: u32, b: u32) -> Ordering {
    let diff = a ^ b;
    if diff == 0 {
        return Ordering::Equal;
    }
    let bit = diff.trailing_zeros();
    if a >> bit & 1 == 1 {
        if b >> (bit + 1) != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    } else if a >> (bit + 1) != 0 {
        Ordering::Greater
    } else {
        Ordering::Less
    }
}

fn check_lambda_range<F: Real>(lambda1: F) -> Result<(), CheegerError> {
    let tol = F::from_f64(LAMBDA_RANGE_TOL).unwrap();
    let two = F::from_f64(2.0).unwrap();
    if lambda1 < -tol || lambda1 > two + tol {
        return Err(CheegerError::LambdaOutOfRange(
            lambda1.to_f64().unwrap_or(f64::NAN),
        ));
    }
    Ok(())
}

/// Quadratic Cheeger bounds `(lambda1 / 2, sqrt(2 lambda1))`.
pub fn classical_bounds<F: Real>(lambda1: F) -> Result<(F, F), CheegerError> {
    check_lambda_range(lambda1)?;
    let two = F::from_f64(2.0).unwrap();
    let lower = lambda1 * F::half();
    let upper = (two * lambda1).max(F::zero()).sqrt();
    Ok((lower, upper))
}

/// Linear bounds `(1/2 - (1 - lambda1)/2, 1/2 - (1 - lambda1)/(2 v_inf^2 vol_g))`.
///
/// The lower bound is algebraically `lambda1 / 2`, written in the
/// `1/2 - gap` form deliberately: it makes visible that both bounds measure
/// how far the ratio can be pushed below one half. The upper term is
/// returned bare; it only bounds `h` up to a `1 + o(1)` factor under a
/// degree-spread condition, so callers get the raw value plus the
/// [`AsymptoticCondition`] diagnostics and must not read it as a hard bound.
pub fn linear_bounds<F: Real>(lambda1: F, v_inf: F, vol_g: u64) -> Result<(F, F), CheegerError> {
    check_lambda_range(lambda1)?;
    if v_inf.partial_cmp(&F::zero()) != Some(Ordering::Greater) {
        return Err(CheegerError::NonPositiveVInf(
            v_inf.to_f64().unwrap_or(f64::NAN),
        ));
    }
    if vol_g < 2 {
        return Err(CheegerError::VolumeTooSmall(vol_g));
    }
    let gap = F::one() - lambda1;
    let lower = F::half() - gap * F::half();
    let two = F::from_f64(2.0).unwrap();
    let upper_term = F::half() - gap / (two * v_inf * v_inf * F::from_count(vol_g));
    Ok((lower, upper_term))
}

/// Where the `h` in a [`BoundsReport`] came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HProvenance {
    /// Exhaustive enumeration; the true Cheeger constant.
    Exact,
    /// Minimum over the classical sweep and a seeded random sweep; an upper
    /// bound on the true constant.
    BestFound {
        classical_trials: u64,
        random_trials: u64,
        seed: u64,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct HValue<F> {
    pub value: F,
    pub provenance: HProvenance,
}

/// Numeric sides of the degree-spread condition `max_degree / vol G` vs
/// `n^{-2/3}`, reported for inspection. The linear upper bound is only an
/// asymptotic statement when the left side is the smaller one.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticCondition<F> {
    pub degree_over_volume: F,
    pub n_pow_minus_two_thirds: F,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport<F> {
    pub n: usize,
    pub vol_g: u64,
    pub max_degree: u32,
    pub lambda1: F,
    /// Infinity norm of the lambda1 harmonic eigenvector.
    pub v_inf: F,
    pub classical_lower: F,
    pub classical_upper: F,
    pub linear_lower: F,
    pub linear_upper_term: F,
    pub h_value: HValue<F>,
    pub classical_lower_ok: bool,
    pub classical_upper_ok: bool,
    pub linear_lower_ok: bool,
    /// The linear upper bound is never asserted at finite n.
    pub linear_upper_note: String,
    pub asymptotic_condition: AsymptoticCondition<F>,
}

/// Knobs for the best-found fallback used when `n > EXACT_MAX_N`.
#[derive(Debug, Clone)]
pub struct BoundsOptions<F> {
    /// Random-sweep trials; defaults to `n^2`.
    pub random_trials: Option<u64>,
    pub delta: F,
    pub seed: u64,
}

impl<F: Real> Default for BoundsOptions<F> {
    fn default() -> Self {
        BoundsOptions {
            random_trials: None,
            delta: F::zero(),
            seed: 0,
        }
    }
}

/// Assembles the full report for a connected graph: spectrum, exact or
/// best-found `h`, all four bound values, and satisfaction flags for the
/// unconditional inequalities.
pub fn bounds_report<F: Real>(g: &Graph) -> Result<BoundsReport<F>, CheegerError> {
    bounds_report_with(g, &BoundsOptions::default())
}

pub fn bounds_report_with<F: Real>(
    g: &Graph,
    opts: &BoundsOptions<F>,
) -> Result<BoundsReport<F>, CheegerError> {
    if connected_components(g).len() != 1 {
        return Err(CheegerError::Disconnected);
    }
    let n = g.n();
    let spec = spectrum::<F>(g)?;
    let lambda1 = spec.lambda1();
    let v_inf = spec.v_inf();
    let vol_g = g.volume_total();

    let (classical_lower, classical_upper) = classical_bounds(lambda1)?;
    let (linear_lower, linear_upper_term) = linear_bounds(lambda1, v_inf, vol_g)?;

    let h = if n <= EXACT_MAX_N {
        HValue {
            value: exact_cheeger::<F>(g)?.h,
            provenance: HProvenance::Exact,
        }
    } else {
        let v = spec.harmonic_lambda1();
        let classical = classical_sweep::<F>(g, v)?;
        let trials = opts.random_trials.unwrap_or((n * n) as u64);
        let random = random_sweep::<F>(g, v, trials, opts.delta, opts.seed)?;
        let value = classical.best.ratio.min(random.best.ratio);
        HValue {
            value,
            provenance: HProvenance::BestFound {
                classical_trials: classical.trials,
                random_trials: random.trials,
                seed: opts.seed,
            },
        }
    };

    let sat = F::from_f64(SAT_TOL).unwrap();
    let two_thirds = F::from_f64(2.0 / 3.0).unwrap();
    Ok(BoundsReport {
        n,
        vol_g,
        max_degree: g.max_degree(),
        lambda1,
        v_inf,
        classical_lower,
        classical_upper,
        linear_lower,
        linear_upper_term,
        classical_lower_ok: h.value >= classical_lower - sat,
        classical_upper_ok: h.value <= classical_upper + sat,
        linear_lower_ok: h.value >= linear_lower - sat,
        linear_upper_note: "asymptotic, not asserted".to_string(),
        asymptotic_condition: AsymptoticCondition {
            degree_over_volume: F::from_count(u64::from(g.max_degree())) / F::from_count(vol_g),
            n_pow_minus_two_thirds: F::from_usize(n).unwrap().powf(-two_thirds),
        },
        h_value: h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generators;
    use crate::graph::Graph;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn cut_ratio_c4_adjacent_pair() {
        let g = generators::cycle(4).unwrap();
        let c = cut_ratio::<f64>(&g, &VertexSet::from_indices(4, [0, 1])).unwrap();
        assert_eq!(c.boundary, 2);
        assert_eq!(c.vol_s, 4);
        assert_close(c.ratio, 0.5, 0.0);
    }

    #[test]
    fn cut_ratio_k4_pair() {
        let g = generators::complete(4).unwrap();
        let c = cut_ratio::<f64>(&g, &VertexSet::from_indices(4, [0, 1])).unwrap();
        assert_eq!(c.boundary, 4);
        assert_eq!(c.vol_s, 6);
        assert_close(c.ratio, 2.0 / 3.0, 1e-15);
    }

    #[test]
    fn cut_ratio_p3_endpoint() {
        let g = generators::path(3).unwrap();
        let c = cut_ratio::<f64>(&g, &VertexSet::from_indices(3, [0])).unwrap();
        assert_close(c.ratio, 1.0, 0.0);
    }

    #[test]
    fn cut_ratio_rejects_trivial_sets() {
        let g = generators::cycle(4).unwrap();
        assert!(matches!(
            cut_ratio::<f64>(&g, &VertexSet::empty(4)),
            Err(CheegerError::InvalidCut)
        ));
        assert!(matches!(
            cut_ratio::<f64>(&g, &VertexSet::full(4)),
            Err(CheegerError::InvalidCut)
        ));
    }

    #[test]
    fn cut_ratio_complement_symmetric() {
        let g = generators::petersen();
        let s = VertexSet::from_indices(10, [0, 3, 4, 8]);
        let a = cut_ratio::<f64>(&g, &s).unwrap();
        let b = cut_ratio::<f64>(&g, &s.complement()).unwrap();
        assert_eq!(a.ratio, b.ratio);
        assert_eq!(a.boundary, b.boundary);
    }

    #[test]
    fn exact_known_constants() {
        let cases: [(Graph, f64); 5] = [
            (generators::cycle(4).unwrap(), 0.5),
            (generators::complete(4).unwrap(), 2.0 / 3.0),
            (generators::petersen(), 1.0 / 3.0),
            (generators::star(4).unwrap(), 1.0),
            (generators::complete(2).unwrap(), 1.0),
        ];
        for (g, want) in cases {
            let got = exact_cheeger::<f64>(&g).unwrap();
            assert_close(got.h, want, 1e-12);
            assert_close(got.argmin.ratio, want, 1e-12);
        }
    }

    #[test]
    fn exact_petersen_argmin_is_a_five_cut() {
        let e = exact_cheeger::<f64>(&generators::petersen()).unwrap();
        assert_eq!(e.argmin.boundary, 5);
        assert_eq!(e.argmin.vol_s, 15);
        assert!(!e.argmin.set.contains(0));
    }

    #[test]
    fn exact_rejects_large_graphs() {
        let g = generators::cycle(25).unwrap();
        assert!(matches!(
            exact_cheeger::<f64>(&g),
            Err(CheegerError::TooLarge { n: 25, max: 24 })
        ));
    }

    #[test]
    fn exact_disconnected_returns_zero() {
        let g = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        let e = exact_cheeger::<f64>(&g).unwrap();
        assert_eq!(e.h, 0.0);
        assert_eq!(e.argmin.boundary, 0);
        assert_eq!(e.argmin.set.to_sorted_vec(), vec![2, 3]);
    }

    #[test]
    fn exact_argmin_excludes_vertex_zero() {
        for seed in 0..5 {
            let g = generators::gnp(10, 0.4, seed).unwrap();
            if !g.is_connected() {
                continue;
            }
            let e = exact_cheeger::<f64>(&g).unwrap();
            assert!(!e.argmin.set.contains(0));
        }
    }

    #[test]
    fn classical_bounds_examples() {
        let (lo, hi) = classical_bounds(1.0f64).unwrap();
        assert_close(lo, 0.5, 0.0);
        assert_close(hi, std::f64::consts::SQRT_2, 1e-15);
        let (lo, hi) = classical_bounds(0.0f64).unwrap();
        assert_eq!((lo, hi), (0.0, 0.0));
        let (lo, hi) = classical_bounds(4.0f64 / 3.0).unwrap();
        assert_close(lo, 2.0 / 3.0, 1e-15);
        assert_close(hi, (8.0f64 / 3.0).sqrt(), 1e-15);
        // lower bound is tight on K4: h(K4) = 2/3 = lambda1/2
        let h_k4 = exact_cheeger::<f64>(&generators::complete(4).unwrap())
            .unwrap()
            .h;
        assert_close(h_k4, lo, 1e-12);
        assert!(classical_bounds(2.5f64).is_err());
        assert!(classical_bounds(-0.1f64).is_err());
    }

    #[test]
    fn linear_bounds_examples() {
        // lambda1 = 1: both endpoints are exactly 1/2 regardless of v_inf.
        let (lo, hi) = linear_bounds(1.0f64, 0.123, 40).unwrap();
        assert_eq!(lo, 0.5);
        assert_eq!(hi, 0.5);
        // v_inf = 1/sqrt(vol G): tightness case, upper term collapses to
        // the lower bound.
        let vol = 36u64;
        let v_inf = 1.0 / (vol as f64).sqrt();
        let lambda = 0.7;
        let (lo, hi) = linear_bounds(lambda, v_inf, vol).unwrap();
        assert_close(hi, lo, 1e-12);
        assert_close(lo, lambda / 2.0, 1e-15);
        // domain errors
        assert!(linear_bounds(0.5f64, 0.0, 10).is_err());
        assert!(linear_bounds(0.5f64, 0.3, 1).is_err());
    }

    #[test]
    fn linear_lower_equals_classical_lower() {
        for i in 0..=200 {
            let lambda = i as f64 * 0.01;
            let (clo, _) = classical_bounds(lambda).unwrap();
            let (llo, _) = linear_bounds(lambda, 0.5, 10).unwrap();
            assert!(
                (clo - llo).abs() <= 4.0 * f64::EPSILON,
                "lambda={lambda}: {clo} vs {llo}"
            );
        }
    }

    #[test]
    fn mask_lex_cmp_agrees_with_vertex_set() {
        let n = 7usize;
        for a in 0u32..64 {
            for b in 0u32..64 {
                let decode = |m: u32| {
                    VertexSet::from_indices(n, (0..6).filter(|&x| m >> x & 1 == 1).map(|x| x + 1))
                };
                assert_eq!(
                    mask_lex_cmp(a, b),
                    decode(a).lex_cmp(&decode(b)),
                    "a={a:b} b={b:b}"
                );
            }
        }
    }

    #[test]
    fn bounds_report_star() {
        let g = generators::star(4).unwrap();
        let r = bounds_report::<f64>(&g).unwrap();
        assert_close(r.lambda1, 1.0, 1e-9);
        assert_close(r.h_value.value, 1.0, 1e-12);
        assert_eq!(r.h_value.provenance, HProvenance::Exact);
        assert!(r.classical_lower_ok && r.classical_upper_ok && r.linear_lower_ok);
        assert_close(r.classical_lower, 0.5, 1e-9);
        assert_close(r.classical_upper, std::f64::consts::SQRT_2, 1e-8);
    }

    #[test]
    fn bounds_report_k4_linear_lower() {
        // lambda1 = 4/3, vol G = 12, v_inf from the computed spectrum:
        // the linear lower bound lands at 2/3.
        let r = bounds_report::<f64>(&generators::complete(4).unwrap()).unwrap();
        assert_close(r.linear_lower, 2.0 / 3.0, 1e-9);
        assert_eq!(r.vol_g, 12);
        assert!(r.linear_lower_ok);
    }

    #[test]
    fn bounds_report_c4_lower_tight() {
        let r = bounds_report::<f64>(&generators::cycle(4).unwrap()).unwrap();
        assert_close(r.lambda1, 1.0, 1e-9);
        assert_close(r.h_value.value, 0.5, 1e-12);
        assert_close(r.classical_lower, 0.5, 1e-9);
        assert!(r.classical_lower_ok);
    }

    #[test]
    fn bounds_report_k2() {
        let r = bounds_report::<f64>(&generators::complete(2).unwrap()).unwrap();
        assert_close(r.lambda1, 2.0, 1e-10);
        assert_close(r.h_value.value, 1.0, 0.0);
        assert_close(r.classical_lower, 1.0, 1e-10);
        assert_close(r.classical_upper, 2.0, 1e-10);
        assert!(r.classical_lower_ok && r.classical_upper_ok);
    }

    #[test]
    fn bounds_report_rejects_disconnected() {
        let g = Graph::new(4, vec![(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            bounds_report::<f64>(&g),
            Err(CheegerError::Disconnected)
        ));
    }

    #[test]
    fn bounds_report_best_found_above_exact_cap() {
        let g = generators::cycle(30).unwrap();
        let r = bounds_report::<f64>(&g).unwrap();
        match r.h_value.provenance {
            HProvenance::BestFound { random_trials, .. } => assert_eq!(random_trials, 900),
            ref other => panic!("expected best-found, got {other:?}"),
        }
        // Cycle cut quality: two boundary edges over at most half the volume.
        assert_close(r.h_value.value, 2.0 / 30.0, 1e-12);
    }
}
