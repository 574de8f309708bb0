//! Normalized Laplacian construction and its full eigendecomposition, with
//! the harmonic-eigenvector normalization the bounds and sweeps rely on.
//!
//! For a graph with degree matrix `D` and adjacency `A`, the normalized
//! Laplacian is `L = I - D^{-1/2} A D^{-1/2}`. If `u` is a unit eigenvector
//! of `L`, the *harmonic* eigenvector is `v = D^{-1/2} u`, which satisfies
//! `|D^{1/2} v|_2 = 1`. All sweeps operate in harmonic coordinates.

use serde::Serialize;

use crate::graph::{Graph, VertexSet};
use crate::matrix::{eig_sym, DenseSymMatrix, EigenError};
use crate::scalar::Real;

/// `L = I - D^{-1/2} A D^{-1/2}`: diagonal all ones, entry `(i, j)` equal to
/// `-1/sqrt(d_i d_j)` for each edge.
pub fn normalized_laplacian<F: Real>(g: &Graph) -> DenseSymMatrix<F> {
    let n = g.n();
    let mut m = DenseSymMatrix::zeros(n);
    for i in 0..n {
        m.set_sym(i, i, F::one());
    }
    for &(u, v) in g.edges() {
        let (u, v) = (u as usize, v as usize);
        let du = F::from_count(u64::from(g.degree(u)));
        let dv = F::from_count(u64::from(g.degree(v)));
        m.set_sym(u, v, -(F::one() / (du * dv).sqrt()));
    }
    m
}

/// `I - L = D^{-1/2} A D^{-1/2}`.
pub fn signless_walk_matrix<F: Real>(g: &Graph) -> DenseSymMatrix<F> {
    let n = g.n();
    let lap = normalized_laplacian::<F>(g);
    let mut m = DenseSymMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let id = if i == j { F::one() } else { F::zero() };
            m.set_sym(i, j, id - lap.get(i, j));
        }
    }
    m
}

/// Full spectrum of the normalized Laplacian plus harmonic eigenvectors.
#[derive(Debug, Clone)]
pub struct SpectralData<F> {
    /// Ascending eigenvalues of `L`.
    pub eigenvalues: Vec<F>,
    /// Orthonormal eigenvectors of `L`, one per eigenvalue, sign-fixed so the
    /// first nonzero coordinate is positive.
    pub eigenvectors_l: Vec<Vec<F>>,
    /// Harmonic eigenvectors `v = D^{-1/2} u`, same order.
    pub harmonic: Vec<Vec<F>>,
    /// Per-pair residuals `|L u - lambda u|_2`.
    pub residuals: Vec<F>,
}

impl<F: Real> SpectralData<F> {
    /// Second-smallest eigenvalue. Every valid graph here has `n >= 2`
    /// (single vertices are isolated, hence rejected), so this is total.
    pub fn lambda1(&self) -> F {
        self.eigenvalues[1]
    }

    pub fn lambda(&self, k: usize) -> F {
        self.eigenvalues[k]
    }

    /// Harmonic eigenvector paired with `lambda1`. When the eigenvalue is
    /// degenerate this is the deterministic first choice from the solver
    /// under the sign convention, not a canonical representative.
    pub fn harmonic_lambda1(&self) -> &[F] {
        &self.harmonic[1]
    }

    /// Infinity norm of the `lambda1` harmonic eigenvector.
    pub fn v_inf(&self) -> F {
        inf_norm(self.harmonic_lambda1())
    }

    pub fn max_residual(&self) -> F {
        self.residuals
            .iter()
            .copied()
            .fold(F::zero(), |acc, r| acc.max(r))
    }

    /// Multiplicity of the zero eigenvalue at threshold `tol`; with the
    /// component-counting threshold `1e-9 * n` this equals the number of
    /// connected components.
    pub fn zero_multiplicity(&self, tol: F) -> usize {
        self.eigenvalues.iter().filter(|&&l| l.abs() <= tol).count()
    }

    pub fn component_count_threshold(n: usize) -> F {
        F::from_f64(1e-9).unwrap() * F::from_usize(n).unwrap()
    }

    pub fn summary(&self) -> SpectralSummary<F> {
        SpectralSummary {
            eigenvalues: self.eigenvalues.clone(),
            lambda1: self.lambda1(),
            v_inf_norm: self.v_inf(),
            residual_max: self.max_residual(),
        }
    }
}

/// JSON-facing digest of a [`SpectralData`].
#[derive(Debug, Clone, Serialize)]
pub struct SpectralSummary<F> {
    pub eigenvalues: Vec<F>,
    pub lambda1: F,
    pub v_inf_norm: F,
    pub residual_max: F,
}

pub fn inf_norm<F: Real>(v: &[F]) -> F {
    v.iter().fold(F::zero(), |acc, &x| acc.max(x.abs()))
}

/// Computes the full spectrum of the normalized Laplacian of `g`.
///
/// Eigenvalues ascend; eigenvectors of `L` are orthonormal and sign-fixed;
/// `harmonic[i] = D^{-1/2} eigenvectors_l[i]`. Callers that interpret
/// `lambda1` as the spectral gap of a connected graph must check
/// connectivity themselves; the operation accepts any graph.
pub fn spectrum<F: Real>(g: &Graph) -> Result<SpectralData<F>, EigenError> {
    let lap = normalized_laplacian::<F>(g);
    let eig = eig_sym(&lap)?;
    let n = g.n();

    let mut eigenvectors_l = eig.eigenvectors;
    for u in &mut eigenvectors_l {
        sign_fix(u);
    }

    let inv_sqrt_deg: Vec<F> = (0..n)
        .map(|i| F::one() / F::from_count(u64::from(g.degree(i))).sqrt())
        .collect();
    let harmonic: Vec<Vec<F>> = eigenvectors_l
        .iter()
        .map(|u| u.iter().zip(&inv_sqrt_deg).map(|(&x, &w)| x * w).collect())
        .collect();

    let residuals: Vec<F> = eigenvectors_l
        .iter()
        .zip(&eig.eigenvalues)
        .map(|(u, &l)| {
            let lu = lap.mul_vec(u);
            lu.iter()
                .zip(u)
                .map(|(&a, &b)| {
                    let r = a - l * b;
                    r * r
                })
                .sum::<F>()
                .sqrt()
        })
        .collect();

    Ok(SpectralData {
        eigenvalues: eig.eigenvalues,
        eigenvectors_l,
        harmonic,
        residuals,
    })
}

/// Flips the vector so its first nonzero coordinate is positive. "Nonzero"
/// is judged against the largest magnitude so rounding dust cannot pick the
/// sign.
fn sign_fix<F: Real>(u: &mut [F]) {
    let scale = inf_norm(u);
    if scale == F::zero() {
        return;
    }
    let tol = scale * F::from_f64(1e-6).unwrap();
    if let Some(&first) = u.iter().find(|x| x.abs() > tol) {
        if first < F::zero() {
            for x in u.iter_mut() {
                *x = -*x;
            }
        }
    }
}

/// Evaluates `(D^{1/2} 1_S)^T (I - L) (D^{1/2} 1_T)` by dense arithmetic.
///
/// This equals `E(S, T)` exactly (edges inside the intersection counted
/// twice), which makes it the spectral cross-check against
/// [`crate::graph::edges_between`]: two routes to the same count through
/// entirely different code.
pub fn quadratic_form_edges<F: Real>(g: &Graph, s: &VertexSet, t: &VertexSet) -> F {
    let n = g.n();
    let m = signless_walk_matrix::<F>(g);
    let indicator = |set: &VertexSet| -> Vec<F> {
        (0..n)
            .map(|i| {
                if set.contains(i) {
                    F::from_count(u64::from(g.degree(i))).sqrt()
                } else {
                    F::zero()
                }
            })
            .collect()
    };
    m.quad_form(&indicator(s), &indicator(t))
}

/// Debug-build sanity checks for the documented spectrum invariants.
pub fn validate_spectrum<F: Real>(g: &Graph, data: &SpectralData<F>) -> Result<(), String> {
    let tol = F::from_f64(1e-9).unwrap();
    let two = F::from_f64(2.0).unwrap();
    if data.eigenvalues[0].abs() > tol {
        return Err(format!("lambda0 = {} not ~0", data.eigenvalues[0]));
    }
    for &l in &data.eigenvalues {
        if l < -tol || l > two + tol {
            return Err(format!("eigenvalue {l} outside [0, 2]"));
        }
    }
    let rtol = F::from_f64(1e-8).unwrap();
    if data.max_residual() > rtol {
        return Err(format!("max residual {} > 1e-8", data.max_residual()));
    }
    let comps = crate::graph::connected_components(g).len();
    let mult = data.zero_multiplicity(SpectralData::<F>::component_count_threshold(g.n()));
    if comps != mult {
        return Err(format!("zero multiplicity {mult} != component count {comps}"));
    }
    Ok(())
}
