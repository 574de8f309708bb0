//! Dense symmetric matrices and a self-contained cyclic Jacobi eigensolver.
//!
//! Jacobi was chosen over tridiagonalization + QL on purpose: it is short
//! enough to verify by hand, produces eigenvectors with excellent
//! orthogonality, and the matrices here are desk-scale (n up to a couple of
//! thousand). Each sweep visits every off-diagonal entry in row-cyclic order
//! and annihilates it with a plane rotation; the rotations accumulate into
//! the eigenvector matrix.

use thiserror::Error;

use crate::scalar::Real;

#[derive(Debug, Error)]
pub enum EigenError {
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_diagonal:e})")]
    NonConvergence { sweeps: usize, off_diagonal: f64 },
}

/// Symmetric matrix of order `n` in row-major storage. Symmetry is a
/// construction invariant: writes go through [`DenseSymMatrix::set_sym`],
/// which mirrors the entry.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseSymMatrix<F> {
    n: usize,
    data: Vec<F>,
}

impl<F: Real> DenseSymMatrix<F> {
    pub fn zeros(n: usize) -> Self {
        DenseSymMatrix {
            n,
            data: vec![F::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = F::one();
        }
        m
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> F {
        self.data[i * self.n + j]
    }

    /// Sets `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set_sym(&mut self, i: usize, j: usize, value: F) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    pub fn frobenius_norm(&self) -> F {
        self.data.iter().map(|&x| x * x).sum::<F>().sqrt()
    }

    pub fn mul_vec(&self, x: &[F]) -> Vec<F> {
        debug_assert_eq!(x.len(), self.n);
        self.data
            .chunks_exact(self.n)
            .map(|row| row.iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `x^T M y`.
    pub fn quad_form(&self, x: &[F], y: &[F]) -> F {
        let my = self.mul_vec(y);
        x.iter().zip(&my).map(|(&a, &b)| a * b).sum()
    }
}

/// Eigendecomposition with eigenvalues ascending; `eigenvectors[k]` is the
/// unit-norm eigenvector paired with `eigenvalues[k]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition<F> {
    pub eigenvalues: Vec<F>,
    pub eigenvectors: Vec<Vec<F>>,
}

pub const DEFAULT_MAX_SWEEPS: usize = 100;

/// Full symmetric eigendecomposition by cyclic Jacobi, default sweep budget.
pub fn eig_sym<F: Real>(m: &DenseSymMatrix<F>) -> Result<EigenDecomposition<F>, EigenError> {
    eig_sym_with(m, DEFAULT_MAX_SWEEPS)
}

/// Cyclic Jacobi with an explicit sweep budget.
///
/// Output is deterministic for identical input: the rotation schedule is
/// fixed (row-cyclic), eigenvalues are sorted ascending with ties kept in
/// schedule order, and reconstruction satisfies
/// `|M - Q diag(l) Q^T|_F <= 1e-8 * max(1, |M|_F)` on convergence.
pub fn eig_sym_with<F: Real>(
    m: &DenseSymMatrix<F>,
    max_sweeps: usize,
) -> Result<EigenDecomposition<F>, EigenError> {
    let n = m.order();
    if n == 0 {
        return Ok(EigenDecomposition {
            eigenvalues: Vec::new(),
            eigenvectors: Vec::new(),
        });
    }
    if n == 1 {
        return Ok(EigenDecomposition {
            eigenvalues: vec![m.get(0, 0)],
            eigenvectors: vec![vec![F::one()]],
        });
    }

    // Working copy; only the upper triangle of `a` is referenced.
    let mut a = m.data.clone();
    let mut v = vec![F::zero(); n * n]; // eigenvector columns
    for i in 0..n {
        v[i * n + i] = F::one();
    }
    let mut d: Vec<F> = (0..n).map(|i| m.get(i, i)).collect();
    let mut b = d.clone();
    let mut z = vec![F::zero(); n];

    let hundred = F::from_f64(100.0).unwrap();
    let stop = F::epsilon() * m.frobenius_norm().max(F::one());

    let mut off_diag_sum = F::zero();
    let mut converged = false;
    for sweep in 0..max_sweeps {
        off_diag_sum = F::zero();
        for p in 0..n - 1 {
            for q in p + 1..n {
                off_diag_sum = off_diag_sum + a[p * n + q].abs();
            }
        }
        if off_diag_sum <= stop {
            converged = true;
            break;
        }

        // Early sweeps skip entries below a fraction of the mean
        // off-diagonal magnitude; later sweeps rotate on everything.
        let thresh = if sweep < 3 {
            F::from_f64(0.2).unwrap() * off_diag_sum / F::from_usize(n * n).unwrap()
        } else {
            F::zero()
        };

        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let g = hundred * apq.abs();
                // Entry negligible relative to both diagonals: zero it.
                if sweep > 3 && d[p].abs() + g == d[p].abs() && d[q].abs() + g == d[q].abs() {
                    a[p * n + q] = F::zero();
                    continue;
                }
                if apq.abs() <= thresh {
                    continue;
                }

                let h = d[q] - d[p];
                let t = if h.abs() + g == h.abs() {
                    apq / h
                } else {
                    let theta = F::half() * h / apq;
                    let mut t = F::one() / (theta.abs() + (F::one() + theta * theta).sqrt());
                    if theta < F::zero() {
                        t = -t;
                    }
                    t
                };
                let c = F::one() / (F::one() + t * t).sqrt();
                let s = t * c;
                let tau = s / (F::one() + c);
                let h = t * apq;
                z[p] = z[p] - h;
                z[q] = z[q] + h;
                d[p] = d[p] - h;
                d[q] = d[q] + h;
                a[p * n + q] = F::zero();

                let rotate = |x: &mut Vec<F>, i: usize, j: usize| {
                    let g = x[i];
                    let hh = x[j];
                    x[i] = g - s * (hh + g * tau);
                    x[j] = hh + s * (g - hh * tau);
                };
                for j in 0..p {
                    rotate(&mut a, j * n + p, j * n + q);
                }
                for j in p + 1..q {
                    rotate(&mut a, p * n + j, j * n + q);
                }
                for j in q + 1..n {
                    rotate(&mut a, p * n + j, q * n + j);
                }
                for j in 0..n {
                    rotate(&mut v, j * n + p, j * n + q);
                }
            }
        }

        for i in 0..n {
            b[i] = b[i] + z[i];
            d[i] = b[i];
            z[i] = F::zero();
        }
    }
    if !converged {
        return Err(EigenError::NonConvergence {
            sweeps: max_sweeps,
            off_diagonal: off_diag_sum.to_f64().unwrap_or(f64::NAN),
        });
    }

    // Ascending sort, stable in the rotation-schedule order on ties.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues"));

    let eigenvalues: Vec<F> = order.iter().map(|&i| d[i]).collect();
    let eigenvectors: Vec<Vec<F>> = order
        .iter()
        .map(|&col| (0..n).map(|row| v[row * n + col]).collect())
        .collect();
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}
