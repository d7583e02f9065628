//! Cyclic Jacobi eigensolver for dense symmetric matrices.

use crate::error::{Error, Result};

use super::sym::SymMatrix;

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_RTOL: f64 = 1e-12;

/// Eigenvalues (descending) with optional orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` belongs to `eigenvalues[k]`.
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    /// `max_k |M v_k - lambda_k v_k|`; zero when vectors were not requested.
    pub residual: f64,
}

impl Spectrum {
    pub fn max_abs(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        *self.eigenvalues.last().expect("spectrum of a non-empty matrix")
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues[0]
    }
}

/// Full eigendecomposition of a float-backend matrix.
pub fn sym_eigen(m: &SymMatrix) -> Result<Spectrum> {
    decompose(m, true)
}

/// Eigenvalues only (roughly half the work of [`sym_eigen`]).
pub fn sym_eigenvalues(m: &SymMatrix) -> Result<Vec<f64>> {
    Ok(decompose(m, false)?.eigenvalues)
}

fn decompose(m: &SymMatrix, want_vectors: bool) -> Result<Spectrum> {
    let n = m.order();
    let mut a = m.to_f64_vec();
    if let Some(bad) = a.iter().position(|v| !v.is_finite()) {
        return Err(Error::InvalidMatrix(format!("non-finite entry at ({}, {})", bad / n, bad % n)));
    }
    let original = if want_vectors { Some(a.clone()) } else { None };
    // rows of `vt` are the eigenvectors
    let mut vt: Vec<f64> = if want_vectors {
        (0..n * n).map(|k| if k / n == k % n { 1.0 } else { 0.0 }).collect()
    } else {
        Vec::new()
    };

    let norm: f64 = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    let target = OFF_DIAGONAL_RTOL * norm;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut vt, n, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].total_cmp(&a[i * n + i]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();

    let (eigenvectors, residual) = match original {
        Some(orig) => {
            let vecs: Vec<Vec<f64>> = order.iter().map(|&i| vt[i * n..(i + 1) * n].to_vec()).collect();
            let mut residual = 0.0_f64;
            for (lambda, v) in eigenvalues.iter().zip(&vecs) {
                for row in 0..n {
                    let mv: f64 = orig[row * n..(row + 1) * n].iter().zip(v).map(|(x, y)| x * y).sum();
                    residual = residual.max((mv - lambda * v[row]).abs());
                }
            }
            (Some(vecs), residual)
        }
        None => (None, 0.0),
    };
    Ok(Spectrum { eigenvalues, eigenvectors, residual })
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += 2.0 * a[i * n + j] * a[i * n + j];
        }
    }
    s.sqrt()
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut [f64], vt: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = if theta.is_finite() {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    } else {
        0.0
    };
    if t == 0.0 {
        return;
    }
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);

    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = akp - s * (akq + tau * akp);
        let new_kq = akq + s * (akp - tau * akq);
        a[k * n + p] = new_kp;
        a[p * n + k] = new_kp;
        a[k * n + q] = new_kq;
        a[q * n + k] = new_kq;
    }
    if !vt.is_empty() {
        let (lo, hi) = vt.split_at_mut(q * n);
        let vp = &mut lo[p * n..(p + 1) * n];
        let vq = &mut hi[..n];
        for (x, y) in vp.iter_mut().zip(vq.iter_mut()) {
            let (xp, xq) = (*x, *y);
            *x = xp - s * (xq + tau * xp);
            *y = xq + s * (xp - tau * xq);
        }
    }
}
