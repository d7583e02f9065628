//! Symmetric-matrix numerics: spectra, rank, PSD verdicts and Gram embeddings.

mod eigen;
pub(crate) mod exact;
mod sym;
mod tolerance;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

pub use eigen::{sym_eigen, sym_eigenvalues, Spectrum};
pub use exact::PsdVerdict;
pub use sym::{frac, Backend, SymMatrix};
pub use tolerance::Tolerance;

use crate::certificate::{Certificate, Witness};
use crate::codes::Code;
use crate::error::{Error, Result};

/// Rank: thresholded spectrum on the float backend, exact elimination on the rational one.
pub fn rank_of(m: &SymMatrix, tol: &Tolerance) -> Result<usize> {
    match m.rational_entries() {
        Some(q) => Ok(exact::exact_rank(q, m.order())),
        None => Ok(float_rank(&sym_eigenvalues(m)?, tol)),
    }
}

/// Number of eigenvalues above `eig_zero * max(1, |lambda|max)`.
pub fn float_rank(eigenvalues: &[f64], tol: &Tolerance) -> usize {
    let scale = eigenvalues.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    eigenvalues.iter().filter(|v| v.abs() > tol.eig_zero * scale).count()
}

/// PSD verdict; the certificate carries the smallest eigenvalue or the failing pivot.
pub fn is_psd(m: &SymMatrix, tol: &Tolerance) -> Result<Certificate> {
    if let Some(q) = m.rational_entries() {
        let cert = match exact::exact_psd(q, m.order()) {
            PsdVerdict::Psd { rank, min_pivot } => {
                let p = min_pivot.to_f64().unwrap_or(0.0);
                Certificate::inequality("psd", "gram-realizability", -p, 0.0, 0.0)
                    .with_witness(Witness::Pivot { index: rank, value: min_pivot.to_string() })
                    .measure("rank", rank as f64)
            }
            PsdVerdict::NotPsd { index, value } => {
                let v = value.to_f64().unwrap_or(f64::NEG_INFINITY);
                Certificate::inequality("psd", "gram-realizability", -v, 0.0, 0.0)
                    .require(false)
                    .with_witness(Witness::Pivot { index, value: value.to_string() })
            }
        };
        return Ok(cert);
    }
    let values = sym_eigenvalues(m)?;
    let scale = values.iter().fold(1.0_f64, |a, v| a.max(v.abs()));
    let lambda_min = *values.last().expect("non-empty");
    Ok(
        Certificate::inequality("psd", "gram-realizability", -lambda_min, tol.psd_slack * scale, 0.0)
            .with_witness(Witness::Eigenvalue { value: lambda_min })
            .measure("lambda_min", lambda_min)
            .measure("rank", float_rank(&values, tol) as f64),
    )
}

/// `trace(M)^2 / trace(M^2)`, a lower bound on the rank of any symmetric matrix.
pub fn trace_rank_lower_bound(m: &SymMatrix) -> Result<f64> {
    if let Some(q) = trace_rank_lower_bound_exact(m) {
        return Ok(q?.to_f64().unwrap_or(f64::NAN));
    }
    let t2 = m.trace_of_square();
    if t2 == 0.0 {
        return Err(Error::DegenerateInput("trace(M^2) = 0 for the zero matrix".into()));
    }
    Ok(m.trace().powi(2) / t2)
}

/// Exact trace ratio for rational-backend matrices (`None` on the float backend).
pub fn trace_rank_lower_bound_exact(m: &SymMatrix) -> Option<Result<BigRational>> {
    let q = m.rational_entries()?;
    let n = m.order();
    let trace: BigRational = (0..n).map(|i| q[i * n + i].clone()).sum();
    let t2: BigRational = q.iter().map(|v| v * v).sum();
    if t2.is_zero() {
        return Some(Err(Error::DegenerateInput("trace(M^2) = 0 for the zero matrix".into())));
    }
    Some(Ok(&trace * &trace / t2))
}

/// Realizes a PSD unit-diagonal matrix as unit vectors in `R^rank`.
///
/// Vectors are rows of `V sqrt(Lambda)` over the non-zero spectrum, then
/// renormalized so truncation noise cannot break unit length.
pub fn embed_from_gram(m: &SymMatrix, tol: &Tolerance) -> Result<Code> {
    let n = m.order();
    for i in 0..n {
        let d = m.get(i, i);
        if (d - 1.0).abs() > tol.angle_tol {
            return Err(Error::NotUnitDiagonal { index: i, value: d });
        }
    }
    let spectrum = sym_eigen(&m.to_float())?;
    let scale = spectrum.max_abs().max(1.0);
    if spectrum.min() < -tol.psd_slack * scale {
        return Err(Error::NotRealizable { min_eigenvalue: spectrum.min() });
    }
    if let Some(q) = m.rational_entries() {
        if let PsdVerdict::NotPsd { value, .. } = exact::exact_psd(q, n) {
            return Err(Error::NotRealizable { min_eigenvalue: value.to_f64().unwrap_or(f64::NEG_INFINITY) });
        }
    }
    let rank = float_rank(&spectrum.eigenvalues, tol).max(1);
    let vecs = spectrum.eigenvectors.as_ref().expect("requested");
    let mut vectors: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..rank).map(|k| spectrum.eigenvalues[k].max(0.0).sqrt() * vecs[k][i]).collect())
        .collect();
    for v in &mut vectors {
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::NotRealizable { min_eigenvalue: spectrum.min() });
        }
        v.iter_mut().for_each(|x| *x /= norm);
    }
    Code::new(rank, vectors)
}

/// The small-denominator fraction equal to `x` up to rounding, if one exists.
///
/// Used to lift float parameters such as `1/3` or `0.2` back to exact values.
pub fn snap_rational(x: f64) -> Option<BigRational> {
    let q = num_rational::Ratio::<i64>::approximate_float(x)?;
    let back = *q.numer() as f64 / *q.denom() as f64;
    if *q.denom() > 1_000_000 || (back - x).abs() > 4.0 * f64::EPSILON * x.abs().max(1.0) {
        return None;
    }
    Some(frac(*q.numer(), *q.denom()))
}

/// `v^T M v`.
pub fn quadratic_form(m: &SymMatrix, v: &[f64]) -> Result<f64> {
    if v.len() != m.order() {
        return Err(Error::DimensionMismatch { expected: m.order(), got: v.len() });
    }
    Ok(m.mul_vec(v).iter().zip(v).map(|(a, b)| a * b).sum())
}

/// `v^T M v` in exact arithmetic (rational backend only).
pub fn quadratic_form_exact(m: &SymMatrix, v: &[BigRational]) -> Result<BigRational> {
    let n = m.order();
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: v.len() });
    }
    let q = m
        .rational_entries()
        .ok_or_else(|| Error::InvalidParams("exact quadratic form needs the rational backend".into()))?;
    let mut acc = BigRational::zero();
    for i in 0..n {
        if v[i].is_zero() {
            continue;
        }
        let row: BigRational = (0..n).map(|j| &q[i * n + j] * &v[j]).sum();
        acc += &v[i] * row;
    }
    Ok(acc)
}
