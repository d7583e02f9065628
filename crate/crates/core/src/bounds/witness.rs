//! Explicit `v = (x, ..., x, y, ..., y, ζ)` witnesses for the garbage bounds.
//!
//! The certificate's verdict is `<Mv, v> >= 0` on the Gram of `X ∪ Y ∪ {z}`;
//! the cardinality conclusion is recorded as measurements.

use crate::certificate::{Certificate, Witness};
use crate::codes::Code;
use crate::error::{Error, Result};
use crate::matcore::{quadratic_form, Tolerance};

fn check_sets(code: &Code, x: &[usize], y: &[usize], z: usize) -> Result<Vec<usize>> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::InvalidParams("X and Y must be non-empty".into()));
    }
    let all: Vec<usize> = x.iter().chain(y).copied().chain(std::iter::once(z)).collect();
    let mut seen = vec![false; code.len()];
    for &v in &all {
        if v >= code.len() {
            return Err(Error::InvalidIndex { index: v, len: code.len() });
        }
        if seen[v] {
            return Err(Error::InvalidParams(format!("vertex {v} repeated across X, Y, z")));
        }
        seen[v] = true;
    }
    Ok(all)
}

fn average(code: &Code, a: &[usize], b: &[usize]) -> f64 {
    let sum: f64 = a.iter().flat_map(|&i| b.iter().map(move |&j| code.inner(i, j))).sum();
    sum / (a.len() * b.len()) as f64
}

fn evaluate(code: &Code, all: &[usize], nx: usize, ny: usize, coeffs: (f64, f64, f64)) -> Result<(f64, Vec<f64>)> {
    let (cx, cy, cz) = coeffs;
    let v: Vec<f64> = (0..all.len())
        .map(|k| if k < nx { cx } else if k < nx + ny { cy } else { cz })
        .collect();
    let gram = crate::codes::gram_of(&code.subset(all)?);
    Ok((quadratic_form(&gram, &v)?, v))
}

/// Witness for `[-1, -β] ∪ {α}`-codes: `Y` attaches positively to everything,
/// `X` attaches negatively to `z`; `|Y| > 1/α²` should force `|X| < 1/β²`.
pub fn one_angle_garbage_witness(
    code: &Code,
    x: &[usize],
    y: &[usize],
    z: usize,
    alpha: f64,
    beta: f64,
    tol: &Tolerance,
) -> Result<Certificate> {
    if !(alpha > 0.0 && alpha < 1.0 && beta > 0.0 && beta < 1.0) {
        return Err(Error::InvalidParams(format!("alpha, beta must lie in (0, 1), got {alpha}, {beta}")));
    }
    let all = check_sets(code, x, y, z)?;
    let (nx, ny) = (x.len() as f64, y.len() as f64);
    let alpha_x = if x.len() > 1 {
        let s: f64 = x.iter().enumerate().flat_map(|(a, &i)| x[a + 1..].iter().map(move |&j| code.inner(i, j))).sum();
        s / (nx * (nx - 1.0) / 2.0)
    } else {
        alpha
    };
    let beta_z = -average(code, x, &[z]);
    let denom = alpha - alpha * alpha + (1.0 - alpha) / ny;
    let cy = -(alpha * (1.0 + beta_z) / ny) / denom;
    let cz = beta_z - cy * ny * alpha;
    let (form, v) = evaluate(code, &all, x.len(), y.len(), (1.0 / nx, cy, cz))?;
    let closed = (1.0 - alpha_x) / nx + alpha_x - beta_z * beta_z - alpha * alpha * (1.0 + beta_z).powi(2) / denom;
    let applicable = ny > 1.0 / (alpha * alpha);
    let bound = 1.0 / (beta * beta);
    Ok(Certificate::inequality("one-angle-garbage", "one angle garbage", 0.0, form, tol.psd_slack)
        .with_witness(Witness::Vector { values: v })
        .measure("closed_form", closed)
        .measure("beta_z", beta_z)
        .measure("x_size", nx)
        .measure("x_bound", bound)
        .measure("applicable", f64::from(u8::from(applicable)))
        .measure("conclusion_holds", f64::from(u8::from(!applicable || nx < bound))))
}

/// Witness with a general `z`-angle `γ ≠ α`: `|Y| > 4/(α(γ-α)²)` should force
/// `|X| < 1/(γ-α)²`.
pub fn garbage_witness(
    code: &Code,
    x: &[usize],
    y: &[usize],
    z: usize,
    alpha: f64,
    gamma: f64,
    tol: &Tolerance,
) -> Result<Certificate> {
    if !(alpha > 0.0 && alpha < 1.0) || !(-1.0..1.0).contains(&gamma) || (gamma - alpha).abs() <= tol.angle_tol {
        return Err(Error::InvalidParams(format!("need alpha in (0, 1), gamma in [-1, 1) distinct, got {alpha}, {gamma}")));
    }
    let all = check_sets(code, x, y, z)?;
    let (nx, ny) = (x.len() as f64, y.len() as f64);
    let alpha_y = average(code, x, y);
    let gamma_z = average(code, x, &[z]);
    let denom = alpha - alpha * alpha + (1.0 - alpha) / ny;
    let cy = -((alpha_y - alpha * gamma_z) / ny) / denom;
    let cz = -(gamma_z + cy * ny * alpha);
    let (form, v) = evaluate(code, &all, x.len(), y.len(), (1.0 / nx, cy, cz))?;
    let closed = (1.0 - alpha) / nx + alpha - gamma_z * gamma_z - (alpha_y - alpha * gamma_z).powi(2) / denom;
    let gap = (gamma - alpha).powi(2);
    let applicable = ny > 4.0 / (alpha * gap);
    let bound = 1.0 / gap;
    Ok(Certificate::inequality("garbage", "garbage", 0.0, form, tol.psd_slack)
        .with_witness(Witness::Vector { values: v })
        .measure("upper_form", closed)
        .measure("alpha_y", alpha_y)
        .measure("gamma_z", gamma_z)
        .measure("x_size", nx)
        .measure("x_bound", bound)
        .measure("applicable", f64::from(u8::from(applicable)))
        .measure("conclusion_holds", f64::from(u8::from(!applicable || nx < bound))))
}
