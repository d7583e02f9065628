use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::random::{random_rotation, rotate_code, RngStream};
use super::{binary_kcode, binomial, regular_simplex, KCODE_CAP};
use crate::codes::{dot, Code};
use crate::error::{Error, Result};

/// Parameters of the simplex-plus-rotated-copies construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcatParams {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub alpha1: f64,
    /// `sqrt(1/alpha1 - 1)`
    pub lambda: f64,
    /// `sqrt((4 ln C(n,k) + 2 ln n) / n)`
    pub t_threshold: f64,
    /// `(1/r - lambda^2 t) / (lambda^2 + 1)`
    pub beta_target: f64,
    /// `alpha_i = (lambda^2 (i-1)/k + 1) / (lambda^2 + 1)` for `i = 1..=k`
    pub alphas: Vec<f64>,
    pub seed: u64,
    pub max_attempts: u32,
}

impl ConcatParams {
    pub fn new(n: usize, k: usize, r: usize, alpha1: f64, seed: u64) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidParams(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
        }
        if r == 0 || r * r > n {
            return Err(Error::InvalidParams(format!("need 1 <= r <= sqrt(n), got r = {r}, n = {n}")));
        }
        if !(alpha1 > 0.0 && alpha1 < 1.0) {
            return Err(Error::InvalidParams(format!("alpha1 must lie in (0, 1), got {alpha1}")));
        }
        let size = binomial(n as u64, k as u64);
        if size > KCODE_CAP {
            return Err(Error::TooLarge(format!("C({n}, {k}) = {size} exceeds {KCODE_CAP}")));
        }
        let lambda = (1.0 / alpha1 - 1.0).sqrt();
        let l2 = lambda * lambda;
        let nf = n as f64;
        let t_threshold = ((4.0 * (size as f64).ln() + 2.0 * nf.ln()) / nf).sqrt();
        let beta_target = (1.0 / r as f64 - l2 * t_threshold) / (l2 + 1.0);
        let alphas = (1..=k).map(|i| (l2 * (i - 1) as f64 / k as f64 + 1.0) / (l2 + 1.0)).collect();
        Ok(ConcatParams { n, k, r, alpha1, lambda, t_threshold, beta_target, alphas, seed, max_attempts: 32 })
    }

    /// `(1 + r) C(n, k)`
    pub fn size(&self) -> usize {
        (1 + self.r) * binomial(self.n as u64, self.k as u64) as usize
    }
}

/// Which RNG stream produced the rotation of one copy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopySeed {
    pub copy: usize,
    pub seed: u64,
    pub stream: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcatReport {
    pub attempts: u32,
    /// Whether `achieved_beta >= beta_target`.
    pub success: bool,
    pub seed_used: u64,
    pub beta_target: f64,
    pub achieved_beta: f64,
    pub max_cross: f64,
    /// Largest distance from a within-copy inner product to the nearest `alpha_i`.
    pub within_copy_deviation: f64,
    pub copies: Vec<CopySeed>,
}

#[derive(Debug, Clone)]
pub struct ConcatOutcome {
    pub code: Code,
    pub achieved_beta: f64,
    pub report: ConcatReport,
}

/// Attaches a randomly rotated, `lambda`-scaled k-code to every vertex of a regular
/// `r`-simplex and normalizes, retrying seeds `seed, seed + 1, ...` until every
/// cross-copy inner product is at most `-beta_target`.
pub fn concatenated_code(p: &ConcatParams) -> Result<ConcatOutcome> {
    let base = binary_kcode(p.n, p.k)?;
    let simplex = regular_simplex(p.r)?;
    let mut last_cross = f64::NAN;
    for attempt in 0..p.max_attempts.max(1) {
        let seed = p.seed.wrapping_add(attempt as u64);
        let copies: Vec<CopySeed> =
            (0..=p.r).map(|c| CopySeed { copy: c, seed, stream: c as u64 }).collect();
        let rotated: Vec<Code> = copies
            .par_iter()
            .map(|cs| {
                let mut rng = RngStream::with_stream(cs.seed, cs.stream);
                let q = random_rotation(p.n, &mut rng);
                rotate_code(&base, &q)
            })
            .collect::<Result<_>>()?;

        let scale = (p.lambda * p.lambda + 1.0).sqrt().recip();
        let mut vectors = Vec::with_capacity(p.size());
        for (copy, v) in rotated.iter().zip(simplex.vectors()) {
            for u in copy.vectors() {
                let mut w: Vec<f64> = u.iter().map(|x| p.lambda * x * scale).collect();
                w.extend(v.iter().map(|x| x * scale));
                vectors.push(w);
            }
        }
        let code = Code::new(p.n + p.r, vectors)?;
        let block = base.len();
        let (max_cross, within) = pair_extremes(&code, block, &p.alphas);
        last_cross = max_cross;
        let achieved_beta = -max_cross;
        let success = achieved_beta >= p.beta_target;
        if success {
            let report = ConcatReport {
                attempts: attempt + 1,
                success,
                seed_used: seed,
                beta_target: p.beta_target,
                achieved_beta,
                max_cross,
                within_copy_deviation: within,
                copies,
            };
            return Ok(ConcatOutcome { code, achieved_beta, report });
        }
    }
    Err(Error::RandomizedFailure { attempts: p.max_attempts.max(1), max_cross: last_cross })
}

/// Max cross-copy inner product and max within-copy deviation from `alphas`.
fn pair_extremes(code: &Code, block: usize, alphas: &[f64]) -> (f64, f64) {
    let n = code.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut cross = f64::NEG_INFINITY;
            let mut within = 0.0_f64;
            let vi = code.vector(i);
            for j in (i + 1)..n {
                let g = dot(vi, code.vector(j));
                if i / block == j / block {
                    let d = alphas.iter().map(|a| (g - a).abs()).fold(f64::INFINITY, f64::min);
                    within = within.max(d);
                } else {
                    cross = cross.max(g);
                }
            }
            (cross, within)
        })
        .reduce(|| (f64::NEG_INFINITY, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_parameters() {
        let p = ConcatParams::new(30, 2, 3, 0.5, 0).unwrap();
        assert!((p.lambda - 1.0).abs() < 1e-15);
        assert_eq!(p.alphas, vec![0.5, 0.75]);
        assert_eq!(p.size(), 1740);
        assert!((p.beta_target - (1.0 / 3.0 - p.t_threshold) / 2.0).abs() < 1e-15);
        assert!(ConcatParams::new(30, 2, 6, 0.5, 0).is_err());
        assert!(ConcatParams::new(30, 2, 3, 1.0, 0).is_err());
    }

    #[test]
    fn small_instance_is_deterministic() {
        let p = ConcatParams::new(9, 2, 2, 0.25, 4).unwrap();
        let a = concatenated_code(&p).unwrap();
        let b = concatenated_code(&p).unwrap();
        assert_eq!(a.code, b.code);
        assert_eq!(a.code.len(), 3 * 36);
        assert_eq!(a.code.dim(), 11);
        assert!(a.report.within_copy_deviation < 1e-12);
        assert!(a.report.success);
    }

    #[test]
    fn retry_limit_is_reported() {
        let mut p = ConcatParams::new(9, 2, 2, 0.25, 4).unwrap();
        // no rotation can make every cross product <= -1
        p.beta_target = 1.0;
        p.max_attempts = 2;
        assert!(matches!(concatenated_code(&p), Err(Error::RandomizedFailure { attempts: 2, .. })));
    }
}
