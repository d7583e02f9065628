//! Explicit codes: block constructions, the 28 lines, simplices, binary
//! k-codes and the randomized concatenation.
//!
//! Deterministic constructions are built from an exact Gram matrix, certified
//! on the rational backend and only then embedded.

mod concat;
mod random;

pub use concat::{concatenated_code, ConcatOutcome, ConcatParams, ConcatReport, CopySeed};
pub use random::{random_rotation, random_unit_vectors, rotate_code, RngStream};

use num_rational::BigRational;

use crate::codes::Code;
use crate::error::{Error, Result};
use crate::matcore::{embed_from_gram, exact, frac, rank_of, PsdVerdict, SymMatrix, Tolerance};

/// Largest code `binary_kcode` will enumerate.
pub const KCODE_CAP: u64 = 100_000;

/// Gram matrix with `n - 1` diagonal blocks `[[1, -1/3], [-1/3, 1]]` and `1/3` elsewhere.
pub fn lemmens_seidel_gram(n: usize) -> Result<SymMatrix> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("lemmens-seidel needs n >= 3, got {n}")));
    }
    block_gram(n - 1, 2, frac(1, 3))
}

/// `2n - 2` unit vectors in `R^n` with all inner products `+-1/3`.
pub fn lemmens_seidel_code(n: usize) -> Result<Code> {
    let gram = lemmens_seidel_gram(n)?;
    certified_embedding(&gram, n)
}

/// Gram matrix `alpha J + blockdiag((1 + alpha) I - 2 alpha J_r)` with `alpha = 1/(2r - 1)`
/// and `floor((n - 1)/(r - 1))` blocks.
pub fn odd_reciprocal_gram(n: usize, r: usize) -> Result<SymMatrix> {
    if r < 2 {
        return Err(Error::InvalidParams(format!("block size r must be at least 2, got {r}")));
    }
    if n < r {
        return Err(Error::InvalidParams(format!("need n >= r, got n = {n}, r = {r}")));
    }
    let blocks = (n - 1) / (r - 1);
    block_gram(blocks, r, frac(1, 2 * r as i64 - 1))
}

/// `r floor((n - 1)/(r - 1))` unit vectors in `R^n` at angle `1/(2r - 1)`.
pub fn odd_reciprocal_code(n: usize, r: usize) -> Result<Code> {
    let gram = odd_reciprocal_gram(n, r)?;
    certified_embedding(&gram, n)
}

fn block_gram(blocks: usize, size: usize, alpha: BigRational) -> Result<SymMatrix> {
    let one = frac(1, 1);
    let neg = -alpha.clone();
    SymMatrix::from_fn_rational(blocks * size, |i, j| {
        if i == j {
            one.clone()
        } else if i / size == j / size {
            neg.clone()
        } else {
            alpha.clone()
        }
    })
}

/// Checks PSD and `rank <= dim` exactly, then embeds and pads to `R^dim`.
fn certified_embedding(gram: &SymMatrix, dim: usize) -> Result<Code> {
    let q = gram
        .rational_entries()
        .ok_or_else(|| Error::InternalError("construction Gram must be rational".into()))?;
    let rank = match exact::exact_psd(q, gram.order()) {
        PsdVerdict::Psd { rank, .. } => rank,
        PsdVerdict::NotPsd { index, value } => {
            return Err(Error::InternalError(format!("construction Gram not PSD (pivot {index}: {value})")))
        }
    };
    if rank > dim {
        return Err(Error::InternalError(format!("construction Gram has rank {rank} > {dim}")));
    }
    let tol = Tolerance::default();
    let code = embed_from_gram(gram, &tol)?;
    if code.dim() != rank {
        return Err(Error::InternalError(format!(
            "float rank {} disagrees with exact rank {rank}",
            code.dim()
        )));
    }
    Ok(code.padded(dim))
}

/// Exact rank of a construction's Gram matrix.
pub fn exact_gram_rank(gram: &SymMatrix) -> Result<usize> {
    rank_of(gram, &Tolerance::default())
}

/// The 28 permutations of `(1,1,1,1,1,1,-3,-3)` scaled by `1/sqrt(24)`, in `R^8`.
///
/// Ordered lexicographically by the positions of the two `-3` entries.
pub fn seven_dim_28_lines() -> Code {
    let scale = 24f64.sqrt().recip();
    let mut vectors = Vec::with_capacity(28);
    for a in 0..8 {
        for b in (a + 1)..8 {
            let v = (0..8).map(|i| if i == a || i == b { -3.0 * scale } else { scale }).collect();
            vectors.push(v);
        }
    }
    Code::new(8, vectors).expect("28 lines are unit vectors")
}

/// Gram matrix of the regular simplex: `1` on the diagonal, `-1/r` elsewhere.
pub fn regular_simplex_gram(r: usize) -> Result<SymMatrix> {
    if r == 0 {
        return Err(Error::InvalidParams("simplex dimension must be positive".into()));
    }
    let off = frac(-1, r as i64);
    SymMatrix::from_fn_rational(r + 1, |i, j| if i == j { frac(1, 1) } else { off.clone() })
}

/// `r + 1` unit vectors in `R^r` with pairwise inner product `-1/r`.
pub fn regular_simplex(r: usize) -> Result<Code> {
    certified_embedding(&regular_simplex_gram(r)?, r)
}

/// `C(n, k)` without overflow for the sizes we care about; saturates at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Indicator vectors of all `k`-subsets of `[n]`, scaled by `1/sqrt(k)`, in lexicographic order.
pub fn binary_kcode(n: usize, k: usize) -> Result<Code> {
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    let size = binomial(n as u64, k as u64);
    if size > KCODE_CAP {
        return Err(Error::TooLarge(format!("C({n}, {k}) = {size} exceeds {KCODE_CAP}")));
    }
    let scale = (k as f64).sqrt().recip();
    let mut subset: Vec<usize> = (0..k).collect();
    let mut vectors = Vec::with_capacity(size as usize);
    loop {
        let mut v = vec![0.0; n];
        subset.iter().for_each(|&i| v[i] = scale);
        vectors.push(v);
        // advance to the next subset in lexicographic order
        let Some(pos) = (0..k).rev().find(|&p| subset[p] < n - k + p) else {
            break;
        };
        subset[pos] += 1;
        for p in (pos + 1)..k {
            subset[p] = subset[p - 1] + 1;
        }
    }
    Code::new(n, vectors)
}

/// The inner products of `binary_kcode(_, k)`: `{0, 1/k, ..., (k-1)/k}`.
pub fn kcode_angles(k: usize) -> Vec<f64> {
    (0..k).map(|i| i as f64 / k as f64).collect()
}
