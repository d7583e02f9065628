use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use crate::codes::{dot, Code};
use crate::error::{Error, Result};

/// Portable seeded stream: ChaCha20 keyed by `seed`, on stream `stream`.
///
/// Uniforms take the top 53 bits of each `u64`; Gaussians use the
/// Box-Muller transform and consume two uniforms per pair of normals.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    rng: ChaCha20Rng,
    spare: Option<f64>,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    /// An independent stream derived from the same seed, e.g. one per copy.
    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        RngStream { seed, stream, rng, spare: None }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        (self.next_f64() * n as f64) as usize % n.max(1)
    }

    pub fn gaussian(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = 1.0 - self.next_f64();
        let u2 = self.next_f64();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * u2;
        self.spare = Some(radius * angle.sin());
        radius * angle.cos()
    }

    /// Uniform point on the sphere `S^{dim-1}`.
    pub fn unit_vector(&mut self, dim: usize) -> Vec<f64> {
        loop {
            let mut v: Vec<f64> = (0..dim).map(|_| self.gaussian()).collect();
            let norm = dot(&v, &v).sqrt();
            if norm > 1e-150 {
                v.iter_mut().for_each(|x| *x /= norm);
                return v;
            }
        }
    }
}

/// `count` i.i.d. uniform unit vectors in `R^dim`.
pub fn random_unit_vectors(count: usize, dim: usize, rng: &mut RngStream) -> Result<Code> {
    if count == 0 || dim == 0 {
        return Err(Error::InvalidParams("count and dim must be positive".into()));
    }
    Code::new(dim, (0..count).map(|_| rng.unit_vector(dim)).collect())
}

/// Haar-random orthogonal matrix (rows), from Gram-Schmidt on a Gaussian matrix.
pub fn random_rotation(dim: usize, rng: &mut RngStream) -> Vec<Vec<f64>> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(dim);
    while rows.len() < dim {
        let mut v: Vec<f64> = (0..dim).map(|_| rng.gaussian()).collect();
        for _ in 0..2 {
            for q in &rows {
                let c = dot(&v, q);
                v.iter_mut().zip(q).for_each(|(a, b)| *a -= c * b);
            }
        }
        let norm = dot(&v, &v).sqrt();
        if norm > 1e-8 {
            v.iter_mut().for_each(|x| *x /= norm);
            rows.push(v);
        }
    }
    rows
}

/// Applies `rotation` (rows of an orthogonal matrix) to every vector of `code`.
pub fn rotate_code(code: &Code, rotation: &[Vec<f64>]) -> Result<Code> {
    if rotation.len() != code.dim() {
        return Err(Error::DimensionMismatch { expected: code.dim(), got: rotation.len() });
    }
    let vectors = code
        .vectors()
        .iter()
        .map(|v| rotation.iter().map(|row| dot(row, v)).collect())
        .collect();
    Code::new(code.dim(), vectors)
}
