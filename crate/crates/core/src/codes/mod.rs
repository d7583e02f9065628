//! Spherical codes: the vector data model, L-membership, switching and projections.

mod angles;
mod projection;

pub use angles::{
    angle_set_after_projection, validate_code, AngleElement, AngleParams, AngleSet, ValidationReport, Violation,
};
pub use projection::{predicted_projection_angle, project_onto_complement, span_inner_product};
pub(crate) use projection::clique_gamma;

use crate::error::{Error, Result};
use crate::matcore::{SymMatrix, Tolerance};

/// An ordered list of unit vectors in `R^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Code {
    dim: usize,
    vectors: Vec<Vec<f64>>,
}

impl Code {
    /// Checks non-emptiness, lengths and unit norms at the default tolerance.
    pub fn new(dim: usize, vectors: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_tolerance(dim, vectors, &Tolerance::default())
    }

    pub fn with_tolerance(dim: usize, vectors: Vec<Vec<f64>>, tol: &Tolerance) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::InvalidParams("a code needs at least one vector".into()));
        }
        if dim == 0 {
            return Err(Error::InvalidParams("dimension must be positive".into()));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
            }
            let norm = dot(v, v).sqrt();
            if !norm.is_finite() || (norm - 1.0).abs() > tol.angle_tol {
                return Err(Error::InvalidParams(format!("vector {i} has norm {norm}, expected 1")));
            }
        }
        Ok(Code { dim, vectors })
    }

    /// Normalizes every vector first; fails on zero vectors.
    pub fn normalized(dim: usize, mut vectors: Vec<Vec<f64>>) -> Result<Self> {
        for (i, v) in vectors.iter_mut().enumerate() {
            let norm = dot(v, v).sqrt();
            if norm == 0.0 || !norm.is_finite() {
                return Err(Error::ZeroProjection { index: i });
            }
            v.iter_mut().for_each(|x| *x /= norm);
        }
        Self::new(dim, vectors)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[f64] {
        &self.vectors[i]
    }

    pub fn into_vectors(self) -> Vec<Vec<f64>> {
        self.vectors
    }

    pub fn inner(&self, i: usize, j: usize) -> f64 {
        dot(&self.vectors[i], &self.vectors[j])
    }

    /// The sub-code on `indices`, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Result<Code> {
        let vectors = indices
            .iter()
            .map(|&i| {
                self.vectors
                    .get(i)
                    .cloned()
                    .ok_or(Error::InvalidIndex { index: i, len: self.len() })
            })
            .collect::<Result<Vec<_>>>()?;
        if vectors.is_empty() {
            return Err(Error::InvalidParams("empty subset".into()));
        }
        Ok(Code { dim: self.dim, vectors })
    }

    /// Pads every vector with zeros up to `dim`.
    pub fn padded(mut self, dim: usize) -> Code {
        if dim > self.dim {
            for v in &mut self.vectors {
                v.resize(dim, 0.0);
            }
            self.dim = dim;
        }
        self
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// The Gram matrix `(<v_i, v_j>)`.
pub fn gram_of(code: &Code) -> SymMatrix {
    SymMatrix::from_fn(code.len(), |i, j| code.inner(i, j)).expect("codes are non-empty")
}

/// Returns `alpha` when every off-diagonal Gram entry is `+alpha` or `-alpha` (within `angle_tol`).
///
/// `alpha` is the mean of the absolute off-diagonal entries.
pub fn detect_equiangular(code: &Code, tol: &Tolerance) -> Option<f64> {
    let n = code.len();
    if n < 2 {
        return None;
    }
    let mut magnitudes = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            magnitudes.push(code.inner(i, j).abs());
        }
    }
    let alpha = magnitudes.iter().sum::<f64>() / magnitudes.len() as f64;
    magnitudes
        .iter()
        .all(|m| (m - alpha).abs() <= tol.angle_tol)
        .then_some(alpha)
}

/// Negates the vectors at `indices`; the underlying lines are unchanged.
pub fn switch_vertices(code: &Code, indices: &[usize]) -> Result<Code> {
    let mut out = code.clone();
    let mut flip = vec![false; code.len()];
    for &i in indices {
        if i >= code.len() {
            return Err(Error::InvalidIndex { index: i, len: code.len() });
        }
        flip[i] = true;
    }
    for (v, f) in out.vectors.iter_mut().zip(flip) {
        if f {
            v.iter_mut().for_each(|x| *x = -*x);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(n: usize) -> Code {
        Code::new(n, (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect())
            .unwrap()
    }

    fn plane_simplex() -> Code {
        let v = (0..3)
            .map(|k| {
                let a = 2.0 * std::f64::consts::PI * k as f64 / 3.0;
                vec![a.cos(), a.sin()]
            })
            .collect();
        Code::new(2, v).unwrap()
    }

    #[test]
    fn code_invariants() {
        assert!(Code::new(2, vec![]).is_err());
        assert!(Code::new(2, vec![vec![1.0, 0.0, 0.0]]).is_err());
        assert!(Code::new(2, vec![vec![1.0, 1.0]]).is_err());
        let c = Code::normalized(2, vec![vec![3.0, 4.0]]).unwrap();
        assert!((c.vector(0)[0] - 0.6).abs() < 1e-15);
        assert!(Code::normalized(2, vec![vec![0.0, 0.0]]).is_err());
    }

    #[test]
    fn gram_examples() {
        let g = gram_of(&basis(3));
        assert_eq!(g, SymMatrix::identity(3).unwrap());
        let g = gram_of(&plane_simplex());
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { -0.5 };
                assert!((g.get(i, j) - want).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn equiangular_detection() {
        let tol = Tolerance::default();
        assert_eq!(detect_equiangular(&basis(3), &tol), Some(0.0));
        let a = detect_equiangular(&plane_simplex(), &tol).unwrap();
        assert!((a - 0.5).abs() < 1e-15);
        assert_eq!(detect_equiangular(&basis(1), &tol), None);
        let mixed = Code::normalized(2, vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert_eq!(detect_equiangular(&mixed, &tol), None);
    }

    #[test]
    fn switching() {
        let c = plane_simplex();
        assert_eq!(switch_vertices(&c, &[]).unwrap(), c);
        let all = switch_vertices(&c, &[0, 1, 2]).unwrap();
        assert_eq!(gram_of(&all), gram_of(&c));
        let one = switch_vertices(&c, &[1]).unwrap();
        let tol = Tolerance::default();
        assert_eq!(detect_equiangular(&one, &tol), detect_equiangular(&c, &tol));
        assert!(matches!(switch_vertices(&c, &[3]), Err(Error::InvalidIndex { index: 3, len: 3 })));
    }
}
