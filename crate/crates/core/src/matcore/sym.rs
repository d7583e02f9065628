use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Numeric representation of the entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Rational,
    Float64,
}

#[derive(Debug, Clone, PartialEq)]
enum Entries {
    Float(Vec<f64>),
    Rational(Vec<BigRational>),
}

/// Dense symmetric matrix, stored row-major in full.
///
/// Every constructor either mirrors the upper triangle or checks symmetry
/// exactly, so `get(i, j) == get(j, i)` always holds bit for bit.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    entries: Entries,
}

impl SymMatrix {
    /// Builds a float matrix from `f(i, j)` evaluated on `i <= j`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        check_order(order)?;
        let mut data = vec![0.0; order * order];
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                data[i * order + j] = v;
                data[j * order + i] = v;
            }
        }
        Ok(SymMatrix { order, entries: Entries::Float(data) })
    }

    /// Builds a rational matrix from `f(i, j)` evaluated on `i <= j`.
    pub fn from_fn_rational(order: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Result<Self> {
        check_order(order)?;
        let mut data = vec![BigRational::zero(); order * order];
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                data[j * order + i] = v.clone();
                data[i * order + j] = v;
            }
        }
        Ok(SymMatrix { order, entries: Entries::Rational(data) })
    }

    /// Float matrix from explicit rows; rejects asymmetric or ragged input.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        check_order(order)?;
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::DimensionMismatch { expected: order, got: row.len() });
            }
            for j in 0..i {
                if row[j] != rows[j][i] {
                    return Err(Error::InvalidMatrix(format!("entries ({i},{j}) and ({j},{i}) differ")));
                }
            }
        }
        let data = rows.iter().flatten().copied().collect();
        Ok(SymMatrix { order, entries: Entries::Float(data) })
    }

    pub fn identity(order: usize) -> Result<Self> {
        Self::from_fn(order, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// The all-ones matrix `J`.
    pub fn ones(order: usize) -> Result<Self> {
        Self::from_fn(order, |_, _| 1.0)
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn identity_rational(order: usize) -> Result<Self> {
        Self::from_fn_rational(order, |i, j| if i == j { BigRational::one() } else { BigRational::zero() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn backend(&self) -> Backend {
        match self.entries {
            Entries::Float(_) => Backend::Float64,
            Entries::Rational(_) => Backend::Rational,
        }
    }

    /// Entry as a float (rational entries are rounded).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let k = i * self.order + j;
        match &self.entries {
            Entries::Float(d) => d[k],
            Entries::Rational(d) => d[k].to_f64().unwrap_or(f64::NAN),
        }
    }

    /// Exact entry, if the matrix is on the rational backend.
    pub fn get_rational(&self, i: usize, j: usize) -> Option<&BigRational> {
        match &self.entries {
            Entries::Rational(d) => Some(&d[i * self.order + j]),
            Entries::Float(_) => None,
        }
    }

    pub(crate) fn rational_entries(&self) -> Option<&[BigRational]> {
        match &self.entries {
            Entries::Rational(d) => Some(d),
            Entries::Float(_) => None,
        }
    }

    /// Row-major float entries (converted if rational).
    pub fn to_f64_vec(&self) -> Vec<f64> {
        match &self.entries {
            Entries::Float(d) => d.clone(),
            Entries::Rational(d) => d.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect(),
        }
    }

    /// Float-backend copy of this matrix.
    pub fn to_float(&self) -> SymMatrix {
        SymMatrix { order: self.order, entries: Entries::Float(self.to_f64_vec()) }
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.to_f64_vec().chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    /// `trace(M^2)`, i.e. the squared Frobenius norm.
    pub fn trace_of_square(&self) -> f64 {
        self.to_f64_vec().iter().map(|v| v * v).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.to_f64_vec().iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Principal submatrix on `indices` (in the given order).
    pub fn principal(&self, indices: &[usize]) -> Result<SymMatrix> {
        for &i in indices {
            if i >= self.order {
                return Err(Error::InvalidIndex { index: i, len: self.order });
            }
        }
        match &self.entries {
            Entries::Float(_) => Self::from_fn(indices.len(), |a, b| self.get(indices[a], indices[b])),
            Entries::Rational(d) => {
                Self::from_fn_rational(indices.len(), |a, b| d[indices[a] * self.order + indices[b]].clone())
            }
        }
    }

    /// `self + c * J`, on the same backend.
    pub fn add_scaled_ones(&self, c: f64) -> SymMatrix {
        SymMatrix::from_fn(self.order, |i, j| self.get(i, j) + c).expect("order checked")
    }

    pub fn add_scaled_ones_rational(&self, c: &BigRational) -> Option<SymMatrix> {
        let d = self.rational_entries()?;
        SymMatrix::from_fn_rational(self.order, |i, j| &d[i * self.order + j] + c).ok()
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        let d = self.to_f64_vec();
        d.chunks(self.order).map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }
}

fn check_order(order: usize) -> Result<()> {
    if order == 0 {
        Err(Error::InvalidMatrix("order must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Small helper: the fraction `num/den`.
pub fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}
