//! Fraction-preserving elimination for rank and PSD verdicts.
//!
//! Elimination first runs on `i128` fractions with checked arithmetic and
//! restarts on arbitrary-precision fractions if any step overflows. Both
//! paths normalize after every operation, so the result is exact either way.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, Signed, ToPrimitive, Zero};

type Small = Ratio<i128>;

trait Field: Clone {
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn div(&self, o: &Self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn to_big(&self) -> BigRational;
}

impl Field for Small {
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        self.checked_div(o)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_big(&self) -> BigRational {
        BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
    }
}

impl Field for BigRational {
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn div(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            None
        } else {
            Some(self / o)
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_big(&self) -> BigRational {
        self.clone()
    }
}

fn to_small(entries: &[BigRational]) -> Option<Vec<Small>> {
    entries
        .iter()
        .map(|q| Some(Small::new_raw(q.numer().to_i128()?, q.denom().to_i128()?)))
        .collect()
}

/// Exact rank of an `n x n` matrix given row-major.
pub fn exact_rank(entries: &[BigRational], n: usize) -> usize {
    if let Some(small) = to_small(entries) {
        if let Some(r) = rank_in(small, n) {
            return r;
        }
    }
    rank_in(entries.to_vec(), n).expect("big rationals never overflow")
}

fn rank_in<T: Field>(mut a: Vec<T>, n: usize) -> Option<usize> {
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot_row) = (rank..n).find(|&r| !a[r * n + col].is_zero()) else {
            continue;
        };
        if pivot_row != rank {
            for c in 0..n {
                a.swap(pivot_row * n + c, rank * n + c);
            }
        }
        let pivot = a[rank * n + col].clone();
        for r in (rank + 1)..n {
            if a[r * n + col].is_zero() {
                continue;
            }
            let factor = a[r * n + col].div(&pivot)?;
            for c in (col + 1)..n {
                if a[rank * n + c].is_zero() {
                    continue;
                }
                let delta = factor.mul(&a[rank * n + c])?;
                a[r * n + c] = a[r * n + c].sub(&delta)?;
            }
        }
        rank += 1;
        if rank == n {
            break;
        }
    }
    Some(rank)
}

/// Outcome of exact symmetric elimination.
#[derive(Debug, Clone, PartialEq)]
pub enum PsdVerdict {
    /// Positive semidefinite; `rank` positive pivots were taken.
    Psd { rank: usize, min_pivot: BigRational },
    /// Certificate of failure: a negative pivot at `index`, or (for a zero
    /// pivot with a non-zero row) the negative 2x2 minor `-b^2`.
    NotPsd { index: usize, value: BigRational },
}

/// Exact PSD test by symmetric elimination with diagonal pivoting.
pub fn exact_psd(entries: &[BigRational], n: usize) -> PsdVerdict {
    if let Some(small) = to_small(entries) {
        if let Some(v) = psd_in(small, n) {
            return v;
        }
    }
    psd_in(entries.to_vec(), n).expect("big rationals never overflow")
}

fn psd_in<T: Field>(mut a: Vec<T>, n: usize) -> Option<PsdVerdict> {
    let mut active: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    let mut min_pivot: Option<T> = None;
    loop {
        let Some(pos) = active.iter().position(|&i| a[i * n + i].is_positive()) else {
            if let Some(&i) = active.iter().find(|&&i| a[i * n + i].is_negative()) {
                return Some(PsdVerdict::NotPsd { index: i, value: a[i * n + i].to_big() });
            }
            for &i in &active {
                for &j in &active {
                    if i != j && !a[i * n + j].is_zero() {
                        let b = a[i * n + j].to_big();
                        return Some(PsdVerdict::NotPsd { index: i, value: -(&b * &b) });
                    }
                }
            }
            let min_pivot = match min_pivot {
                Some(p) if active.is_empty() => p.to_big(),
                _ => BigRational::zero(),
            };
            return Some(PsdVerdict::Psd { rank, min_pivot });
        };
        let p = active.swap_remove(pos);
        let pivot = a[p * n + p].clone();
        min_pivot = match min_pivot {
            Some(m) if m.sub(&pivot)?.is_negative() => Some(m),
            _ => Some(pivot.clone()),
        };
        rank += 1;
        let row: Vec<T> = active.iter().map(|&j| a[p * n + j].clone()).collect();
        for (x, &j) in active.iter().enumerate() {
            if row[x].is_zero() {
                continue;
            }
            let f = row[x].div(&pivot)?;
            for (y, &k) in active.iter().enumerate().skip(x) {
                if row[y].is_zero() {
                    continue;
                }
                let v = a[j * n + k].sub(&f.mul(&row[y])?)?;
                a[k * n + j] = v.clone();
                a[j * n + k] = v;
            }
        }
    }
}
