//! The (min, max) dioid on `[0, +inf]` and dense square matrices over it.
//!
//! Addition is `min` with identity `+inf`; multiplication is `max` with
//! identity `0`. The matrix product `[A ⊗ B]_ij = min_k max(A_ik, B_kj)`
//! composes bottleneck costs, so `A^k` holds the cheapest directed chain of
//! at most `k` hops between every pair of nodes.
//!
//! Neither operation creates new values, so every comparison in this module
//! is exact.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Rows are split across threads once the matrix has at least this many nodes.
const PAR_THRESHOLD: usize = 64;

/// A dioid scalar: a nonnegative real or `+inf`.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Dissim(f64);

impl Dissim {
    /// `+inf`, the identity of ⊕ and the absorbing element of ⊗.
    pub const INFINITY: Dissim = Dissim(f64::INFINITY);
    /// `0`, the identity of ⊗.
    pub const ZERO: Dissim = Dissim(0.0);

    /// Returns `None` for negative values and NaN.
    pub fn new(value: f64) -> Option<Dissim> {
        if value >= 0.0 {
            Some(Dissim(value))
        } else {
            None
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// Dioid addition, `min`.
    #[inline]
    pub fn oplus(self, other: Dissim) -> Dissim {
        Dissim(self.0.min(other.0))
    }

    /// Dioid multiplication, `max`.
    #[inline]
    pub fn otimes(self, other: Dissim) -> Dissim {
        Dissim(self.0.max(other.0))
    }
}

impl Eq for Dissim {}

impl PartialOrd for Dissim {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dissim {
    fn cmp(&self, other: &Self) -> Ordering {
        // NaN is unrepresentable.
        self.0
            .partial_cmp(&other.0)
            .expect("dissimilarities are never NaN")
    }
}

impl From<Dissim> for f64 {
    fn from(d: Dissim) -> f64 {
        d.0
    }
}

impl fmt::Display for Dissim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Dense `n x n` matrix over the (min, max) dioid, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DioidMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DioidMatrix {
    /// Builds a matrix from row-major data, rejecting negative or NaN entries.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::BadShape {
                n,
                got: data.len(),
                expected: n * n,
            });
        }
        if let Some(pos) = data.iter().position(|v| Dissim::new(*v).is_none()) {
            return Err(Error::InvalidEntry {
                row: pos / n,
                col: pos % n,
                value: data[pos],
            });
        }
        Ok(DioidMatrix { n, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::BadShape {
                    n,
                    got: row.len() * n,
                    expected: n * n,
                });
            }
            data.extend_from_slice(row);
        }
        DioidMatrix::new(n, data)
    }

    /// Matrix with every entry equal to `value`.
    pub fn filled(n: usize, value: Dissim) -> Self {
        DioidMatrix {
            n,
            data: vec![value.value(); n * n],
        }
    }

    /// The multiplicative identity: zeros on the diagonal, `+inf` elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = DioidMatrix::filled(n, Dissim::INFINITY);
        for i in 0..n {
            m.data[i * n + i] = 0.0;
        }
        m
    }

    /// Builds a matrix entry by entry. `f` must return values in `[0, +inf]`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        DioidMatrix::new(n, data)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn dissim(&self, i: usize, j: usize) -> Dissim {
        Dissim(self.get(i, j))
    }

    pub fn set(&mut self, i: usize, j: usize, value: Dissim) {
        self.data[i * self.n + j] = value.value();
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        // chunks(0) panics, and an empty matrix has no rows anyway.
        self.data.chunks(self.n.max(1))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.rows().map(<[f64]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        DioidMatrix { n, data }
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// First `(i, j)` with `i < j` and `A_ij != A_ji`, scanning row-major.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .find(|&(i, j)| self.get(i, j) != self.get(j, i))
    }

    pub fn has_zero_diagonal(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i) == 0.0)
    }

    fn check_same_size(&self, other: &DioidMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Dioid product `[A ⊗ B]_ij = min_k max(A_ik, B_kj)`.
    pub fn product(&self, other: &DioidMatrix) -> Result<Self> {
        self.check_same_size(other)?;
        Ok(self.product_unchecked(other))
    }

    fn product_unchecked(&self, other: &DioidMatrix) -> Self {
        let n = self.n;
        let bt = other.transpose();
        let mut data = vec![f64::INFINITY; n * n];
        let fill_row = |(i, out): (usize, &mut [f64])| {
            let a = &self.data[i * n..(i + 1) * n];
            for (j, cell) in out.iter_mut().enumerate() {
                let b = &bt.data[j * n..(j + 1) * n];
                let mut best = f64::INFINITY;
                for (&x, &y) in a.iter().zip(b) {
                    let v = x.max(y);
                    if v < best {
                        best = v;
                    }
                }
                *cell = best;
            }
        };
        if n == 0 {
            return DioidMatrix { n, data };
        }
        if n >= PAR_THRESHOLD {
            data.par_chunks_mut(n).enumerate().for_each(fill_row);
        } else {
            data.chunks_mut(n).enumerate().for_each(fill_row);
        }
        DioidMatrix { n, data }
    }

    /// `A^k` by repeated squaring. `A^0` is the identity.
    ///
    /// For zero-diagonal matrices the powers are nonincreasing, so once a
    /// square reproduces its input the sequence has reached its limit and
    /// every higher power equals it.
    pub fn power(&self, k: usize) -> Self {
        let n = self.n;
        if k == 0 {
            return DioidMatrix::identity(n);
        }
        let monotone = self.has_zero_diagonal();
        let mut result: Option<DioidMatrix> = None;
        let mut base = self.clone();
        // `base` holds A^base_exp; set bits of k are folded into `result`.
        let mut remaining = k;
        let mut base_exp: usize = 1;
        loop {
            if remaining & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.product_unchecked(&base),
                });
            }
            remaining >>= 1;
            if remaining == 0 {
                break;
            }
            let squared = base.product_unchecked(&base);
            if monotone && squared == base {
                // A^base_exp is the limit and k > base_exp.
                return base;
            }
            base = squared;
            base_exp *= 2;
        }
        debug_assert!(base_exp <= k);
        result.expect("k >= 1 sets at least one bit")
    }

    /// Quasi-inverse `A^† = I ⊕ A ⊕ A² ⊕ ... = A^(n-1)` for a zero-diagonal
    /// matrix. Entry `(i, j)` is the minimum directed chain cost from `i` to
    /// `j`. Fails if `A^(n-1) != A^n`, which cannot happen for valid input.
    pub fn quasi_inverse(&self) -> Result<Self> {
        if !self.has_zero_diagonal() {
            return Err(Error::Parameter(
                "quasi-inverse requires a matrix with zero diagonal".to_string(),
            ));
        }
        let n = self.n;
        if n <= 1 {
            return Ok(self.clone());
        }
        let closure = self.power(n - 1);
        let next = closure.product_unchecked(self);
        if let Some(pos) = closure
            .data
            .iter()
            .zip(&next.data)
            .position(|(a, b)| a != b)
        {
            return Err(Error::Stabilization {
                n,
                row: pos / n,
                col: pos % n,
            });
        }
        Ok(closure)
    }

    /// `max(A, Aᵀ)`.
    pub fn symmetrize_max(&self) -> Self {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = self.get(i, j).max(self.get(j, i));
            }
        }
        out
    }

    /// Entrywise maximum.
    pub fn elementwise_max(&self, other: &DioidMatrix) -> Result<Self> {
        self.zip_with(other, f64::max)
    }

    /// Entrywise minimum (dioid addition of matrices).
    pub fn elementwise_min(&self, other: &DioidMatrix) -> Result<Self> {
        self.zip_with(other, f64::min)
    }

    fn zip_with(&self, other: &DioidMatrix, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.check_same_size(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(DioidMatrix { n: self.n, data })
    }

    /// `true` when every entry of `self` is `<=` the matching entry of `other`.
    pub fn le_entrywise(&self, other: &DioidMatrix) -> bool {
        self.n == other.n && self.data.iter().zip(&other.data).all(|(a, b)| a <= b)
    }

    /// Like [`le_entrywise`](Self::le_entrywise) but allows `self` to exceed
    /// `other` by at most `tolerance`.
    pub fn le_entrywise_within(&self, other: &DioidMatrix, tolerance: f64) -> bool {
        self.n == other.n
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(&a, &b)| a <= b || a - b <= tolerance)
    }

    /// Largest absolute entrywise difference. Matching infinities count as
    /// equal; an infinity against a finite value gives `+inf`.
    pub fn max_abs_diff(&self, other: &DioidMatrix) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| if a == b { 0.0 } else { (a - b).abs() })
            .fold(0.0, f64::max)
    }

    /// Largest finite entry off the diagonal, if any.
    pub fn max_finite_off_diagonal(&self) -> Option<f64> {
        self.off_diagonal()
            .filter(|v| v.is_finite())
            .reduce(f64::max)
    }

    /// Smallest entry off the diagonal, if any.
    pub fn min_off_diagonal(&self) -> Option<f64> {
        self.off_diagonal().reduce(f64::min)
    }

    fn off_diagonal(&self) -> impl Iterator<Item = f64> + '_ {
        let n = self.n;
        self.data
            .iter()
            .enumerate()
            .filter(move |(p, _)| p / n != p % n)
            .map(|(_, &v)| v)
    }
}
