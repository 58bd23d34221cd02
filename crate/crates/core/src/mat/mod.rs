//! Dense complex matrices in row-major storage, plus the factorizations and
//! transforms the analysis layers are built on.

pub mod eig;
pub mod expm;
pub mod lu;
pub mod svd;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::{cx_abs, cx_is_finite, Cx, Scalar};

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Cx<T>>,
}

/// Below this many fused multiply-adds a parallel matmul is not worth it.
const PAR_FLOP_THRESHOLD: usize = 1 << 20;

impl<T: Scalar> ComplexMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![Cx::new(T::zero(), T::zero()); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Cx::new(T::one(), T::zero());
        }
        m
    }

    /// Build from a row-major scalar function.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cx<T>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Build from row-major complex entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Cx<T>>) -> Result<Self> {
        if data.len() != rows * cols || rows == 0 || cols == 0 {
            return Err(Error::BadDimensions(format!(
                "{} entries for a {rows} x {cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Build a square matrix from row-major real entries.
    pub fn from_real_rows(n: usize, entries: &[T]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::BadDimensions(format!("{} entries for dim {n}", entries.len())));
        }
        Ok(Self {
            rows: n,
            cols: n,
            data: entries.iter().map(|&x| Cx::new(x, T::zero())).collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn data(&self) -> &[Cx<T>] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Cx<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Cx<T>] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub(crate) fn data_mut(&mut self) -> &mut [Cx<T>] {
        &mut self.data
    }

    /// Error with the position of the first non-finite entry, if any.
    pub fn check_finite(&self) -> Result<()> {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !cx_is_finite(self[(i, j)]) {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Hermitian part (A + A*)/2; requires a square matrix.
    pub fn hermitian_part(&self) -> Self {
        assert!(self.is_square());
        let half = T::of(0.5);
        Self::from_fn(self.rows, self.cols, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * half
        })
    }

    pub fn scale(&self, s: Cx<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect(),
        }
    }

    /// `self + s·I`.
    pub fn add_scaled_identity(&self, s: Cx<T>) -> Self {
        assert!(self.is_square());
        let mut out = self.clone();
        for i in 0..self.rows {
            out[(i, i)] = out[(i, i)] + s;
        }
        out
    }

    /// Matrix product; row-parallel when large. Each output row is reduced in
    /// a fixed k-order, so the result does not depend on the thread count.
    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let (m, k_dim, n) = (self.rows, self.cols, other.cols);
        let mut out = Self::zeros(m, n);
        let work = m * k_dim * n;

        let body = |i: usize, out_row: &mut [Cx<T>]| {
            for k in 0..k_dim {
                let a_ik = self[(i, k)];
                if a_ik.re == T::zero() && a_ik.im == T::zero() {
                    continue;
                }
                let b_row = other.row(k);
                for j in 0..n {
                    out_row[j] = out_row[j] + a_ik * b_row[j];
                }
            }
        };

        if work >= PAR_FLOP_THRESHOLD {
            out.data
                .par_chunks_mut(n)
                .enumerate()
                .for_each(|(i, out_row)| body(i, out_row));
        } else {
            for (i, out_row) in out.data.chunks_mut(n).enumerate() {
                body(i, out_row);
            }
        }
        out
    }

    /// `y = A x`.
    pub fn matvec(&self, x: &[Cx<T>]) -> Vec<Cx<T>> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Cx::new(T::zero(), T::zero());
                for (a, &xj) in self.row(i).iter().zip(x) {
                    acc = acc + *a * xj;
                }
                acc
            })
            .collect()
    }

    /// `y = A* x` without forming the adjoint (row-contiguous accumulation).
    pub fn matvec_adjoint(&self, x: &[Cx<T>]) -> Vec<Cx<T>> {
        assert_eq!(self.rows, x.len());
        let mut y = vec![Cx::new(T::zero(), T::zero()); self.cols];
        for (j, &xj) in x.iter().enumerate() {
            for (yi, a) in y.iter_mut().zip(self.row(j)) {
                *yi = *yi + a.conj() * xj;
            }
        }
        y
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt()
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> T {
        let mut sums = vec![T::zero(); self.cols];
        for i in 0..self.rows {
            for (s, z) in sums.iter_mut().zip(self.row(i)) {
                *s = *s + cx_abs(*z);
            }
        }
        sums.into_iter().fold(T::zero(), T::max)
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> T {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|&z| cx_abs(z)).fold(T::zero(), |a, b| a + b))
            .fold(T::zero(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().map(|&z| cx_abs(z)).fold(T::zero(), T::max)
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for ComplexMatrix<T> {
    type Output = Cx<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Cx<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for ComplexMatrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cx<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Euclidean norm of a complex vector, overflow-safe.
pub fn vec_norm<T: Scalar>(x: &[Cx<T>]) -> T {
    let scale = x.iter().map(|&z| cx_abs(z)).fold(T::zero(), T::max);
    if scale == T::zero() || !scale.is_finite() {
        return scale;
    }
    let mut acc = T::zero();
    for z in x {
        let r = z.re / scale;
        let i = z.im / scale;
        acc = acc + r * r + i * i;
    }
    scale * acc.sqrt()
}

/// Hermitian inner product <x, y> = sum x_i conj(y_i).
pub fn vec_inner<T: Scalar>(x: &[Cx<T>], y: &[Cx<T>]) -> Cx<T> {
    assert_eq!(x.len(), y.len());
    let mut acc = Cx::new(T::zero(), T::zero());
    for (&a, &b) in x.iter().zip(y) {
        acc = acc + a * b.conj();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Cx<f64> {
        Cx::new(re, im)
    }

    #[test]
    fn adjoint_matches_conjugate_transpose() {
        // [[i]] -> [[-i]]
        let m = ComplexMatrix::from_vec(1, 1, vec![c(0.0, 1.0)]).unwrap();
        assert_eq!(m.adjoint()[(0, 0)], c(0.0, -1.0));

        // identity -> identity
        let id = ComplexMatrix::<f64>::identity(3);
        assert_eq!(id.adjoint(), id);

        // real [[1,2],[3,4]] -> [[1,3],[2,4]]
        let m = ComplexMatrix::from_real_rows(2, &[1.0f64, 2.0, 3.0, 4.0]).unwrap();
        let a = m.adjoint();
        assert_eq!(a[(0, 1)], c(3.0, 0.0));
        assert_eq!(a[(1, 0)], c(2.0, 0.0));
    }

    #[test]
    fn adjoint_is_involution() {
        let m = ComplexMatrix::from_fn(3, 2, |i, j| c(i as f64, j as f64 - 1.0));
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn matmul_matches_hand_product() {
        let a = ComplexMatrix::from_real_rows(2, &[1.0f64, 2.0, 3.0, 4.0]).unwrap();
        let b = ComplexMatrix::from_real_rows(2, &[5.0f64, 6.0, 7.0, 8.0]).unwrap();
        let p = a.matmul(&b);
        assert_eq!(p[(0, 0)], c(19.0, 0.0));
        assert_eq!(p[(0, 1)], c(22.0, 0.0));
        assert_eq!(p[(1, 0)], c(43.0, 0.0));
        assert_eq!(p[(1, 1)], c(50.0, 0.0));
    }

    #[test]
    fn matvec_adjoint_agrees_with_explicit_adjoint() {
        let m = ComplexMatrix::from_fn(3, 3, |i, j| c(1.0 + i as f64, j as f64 - 0.5));
        let x = vec![c(1.0, 0.5), c(-2.0, 1.0), c(0.0, -1.0)];
        let direct = m.adjoint().matvec(&x);
        let fused = m.matvec_adjoint(&x);
        for (a, b) in direct.iter().zip(&fused) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn norms_on_known_matrix() {
        let m = ComplexMatrix::from_real_rows(2, &[3.0f64, -4.0, 0.0, 0.0]).unwrap();
        assert_eq!(m.one_norm(), 4.0);
        assert_eq!(m.inf_norm(), 7.0);
        assert_eq!(m.frobenius_norm(), 5.0);
        assert_eq!(m.max_abs(), 4.0);
    }

    #[test]
    fn check_finite_reports_position() {
        let mut m = ComplexMatrix::<f64>::identity(2);
        m[(1, 0)] = c(f64::NAN, 0.0);
        assert_eq!(m.check_finite(), Err(Error::NonFinite { row: 1, col: 0 }));
    }

    #[test]
    fn vec_norm_is_overflow_safe() {
        let x = vec![c(1e300, 0.0), c(0.0, 1e300)];
        let n = vec_norm(&x);
        assert!(n.is_finite());
        assert!((n / 1e300 - 2f64.sqrt()).abs() < 1e-12);
    }
}
