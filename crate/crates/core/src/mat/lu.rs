//! Partial-pivot LU factorization of complex matrices, with forward/adjoint
//! solves and a Hager-style one-norm condition estimate.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::mat::ComplexMatrix;
use crate::scalar::{cx_abs, Cx, Scalar};

/// Packed LU factors of a square matrix, `P A = L U`.
#[derive(Debug, Clone)]
pub struct LuFactors<T> {
    lu: ComplexMatrix<T>,
    /// Row i of the factored matrix came from row `perm[i]` of the input.
    perm: Vec<usize>,
    /// Smallest and largest pivot magnitudes (crude singularity signal).
    pivot_min: T,
    pivot_max: T,
}

impl<T: Scalar> LuFactors<T> {
    /// Factor a square matrix. Fails only on exact singularity; near-singular
    /// inputs factor fine and are flagged by [`LuFactors::is_singular`] /
    /// condition estimates instead.
    pub fn new(a: &ComplexMatrix<T>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::BadDimensions(format!("LU of {} x {}", a.rows(), a.cols())));
        }
        let n = a.rows();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut pivot_min = T::infinity();
        let mut pivot_max = T::zero();

        for k in 0..n {
            // Partial pivot: largest magnitude in column k at or below the diagonal.
            let mut p = k;
            let mut best = cx_abs(lu[(k, k)]);
            for i in k + 1..n {
                let m = cx_abs(lu[(i, k)]);
                if m > best {
                    best = m;
                    p = i;
                }
            }
            if p != k {
                perm.swap(k, p);
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
            }
            let piv = lu[(k, k)];
            let piv_abs = cx_abs(piv);
            pivot_min = pivot_min.min(piv_abs);
            pivot_max = pivot_max.max(piv_abs);
            if piv_abs == T::zero() {
                // Exactly singular: leave the zero column; solves will detect it.
                continue;
            }
            for i in k + 1..n {
                let factor = lu[(i, k)] / piv;
                lu[(i, k)] = factor;
                if factor.re == T::zero() && factor.im == T::zero() {
                    continue;
                }
                // Row update, contiguous on both rows (k < i).
                let (head, tail) = lu.data_mut().split_at_mut(i * n);
                let row_k = &head[k * n..(k + 1) * n];
                let row_i = &mut tail[..n];
                for j in k + 1..n {
                    row_i[j] = row_i[j] - factor * row_k[j];
                }
            }
        }
        Ok(Self { lu, perm, pivot_min, pivot_max })
    }

    pub fn is_singular(&self) -> bool {
        self.pivot_min == T::zero()
    }

    /// Ratio of largest to smallest pivot; a cheap lower-bound style proxy
    /// for the condition number used for early singularity screening.
    pub fn pivot_ratio(&self) -> T {
        if self.pivot_min == T::zero() {
            T::infinity()
        } else {
            self.pivot_max / self.pivot_min
        }
    }

    fn n(&self) -> usize {
        self.lu.rows()
    }

    /// Solve `A x = b`.
    pub fn solve(&self, b: &[Cx<T>]) -> Result<Vec<Cx<T>>> {
        let n = self.n();
        assert_eq!(b.len(), n);
        if self.is_singular() {
            return Err(Error::SpectrumHit { re: f64::NAN, im: f64::NAN, cond: f64::INFINITY });
        }
        // Forward: L y = P b (unit lower triangular).
        let mut x: Vec<Cx<T>> = (0..n).map(|i| b[self.perm[i]]).collect();
        for i in 1..n {
            let mut acc = x[i];
            for j in 0..i {
                acc = acc - self.lu[(i, j)] * x[j];
            }
            x[i] = acc;
        }
        // Backward: U x = y.
        for i in (0..n).rev() {
            let mut acc = x[i];
            for j in i + 1..n {
                acc = acc - self.lu[(i, j)] * x[j];
            }
            x[i] = acc / self.lu[(i, i)];
        }
        Ok(x)
    }

    /// Solve `A* x = b` using the factors of `A` (U* L* P x = b).
    pub fn solve_adjoint(&self, b: &[Cx<T>]) -> Result<Vec<Cx<T>>> {
        let n = self.n();
        assert_eq!(b.len(), n);
        if self.is_singular() {
            return Err(Error::SpectrumHit { re: f64::NAN, im: f64::NAN, cond: f64::INFINITY });
        }
        // U* z = b (lower triangular with conjugated entries).
        let mut z = b.to_vec();
        for i in 0..n {
            let mut acc = z[i];
            for j in 0..i {
                acc = acc - self.lu[(j, i)].conj() * z[j];
            }
            z[i] = acc / self.lu[(i, i)].conj();
        }
        // L* w = z (unit upper triangular with conjugated entries).
        for i in (0..n).rev() {
            let mut acc = z[i];
            for j in i + 1..n {
                acc = acc - self.lu[(j, i)].conj() * z[j];
            }
            z[i] = acc;
        }
        // x = P^T w.
        let mut x = vec![Complex::new(T::zero(), T::zero()); n];
        for i in 0..n {
            x[self.perm[i]] = z[i];
        }
        Ok(x)
    }

    /// Solve `A X = B` column by column.
    pub fn solve_matrix(&self, b: &ComplexMatrix<T>) -> Result<ComplexMatrix<T>> {
        let n = self.n();
        assert_eq!(b.rows(), n);
        let mut out = ComplexMatrix::zeros(n, b.cols());
        let mut col = vec![Complex::new(T::zero(), T::zero()); n];
        for j in 0..b.cols() {
            for i in 0..n {
                col[i] = b[(i, j)];
            }
            let x = self.solve(&col)?;
            for i in 0..n {
                out[(i, j)] = x[i];
            }
        }
        Ok(out)
    }

    /// Hager/Higham style estimate of the one-norm of `A^{-1}`.
    pub fn inverse_one_norm_estimate(&self) -> T {
        let n = self.n();
        if self.is_singular() {
            return T::infinity();
        }
        let inv_n = T::one() / T::of_usize(n);
        let mut x: Vec<Cx<T>> = vec![Complex::new(inv_n, T::zero()); n];
        let mut best = T::zero();
        for _ in 0..5 {
            let y = match self.solve(&x) {
                Ok(v) => v,
                Err(_) => return T::infinity(),
            };
            let y_norm1: T = y.iter().map(|&z| cx_abs(z)).fold(T::zero(), |a, b| a + b);
            if !y_norm1.is_finite() {
                return T::infinity();
            }
            best = best.max(y_norm1);
            // xi = sign(y) elementwise (unit modulus, zero stays zero).
            let xi: Vec<Cx<T>> = y
                .iter()
                .map(|&z| {
                    let m = cx_abs(z);
                    if m == T::zero() {
                        Complex::new(T::one(), T::zero())
                    } else {
                        z / m
                    }
                })
                .collect();
            let z = match self.solve_adjoint(&xi) {
                Ok(v) => v,
                Err(_) => return T::infinity(),
            };
            // Next direction: the unit vector at the largest |z_j|.
            let (jmax, zmax) = z
                .iter()
                .enumerate()
                .map(|(j, &v)| (j, cx_abs(v)))
                .fold((0usize, T::neg_infinity()), |acc, it| if it.1 > acc.1 { it } else { acc });
            let x_norm_contrib: T =
                x.iter().zip(&z).map(|(&a, &b)| (a * b.conj()).re).fold(T::zero(), |s, v| s + v);
            if zmax <= x_norm_contrib.abs() {
                break;
            }
            x = vec![Complex::new(T::zero(), T::zero()); n];
            x[jmax] = Complex::new(T::one(), T::zero());
        }
        best
    }
}

/// One-norm condition estimate of `a` given its factors.
pub fn condition_estimate<T: Scalar>(a: &ComplexMatrix<T>, lu: &LuFactors<T>) -> T {
    a.one_norm() * lu.inverse_one_norm_estimate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::vec_norm;

    fn c(re: f64, im: f64) -> Cx<f64> {
        Cx::new(re, im)
    }

    #[test]
    fn solves_two_by_two() {
        let a = ComplexMatrix::from_real_rows(2, &[2.0f64, 1.0, 5.0, 3.0]).unwrap();
        let lu = LuFactors::new(&a).unwrap();
        let x = lu.solve(&[c(4.0, 0.0), c(11.0, 0.0)]).unwrap();
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-13);
        assert!((x[1] - c(2.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn adjoint_solve_consistent_with_direct() {
        let n = 7;
        let a = ComplexMatrix::from_fn(n, n, |i, j| {
            c(((i * 7 + j * 3) % 11) as f64 - 5.0, ((i + 2 * j) % 5) as f64 - 2.0)
        });
        let a = a.add_scaled_identity(c(9.0, 0.0));
        let lu = LuFactors::new(&a).unwrap();
        let b: Vec<_> = (0..n).map(|i| c(i as f64 - 2.0, 0.5 * i as f64)).collect();
        let x = lu.solve_adjoint(&b).unwrap();
        let residual: Vec<_> =
            a.adjoint().matvec(&x).iter().zip(&b).map(|(u, v)| u - v).collect();
        assert!(vec_norm(&residual) < 1e-11 * vec_norm(&b));
    }

    #[test]
    fn singular_matrix_detected() {
        let a = ComplexMatrix::from_real_rows(2, &[1.0f64, 2.0, 2.0, 4.0]).unwrap();
        let lu = LuFactors::new(&a).unwrap();
        assert!(lu.is_singular());
        assert!(lu.solve(&[c(1.0, 0.0), c(0.0, 0.0)]).is_err());
    }

    #[test]
    fn condition_estimate_tracks_known_value() {
        // diag(1, 1e-6): cond_1 = 1e6.
        let mut a = ComplexMatrix::<f64>::identity(2);
        a[(1, 1)] = c(1e-6, 0.0);
        let lu = LuFactors::new(&a).unwrap();
        let est = condition_estimate(&a, &lu);
        assert!(est >= 1e5 && est <= 1e7, "estimate {est}");
    }
}
