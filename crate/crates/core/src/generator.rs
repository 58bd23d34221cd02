//! The semigroup generator: a square complex matrix with spectral-norm and
//! spectrum caches populated at construction, plus the operations built
//! directly on it (matrix exponential, resolvent, logarithmic norm).

use crate::error::{Error, Result};
use crate::mat::eig::{eigenvalues, spectral_abscissa};
use crate::mat::expm::pade_expm;
use crate::mat::lu::{condition_estimate, LuFactors};
use crate::mat::svd::sigma_max_dense;
use crate::mat::ComplexMatrix;
use crate::scalar::{cx_re, Cx, Scalar};

/// Condition-estimate threshold above which a shifted solve is declared to
/// have hit the spectrum.
pub const COND_MAX: f64 = 1e14;

/// Scale-aware tolerance separating "on the spectrum" from ill-conditioning.
pub fn sing_tol<T: Scalar>(lambda: Cx<T>, norm2: T) -> T {
    T::of(1e-12) * (T::one() + lambda.norm() + norm2)
}

/// Square complex matrix standing in for an infinitesimal generator, with
/// cached spectral norm, spectrum, and logarithmic norm. Immutable after
/// construction and safe to share across threads.
#[derive(Debug, Clone)]
pub struct Generator<T> {
    dim: usize,
    entries: ComplexMatrix<T>,
    norm2: T,
    spectrum: Vec<Cx<T>>,
    log_norm: T,
}

impl<T: Scalar> Generator<T> {
    /// Validate and cache. Fails on non-square or non-finite input and
    /// propagates eigenvalue-iteration failures.
    pub fn new(entries: ComplexMatrix<T>) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::NotSquare { rows: entries.rows(), cols: entries.cols() });
        }
        entries.check_finite()?;
        let dim = entries.rows();
        let norm2 = sigma_max_dense(&entries)?;
        let mut spectrum = eigenvalues(&entries)?;
        spectrum.sort_by(|a, b| {
            a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap())
        });
        let herm = entries.hermitian_part();
        let log_norm = spectral_abscissa(&eigenvalues(&herm)?);
        Ok(Self { dim, entries, norm2, spectrum, log_norm })
    }

    /// Build from row-major real entries.
    pub fn from_real(n: usize, entries: &[T]) -> Result<Self> {
        Self::new(ComplexMatrix::from_real_rows(n, entries)?)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &ComplexMatrix<T> {
        &self.entries
    }

    /// Cached spectral norm ||A||_2.
    pub fn norm2(&self) -> T {
        self.norm2
    }

    /// Cached eigenvalues (with multiplicity), sorted by (re, im).
    pub fn spectrum(&self) -> &[Cx<T>] {
        &self.spectrum
    }

    /// Largest real part over the spectrum.
    pub fn spectral_abscissa(&self) -> T {
        spectral_abscissa(&self.spectrum)
    }

    /// Logarithmic norm mu(A): largest eigenvalue of (A + A*)/2. Guarantees
    /// ||e^{hA}||_2 <= e^{h mu(A)} for h >= 0.
    pub fn log_norm(&self) -> T {
        self.log_norm
    }

    /// e^{tA} for t >= 0.
    pub fn expm(&self, t: T) -> Result<ComplexMatrix<T>> {
        assert!(t >= T::zero() && t.is_finite(), "expm requires finite t >= 0");
        if t == T::zero() {
            return Ok(ComplexMatrix::identity(self.dim));
        }
        let m = self.entries.scale(cx_re(t));
        pade_expm(&m, Some(t * self.norm2)).map_err(|e| match e {
            Error::Overflow { .. } => Error::Overflow { t: num_traits::cast(t).unwrap_or(f64::NAN) },
            other => other,
        })
    }

    /// R(lambda, A) = (lambda I - A)^{-1} via a pivoted dense solve.
    pub fn resolvent(&self, lambda: Cx<T>) -> Result<ComplexMatrix<T>> {
        let (lu, shifted) = self.shifted_lu(lambda)?;
        let _ = shifted;
        lu.solve_matrix(&ComplexMatrix::identity(self.dim))
    }

    /// LU factors of (lambda I - A), with the SpectrumHit screen applied.
    pub fn shifted_lu(&self, lambda: Cx<T>) -> Result<(LuFactors<T>, ComplexMatrix<T>)> {
        let shifted = self.entries.scale(cx_re(-T::one())).add_scaled_identity(lambda);
        let lu = LuFactors::new(&shifted)?;
        let spectrum_hit = || Error::SpectrumHit {
            re: num_traits::cast(lambda.re).unwrap_or(f64::NAN),
            im: num_traits::cast(lambda.im).unwrap_or(f64::NAN),
            cond: num_traits::cast::<T, f64>(condition_estimate(&shifted, &lu))
                .unwrap_or(f64::INFINITY),
        };
        if lu.is_singular() {
            return Err(spectrum_hit());
        }
        // Only run the full condition estimate when the pivots look suspect.
        if lu.pivot_ratio() > T::of(COND_MAX) * T::of(1e-2)
            && condition_estimate(&shifted, &lu) > T::of(COND_MAX)
        {
            return Err(spectrum_hit());
        }
        Ok((lu, shifted))
    }
}

/// Largest singular value of a complex matrix (the operator norm on the
/// Euclidean space). Rejects non-finite input.
pub fn spectral_norm<T: Scalar>(m: &ComplexMatrix<T>) -> Result<T> {
    m.check_finite()?;
    sigma_max_dense(m)
}
