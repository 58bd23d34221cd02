//! Matrix exponential by scaling and squaring with a fixed [13/13] Padé
//! approximant. The squaring count is chosen from a caller-supplied norm of
//! the input so results are reproducible bit for bit.

use crate::error::{Error, Result};
use crate::mat::lu::LuFactors;
use crate::mat::ComplexMatrix;
use crate::scalar::{cx_re, Scalar};

/// Norm threshold below which the order-13 approximant is full-accuracy.
const THETA_13: f64 = 5.371920351148152;

/// Padé-13 numerator/denominator coefficients.
const PADE_13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// e^M for a square complex matrix. `norm_hint` should bound the spectral
/// norm of `M` (any consistent norm works; it only selects the squaring
/// count). Fails with `Overflow` when the result leaves the representable
/// range.
pub fn pade_expm<T: Scalar>(m: &ComplexMatrix<T>, norm_hint: Option<T>) -> Result<ComplexMatrix<T>> {
    assert!(m.is_square());
    m.check_finite().map_err(|_| Error::Overflow { t: f64::NAN })?;
    let eta = norm_hint.unwrap_or_else(|| m.one_norm());
    let theta = T::of(THETA_13);
    let s: u32 = if eta > theta {
        let ratio = eta / theta;
        let log2 = ratio.log2().ceil();
        num_traits::cast::<T, f64>(log2).map(|v| v.max(0.0) as u32).unwrap_or(0)
    } else {
        0
    };
    if s > 1000 {
        return Err(Error::Overflow { t: f64::NAN });
    }

    let scale = T::of(0.5).powi(s as i32);
    let a = m.scale(cx_re(scale));
    let n = a.rows();
    let id = ComplexMatrix::identity(n);
    let a2 = a.matmul(&a);
    let a4 = a2.matmul(&a2);
    let a6 = a2.matmul(&a4);

    let b = |i: usize| cx_re(T::of(PADE_13[i]));

    // U = A [ A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I ]
    let w1 = a6.scale(b(13)).add(&a4.scale(b(11))).add(&a2.scale(b(9)));
    let w = a6.matmul(&w1).add(&a6.scale(b(7))).add(&a4.scale(b(5))).add(&a2.scale(b(3))).add(&id.scale(b(1)));
    let u = a.matmul(&w);
    // V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let z1 = a6.scale(b(12)).add(&a4.scale(b(10))).add(&a2.scale(b(8)));
    let v = a6.matmul(&z1).add(&a6.scale(b(6))).add(&a4.scale(b(4))).add(&a2.scale(b(2))).add(&id.scale(b(0)));

    // (V - U) X = (V + U)
    let lhs = v.sub(&u);
    let rhs = v.add(&u);
    let lu = LuFactors::new(&lhs)?;
    if lu.is_singular() {
        return Err(Error::Overflow { t: f64::NAN });
    }
    let mut x = lu.solve_matrix(&rhs)?;

    for _ in 0..s {
        x = x.matmul(&x);
    }
    x.check_finite().map_err(|_| Error::Overflow { t: f64::NAN })?;
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Cx;

    #[test]
    fn nilpotent_truncates() {
        let m = ComplexMatrix::from_real_rows(2, &[0.0f64, 1.0, 0.0, 0.0]).unwrap();
        let e = pade_expm(&m, None).unwrap();
        assert!((e[(0, 0)] - Cx::new(1.0, 0.0)).norm() < 1e-15);
        assert!((e[(0, 1)] - Cx::new(1.0, 0.0)).norm() < 1e-15);
        assert!((e[(1, 0)]).norm() < 1e-15);
        assert!((e[(1, 1)] - Cx::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn scalar_exponential() {
        let m = ComplexMatrix::from_real_rows(1, &[-2.0f64]).unwrap();
        let e = pade_expm(&m, None).unwrap();
        assert!((e[(0, 0)].re - (-2.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn rotation_group_is_isometric() {
        let m = ComplexMatrix::from_real_rows(2, &[0.0f64, 1.0, -1.0, 0.0]).unwrap();
        // e^{tA} for t = 3 is a plane rotation by 3 radians.
        let e = pade_expm(&m.scale(Cx::new(3.0, 0.0)), None).unwrap();
        assert!((e[(0, 0)].re - 3.0f64.cos()).abs() < 1e-13);
        assert!((e[(0, 1)].re - 3.0f64.sin()).abs() < 1e-13);
    }

    #[test]
    fn large_norm_uses_squaring_and_stays_accurate() {
        // A = diag(-30, -40) with t folded in: exact entries e^{-30}, e^{-40}.
        let m = ComplexMatrix::from_real_rows(2, &[-30.0f64, 0.0, 0.0, -40.0]).unwrap();
        let e = pade_expm(&m, Some(40.0)).unwrap();
        assert!((e[(0, 0)].re - (-30.0f64).exp()).abs() < 1e-12 * (-30.0f64).exp());
        assert!((e[(1, 1)].re - (-40.0f64).exp()).abs() < 1e-11 * (-40.0f64).exp());
    }

    #[test]
    fn overflow_is_reported() {
        let m = ComplexMatrix::from_real_rows(1, &[2000.0f64]).unwrap();
        match pade_expm(&m, Some(2000.0)) {
            Err(Error::Overflow { .. }) => {}
            other => panic!("expected overflow, got {other:?}"),
        }
    }
}
