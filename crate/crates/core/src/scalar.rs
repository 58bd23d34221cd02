//! Scalar abstraction: every algorithm in this crate is generic over the
//! underlying real floating-point type, with complex arithmetic built on
//! top of it via [`num_complex::Complex`].

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps};

/// Real floating-point scalar (`f32` or `f64`).
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + NumAssignOps
    + Sum<Self>
    + Debug
    + Display
    + LowerExp
    + Send
    + Sync
    + 'static
{
    /// Lift an `f64` constant into this scalar type.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("constant not representable in scalar type")
    }

    /// Lift a `usize` (sample counts, dimensions) into this scalar type.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("count not representable in scalar type")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Complex number over a [`Scalar`].
pub type Cx<T> = Complex<T>;

/// `re + 0i`.
pub fn cx_re<T: Scalar>(re: T) -> Cx<T> {
    Complex::new(re, T::zero())
}

/// `0 + im·i`.
pub fn cx_im<T: Scalar>(im: T) -> Cx<T> {
    Complex::new(T::zero(), im)
}

/// True when both parts are finite.
pub fn cx_is_finite<T: Scalar>(z: Cx<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// |z| computed without intermediate overflow.
pub fn cx_abs<T: Scalar>(z: Cx<T>) -> T {
    z.re.hypot(z.im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn of_roundtrips_constants() {
        assert_eq!(f64::of(1.5), 1.5);
        assert_eq!(f32::of(0.25), 0.25f32);
        assert_eq!(f64::of_usize(1024), 1024.0);
    }

    #[test]
    fn cx_abs_avoids_overflow() {
        let z = Cx::new(1e300f64, 1e300);
        assert!(cx_abs(z).is_finite());
        assert!(cx_is_finite(z));
        assert!(!cx_is_finite(Cx::new(f64::NAN, 0.0)));
    }
}
