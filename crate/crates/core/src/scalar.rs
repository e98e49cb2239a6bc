//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display, LowerExp};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point field the simulator is generic over (`f32` or `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    /// Tolerance for structural checks: hermiticity, idempotence,
    /// normalization of file inputs.
    fn check_tol() -> Self;

    /// Tolerance below which a branch weight is treated as exactly zero.
    fn zero_branch_tol() -> Self;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable in the scalar type")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Real for f64 {
    fn check_tol() -> Self {
        1e-10
    }
    fn zero_branch_tol() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn check_tol() -> Self {
        1e-4
    }
    fn zero_branch_tol() -> Self {
        1e-6
    }
}

/// Complex amplitude over a [`Real`] field.
pub type Amp<T> = Complex<T>;

#[inline]
pub(crate) fn c<T: Real>(re: f64, im: f64) -> Amp<T> {
    Complex::new(T::lit(re), T::lit(im))
}

#[inline]
pub(crate) fn cre<T: Real>(re: T) -> Amp<T> {
    Complex::new(re, T::zero())
}

/// `e^{iθ}`.
#[inline]
pub(crate) fn cis<T: Real>(theta: T) -> Amp<T> {
    Complex::new(theta.cos(), theta.sin())
}
