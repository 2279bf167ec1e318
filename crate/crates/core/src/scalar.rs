//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All math is written against [`Real`], which is implemented for `f32` and
//! `f64`. Tolerances that are quoted for double precision are widened for
//! single precision through [`Real::tolerance`].

use std::fmt::{Debug, Display};

use nalgebra::{Complex, RealField};
use num_traits::ToPrimitive;

/// Floating point scalar usable by the simulator, the flows and the oracle.
pub trait Real: RealField + Copy + ToPrimitive + Debug + Display + Default {
    /// Smallest tolerance that is meaningful at this precision.
    const TOLERANCE_FLOOR: f64;

    /// Lossy conversion from an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        nalgebra::convert(x)
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// A double-precision tolerance, floored at what this type can resolve.
    #[inline]
    fn tolerance(tol: f64) -> Self {
        Self::lit(tol.max(Self::TOLERANCE_FLOOR))
    }
}

impl Real for f64 {
    const TOLERANCE_FLOOR: f64 = 0.0;
}

impl Real for f32 {
    const TOLERANCE_FLOOR: f64 = 1e-4;
}

#[inline]
pub(crate) fn cplx<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub(crate) fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// `e^{i phi}`
#[inline]
pub(crate) fn cis<T: Real>(phi: T) -> Complex<T> {
    Complex::new(phi.cos(), phi.sin())
}
