//! Scalar abstraction shared by every numerical routine in the crate.

use nalgebra::RealField;
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real floating-point type the linear algebra, entropies and optimizers are
/// generic over. Implemented for `f32` and `f64`.
///
/// Numerical thresholds live here so that each precision carries its own.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Send + Sync + 'static {
    /// Eigenvalues below this are treated as belonging to the kernel.
    const RANK_EPS: f64;
    /// Entrywise tolerance for Hermiticity and unit trace on validation.
    const STATE_TOL: f64;
    /// Smallest eigenvalue accepted (and clamped to zero) on validation.
    const PSD_TOL: f64;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Real for f64 {
    const RANK_EPS: f64 = 1e-12;
    const STATE_TOL: f64 = 1e-12;
    const PSD_TOL: f64 = 1e-12;
}

impl Real for f32 {
    const RANK_EPS: f64 = 1e-6;
    const STATE_TOL: f64 = 1e-5;
    const PSD_TOL: f64 = 1e-5;
}

/// Complex scalar over a [`Real`].
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn cr<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

/// `log2` that works for every [`Real`].
#[inline]
pub(crate) fn log2<T: Real>(x: T) -> T {
    x.ln() / T::ln_2()
}

/// Modulus of a complex scalar.
#[inline]
pub(crate) fn cabs<T: Real>(z: C<T>) -> T {
    z.norm_sqr().sqrt()
}
