//! Scalar abstraction and the handful of special functions the crate needs.
//!
//! Everything numeric in this crate is generic over [`Real`], which is
//! `f32` or `f64` in practice.  The trait adds the two special functions
//! that `num_traits::Float` lacks (`ln_gamma`, `erfc`) plus a literal
//! conversion helper, so the math modules never mention a concrete type.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FloatConst, FromPrimitive};
use rand::Rng;
use rand_distr::{Distribution, Exp1, Gamma, StandardNormal};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum<Self>
    + Debug
    + Display
    + Default
    + 'static
{
    /// Convert an `f64` literal. Panics only on NaN input, which never
    /// occurs for compile-time literals.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("literal conversion")
    }

    /// Natural log of the gamma function.
    fn ln_gamma(self) -> Self;

    /// Complementary error function.
    fn erfc(self) -> Self;
}

impl Real for f64 {
    fn ln_gamma(self) -> Self {
        libm::lgamma(self)
    }
    fn erfc(self) -> Self {
        libm::erfc(self)
    }
}

impl Real for f32 {
    fn ln_gamma(self) -> Self {
        libm::lgammaf(self)
    }
    fn erfc(self) -> Self {
        libm::erfcf(self)
    }
}

/// Scalar that the standard random distributions know how to emit.
///
/// Sampling routines are generic over this; analytic routines only need
/// [`Real`].  The methods wrap the `rand_distr` primitives so that the
/// distribution trait bounds stay inside the two impls.
pub trait SampleReal: Real {
    /// Uniform draw on [0, 1).
    fn rand_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Standard normal draw.
    fn rand_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Unit-rate exponential draw.
    fn rand_exp1<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Unit-scale gamma draw with the given shape.
    fn rand_gamma<R: Rng + ?Sized>(shape: Self, rng: &mut R) -> Self;
}

macro_rules! impl_sample_real {
    ($t:ty) => {
        impl SampleReal for $t {
            fn rand_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self {
                rng.random()
            }
            fn rand_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
                StandardNormal.sample(rng)
            }
            fn rand_exp1<R: Rng + ?Sized>(rng: &mut R) -> Self {
                Exp1.sample(rng)
            }
            fn rand_gamma<R: Rng + ?Sized>(shape: Self, rng: &mut R) -> Self {
                Gamma::new(shape, 1.0)
                    .expect("valid gamma shape")
                    .sample(rng)
            }
        }
    };
}

impl_sample_real!(f64);
impl_sample_real!(f32);

/// log(cosh(x)), stable for arbitrarily large |x|.
pub fn log_cosh<T: Real>(x: T) -> T {
    let a = x.abs();
    a + (-(a + a)).exp().ln_1p() - T::LN_2()
}

/// log(1 + e^x), the softplus, stable for large |x|.
pub fn log1p_exp<T: Real>(x: T) -> T {
    if x > T::zero() {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Standard normal CDF.
pub fn normal_cdf<T: Real>(x: T) -> T {
    T::of(0.5) * (-x / T::SQRT_2()).erfc()
}

/// log of the standard normal CDF, stable far into the lower tail.
pub fn log_normal_cdf<T: Real>(x: T) -> T {
    if x > T::of(-35.0) {
        // erfc stays a normal float down to x = -35.
        normal_cdf(x).ln()
    } else {
        // Asymptotic expansion of the Mills ratio; error below 1e-15
        // past the switch point.
        let z = -x;
        let z2 = z * z;
        let one = T::one();
        let series = one
            - one / z2
                * (one - T::of(3.0) / z2 * (one - T::of(5.0) / z2 * (one - T::of(7.0) / z2)));
        -T::of(0.5) * z2 - z.ln() - T::of(0.5) * (T::of(2.0) * T::PI()).ln() + series.ln()
    }
}

/// CDF of the inverse-Gaussian IG(mu, lambda) distribution.
///
/// Evaluated in log space termwise so that the `exp(2 lambda / mu)` factor
/// cannot overflow on its own.
pub fn inverse_gaussian_cdf<T: Real>(x: T, mu: T, lambda: T) -> T {
    if x <= T::zero() {
        return T::zero();
    }
    let s = (lambda / x).sqrt();
    let r = x / mu;
    let a = s * (r - T::one());
    let b = s * (r + T::one());
    let t1 = normal_cdf(a);
    let t2 = (T::of(2.0) * lambda / mu + log_normal_cdf(-b)).exp();
    (t1 + t2).min(T::one())
}
