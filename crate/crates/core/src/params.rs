use crate::error::PgError;
use crate::real::Real;

/// Parameter pair (b, c) of a Polya-Gamma distribution PG(b, c).
///
/// `b` is the shape (number of augmented trials) and `c` the exponential
/// tilt on the log-odds scale.  Every function of the family is even in
/// `c`, so the constructor normalizes `c` to `|c|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PgParams<T> {
    shape: T,
    tilt: T,
}

impl<T: Real> PgParams<T> {
    /// Validates `b > 0` and stores `|c|`.
    pub fn new(shape: T, tilt: T) -> Result<Self, PgError> {
        if !(shape > T::zero()) || !shape.is_finite() {
            return Err(PgError::NonPositiveShape(
                shape.to_f64().unwrap_or(f64::NAN),
            ));
        }
        if !tilt.is_finite() {
            return Err(PgError::NonPositiveShape(f64::NAN));
        }
        Ok(Self {
            shape,
            tilt: tilt.abs(),
        })
    }

    pub fn shape(&self) -> T {
        self.shape
    }

    /// The normalized tilt, always nonnegative.
    pub fn tilt(&self) -> T {
        self.tilt
    }

    /// k-th denominator of the sum-of-gammas representation:
    /// `d_k = 2 (k - 1/2)^2 pi^2 + c^2 / 2`, for k = 1, 2, ...
    pub fn gamma_denominator(&self, k: usize) -> T {
        let kf = T::from_usize(k).expect("index") - T::of(0.5);
        T::of(2.0) * kf * kf * T::PI() * T::PI() + self.tilt * self.tilt * T::of(0.5)
    }
}
