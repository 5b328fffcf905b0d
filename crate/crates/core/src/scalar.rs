//! Scalar abstraction shared by the floating path and the exact-rational path.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Pow, Signed, ToPrimitive, Zero};

/// Field element used by every matrix and sequence type.
///
/// `f64` is the production path. `BigRational` is exact for everything except
/// [`Scalar::powf`] with a non-integral exponent, which falls back to a
/// rounded `f64` power.
pub trait Scalar:
    Num + Clone + Debug + PartialOrd + std::ops::Neg<Output = Self> + Send + Sync + 'static
{
    fn from_f64(x: f64) -> Self;
    fn from_usize(n: usize) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn powf(&self, e: f64) -> Self;
    /// True when arithmetic is exact.
    fn is_exact() -> bool;

    /// Sum of a sequence. The floating impl uses Neumaier compensation.
    fn sum_iter<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }

    fn from_usize(n: usize) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn powf(&self, e: f64) -> Self {
        if e == 1.0 {
            *self
        } else if e == 0.0 {
            1.0
        } else {
            f64::powf(*self, e)
        }
    }

    fn is_exact() -> bool {
        false
    }

    fn sum_iter<I: Iterator<Item = Self>>(iter: I) -> Self {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for x in iter {
            let t = sum + x;
            if sum.abs() >= x.abs() {
                comp += (sum - t) + x;
            } else {
                comp += (x - t) + sum;
            }
            sum = t;
        }
        sum + comp
    }
}

impl Scalar for BigRational {
    fn from_f64(x: f64) -> Self {
        BigRational::from_float(x).expect("finite float")
    }

    fn from_usize(n: usize) -> Self {
        BigRational::from_integer(BigInt::from_usize(n).expect("usize fits BigInt"))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn powf(&self, e: f64) -> Self {
        if e.fract() == 0.0 && e.abs() <= i32::MAX as f64 {
            if self.is_zero() && e <= 0.0 {
                return Self::one();
            }
            Pow::pow(self, e as i32)
        } else {
            // inexact: non-integral powers leave the rationals
            <Self as Scalar>::from_f64(Scalar::to_f64(self).powf(e))
        }
    }

    fn is_exact() -> bool {
        true
    }
}

/// Weight `n^e` with the convention that the `n = 0` weight is 1.
pub fn index_weight<T: Scalar>(n: usize, e: f64) -> T {
    if n == 0 {
        T::one()
    } else {
        T::from_usize(n).powf(e)
    }
}
