//! Scalar abstractions shared by the determinant, Plücker and N-Schur code.
//!
//! The same matrix routines run over exact rationals, hardware floats,
//! sparse polynomials and rational functions. `Ring` is the minimum needed
//! to build matrices and expand products; `ExactDiv` adds the exact quotient
//! used by fraction-free elimination; `Field` adds division.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Commutative ring element.
pub trait Ring:
    Clone
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Weight used for pivot selection. Exact types report 0 or 1; floats
    /// report their magnitude so elimination can pivot on the largest entry.
    fn pivot_weight(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            1.0
        }
    }
}

/// Ring with an exact division test: `a.exact_div(b)` is `Some(q)` iff `a = q * b`.
pub trait ExactDiv: Ring {
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}

/// Field element.
pub trait Field: Ring + Div<Output = Self> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }
}

impl Ring for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl ExactDiv for BigRational {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            None
        } else {
            Some(self / divisor)
        }
    }
}

impl Field for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }
}

impl Ring for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl ExactDiv for BigInt {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, divisor);
        r.is_zero().then_some(q)
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Ring for $t {
            fn from_i64(v: i64) -> Self {
                v as $t
            }

            fn pivot_weight(&self) -> f64 {
                self.abs() as f64
            }
        }

        impl ExactDiv for $t {
            fn exact_div(&self, divisor: &Self) -> Option<Self> {
                (*divisor != 0.0).then(|| self / divisor)
            }
        }

        impl Field for $t {}
    };
}

float_scalar!(f32);
float_scalar!(f64);

/// Lossy conversion of an exact rational to a float, for reporting and
/// exact-versus-numeric cross checks.
pub fn rational_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Very large components: scale both down by the same power of two.
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
            let n = (q.numer().abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::INFINITY);
            let v = n / d;
            if q.is_negative() {
                -v
            } else {
                v
            }
        }
    }
}

/// Nonnegative integer power by repeated squaring.
pub fn pow<T: Ring>(base: &T, mut exp: u32) -> T {
    let mut acc = T::one();
    let mut b = base.clone();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b.clone();
        }
        exp >>= 1;
        if exp > 0 {
            b = b.clone() * b;
        }
    }
    acc
}
