//! Exact integer scalars that the polynomial routines are generic over.
//!
//! Every closed form here is an alternating sum of binomial products, so the
//! scalar only needs to be an exact signed integer. [`num_bigint::BigInt`] is
//! the default; `i64` and `i128` work for small inputs and serve as a second
//! arithmetic path in tests.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

/// Exact signed integer ring.
pub trait Scalar: Clone + Debug + Display + Integer + Signed + FromPrimitive {
    fn from_usize_exact(v: usize) -> Self {
        Self::from_usize(v).expect("usize fits in scalar")
    }

    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("i64 fits in scalar")
    }
}

impl<T> Scalar for T where T: Clone + Debug + Display + Integer + Signed + FromPrimitive {}

/// `(-1)^e` in the scalar ring.
pub fn sign_pow<T: Scalar>(e: usize) -> T {
    if e.is_multiple_of(2) {
        T::one()
    } else {
        -T::one()
    }
}
