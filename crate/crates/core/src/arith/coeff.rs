use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring usable as a polynomial or series coefficient.
pub trait Coefficient: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn from_i64(v: i64) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn pow_u32(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

/// Coefficients that admit partial inverses and rational scalars.
pub trait Field: Coefficient {
    fn try_inverse(&self) -> Option<Self>;
    fn from_rational(r: &BigRational) -> Self;
}

/// Exact division where it exists.
pub trait ExactDiv: Sized {
    fn div_exact(&self, other: &Self) -> Option<Self>;
}

impl Coefficient for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl ExactDiv for BigInt {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
}

impl Coefficient for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Field for BigRational {
    fn try_inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

impl ExactDiv for BigRational {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            None
        } else {
            Some(self / other)
        }
    }
}

impl Coefficient for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn plus(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("i64 overflow")
    }
    fn times(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("i64 overflow")
    }
    fn negate(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        v
    }
}
