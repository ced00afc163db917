//! Exact arithmetic: rationals, polynomials and rational functions in
//! `s1, s2, s3`, torus characters, nilpotent Chow rings, `q`-series.

pub mod chow;
mod coeff;
pub mod eval;
mod gcd;
pub mod laurent;
pub mod linalg;
pub mod linfrac;
pub mod parse;
pub mod poly;
pub mod ratfunc;
pub mod series;

pub use chow::{ChowElem, LinearForm};
pub use coeff::{Coefficient, ExactDiv, Field};
pub use eval::{Frame, Numeric, Symbolic, WeightEvaluator};
pub use laurent::{LaurentPolyT, Twist};
pub use linfrac::LinFrac;
pub use poly::{Exponent, Poly, PolyS, ZPoly};
pub use ratfunc::RatFuncS;
pub use series::QLaurentSeries;

/// Arbitrary precision rational; `num_rational` keeps it reduced with a
/// positive denominator.
pub type RationalScalar = num_rational::BigRational;

pub use num_bigint::BigInt;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> RationalScalar {
    RationalScalar::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn ratio(n: i64, d: i64) -> RationalScalar {
    RationalScalar::new(BigInt::from(n), BigInt::from(d))
}
