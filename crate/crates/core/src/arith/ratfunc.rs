//! Reduced rational functions in `s1, s2, s3`.

use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coeff::{Coefficient, Field};
use super::gcd::gcd;
use super::poly::{Poly, PolyS};
use crate::{Error, Result};

/// `num/den`, reduced by the polynomial gcd, with the lexicographically
/// least term of `den` having coefficient 1. The form is canonical, so
/// structural equality is equality of functions.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RatFuncS {
    num: PolyS,
    den: PolyS,
}

impl RatFuncS {
    pub fn new(num: PolyS, den: PolyS) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero_value());
        }
        let (cn, zn) = num.to_primitive_integer();
        let (cd, zd) = den.to_primitive_integer();
        let g = gcd(&zn, &zd);
        let zn = zn.div_exact(&g).expect("gcd divides");
        let zd = zd.div_exact(&g).expect("gcd divides");
        let scale = cn / cd;
        Ok(Self::normalized(zn.to_rational().scale(&scale), zd.to_rational()))
    }

    /// Skips the gcd; the caller guarantees `num` and `den` are coprime.
    pub fn from_coprime(num: PolyS, den: PolyS) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero_value());
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: PolyS, den: PolyS) -> Self {
        let lead = den.trailing().expect("nonzero").1.clone();
        if One::is_one(&lead) {
            return RatFuncS { num, den };
        }
        let inv = lead.recip();
        RatFuncS { num: num.scale(&inv), den: den.scale(&inv) }
    }

    fn zero_value() -> Self {
        RatFuncS { num: PolyS::zero(), den: PolyS::one() }
    }

    pub fn from_poly(p: PolyS) -> Self {
        RatFuncS { num: p, den: PolyS::one() }
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_poly(PolyS::constant(r))
    }

    pub fn var(i: usize) -> Self {
        Self::from_poly(PolyS::var(i))
    }

    pub fn linear(form: [i64; 3]) -> Self {
        Self::from_poly(PolyS::linear(form))
    }

    pub fn numerator(&self) -> &PolyS {
        &self.num
    }

    pub fn denominator(&self) -> &PolyS {
        &self.den
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        let d = self.den.as_constant()?;
        Some(self.num.as_constant()? / d)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().is_some()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.num.is_zero() {
            return other.clone();
        }
        if other.num.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::new(self.num.plus(&other.num), self.den.clone()).expect("nonzero den");
        }
        let num = self.num.times(&other.den).plus(&other.num.times(&self.den));
        Self::new(num, self.den.times(&other.den)).expect("nonzero den")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFuncS { num: self.num.negate(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.num.is_zero() || other.num.is_zero() {
            return Self::zero_value();
        }
        Self::new(self.num.times(&other.num), self.den.times(&other.den)).expect("nonzero den")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::from_coprime(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = k.unsigned_abs();
        Ok(RatFuncS { num: base.num.pow(e), den: base.den.pow(e) }.renormalize())
    }

    fn renormalize(self) -> Self {
        Self::normalized(self.num, self.den)
    }

    /// Value at a rational point; errors if the denominator vanishes there.
    pub fn eval(&self, point: &[BigRational; 3]) -> Result<BigRational> {
        let d = self.den.eval(point);
        if Zero::is_zero(&d) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Substitutes `s_i := subs[i]`.
    pub fn substitute(&self, subs: &[PolyS; 3]) -> Result<Self> {
        Self::new(self.num.compose(subs), self.den.compose(subs))
    }

    /// Cross-multiplication test, independent of the canonical form.
    pub fn cross_equal(&self, other: &Self) -> bool {
        self.num.times(&other.den) == other.num.times(&self.den)
    }
}

impl Coefficient for RatFuncS {
    fn zero() -> Self {
        Self::zero_value()
    }
    fn one() -> Self {
        Self::from_poly(PolyS::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn from_i64(v: i64) -> Self {
        Self::from_poly(PolyS::constant(<BigRational as Coefficient>::from_i64(v)))
    }
}

impl Field for RatFuncS {
    fn try_inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
    fn from_rational(r: &BigRational) -> Self {
        Self::from_rational(r.clone())
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if One::is_one(r.denom()) {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Renders `3/2*s1^2*s2 - s3 + 1`, highest lexicographic term first.
pub fn fmt_poly(p: &PolyS, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (idx, (e, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let a = c.abs();
        if idx == 0 {
            if neg {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if neg { " - " } else { " + " })?;
        }
        let is_const = e.iter().all(|&x| x == 0);
        let mut first = true;
        if !One::is_one(&a) || is_const {
            fmt_rational(&a, f)?;
            first = false;
        }
        for (i, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "s{}", i + 1)?;
            if k > 1 {
                write!(f, "^{}", k)?;
            }
        }
    }
    Ok(())
}

struct PolyDisplay<'a>(&'a PolyS);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self.0, f)
    }
}

impl fmt::Display for Poly<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_poly(self, f)
    }
}

impl fmt::Display for RatFuncS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().map(|c| One::is_one(&c)).unwrap_or(false) {
            return write!(f, "{}", PolyDisplay(&self.num));
        }
        write!(f, "({})/({})", PolyDisplay(&self.num), PolyDisplay(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use alloc::string::ToString;

    fn s(i: usize) -> RatFuncS {
        RatFuncS::var(i)
    }

    #[test]
    fn reduction_by_gcd() {
        let num = PolyS::var(0).pow(2).minus(&PolyS::var(1).pow(2));
        let den = PolyS::var(0).plus(&PolyS::var(1));
        let r = RatFuncS::new(num, den).unwrap();
        assert_eq!(r, s(0).sub(&s(1)));
        assert!(r.is_polynomial());
    }

    #[test]
    fn identities() {
        let a = s(1).add(&s(2)).div(&s(0)).unwrap();
        assert_eq!(a.add(&RatFuncS::zero()), a);
        let b = s(0).div(&s(1).add(&s(2))).unwrap();
        assert_eq!(a.mul(&b), RatFuncS::one());
        assert_eq!(s(0).div(&RatFuncS::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn denominator_normalization() {
        let r = RatFuncS::new(PolyS::one(), PolyS::linear([2, 0, 4])).unwrap();
        assert_eq!(r.denominator(), &PolyS::linear([1, 0, 2]).scale(&ratio(1, 2)));
        assert_eq!(r.denominator().trailing().unwrap().1, &rat(1));
        assert_eq!(r.to_string(), "(1/4)/(1/2*s1 + s3)");
    }

    #[test]
    fn display() {
        let r = s(1).add(&s(2)).div(&s(0)).unwrap();
        assert_eq!(r.to_string(), "(s2 + s3)/(s1)");
        assert_eq!(RatFuncS::from_rational(ratio(-3, 2)).to_string(), "-3/2");
    }
}
