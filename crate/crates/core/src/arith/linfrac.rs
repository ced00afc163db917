//! Rational functions whose denominators are products of linear forms.
//!
//! Every localization weight has this shape, so sums keep the denominator
//! factored and only take the least common multiple of factor powers; no
//! polynomial gcd is ever needed. Linear forms are irreducible, hence the
//! final reduction is trial division.

use alloc::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::coeff::{Coefficient, Field};
use super::poly::{PolyS, ZPoly};
use super::ratfunc::RatFuncS;
use crate::{Error, Result};

/// Primitive integer linear form with positive first nonzero coefficient.
pub type FormKey = [i64; 3];

/// `scale * num * prod(form^exp)`; `num` is primitive with positive leading
/// coefficient, exponents are nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct LinFrac {
    scale: BigRational,
    num: ZPoly,
    factors: BTreeMap<FormKey, i32>,
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Splits a nonzero form into `(sign * content, primitive key)`.
pub fn normalize_form(form: [i64; 3]) -> Option<(i64, FormKey)> {
    let g = gcd_i64(gcd_i64(form[0], form[1]), form[2]);
    if g == 0 {
        return None;
    }
    let lead = form.iter().copied().find(|&x| x != 0).unwrap();
    let g = if lead < 0 { -g } else { g };
    Some((g, [form[0] / g, form[1] / g, form[2] / g]))
}

fn key_poly(k: &FormKey) -> ZPoly {
    ZPoly::linear(*k)
}

impl LinFrac {
    pub fn zero() -> Self {
        LinFrac { scale: <BigRational as Zero>::zero(), num: ZPoly::zero(), factors: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(<BigRational as One>::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if Zero::is_zero(&c) {
            return Self::zero();
        }
        LinFrac { scale: c, num: ZPoly::one(), factors: BTreeMap::new() }
    }

    /// The linear form `a*s1 + b*s2 + c*s3`.
    pub fn linear(form: [i64; 3]) -> Self {
        match normalize_form(form) {
            None => Self::zero(),
            Some((g, key)) => {
                let mut factors = BTreeMap::new();
                factors.insert(key, 1);
                LinFrac { scale: BigRational::from_integer(g.into()), num: ZPoly::one(), factors }
            }
        }
    }

    pub fn from_poly(p: &PolyS) -> Self {
        let (scale, num) = p.to_primitive_integer();
        if num.is_zero() {
            return Self::zero();
        }
        LinFrac { scale, num, factors: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Number of distinct linear factors (either sign of exponent).
    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut factors = self.factors.clone();
        for (k, e) in &other.factors {
            let v = factors.entry(*k).or_insert(0);
            *v += e;
            if *v == 0 {
                factors.remove(k);
            }
        }
        let num = if other.num.as_constant().is_some() {
            self.num.clone()
        } else if self.num.as_constant().is_some() {
            other.num.clone()
        } else {
            self.num.times(&other.num)
        };
        LinFrac { scale: &self.scale * &other.scale, num, factors }
    }

    /// Multiplies by `form^k`.
    pub fn mul_form_pow(&self, form: [i64; 3], k: i32) -> Result<Self> {
        if self.is_zero() || k == 0 {
            return Ok(self.clone());
        }
        let (g, key) = normalize_form(form).ok_or(Error::DivisionByZero)?;
        let mut out = self.clone();
        let g = BigRational::from_integer(g.into());
        out.scale *= if k > 0 { g.pow(k) } else { g.recip().pow(-k) };
        let v = out.factors.entry(key).or_insert(0);
        *v += k;
        if *v == 0 {
            out.factors.remove(&key);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.scale = -out.scale;
        out
    }

    pub fn scale_by(&self, c: &BigRational) -> Self {
        if Zero::is_zero(c) {
            return Self::zero();
        }
        let mut out = self.clone();
        out.scale *= c;
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut common: BTreeMap<FormKey, i32> = BTreeMap::new();
        let mut lift_a = ZPoly::one();
        let mut lift_b = ZPoly::one();
        let keys: alloc::collections::BTreeSet<FormKey> =
            self.factors.keys().chain(other.factors.keys()).copied().collect();
        for k in keys {
            let ea = self.factors.get(&k).copied().unwrap_or(0);
            let eb = other.factors.get(&k).copied().unwrap_or(0);
            let m = ea.min(eb);
            if m != 0 {
                common.insert(k, m);
            }
            if ea > m {
                lift_a = lift_a.times(&key_poly(&k).pow((ea - m) as u32));
            }
            if eb > m {
                lift_b = lift_b.times(&key_poly(&k).pow((eb - m) as u32));
            }
        }
        let qa = self.scale.denom();
        let qb = other.scale.denom();
        let l = qa.lcm(qb);
        let ca = self.scale.numer() * (&l / qa);
        let cb = other.scale.numer() * (&l / qb);
        let a = self.num.times(&lift_a).scale(&ca);
        let b = other.num.times(&lift_b).scale(&cb);
        let sum = a.plus(&b);
        if sum.is_zero() {
            return Self::zero();
        }
        let (c, num) = sum.primitive_part();
        LinFrac { scale: BigRational::new(c, l), num, factors: common }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Cancels linear factors of the numerator against the denominator.
    pub fn reduce(&self) -> Self {
        if self.is_zero() || self.num.as_constant().is_some() {
            return self.clone();
        }
        let mut out = self.clone();
        let neg: alloc::vec::Vec<FormKey> = out.factors.iter().filter(|(_, &e)| e < 0).map(|(k, _)| *k).collect();
        for k in neg {
            let p = key_poly(&k);
            while out.factors.get(&k).copied().unwrap_or(0) < 0 {
                match out.num.div_exact(&p) {
                    Some(q) => {
                        out.num = q;
                        let e = out.factors.get_mut(&k).unwrap();
                        *e += 1;
                        if *e == 0 {
                            out.factors.remove(&k);
                        }
                    }
                    None => break,
                }
            }
        }
        out
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut base = self.clone();
        if base.num.as_constant().is_none() {
            base = base.reduce();
        }
        if base.num.as_constant().is_none() {
            if base.num.total_degree() != 1 || base.num.terms().any(|(e, _)| e.iter().sum::<u32>() != 1) {
                return None;
            }
            let form =
                [base.num.coefficient(&[1, 0, 0]), base.num.coefficient(&[0, 1, 0]), base.num.coefficient(&[0, 0, 1])];
            let form: [i64; 3] =
                [i64::try_from(&form[0]).ok()?, i64::try_from(&form[1]).ok()?, i64::try_from(&form[2]).ok()?];
            base.num = ZPoly::one();
            base = base.mul_form_pow(form, 1).ok()?;
        }
        let factors = base.factors.iter().map(|(k, e)| (*k, -e)).collect();
        Some(LinFrac { scale: base.scale.recip(), num: ZPoly::one(), factors })
    }

    /// Value at a rational point.
    pub fn eval(&self, point: &[BigRational; 3]) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(<BigRational as Zero>::zero());
        }
        let mut acc = &self.scale * self.num.to_rational().eval(point);
        for (k, e) in &self.factors {
            let v = form_value(k, point);
            if Zero::is_zero(&v) {
                if *e < 0 {
                    return Err(Error::DivisionByZero);
                }
                return Ok(<BigRational as Zero>::zero());
            }
            acc *= if *e > 0 { v.pow(*e) } else { v.recip().pow(-*e) };
        }
        Ok(acc)
    }

    /// Converts to the reduced canonical rational function.
    pub fn to_ratfunc(&self) -> RatFuncS {
        if self.is_zero() {
            return <RatFuncS as Coefficient>::zero();
        }
        let r = self.reduce();
        let mut num = r.num.clone();
        let mut den = ZPoly::one();
        for (k, e) in &r.factors {
            let p = key_poly(k).pow(e.unsigned_abs());
            if *e > 0 {
                num = num.times(&p);
            } else {
                den = den.times(&p);
            }
        }
        RatFuncS::from_coprime(num.to_rational().scale(&r.scale), den.to_rational()).expect("nonzero denominator")
    }
}

pub(crate) fn form_value(k: &FormKey, point: &[BigRational; 3]) -> BigRational {
    let mut v = <BigRational as Zero>::zero();
    for i in 0..3 {
        if k[i] != 0 {
            v += &point[i] * BigRational::from_integer(BigInt::from(k[i]));
        }
    }
    v
}

impl Coefficient for LinFrac {
    fn zero() -> Self {
        LinFrac::zero()
    }
    fn one() -> Self {
        LinFrac::one()
    }
    fn is_zero(&self) -> bool {
        LinFrac::is_zero(self)
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
        LinFrac::constant(BigRational::from_integer(v.into()))
    }
    fn is_one(&self) -> bool {
        self.factors.is_empty() && self.num.as_constant().is_some() && One::is_one(&self.scale)
    }
}

impl Field for LinFrac {
    fn try_inverse(&self) -> Option<Self> {
        self.inverse()
    }
    fn from_rational(r: &BigRational) -> Self {
        LinFrac::constant(r.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn sums_match_ratfunc() {
        let a = LinFrac::linear([0, 1, 1]).mul(&LinFrac::linear([1, 0, 0]).inverse().unwrap());
        let b = LinFrac::linear([2, 0, 0]).inverse().unwrap();
        let s = a.add(&b);
        let want = RatFuncS::linear([0, 1, 1])
            .div(&RatFuncS::var(0))
            .unwrap()
            .add(&RatFuncS::linear([2, 0, 0]).inv().unwrap());
        assert_eq!(s.to_ratfunc(), want);
    }

    #[test]
    fn cancellation_to_polynomial() {
        let a = LinFrac::linear([1, 0, 0]).mul(&LinFrac::linear([0, 1, 0]).inverse().unwrap());
        let b = LinFrac::linear([0, 1, 0]).mul(&LinFrac::linear([0, 1, 0]).inverse().unwrap());
        let s = a.add(&b);
        assert_eq!(s.to_ratfunc(), RatFuncS::linear([1, 1, 0]).div(&RatFuncS::var(1)).unwrap());
        let t = LinFrac::linear([1, 1, 0]).mul(&LinFrac::linear([-1, -1, 0]).inverse().unwrap());
        assert_eq!(t.to_ratfunc(), RatFuncS::from_i64(-1));
        let p = [rat(2), rat(3), rat(5)];
        assert_eq!(s.eval(&p).unwrap(), crate::arith::ratio(5, 3));
    }

    #[test]
    fn degenerate_forms() {
        assert!(LinFrac::linear([0, 0, 0]).is_zero());
        let inv = LinFrac::linear([1, -1, 0]).inverse().unwrap();
        assert_eq!(inv.eval(&[rat(1), rat(1), rat(0)]), Err(Error::DivisionByZero));
    }
}
