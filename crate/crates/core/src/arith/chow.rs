//! Equivariant Chow ring of `(P¹)^d` truncated to the nilpotent part:
//! coefficients times square-free monomials in `h_1..h_d`, `h_i^2 = 0`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::coeff::{Coefficient, Field};
use crate::{Error, Result};

/// `a*s1 + b*s2 + c*s3 + sum_p k_p h_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearForm {
    pub s: [i64; 3],
    pub h: Vec<i64>,
}

impl LinearForm {
    pub fn new(s: [i64; 3], h: Vec<i64>) -> Self {
        LinearForm { s, h }
    }

    pub fn is_h_free(&self) -> bool {
        self.h.iter().all(|&x| x == 0)
    }
}

/// Subsets of generators are bitmasks, so at most 32 factors.
#[derive(Clone, Debug, PartialEq)]
pub struct ChowElem<C> {
    d: u32,
    terms: BTreeMap<u32, C>,
}

impl<C: Coefficient> ChowElem<C> {
    pub fn zero(d: u32) -> Self {
        assert!(d <= 32, "at most 32 nilpotent generators");
        ChowElem { d, terms: BTreeMap::new() }
    }

    pub fn scalar(d: u32, c: C) -> Self {
        let mut x = Self::zero(d);
        x.add_term(0, c);
        x
    }

    pub fn one(d: u32) -> Self {
        Self::scalar(d, C::one())
    }

    /// `h_{p+1}` (zero-based index `p`).
    pub fn h(d: u32, p: u32) -> Self {
        assert!(p < d);
        let mut x = Self::zero(d);
        x.add_term(1 << p, C::one());
        x
    }

    /// `c + sum_p k_p h_p`.
    pub fn affine(d: u32, c: C, h: &[i64]) -> Self {
        let mut x = Self::scalar(d, c);
        for (p, &k) in h.iter().enumerate() {
            if k != 0 {
                assert!((p as u32) < d, "twist outside the ambient factors");
                x.add_term(1 << p, C::from_i64(k));
            }
        }
        x
    }

    pub fn dimension(&self) -> u32 {
        self.d
    }

    fn add_term(&mut self, mask: u32, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mask) {
            Some(v) => {
                let s = v.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&mask);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(mask, c);
            }
        }
    }

    pub fn coefficient(&self, mask: u32) -> C {
        self.terms.get(&mask).cloned().unwrap_or_else(C::zero)
    }

    /// Part of degree `k` in the `h_p`.
    pub fn homogeneous(&self, k: u32) -> Self {
        let mut out = Self::zero(self.d);
        for (m, c) in &self.terms {
            if m.count_ones() == k {
                out.add_term(*m, c.clone());
            }
        }
        out
    }

    /// Highest degree carrying a nonzero coefficient.
    pub fn top_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.count_ones()).max()
    }

    pub fn h_free(&self) -> C {
        self.coefficient(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn negate(&self) -> Self {
        ChowElem { d: self.d, terms: self.terms.iter().map(|(m, c)| (*m, c.negate())).collect() }
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.d);
        for (m, v) in &self.terms {
            out.add_term(*m, v.times(c));
        }
        out
    }

    pub fn times(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d);
        let mut out = Self::zero(self.d);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma & mb == 0 {
                    out.add_term(ma | mb, ca.times(cb));
                }
            }
        }
        out
    }

    pub fn pow_u32(&self, k: u32) -> Self {
        let mut acc = Self::one(self.d);
        for _ in 0..k {
            acc = acc.times(self);
        }
        acc
    }

    /// Coefficient of the top class `h_1 ... h_d`.
    pub fn integrate(&self) -> C {
        let top = if self.d == 32 { u32::MAX } else { (1u32 << self.d) - 1 };
        self.coefficient(top)
    }
}

impl<C: Field> ChowElem<C> {
    /// Inverse by the finite geometric series in the nilpotent part.
    pub fn invert(&self) -> Result<Self> {
        let a0 = self.h_free();
        let inv0 = a0.try_inverse().ok_or_else(|| Error::NonInvertible(alloc::format!("h-free part {:?}", a0)))?;
        let mut u = self.clone();
        u.terms.remove(&0);
        let u = u.scale(&inv0).negate();
        let mut acc = Self::one(self.d);
        let mut power = Self::one(self.d);
        for _ in 0..self.d {
            power = power.times(&u);
            if power.is_zero() {
                break;
            }
            acc = acc.plus(&power);
        }
        Ok(acc.scale(&inv0))
    }

    pub fn pow_i32(&self, k: i32) -> Result<Self> {
        if k >= 0 {
            Ok(self.pow_u32(k as u32))
        } else {
            Ok(self.invert()?.pow_u32(k.unsigned_abs()))
        }
    }
}

/// Chow-valued `chow_invert` for callers that prefer a free function.
pub fn chow_invert<C: Field>(x: &ChowElem<C>) -> Result<ChowElem<C>> {
    x.invert()
}

/// Chow-valued `chow_integrate`.
pub fn chow_integrate<C: Coefficient>(x: &ChowElem<C>, d: u32) -> Result<C> {
    if x.d != d {
        return Err(Error::Precondition(alloc::format!("element has {} generators, integrating over {}", x.d, d)));
    }
    Ok(x.integrate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratfunc::RatFuncS;

    fn s(i: usize) -> RatFuncS {
        RatFuncS::var(i)
    }

    #[test]
    fn invert_one_generator() {
        let x = ChowElem::affine(1, s(0), &[2]);
        let inv = x.invert().unwrap();
        assert_eq!(inv.coefficient(0), s(0).inv().unwrap());
        assert_eq!(inv.coefficient(1), RatFuncS::from_i64(-2).div(&s(0).pow(2).unwrap()).unwrap());
        assert_eq!(x.times(&inv), ChowElem::one(1));
    }

    #[test]
    fn invert_two_generators() {
        let x = ChowElem::affine(2, s(0), &[1, 1]);
        let inv = x.invert().unwrap();
        assert_eq!(inv.coefficient(3), RatFuncS::from_i64(2).div(&s(0).pow(3).unwrap()).unwrap());
        assert_eq!(inv.coefficient(1), s(0).pow(-2).unwrap().neg());
        assert_eq!(x.times(&inv), ChowElem::one(2));
    }

    #[test]
    fn scalar_inverse_and_zero() {
        let x = ChowElem::scalar(0, s(1));
        assert_eq!(x.invert().unwrap().h_free(), s(1).inv().unwrap());
        assert!(ChowElem::<RatFuncS>::h(1, 0).invert().is_err());
    }

    #[test]
    fn integration() {
        let d0 = ChowElem::scalar(0, s(1).add(&s(2)));
        assert_eq!(chow_integrate(&d0, 0).unwrap(), s(1).add(&s(2)));
        let d1 = ChowElem::affine(1, s(0), &[5]);
        assert_eq!(chow_integrate(&d1, 1).unwrap(), RatFuncS::from_i64(5));
        let d2 = ChowElem::h(2, 0).times(&ChowElem::h(2, 1)).scale(&s(2));
        assert_eq!(chow_integrate(&d2, 2).unwrap(), s(2));
        assert!(chow_integrate(&d2, 1).is_err());
    }
}
