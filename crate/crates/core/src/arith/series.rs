//! Truncated Laurent series in `q`.

use alloc::vec::Vec;

use num_rational::BigRational;

use super::coeff::{Coefficient, Field};
use crate::{Error, Result};

/// Coefficients of `q^lowest ..= q^truncation`; powers above the truncation
/// are unknown, powers below `lowest` are zero.
#[derive(Clone, Debug, PartialEq)]
pub struct QLaurentSeries<C> {
    lowest: i64,
    truncation: i64,
    coeffs: Vec<C>,
}

impl<C: Coefficient> QLaurentSeries<C> {
    /// The zero series known up to `truncation`.
    pub fn zero(lowest: i64, truncation: i64) -> Self {
        let n = (truncation - lowest + 1).max(0) as usize;
        QLaurentSeries { lowest, truncation, coeffs: alloc::vec![C::zero(); n] }
    }

    pub fn one(truncation: i64) -> Self {
        let mut s = Self::zero(0, truncation);
        s.add_to(0, &C::one());
        s
    }

    /// Series with `coeffs[k]` at `q^(lowest + k)`; the truncation is the
    /// last supplied power.
    pub fn from_coefficients(lowest: i64, coeffs: Vec<C>) -> Self {
        let truncation = lowest + coeffs.len() as i64 - 1;
        QLaurentSeries { lowest, truncation, coeffs }
    }

    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    /// `None` above the truncation.
    pub fn coefficient(&self, n: i64) -> Option<C> {
        if n > self.truncation {
            return None;
        }
        if n < self.lowest {
            return Some(C::zero());
        }
        Some(self.coeffs[(n - self.lowest) as usize].clone())
    }

    /// Adds `c` to the coefficient of `q^n`; ignored above the truncation.
    pub fn add_to(&mut self, n: i64, c: &C) {
        if n > self.truncation {
            return;
        }
        assert!(n >= self.lowest, "power below the declared lowest");
        let slot = &mut self.coeffs[(n - self.lowest) as usize];
        *slot = slot.plus(c);
    }

    /// Nonzero terms in increasing power.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        let low = self.lowest;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| (low + k as i64, c))
    }

    /// Every known power with its coefficient, zeros included.
    pub fn dense(&self) -> impl Iterator<Item = (i64, &C)> {
        let low = self.lowest;
        self.coeffs.iter().enumerate().map(move |(k, c)| (low + k as i64, c))
    }

    /// Lowest power with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.terms().next().map(|(n, _)| n)
    }

    pub fn truncate(&self, n: i64) -> Self {
        let n = n.min(self.truncation);
        let mut out = Self::zero(self.lowest, n);
        for (p, c) in self.terms() {
            if p <= n {
                out.add_to(p, c);
            }
        }
        out
    }

    pub fn plus(&self, other: &Self) -> Self {
        let low = self.lowest.min(other.lowest);
        let trunc = self.truncation.min(other.truncation);
        let mut out = Self::zero(low, trunc);
        for (n, c) in self.terms().chain(other.terms()) {
            if n <= trunc {
                out.add_to(n, c);
            }
        }
        out
    }

    pub fn negate(&self) -> Self {
        QLaurentSeries {
            lowest: self.lowest,
            truncation: self.truncation,
            coeffs: self.coeffs.iter().map(|c| c.negate()).collect(),
        }
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }

    pub fn scale(&self, k: &C) -> Self {
        QLaurentSeries {
            lowest: self.lowest,
            truncation: self.truncation,
            coeffs: self.coeffs.iter().map(|c| c.times(k)).collect(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QLaurentSeries { lowest: self.lowest + k, truncation: self.truncation + k, coeffs: self.coeffs.clone() }
    }

    /// Substitutes `q -> -q`.
    pub fn flip_sign(&self) -> Self {
        let low = self.lowest;
        QLaurentSeries {
            lowest: self.lowest,
            truncation: self.truncation,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if (low + k as i64).rem_euclid(2) == 1 { c.negate() } else { c.clone() })
                .collect(),
        }
    }

    /// Product; the result is known up to the last power both factors
    /// determine.
    pub fn times(&self, other: &Self) -> Self {
        let trunc = (self.truncation + other.lowest).min(other.truncation + self.lowest);
        let low = self.lowest + other.lowest;
        let mut out = Self::zero(low, trunc);
        for (na, ca) in self.terms() {
            for (nb, cb) in other.terms() {
                let n = na + nb;
                if n > trunc {
                    break;
                }
                out.add_to(n, &ca.times(cb));
            }
        }
        out
    }

    pub fn map<D: Coefficient, F: Fn(&C) -> D>(&self, f: F) -> QLaurentSeries<D> {
        QLaurentSeries { lowest: self.lowest, truncation: self.truncation, coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn try_map<D: Coefficient, E, F: Fn(&C) -> core::result::Result<D, E>>(
        &self,
        f: F,
    ) -> core::result::Result<QLaurentSeries<D>, E> {
        let coeffs = self.coeffs.iter().map(f).collect::<core::result::Result<Vec<D>, E>>()?;
        Ok(QLaurentSeries { lowest: self.lowest, truncation: self.truncation, coeffs })
    }

    /// Coefficientwise equality on the common known range.
    pub fn agrees_with(&self, other: &Self) -> bool {
        self.mismatches(other).is_empty()
    }

    /// Powers where the two series differ, within the common known range.
    pub fn mismatches(&self, other: &Self) -> Vec<i64> {
        let low = self.lowest.min(other.lowest);
        let high = self.truncation.min(other.truncation);
        (low..=high).filter(|&n| self.coefficient(n) != other.coefficient(n)).collect()
    }
}

impl<C: Field> QLaurentSeries<C> {
    /// Multiplicative inverse; the leading coefficient must be invertible.
    pub fn inverse(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::DivisionByZero)?;
        let prec = self.truncation - v;
        let lead = self.coefficient(v).unwrap();
        let inv0 = lead.try_inverse().ok_or_else(|| Error::NonInvertible(alloc::format!("{:?}", lead)))?;
        let mut g: Vec<C> = Vec::with_capacity((prec + 1) as usize);
        g.push(inv0.clone());
        for n in 1..=prec {
            let mut acc = C::zero();
            for k in 1..=n {
                let a = self.coefficient(v + k).unwrap();
                if !a.is_zero() {
                    acc = acc.plus(&a.times(&g[(n - k) as usize]));
                }
            }
            g.push(acc.times(&inv0).negate());
        }
        Ok(QLaurentSeries::from_coefficients(-v, g))
    }

    /// `self^a` for a series `1 + O(q)` and an exponent from the coefficient
    /// field, via `exp(a log self)`.
    pub fn pow_field(&self, a: &C) -> Result<Self> {
        if self.lowest < 0 && self.terms().any(|(n, _)| n < 0) {
            return Err(Error::Precondition("power of a series with a pole".into()));
        }
        if self.coefficient(0) != Some(C::one()) {
            return Err(Error::Precondition("series must start with 1".into()));
        }
        let n = self.truncation;
        let f: Vec<C> = (0..=n).map(|k| self.coefficient(k).unwrap()).collect();
        // log f: L' = f'/f, computed as l_k from k f_k = sum_{j=1}^k j l_j f_{k-j}.
        let mut l: Vec<C> = alloc::vec![C::zero(); (n + 1) as usize];
        for k in 1..=n as usize {
            let mut acc = f[k].times(&C::from_i64(k as i64));
            for j in 1..k {
                acc = acc.minus(&l[j].times(&C::from_i64(j as i64)).times(&f[k - j]));
            }
            l[k] = acc.times(&C::from_rational(&BigRational::new(1.into(), (k as i64).into())));
        }
        let h: Vec<C> = l.iter().map(|x| x.times(a)).collect();
        // exp: k g_k = sum_{j=1}^k j h_j g_{k-j}.
        let mut g: Vec<C> = alloc::vec![C::zero(); (n + 1) as usize];
        g[0] = C::one();
        for k in 1..=n as usize {
            let mut acc = C::zero();
            for j in 1..=k {
                if !h[j].is_zero() {
                    acc = acc.plus(&h[j].times(&C::from_i64(j as i64)).times(&g[k - j]));
                }
            }
            g[k] = acc.times(&C::from_rational(&BigRational::new(1.into(), (k as i64).into())));
        }
        Ok(QLaurentSeries::from_coefficients(0, g))
    }
}

/// `M(-q) = prod_{n>=1} (1 - (-q)^n)^{-n}` up to `q^order`, over any ring.
pub fn macmahon_minus_q<C: Coefficient>(order: i64) -> QLaurentSeries<C> {
    let mut acc = QLaurentSeries::<C>::one(order);
    for n in 1..=order {
        // (1 - (-q)^n)^{-1} = sum_k (-q)^{nk}
        let mut geo = QLaurentSeries::<C>::zero(0, order);
        let mut k = 0;
        while n * k <= order {
            let sign = if (n * k) % 2 == 1 { -1 } else { 1 };
            geo.add_to(n * k, &C::from_i64(sign));
            k += 1;
        }
        for _ in 0..n {
            acc = acc.times(&geo);
        }
    }
    acc
}
