//! Finitely supported torus characters with line-bundle twists.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::partitions::Weight;
use crate::{Error, Result};

/// Powers of the degree `-1` tautological bundles, one slot per P¹ factor.
/// Trailing zeros are trimmed so equal twists compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Twist(Vec<i32>);

impl Twist {
    pub fn trivial() -> Self {
        Twist(Vec::new())
    }

    /// `xi_p^k`.
    pub fn single(p: usize, k: i32) -> Self {
        let mut v = alloc::vec![0; p + 1];
        v[p] = k;
        Twist(v).trimmed()
    }

    pub fn from_exponents(v: Vec<i32>) -> Self {
        Twist(v).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, p: usize) -> i32 {
        self.0.get(p).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    /// Number of factor slots touched (one past the last nonzero).
    pub fn span(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| self.exponent(i) + other.exponent(i)).collect();
        Twist(v).trimmed()
    }

    pub fn inverse(&self) -> Self {
        Twist(self.0.iter().map(|x| -x).collect())
    }
}

type Key = (Weight, Twist);

/// `sum n * t^w * xi^a` with integer `n`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolyT {
    terms: BTreeMap<Key, i64>,
}

impl LaurentPolyT {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Weight::ZERO, Twist::trivial(), 1)
    }

    pub fn monomial(w: Weight, a: Twist, n: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(w, a, n);
        p
    }

    /// `t^w` without twist.
    pub fn t(w: [i32; 3]) -> Self {
        Self::monomial(Weight(w), Twist::trivial(), 1)
    }

    pub fn add_term(&mut self, w: Weight, a: Twist, n: i64) {
        if n == 0 {
            return;
        }
        let key = (w, a);
        let v = self.terms.entry(key.clone()).or_insert(0);
        *v = v.checked_add(n).expect("character coefficient overflow");
        if *v == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, &Twist, i64)> {
        self.terms.iter().map(|((w, a), n)| (w, a, *n))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: Weight, a: &Twist) -> i64 {
        self.terms.get(&(w, a.clone())).copied().unwrap_or(0)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((w, a), n) in &other.terms {
            out.add_term(*w, a.clone(), *n);
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((w, a), n) in &other.terms {
            out.add_term(*w, a.clone(), -*n);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for ((w, a), n) in &self.terms {
            out.add_term(*w, a.clone(), n.checked_mul(k).expect("overflow"));
        }
        out
    }

    pub fn negate(&self) -> Self {
        self.scale(-1)
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((w1, a1), n1) in &self.terms {
            for ((w2, a2), n2) in &other.terms {
                out.add_term(w1.add(w2), a1.mul(a2), n1.checked_mul(*n2).expect("overflow"));
            }
        }
        out
    }

    /// Multiplies by `t^w`.
    pub fn shift(&self, w: Weight) -> Self {
        Self { terms: self.terms.iter().map(|((v, a), n)| ((v.add(&w), a.clone()), *n)).collect() }
    }

    /// Dual character: `t -> 1/t` and twists inverted.
    pub fn bar(&self) -> Self {
        Self { terms: self.terms.iter().map(|((w, a), n)| ((w.neg(), a.inverse()), *n)).collect() }
    }

    /// Multiplies by `1 - t_axis`.
    pub fn mul_one_minus(&self, axis: usize) -> Self {
        self.minus(&self.shift(Weight::unit(axis)))
    }

    /// Exact quotient by `1 - t_axis`; a nonzero remainder is reported as a
    /// non-cancellation.
    pub fn div_one_minus(&self, axis: usize) -> Result<Self> {
        let mut fibres: BTreeMap<(Weight, Twist), Vec<(i32, i64)>> = BTreeMap::new();
        for ((w, a), n) in &self.terms {
            let mut base = *w;
            let k = base.0[axis];
            base.0[axis] = 0;
            fibres.entry((base, a.clone())).or_default().push((k, *n));
        }
        let mut out = Self::zero();
        for ((base, a), mut entries) in fibres {
            entries.sort();
            let mut acc = 0i64;
            let mut prev: Option<i32> = None;
            for (k, n) in entries {
                if let Some(p) = prev {
                    for j in p..k {
                        let mut w = base;
                        w.0[axis] = j;
                        out.add_term(w, a.clone(), acc);
                    }
                }
                acc += n;
                prev = Some(k);
            }
            if acc != 0 {
                return Err(Error::cancel(
                    "division by (1 - t)",
                    alloc::format!("axis {} fibre through {:?} has total {}", axis + 1, base.0, acc),
                ));
            }
        }
        Ok(out)
    }

    /// Applies an integer linear map to every exponent vector.
    pub fn map_weights(&self, m: &[[i32; 3]; 3]) -> Self {
        let mut out = Self::zero();
        for ((w, a), n) in &self.terms {
            let v = w.0;
            let img = [
                m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
                m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
                m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
            ];
            out.add_term(Weight(img), a.clone(), *n);
        }
        out
    }

    /// Forgets the twists (restriction to a torus-fixed point of the family).
    pub fn untwisted(&self) -> Self {
        let mut out = Self::zero();
        for ((w, _), n) in &self.terms {
            out.add_term(*w, Twist::trivial(), *n);
        }
        out
    }

    pub fn is_untwisted(&self) -> bool {
        self.terms.keys().all(|(_, a)| a.is_trivial())
    }

    /// Sum of coefficients at weight zero with trivial twist.
    pub fn constant_term(&self) -> i64 {
        self.coefficient(Weight::ZERO, &Twist::trivial())
    }

    /// Value at `t = 1` ignoring twists.
    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Largest number of twist slots used by any term.
    pub fn twist_span(&self) -> usize {
        self.terms.keys().map(|(_, a)| a.span()).max().unwrap_or(0)
    }

    pub fn weights(&self) -> Vec<Weight> {
        let mut v: Vec<Weight> = self.terms.keys().map(|(w, _)| *w).collect();
        v.dedup();
        v
    }
}

impl fmt::Display for LaurentPolyT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, ((w, a), n)) in self.terms.iter().enumerate() {
            let neg = *n < 0;
            if idx == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mag = n.unsigned_abs();
            let mut factors: Vec<alloc::string::String> = Vec::new();
            for i in 0..3 {
                match w.0[i] {
                    0 => {}
                    1 => factors.push(alloc::format!("t{}", i + 1)),
                    k => factors.push(alloc::format!("t{}^{}", i + 1, k)),
                }
            }
            for (p, &k) in a.exponents().iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(alloc::format!("x{}", p + 1)),
                    k => factors.push(alloc::format!("x{}^{}", p + 1, k)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", mag)?;
            } else {
                if mag != 1 {
                    write!(f, "{}*", mag)?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_by_one_minus_t() {
        let q = LaurentPolyT::t([-2, 0, 0]).plus(&LaurentPolyT::t([0, 1, 0]));
        let p = q.mul_one_minus(0);
        assert_eq!(p.div_one_minus(0).unwrap(), q);
        let bad = LaurentPolyT::t([1, 0, 0]);
        assert!(matches!(bad.div_one_minus(0), Err(Error::NonCancellation { .. })));
    }

    #[test]
    fn bar_is_involution() {
        let mut p = LaurentPolyT::zero();
        p.add_term(Weight([1, -2, 0]), Twist::single(1, 2), 3);
        p.add_term(Weight([0, 0, 0]), Twist::single(0, -1), -1);
        assert_eq!(p.bar().bar(), p);
        assert_eq!(p.bar().coefficient(Weight([-1, 2, 0]), &Twist::single(1, -2)), 3);
    }

    #[test]
    fn display_format() {
        let mut p = LaurentPolyT::t([0, -1, 0]).scale(-1);
        p.add_term(Weight([0, 0, 0]), Twist::single(0, 1), 2);
        assert_eq!(alloc::string::ToString::to_string(&p), "-t2^-1 + 2*x1");
    }
}
