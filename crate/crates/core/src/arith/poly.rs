//! Sparse polynomials in `s1, s2, s3`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::coeff::{Coefficient, ExactDiv};

/// Exponents of `(s1, s2, s3)`. The derived order is lexicographic with
/// `s1` most significant.
pub type Exponent = [u32; 3];

#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct Poly<C> {
    terms: BTreeMap<Exponent, C>,
}

/// Polynomials with rational coefficients.
pub type PolyS = Poly<BigRational>;
/// Polynomials with integer coefficients; the gcd engine works here.
pub type ZPoly = Poly<BigInt>;

fn add_exp(a: &Exponent, b: &Exponent) -> Exponent {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub_exp(a: &Exponent, b: &Exponent) -> Option<Exponent> {
    Some([a[0].checked_sub(b[0])?, a[1].checked_sub(b[1])?, a[2].checked_sub(b[2])?])
}

impl<C: Coefficient> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial([0, 0, 0], c)
    }

    pub fn monomial(e: Exponent, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { terms }
    }

    /// The variable `s_{i+1}`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(e, C::one())
    }

    /// `a*s1 + b*s2 + c*s3`.
    pub fn linear(form: [i64; 3]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in form.iter().enumerate() {
            let mut e = [0; 3];
            e[i] = 1;
            p.add_term(e, C::from_i64(c));
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, C)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exponent, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &C)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Exponent) -> C {
        self.terms.get(e).cloned().unwrap_or_else(C::zero)
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

    /// The value if the polynomial is constant (zero included).
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }

    /// Lexicographically greatest term.
    pub fn leading(&self) -> Option<(&Exponent, &C)> {
        self.terms.iter().next_back()
    }

    /// Lexicographically least term.
    pub fn trailing(&self) -> Option<(&Exponent, &C)> {
        self.terms.iter().next()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e[0] + e[1] + e[2]).max().unwrap_or(0)
    }

    pub fn plus(&self, other: &Self) -> Self {
        let (mut big, small) = if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (e, c) in &small.terms {
            big.add_term(*e, c.clone());
        }
        big
    }

    pub fn negate(&self) -> Self {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, c.negate())).collect() }
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.negate());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(*e, v.times(c));
        }
        out
    }

    pub fn mul_monomial(&self, m: &Exponent, c: &C) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(add_exp(e, m), v.times(c));
        }
        out
    }

    pub fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut acc: BTreeMap<Exponent, C> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = add_exp(ea, eb);
                let prod = ca.times(cb);
                match acc.get_mut(&e) {
                    Some(v) => *v = v.plus(&prod),
                    None => {
                        acc.insert(e, prod);
                    }
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Poly { terms: acc }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.times(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.times(&base);
            }
        }
        acc
    }

    /// Evaluates at a point of the coefficient ring.
    pub fn eval(&self, point: &[C; 3]) -> C {
        let mut powers: [Vec<C>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for (i, pw) in powers.iter_mut().enumerate() {
            let d = self.degree_in(i) as usize;
            pw.push(C::one());
            for k in 1..=d {
                let next = pw[k - 1].times(&point[i]);
                pw.push(next);
            }
        }
        let mut acc = C::zero();
        for (e, c) in &self.terms {
            let t =
                c.times(&powers[0][e[0] as usize]).times(&powers[1][e[1] as usize]).times(&powers[2][e[2] as usize]);
            acc = acc.plus(&t);
        }
        acc
    }

    /// Substitutes `s_i := subs[i]`.
    pub fn compose(&self, subs: &[Poly<C>; 3]) -> Self {
        let mut powers: [Vec<Poly<C>>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for (i, pw) in powers.iter_mut().enumerate() {
            let d = self.degree_in(i) as usize;
            pw.push(Self::one());
            for k in 1..=d {
                let next = pw[k - 1].times(&subs[i]);
                pw.push(next);
            }
        }
        let mut acc = Self::zero();
        for (e, c) in &self.terms {
            let t = powers[0][e[0] as usize].times(&powers[1][e[1] as usize]).times(&powers[2][e[2] as usize]).scale(c);
            acc = acc.plus(&t);
        }
        acc
    }

    pub fn map_coeffs<D: Coefficient, F: Fn(&C) -> D>(&self, f: F) -> Poly<D> {
        let mut out = Poly::<D>::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, f(c));
        }
        out
    }

    /// Splits by powers of `s_{var+1}`; the keys are the exponents and the
    /// values have that variable removed.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<u32, Self> {
        let mut out: BTreeMap<u32, Self> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut r = *e;
            r[var] = 0;
            out.entry(e[var]).or_default().terms.insert(r, c.clone());
        }
        out
    }
}

impl<C: Coefficient + ExactDiv> Poly<C> {
    /// Exact quotient, or `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        let (le, lc) = other.leading()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        if other.len() == 1 {
            let mut out = Self::zero();
            for (e, c) in &self.terms {
                out.terms.insert(sub_exp(e, le)?, c.div_exact(lc)?);
            }
            return Some(out);
        }
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((re, rc)) = rem.leading() {
            let m = sub_exp(re, le)?;
            let q = rc.div_exact(lc)?;
            rem = rem.minus(&other.mul_monomial(&m, &q));
            quot.add_term(m, q);
        }
        Some(quot)
    }
}

impl ZPoly {
    /// Gcd of the integer coefficients, non-negative.
    pub fn content(&self) -> BigInt {
        let mut g = <BigInt as Zero>::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if One::is_one(&g) {
                break;
            }
        }
        g
    }

    /// Divides by the content and makes the leading coefficient positive;
    /// returns the signed factor removed.
    pub fn primitive_part(&self) -> (BigInt, ZPoly) {
        if self.is_zero() {
            return (<BigInt as Zero>::zero(), self.clone());
        }
        let mut c = self.content();
        if self.leading().map(|(_, v)| v.is_negative()).unwrap_or(false) {
            c = -c;
        }
        if One::is_one(&c) {
            return (c, self.clone());
        }
        let terms = self.terms.iter().map(|(e, v)| (*e, v / &c)).collect();
        (c, Poly { terms })
    }

    pub fn to_rational(&self) -> PolyS {
        Poly { terms: self.terms.iter().map(|(e, c)| (*e, BigRational::from_integer(c.clone()))).collect() }
    }
}

impl PolyS {
    /// Writes `self = scale * p` with `p` integral, primitive and with
    /// positive leading coefficient.
    pub fn to_primitive_integer(&self) -> (BigRational, ZPoly) {
        if self.is_zero() {
            return (<BigRational as Zero>::zero(), ZPoly::zero());
        }
        let mut den = <BigInt as One>::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let ints: ZPoly =
            Poly { terms: self.terms.iter().map(|(e, c)| (*e, c.numer() * (&den / c.denom()))).collect() };
        let (c, p) = ints.primitive_part();
        (BigRational::new(c, den), p)
    }

    /// Evaluates at a rational point.
    pub fn eval_rational(&self, point: &[BigRational; 3]) -> BigRational {
        self.eval(point)
    }
}
