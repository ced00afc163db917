//! Localization weights and vertex series.
//!
//! For a component `Q` with `d` free path components, the moduli space is
//! `(P¹)^d`. The redistributed vertex character `V` splits into a part of
//! trivial torus weight and a moving part. The trivial part is compared
//! with the tangent class `sum_p xi_p^{-2}`; what remains is the K-class of
//! the dual obstruction bundle, whose Euler class is the top part of its
//! total Chern class. The moving part contributes inverse Euler classes of linear
//! forms shifted by the `h_p`. Everything is integrated over `(P¹)^d`.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::chow::ChowElem;
use crate::arith::laurent::{LaurentPolyT, Twist};
use crate::arith::{Coefficient, Field, Frame, Numeric, PolyS, QLaurentSeries, RatFuncS, Symbolic, WeightEvaluator};
use crate::boxconfig::{enumerate_components_with, ComponentRecord};
use crate::characters::{module_character, redistributed_vertex_character};
use crate::exec::{Executor, Sequential};
use crate::partitions::{renormalized_volume, LegTriple, Weight};
use crate::{Error, Result};

/// Evaluation mode of an equivariant computation.
#[derive(Clone, Debug, PartialEq)]
pub enum Mode {
    Symbolic,
    Numeric([BigRational; 3]),
}

/// Coefficients of an equivariant series in either mode.
#[derive(Clone, Debug, PartialEq)]
pub enum SeriesValues {
    Symbolic(QLaurentSeries<RatFuncS>),
    Numeric(QLaurentSeries<BigRational>),
}

impl SeriesValues {
    pub fn lowest(&self) -> i64 {
        match self {
            SeriesValues::Symbolic(s) => s.lowest(),
            SeriesValues::Numeric(s) => s.lowest(),
        }
    }

    pub fn truncation(&self) -> i64 {
        match self {
            SeriesValues::Symbolic(s) => s.truncation(),
            SeriesValues::Numeric(s) => s.truncation(),
        }
    }

    /// Nonzero terms with coefficients rendered as strings.
    pub fn rendered_terms(&self) -> Vec<(i64, alloc::string::String)> {
        match self {
            SeriesValues::Symbolic(s) => s.terms().map(|(n, c)| (n, c.to_string())).collect(),
            SeriesValues::Numeric(s) => s.terms().map(|(n, c)| (n, crate::arith::parse::format_rational(c))).collect(),
        }
    }

    /// Evaluates a symbolic series at a point; numeric series are returned
    /// unchanged.
    pub fn evaluate(&self, point: &[BigRational; 3]) -> Result<QLaurentSeries<BigRational>> {
        match self {
            SeriesValues::Symbolic(s) => s.try_map(|c| c.eval(point)),
            SeriesValues::Numeric(s) => Ok(s.clone()),
        }
    }
}

/// An equivariant vertex series with its metadata.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexSeries {
    pub values: SeriesValues,
    pub legs: LegTriple,
    pub mode: Mode,
    pub insertions: Vec<i32>,
}

/// A Calabi-Yau vertex series; `conjectural` marks outputs whose sign rule
/// is only conjectured (three nonempty legs).
#[derive(Clone, Debug, PartialEq)]
pub struct CySeries {
    pub series: QLaurentSeries<BigInt>,
    pub legs: LegTriple,
    pub conjectural: bool,
}

/// Result of restricting the equivariant vertex to `s1 + s2 + s3 = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CySpecializationReport {
    pub legs: LegTriple,
    pub order: i64,
    /// `(power, specialized sum, box count)`; `None` if the sum has a pole
    /// on the Calabi-Yau plane.
    pub rows: Vec<(i64, Option<BigRational>, BigInt)>,
    pub mismatches: Vec<i64>,
    pub conjectural: bool,
}

impl CySpecializationReport {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `sum_p xi_p^{-2}` at trivial weight.
pub fn tangent_class(d: u32) -> LaurentPolyT {
    let mut out = LaurentPolyT::zero();
    for p in 0..d as usize {
        out.add_term(Weight::ZERO, Twist::single(p, -2), 1);
    }
    out
}

/// `T_Q - V^0` as `(twist, multiplicity)` with its rank.
fn obstruction_class(v: &LaurentPolyT, d: u32) -> (Vec<(Twist, i64)>, i64) {
    let mut residual: BTreeMap<Twist, i64> = BTreeMap::new();
    for (_, a, n) in tangent_class(d).terms() {
        *residual.entry(a.clone()).or_insert(0) += n;
    }
    for (w, a, n) in v.terms() {
        if *w == Weight::ZERO {
            *residual.entry(a.clone()).or_insert(0) -= n;
        }
    }
    let rank = residual.values().sum();
    (residual.into_iter().filter(|(_, n)| *n != 0).collect(), rank)
}

/// Top Chern class of the obstruction class, read off its total Chern
/// class; the class must be effective, so nothing may survive above its
/// rank.
fn obstruction_euler<C: Field>(residual: &[(Twist, i64)], rank: i64, d: u32) -> Result<ChowElem<C>> {
    let describe = || {
        let mut mono = LaurentPolyT::zero();
        for (a, n) in residual {
            mono.add_term(Weight::ZERO, a.clone(), *n);
        }
        mono.to_string()
    };
    if rank < 0 {
        return Err(Error::NegativeObstruction { monomial: describe() });
    }
    let mut total = ChowElem::one(d);
    for (a, n) in residual {
        let c = ChowElem::affine(d, C::one(), &h_coefficients(a, d));
        total = total.times(&c.pow_i32(*n as i32)?);
    }
    if total.top_degree().is_some_and(|k| k as i64 > rank) {
        return Err(Error::NegativeObstruction { monomial: describe() });
    }
    Ok(total.homogeneous(rank as u32))
}

fn h_coefficients(a: &Twist, d: u32) -> Vec<i64> {
    (0..d as usize).map(|p| -(a.exponent(p) as i64)).collect()
}

/// `ch_l` of a twisted character as an element of the Chow ring.
fn chern_character<E: WeightEvaluator>(
    chi: &LaurentPolyT,
    l: u32,
    d: u32,
    ev: &E,
    frame: &Frame,
) -> Result<ChowElem<E::Value>> {
    let mut fact = BigInt::from(1);
    for k in 2..=l {
        fact *= k;
    }
    let inv_fact = E::Value::from_rational(&BigRational::new(1.into(), fact));
    let mut acc = ChowElem::zero(d);
    for (w, a, n) in chi.terms() {
        let base = ChowElem::affine(d, ev.linear(frame.form(w))?, &h_coefficients(a, d));
        acc = acc.plus(&base.pow_u32(l).scale(&E::Value::from_i64(n)));
    }
    Ok(acc.scale(&inv_fact))
}

/// `prod (w.s)^{n}` over the terms `n t^w` of an untwisted character.
pub fn euler_product<E: WeightEvaluator>(chi: &LaurentPolyT, ev: &E, frame: &Frame) -> Result<E::Value> {
    let mut num = E::Value::one();
    let mut den = E::Value::one();
    for (w, _, n) in chi.terms() {
        if *w == Weight::ZERO {
            return Err(Error::Precondition(alloc::format!("trivial weight in an Euler class: {}", chi)));
        }
        let p = ev.linear(frame.form(w))?.pow_u32(n.unsigned_abs() as u32);
        if n > 0 {
            num = num.times(&p);
        } else {
            den = den.times(&p);
        }
    }
    Ok(num.times(&den.try_inverse().ok_or(Error::DivisionByZero)?))
}

/// `∫ e(T_Q) e(-V) * extra` over `(P¹)^d`.
pub fn weight_from_character<E: WeightEvaluator>(
    v: &LaurentPolyT,
    d: u32,
    ev: &E,
    frame: &Frame,
    extra: Option<&ChowElem<E::Value>>,
) -> Result<E::Value> {
    let (residual, rank) = obstruction_class(v, d);
    let euler = obstruction_euler::<E::Value>(&residual, rank, d)?;
    if euler.is_zero() {
        return Ok(E::Value::zero());
    }
    if d == 0 {
        let mut num = E::Value::one();
        let mut den = E::Value::one();
        for (w, _, n) in v.terms() {
            if *w == Weight::ZERO {
                continue;
            }
            let x = ev.linear(frame.form(w))?;
            let p = x.pow_u32(n.unsigned_abs() as u32);
            if n > 0 {
                den = den.times(&p);
            } else {
                num = num.times(&p);
            }
        }
        if let Some(e) = extra {
            num = num.times(&e.h_free());
        }
        let inv = den.try_inverse().ok_or(Error::DivisionByZero)?;
        return Ok(num.times(&inv));
    }
    let mut num = euler;
    let mut den = ChowElem::one(d);
    for (w, a, n) in v.terms() {
        if *w == Weight::ZERO {
            continue;
        }
        let x = ChowElem::affine(d, ev.linear(frame.form(w))?, &h_coefficients(a, d));
        let p = x.pow_u32(n.unsigned_abs() as u32);
        if n > 0 {
            den = den.times(&p);
        } else {
            num = num.times(&p);
        }
    }
    if let Some(e) = extra {
        num = num.times(e);
    }
    Ok(num.times(&den.invert()?).integrate())
}

/// `w(Q)` for a component in local coordinates given by `frame`.
pub fn euler_weight<E: WeightEvaluator>(rec: &ComponentRecord, ev: &E, frame: &Frame) -> Result<E::Value> {
    let v = redistributed_vertex_character(rec)?;
    weight_from_character(&v.terms, rec.dimension, ev, frame, None)
}

/// `w(Q)` with descendent insertions `tau_{i}`, `i >= -2`.
pub fn descendent_weight<E: WeightEvaluator>(
    rec: &ComponentRecord,
    taus: &[i32],
    ev: &E,
    frame: &Frame,
) -> Result<E::Value> {
    if taus.is_empty() {
        return euler_weight(rec, ev, frame);
    }
    let d = rec.dimension;
    let v = redistributed_vertex_character(rec)?;
    let poincare = module_character(rec).poincare();
    let mut extra = ChowElem::one(d);
    for &i in taus {
        if i < -2 {
            return Err(Error::Precondition(alloc::format!("descendent index {} below -2", i)));
        }
        extra = extra.times(&chern_character(&poincare, (i + 2) as u32, d, ev, frame)?);
    }
    weight_from_character(&v.terms, d, ev, frame, Some(&extra))
}

/// Components contributing to orders up to `order`.
pub fn components_to_order<X: Executor>(legs: &LegTriple, order: i64, exec: &X) -> Result<Vec<ComponentRecord>> {
    let vol = renormalized_volume(legs);
    if order < vol {
        return Err(Error::Precondition(alloc::format!("order {} below the renormalized volume {}", order, vol)));
    }
    Ok(enumerate_components_with(legs, (order - vol) as u32, exec))
}

/// `sum_Q w_tau(Q) q^{l(Q) + |mu|}` up to `q^order` in any evaluator.
pub fn weighted_vertex_series<E: WeightEvaluator, X: Executor>(
    legs: &LegTriple,
    taus: &[i32],
    order: i64,
    ev: &E,
    frame: &Frame,
    exec: &X,
) -> Result<QLaurentSeries<E::Output>> {
    let vol = renormalized_volume(legs);
    let recs = components_to_order(legs, order, exec)?;
    let weights = exec.map(&recs, |rec| descendent_weight(rec, taus, ev, frame));
    let mut sums: Vec<E::Value> = alloc::vec![E::Value::zero(); (order - vol + 1) as usize];
    for (rec, w) in recs.iter().zip(weights) {
        let slot = &mut sums[rec.length as usize];
        *slot = slot.plus(&w?);
    }
    let coeffs = exec.map(&sums, |s| ev.finalize(s));
    Ok(QLaurentSeries::from_coefficients(vol, coeffs))
}

fn series_in_mode<X: Executor>(
    legs: &LegTriple,
    taus: &[i32],
    order: i64,
    mode: &Mode,
    exec: &X,
) -> Result<VertexSeries> {
    let values = match mode {
        Mode::Symbolic => {
            SeriesValues::Symbolic(weighted_vertex_series(legs, taus, order, &Symbolic, &Frame::IDENTITY, exec)?)
        }
        Mode::Numeric(p) => SeriesValues::Numeric(weighted_vertex_series(
            legs,
            taus,
            order,
            &Numeric::new(p.clone()),
            &Frame::IDENTITY,
            exec,
        )?),
    };
    Ok(VertexSeries { values, legs: legs.clone(), mode: mode.clone(), insertions: taus.to_vec() })
}

/// The equivariant stable pairs vertex up to `q^order`.
pub fn pt_vertex_series(legs: &LegTriple, order: i64, mode: &Mode) -> Result<VertexSeries> {
    pt_vertex_series_with(legs, order, mode, &Sequential)
}

pub fn pt_vertex_series_with<X: Executor>(legs: &LegTriple, order: i64, mode: &Mode, exec: &X) -> Result<VertexSeries> {
    series_in_mode(legs, &[], order, mode, exec)
}

/// The descendent vertex `W(tau_{i1} ... tau_{ik})` up to `q^order`.
pub fn descendent_vertex_series(legs: &LegTriple, taus: &[i32], order: i64, mode: &Mode) -> Result<VertexSeries> {
    descendent_vertex_series_with(legs, taus, order, mode, &Sequential)
}

pub fn descendent_vertex_series_with<X: Executor>(
    legs: &LegTriple,
    taus: &[i32],
    order: i64,
    mode: &Mode,
    exec: &X,
) -> Result<VertexSeries> {
    series_in_mode(legs, taus, order, mode, exec)
}

/// Signed Euler characteristic count `sum chi(Q) (-q)^{l + |mu|}`.
pub fn cy_vertex_series(legs: &LegTriple, order: i64) -> Result<CySeries> {
    cy_vertex_series_with(legs, order, &Sequential)
}

pub fn cy_vertex_series_with<X: Executor>(legs: &LegTriple, order: i64, exec: &X) -> Result<CySeries> {
    let vol = renormalized_volume(legs);
    let recs = components_to_order(legs, order, exec)?;
    let mut series = QLaurentSeries::<BigInt>::zero(vol, order);
    for rec in &recs {
        let n = rec.length as i64 + vol;
        let sign = if n.rem_euclid(2) == 1 { -1 } else { 1 };
        series.add_to(n, &BigInt::from(sign * rec.euler_char as i64));
    }
    Ok(CySeries { series, legs: legs.clone(), conjectural: legs.nonempty_count() == 3 })
}

/// `s3 := -s1 - s2`.
pub fn cy_substitution() -> [PolyS; 3] {
    [PolyS::var(0), PolyS::var(1), PolyS::var(0).plus(&PolyS::var(1)).negate()]
}

/// Restricts the symbolic vertex to the Calabi-Yau plane order by order
/// and compares with the signed box count.
pub fn cy_specialization_check(
    legs: &LegTriple,
    order: i64,
    assume_conjectures: bool,
) -> Result<CySpecializationReport> {
    cy_specialization_check_with(legs, order, assume_conjectures, &Sequential)
}

pub fn cy_specialization_check_with<X: Executor>(
    legs: &LegTriple,
    order: i64,
    assume_conjectures: bool,
    exec: &X,
) -> Result<CySpecializationReport> {
    let conjectural = legs.nonempty_count() == 3;
    if conjectural && !assume_conjectures {
        return Err(Error::Precondition(
            "three nonempty legs need --assume-conjectures for the Calabi-Yau check".into(),
        ));
    }
    let sym = weighted_vertex_series(legs, &[], order, &Symbolic, &Frame::IDENTITY, exec)?;
    let cy = cy_vertex_series_with(legs, order, exec)?;
    let subs = cy_substitution();
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for (n, c) in sym.dense() {
        let expected = cy.series.coefficient(n).unwrap_or_default();
        let got = c.substitute(&subs).ok().and_then(|r| r.as_constant());
        if got.as_ref() != Some(&BigRational::from_integer(expected.clone())) {
            mismatches.push(n);
        }
        rows.push((n, got, expected));
    }
    Ok(CySpecializationReport { legs: legs.clone(), order, rows, mismatches, conjectural })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
    use crate::boxconfig::enumerate_components;

    fn legs(s: &str) -> LegTriple {
        s.parse().unwrap()
    }

    fn binomial(k: u32) -> RatFuncS {
        let x = RatFuncS::linear([0, 1, 1]).div(&RatFuncS::var(0)).unwrap();
        let mut acc = RatFuncS::one();
        for i in 0..k {
            let term = x.sub(&RatFuncS::from_rational(rat(i as i64)));
            acc = acc.mul(&term).mul(&RatFuncS::from_rational(ratio(1, i as i64 + 1)));
        }
        acc
    }

    #[test]
    fn chain_weights_are_binomials() {
        let recs = enumerate_components(&legs("1;-;-"), 5);
        for rec in &recs {
            let w = euler_weight(rec, &Symbolic, &Frame::IDENTITY).unwrap().to_ratfunc();
            assert_eq!(w, binomial(rec.length));
        }
    }

    #[test]
    fn empty_vertex_is_one() {
        let s = pt_vertex_series(&LegTriple::empty(), 3, &Mode::Symbolic).unwrap();
        match s.values {
            SeriesValues::Symbolic(q) => {
                assert_eq!(q.coefficient(0), Some(RatFuncS::one()));
                assert_eq!(q.terms().count(), 1);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn three_leg_cy_count() {
        let s = cy_vertex_series(&legs("1;2;1"), 0).unwrap();
        let got: Vec<i64> = s.series.dense().map(|(_, c)| i64::try_from(c).unwrap()).collect();
        assert_eq!(got, alloc::vec![-1, 2, -4, 7]);
        assert_eq!(s.series.lowest(), -3);
        assert!(s.conjectural);
    }

    #[test]
    fn one_leg_specializes() {
        let r = cy_specialization_check(&legs("1;-;-"), 4, false).unwrap();
        assert!(r.matches(), "{:?}", r);
    }

    #[test]
    fn three_leg_specializes() {
        for order in [-3, -2, -1, 0] {
            let r = cy_specialization_check(&legs("1;2;1"), order, true).unwrap();
            assert!(r.matches(), "{:?}", r);
        }
    }

    #[test]
    fn length_two_three_leg_components() {
        let recs = enumerate_components(&legs("1;2;1"), 2);
        for rec in recs.iter().filter(|r| r.dimension > 0) {
            euler_weight(rec, &Symbolic, &Frame::IDENTITY).unwrap();
        }
    }

    /// `[z^n] (e^{-k s1 z} - e^{(s2 - k s1) z} - e^{(s3 - k s1) z} + e^{(s2 + s3 - k s1) z})`.
    fn descendent_oracle(n: u32, k: i64) -> RatFuncS {
        let forms = [([-k, 0, 0], 1), ([-k, 1, 0], -1), ([-k, 0, 1], -1), ([-k, 1, 1], 1)];
        let mut acc = RatFuncS::zero();
        for (f, sign) in forms {
            let p = RatFuncS::linear(f).pow(n as i32).unwrap();
            acc = if sign > 0 { acc.add(&p) } else { acc.sub(&p) };
        }
        let mut fact = 1i64;
        for j in 1..=n as i64 {
            fact *= j;
        }
        acc.mul(&RatFuncS::from_rational(ratio(1, fact))).mul(&binomial(k as u32))
    }

    #[test]
    fn one_leg_descendents() {
        for i in -2..=2 {
            let s = descendent_vertex_series(&legs("1;-;-"), &[i], 4, &Mode::Symbolic).unwrap();
            let SeriesValues::Symbolic(q) = s.values else { unreachable!() };
            for k in 0..=4 {
                let want = descendent_oracle((i + 2) as u32, k);
                assert_eq!(q.coefficient(k).unwrap(), want, "tau_{} q^{}", i, k);
            }
        }
    }
}
