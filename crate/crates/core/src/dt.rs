//! 3-d partitions with asymptotic legs and the ideal-sheaf vertex.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::laurent::{LaurentPolyT, Twist};
use crate::arith::parse::format_rational;
use crate::arith::series::macmahon_minus_q;
use crate::arith::{Coefficient, Frame, Numeric, QLaurentSeries, Symbolic, WeightEvaluator};
use crate::characters::{vertex_character, ModuleCharacter};
use crate::exec::{Executor, Sequential};
use crate::localization::{
    cy_vertex_series_with, weight_from_character, weighted_vertex_series, Mode, SeriesValues, VertexSeries,
};
use crate::partitions::{renormalized_volume, LegTriple, Weight};
use crate::{Error, Result};

/// A 3-d partition: the minimal curve of `legs` plus finitely many boxes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Partition3D {
    pub legs: LegTriple,
    pub boxes: BTreeSet<Weight>,
    pub renorm_volume: i64,
}

impl Partition3D {
    pub fn contains(&self, w: &Weight) -> bool {
        w.is_nonnegative() && (self.legs.supports(w) != 0 || self.boxes.contains(w))
    }

    /// Boxes in `[0, n]^3` minus `(n + 1) sum |mu_i|`.
    pub fn window_volume(&self, n: i32) -> i64 {
        let mut count = 0i64;
        for x in 0..=n {
            for y in 0..=n {
                for z in 0..=n {
                    if self.contains(&Weight([x, y, z])) {
                        count += 1;
                    }
                }
            }
        }
        let legs: i64 = (0..3).map(|i| self.legs.leg(i).size() as i64).sum();
        count - (n as i64 + 1) * legs
    }

    /// `F = sum over boxes of t^w` in closed form.
    pub fn character(&self) -> ModuleCharacter {
        let mut extra = LaurentPolyT::zero();
        for w in &self.boxes {
            extra.add_term(*w, Twist::trivial(), 1);
        }
        ModuleCharacter::from_boxes(&self.legs, extra)
    }
}

fn addable(legs: &LegTriple, boxes: &BTreeSet<Weight>, w: &Weight) -> bool {
    let inside = |v: &Weight| legs.supports(v) != 0 || boxes.contains(v);
    if inside(w) {
        return false;
    }
    (0..3).all(|k| w.0[k] == 0 || inside(&w.step_back(k)))
}

fn grow(legs: &LegTriple, boxes: &BTreeSet<Weight>, bound: i32) -> Vec<BTreeSet<Weight>> {
    let mut out = Vec::new();
    for x in 0..=bound {
        for y in 0..=bound {
            for z in 0..=bound {
                let w = Weight([x, y, z]);
                if addable(legs, boxes, &w) {
                    let mut next = boxes.clone();
                    next.insert(w);
                    out.push(next);
                }
            }
        }
    }
    out
}

/// All 3-d partitions with the given legs and renormalized volume at most
/// `max_volume`, sorted by volume and then by box list.
pub fn enumerate_3d_partitions(legs: &LegTriple, max_volume: i64) -> Vec<Partition3D> {
    enumerate_3d_partitions_with(legs, max_volume, &Sequential)
}

pub fn enumerate_3d_partitions_with<X: Executor>(legs: &LegTriple, max_volume: i64, exec: &X) -> Vec<Partition3D> {
    let base = renormalized_volume(legs);
    if max_volume < base {
        return Vec::new();
    }
    let extra = (max_volume - base) as i32;
    // A box with a coordinate beyond the leg extent drags a full row of
    // boxes behind it.
    let bound = legs.extent() + extra;
    let mut level = alloc::vec![BTreeSet::new()];
    let mut all = level.clone();
    for _ in 0..extra {
        let mut next: Vec<BTreeSet<Weight>> =
            exec.map(&level, |b| grow(legs, b, bound)).into_iter().flatten().collect();
        next.sort();
        next.dedup();
        all.extend(next.iter().cloned());
        level = next;
    }
    all.into_iter()
        .map(|boxes| {
            let renorm_volume = base + boxes.len() as i64;
            Partition3D { legs: legs.clone(), boxes, renorm_volume }
        })
        .collect()
}

/// `sum (-q)^{|pi|}` up to `q^order`.
pub fn dt_cy_vertex_series(legs: &LegTriple, order: i64) -> QLaurentSeries<BigInt> {
    dt_cy_vertex_series_with(legs, order, &Sequential)
}

pub fn dt_cy_vertex_series_with<X: Executor>(legs: &LegTriple, order: i64, exec: &X) -> QLaurentSeries<BigInt> {
    let base = renormalized_volume(legs);
    let mut out = QLaurentSeries::zero(base.min(order + 1), order);
    for p in enumerate_3d_partitions_with(legs, order, exec) {
        let sign = if p.renorm_volume.rem_euclid(2) == 1 { -1 } else { 1 };
        out.add_to(p.renorm_volume, &BigInt::from(sign));
    }
    out
}

/// Equivariant weight of a 3-d partition.
pub fn dt_weight<E: WeightEvaluator>(p: &Partition3D, ev: &E, frame: &Frame) -> Result<E::Value> {
    let v = vertex_character(&p.character(), 0)?;
    weight_from_character(&v.terms, 0, ev, frame, None)
}

/// `sum w(pi) q^{|pi|}` in any evaluator.
pub fn weighted_dt_series<E: WeightEvaluator, X: Executor>(
    legs: &LegTriple,
    order: i64,
    ev: &E,
    frame: &Frame,
    exec: &X,
) -> Result<QLaurentSeries<E::Output>> {
    let base = renormalized_volume(legs);
    if order < base {
        return Err(Error::Precondition(alloc::format!("order {} below the renormalized volume {}", order, base)));
    }
    let parts = enumerate_3d_partitions_with(legs, order, exec);
    let weights = exec.map(&parts, |p| dt_weight(p, ev, frame));
    let mut sums = alloc::vec![E::Value::zero(); (order - base + 1) as usize];
    for (p, w) in parts.iter().zip(weights) {
        let slot = &mut sums[(p.renorm_volume - base) as usize];
        *slot = slot.plus(&w?);
    }
    Ok(QLaurentSeries::from_coefficients(base, exec.map(&sums, |s| ev.finalize(s))))
}

/// The non-normalized equivariant DT vertex.
pub fn dt_equivariant_vertex_series(legs: &LegTriple, order: i64, mode: &Mode) -> Result<VertexSeries> {
    dt_equivariant_vertex_series_with(legs, order, mode, &Sequential)
}

pub fn dt_equivariant_vertex_series_with<X: Executor>(
    legs: &LegTriple,
    order: i64,
    mode: &Mode,
    exec: &X,
) -> Result<VertexSeries> {
    let values = match mode {
        Mode::Symbolic => SeriesValues::Symbolic(weighted_dt_series(legs, order, &Symbolic, &Frame::IDENTITY, exec)?),
        Mode::Numeric(p) => {
            SeriesValues::Numeric(weighted_dt_series(legs, order, &Numeric::new(p.clone()), &Frame::IDENTITY, exec)?)
        }
    };
    Ok(VertexSeries { values, legs: legs.clone(), mode: mode.clone(), insertions: Vec::new() })
}

/// Coefficientwise comparison of `W^P * W^DT_empty` with `W^DT`.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrespondenceReport {
    pub legs: LegTriple,
    pub order: i64,
    pub cy: bool,
    /// `(power, W^P * W^DT_empty, W^DT)` rendered as coefficient strings.
    pub rows: Vec<(i64, String, String)>,
    pub mismatches: Vec<i64>,
}

impl CorrespondenceReport {
    pub fn matches(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn compare<C: Coefficient, F: Fn(&C) -> String>(
    lhs: &QLaurentSeries<C>,
    rhs: &QLaurentSeries<C>,
    order: i64,
    render: F,
) -> (Vec<(i64, String, String)>, Vec<i64>) {
    let low = lhs.lowest().min(rhs.lowest());
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    for n in low..=order {
        let (a, b) = (lhs.coefficient(n), rhs.coefficient(n));
        match (a, b) {
            (Some(a), Some(b)) => {
                if a != b {
                    bad.push(n);
                }
                if !(a.is_zero() && b.is_zero()) {
                    rows.push((n, render(&a), render(&b)));
                }
            }
            _ => bad.push(n),
        }
    }
    (rows, bad)
}

/// Checks the stable pairs / DT correspondence up to `q^order`.
pub fn correspondence_check(legs: &LegTriple, order: i64, mode: &Mode) -> Result<CorrespondenceReport> {
    correspondence_check_with(legs, order, mode, &Sequential)
}

pub fn correspondence_check_with<X: Executor>(
    legs: &LegTriple,
    order: i64,
    mode: &Mode,
    exec: &X,
) -> Result<CorrespondenceReport> {
    let base = renormalized_volume(legs);
    let empty = LegTriple::empty();
    let deg0 = order - base.min(0);
    let (rows, mismatches) = match mode {
        Mode::Symbolic => {
            let p = weighted_vertex_series(legs, &[], order, &Symbolic, &Frame::IDENTITY, exec)?;
            let m = weighted_dt_series(&empty, deg0, &Symbolic, &Frame::IDENTITY, exec)?;
            let d = weighted_dt_series(legs, order, &Symbolic, &Frame::IDENTITY, exec)?;
            compare(&p.times(&m), &d, order, |c| c.to_string())
        }
        Mode::Numeric(pt) => {
            let ev = Numeric::new(pt.clone());
            let p = weighted_vertex_series(legs, &[], order, &ev, &Frame::IDENTITY, exec)?;
            let m = weighted_dt_series(&empty, deg0, &ev, &Frame::IDENTITY, exec)?;
            let d = weighted_dt_series(legs, order, &ev, &Frame::IDENTITY, exec)?;
            compare(&p.times(&m), &d, order, format_rational)
        }
    };
    Ok(CorrespondenceReport { legs: legs.clone(), order, cy: false, rows, mismatches })
}

/// Calabi-Yau version: `W^P_CY * M(-q)` against the signed partition count.
pub fn cy_correspondence_check(legs: &LegTriple, order: i64) -> Result<CorrespondenceReport> {
    cy_correspondence_check_with(legs, order, &Sequential)
}

pub fn cy_correspondence_check_with<X: Executor>(
    legs: &LegTriple,
    order: i64,
    exec: &X,
) -> Result<CorrespondenceReport> {
    let base = renormalized_volume(legs);
    let p = cy_vertex_series_with(legs, order, exec)?.series;
    let m = macmahon_minus_q::<BigInt>(order - base.min(0));
    let d = dt_cy_vertex_series_with(legs, order, exec);
    let (rows, mismatches) = compare(&p.times(&m), &d, order, |c| c.to_string());
    Ok(CorrespondenceReport { legs: legs.clone(), order, cy: true, rows, mismatches })
}

/// `M(-q)^{-(s1+s2)(s1+s3)(s2+s3)/(s1 s2 s3)}` up to `q^order`.
pub fn degree_zero_closed_form(order: i64) -> Result<QLaurentSeries<crate::arith::RatFuncS>> {
    use crate::arith::RatFuncS;
    let num = RatFuncS::linear([1, 1, 0]).mul(&RatFuncS::linear([1, 0, 1])).mul(&RatFuncS::linear([0, 1, 1]));
    let den = RatFuncS::var(0).mul(&RatFuncS::var(1)).mul(&RatFuncS::var(2));
    let exponent = num.div(&den)?.neg();
    macmahon_minus_q::<RatFuncS>(order).pow_field(&exponent)
}

/// Renders a rational as a coefficient string.
pub fn render_rational(r: &BigRational) -> String {
    format_rational(r)
}
