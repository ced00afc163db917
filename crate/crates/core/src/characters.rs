//! Torus characters of vertex modules and their redistribution.
//!
//! `F` is infinite along the legs, so it is carried in closed form:
//! `F = F_fin + sum_i L_i / (1 - t_i)`, with `L_i` the cross-section of
//! leg `i` and `F_fin` a finite twisted Laurent polynomial. Multiplying by
//! `D = (1-t1)(1-t2)(1-t3)` gives the finite `1 + P`. The vertex character
//! is assembled as `V * D`, a finite expression, and divided back by the
//! three factors of `D` exactly; any remainder is reported.

use alloc::vec::Vec;

use crate::arith::laurent::{LaurentPolyT, Twist};
use crate::boxconfig::{BoxKind, ComponentRecord};
use crate::partitions::{curve_character, socket_weights, LegTriple, Partition2D, Weight};
use crate::{Error, Result};

/// A finite vertex character with its legs and ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCharacter {
    pub terms: LaurentPolyT,
    pub legs: LegTriple,
    pub dimension: u32,
}

/// Edge character `E` for a given framing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeCharacter {
    pub terms: LaurentPolyT,
    pub framing: (i32, i32),
}

/// `F = finite + sum_i L_i / (1 - t_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleCharacter {
    pub legs: LegTriple,
    pub finite: LaurentPolyT,
}

/// `L_i`: sum of `t^w` over cross-section cells of leg `axis` at `w_axis = 0`.
pub fn leg_cross_section(legs: &LegTriple, axis: usize) -> LaurentPolyT {
    let mut out = LaurentPolyT::zero();
    for (a, b) in legs.leg(axis).cells() {
        let mut w = [0i32; 3];
        w[(axis + 2) % 3] = a as i32;
        w[(axis + 1) % 3] = b as i32;
        out.add_term(Weight(w), Twist::trivial(), 1);
    }
    out
}

/// Correction turning the sum of the three cylinders into their union.
fn overlap_correction(legs: &LegTriple) -> LaurentPolyT {
    let mut out = LaurentPolyT::zero();
    for (w, s) in socket_weights(legs) {
        out.add_term(w, Twist::trivial(), -(s.count_ones() as i64 - 1));
    }
    out
}

impl ModuleCharacter {
    /// The minimal curve plus a finite correction.
    pub fn from_boxes(legs: &LegTriple, boxes: LaurentPolyT) -> Self {
        ModuleCharacter { legs: legs.clone(), finite: overlap_correction(legs).plus(&boxes) }
    }

    /// `1 + P = F * (1-t1)(1-t2)(1-t3)`.
    pub fn poincare(&self) -> LaurentPolyT {
        let mut out = self.finite.mul_one_minus(0).mul_one_minus(1).mul_one_minus(2);
        for axis in 0..3 {
            let l = leg_cross_section(&self.legs, axis);
            out = out.plus(&l.mul_one_minus((axis + 1) % 3).mul_one_minus((axis + 2) % 3));
        }
        out
    }

    /// Terms of `F` with every coordinate at most `n`.
    pub fn window(&self, n: i32) -> LaurentPolyT {
        let mut out = LaurentPolyT::zero();
        for (w, a, c) in self.finite.terms() {
            if w.0.iter().all(|&x| x <= n) {
                out.add_term(*w, a.clone(), c);
            }
        }
        for axis in 0..3 {
            for (w, a, c) in leg_cross_section(&self.legs, axis).terms() {
                for k in 0..=n {
                    let mut v = *w;
                    v.0[axis] = k;
                    if v.0.iter().all(|&x| x <= n) {
                        out.add_term(v, a.clone(), c);
                    }
                }
            }
        }
        out
    }
}

/// Box contributions to `F`; lines of the `p`-th free component carry
/// `xi_p`.
fn box_terms(rec: &ComponentRecord, twisted: bool) -> LaurentPolyT {
    let free = rec.free_components();
    let mut out = LaurentPolyT::zero();
    for (w, k) in &rec.config.boxes {
        match k {
            BoxKind::IminusBox | BoxKind::IIBox => out.add_term(*w, Twist::trivial(), 1),
            BoxKind::IIIFull => out.add_term(*w, Twist::trivial(), 2),
            BoxKind::IIILine { pcid } => {
                let twist = match free.iter().position(|p| p == pcid) {
                    Some(p) if twisted => Twist::single(p, 1),
                    _ => Twist::trivial(),
                };
                out.add_term(*w, twist, 1);
            }
        }
    }
    out
}

/// `F_Q` in closed form, twisted by the tautological bundles.
pub fn module_character(rec: &ComponentRecord) -> ModuleCharacter {
    ModuleCharacter::from_boxes(&rec.config.legs, box_terms(rec, true))
}

/// `G` for a leg cross-section `l` in the two transverse variables.
fn edge_g_in(l: &LaurentPolyT, a: usize, b: usize) -> LaurentPolyT {
    let mut inv_ab = [0i32; 3];
    inv_ab[a] = -1;
    inv_ab[b] = -1;
    let inv_ab = Weight(inv_ab);
    let lbar = l.bar();
    let first = l.negate();
    let second = lbar.shift(inv_ab).negate();
    let third = l.times(&lbar).mul_one_minus(a).mul_one_minus(b).shift(inv_ab);
    first.plus(&second).plus(&third)
}

/// Vertex character `V` of a module `F`, with the three edge terms moved
/// in so that the result is finite.
pub fn vertex_character(module: &ModuleCharacter, dimension: u32) -> Result<VertexCharacter> {
    let p = module.poincare().minus(&LaurentPolyT::one());
    let mut vd = LaurentPolyT::one().minus(&p.times(&p.bar()));
    for axis in 0..3 {
        let (a, b) = ((axis + 1) % 3, (axis + 2) % 3);
        let l = leg_cross_section(&module.legs, axis);
        if l.is_zero() {
            continue;
        }
        vd = vd.plus(&edge_g_in(&l, a, b).mul_one_minus(a).mul_one_minus(b));
    }
    let v = vd.div_one_minus(0)?.div_one_minus(1)?.div_one_minus(2)?;
    Ok(VertexCharacter { terms: v, legs: module.legs.clone(), dimension })
}

/// Redistributed `V_Q` of a component.
pub fn redistributed_vertex_character(rec: &ComponentRecord) -> Result<VertexCharacter> {
    vertex_character(&module_character(rec), rec.dimension)
}

/// `G` for an edge partition in edge coordinates, cells `(a, b)` at
/// `t2^a t3^b`.
pub fn edge_g(mu: &Partition2D) -> LaurentPolyT {
    let mut l = LaurentPolyT::zero();
    for (a, b) in mu.cells() {
        l.add_term(Weight([0, a as i32, b as i32]), Twist::trivial(), 1);
    }
    edge_g_in(&l, 1, 2)
}

/// `(G, E)` for an edge with partition `mu` and framing `(m, m')`.
pub fn edge_characters(mu: &Partition2D, framing: (i32, i32)) -> Result<(LaurentPolyT, EdgeCharacter)> {
    let (m, mp) = framing;
    let g = edge_g(mu);
    let twisted = g.map_weights(&[[1, -m, -mp], [0, 1, 0], [0, 0, 1]]);
    let n = g.shift(Weight([-1, 0, 0])).minus(&twisted);
    let q = n.div_one_minus(0).map_err(|e| match e {
        Error::NonCancellation { detail, .. } => Error::cancel("edge character", detail),
        other => other,
    })?;
    let e = q.shift(Weight([1, 0, 0])).negate();
    Ok((g, EdgeCharacter { terms: e, framing }))
}

/// Constant term of `gamma_K(t1, t2, 1/(t1 t2))`, where
/// `gamma_K = chi - chi * chibar * (1-t1)(1-t2)/(t1 t2)`.
pub fn con_constant(chi: &LaurentPolyT) -> i64 {
    let chi = chi.untwisted();
    let correction = chi.times(&chi.bar()).mul_one_minus(0).mul_one_minus(1).shift(Weight([-1, -1, 0]));
    let gamma = chi.minus(&correction);
    let restricted = gamma.map_weights(&[[1, 0, -1], [0, 1, -1], [0, 0, 0]]);
    restricted.constant_term()
}

/// Character of `F` cut perpendicular to the axes at depth `n`.
pub fn cutoff_character(rec: &ComponentRecord, n: i32) -> LaurentPolyT {
    curve_character(&rec.config.legs, n).plus(&box_terms(rec, false))
}

/// `Con(F^c, 0)` at two cut-offs.
pub fn con_parity_pair(rec: &ComponentRecord) -> (i64, i64) {
    let n = rec.config.legs.extent() + 2;
    (con_constant(&cutoff_character(rec, n)), con_constant(&cutoff_character(rec, n + 1)))
}

/// Convenience for tests: terms as `(weight, coefficient)` ignoring twists.
pub fn untwisted_terms(p: &LaurentPolyT) -> Vec<([i32; 3], i64)> {
    p.untwisted().terms().map(|(w, _, c)| (w.0, c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boxconfig::enumerate_components;

    fn legs(s: &str) -> LegTriple {
        s.parse().unwrap()
    }

    #[test]
    fn chain_module_character() {
        let recs = enumerate_components(&legs("1;-;-"), 3);
        let f = module_character(&recs[3]);
        // t1^-3 / (1 - t1) times (1 - t1) is t1^-3.
        let p = f.poincare();
        let want = LaurentPolyT::t([-3, 0, 0]).mul_one_minus(1).mul_one_minus(2);
        assert_eq!(p, want);
    }

    #[test]
    fn chain_vertex_character() {
        for k in 0..=8usize {
            let recs = enumerate_components(&legs("1;-;-"), k as u32);
            let rec = recs.iter().find(|r| r.length == k as u32).unwrap();
            let v = redistributed_vertex_character(rec).unwrap().terms;
            let mut want = LaurentPolyT::zero();
            for i in 1..=k as i32 {
                want.add_term(Weight([-i, 0, 0]), Twist::trivial(), 1);
            }
            for i in 0..k as i32 {
                want.add_term(Weight([i, -1, -1]), Twist::trivial(), -1);
            }
            assert_eq!(v, want, "k = {}", k);
        }
    }

    #[test]
    fn empty_vertex() {
        let recs = enumerate_components(&LegTriple::empty(), 0);
        assert!(redistributed_vertex_character(&recs[0]).unwrap().terms.is_zero());
    }

    #[test]
    fn edge_terms() {
        let (g, e) = edge_characters(&Partition2D::empty(), (0, 0)).unwrap();
        assert!(g.is_zero() && e.terms.is_zero());
        let (g, e) = edge_characters(&Partition2D::single(), (0, 0)).unwrap();
        let want_g = LaurentPolyT::t([0, -1, 0]).plus(&LaurentPolyT::t([0, 0, -1])).negate();
        assert_eq!(g, want_g);
        assert_eq!(e.terms, want_g.negate());
        let (_, e) = edge_characters(&Partition2D::single(), (-1, -1)).unwrap();
        assert!(e.terms.is_zero());
    }

    #[test]
    fn con_examples() {
        assert_eq!(con_constant(&LaurentPolyT::one()), 0);
        assert_eq!(con_constant(&LaurentPolyT::zero()), 0);
    }

    #[test]
    fn edge_term_reversal() {
        let shapes = ["1", "2", "1,1", "2,1", "3,1", "2,2,1"];
        for mu in shapes {
            let mu: Partition2D = mu.parse().unwrap();
            for (m, mp) in [(0, -2), (-1, -1), (1, -3), (-3, 1), (1, 1), (2, 0)] {
                let (_, a) = edge_characters(&mu, (m, mp)).unwrap();
                let (_, b) = edge_characters(&mu.transpose(), (mp, m)).unwrap();
                let moved = b.terms.map_weights(&[[-1, -mp, -m], [0, 0, 1], [0, 1, 0]]);
                assert_eq!(moved, a.terms, "{:?} {:?}", mu, (m, mp));
            }
        }
    }
}
