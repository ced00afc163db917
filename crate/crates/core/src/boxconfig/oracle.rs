//! Brute-force census of torus-invariant submodules of `M / <1>`.
//!
//! Nothing here uses the box rules. At each weight of a bounding box the
//! fibre of `M` is spanned by the cylinders through it; a submodule picks a
//! subspace of every fibre containing the curve's line, closed under the
//! coordinate projections that `x1, x2, x3` induce. Lines in 2-dimensional
//! fibres come from a finite palette: the three coordinate lines and two
//! generic ones. Families are grouped by fibre dimensions, and their
//! dimension is the dimension of the torus-invariant tangent space
//! `Hom(Q, M/Q)`, computed by linear algebra at a representative.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::linalg;
use crate::partitions::{LegTriple, Weight};

type Vector = Vec<BigRational>;

fn v3(a: i64, b: i64, c: i64) -> Vector {
    [a, b, c].iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

/// Palette index: 0..3 coordinate lines, 3 and 4 generic lines.
const PALETTE: usize = 5;

fn palette_vector(i: usize) -> Vector {
    match i {
        0 => v3(1, 0, 0),
        1 => v3(0, 1, 0),
        2 => v3(0, 0, 1),
        3 => v3(0, 1, 2),
        _ => v3(0, 1, 3),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Choice {
    /// Only the curve.
    Zero,
    /// The whole fibre.
    All,
    /// A line from the palette in a 2-dimensional fibre.
    Line(usize),
}

struct Fibre {
    w: Weight,
    support: u8,
    has_curve: bool,
    dim: usize,
}

impl Fibre {
    fn ambient(&self) -> Vec<Vector> {
        (0..3)
            .filter(|i| self.support & (1 << i) != 0)
            .map(|i| {
                let mut v = alloc::vec![BigRational::zero(); 3];
                v[i] = BigRational::one();
                v
            })
            .collect()
    }

    fn curve(&self) -> Option<Vector> {
        if !self.has_curve {
            return None;
        }
        Some(
            (0..3)
                .map(|i| if self.support & (1 << i) != 0 { BigRational::one() } else { BigRational::zero() })
                .collect(),
        )
    }

    /// Basis of the preimage in `M_w`, curve vector first.
    fn preimage(&self, c: &Choice) -> Vec<Vector> {
        let mut out: Vec<Vector> = self.curve().into_iter().collect();
        match c {
            Choice::Zero => {}
            Choice::All => {
                for v in self.ambient() {
                    if !linalg::in_span(&out, &v) {
                        out.push(v);
                    }
                }
            }
            Choice::Line(i) => out.push(palette_vector(*i)),
        }
        out
    }

    fn q_dim(&self, c: &Choice) -> usize {
        match c {
            Choice::Zero => 0,
            Choice::All => self.dim,
            Choice::Line(_) => 1,
        }
    }
}

/// `x_k` from the fibre at `w` to the fibre at `w + e_k`: keep the
/// coordinates of cylinders through the target.
fn push(v: &Vector, target_support: u8) -> Vector {
    (0..3).map(|i| if target_support & (1 << i) != 0 { v[i].clone() } else { BigRational::zero() }).collect()
}

struct Search<'a> {
    legs: &'a LegTriple,
    fibres: Vec<Fibre>,
    index: BTreeMap<Weight, usize>,
    max_length: usize,
    choices: Vec<Choice>,
    found: Vec<Vec<Choice>>,
}

impl Search<'_> {
    fn support(&self, w: &Weight) -> u8 {
        self.legs.supports(w)
    }

    fn closed_at(&self, i: usize, c: &Choice) -> bool {
        let f = &self.fibres[i];
        let basis = f.preimage(c);
        for k in 0..3 {
            let w2 = f.w.step(k);
            let Some(&j) = self.index.get(&w2) else {
                continue;
            };
            let target = self.fibres[j].preimage(&self.choices[j]);
            let sup = self.support(&w2);
            for v in &basis {
                if !linalg::in_span(&target, &push(v, sup)) {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self, i: usize, used: usize) {
        if i == self.fibres.len() {
            self.found.push(self.choices.clone());
            return;
        }
        let dim = self.fibres[i].dim;
        let mut options = alloc::vec![Choice::Zero, Choice::All];
        if dim == 2 {
            options.extend((0..PALETTE).map(Choice::Line));
        }
        for c in options {
            let q = self.fibres[i].q_dim(&c);
            if used + q > self.max_length {
                continue;
            }
            if q > 0 && !self.closed_at(i, &c) {
                continue;
            }
            self.choices[i] = c;
            self.run(i + 1, used + q);
        }
        self.choices[i] = Choice::Zero;
    }
}

/// Dimension of `Hom(Q, M/Q)^T` at the submodule given by `choices`.
fn tangent_dimension(s: &Search<'_>, choices: &[Choice]) -> usize {
    struct Local {
        f_basis: Vec<Vector>,
        oc: usize,
        complement: Vec<Vector>,
    }
    let locals: Vec<Local> = s
        .fibres
        .iter()
        .zip(choices)
        .map(|(f, c)| {
            let f_basis = f.preimage(c);
            let oc = usize::from(f.has_curve);
            let mut complement = Vec::new();
            let mut span = f_basis.clone();
            for v in f.ambient() {
                if !linalg::in_span(&span, &v) {
                    span.push(v.clone());
                    complement.push(v);
                }
            }
            Local { f_basis, oc, complement }
        })
        .collect();
    // Unknown blocks: phi_w is (complement dim) x (Q dim).
    let mut offsets: Vec<Option<usize>> = Vec::new();
    let mut n = 0;
    for l in &locals {
        let q = l.f_basis.len() - l.oc;
        let r = l.complement.len();
        if q > 0 && r > 0 {
            offsets.push(Some(n));
            n += q * r;
        } else {
            offsets.push(None);
        }
    }
    if n == 0 {
        return 0;
    }
    let mut rows: Vec<Vector> = Vec::new();
    for (i, l) in locals.iter().enumerate() {
        let q = l.f_basis.len() - l.oc;
        if q == 0 {
            continue;
        }
        for k in 0..3 {
            let w2 = s.fibres[i].w.step(k);
            let Some(&j) = s.index.get(&w2) else {
                continue;
            };
            let t = &locals[j];
            let r2 = t.complement.len();
            if r2 == 0 {
                continue;
            }
            let sup = s.support(&w2);
            let full_basis: Vec<Vector> = t.f_basis.iter().chain(t.complement.iter()).cloned().collect();
            let q2 = t.f_basis.len() - t.oc;
            for u in 0..q {
                let image = push(&l.f_basis[l.oc + u], sup);
                let coords = linalg::coordinates(&full_basis, &image).expect("fibre basis spans");
                // phi_{w2}(x_k u) - xbar_k(phi_w(u)) = 0, one row per class coordinate.
                for row_idx in 0..r2 {
                    let mut row = alloc::vec![BigRational::zero(); n];
                    if let Some(off2) = offsets[j] {
                        for jj in 0..q2 {
                            let c = &coords[t.oc + jj];
                            if !c.is_zero() {
                                row[off2 + row_idx * q2 + jj] += c;
                            }
                        }
                    }
                    if let Some(off) = offsets[i] {
                        let r = l.complement.len();
                        for a in 0..r {
                            let lifted = push(&l.complement[a], sup);
                            let cc = linalg::coordinates(&full_basis, &lifted).expect("fibre basis spans");
                            let coeff = &cc[t.f_basis.len() + row_idx];
                            if !coeff.is_zero() {
                                row[off + a * q + u] -= coeff;
                            }
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
    }
    linalg::nullity(&rows, n)
}

/// Result of the brute-force search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleCensus {
    /// `(length, dimension)` per family, sorted.
    pub families: Vec<(u32, u32)>,
    /// Set when some family accepts one generic line but not the other,
    /// that is, a label pinned to a non-coordinate line.
    pub non_axis_forcing: bool,
}

impl SubmoduleCensus {
    pub fn component_count(&self) -> usize {
        self.families.len()
    }

    pub fn length_histogram(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for (l, _) in &self.families {
            *h.entry(*l).or_insert(0) += 1;
        }
        h
    }

    pub fn dimension_histogram(&self) -> BTreeMap<(u32, u32), usize> {
        let mut h = BTreeMap::new();
        for f in &self.families {
            *h.entry(*f).or_insert(0) += 1;
        }
        h
    }
}

/// Enumerates submodules of length at most `max_length` directly.
pub fn brute_force_submodules(legs: &LegTriple, max_length: u32) -> SubmoduleCensus {
    let b = legs.extent();
    let lo = -(max_length as i32);
    let mut fibres = Vec::new();
    for x in lo..=b {
        for y in lo..=b {
            for z in lo..=b {
                let w = Weight([x, y, z]);
                let support = legs.supports(&w);
                let n = support.count_ones() as usize;
                let has_curve = n > 0 && w.is_nonnegative();
                let dim = n - usize::from(has_curve);
                if dim > 0 {
                    fibres.push(Fibre { w, support, has_curve, dim });
                }
            }
        }
    }
    fibres.sort_by_key(|f| (core::cmp::Reverse(f.w.sum()), f.w));
    let index = fibres.iter().enumerate().map(|(i, f)| (f.w, i)).collect();
    let count = fibres.len();
    let mut search = Search {
        legs,
        fibres,
        index,
        max_length: max_length as usize,
        choices: alloc::vec![Choice::Zero; count],
        found: Vec::new(),
    };
    search.run(0, 0);

    let found = core::mem::take(&mut search.found);
    let mut groups: BTreeMap<Vec<(usize, usize)>, Vec<Vec<Choice>>> = BTreeMap::new();
    for choices in found {
        let key: Vec<(usize, usize)> =
            choices.iter().enumerate().map(|(i, c)| (i, search.fibres[i].q_dim(c))).filter(|(_, q)| *q > 0).collect();
        groups.entry(key).or_default().push(choices);
    }
    let mut families = Vec::new();
    let mut non_axis_forcing = false;
    for (key, members) in &groups {
        let set: BTreeSet<&Vec<Choice>> = members.iter().collect();
        for m in members {
            let swapped: Vec<Choice> = m
                .iter()
                .map(|c| match c {
                    Choice::Line(3) => Choice::Line(4),
                    Choice::Line(4) => Choice::Line(3),
                    other => other.clone(),
                })
                .collect();
            if !set.contains(&swapped) {
                non_axis_forcing = true;
            }
        }
        let generic = |m: &Vec<Choice>| m.iter().filter(|c| matches!(c, Choice::Line(3) | Choice::Line(4))).count();
        let rep = members.iter().max_by_key(|m| generic(m)).unwrap();
        let length: usize = key.iter().map(|(_, q)| q).sum();
        let dim = tangent_dimension(&search, rep);
        families.push((length as u32, dim as u32));
    }
    families.sort();
    SubmoduleCensus { families, non_axis_forcing }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_leg_counts() {
        let legs: LegTriple = "1;2;1".parse().unwrap();
        let c = brute_force_submodules(&legs, 3);
        let h = c.length_histogram();
        assert_eq!(h.values().copied().collect::<Vec<_>>(), alloc::vec![1, 2, 3, 6]);
        let chi: Vec<u64> =
            (0..=3).map(|l| c.families.iter().filter(|f| f.0 == l).map(|f| 1u64 << f.1).sum()).collect();
        assert_eq!(chi, alloc::vec![1, 2, 4, 7]);
        assert!(!c.non_axis_forcing);
    }

    #[test]
    fn empty_legs_single_family() {
        let c = brute_force_submodules(&LegTriple::empty(), 3);
        assert_eq!(c.families, alloc::vec![(0, 0)]);
    }
}
