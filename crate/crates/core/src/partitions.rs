//! Plane partitions, leg triples, cylinders and weight classes.
//!
//! The leg along axis `i` is the cylinder of weights whose cross-section
//! `(w_{i-1}, w_{i+1})` (indices mod 3) is a cell of `mu^i`. So the leg on
//! `x1` reads cells as `(w3, w2)`, on `x2` as `(w1, w3)`, on `x3` as
//! `(w2, w1)`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arith::laurent::{LaurentPolyT, Twist};
use crate::{Error, Result};

/// Exponent vector of `t1, t2, t3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub [i32; 3]);

impl Weight {
    pub const ZERO: Weight = Weight([0, 0, 0]);

    pub fn new(a: i32, b: i32, c: i32) -> Self {
        Weight([a, b, c])
    }

    pub fn unit(axis: usize) -> Self {
        let mut w = [0; 3];
        w[axis] = 1;
        Weight(w)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        Weight([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        Weight([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }

    pub fn neg(&self) -> Weight {
        Weight([-self.0[0], -self.0[1], -self.0[2]])
    }

    /// `w + e_axis`.
    pub fn step(&self, axis: usize) -> Weight {
        let mut w = *self;
        w.0[axis] += 1;
        w
    }

    pub fn step_back(&self, axis: usize) -> Weight {
        let mut w = *self;
        w.0[axis] -= 1;
        w
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Cyclic relabelling: coordinate `i` moves to `i + 1`.
    pub fn rotate(&self) -> Weight {
        Weight([self.0[2], self.0[0], self.0[1]])
    }

    pub fn sum(&self) -> i32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// Cross-section of the leg along `axis` for weight `w`.
pub fn cross_section(axis: usize, w: &Weight) -> (i32, i32) {
    (w.0[(axis + 2) % 3], w.0[(axis + 1) % 3])
}

/// Weakly decreasing positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition2D {
    parts: Vec<u32>,
}

impl Partition2D {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Parse("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse("partition parts must be weakly decreasing".into()));
        }
        Ok(Partition2D { parts })
    }

    pub fn empty() -> Self {
        Partition2D { parts: Vec::new() }
    }

    /// The one-box partition.
    pub fn single() -> Self {
        Partition2D { parts: alloc::vec![1] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, a: i32, b: i32) -> bool {
        a >= 0 && b >= 0 && (a as usize) < self.parts.len() && (b as u32) < self.parts[a as usize]
    }

    /// Cells `(a, b)` with `a` the row index.
    pub fn cells(&self) -> BTreeSet<(u32, u32)> {
        let mut out = BTreeSet::new();
        for (a, &p) in self.parts.iter().enumerate() {
            for b in 0..p {
                out.insert((a as u32, b));
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (0..width).map(|b| self.parts.iter().filter(|&&p| p > b).count() as u32).collect();
        Partition2D { parts }
    }

    /// Row or column extent, whichever is larger.
    pub fn extent(&self) -> u32 {
        (self.parts.len() as u32).max(self.parts.first().copied().unwrap_or(0))
    }

    /// All partitions of `n`, largest first part first.
    pub fn all_of_size(n: u32) -> Vec<Partition2D> {
        fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition2D>) {
            if rem == 0 {
                out.push(Partition2D { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("-");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", p)?;
        }
        Ok(())
    }
}

impl FromStr for Partition2D {
    type Err = Error;

    /// `"-"` or `""` is empty, otherwise comma-separated parts.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "-" {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(alloc::format!("bad part {:?}", t))))
            .collect::<Result<Vec<u32>>>()?;
        Self::new(parts)
    }
}

/// Outgoing partitions along the three axes.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LegTriple {
    pub legs: [Partition2D; 3],
}

impl LegTriple {
    pub fn new(mu1: Partition2D, mu2: Partition2D, mu3: Partition2D) -> Self {
        LegTriple { legs: [mu1, mu2, mu3] }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn leg(&self, axis: usize) -> &Partition2D {
        &self.legs[axis]
    }

    pub fn nonempty_count(&self) -> usize {
        self.legs.iter().filter(|l| !l.is_empty()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.nonempty_count() == 0
    }

    /// Largest extent of any leg.
    pub fn extent(&self) -> i32 {
        self.legs.iter().map(|l| l.extent()).max().unwrap_or(0) as i32
    }

    /// Legs moved one axis forward, matching [`Weight::rotate`].
    pub fn rotate(&self) -> Self {
        LegTriple { legs: [self.legs[2].clone(), self.legs[0].clone(), self.legs[1].clone()] }
    }

    pub fn contains(&self, axis: usize, w: &Weight) -> bool {
        let (a, b) = cross_section(axis, w);
        self.legs[axis].contains(a, b)
    }

    /// Bitmask of the cylinders containing `w`.
    pub fn supports(&self, w: &Weight) -> u8 {
        (0..3).filter(|&i| self.contains(i, w)).fold(0u8, |m, i| m | (1 << i))
    }
}

impl fmt::Display for LegTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{}", self.legs[0], self.legs[1], self.legs[2])
    }
}

impl FromStr for LegTriple {
    type Err = Error;

    /// `"1;2;1"`, `"2,1;-;-"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(alloc::format!("expected three legs separated by ';', got {:?}", s)));
        }
        Ok(LegTriple::new(parts[0].parse()?, parts[1].parse()?, parts[2].parse()?))
    }
}

/// `true` iff `w` lies in the leg cylinder along `axis` (0-based).
pub fn cylinder_contains(legs: &LegTriple, axis: usize, w: &Weight) -> bool {
    legs.contains(axis, w)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WeightTag {
    Iplus,
    II,
    III,
    Iminus,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WeightClass {
    pub tag: WeightTag,
    /// Bit `i` set iff the cylinder along axis `i` contains the weight.
    pub supports: u8,
}

impl WeightClass {
    pub fn support_count(&self) -> u32 {
        self.supports.count_ones()
    }

    pub fn supports_axis(&self, axis: usize) -> bool {
        self.supports & (1 << axis) != 0
    }

    /// The unique cylinder of an `Iminus` or `Iplus` weight.
    pub fn single_axis(&self) -> Option<usize> {
        if self.supports.count_ones() == 1 {
            Some(self.supports.trailing_zeros() as usize)
        } else {
            None
        }
    }

    /// The cylinder missing from a type II weight.
    pub fn missing_axis(&self) -> Option<usize> {
        if self.supports.count_ones() == 2 {
            Some((!self.supports & 0b111).trailing_zeros() as usize)
        } else {
            None
        }
    }
}

pub fn classify_weight(legs: &LegTriple, w: &Weight) -> WeightClass {
    let supports = legs.supports(w);
    let tag = if supports == 0 {
        WeightTag::Outside
    } else if !w.is_nonnegative() {
        WeightTag::Iminus
    } else {
        match supports.count_ones() {
            1 => WeightTag::Iplus,
            2 => WeightTag::II,
            _ => WeightTag::III,
        }
    };
    WeightClass { tag, supports }
}

/// Nonnegative weights lying in at least two cylinders.
pub fn socket_weights(legs: &LegTriple) -> Vec<(Weight, u8)> {
    let b = legs.extent();
    let mut out = Vec::new();
    for x in 0..b {
        for y in 0..b {
            for z in 0..b {
                let w = Weight([x, y, z]);
                let s = legs.supports(&w);
                if s.count_ones() >= 2 {
                    out.push((w, s));
                }
            }
        }
    }
    out
}

fn window_count<F: Fn(&Weight) -> bool>(n: i32, pred: F) -> i64 {
    let mut c = 0;
    for x in 0..=n {
        for y in 0..=n {
            for z in 0..=n {
                if pred(&Weight([x, y, z])) {
                    c += 1;
                }
            }
        }
    }
    c
}

fn renormalized_volume_at(legs: &LegTriple, n: i32) -> i64 {
    let single: i64 = (0..3).map(|i| window_count(n, |w| legs.contains(i, w))).sum();
    let pairs: i64 = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| window_count(n, |w| legs.contains(i, w) && legs.contains(j, w)))
        .sum();
    let triple = window_count(n, |w| legs.supports(w) == 0b111);
    let union = single - pairs + triple;
    let legs_total: i64 = legs.legs.iter().map(|l| l.size() as i64).sum();
    union - (n as i64 + 1) * legs_total
}

/// Renormalized volume of the minimal curve: window count of the union of
/// the cylinders minus `(N+1) * sum |mu^i|`.
pub fn renormalized_volume(legs: &LegTriple) -> i64 {
    let n = legs.extent().max(1);
    let a = renormalized_volume_at(legs, n);
    let b = renormalized_volume_at(legs, n + 1);
    assert_eq!(a, b, "renormalized volume depends on the window");
    a
}

/// Character of the minimal curve restricted to `[0, n]^3`.
pub fn curve_character(legs: &LegTriple, n: i32) -> LaurentPolyT {
    let mut out = LaurentPolyT::zero();
    for x in 0..=n {
        for y in 0..=n {
            for z in 0..=n {
                let w = Weight([x, y, z]);
                if legs.supports(&w) != 0 {
                    out.add_term(w, Twist::trivial(), 1);
                }
            }
        }
    }
    out
}

/// Parses the leg grammar, for callers that prefer a function.
pub fn parse_legs(s: &str) -> Result<LegTriple> {
    s.parse()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn legs(s: &str) -> LegTriple {
        s.parse().unwrap()
    }

    #[test]
    fn cells_of_partitions() {
        let mu: Partition2D = "4,4,3,1,1".parse().unwrap();
        let c = mu.cells();
        assert_eq!(c.len(), 13);
        assert!(c.contains(&(0, 3)) && c.contains(&(4, 0)) && !c.contains(&(2, 3)));
        assert!(Partition2D::empty().cells().is_empty());
        let two: Partition2D = "2".parse().unwrap();
        assert_eq!(two.cells().into_iter().collect::<Vec<_>>(), alloc::vec![(0, 0), (0, 1)]);
    }

    #[test]
    fn cylinder_orientation() {
        let l = legs("1;2;1");
        assert!(cylinder_contains(&l, 1, &Weight([0, 0, 1])));
        assert!(cylinder_contains(&legs("1;-;-"), 0, &Weight([-5, 0, 0])));
        assert!(!cylinder_contains(&legs("-;1;-"), 0, &Weight([0, 0, 0])));
    }

    #[test]
    fn classification() {
        let l = legs("1;2;1");
        let c = classify_weight(&l, &Weight([0, 0, 0]));
        assert_eq!((c.tag, c.supports), (WeightTag::III, 0b111));
        let c = classify_weight(&l, &Weight([0, 0, 1]));
        assert_eq!((c.tag, c.supports), (WeightTag::II, 0b110));
        let c = classify_weight(&legs("1;-;-"), &Weight([-1, 0, 0]));
        assert_eq!((c.tag, c.supports), (WeightTag::Iminus, 0b001));
    }

    #[test]
    fn renormalized_volumes() {
        assert_eq!(renormalized_volume(&legs("1;2;1")), -3);
        assert_eq!(renormalized_volume(&legs("1;-;-")), 0);
        assert_eq!(renormalized_volume(&legs("1;1;1")), -2);
    }

    #[test]
    fn curve_characters() {
        let c = curve_character(&legs("1;-;-"), 2);
        let want = LaurentPolyT::t([0, 0, 0]).plus(&LaurentPolyT::t([1, 0, 0])).plus(&LaurentPolyT::t([2, 0, 0]));
        assert_eq!(c, want);
        assert!(curve_character(&LegTriple::empty(), 3).is_zero());
        let c = curve_character(&legs("1;1;1"), 1);
        let want = LaurentPolyT::t([0, 0, 0])
            .plus(&LaurentPolyT::t([1, 0, 0]))
            .plus(&LaurentPolyT::t([0, 1, 0]))
            .plus(&LaurentPolyT::t([0, 0, 1]));
        assert_eq!(c, want);
    }

    #[test]
    fn grammar() {
        let l = legs("2,1;-;1");
        assert_eq!(alloc::format!("{}", l), "2,1;-;1");
        assert!("1;2".parse::<LegTriple>().is_err());
        assert!("1,2;-;-".parse::<LegTriple>().is_err());
        assert_eq!(Partition2D::all_of_size(4).len(), 5);
        let mu: Partition2D = "3,1".parse().unwrap();
        assert_eq!(mu.transpose(), "2,1,1".parse().unwrap());
    }
}
