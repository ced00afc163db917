//! Toric graphs and global assembly.
//!
//! A vertex has three slots, one per local axis. An edge joins slot `i` of
//! its first end `a` to slot `j` of its second end `b`. In edge coordinates
//! `t1` points along the edge and `(t2, t3)` are local axes `i+1, i+2` of
//! `a`. Crossing the edge sends them to `t1^-1, t2 t1^-m, t3 t1^-m'`, which
//! become local axes `j, j+2, j+1` of `b`. An edge partition has cells
//! `(k2, k3)` at `t2^k2 t3^k3`, so the leg it induces is its transpose at
//! `a` and itself at `b`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::arith::{Coefficient, Field, Frame, QLaurentSeries, WeightEvaluator};
use crate::characters::edge_characters;
use crate::dt::dt_cy_vertex_series_with;
use crate::exec::{Executor, Sequential};
use crate::localization::{cy_vertex_series_with, euler_product, weighted_vertex_series};
use crate::partitions::{curve_character, renormalized_volume, LegTriple, Partition2D};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricVertex {
    pub id: u32,
    /// Edge id per local axis, `None` for a non-compact direction.
    pub slots: [Option<u32>; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricEdge {
    pub id: u32,
    /// `(vertex id, local axis)` of the two ends.
    pub ends: [(u32, usize); 2],
    pub framing: (i32, i32),
    pub class_id: u32,
}

impl ToricEdge {
    /// The same edge described from its other end.
    pub fn reversed(&self) -> Self {
        ToricEdge {
            id: self.id,
            ends: [self.ends[1], self.ends[0]],
            framing: (self.framing.1, self.framing.0),
            class_id: self.class_id,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricGraph {
    pub vertices: Vec<ToricVertex>,
    pub edges: Vec<ToricEdge>,
    pub cy: bool,
}

/// Degrees per curve class id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CurveClassSpec {
    pub degrees: BTreeMap<u32, u32>,
}

impl CurveClassSpec {
    pub fn single(class_id: u32, degree: u32) -> Self {
        let mut degrees = BTreeMap::new();
        degrees.insert(class_id, degree);
        CurveClassSpec { degrees }
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.values().all(|&d| d == 0)
    }
}

/// Partition per edge id; absent edges carry the empty partition.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeAssignment {
    pub partitions: BTreeMap<u32, Partition2D>,
}

impl EdgeAssignment {
    pub fn get(&self, edge: u32) -> Partition2D {
        self.partitions.get(&edge).cloned().unwrap_or_else(Partition2D::empty)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphViolation {
    DuplicateVertex(u32),
    DuplicateEdge(u32),
    UnknownVertex { edge: u32, vertex: u32 },
    SlotOutOfRange { edge: u32 },
    SlotMismatch { vertex: u32, slot: usize },
    LoopEdge { edge: u32 },
    NotCalabiYau { edge: u32, framing: (i32, i32) },
    Orientation { vertex: u32 },
}

impl fmt::Display for GraphViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphViolation::DuplicateVertex(v) => write!(f, "vertex {} declared twice", v),
            GraphViolation::DuplicateEdge(e) => write!(f, "edge {} declared twice", e),
            GraphViolation::UnknownVertex { edge, vertex } => {
                write!(f, "edge {} names unknown vertex {}", edge, vertex)
            }
            GraphViolation::SlotOutOfRange { edge } => write!(f, "edge {} uses a slot outside 1..3", edge),
            GraphViolation::SlotMismatch { vertex, slot } => {
                write!(f, "slot {} of vertex {} disagrees with the edge list", slot + 1, vertex)
            }
            GraphViolation::LoopEdge { edge } => write!(f, "edge {} joins a vertex to itself", edge),
            GraphViolation::NotCalabiYau { edge, framing } => {
                write!(f, "edge {} has framing ({}, {}), not summing to -2", edge, framing.0, framing.1)
            }
            GraphViolation::Orientation { vertex } => {
                write!(f, "charts around vertex {} are inconsistent", vertex)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GraphReport {
    pub violations: Vec<GraphViolation>,
}

impl GraphReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

type Axes = [[i64; 3]; 3];

fn neg(a: [i64; 3]) -> [i64; 3] {
    [-a[0], -a[1], -a[2]]
}

fn axpy(a: [i64; 3], k: i64, w: [i64; 3]) -> [i64; 3] {
    [a[0] + k * w[0], a[1] + k * w[1], a[2] + k * w[2]]
}

/// Frame at `b` from the frame at `a` across `e`.
fn transport(fa: &Axes, e: &ToricEdge) -> Axes {
    let (i, j) = (e.ends[0].1, e.ends[1].1);
    let (m, mp) = (e.framing.0 as i64, e.framing.1 as i64);
    let w = fa[i];
    let mut fb = [[0; 3]; 3];
    fb[j] = neg(w);
    fb[(j + 2) % 3] = axpy(fa[(i + 1) % 3], -m, w);
    fb[(j + 1) % 3] = axpy(fa[(i + 2) % 3], -mp, w);
    fb
}

impl ToricGraph {
    fn vertex_index(&self, id: u32) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    fn structural_violations(&self) -> Vec<GraphViolation> {
        let mut out = Vec::new();
        let mut seen = BTreeMap::new();
        for v in &self.vertices {
            if seen.insert(v.id, ()).is_some() {
                out.push(GraphViolation::DuplicateVertex(v.id));
            }
        }
        let mut seen = BTreeMap::new();
        for e in &self.edges {
            if seen.insert(e.id, ()).is_some() {
                out.push(GraphViolation::DuplicateEdge(e.id));
            }
            if e.ends.iter().any(|&(_, s)| s > 2) {
                out.push(GraphViolation::SlotOutOfRange { edge: e.id });
                continue;
            }
            if e.ends[0].0 == e.ends[1].0 {
                out.push(GraphViolation::LoopEdge { edge: e.id });
            }
            for &(vid, slot) in &e.ends {
                match self.vertex_index(vid) {
                    None => out.push(GraphViolation::UnknownVertex { edge: e.id, vertex: vid }),
                    Some(k) => {
                        if self.vertices[k].slots[slot] != Some(e.id) {
                            out.push(GraphViolation::SlotMismatch { vertex: vid, slot });
                        }
                    }
                }
            }
            if self.cy && e.framing.0 + e.framing.1 != -2 {
                out.push(GraphViolation::NotCalabiYau { edge: e.id, framing: e.framing });
            }
        }
        for v in &self.vertices {
            for (slot, s) in v.slots.iter().enumerate() {
                if let Some(eid) = s {
                    let ok = self.edges.iter().any(|e| e.id == *eid && e.ends.contains(&(v.id, slot)));
                    if !ok {
                        out.push(GraphViolation::SlotMismatch { vertex: v.id, slot });
                    }
                }
            }
        }
        out
    }

    /// Torus weights of the local axes at every vertex, propagated from
    /// the standard frame at the first vertex of each connected piece.
    fn propagate(&self) -> (Vec<Axes>, Vec<GraphViolation>) {
        let n = self.vertices.len();
        let mut frames: Vec<Option<Axes>> = alloc::vec![None; n];
        let mut bad = Vec::new();
        for start in 0..n {
            if frames[start].is_some() {
                continue;
            }
            frames[start] = Some(Frame::IDENTITY.axes);
            let mut queue = VecDeque::from([start]);
            while let Some(k) = queue.pop_front() {
                let fk = frames[k].unwrap();
                let vid = self.vertices[k].id;
                for e in &self.edges {
                    let oriented = if e.ends[0].0 == vid {
                        e.clone()
                    } else if e.ends[1].0 == vid {
                        e.reversed()
                    } else {
                        continue;
                    };
                    let Some(other) = self.vertex_index(oriented.ends[1].0) else { continue };
                    let fo = transport(&fk, &oriented);
                    match frames[other] {
                        None => {
                            frames[other] = Some(fo);
                            queue.push_back(other);
                        }
                        Some(f) if f != fo => {
                            let v = GraphViolation::Orientation { vertex: self.vertices[other].id };
                            if !bad.contains(&v) {
                                bad.push(v);
                            }
                        }
                        _ => {}
                    }
                }
            }
        }
        (frames.into_iter().map(|f| f.unwrap()).collect(), bad)
    }

    /// Frame of every vertex, in vertex order.
    pub fn vertex_frames(&self) -> Result<Vec<Frame>> {
        let report = validate_graph(self);
        if !report.is_valid() {
            return Err(invalid(&report));
        }
        Ok(self.propagate().0.into_iter().map(Frame::new).collect())
    }

    /// Local legs at every vertex, in vertex order.
    pub fn induced_legs(&self, assign: &EdgeAssignment) -> Vec<LegTriple> {
        self.vertices
            .iter()
            .map(|v| {
                let mut legs = [Partition2D::empty(), Partition2D::empty(), Partition2D::empty()];
                for (slot, s) in v.slots.iter().enumerate() {
                    if let Some(eid) = s {
                        let Some(e) = self.edges.iter().find(|e| e.id == *eid) else { continue };
                        let mu = assign.get(*eid);
                        legs[slot] = if e.ends[0] == (v.id, slot) { mu.transpose() } else { mu };
                    }
                }
                let [a, b, c] = legs;
                LegTriple::new(a, b, c)
            })
            .collect()
    }

    /// Every edge described from its other end.
    pub fn reversed_edges(&self) -> Self {
        ToricGraph {
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|e| e.reversed()).collect(),
            cy: self.cy,
        }
    }
}

fn invalid(report: &GraphReport) -> Error {
    let msgs: Vec<String> = report.violations.iter().map(|v| alloc::format!("{}", v)).collect();
    Error::InvalidGraph(msgs.join("; "))
}

/// Structural checks, the Calabi-Yau framing rule when flagged, and
/// consistency of the charts around every cycle.
pub fn validate_graph(g: &ToricGraph) -> GraphReport {
    let mut violations = g.structural_violations();
    if violations.is_empty() {
        violations.extend(g.propagate().1);
    }
    GraphReport { violations }
}

/// `chi(O_{P^1}(d))` from graded Čech counts.
fn line_bundle_euler(d: i64) -> i64 {
    let h0 = (0..=d).count() as i64;
    let h1 = if d <= -2 { (d + 1..=-1).count() as i64 } else { 0 };
    h0 - h1
}

/// `chi` of the edge piece: cell `(k2, k3)` is `O(-m k2 - m' k3)`.
pub fn edge_euler(mu: &Partition2D, framing: (i32, i32)) -> i64 {
    mu.cells()
        .into_iter()
        .map(|(a, b)| line_bundle_euler(-(framing.0 as i64) * a as i64 - (framing.1 as i64) * b as i64))
        .sum()
}

fn windowed_euler(g: &ToricGraph, assign: &EdgeAssignment, n: i32) -> i64 {
    let mut total: i64 = g.induced_legs(assign).iter().map(|l| curve_character(l, n).len() as i64).sum();
    for e in &g.edges {
        let mu = assign.get(e.id);
        total += edge_euler(&mu, e.framing) - 2 * (n as i64 + 1) * mu.size() as i64;
    }
    total
}

/// `chi(O_C)` for the minimal torus-fixed curve with the given edge
/// partitions: vertex windows plus edge pieces, minus the parts of the
/// edges already counted inside the windows.
pub fn curve_euler_characteristic(g: &ToricGraph, assign: &EdgeAssignment) -> Result<i64> {
    let legs = g.induced_legs(assign);
    let n = legs.iter().map(|l| l.extent()).max().unwrap_or(0).max(1);
    let a = windowed_euler(g, assign, n);
    let b = windowed_euler(g, assign, n + 1);
    if a != b {
        return Err(Error::cancel("curve Euler characteristic", alloc::format!("windows give {} and {}", a, b)));
    }
    Ok(a)
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { alloc::vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All edge assignments whose class degrees match `beta`.
pub fn edge_assignments(g: &ToricGraph, beta: &CurveClassSpec) -> Result<Vec<EdgeAssignment>> {
    let mut partial = alloc::vec![EdgeAssignment::default()];
    for (&class, &deg) in &beta.degrees {
        if deg == 0 {
            continue;
        }
        let edges: Vec<u32> = g.edges.iter().filter(|e| e.class_id == class).map(|e| e.id).collect();
        if edges.is_empty() {
            return Err(Error::InvalidGraph(alloc::format!("no edge carries class {}", class)));
        }
        let mut next = Vec::new();
        for comp in compositions(deg, edges.len()) {
            let mut choices: Vec<Vec<(u32, Partition2D)>> = alloc::vec![Vec::new()];
            for (eid, &k) in edges.iter().zip(&comp) {
                if k == 0 {
                    continue;
                }
                let mut grown = Vec::new();
                for c in &choices {
                    for mu in Partition2D::all_of_size(k) {
                        let mut c = c.clone();
                        c.push((*eid, mu));
                        grown.push(c);
                    }
                }
                choices = grown;
            }
            for base in &partial {
                for c in &choices {
                    let mut a = base.clone();
                    a.partitions.extend(c.iter().cloned());
                    next.push(a);
                }
            }
        }
        partial = next;
    }
    Ok(partial)
}

/// An assembled Calabi-Yau partition function.
#[derive(Clone, Debug, PartialEq)]
pub struct CyAssembly {
    pub series: QLaurentSeries<BigInt>,
    /// Some vertex has three nonempty legs.
    pub conjectural: bool,
    pub warnings: Vec<String>,
}

/// Cyclic rotation with the least label; the Calabi-Yau vertex is
/// invariant under it.
fn canonical_legs(l: &LegTriple) -> LegTriple {
    let r1 = l.rotate();
    let r2 = r1.rotate();
    let mut best = l.clone();
    for r in [r1, r2] {
        if alloc::format!("{}", r) < alloc::format!("{}", best) {
            best = r;
        }
    }
    best
}

struct Plan {
    assign: EdgeAssignment,
    sign: bool,
    shift: i64,
    legs: Vec<LegTriple>,
    orders: Vec<i64>,
}

fn plan(g: &ToricGraph, beta: &CurveClassSpec, order: i64) -> Result<Vec<Plan>> {
    let report = validate_graph(g);
    if !report.is_valid() {
        return Err(invalid(&report));
    }
    let mut out = Vec::new();
    for assign in edge_assignments(g, beta)? {
        let legs = g.induced_legs(&assign);
        let vols: Vec<i64> = legs.iter().map(renormalized_volume).collect();
        let shift: i64 = g.edges.iter().map(|e| edge_euler(&assign.get(e.id), e.framing)).sum();
        let total_vol: i64 = vols.iter().sum();
        if shift + total_vol > order {
            continue;
        }
        let orders = vols.iter().map(|v| order - shift - (total_vol - v)).collect();
        let m_mu: i64 = g.edges.iter().map(|e| e.framing.0 as i64 * assign.get(e.id).size() as i64).sum();
        out.push(Plan { assign, sign: m_mu.rem_euclid(2) == 1, shift, legs, orders });
    }
    Ok(out)
}

fn assemble_cy<X, F>(g: &ToricGraph, beta: &CurveClassSpec, order: i64, exec: &X, vertex: F) -> Result<CyAssembly>
where
    X: Executor,
    F: Fn(&LegTriple, i64) -> Result<QLaurentSeries<BigInt>> + Sync + Send,
{
    let plans = plan(g, beta, order)?;
    let mut keys: Vec<(LegTriple, i64)> =
        plans.iter().flat_map(|p| p.legs.iter().map(canonical_legs).zip(p.orders.iter().copied())).collect();
    keys.sort_by(|a, b| (alloc::format!("{}", a.0), a.1).cmp(&(alloc::format!("{}", b.0), b.1)));
    keys.dedup();
    let computed = exec.map(&keys, |(l, o)| vertex(l, *o));
    let mut memo = BTreeMap::new();
    for ((l, o), s) in keys.into_iter().zip(computed) {
        memo.insert((alloc::format!("{}", l), o), s?);
    }
    let mut terms: BTreeMap<i64, BigInt> = BTreeMap::new();
    let mut conjectural = false;
    for p in &plans {
        let mut acc: Option<QLaurentSeries<BigInt>> = None;
        for (l, o) in p.legs.iter().zip(&p.orders) {
            conjectural |= l.nonempty_count() == 3;
            let s = &memo[&(alloc::format!("{}", canonical_legs(l)), *o)];
            acc = Some(match acc {
                None => s.clone(),
                Some(a) => a.times(s),
            });
        }
        let acc = acc.unwrap_or_else(|| QLaurentSeries::one(order - p.shift));
        // Vertex series are in -q; shift, then return to q.
        let acc = acc.shift(p.shift).flip_sign();
        for (n, c) in acc.terms() {
            if n <= order {
                let c = if p.sign { -c.clone() } else { c.clone() };
                *terms.entry(n).or_insert_with(|| BigInt::from(0)) += c;
            }
        }
    }
    let low = terms.keys().next().copied().unwrap_or(0).min(order);
    let mut series = QLaurentSeries::zero(low, order);
    for (n, c) in terms {
        series.add_to(n, &c);
    }
    let mut warnings = Vec::new();
    if beta.is_zero() {
        warnings.push(String::from("beta = 0: only the empty curve contributes"));
    }
    Ok(CyAssembly { series, conjectural, warnings })
}

/// `q^n -> (-q)^n` applied to a series computed in `-q`.
fn unsign(s: QLaurentSeries<BigInt>) -> QLaurentSeries<BigInt> {
    s.flip_sign()
}

/// `Z_{P,beta}` of a Calabi-Yau graph.
pub fn assemble_cy_pt(g: &ToricGraph, beta: &CurveClassSpec, order: i64) -> Result<CyAssembly> {
    assemble_cy_pt_with(g, beta, order, &Sequential)
}

pub fn assemble_cy_pt_with<X: Executor>(
    g: &ToricGraph,
    beta: &CurveClassSpec,
    order: i64,
    exec: &X,
) -> Result<CyAssembly> {
    require_cy(g)?;
    assemble_cy(g, beta, order, exec, |l, o| Ok(unsign(cy_vertex_series_with(l, o, &Sequential)?.series)))
}

/// `Z_{DT,beta}` of a Calabi-Yau graph.
pub fn assemble_cy_dt(g: &ToricGraph, beta: &CurveClassSpec, order: i64) -> Result<CyAssembly> {
    assemble_cy_dt_with(g, beta, order, &Sequential)
}

pub fn assemble_cy_dt_with<X: Executor>(
    g: &ToricGraph,
    beta: &CurveClassSpec,
    order: i64,
    exec: &X,
) -> Result<CyAssembly> {
    require_cy(g)?;
    let mut out = assemble_cy(g, beta, order, exec, |l, o| Ok(unsign(dt_cy_vertex_series_with(l, o, &Sequential))))?;
    out.warnings.clear();
    Ok(out)
}

fn require_cy(g: &ToricGraph) -> Result<()> {
    if !g.cy {
        return Err(Error::Precondition("Calabi-Yau assembly needs a graph flagged cy".into()));
    }
    Ok(())
}

/// All ways to hand `k` insertions to `v` vertices.
fn distributions(k: usize, v: usize) -> Vec<Vec<usize>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for d in &out {
            for t in 0..v {
                let mut d = d.clone();
                d.push(t);
                next.push(d);
            }
        }
        out = next;
    }
    out
}

/// Equivariant `Z_{P,beta}(tau_{i1}(1) ... tau_{ik}(1))`: edge factors
/// `e(-E)`, vertex descendent series in the vertex frames, and each
/// insertion divided by the tangent Euler class of its vertex.
pub fn assemble_descendents<E: WeightEvaluator>(
    g: &ToricGraph,
    beta: &CurveClassSpec,
    taus: &[i32],
    order: i64,
    ev: &E,
) -> Result<QLaurentSeries<E::Output>> {
    assemble_descendents_with(g, beta, taus, order, ev, &Sequential)
}

pub fn assemble_descendents_with<E: WeightEvaluator, X: Executor>(
    g: &ToricGraph,
    beta: &CurveClassSpec,
    taus: &[i32],
    order: i64,
    ev: &E,
    exec: &X,
) -> Result<QLaurentSeries<E::Output>> {
    let plans = plan(g, beta, order)?;
    let frames = g.vertex_frames()?;
    let tangent: Vec<E::Output> = frames
        .iter()
        .map(|f| {
            let mut e = E::Value::one();
            for axis in f.axes {
                e = e.times(&ev.linear(axis)?);
            }
            Ok(ev.finalize(&e))
        })
        .collect::<Result<_>>()?;
    let dists = distributions(taus.len(), g.vertices.len());

    // (vertex, legs, insertions, order) for every vertex series needed.
    let mut keys: Vec<(usize, LegTriple, Vec<i32>, i64)> = Vec::new();
    for p in &plans {
        for d in &dists {
            for (v, (l, o)) in p.legs.iter().zip(&p.orders).enumerate() {
                let mut t: Vec<i32> = d.iter().zip(taus).filter(|(x, _)| **x == v).map(|(_, i)| *i).collect();
                t.sort();
                keys.push((v, l.clone(), t, *o));
            }
        }
    }
    keys.sort();
    keys.dedup();
    let computed = exec.map(&keys, |(v, l, t, o)| weighted_vertex_series(l, t, *o, ev, &frames[*v], &Sequential));
    let mut memo = BTreeMap::new();
    for (k, s) in keys.into_iter().zip(computed) {
        memo.insert(k, s?);
    }

    let mut terms: BTreeMap<i64, E::Output> = BTreeMap::new();
    for p in &plans {
        let mut edge_factor = E::Value::one();
        for e in &g.edges {
            let mu = p.assign.get(e.id);
            if mu.is_empty() {
                continue;
            }
            let (v, i) = e.ends[0];
            let fa = frames[g.vertex_index(v).unwrap()].axes;
            let edge_frame = Frame::new([fa[i], fa[(i + 1) % 3], fa[(i + 2) % 3]]);
            let (_, ec) = edge_characters(&mu, e.framing)?;
            edge_factor = edge_factor.times(&euler_product(&ec.terms.negate(), ev, &edge_frame)?);
        }
        let edge_factor = ev.finalize(&edge_factor);
        for d in &dists {
            let mut acc: Option<QLaurentSeries<E::Output>> = None;
            let mut scale = edge_factor.clone();
            for (v, (l, o)) in p.legs.iter().zip(&p.orders).enumerate() {
                let mut t: Vec<i32> = d.iter().zip(taus).filter(|(x, _)| **x == v).map(|(_, i)| *i).collect();
                t.sort();
                let k = t.len() as u32;
                let s = &memo[&(v, l.clone(), t, *o)];
                acc = Some(match acc {
                    None => s.clone(),
                    Some(a) => a.times(s),
                });
                if k > 0 {
                    let inv = tangent[v].try_inverse().ok_or(Error::DivisionByZero)?;
                    scale = scale.times(&inv.pow_u32(k));
                }
            }
            let acc = acc.unwrap_or_else(|| QLaurentSeries::one(order - p.shift));
            for (n, c) in acc.shift(p.shift).terms() {
                if n <= order {
                    let c = c.times(&scale);
                    let slot = terms.entry(n).or_insert_with(E::Output::zero);
                    *slot = slot.plus(&c);
                }
            }
        }
    }
    let low = terms.keys().next().copied().unwrap_or(0).min(order);
    let mut series = QLaurentSeries::zero(low, order);
    for (n, c) in terms {
        series.add_to(n, &c);
    }
    Ok(series)
}

/// Two vertices joined by one edge of framing `(-1, -1)`.
pub fn conifold() -> ToricGraph {
    ToricGraph {
        vertices: alloc::vec![
            ToricVertex { id: 0, slots: [Some(0), None, None] },
            ToricVertex { id: 1, slots: [Some(0), None, None] },
        ],
        edges: alloc::vec![ToricEdge { id: 0, ends: [(0, 0), (1, 0)], framing: (-1, -1), class_id: 0 }],
        cy: true,
    }
}

/// The total space of `K_{P^2}`: a triangle of edges with normal bundle
/// `O(1) + O(-3)`.
pub fn local_p2() -> ToricGraph {
    ToricGraph {
        vertices: alloc::vec![
            ToricVertex { id: 0, slots: [Some(0), Some(1), None] },
            ToricVertex { id: 1, slots: [Some(0), None, Some(2)] },
            ToricVertex { id: 2, slots: [Some(1), Some(2), None] },
        ],
        edges: alloc::vec![
            ToricEdge { id: 0, ends: [(0, 0), (1, 0)], framing: (1, -3), class_id: 0 },
            ToricEdge { id: 1, ends: [(0, 1), (2, 0)], framing: (-3, 1), class_id: 0 },
            ToricEdge { id: 2, ends: [(1, 2), (2, 1)], framing: (1, -3), class_id: 0 },
        ],
        cy: true,
    }
}

/// Projective 3-space: four vertices, six lines of framing `(1, 1)`.
pub fn p3() -> ToricGraph {
    let v = |id, s: [u32; 3]| ToricVertex { id, slots: [Some(s[0]), Some(s[1]), Some(s[2])] };
    let e = |id, a: (u32, usize), b: (u32, usize)| ToricEdge { id, ends: [a, b], framing: (1, 1), class_id: 0 };
    // Edge ids: 0 = 01, 1 = 02, 2 = 03, 3 = 12, 4 = 13, 5 = 23.
    ToricGraph {
        vertices: alloc::vec![v(0, [0, 1, 2]), v(1, [0, 4, 3]), v(2, [1, 3, 5]), v(3, [2, 5, 4])],
        edges: alloc::vec![
            e(0, (0, 0), (1, 0)),
            e(1, (0, 1), (2, 0)),
            e(2, (0, 2), (3, 0)),
            e(3, (1, 2), (2, 1)),
            e(4, (1, 1), (3, 2)),
            e(5, (2, 2), (3, 1)),
        ],
        cy: false,
    }
}
