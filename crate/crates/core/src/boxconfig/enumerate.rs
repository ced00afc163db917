//! Breadth-first enumeration by length.
//!
//! Every nonzero finite `Q` has a weight where `Q` is not hit by `x1, x2,
//! x3`; dropping one dimension there leaves a submodule of colength one. So
//! each valid configuration of length `l + 1` arises from one of length `l`
//! by a single move: box an empty weight (a line at type III weights) or
//! fill a line. Candidate weights: the socket where two or more cylinders
//! meet, and I⁻ weights of depth at most `maxLength`, since a box at depth
//! `k` drags a chain of `k` boxes behind it by the I⁻ rule.

use alloc::vec::Vec;

use super::{analyze, record_from, Cell, Cells, ComponentRecord};
use crate::exec::{Executor, Sequential};
use crate::partitions::{classify_weight, socket_weights, LegTriple, Weight, WeightTag};

fn candidate_weights(legs: &LegTriple, max_length: u32) -> Vec<(Weight, WeightTag)> {
    let mut out: Vec<(Weight, WeightTag)> = Vec::new();
    for (w, _) in socket_weights(legs) {
        out.push((w, classify_weight(legs, &w).tag));
    }
    for axis in 0..3 {
        for (a, b) in legs.leg(axis).cells() {
            for depth in 1..=max_length as i32 {
                let mut w = [0i32; 3];
                w[axis] = -depth;
                w[(axis + 2) % 3] = a as i32;
                w[(axis + 1) % 3] = b as i32;
                out.push((Weight(w), WeightTag::Iminus));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn children(legs: &LegTriple, cells: &Cells, region: &[(Weight, WeightTag)]) -> Vec<Cells> {
    let mut out = Vec::new();
    for (w, tag) in region {
        let next = match (cells.get(w), tag) {
            (None, WeightTag::Iminus) => Cell::Minus,
            (None, WeightTag::II) => Cell::Two,
            (None, WeightTag::III) => Cell::Line,
            (Some(Cell::Line), WeightTag::III) => Cell::Full,
            _ => continue,
        };
        let mut child = cells.clone();
        child.insert(*w, next);
        if analyze(legs, &child).violations.is_empty() {
            out.push(child);
        }
    }
    out
}

/// All valid configurations of length at most `max_length`, sorted by length
/// and then by box list.
pub fn enumerate_components(legs: &LegTriple, max_length: u32) -> Vec<ComponentRecord> {
    enumerate_components_with(legs, max_length, &Sequential)
}

pub fn enumerate_components_with<E: Executor>(legs: &LegTriple, max_length: u32, exec: &E) -> Vec<ComponentRecord> {
    let region = candidate_weights(legs, max_length);
    let mut level: Vec<Cells> = alloc::vec![Cells::new()];
    let mut all: Vec<Cells> = level.clone();
    for _ in 0..max_length {
        let expanded = exec.map(&level, |c| children(legs, c, &region));
        let mut next: Vec<Cells> = expanded.into_iter().flatten().collect();
        next.sort();
        next.dedup();
        if next.is_empty() {
            break;
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    let mut records = exec.map(&all, |cells| {
        let analysis = analyze(legs, cells);
        debug_assert!(analysis.violations.is_empty());
        record_from(legs, cells, &analysis)
    });
    records.sort_by(|a, b| (a.length, &a.config.boxes).cmp(&(b.length, &b.config.boxes)));
    records
}
