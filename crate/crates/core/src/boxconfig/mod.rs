//! Labelled box configurations: the discrete data of the torus-fixed
//! components of the stable-pairs moduli space at a vertex.
//!
//! A component is a torus-invariant submodule `Q` of `M / <1>`, where `M`
//! is the direct sum of the three leg modules localized along their axes.
//! The fibre of `M / <1>` at a weight has dimension 0, 1 or 2; a box at a
//! 2-dimensional fibre either fills it or is a line. Lines connected by
//! unit translations share one label. A connected set of lines whose label
//! no closure condition pins down sweeps out a `P¹`.
//!
//! Closure of `Q` under `x_k` translates into the rules checked by
//! [`validate_configuration`]: for a boxed `v` and `w = v + e_k`,
//!
//! * a box of type I⁻ in cylinder `i` forces any I⁻ or II successor, and
//!   forces a type III successor to be full or a line labelled `i`;
//! * a type II box forces a type II successor;
//! * a full type III box forces a full type III successor and any type II
//!   successor;
//! * a line forces any type III successor, and labels its component with
//!   `l` if the successor is an empty type II weight outside cylinder `l`.

mod enumerate;
mod oracle;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

pub use enumerate::{enumerate_components, enumerate_components_with};
pub use oracle::{brute_force_submodules, SubmoduleCensus};

use crate::partitions::{classify_weight, LegTriple, Weight, WeightTag};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoxKind {
    IminusBox,
    IIBox,
    IIIFull,
    IIILine { pcid: u32 },
}

impl BoxKind {
    pub fn length(&self) -> u32 {
        match self {
            BoxKind::IIIFull => 2,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BoxKind::IminusBox => "Iminus",
            BoxKind::IIBox => "II",
            BoxKind::IIIFull => "IIIFull",
            BoxKind::IIILine { .. } => "IIILine",
        }
    }
}

/// Box kind without the component id; enumeration works on these.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Cell {
    Minus,
    Two,
    Full,
    Line,
}

impl Cell {
    fn length(self) -> u32 {
        if self == Cell::Full {
            2
        } else {
            1
        }
    }
}

pub(crate) type Cells = BTreeMap<Weight, Cell>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxConfiguration {
    pub legs: LegTriple,
    pub boxes: BTreeMap<Weight, BoxKind>,
}

impl BoxConfiguration {
    pub fn new(legs: LegTriple) -> Self {
        BoxConfiguration { legs, boxes: BTreeMap::new() }
    }

    pub fn with(mut self, w: [i32; 3], kind: BoxKind) -> Self {
        self.boxes.insert(Weight(w), kind);
        self
    }

    pub fn length(&self) -> u32 {
        self.boxes.values().map(|k| k.length()).sum()
    }

    pub(crate) fn cells(&self) -> Cells {
        self.boxes
            .iter()
            .map(|(w, k)| {
                let c = match k {
                    BoxKind::IminusBox => Cell::Minus,
                    BoxKind::IIBox => Cell::Two,
                    BoxKind::IIIFull => Cell::Full,
                    BoxKind::IIILine { .. } => Cell::Line,
                };
                (*w, c)
            })
            .collect()
    }

    /// Cyclically relabels axes, matching [`LegTriple::rotate`].
    pub fn rotate(&self) -> Self {
        let cells: Cells = self.cells().into_iter().map(|(w, c)| (w.rotate(), c)).collect();
        let analysis = analyze(&self.legs.rotate(), &cells);
        build_configuration(&self.legs.rotate(), &cells, &analysis)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathComponentInfo {
    pub id: u32,
    pub member_weights: BTreeSet<Weight>,
    pub restricted: bool,
    /// Forced label, as a 0-based axis.
    pub forced_label: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentRecord {
    pub config: BoxConfiguration,
    pub length: u32,
    pub dimension: u32,
    pub euler_char: u64,
    pub components: Vec<PathComponentInfo>,
}

impl ComponentRecord {
    /// Ids of the unrestricted path components, in order; the `p`-th entry
    /// owns the `p`-th `P¹` factor.
    pub fn free_components(&self) -> Vec<u32> {
        self.components.iter().filter(|c| !c.restricted).map(|c| c.id).collect()
    }

    /// Validates and annotates a configuration.
    pub fn from_configuration(config: &BoxConfiguration) -> Result<Self> {
        let report = validate_configuration(config);
        if !report.is_valid() {
            return Err(Error::InvalidConfiguration(alloc::format!("{}", report)));
        }
        let cells = config.cells();
        let analysis = analyze(&config.legs, &cells);
        Ok(record_from(&config.legs, &cells, &analysis))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Successor of a type I⁻ box.
    Iminus,
    /// Successor into a type II weight.
    II,
    /// Successor into a type III weight.
    III,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WrongClass { at: Weight, kind: &'static str, tag: WeightTag },
    Closure { from: Weight, to: Weight, rule: Rule },
    ConflictingLabels { members: BTreeSet<Weight>, labels: BTreeSet<usize> },
    ComponentIds { at: Weight },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongClass { at, kind, tag } => write!(f, "{} box at {} of weight type {:?}", kind, at, tag),
            Violation::Closure { from, to, rule } => {
                write!(f, "box at {} forces {} (rule {:?})", from, to, rule)
            }
            Violation::ConflictingLabels { members, labels } => {
                let first = members.iter().next().copied().unwrap_or_default();
                write!(f, "component through {} forced to labels {:?}", first, labels)
            }
            Violation::ComponentIds { at } => write!(f, "line at {} has an inconsistent component id", at),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}", v)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub(crate) struct ComponentData {
    pub members: BTreeSet<Weight>,
    pub forced: BTreeSet<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct Analysis {
    /// Sorted by least member weight.
    pub components: Vec<ComponentData>,
    pub violations: Vec<Violation>,
}

impl Analysis {
    fn component_of(&self, w: &Weight) -> Option<usize> {
        self.components.iter().position(|c| c.members.contains(w))
    }
}

fn line_components(cells: &Cells) -> Vec<BTreeSet<Weight>> {
    let mut seen: BTreeSet<Weight> = BTreeSet::new();
    let mut out = Vec::new();
    for (w, c) in cells {
        if *c != Cell::Line || seen.contains(w) {
            continue;
        }
        let mut comp = BTreeSet::new();
        let mut stack = alloc::vec![*w];
        seen.insert(*w);
        while let Some(v) = stack.pop() {
            comp.insert(v);
            for k in 0..3 {
                for delta in [-1, 1] {
                    let mut u = v;
                    u.0[k] += delta;
                    if cells.get(&u) == Some(&Cell::Line) && seen.insert(u) {
                        stack.push(u);
                    }
                }
            }
        }
        out.push(comp);
    }
    out.sort();
    out
}

pub(crate) fn analyze(legs: &LegTriple, cells: &Cells) -> Analysis {
    let mut violations = Vec::new();
    let comps = line_components(cells);
    let mut components: Vec<ComponentData> =
        comps.into_iter().map(|members| ComponentData { members, forced: BTreeSet::new() }).collect();
    let mut owner: BTreeMap<Weight, usize> = BTreeMap::new();
    for (i, c) in components.iter().enumerate() {
        for w in &c.members {
            owner.insert(*w, i);
        }
    }
    for (v, cell) in cells {
        let cls = classify_weight(legs, v);
        let ok = matches!(
            (cell, cls.tag),
            (Cell::Minus, WeightTag::Iminus)
                | (Cell::Two, WeightTag::II)
                | (Cell::Full, WeightTag::III)
                | (Cell::Line, WeightTag::III)
        );
        if !ok {
            let kind = match cell {
                Cell::Minus => "Iminus",
                Cell::Two => "II",
                Cell::Full => "IIIFull",
                Cell::Line => "IIILine",
            };
            violations.push(Violation::WrongClass { at: *v, kind, tag: cls.tag });
            continue;
        }
        for k in 0..3 {
            let w = v.step(k);
            let wc = classify_weight(legs, &w);
            let target = cells.get(&w).copied();
            let closure = |rule| Violation::Closure { from: *v, to: w, rule };
            match (cell, wc.tag) {
                (Cell::Minus, WeightTag::Iminus) => {
                    if target.is_none() {
                        violations.push(closure(Rule::Iminus));
                    }
                }
                (Cell::Minus, WeightTag::II) | (Cell::Two, WeightTag::II) | (Cell::Full, WeightTag::II) => {
                    if target.is_none() {
                        violations.push(closure(Rule::II));
                    }
                }
                (Cell::Minus, WeightTag::III) => match target {
                    Some(Cell::Full) => {}
                    Some(Cell::Line) => {
                        let axis = cls.single_axis().expect("I- weights lie in one cylinder");
                        components[owner[&w]].forced.insert(axis);
                    }
                    _ => violations.push(closure(Rule::III)),
                },
                (Cell::Full, WeightTag::III) => {
                    if target != Some(Cell::Full) {
                        violations.push(closure(Rule::III));
                    }
                }
                (Cell::Line, WeightTag::III) if target.is_none() => {
                    violations.push(closure(Rule::III));
                }
                (Cell::Line, WeightTag::II) if target.is_none() => {
                    let l = wc.missing_axis().expect("type II misses one cylinder");
                    components[owner[v]].forced.insert(l);
                }
                _ => {}
            }
        }
    }
    for c in &components {
        if c.forced.len() > 1 {
            violations.push(Violation::ConflictingLabels { members: c.members.clone(), labels: c.forced.clone() });
        }
    }
    Analysis { components, violations }
}

pub(crate) fn build_configuration(legs: &LegTriple, cells: &Cells, analysis: &Analysis) -> BoxConfiguration {
    let boxes = cells
        .iter()
        .map(|(w, c)| {
            let k = match c {
                Cell::Minus => BoxKind::IminusBox,
                Cell::Two => BoxKind::IIBox,
                Cell::Full => BoxKind::IIIFull,
                Cell::Line => BoxKind::IIILine { pcid: analysis.component_of(w).unwrap() as u32 },
            };
            (*w, k)
        })
        .collect();
    BoxConfiguration { legs: legs.clone(), boxes }
}

pub(crate) fn record_from(legs: &LegTriple, cells: &Cells, analysis: &Analysis) -> ComponentRecord {
    let config = build_configuration(legs, cells, analysis);
    let components: Vec<PathComponentInfo> = analysis
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| PathComponentInfo {
            id: i as u32,
            member_weights: c.members.clone(),
            restricted: !c.forced.is_empty(),
            forced_label: c.forced.iter().next().copied(),
        })
        .collect();
    let dimension = components.iter().filter(|c| !c.restricted).count() as u32;
    let length = cells.values().map(|c| c.length()).sum();
    ComponentRecord { config, length, dimension, euler_char: 1u64 << dimension, components }
}

/// Checks weight types, the closure rules and label consistency, and that
/// the component ids partition the lines into connected pieces.
pub fn validate_configuration(c: &BoxConfiguration) -> ValidationReport {
    let cells = c.cells();
    let analysis = analyze(&c.legs, &cells);
    let mut violations = analysis.violations.clone();
    for comp in &analysis.components {
        let ids: BTreeSet<u32> = comp
            .members
            .iter()
            .filter_map(|w| match c.boxes[w] {
                BoxKind::IIILine { pcid } => Some(pcid),
                _ => None,
            })
            .collect();
        if ids.len() != 1 {
            violations.push(Violation::ComponentIds { at: *comp.members.iter().next().unwrap() });
        }
    }
    let mut id_owner: BTreeMap<u32, usize> = BTreeMap::new();
    for (w, k) in &c.boxes {
        if let BoxKind::IIILine { pcid } = k {
            let comp = analysis.component_of(w).unwrap();
            if *id_owner.entry(*pcid).or_insert(comp) != comp {
                violations.push(Violation::ComponentIds { at: *w });
            }
        }
    }
    ValidationReport { violations }
}

/// Path components of a valid configuration, with restriction data.
pub fn path_components(c: &BoxConfiguration) -> Result<Vec<PathComponentInfo>> {
    let cells = c.cells();
    let analysis = analyze(&c.legs, &cells);
    if let Some(v) = analysis.violations.iter().find(|v| matches!(v, Violation::ConflictingLabels { .. })) {
        return Err(Error::InvalidConfiguration(alloc::format!("{}", v)));
    }
    Ok(record_from(&c.legs, &cells, &analysis).components)
}
