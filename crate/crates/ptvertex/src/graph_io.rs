//! Toric graph files.
//!
//! ```json
//! {"vertices": [{"id": 0, "slots": {"1": 0, "2": null, "3": null}}],
//!  "edges": [{"id": 0, "ends": [[0, 1], [1, 1]], "m": -1, "mprime": -1, "classId": 0}],
//!  "cy": true}
//! ```
//!
//! Slots are numbered 1 to 3 in files and 0 to 2 in the core crate.

use std::collections::BTreeMap;
use std::path::Path;

use ptvertex_core::toric::{validate_graph, ToricEdge, ToricGraph, ToricVertex};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum GraphIoError {
    #[error("cannot read graph file {path}: {detail}")]
    Io { path: String, detail: String },
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad slot {0}: slots are 1, 2, 3")]
    Slot(String),
    #[error("invalid toric graph: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<VertexFile>,
    pub edges: Vec<EdgeFile>,
    pub cy: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexFile {
    pub id: u32,
    pub slots: BTreeMap<String, Option<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub id: u32,
    pub ends: [[u32; 2]; 2],
    pub m: i32,
    pub mprime: i32,
    #[serde(rename = "classId")]
    pub class_id: u32,
}

const PRESETS: [(&str, &str); 3] = [
    ("conifold", include_str!("../presets/conifold.json")),
    ("localP2", include_str!("../presets/localP2.json")),
    ("p3", include_str!("../presets/p3.json")),
];

fn slot_index(s: u32) -> Result<usize, GraphIoError> {
    match s {
        1..=3 => Ok(s as usize - 1),
        _ => Err(GraphIoError::Slot(s.to_string())),
    }
}

impl GraphFile {
    pub fn to_graph(&self) -> Result<ToricGraph, GraphIoError> {
        let mut vertices = Vec::new();
        for v in &self.vertices {
            let mut slots = [None; 3];
            for (k, e) in &v.slots {
                let i = k.parse::<u32>().map_err(|_| GraphIoError::Slot(k.clone())).and_then(slot_index)?;
                slots[i] = *e;
            }
            vertices.push(ToricVertex { id: v.id, slots });
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            let ends = [(e.ends[0][0], slot_index(e.ends[0][1])?), (e.ends[1][0], slot_index(e.ends[1][1])?)];
            edges.push(ToricEdge { id: e.id, ends, framing: (e.m, e.mprime), class_id: e.class_id });
        }
        Ok(ToricGraph { vertices, edges, cy: self.cy })
    }

    pub fn from_graph(g: &ToricGraph) -> Self {
        let vertices = g
            .vertices
            .iter()
            .map(|v| VertexFile { id: v.id, slots: (0..3).map(|i| ((i + 1).to_string(), v.slots[i])).collect() })
            .collect();
        let edges = g
            .edges
            .iter()
            .map(|e| EdgeFile {
                id: e.id,
                ends: [[e.ends[0].0, e.ends[0].1 as u32 + 1], [e.ends[1].0, e.ends[1].1 as u32 + 1]],
                m: e.framing.0,
                mprime: e.framing.1,
                class_id: e.class_id,
            })
            .collect();
        GraphFile { vertices, edges, cy: g.cy }
    }
}

/// Parses and validates a graph.
pub fn parse_graph(json: &str) -> Result<ToricGraph, GraphIoError> {
    let file: GraphFile = serde_json::from_str(json)?;
    let g = file.to_graph()?;
    let report = validate_graph(&g);
    if !report.is_valid() {
        let msgs: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(GraphIoError::Invalid(msgs.join("; ")));
    }
    Ok(g)
}

pub fn graph_to_json(g: &ToricGraph) -> String {
    serde_json::to_string_pretty(&GraphFile::from_graph(g)).expect("graph serializes")
}

/// Shipped preset by name (`conifold`, `localP2`, `p3`, with or without
/// `.json`).
pub fn preset(name: &str) -> Option<&'static str> {
    let stem = name.strip_suffix(".json").unwrap_or(name);
    PRESETS.iter().find(|(n, _)| *n == stem).map(|(_, s)| *s)
}

/// Reads `arg` as a path, falling back to a preset name.
pub fn load_graph(arg: &str) -> Result<ToricGraph, GraphIoError> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GraphIoError::Io { path: arg.to_string(), detail: e.to_string() })?;
        return parse_graph(&text);
    }
    match preset(arg) {
        Some(text) => parse_graph(text),
        None => Err(GraphIoError::Io { path: arg.to_string(), detail: "no such file or preset".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ptvertex_core::toric::{conifold, local_p2, p3};

    #[test]
    fn presets_match_core() {
        assert_eq!(load_graph("conifold").unwrap(), conifold());
        assert_eq!(load_graph("localP2.json").unwrap(), local_p2());
        assert_eq!(load_graph("p3").unwrap(), p3());
    }

    #[test]
    fn round_trip() {
        for g in [conifold(), local_p2(), p3()] {
            assert_eq!(parse_graph(&graph_to_json(&g)).unwrap(), g);
        }
    }

    #[test]
    fn rejects_bad_slots() {
        let bad = preset("conifold").unwrap().replace("\"1\"", "\"4\"");
        assert!(matches!(parse_graph(&bad), Err(GraphIoError::Slot(_))));
    }
}
