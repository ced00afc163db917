//! Machine-readable reports.
//!
//! Coefficients are strings in the grammar accepted by
//! `ptvertex_core::arith::parse::parse_ratfunc`, so every value re-parses
//! exactly. Series are emitted in powers of `q`; Calabi-Yau series also
//! carry `minusQForm`, the same data in powers of `-q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use ptvertex_core::arith::parse::format_rational;
use ptvertex_core::arith::{Coefficient, QLaurentSeries};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Term {
    pub q_power: i64,
    pub coefficient: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Metadata {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub legs: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    pub mode: String,
    pub order: i64,
    /// `integer`, `rational` or `rational-function`.
    pub coefficient_ring: String,
    pub conjectural: bool,
    pub conjectures: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub insertions: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SeriesReport {
    pub metadata: Metadata,
    pub lowest: i64,
    pub truncation: i64,
    pub terms: Vec<Term>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minus_q_form: Option<Vec<Term>>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckRow {
    pub q_power: i64,
    /// `None` when the left side is undefined, e.g. a pole.
    pub lhs: Option<String>,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub metadata: Metadata,
    #[serde(rename = "match")]
    pub matched: bool,
    pub mismatch: Vec<i64>,
    pub rows: Vec<CheckRow>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ParityRow {
    pub index: usize,
    pub length: u32,
    pub dim: u32,
    pub euler: u64,
    pub cutoffs: [i32; 2],
    pub con: [i64; 2],
    pub even: bool,
    pub stable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ParityReport {
    pub metadata: Metadata,
    #[serde(rename = "match")]
    pub matched: bool,
    /// Indices of offending rows.
    pub mismatch: Vec<usize>,
    pub rows: Vec<ParityRow>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoxEntry {
    pub w: [i32; 3],
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pcid: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RecordEntry {
    pub legs: String,
    pub boxes: Vec<BoxEntry>,
    pub length: u32,
    pub dim: u32,
    pub euler: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnumerateReport {
    pub metadata: Metadata,
    pub records: Vec<RecordEntry>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Report {
    Series(SeriesReport),
    Check(CheckReport),
    Parity(ParityReport),
    Enumerate(EnumerateReport),
}

pub fn integer_terms(s: &QLaurentSeries<BigInt>) -> Vec<Term> {
    s.terms().map(|(n, c)| Term { q_power: n, coefficient: c.to_string() }).collect()
}

pub fn rational_terms(s: &QLaurentSeries<BigRational>) -> Vec<Term> {
    s.terms().map(|(n, c)| Term { q_power: n, coefficient: format_rational(c) }).collect()
}

pub fn display_terms<C: Coefficient + std::fmt::Display>(s: &QLaurentSeries<C>) -> Vec<Term> {
    s.terms().map(|(n, c)| Term { q_power: n, coefficient: c.to_string() }).collect()
}

/// The coefficients of `(-q)^n`.
pub fn minus_q_terms(s: &QLaurentSeries<BigInt>) -> Vec<Term> {
    integer_terms(&s.flip_sign())
}

fn csv_text<F: FnOnce(&mut csv::Writer<Vec<u8>>) -> csv::Result<()>>(f: F) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    f(&mut w).expect("writing to memory");
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8")
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = match self {
            Report::Series(r) => serde_json::to_string_pretty(r),
            Report::Check(r) => serde_json::to_string_pretty(r),
            Report::Parity(r) => serde_json::to_string_pretty(r),
            Report::Enumerate(r) => serde_json::to_string_pretty(r),
        }
        .expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        match self {
            Report::Series(r) => csv_text(|w| {
                w.write_record(["qPower", "coefficient"])?;
                for t in &r.terms {
                    w.write_record([t.q_power.to_string(), t.coefficient.clone()])?;
                }
                Ok(())
            }),
            Report::Check(r) => csv_text(|w| {
                w.write_record(["qPower", "lhs", "rhs", "match"])?;
                for row in &r.rows {
                    let ok = !r.mismatch.contains(&row.q_power);
                    w.write_record([
                        row.q_power.to_string(),
                        row.lhs.clone().unwrap_or_default(),
                        row.rhs.clone(),
                        ok.to_string(),
                    ])?;
                }
                Ok(())
            }),
            Report::Parity(r) => csv_text(|w| {
                w.write_record(["index", "length", "dim", "euler", "conN", "conN1", "even", "stable"])?;
                for row in &r.rows {
                    w.write_record([
                        row.index.to_string(),
                        row.length.to_string(),
                        row.dim.to_string(),
                        row.euler.to_string(),
                        row.con[0].to_string(),
                        row.con[1].to_string(),
                        row.even.to_string(),
                        row.stable.to_string(),
                    ])?;
                }
                Ok(())
            }),
            Report::Enumerate(r) => csv_text(|w| {
                w.write_record(["length", "dim", "euler", "boxes"])?;
                for rec in &r.records {
                    let boxes: Vec<String> = rec
                        .boxes
                        .iter()
                        .map(|b| {
                            let mut s = format!("{}:{}:{}:{}", b.w[0], b.w[1], b.w[2], b.kind);
                            if let Some(p) = b.pcid {
                                s.push_str(&format!(":{}", p));
                            }
                            s
                        })
                        .collect();
                    w.write_record([
                        rec.length.to_string(),
                        rec.dim.to_string(),
                        rec.euler.to_string(),
                        boxes.join(" "),
                    ])?;
                }
                Ok(())
            }),
        }
    }
}
