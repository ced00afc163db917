//! Argument parsing and dispatch.
//!
//! Exit codes: 0 success (check disagreements are reported in `mismatch`),
//! 2 bad input, 3 degenerate evaluation point, 4 internal cancellation
//! failure.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use ptvertex_core::arith::parse::{format_rational, parse_point};
use ptvertex_core::arith::{Numeric, QLaurentSeries, Symbolic};
use ptvertex_core::boxconfig::{enumerate_components_with, BoxKind, ComponentRecord};
use ptvertex_core::characters::con_parity_pair;
use ptvertex_core::dt::{
    correspondence_check_with, cy_correspondence_check_with, dt_cy_vertex_series_with,
    dt_equivariant_vertex_series_with, CorrespondenceReport,
};
use ptvertex_core::exec::Executor;
use ptvertex_core::localization::{
    cy_specialization_check_with, cy_vertex_series_with, descendent_vertex_series_with, pt_vertex_series_with, Mode,
    SeriesValues, VertexSeries,
};
use ptvertex_core::partitions::{renormalized_volume, LegTriple};
use ptvertex_core::toric::{
    assemble_cy_dt_with, assemble_cy_pt_with, assemble_descendents_with, CurveClassSpec, ToricGraph,
};
use ptvertex_core::Error;

use crate::exec::RayonExecutor;
use crate::graph_io::{load_graph, GraphIoError};
use crate::points::{seeded_point, DEFAULT_SEED};
use crate::report::{
    display_terms, integer_terms, minus_q_terms, rational_terms, BoxEntry, CheckReport, CheckRow, EnumerateReport,
    Metadata, ParityReport, ParityRow, RecordEntry, Report, SeriesReport,
};

const CONJECTURES: [&str; 2] = ["smooth-fixed-loci", "tangent-parity"];

#[derive(Parser, Debug)]
#[command(name = "ptvertex", version, about = "Stable pairs vertex computations on toric 3-folds")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; 0 or unset uses every core.
    #[arg(long, global = true, env = "PTVERTEX_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeKind {
    Symbolic,
    Numeric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theory {
    Pt,
    Dt,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the fixed components of a vertex.
    Enumerate(EnumerateArgs),
    /// Vertex series.
    #[command(subcommand)]
    Vertex(VertexCommand),
    /// Consistency checks.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Global partition functions.
    #[command(subcommand)]
    Toric(ToricCommand),
}

#[derive(Subcommand, Debug)]
pub enum VertexCommand {
    /// Signed Euler characteristic count on the Calabi-Yau plane.
    Cy(CyArgs),
    /// Equivariant vertex.
    Equivariant(SeriesArgs),
    /// Equivariant vertex with descendent insertions.
    Descendent(DescendentArgs),
    /// Donaldson-Thomas vertex.
    Dt(DtArgs),
}

#[derive(Subcommand, Debug)]
pub enum CheckCommand {
    /// Parity and cut-off stability of the constant term functional.
    ConParity(EnumerateArgs),
    /// Stable pairs against Donaldson-Thomas.
    Correspondence(Box<DtArgs>),
    /// Equivariant vertex restricted to the Calabi-Yau plane.
    CySpecialization(CyArgs),
}

#[derive(Subcommand, Debug)]
pub enum ToricCommand {
    /// Sum over edge assignments of a toric graph.
    Assemble(AssembleArgs),
}

fn legs_arg(s: &str) -> Result<LegTriple, String> {
    s.parse::<LegTriple>().map_err(|e| e.to_string())
}

fn point_arg(s: &str) -> Result<[BigRational; 3], String> {
    parse_point(s).map_err(|e| e.to_string())
}

fn beta_arg(s: &str) -> Result<CurveClassSpec, String> {
    let mut spec = CurveClassSpec::default();
    for part in s.split(',') {
        let (c, d) = part.split_once('=').ok_or_else(|| format!("expected class=degree, got {:?}", part))?;
        let c: u32 = c.trim().parse().map_err(|_| format!("bad class id {:?}", c))?;
        let d: u32 = d.trim().parse().map_err(|_| format!("bad degree {:?}", d))?;
        if spec.degrees.insert(c, d).is_some() {
            return Err(format!("class {} given twice", c));
        }
    }
    Ok(spec)
}

#[derive(Args, Debug)]
pub struct LegsArg {
    /// Leg partitions, e.g. "1;2;1" or "2,1;-;-".
    #[arg(long, value_parser = legs_arg, allow_hyphen_values = true)]
    pub legs: LegTriple,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "bound")]
pub struct Bound {
    /// Largest component length.
    #[arg(long)]
    pub max_length: Option<u32>,
    /// Largest q power.
    #[arg(long, allow_negative_numbers = true)]
    pub order: Option<i64>,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[command(flatten)]
    pub legs: LegsArg,
    #[command(flatten)]
    pub bound: Bound,
}

#[derive(Args, Debug)]
pub struct ModeArgs {
    /// Evaluation mode; numeric without --eval uses a seeded point.
    #[arg(long, value_enum)]
    pub mode: Option<ModeKind>,
    /// Evaluation point s1,s2,s3.
    #[arg(long, value_parser = point_arg, allow_hyphen_values = true)]
    pub eval: Option<[BigRational; 3]>,
    /// Seed for the numeric point.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct CyArgs {
    #[command(flatten)]
    pub legs: LegsArg,
    #[arg(long, allow_negative_numbers = true)]
    pub order: i64,
    /// Accept results that rely on conjectures.
    #[arg(long)]
    pub assume_conjectures: bool,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[command(flatten)]
    pub legs: LegsArg,
    #[arg(long, allow_negative_numbers = true)]
    pub order: i64,
    #[command(flatten)]
    pub mode: ModeArgs,
}

#[derive(Args, Debug)]
pub struct DescendentArgs {
    #[command(flatten)]
    pub legs: LegsArg,
    #[arg(long, allow_negative_numbers = true)]
    pub order: i64,
    /// Descendent indices i1,i2,...
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub tau: Vec<i32>,
    #[command(flatten)]
    pub mode: ModeArgs,
}

#[derive(Args, Debug)]
pub struct DtArgs {
    #[command(flatten)]
    pub legs: LegsArg,
    #[arg(long, allow_negative_numbers = true)]
    pub order: i64,
    /// Calabi-Yau signed counts instead of equivariant weights.
    #[arg(long)]
    pub cy: bool,
    #[command(flatten)]
    pub mode: ModeArgs,
}

#[derive(Args, Debug)]
pub struct AssembleArgs {
    /// Graph file or preset name (conifold, localP2, p3).
    #[arg(long)]
    pub graph: String,
    /// Curve class, e.g. "0=1" or "0=1,1=2".
    #[arg(long, value_parser = beta_arg)]
    pub beta: CurveClassSpec,
    #[arg(long, allow_negative_numbers = true)]
    pub order: i64,
    #[arg(long, value_enum, default_value_t = Theory::Pt)]
    pub theory: Theory,
    /// Equivariant assembly even on a Calabi-Yau graph.
    #[arg(long)]
    pub equivariant: bool,
    /// Descendent indices; implies --equivariant.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub tau: Vec<i32>,
    #[command(flatten)]
    pub mode: ModeArgs,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Graph(#[from] GraphIoError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e {
                Error::Parse(_) | Error::Precondition(_) | Error::InvalidGraph(_) => 2,
                Error::DegenerateEvaluationPoint { .. } => 3,
                Error::NonCancellation { .. }
                | Error::NegativeObstruction { .. }
                | Error::DivisionByZero
                | Error::NonInvertible(_)
                | Error::InvalidConfiguration(_) => 4,
            },
            CliError::Graph(_) | CliError::Usage(_) => 2,
        }
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {}\n", e) },
    };
    match pool.install(|| execute(&cli.command)) {
        Ok(report) => {
            let stdout = match cli.format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
            };
            Outcome { code: 0, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {}\n", e) },
    }
}

/// Runs a parsed command on the current rayon pool.
pub fn execute(cmd: &Command) -> Result<Report, CliError> {
    let exec = RayonExecutor;
    match cmd {
        Command::Enumerate(a) => enumerate(a, &exec),
        Command::Vertex(VertexCommand::Cy(a)) => vertex_cy(a, &exec),
        Command::Vertex(VertexCommand::Equivariant(a)) => {
            let (mode, meta) = resolve_mode(&a.mode, "vertex equivariant", &a.legs.legs, a.order)?;
            let s = pt_vertex_series_with(&a.legs.legs, a.order, &mode, &exec)?;
            Ok(equivariant_report(meta, &s))
        }
        Command::Vertex(VertexCommand::Descendent(a)) => {
            let (mode, mut meta) = resolve_mode(&a.mode, "vertex descendent", &a.legs.legs, a.order)?;
            meta.insertions = a.tau.clone();
            let s = descendent_vertex_series_with(&a.legs.legs, &a.tau, a.order, &mode, &exec)?;
            Ok(equivariant_report(meta, &s))
        }
        Command::Vertex(VertexCommand::Dt(a)) => vertex_dt(a, &exec),
        Command::Check(CheckCommand::ConParity(a)) => con_parity(a, &exec),
        Command::Check(CheckCommand::Correspondence(a)) => correspondence(a, &exec),
        Command::Check(CheckCommand::CySpecialization(a)) => cy_specialization(a, &exec),
        Command::Toric(ToricCommand::Assemble(a)) => assemble(a, &exec),
    }
}

fn base_metadata(command: &str, legs: &LegTriple, order: i64, mode: &str, ring: &str) -> Metadata {
    Metadata {
        command: command.into(),
        legs: Some(legs.to_string()),
        mode: mode.into(),
        order,
        coefficient_ring: ring.into(),
        ..Metadata::default()
    }
}

fn mark_conjectural(meta: &mut Metadata, conjectural: bool) {
    meta.conjectural = conjectural;
    meta.conjectures = if conjectural { CONJECTURES.iter().map(|s| s.to_string()).collect() } else { Vec::new() };
}

/// `--eval` forces numeric mode; `--mode numeric` alone uses the seeded
/// point; anything else is symbolic.
fn pick_mode(args: &ModeArgs) -> Result<(Mode, Option<u64>), CliError> {
    match (args.mode, &args.eval) {
        (Some(ModeKind::Symbolic), Some(_)) => {
            Err(CliError::Usage("--eval cannot be combined with --mode symbolic".into()))
        }
        (_, Some(p)) => Ok((Mode::Numeric(p.clone()), None)),
        (Some(ModeKind::Numeric), None) => {
            let seed = args.seed.unwrap_or(DEFAULT_SEED);
            Ok((Mode::Numeric(seeded_point(seed)), Some(seed)))
        }
        _ => Ok((Mode::Symbolic, None)),
    }
}

fn mode_metadata(meta: &mut Metadata, mode: &Mode, seed: Option<u64>) {
    match mode {
        Mode::Symbolic => {
            meta.mode = "symbolic".into();
            meta.coefficient_ring = "rational-function".into();
        }
        Mode::Numeric(p) => {
            meta.mode = "numeric".into();
            meta.coefficient_ring = "rational".into();
            meta.seed = seed;
            meta.point = Some(p.iter().map(format_rational).collect());
        }
    }
}

fn resolve_mode(args: &ModeArgs, command: &str, legs: &LegTriple, order: i64) -> Result<(Mode, Metadata), CliError> {
    let (mode, seed) = pick_mode(args)?;
    let mut meta = base_metadata(command, legs, order, "", "");
    mode_metadata(&mut meta, &mode, seed);
    Ok((mode, meta))
}

fn equivariant_report(metadata: Metadata, s: &VertexSeries) -> Report {
    let terms = match &s.values {
        SeriesValues::Symbolic(x) => display_terms(x),
        SeriesValues::Numeric(x) => rational_terms(x),
    };
    Report::Series(SeriesReport {
        metadata,
        lowest: s.values.lowest(),
        truncation: s.values.truncation(),
        terms,
        minus_q_form: None,
        warnings: Vec::new(),
    })
}

fn integer_report(metadata: Metadata, s: &QLaurentSeries<num_bigint::BigInt>, warnings: Vec<String>) -> Report {
    Report::Series(SeriesReport {
        metadata,
        lowest: s.lowest(),
        truncation: s.truncation(),
        terms: integer_terms(s),
        minus_q_form: Some(minus_q_terms(s)),
        warnings,
    })
}

fn max_length(legs: &LegTriple, bound: &Bound) -> Result<u32, CliError> {
    match (bound.max_length, bound.order) {
        (Some(m), _) => Ok(m),
        (None, Some(o)) => {
            let vol = renormalized_volume(legs);
            if o < vol {
                return Err(Error::Precondition(format!("order {} below the renormalized volume {}", o, vol)).into());
            }
            Ok((o - vol) as u32)
        }
        (None, None) => Err(CliError::Usage("one of --max-length, --order is required".into())),
    }
}

fn record_entry(rec: &ComponentRecord) -> RecordEntry {
    let boxes = rec
        .config
        .boxes
        .iter()
        .map(|(w, k)| BoxEntry {
            w: w.0,
            kind: k.name().into(),
            pcid: match k {
                BoxKind::IIILine { pcid } => Some(*pcid),
                _ => None,
            },
        })
        .collect();
    RecordEntry {
        legs: rec.config.legs.to_string(),
        boxes,
        length: rec.length,
        dim: rec.dimension,
        euler: rec.euler_char,
    }
}

fn enumerate<X: Executor>(a: &EnumerateArgs, exec: &X) -> Result<Report, CliError> {
    let legs = &a.legs.legs;
    let max = max_length(legs, &a.bound)?;
    let recs = enumerate_components_with(legs, max, exec);
    let order = renormalized_volume(legs) + max as i64;
    let metadata = base_metadata("enumerate", legs, order, "combinatorial", "integer");
    Ok(Report::Enumerate(EnumerateReport { metadata, records: recs.iter().map(record_entry).collect() }))
}

fn vertex_cy<X: Executor>(a: &CyArgs, exec: &X) -> Result<Report, CliError> {
    let s = cy_vertex_series_with(&a.legs.legs, a.order, exec)?;
    let mut meta = base_metadata("vertex cy", &a.legs.legs, a.order, "cy", "integer");
    mark_conjectural(&mut meta, s.conjectural);
    Ok(integer_report(meta, &s.series, Vec::new()))
}

fn vertex_dt<X: Executor>(a: &DtArgs, exec: &X) -> Result<Report, CliError> {
    if a.cy {
        let s = dt_cy_vertex_series_with(&a.legs.legs, a.order, exec);
        let meta = base_metadata("vertex dt", &a.legs.legs, a.order, "cy", "integer");
        return Ok(integer_report(meta, &s, Vec::new()));
    }
    let (mode, meta) = resolve_mode(&a.mode, "vertex dt", &a.legs.legs, a.order)?;
    let s = dt_equivariant_vertex_series_with(&a.legs.legs, a.order, &mode, exec)?;
    Ok(equivariant_report(meta, &s))
}

fn con_parity<X: Executor>(a: &EnumerateArgs, exec: &X) -> Result<Report, CliError> {
    let legs = &a.legs.legs;
    let max = max_length(legs, &a.bound)?;
    let recs = enumerate_components_with(legs, max, exec);
    let pairs = exec.map(&recs, con_parity_pair);
    let n = legs.extent() + 2;
    let asserted = legs.nonempty_count() <= 2;
    let mut rows = Vec::new();
    let mut mismatch = Vec::new();
    for (i, (rec, (c0, c1))) in recs.iter().zip(pairs).enumerate() {
        let even = c0.rem_euclid(2) == 0 && c1.rem_euclid(2) == 0;
        let stable = c0.rem_euclid(2) == c1.rem_euclid(2);
        if !stable || (asserted && !even) {
            mismatch.push(i);
        }
        rows.push(ParityRow {
            index: i,
            length: rec.length,
            dim: rec.dimension,
            euler: rec.euler_char,
            cutoffs: [n, n + 1],
            con: [c0, c1],
            even,
            stable,
        });
    }
    let order = renormalized_volume(legs) + max as i64;
    let mut metadata = base_metadata("check con-parity", legs, order, "combinatorial", "integer");
    let mut warnings = Vec::new();
    if !asserted {
        mark_conjectural(&mut metadata, true);
        warnings.push("three nonempty legs: evenness is reported, not asserted".into());
    }
    Ok(Report::Parity(ParityReport { metadata, matched: mismatch.is_empty(), mismatch, rows, warnings }))
}

fn check_report(metadata: Metadata, r: CorrespondenceReport) -> Report {
    Report::Check(CheckReport {
        metadata,
        matched: r.matches(),
        mismatch: r.mismatches,
        rows: r.rows.into_iter().map(|(n, l, d)| CheckRow { q_power: n, lhs: Some(l), rhs: d }).collect(),
        warnings: Vec::new(),
    })
}

fn correspondence<X: Executor>(a: &DtArgs, exec: &X) -> Result<Report, CliError> {
    let legs = &a.legs.legs;
    if a.cy {
        let r = cy_correspondence_check_with(legs, a.order, exec)?;
        let mut meta = base_metadata("check correspondence", legs, a.order, "cy", "integer");
        mark_conjectural(&mut meta, legs.nonempty_count() == 3);
        return Ok(check_report(meta, r));
    }
    let (mode, mut meta) = resolve_mode(&a.mode, "check correspondence", legs, a.order)?;
    meta.command = "check correspondence".into();
    let r = correspondence_check_with(legs, a.order, &mode, exec)?;
    Ok(check_report(meta, r))
}

fn cy_specialization<X: Executor>(a: &CyArgs, exec: &X) -> Result<Report, CliError> {
    let legs = &a.legs.legs;
    let r = cy_specialization_check_with(legs, a.order, a.assume_conjectures, exec)?;
    let mut meta = base_metadata("check cy-specialization", legs, a.order, "symbolic", "rational");
    mark_conjectural(&mut meta, r.conjectural);
    let rows = r
        .rows
        .iter()
        .map(|(n, got, want)| CheckRow { q_power: *n, lhs: got.as_ref().map(format_rational), rhs: want.to_string() })
        .collect();
    let mut warnings = Vec::new();
    if r.rows.iter().any(|(_, got, _)| got.is_none()) {
        warnings.push("some coefficients do not restrict to a constant on the Calabi-Yau plane".into());
    }
    Ok(Report::Check(CheckReport { metadata: meta, matched: r.matches(), mismatch: r.mismatches, rows, warnings }))
}

fn beta_label(beta: &CurveClassSpec) -> String {
    let parts: Vec<String> = beta.degrees.iter().map(|(c, d)| format!("{}={}", c, d)).collect();
    parts.join(",")
}

fn assemble<X: Executor>(a: &AssembleArgs, exec: &X) -> Result<Report, CliError> {
    let g: ToricGraph = load_graph(&a.graph)?;
    let equivariant = a.equivariant || !a.tau.is_empty() || !g.cy || a.mode.mode.is_some() || a.mode.eval.is_some();
    let mut meta = Metadata {
        command: "toric assemble".into(),
        graph: Some(a.graph.clone()),
        beta: Some(beta_label(&a.beta)),
        order: a.order,
        insertions: a.tau.clone(),
        ..Metadata::default()
    };
    if !equivariant {
        let out = match a.theory {
            Theory::Pt => assemble_cy_pt_with(&g, &a.beta, a.order, exec)?,
            Theory::Dt => assemble_cy_dt_with(&g, &a.beta, a.order, exec)?,
        };
        meta.mode = "cy".into();
        meta.coefficient_ring = "integer".into();
        mark_conjectural(&mut meta, out.conjectural);
        return Ok(integer_report(meta, &out.series, out.warnings));
    }
    if a.theory == Theory::Dt {
        return Err(CliError::Usage("equivariant assembly supports --theory pt only".into()));
    }
    let (mode, seed) = pick_mode(&a.mode)?;
    mode_metadata(&mut meta, &mode, seed);
    let mut warnings = Vec::new();
    if a.beta.is_zero() {
        warnings.push("beta = 0: only the empty curve contributes".to_string());
    }
    let (lowest, truncation, terms) = match &mode {
        Mode::Symbolic => {
            let s = assemble_descendents_with(&g, &a.beta, &a.tau, a.order, &Symbolic, exec)?;
            (s.lowest(), s.truncation(), display_terms(&s))
        }
        Mode::Numeric(p) => {
            let s = assemble_descendents_with(&g, &a.beta, &a.tau, a.order, &Numeric::new(p.clone()), exec)?;
            (s.lowest(), s.truncation(), rational_terms(&s))
        }
    };
    Ok(Report::Series(SeriesReport { metadata: meta, lowest, truncation, terms, minus_q_form: None, warnings }))
}
