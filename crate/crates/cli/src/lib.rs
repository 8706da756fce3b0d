//! Library side of the `contrasim` command: loading models, running checks
//! and rendering reports.

mod dot;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use contrasim::csgame::{self, Certificate};
use contrasim::ingest::{self, AutError, CcsError};
use contrasim::relations::{self, Relation};
use contrasim::Lts;
use serde::Serialize;

pub use dot::{dot_digraph, export_game_dot};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Aut { path: PathBuf, source: AutError },
    #[error("{path}: {source}")]
    Ccs { path: PathBuf, source: CcsError },
    #[error("{0}")]
    Designator(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Ccs,
    Aut,
}

impl InputFormat {
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()? {
            "ccs" => Some(InputFormat::Ccs),
            "aut" => Some(InputFormat::Aut),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Notion {
    Contrasim,
    WeakSim,
    WeakBisim,
    StrongBisim,
    #[serde(rename = "naive-contrasim-1step")]
    NaiveContrasim1Step,
    BoundedWordGame,
}

impl Notion {
    pub fn name(self) -> &'static str {
        match self {
            Notion::Contrasim => "contrasim",
            Notion::WeakSim => "weak-sim",
            Notion::WeakBisim => "weak-bisim",
            Notion::StrongBisim => "strong-bisim",
            Notion::NaiveContrasim1Step => "naive-contrasim-1step",
            Notion::BoundedWordGame => "bounded-word-game",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Preorder,
    Equivalence,
}

#[derive(Clone, Debug)]
pub struct CheckRequest {
    pub input: PathBuf,
    /// Inferred from the file extension when absent.
    pub format: Option<InputFormat>,
    /// Definition names for CCS input, state indices for `.aut` input.
    pub lhs: String,
    pub rhs: String,
    pub notion: Notion,
    pub direction: Direction,
    pub max_states: usize,
    pub word_bound: Option<usize>,
    pub emit_certificate: bool,
    pub emit_game_dot: Option<PathBuf>,
    pub emit_json: Option<PathBuf>,
    /// Report every duration as zero, making reports byte-stable.
    pub omit_timings: bool,
}

impl CheckRequest {
    pub fn new(input: impl Into<PathBuf>, lhs: impl Into<String>, rhs: impl Into<String>) -> Self {
        CheckRequest {
            input: input.into(),
            format: None,
            lhs: lhs.into(),
            rhs: rhs.into(),
            notion: Notion::Contrasim,
            direction: Direction::Preorder,
            max_states: ingest::DEFAULT_MAX_STATES,
            word_bound: None,
            emit_certificate: false,
            emit_game_dot: None,
            emit_json: None,
            omit_timings: false,
        }
    }
}

/// A loaded system with both designators resolved to states.
#[derive(Debug)]
pub struct Model {
    pub lts: Lts,
    pub lhs: usize,
    pub rhs: usize,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn resolve_format(path: &Path, format: Option<InputFormat>) -> Result<InputFormat, CliError> {
    format
        .or_else(|| InputFormat::from_path(path))
        .ok_or_else(|| {
            CliError::Usage(format!(
                "cannot infer the format of {}; pass --format",
                path.display()
            ))
        })
}

/// Loads an `.aut` file.
pub fn load_aut(path: &Path) -> Result<(Lts, usize), CliError> {
    ingest::parse_aut(&read(path)?).map_err(|source| CliError::Aut {
        path: path.to_owned(),
        source,
    })
}

/// Loads a CCS file and expands the named roots into one system.
pub fn load_ccs(
    path: &Path,
    roots: &[&str],
    max_states: usize,
) -> Result<(Lts, Vec<usize>), CliError> {
    let program = ingest::parse_ccs(&read(path)?).map_err(|source| CliError::Ccs {
        path: path.to_owned(),
        source,
    })?;
    if let Some(missing) = roots.iter().find(|r| program.get(r).is_none()) {
        let known: Vec<&str> = program.names().collect();
        return Err(CliError::Designator(format!(
            "no definition named `{missing}` in {} (defined: {})",
            path.display(),
            known.join(", ")
        )));
    }
    ingest::expand_ccs_roots(&program, roots, max_states).map_err(|source| CliError::Ccs {
        path: path.to_owned(),
        source,
    })
}

fn aut_state(lts: &Lts, designator: &str) -> Result<usize, CliError> {
    let p: usize = designator
        .parse()
        .map_err(|_| CliError::Designator(format!("`{designator}` is not a state index")))?;
    lts.check_state(p)
        .map_err(|e| CliError::Designator(e.to_string()))?;
    Ok(p)
}

pub fn load_model(request: &CheckRequest) -> Result<Model, CliError> {
    match resolve_format(&request.input, request.format)? {
        InputFormat::Aut => {
            let (lts, _) = load_aut(&request.input)?;
            let lhs = aut_state(&lts, &request.lhs)?;
            let rhs = aut_state(&lts, &request.rhs)?;
            Ok(Model { lts, lhs, rhs })
        }
        InputFormat::Ccs => {
            let (lts, roots) = load_ccs(
                &request.input,
                &[&request.lhs, &request.rhs],
                request.max_states,
            )?;
            Ok(Model {
                lts,
                lhs: roots[0],
                rhs: roots[1],
            })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CertificateReport {
    Relation { pairs: Vec<(String, String)> },
    Formula { formula: String },
}

impl CertificateReport {
    fn relation(lts: &Lts, rel: &Relation) -> Self {
        let pairs = rel
            .iter()
            .map(|(p, q)| (lts.display_state(p), lts.display_state(q)))
            .collect();
        CertificateReport::Relation { pairs }
    }
}

/// The outcome of one ordered check `lhs ≤ rhs`.
#[derive(Clone, Debug, Serialize)]
pub struct DirectionResult {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
    pub certificate: Option<CertificateReport>,
    pub game_positions: Option<usize>,
    pub game_moves: Option<usize>,
    pub solve_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub verdict: bool,
    pub notion: Notion,
    pub direction: Direction,
    pub lhs: String,
    pub rhs: String,
    pub certificate: Option<CertificateReport>,
    pub game_positions: Option<usize>,
    pub game_moves: Option<usize>,
    pub solve_ms: f64,
    pub results: Vec<DirectionResult>,
    pub total_ms: f64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.verdict {
            0
        } else {
            1
        }
    }
}

/// Exit code together with the report, or the error that prevented one.
#[derive(Debug)]
pub struct CheckOutcome {
    pub exit_code: i32,
    pub report: Result<Report, CliError>,
}

fn millis(start: Instant, omit: bool) -> f64 {
    if omit {
        0.0
    } else {
        start.elapsed().as_secs_f64() * 1000.0
    }
}

fn check_direction(
    request: &CheckRequest,
    lts: &Lts,
    p: usize,
    q: usize,
    dot: Option<&mut Option<String>>,
) -> DirectionResult {
    let start = Instant::now();
    let mut result = DirectionResult {
        lhs: lts.display_state(p),
        rhs: lts.display_state(q),
        holds: false,
        certificate: None,
        game_positions: None,
        game_moves: None,
        solve_ms: 0.0,
    };
    let greatest = |rel: Relation, result: &mut DirectionResult| {
        result.holds = rel.contains(p, q);
        if result.holds {
            result.certificate = Some(CertificateReport::relation(lts, &rel));
        }
    };
    match request.notion {
        Notion::Contrasim => {
            let check = csgame::check_preorder(lts, p, q);
            result.solve_ms = millis(start, request.omit_timings);
            result.holds = check.holds();
            result.game_positions = Some(check.game.position_count());
            result.game_moves = Some(check.game.move_count());
            result.certificate = Some(match check.certificate() {
                Certificate::Relation(rel) => CertificateReport::relation(lts, &rel),
                Certificate::Formula(f) => CertificateReport::Formula {
                    formula: f.display(lts).to_string(),
                },
            });
            if let Some(slot) = dot {
                *slot = Some(export_game_dot(check.game.graph(), &check.game.labels(lts)));
            }
            return result;
        }
        Notion::WeakSim => greatest(relations::weak_sim_oracle(lts), &mut result),
        Notion::WeakBisim => greatest(relations::weak_bisim_oracle(lts), &mut result),
        Notion::StrongBisim => greatest(relations::strong_bisim_oracle(lts), &mut result),
        Notion::NaiveContrasim1Step => {
            greatest(csgame::naive_single_step_relation(lts), &mut result)
        }
        Notion::BoundedWordGame => {
            let bound = request.word_bound.expect("validated before checking");
            result.holds = csgame::bounded_word_game_preorder(lts, p, q, bound);
        }
    }
    result.solve_ms = millis(start, request.omit_timings);
    result
}

fn validate(request: &CheckRequest) -> Result<(), CliError> {
    match (request.notion, request.word_bound) {
        (Notion::BoundedWordGame, None) => {
            return Err(CliError::Usage(
                "--notion bounded-word-game requires --word-bound".into(),
            ))
        }
        (Notion::BoundedWordGame, Some(_)) | (_, None) => {}
        (other, Some(_)) => {
            return Err(CliError::Usage(format!(
                "--word-bound only applies to bounded-word-game, not {}",
                other.name()
            )))
        }
    }
    if request.emit_game_dot.is_some() && request.notion != Notion::Contrasim {
        return Err(CliError::Usage(
            "--emit-game-dot requires --notion contrasim".into(),
        ));
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn run(request: &CheckRequest) -> Result<Report, CliError> {
    let start = Instant::now();
    validate(request)?;
    let model = load_model(request)?;
    let lts = &model.lts;
    let mut dot = None;
    let mut results = vec![check_direction(
        request,
        lts,
        model.lhs,
        model.rhs,
        Some(&mut dot),
    )];
    if request.direction == Direction::Equivalence {
        results.push(check_direction(request, lts, model.rhs, model.lhs, None));
    }
    let verdict = results.iter().all(|r| r.holds);
    let certificate = results
        .iter()
        .find(|r| !r.holds)
        .unwrap_or(&results[0])
        .certificate
        .clone();
    let sum =
        |f: fn(&DirectionResult) -> Option<usize>| results.iter().map(f).sum::<Option<usize>>();
    let report = Report {
        verdict,
        notion: request.notion,
        direction: request.direction,
        lhs: request.lhs.clone(),
        rhs: request.rhs.clone(),
        certificate,
        game_positions: sum(|r| r.game_positions),
        game_moves: sum(|r| r.game_moves),
        solve_ms: results.iter().map(|r| r.solve_ms).sum(),
        results,
        total_ms: millis(start, request.omit_timings),
    };
    if let (Some(path), Some(dot)) = (&request.emit_game_dot, dot) {
        write_file(path, &dot)?;
    }
    if let Some(path) = &request.emit_json {
        write_file(path, &report_json(&report))?;
    }
    Ok(report)
}

/// Runs one check. Exit code 0 means the relation holds, 1 that it fails,
/// 2 that the request could not be answered.
pub fn run_check(request: &CheckRequest) -> CheckOutcome {
    let report = run(request);
    let exit_code = match &report {
        Ok(r) => r.exit_code(),
        Err(e) => e.exit_code(),
    };
    CheckOutcome { exit_code, report }
}

/// Pretty-printed JSON with fields in declaration order.
pub fn report_json(report: &Report) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports serialize");
    text.push('\n');
    text
}

fn relation_symbol(notion: Notion, direction: Direction) -> String {
    let base = match notion {
        Notion::Contrasim => "C",
        Notion::WeakSim => "WS",
        Notion::WeakBisim => "WB",
        Notion::StrongBisim => "SB",
        Notion::NaiveContrasim1Step => "C1",
        Notion::BoundedWordGame => "Cw",
    };
    match direction {
        Direction::Preorder => format!("<={base}"),
        Direction::Equivalence => format!("~{base}"),
    }
}

fn certificate_line(cert: &CertificateReport) -> String {
    match cert {
        CertificateReport::Formula { formula } => format!("formula: {formula}"),
        CertificateReport::Relation { pairs } => {
            let pairs: Vec<String> = pairs.iter().map(|(p, q)| format!("({p}, {q})")).collect();
            format!("relation: {{{}}}", pairs.join(", "))
        }
    }
}

/// Human-readable report. Certificates are included on request.
pub fn render_human(report: &Report, with_certificate: bool, with_timings: bool) -> String {
    let mut out = String::new();
    let symbol = relation_symbol(report.notion, Direction::Preorder);
    for r in &report.results {
        let _ = write!(
            out,
            "{} {symbol} {}: {}",
            r.lhs,
            r.rhs,
            if r.holds { "holds" } else { "fails" }
        );
        if let (Some(pos), Some(moves)) = (r.game_positions, r.game_moves) {
            let _ = write!(out, " ({pos} positions, {moves} moves");
            if with_timings {
                let _ = write!(out, ", {:.3} ms", r.solve_ms);
            }
            out.push(')');
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "verdict: {} {} {} is {}",
        report.lhs,
        relation_symbol(report.notion, report.direction),
        report.rhs,
        report.verdict
    );
    if with_certificate {
        if let Some(cert) = &report.certificate {
            let _ = writeln!(out, "{}", certificate_line(cert));
        }
    }
    if with_timings {
        let _ = writeln!(out, "total: {:.3} ms", report.total_ms);
    }
    out
}
