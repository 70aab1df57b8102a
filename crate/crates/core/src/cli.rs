//! Command-line surface: the family file format, JSON reports, and the
//! subcommand dispatcher.
//!
//! Family files are certificates: blocks must already be reduced
//! row echelon bases and are never silently canonicalized on load.
//! Exit codes are part of the contract so pipelines can assert on the
//! binary: 0 when every verdict is satisfied, 1 on a condition or
//! bound violation (or an internal inconsistency), 2 on usage, parse
//! and I/O errors.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Error;
use crate::family::{
    self, construct_extremal, Construction, Family, FamilyKind, FisherK, VerificationReport,
};
use crate::field::{FieldElem, FieldSpec};
use crate::matfq::MatrixFq;
use crate::qcount;
use crate::search::{self, ExtremalReport, InstanceOutcome, SearchConfig};
use crate::subspace::{enumerate_points, enumerate_subspaces, PointOrder, Subspace};

#[derive(Parser, Debug)]
#[command(
    name = "qtown",
    version,
    about = "Verify and search parity- and intersection-constrained subspace families over F_q"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print an exact q-analogue counting value
    Count {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum)]
        what: CountWhat,
        /// Lower index for qbinom
        #[arg(long)]
        k: Option<u64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List projective points, or all k-dimensional subspaces as a family file
    Enumerate {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        what: EnumerateWhat,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Emit one of the tight constructions as a family file
    Construct {
        /// f1: all lines; f2: all hyperplanes (n odd); f3: all
        /// codimension-1 subspaces of a fixed hyperplane (n even)
        #[arg(long, value_enum)]
        kind: ConstructArg,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        /// Write the family file here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a family file against a family kind
    Verify {
        #[arg(long)]
        family: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Intersection dimension for --kind fisher (0 = exploratory)
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exhaustive extremal search for a kind at (q, n)
    Search {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reverse-oddtown search probing the conjectured [n-1]_q bound
    Conjecture {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Searches at even q, where no theorem applies; bounds report "open"
    Explore {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        /// Restrict to one kind; default runs oddtown and reverse-oddtown
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum CountWhat {
    Qint,
    Qbinom,
    Subspaces,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum EnumerateWhat {
    Points,
    Subspaces,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ConstructArg {
    F1,
    F2,
    F3,
}

impl ConstructArg {
    fn construction(self) -> Construction {
        match self {
            ConstructArg::F1 => Construction::AllLines,
            ConstructArg::F2 => Construction::AllHyperplanes,
            ConstructArg::F3 => Construction::InsideHyperplane,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum KindArg {
    Fisher,
    Oddtown,
    ReverseOddtown,
}

impl KindArg {
    fn kind(self, k: Option<usize>) -> Result<FamilyKind, Error> {
        match self {
            KindArg::Fisher => {
                let k = k.ok_or_else(|| {
                    Error::Usage("--kind fisher requires --k".to_string())
                })?;
                Ok(FamilyKind::Fisher(FisherK::exploratory(k)))
            }
            KindArg::Oddtown => Ok(FamilyKind::Oddtown),
            KindArg::ReverseOddtown => Ok(FamilyKind::ReverseOddtown),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Also write the JSON report to this file
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SearchArgs {
    /// Abort the clique search after this many seconds; the best size
    /// found so far is then only a lower bound
    #[arg(long = "time-limit-s")]
    pub time_limit_s: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Make the witness the lexicographically smallest maximum clique
    /// (single-threaded runs only)
    #[arg(long)]
    pub deterministic: bool,
}

impl SearchArgs {
    fn config(&self, default_limit_s: Option<u64>) -> SearchConfig {
        SearchConfig {
            time_limit: self
                .time_limit_s
                .or(default_limit_s)
                .map(Duration::from_secs),
            worker_count: self.threads.max(1),
            deterministic_witness: self.deterministic,
        }
    }
}

/// One JSON report shape for every command; inapplicable fields are
/// omitted. Counts that can outgrow machine integers are decimal
/// strings, never floats.
#[derive(Serialize, Deserialize, Debug, Default, Clone)]
pub struct ReportJson {
    pub command: String,
    pub q: u64,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub what: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjectured_bound: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_status: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditions_hold: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_satisfied: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_witness: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parity_witness: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proven_optimal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_tight: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exceeds_conjectured: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes_explored: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point_order_hash: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instances: Option<Vec<ReportJson>>,
}

/// Stable digest of a point order, so reports pin the column labelling
/// of every incidence object.
pub fn point_order_hash(order: &PointOrder) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format!("{} {}\n", order.field().order(), order.ambient()));
    for p in order.points() {
        let line: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
        hasher.update(line.join(" "));
        hasher.update("\n");
    }
    format!("{:x}", hasher.finalize())
}

// ---------------------------------------------------------------------------
// family file format
// ---------------------------------------------------------------------------

/// Serializes a family: header "q n m", then one block per member — a
/// line "k" followed by k rows of n codes — with a blank line between
/// blocks. Byte-deterministic; member order is preserved.
pub fn family_to_string(family: &Family) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} {} {}",
        family.field().order(),
        family.ambient(),
        family.len()
    );
    for (i, member) in family.members().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "{}", member.dim());
        for r in 0..member.dim() {
            let row: Vec<String> = member
                .basis()
                .row(r)
                .iter()
                .map(|c| c.to_string())
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
    }
    out
}

pub fn write_family_file(family: &Family, path: &Path) -> Result<(), Error> {
    fs::write(path, family_to_string(family))?;
    Ok(())
}

/// Standalone textual form of one subspace: "k n" then the basis rows.
pub fn subspace_block(s: &Subspace) -> String {
    let mut out = String::new();
    let _ = write!(out, "{} {}", s.dim(), s.ambient());
    for r in 0..s.dim() {
        let row: Vec<String> = s.basis().row(r).iter().map(|c| c.to_string()).collect();
        let _ = write!(out, "\n{}", row.join(" "));
    }
    out
}

/// Parses the family file format. Lines starting with '#' are comments
/// and blank lines are ignored; blocks must be canonical RREF bases and
/// duplicates are rejected, so a loaded file is a checked certificate.
pub fn parse_family(text: &str) -> Result<Family, Error> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::ParseError {
            line: 1,
            message: "missing header".to_string(),
        })?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(Error::ParseError {
            line: line_no,
            message: format!("header must be \"q n m\", got {header:?}"),
        });
    }
    let parse_u64 = |s: &str, line: usize| {
        s.parse::<u64>().map_err(|_| Error::ParseError {
            line,
            message: format!("expected an integer, got {s:?}"),
        })
    };
    let q = parse_u64(parts[0], line_no)?;
    let n = parse_u64(parts[1], line_no)? as usize;
    let m = parse_u64(parts[2], line_no)? as usize;
    let field = FieldSpec::new(q)?;

    let mut members = Vec::with_capacity(m);
    for block in 0..m {
        let (k_line, k_text) = lines.next().ok_or_else(|| Error::ParseError {
            line: 0,
            message: format!("file ends before block {block}"),
        })?;
        let k = parse_u64(k_text, k_line)? as usize;
        if k > n {
            return Err(Error::ParseError {
                line: k_line,
                message: format!("block dimension {k} exceeds ambient {n}"),
            });
        }
        let mut rows: Vec<Vec<FieldElem>> = Vec::with_capacity(k);
        for _ in 0..k {
            let (row_line, row_text) = lines.next().ok_or_else(|| Error::ParseError {
                line: 0,
                message: format!("file ends inside block {block}"),
            })?;
            let codes: Vec<FieldElem> = row_text
                .split_whitespace()
                .map(|t| {
                    let v = parse_u64(t, row_line)?;
                    if v >= q {
                        return Err(Error::ParseError {
                            line: row_line,
                            message: format!("code {v} is not below q = {q}"),
                        });
                    }
                    Ok(v as FieldElem)
                })
                .collect::<Result<_, _>>()?;
            if codes.len() != n {
                return Err(Error::ParseError {
                    line: row_line,
                    message: format!("expected {n} codes, got {}", codes.len()),
                });
            }
            rows.push(codes);
        }
        let basis = if rows.is_empty() {
            MatrixFq::zero(field.clone(), 0, n)
        } else {
            MatrixFq::from_rows(field.clone(), &rows)
        };
        if !basis.is_canonical_basis() {
            return Err(Error::NotCanonical { block });
        }
        members.push(Subspace::from_canonical_basis(basis));
    }
    if let Some((line, text)) = lines.next() {
        return Err(Error::ParseError {
            line,
            message: format!("unexpected content after the last block: {text:?}"),
        });
    }
    Family::new(field, n, members)
}

pub fn read_family_file(path: &Path) -> Result<Family, Error> {
    let text = fs::read_to_string(path)?;
    parse_family(&text)
}

// ---------------------------------------------------------------------------
// command execution
// ---------------------------------------------------------------------------

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::InternalInconsistency(_) => 1,
        _ => 2,
    }
}

fn emit(report: &ReportJson, text: String, output: &OutputArgs) -> Result<(), Error> {
    match output.format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(report).unwrap()),
    }
    if let Some(path) = &output.out {
        fs::write(path, serde_json::to_string_pretty(report).unwrap())?;
    }
    Ok(())
}

fn verification_json(report: &VerificationReport, command: &str, q: u64, n: usize) -> ReportJson {
    ReportJson {
        command: command.to_string(),
        q,
        n,
        kind: Some(report.kind.to_string()),
        size: Some(report.size),
        bound: Some(report.bound.value.to_string()),
        conjectured_bound: report.bound.conjectured.as_ref().map(|c| c.to_string()),
        bound_status: Some(report.bound.status.as_str().to_string()),
        conditions_hold: Some(report.conditions_hold),
        bound_satisfied: Some(report.bound_satisfied),
        rank_witness: report.rank_witness,
        parity_witness: report.parity_witness,
        verdict: Some(if report.satisfied() { "satisfied" } else { "violated" }.to_string()),
        failure_detail: report.failure_detail.clone(),
        ..ReportJson::default()
    }
}

fn extremal_json(report: &ExtremalReport, command: &str) -> ReportJson {
    let order = enumerate_points(report.witness.field(), report.n);
    ReportJson {
        command: command.to_string(),
        q: report.q,
        n: report.n,
        kind: Some(report.kind.to_string()),
        size: Some(report.vertex_count),
        bound: Some(report.bound.value.to_string()),
        conjectured_bound: report.bound.conjectured.as_ref().map(|c| c.to_string()),
        bound_status: Some(report.bound.status.as_str().to_string()),
        max_size: Some(report.max_size),
        proven_optimal: Some(report.proven_optimal),
        bound_satisfied: Some(report.bound_satisfied),
        bound_tight: Some(report.bound_tight),
        exceeds_conjectured: Some(report.exceeds_conjectured),
        conditions_hold: Some(report.verification.conditions_hold),
        rank_witness: report.verification.rank_witness,
        parity_witness: report.verification.parity_witness,
        witness: Some(report.witness.members().iter().map(subspace_block).collect()),
        nodes_explored: Some(report.nodes_explored),
        elapsed_ms: Some(report.elapsed.as_millis() as u64),
        point_order_hash: Some(point_order_hash(&order)),
        verdict: Some(
            if report.bound_satisfied || report.bound.status != family::BoundStatus::Proven {
                "satisfied"
            } else {
                "violated"
            }
            .to_string(),
        ),
        ..ReportJson::default()
    }
}

fn extremal_text(report: &ExtremalReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "kind: {}  q: {}  n: {}",
        report.kind, report.q, report.n
    );
    let _ = writeln!(out, "candidates: {}", report.vertex_count);
    let _ = writeln!(
        out,
        "max family size: {}{}",
        report.max_size,
        if report.proven_optimal {
            " (optimal)"
        } else {
            " (lower bound; time limit hit)"
        }
    );
    let _ = writeln!(
        out,
        "bound: {} ({}){}",
        report.bound.value,
        report.bound.status.as_str(),
        if report.bound_tight { " - tight" } else { "" }
    );
    if let Some(c) = &report.bound.conjectured {
        let _ = writeln!(
            out,
            "conjectured bound: {c}{}",
            if report.exceeds_conjectured {
                " - EXCEEDED"
            } else {
                ""
            }
        );
    }
    let _ = writeln!(
        out,
        "nodes: {}  elapsed: {} ms",
        report.nodes_explored,
        report.elapsed.as_millis()
    );
    out
}

fn batch_json(command: &str, q: u64, n: usize, outcomes: &[InstanceOutcome]) -> ReportJson {
    let instances: Vec<ReportJson> = outcomes
        .iter()
        .map(|o| match o {
            InstanceOutcome::Completed(r) => extremal_json(r, "instance"),
            InstanceOutcome::Skipped { kind, q, n, reason } => ReportJson {
                command: "instance".to_string(),
                q: *q,
                n: *n,
                kind: Some(kind.to_string()),
                skip_reason: Some(reason.clone()),
                ..ReportJson::default()
            },
        })
        .collect();
    ReportJson {
        command: command.to_string(),
        q,
        n,
        instances: Some(instances),
        ..ReportJson::default()
    }
}

pub fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Count {
            q,
            n,
            what,
            k,
            output,
        } => {
            let value = match what {
                CountWhat::Qint => {
                    if q < 1 {
                        return Err(Error::Usage("qint needs q >= 1".to_string()));
                    }
                    qcount::q_int(n, q)
                }
                CountWhat::Qbinom => {
                    let k = k.ok_or_else(|| Error::Usage("qbinom requires --k".to_string()))?;
                    if q < 2 {
                        return Err(Error::Usage("qbinom needs q >= 2".to_string()));
                    }
                    qcount::q_binomial(n, k, q)?
                }
                CountWhat::Subspaces => {
                    if q < 2 {
                        return Err(Error::Usage("subspaces needs q >= 2".to_string()));
                    }
                    qcount::subspace_count(n, q)
                }
            };
            let report = ReportJson {
                command: "count".to_string(),
                q,
                n: n as usize,
                k: k.map(|k| k as usize),
                what: Some(format!("{what:?}").to_lowercase()),
                value: Some(value.to_string()),
                ..ReportJson::default()
            };
            emit(&report, format!("{value}\n"), &output)?;
            Ok(0)
        }

        Command::Enumerate {
            q,
            n,
            what,
            k,
            output,
        } => {
            let field = FieldSpec::new(q)?;
            match what {
                EnumerateWhat::Points => {
                    if n < 1 {
                        return Err(Error::Usage("points need n >= 1".to_string()));
                    }
                    let order = enumerate_points(&field, n);
                    let mut text = String::new();
                    for p in order.points() {
                        let row: Vec<String> =
                            p.coords().iter().map(|c| c.to_string()).collect();
                        let _ = writeln!(text, "{}", row.join(" "));
                    }
                    let report = ReportJson {
                        command: "enumerate".to_string(),
                        q,
                        n,
                        what: Some("points".to_string()),
                        value: Some(order.len().to_string()),
                        point_order_hash: Some(point_order_hash(&order)),
                        ..ReportJson::default()
                    };
                    emit(&report, text, &output)?;
                }
                EnumerateWhat::Subspaces => {
                    let k =
                        k.ok_or_else(|| Error::Usage("subspaces require --k".to_string()))?;
                    if k > n {
                        return Err(Error::OutOfRange {
                            n: n as u64,
                            k: k as u64,
                        });
                    }
                    let members: Vec<Subspace> = enumerate_subspaces(&field, n, k).collect();
                    let family = Family::new(field, n, members)?;
                    let report = ReportJson {
                        command: "enumerate".to_string(),
                        q,
                        n,
                        k: Some(k),
                        what: Some("subspaces".to_string()),
                        value: Some(family.len().to_string()),
                        ..ReportJson::default()
                    };
                    emit(&report, family_to_string(&family), &output)?;
                }
            }
            Ok(0)
        }

        Command::Construct { kind, q, n, out } => {
            let field = FieldSpec::new(q)?;
            let family = construct_extremal(kind.construction(), &field, n)?;
            let text = family_to_string(&family);
            match out {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(0)
        }

        Command::Verify {
            family: path,
            kind,
            k,
            output,
        } => {
            let family = read_family_file(&path)?;
            let kind = kind.kind(k)?;
            let report = family::verify_family(&family, kind);
            let q = family.field().order() as u64;
            let json = verification_json(&report, "verify", q, family.ambient());
            let mut text = String::new();
            let _ = writeln!(text, "kind: {}", report.kind);
            let _ = writeln!(text, "size: {}", report.size);
            let _ = writeln!(
                text,
                "bound: {} ({})",
                report.bound.value,
                report.bound.status.as_str()
            );
            if let Some(c) = &report.bound.conjectured {
                let _ = writeln!(text, "conjectured bound: {c}");
            }
            let _ = writeln!(
                text,
                "conditions: {}",
                if report.conditions_hold { "hold" } else { "violated" }
            );
            if let Some(w) = report.rank_witness {
                let _ = writeln!(text, "rank witness: {w}");
            }
            if let Some(w) = report.parity_witness {
                let _ = writeln!(text, "parity witness: {w}");
            }
            if let Some(detail) = &report.failure_detail {
                let _ = writeln!(text, "failure: {detail}");
            }
            let _ = writeln!(
                text,
                "verdict: {}",
                if report.satisfied() { "satisfied" } else { "violated" }
            );
            emit(&json, text, &output)?;
            Ok(if report.satisfied() { 0 } else { 1 })
        }

        Command::Search {
            kind,
            q,
            n,
            k,
            search,
            output,
        } => {
            let field = FieldSpec::new(q)?;
            let kind = kind.kind(k)?;
            let cfg = search.config(None);
            let report = search::search_extremal(kind, &field, n, &cfg)?;
            let json = extremal_json(&report, "search");
            emit(&json, extremal_text(&report), &output)?;
            Ok(0)
        }

        Command::Conjecture {
            q,
            n,
            search,
            output,
        } => {
            let field = FieldSpec::new(q)?;
            if !field.is_odd() {
                return Err(Error::Usage(
                    "the conjectured bound concerns odd q; use `explore` for even q".to_string(),
                ));
            }
            let cfg = search.config(Some(600));
            let batch = search::run_conjecture_experiment(&[(q, n)], &cfg);
            let json = batch_json("conjecture", q, n, &batch.instances);
            let text = batch_text(&batch.instances);
            emit(&json, text, &output)?;
            Ok(batch_exit_code(&batch.instances))
        }

        Command::Explore {
            q,
            n,
            kind,
            search,
            output,
        } => {
            let field = FieldSpec::new(q)?;
            if field.is_odd() {
                return Err(Error::Usage(
                    "explore probes even q only; use `search` or `conjecture` for odd q"
                        .to_string(),
                ));
            }
            let kinds: Vec<FamilyKind> = match kind {
                Some(ka) => {
                    if ka == KindArg::Fisher {
                        return Err(Error::Usage(
                            "explore covers the parity kinds; use `search --kind fisher`"
                                .to_string(),
                        ));
                    }
                    vec![ka.kind(None)?]
                }
                None => vec![FamilyKind::Oddtown, FamilyKind::ReverseOddtown],
            };
            let cfg = search.config(Some(600));
            let batch = search::run_even_q_exploration(&[(q, n)], &kinds, &cfg);
            let json = batch_json("explore", q, n, &batch.instances);
            let text = batch_text(&batch.instances);
            emit(&json, text, &output)?;
            Ok(batch_exit_code(&batch.instances))
        }
    }
}

fn batch_text(outcomes: &[InstanceOutcome]) -> String {
    let mut text = String::new();
    for outcome in outcomes {
        match outcome {
            InstanceOutcome::Completed(r) => {
                text.push_str(&extremal_text(r));
                if r.bound.status != family::BoundStatus::Proven {
                    let _ = writeln!(text, "note: no proven bound at this q; status is open");
                }
            }
            InstanceOutcome::Skipped { kind, q, n, reason } => {
                let _ = writeln!(text, "skipped {kind} at q={q} n={n}: {reason}");
            }
        }
        text.push('\n');
    }
    text
}

fn batch_exit_code(outcomes: &[InstanceOutcome]) -> i32 {
    let violated = outcomes.iter().any(|o| match o {
        InstanceOutcome::Completed(r) => {
            r.bound.status == family::BoundStatus::Proven && !r.bound_satisfied
        }
        InstanceOutcome::Skipped { .. } => false,
    });
    if violated {
        1
    } else {
        0
    }
}
