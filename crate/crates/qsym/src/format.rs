//! JSON, CSV and plain-text renderings of chain objects and reports.
//!
//! Exact scalars travel as canonical Laurent text (`"1/1*s^-1 + 1/1*s^1"`),
//! numeric ones as JSON numbers. Documents are built in a fixed order so
//! identical inputs give identical bytes.

use std::fmt::Write as _;

use qsym_core::decompose::SectorReport;
use qsym_core::dicke::QState;
use qsym_core::qscalar::{BackendTag, QScalar, Scalar};
use qsym_core::report::{Check, Outcome, VerificationReport};
use qsym_core::sparse::SparseMatrix;
use qsym_core::symgroup::{crossing_counts, Permutation};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::config::Format;
use crate::error::{CliError, CliResult};

/// Scalars that can be written to and read from documents.
pub trait TextScalar: Scalar {
    fn to_value(&self) -> Value;
    fn from_value(value: &Value) -> CliResult<Self>;
    /// Canonical text, used in CSV cells.
    fn to_text(&self) -> String;
    /// Human-oriented text for the pretty format.
    fn to_pretty(&self) -> String;
}

impl TextScalar for QScalar {
    fn to_value(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_value(value: &Value) -> CliResult<Self> {
        match value {
            Value::String(s) => Ok(s.parse()?),
            other => Err(CliError::Usage(format!("expected canonical scalar text, got {other}"))),
        }
    }

    fn to_text(&self) -> String {
        self.to_string()
    }

    fn to_pretty(&self) -> String {
        self.pretty()
    }
}

impl TextScalar for f64 {
    fn to_value(&self) -> Value {
        serde_json::Number::from_f64(*self).map_or(Value::Null, Value::Number)
    }

    fn from_value(value: &Value) -> CliResult<Self> {
        value
            .as_f64()
            .ok_or_else(|| CliError::Usage(format!("expected a number, got {value}")))
    }

    fn to_text(&self) -> String {
        self.to_string()
    }

    fn to_pretty(&self) -> String {
        format!("{self:.6}")
    }
}

fn backend_name(tag: BackendTag) -> &'static str {
    match tag {
        BackendTag::Exact => "exact",
        BackendTag::Numeric(_) => "numeric",
    }
}

fn backend_q(tag: BackendTag) -> Option<f64> {
    match tag {
        BackendTag::Numeric(q) => Some(q),
        BackendTag::Exact => None,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub row: usize,
    pub col: usize,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagramDoc {
    pub word: Vec<usize>,
    pub m_counts: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PermutationDoc {
    /// One-line notation, 1-based.
    pub images: Vec<usize>,
    pub diagram: DiagramDoc,
}

impl PermutationDoc {
    pub fn new(sigma: &Permutation) -> CliResult<Self> {
        let diagram = crossing_counts(sigma.reduced_word(), sigma.len())?;
        Ok(Self {
            images: sigma.images_one_based(),
            diagram: DiagramDoc {
                word: diagram.word,
                m_counts: diagram.m_counts,
            },
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub object: String,
    pub backend: String,
    pub q: Option<f64>,
    pub n: usize,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation: Option<PermutationDoc>,
    pub entries: Vec<EntryDoc>,
}

impl MatrixDoc {
    pub fn new<S: TextScalar>(object: &str, n: usize, tag: BackendTag, m: &SparseMatrix<S>) -> Self {
        Self {
            object: object.to_string(),
            backend: backend_name(tag).to_string(),
            q: backend_q(tag),
            n,
            dim: m.dim(),
            permutation: None,
            entries: m
                .triplets()
                .filter(|(_, _, v)| !v.is_zero())
                .map(|(row, col, v)| EntryDoc { row, col, value: v.to_value() })
                .collect(),
        }
    }

    pub fn matrix<S: TextScalar>(&self) -> CliResult<SparseMatrix<S>> {
        let triplets = self
            .entries
            .iter()
            .map(|e| {
                if e.row >= self.dim || e.col >= self.dim {
                    return Err(CliError::Usage(format!("entry ({}, {}) outside dimension {}", e.row, e.col, self.dim)));
                }
                Ok((e.row, e.col, S::from_value(&e.value)?))
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(SparseMatrix::from_triplets(self.dim, triplets))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDoc {
    pub backend: String,
    pub q: Option<f64>,
    pub n: usize,
    pub m: Option<usize>,
    pub amplitudes: Vec<Value>,
    pub norm_sq: Value,
}

impl StateDoc {
    pub fn new<S: TextScalar>(tag: BackendTag, state: &QState<S>) -> Self {
        Self {
            backend: backend_name(tag).to_string(),
            q: backend_q(tag),
            n: state.n_sites,
            m: state.level,
            amplitudes: state.amplitudes.iter().map(TextScalar::to_value).collect(),
            norm_sq: state.norm_sq.to_value(),
        }
    }

    pub fn state<S: TextScalar>(&self) -> CliResult<QState<S>> {
        let amplitudes = self.amplitudes.iter().map(S::from_value).collect::<CliResult<Vec<_>>>()?;
        let mut state = QState::from_amplitudes(self.n, amplitudes)?;
        state.level = self.m;
        state.norm_sq = S::from_value(&self.norm_sq)?;
        Ok(state)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub identity_name: String,
    pub backend: String,
    pub q_values: Vec<f64>,
    /// `None` when the residual could not be computed.
    pub max_residual: Option<f64>,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl From<&Check> for CheckDoc {
    fn from(c: &Check) -> Self {
        Self {
            identity_name: c.identity.clone(),
            backend: backend_name(c.backend).to_string(),
            q_values: c.q_values(),
            max_residual: c.max_residual.is_finite().then_some(c.max_residual),
            pass: c.passed(),
            skipped: match &c.outcome {
                Outcome::Skipped(why) => Some(why.clone()),
                _ => None,
            },
            detail: c.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub suite: String,
    pub n: usize,
    pub pass: bool,
    pub max_residual: Option<f64>,
    pub checks: Vec<CheckDoc>,
}

impl ReportDoc {
    pub fn new(suite: &str, n: usize, report: &VerificationReport) -> Self {
        let worst = report.max_residual();
        Self {
            suite: suite.to_string(),
            n,
            pass: report.passed(),
            max_residual: worst.is_finite().then_some(worst),
            checks: report.checks.iter().map(CheckDoc::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorDoc {
    pub two_j: u32,
    pub multiplicity: usize,
    pub dimension: usize,
    pub casimir_eigenvalue: f64,
    pub expected_eigenvalue: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectorReportDoc {
    pub n: usize,
    pub q: f64,
    pub total_dimension: usize,
    pub max_eigenvalue_deviation: f64,
    pub sectors: Vec<SectorDoc>,
}

impl From<&SectorReport> for SectorReportDoc {
    fn from(r: &SectorReport) -> Self {
        Self {
            n: r.n_sites,
            q: r.q,
            total_dimension: r.total_dimension(),
            max_eigenvalue_deviation: r.max_eigenvalue_deviation(),
            sectors: r
                .sectors
                .iter()
                .map(|s| SectorDoc {
                    two_j: s.two_j,
                    multiplicity: s.multiplicity,
                    dimension: s.dimension_check,
                    casimir_eigenvalue: s.casimir_eigenvalue,
                    expected_eigenvalue: s.expected_eigenvalue,
                })
                .collect(),
        }
    }
}

/// Anything the CLI can print.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Document {
    Matrix(MatrixDoc),
    State(StateDoc),
    Report(ReportDoc),
    Sectors(SectorReportDoc),
}

pub fn to_json(doc: &Document) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    Ok(text)
}

pub fn from_json(text: &str) -> CliResult<Document> {
    Ok(serde_json::from_str(text)?)
}

pub fn render(doc: &Document, format: Format) -> CliResult<String> {
    match format {
        Format::Json => to_json(doc),
        Format::Csv => to_csv(doc),
        Format::Pretty => Ok(to_pretty(doc)),
    }
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn opt_text<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or_else(String::new, ToString::to_string)
}

pub fn to_csv(doc: &Document) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    match doc {
        Document::Matrix(m) => {
            w.write_record(["row", "col", "value"])?;
            for e in &m.entries {
                w.write_record([e.row.to_string(), e.col.to_string(), value_text(&e.value)])?;
            }
        }
        Document::State(s) => {
            w.write_record(["index", "amplitude"])?;
            for (i, a) in s.amplitudes.iter().enumerate() {
                w.write_record([i.to_string(), value_text(a)])?;
            }
            w.write_record(["norm_sq".to_string(), value_text(&s.norm_sq)])?;
        }
        Document::Report(r) => {
            w.write_record(["identity_name", "backend", "q_values", "max_residual", "pass"])?;
            for c in &r.checks {
                let qs: Vec<String> = c.q_values.iter().map(f64::to_string).collect();
                w.write_record([
                    c.identity_name.clone(),
                    c.backend.clone(),
                    qs.join(";"),
                    opt_text(&c.max_residual),
                    c.pass.to_string(),
                ])?;
            }
        }
        Document::Sectors(r) => {
            w.write_record(["two_j", "multiplicity", "dimension", "casimir_eigenvalue", "expected_eigenvalue"])?;
            for s in &r.sectors {
                w.write_record([
                    s.two_j.to_string(),
                    s.multiplicity.to_string(),
                    s.dimension.to_string(),
                    s.casimir_eigenvalue.to_string(),
                    s.expected_eigenvalue.to_string(),
                ])?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Usage(e.to_string()))
}

fn pretty_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.parse::<QScalar>().map_or_else(|_| s.clone(), |x| x.pretty()),
        Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), |x| x.to_pretty()),
        other => other.to_string(),
    }
}

fn two_j_text(two_j: u32) -> String {
    if two_j.is_multiple_of(2) {
        (two_j / 2).to_string()
    } else {
        format!("{two_j}/2")
    }
}

/// Basis label with site 1 first, e.g. `↑↓↓`.
fn spin_label(index: usize, n: usize) -> String {
    (0..n).map(|k| if index >> (n - 1 - k) & 1 == 0 { '↑' } else { '↓' }).collect()
}

pub fn to_pretty(doc: &Document) -> String {
    let mut out = String::new();
    match doc {
        Document::Matrix(m) => {
            let _ = writeln!(out, "{} (n={}, {}{})", m.object, m.n, m.backend, q_suffix(m.q));
            if let Some(p) = &m.permutation {
                let _ = writeln!(out, "images {:?}  word {:?}  m_counts {:?}", p.images, p.diagram.word, p.diagram.m_counts);
            }
            let mut grid = vec![vec!["0".to_string(); m.dim]; m.dim];
            for e in &m.entries {
                grid[e.row][e.col] = pretty_value(&e.value);
            }
            let width = grid.iter().flatten().map(String::len).max().unwrap_or(1);
            for row in grid {
                let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                let _ = writeln!(out, "[ {} ]", cells.join("  "));
            }
        }
        Document::State(s) => {
            let level = s.m.map_or_else(String::new, |m| format!(", m={m}"));
            let _ = writeln!(out, "state (n={}{level}, {}{})", s.n, s.backend, q_suffix(s.q));
            for (i, a) in s.amplitudes.iter().enumerate() {
                let _ = writeln!(out, "  |{}>  {}", spin_label(i, s.n), pretty_value(a));
            }
            let _ = writeln!(out, "  norm_sq  {}", pretty_value(&s.norm_sq));
        }
        Document::Report(r) => {
            let _ = writeln!(out, "suite {} (n={}): {}", r.suite, r.n, if r.pass { "PASS" } else { "FAIL" });
            for c in &r.checks {
                let status = match (&c.skipped, c.pass) {
                    (Some(_), _) => "skip",
                    (None, true) => "ok",
                    (None, false) => "FAIL",
                };
                let qs: Vec<String> = c.q_values.iter().map(f64::to_string).collect();
                let residual = c.max_residual.map_or_else(|| "-".to_string(), |r| format!("{r:.2e}"));
                let _ = write!(out, "  {status:<4} {:<48} {:<8} q=[{}] {residual}", c.identity_name, c.backend, qs.join(","));
                if let Some(why) = c.skipped.as_ref().or(c.detail.as_ref()) {
                    let _ = write!(out, "  ({why})");
                }
                out.push('\n');
            }
        }
        Document::Sectors(r) => {
            let _ = writeln!(out, "Casimir sectors (n={}, q={})", r.n, r.q);
            let _ = writeln!(out, "  {:>5} {:>5} {:>22} {:>22}", "j", "mult", "eigenvalue", "[j][j+1]");
            for s in &r.sectors {
                let _ = writeln!(
                    out,
                    "  {:>5} {:>5} {:>22.12} {:>22.12}",
                    two_j_text(s.two_j),
                    s.multiplicity,
                    s.casimir_eigenvalue,
                    s.expected_eigenvalue
                );
            }
            let _ = writeln!(out, "  total dimension {}", r.total_dimension);
        }
    }
    out
}

fn q_suffix(q: Option<f64>) -> String {
    q.map_or_else(String::new, |q| format!(" q={q}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use qsym_core::qscalar::{q_number, Backend, Exact, Numeric};
    use qsym_core::symgroup::q_transposition;

    #[test]
    fn exact_matrix_round_trip() {
        let w = q_transposition(1, 2, &Exact::new()).unwrap();
        let doc = MatrixDoc::new("qtransposition", 2, BackendTag::Exact, w.matrix());
        assert_eq!(doc.matrix::<QScalar>().unwrap(), *w.matrix());
        assert_eq!(doc.entries.len(), 4);
        let text = to_json(&Document::Matrix(doc.clone())).unwrap();
        assert_eq!(from_json(&text).unwrap(), Document::Matrix(doc));
    }

    #[test]
    fn numeric_values_are_bit_exact() {
        let b = Numeric::new(1.0 / 3.0).unwrap();
        let w = q_transposition(1, 3, &b).unwrap();
        let doc = MatrixDoc::new("qtransposition", 3, b.tag(), w.matrix());
        let back = match from_json(&to_json(&Document::Matrix(doc)).unwrap()).unwrap() {
            Document::Matrix(m) => m.matrix::<f64>().unwrap(),
            other => panic!("{other:?}"),
        };
        assert_eq!(back, *w.matrix());
    }

    #[test]
    fn state_csv_and_pretty() {
        let d = qsym_core::dicke::q_dicke(2, 1, &Exact::new()).unwrap();
        let doc = Document::State(StateDoc::new(BackendTag::Exact, &d));
        let csv = to_csv(&doc).unwrap();
        assert!(csv.starts_with("index,amplitude\n0,0\n"));
        assert!(csv.ends_with(&format!("norm_sq,{}\n", q_number(2))));
        let pretty = to_pretty(&doc);
        assert!(pretty.contains("|↑↓>  q^(-1/4)"), "{pretty}");
    }
}
