//! Theorem-replay suites and their reports.
//!
//! A suite expands into independent cases that run in parallel; the report
//! lists them sorted by case name (ties keep generation order), so it
//! depends only on the seed, limits and corpus. `ResourceLimit` verdicts (including graphs over the vertex limit)
//! become `skip-limit`, never pass or fail.

mod suites;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{decode_graph6, parse_graph_expr, Graph, GraphError};
use crate::solver::Limits;

/// Seed used by the randomized suites when none is given.
pub const DEFAULT_SEED: u64 = 20_240_601;

pub const SUITES: [&str; 10] = [
    "col-bound",
    "col-gap",
    "reduction",
    "union",
    "f-family",
    "bipartite-expansion",
    "complement-duality",
    "closure",
    "lift",
    "monotonicity-audit",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("unknown suite `{0}`; known suites: {list}", list = SUITES.join(", "))]
    UnknownSuite(String),
    #[error("corpus line {line}: {reason}")]
    Corpus { line: usize, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseStatus {
    Pass,
    Fail,
    SkipLimit,
}

impl CaseStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseStatus::Pass => "pass",
            CaseStatus::Fail => "fail",
            CaseStatus::SkipLimit => "skip-limit",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: String,
    pub expected: String,
    pub observed: String,
    pub status: CaseStatus,
    pub millis: u64,
    /// Noteworthy but non-failing finding, e.g. a non-interval winning set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub pass: usize,
    pub fail: usize,
    pub skip_limit: usize,
    pub flagged: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
    pub summary: SuiteSummary,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64, cases: Vec<CaseResult>) -> Self {
        let mut summary = SuiteSummary::default();
        for c in &cases {
            match c.status {
                CaseStatus::Pass => summary.pass += 1,
                CaseStatus::Fail => summary.fail += 1,
                CaseStatus::SkipLimit => summary.skip_limit += 1,
            }
            summary.flagged += c.flag.is_some() as usize;
        }
        SuiteReport { suite: suite.to_string(), seed, cases, summary }
    }

    /// No failing case.
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| c.status == CaseStatus::Fail)
    }

    /// Zeroes timings so that reports compare byte for byte.
    pub fn without_timings(mut self) -> Self {
        for c in &mut self.cases {
            c.millis = 0;
        }
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Columns: suite, case, expected, observed, status, millis.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["suite", "case", "expected", "observed", "status", "millis"]).expect("in-memory write");
        for c in &self.cases {
            let millis = c.millis.to_string();
            w.write_record([&self.suite, &c.case, &c.expected, &c.observed, c.status.as_str(), &millis])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }
}

/// One corpus line: one graph, or several separated by `;` (a pair `G; H`
/// for the product suites).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub label: String,
    pub graphs: Vec<Graph>,
}

/// Reads a graph given as JSON, a generator expression, or graph6.
pub fn parse_graph_text(text: &str) -> Result<Graph, GraphError> {
    let t = text.trim();
    if t.starts_with('{') {
        return Graph::from_json(t);
    }
    match parse_graph_expr(t) {
        Ok(g) => Ok(g),
        Err(expr_err) => decode_graph6(t).map_err(|_| expr_err),
    }
}

/// Parses a corpus file; blank lines and `#` comments are skipped.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, HarnessError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let graphs = line
            .split(';')
            .map(parse_graph_text)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| HarnessError::Corpus { line: i + 1, reason: e.to_string() })?;
        out.push(CorpusEntry { label: line.to_string(), graphs });
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub seed: u64,
    pub limits: Limits,
    /// Replaces the suite's built-in inputs.
    pub corpus: Option<Vec<CorpusEntry>>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: DEFAULT_SEED, limits: Limits::default(), corpus: None }
    }
}

/// Outcome of a single case before timing is attached.
pub(crate) struct Observed {
    pub observed: String,
    pub status: CaseStatus,
    pub flag: Option<String>,
}

impl Observed {
    pub fn new(observed: impl Into<String>, ok: bool) -> Self {
        let status = if ok { CaseStatus::Pass } else { CaseStatus::Fail };
        Observed { observed: observed.into(), status, flag: None }
    }

    pub fn skip(observed: impl Into<String>) -> Self {
        Observed { observed: observed.into(), status: CaseStatus::SkipLimit, flag: None }
    }
}

pub(crate) type Job = Box<dyn Fn() -> Observed + Send + Sync>;

pub(crate) struct Case {
    pub name: String,
    pub expected: String,
    pub run: Job,
}

impl Case {
    pub fn new(name: impl Into<String>, expected: impl Into<String>, run: impl Fn() -> Observed + Send + Sync + 'static) -> Self {
        Case { name: name.into(), expected: expected.into(), run: Box::new(run) }
    }
}

/// Runs the named suite.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    let cases = suites::build(name, cfg)?;
    let mut results: Vec<CaseResult> = cases
        .into_par_iter()
        .map(|c| {
            let start = Instant::now();
            let o = (c.run)();
            CaseResult {
                case: c.name,
                expected: c.expected,
                observed: o.observed,
                status: o.status,
                millis: start.elapsed().as_millis() as u64,
                flag: o.flag,
            }
        })
        .collect();
    results.sort_by(|a, b| a.case.cmp(&b.case));
    Ok(SuiteReport::new(name, cfg.seed, results))
}
