use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::path::Path;

use pmgraph::graph::GraphError;
use pmgraph::pm::MultiplicativeBasis;
use pmgraph::{PmError, WeightedDigraph};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const DEFAULT_MAX_DEGREE: u64 = 64;

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(s) => write!(f, "{s}"),
            CliError::Internal(s) => write!(f, "internal invariant violated: {s}"),
        }
    }
}

impl From<PmError> for CliError {
    fn from(e: PmError) -> Self {
        match e {
            PmError::Invariant(_) | PmError::Linalg(_) | PmError::GroupAxiom(_) | PmError::Coboundary(_) => {
                CliError::Internal(e.to_string())
            }
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

pub struct Context {
    pub oracle_bound: usize,
    pub max_degree: u64,
    argv: Vec<String>,
}

impl Context {
    pub fn new(oracle_bound: usize, argv: Vec<String>) -> Result<Self, CliError> {
        let max_degree = match std::env::var("PMGRAPH_MAX_DEGREE") {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Input(format!("PMGRAPH_MAX_DEGREE must be a nonnegative integer, got {s:?}")))?,
            Err(_) => DEFAULT_MAX_DEGREE,
        };
        Ok(Context {
            oracle_bound,
            max_degree,
            argv: argv.into_iter().skip(1).collect(),
        })
    }

    pub fn report(&self) -> Report {
        Report {
            command: self.argv.clone(),
            inputs: BTreeMap::new(),
            results: serde_json::Map::new(),
            warnings: Vec::new(),
            lines: Vec::new(),
        }
    }

    /// Reads a graph file and records its digest.
    pub fn load(&self, path: &Path, rep: &mut Report) -> Result<WeightedDigraph, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        rep.inputs.insert(path.display().to_string(), digest(text.as_bytes()));
        let g = WeightedDigraph::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let deg = g.arrows().iter().map(|a| a.weight.total_degree()).max().unwrap_or(0);
        self.check_degree(deg, "input weight")?;
        Ok(g)
    }

    pub fn check_degree(&self, deg: u64, what: &str) -> Result<(), CliError> {
        if deg > self.max_degree {
            return Err(CliError::Input(format!(
                "{what} total degree {deg} exceeds PMGRAPH_MAX_DEGREE={}",
                self.max_degree
            )));
        }
        Ok(())
    }

    pub fn checked_basis(&self, b: MultiplicativeBasis) -> Result<MultiplicativeBasis, CliError> {
        self.check_degree(b.max_total_degree(), "basis entry")?;
        Ok(b)
    }
}

pub fn digest(bytes: &[u8]) -> String {
    let h = Sha256::digest(bytes);
    h.iter().map(|b| format!("{b:02x}")).collect()
}

/// Vertex by index or label.
pub fn vertex(g: &WeightedDigraph, s: &str) -> Result<usize, CliError> {
    if let Ok(i) = s.parse::<usize>() {
        if i < g.n() {
            return Ok(i);
        }
        return Err(CliError::Input(format!("vertex index {i} out of range (n = {})", g.n())));
    }
    g.vertex_index(s).ok_or_else(|| CliError::Input(format!("unknown vertex {s:?}")))
}

pub struct Report {
    pub command: Vec<String>,
    pub inputs: BTreeMap<String, String>,
    pub results: serde_json::Map<String, Value>,
    pub warnings: Vec<String>,
    pub lines: Vec<String>,
}

impl Report {
    pub fn set(&mut self, key: &str, v: Value) {
        self.results.insert(key.to_string(), v);
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "warnings": self.warnings,
        })
    }
}

pub struct Outcome {
    pub report: Report,
    /// A negative mathematical verdict, still a successful run.
    pub negative: bool,
    /// Raw text for stdout in human mode, in place of the report lines.
    pub raw: Option<String>,
}

impl Outcome {
    pub fn ok(report: Report) -> Self {
        Outcome {
            report,
            negative: false,
            raw: None,
        }
    }

    pub fn verdict(report: Report, positive: bool) -> Self {
        Outcome {
            report,
            negative: !positive,
            raw: None,
        }
    }

    pub fn code(&self) -> u8 {
        u8::from(self.negative)
    }

    /// Write errors (a closed pipe) are ignored.
    pub fn emit(&self, json: bool) {
        let mut out = std::io::stdout().lock();
        let mut err = std::io::stderr().lock();
        for w in &self.report.warnings {
            let _ = writeln!(err, "warning: {w}");
        }
        if json {
            let text = serde_json::to_string_pretty(&self.report.to_value()).expect("serializable report");
            let _ = writeln!(out, "{text}");
            return;
        }
        let (raw, lines): (&mut dyn Write, &mut dyn Write) = match &self.raw {
            Some(s) => {
                let _ = write!(out, "{s}");
                (&mut out, &mut err)
            }
            None => (&mut err, &mut out),
        };
        let _ = raw.flush();
        for l in &self.report.lines {
            let _ = writeln!(lines, "{l}");
        }
    }
}
