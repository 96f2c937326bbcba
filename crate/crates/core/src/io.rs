//! Hypergraph text format and the JSON assignment record.
//!
//! The text format is a header `n m k` followed by `m` lines of the form
//! `c v1 v2 ... vj`, with the color first. Ids are one-based. Lines starting
//! with `#` and blank lines are ignored.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{EccError, Result};
use crate::model::{check_edge, evaluate, ColorAssignment, Edge, EdgeColoredHypergraph, Variant, VariantKind};

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>().map_err(|_| EccError::Parse {
        line,
        msg: format!("expected a non-negative integer for {what}, found '{tok}'"),
    })
}

fn parse_id(tok: &str, line: usize, what: &str) -> Result<usize> {
    match parse_usize(tok, line, what)? {
        0 => Err(EccError::Parse {
            line,
            msg: format!("{what} ids start at 1"),
        }),
        id => Ok(id - 1),
    }
}

pub fn parse_hypergraph(text: &str) -> Result<EdgeColoredHypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(EccError::Parse {
        line: 0,
        msg: "missing header 'n m k'".into(),
    })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 {
        return Err(EccError::Parse {
            line: hline,
            msg: format!("header must be 'n m k', found '{header}'"),
        });
    }
    let n = parse_usize(toks[0], hline, "n")?;
    let m = parse_usize(toks[1], hline, "m")?;
    let k = parse_usize(toks[2], hline, "k")?;

    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        if edges.len() == m {
            return Err(EccError::Parse {
                line,
                msg: format!("more than {m} edge lines"),
            });
        }
        let mut toks = text.split_whitespace();
        let color = parse_id(toks.next().unwrap_or_default(), line, "color")?;
        let members = toks.map(|t| parse_id(t, line, "node")).collect::<Result<Vec<_>>>()?;
        check_edge(n, k, color, &members).map_err(|msg| EccError::Parse { line, msg })?;
        let mut members = members;
        members.sort_unstable();
        edges.push(Edge { color, members });
    }
    if edges.len() != m {
        return Err(EccError::Parse {
            line: text.lines().count(),
            msg: format!("expected {m} edge lines, found {}", edges.len()),
        });
    }
    Ok(EdgeColoredHypergraph::from_checked_edges(n, k, edges))
}

pub fn read_hypergraph(path: impl AsRef<Path>) -> Result<EdgeColoredHypergraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    parse_hypergraph(&text).map_err(|e| match e {
        EccError::Parse { line, msg } => EccError::ParseFile {
            path: path.to_path_buf(),
            line,
            msg,
        },
        other => other,
    })
}

pub fn format_hypergraph(h: &EdgeColoredHypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.num_nodes(), h.num_edges(), h.num_colors());
    for e in h.edges() {
        let _ = write!(out, "{}", e.color + 1);
        for v in &e.members {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    out
}

/// JSON form of a ratio: finite values as numbers, infinity as `"inf"`.
pub fn ratio_value(x: f64) -> Value {
    if x.is_finite() {
        serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
    } else {
        Value::String("inf".into())
    }
}

/// Serialized assignment with one-based node and color ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssignmentRecord {
    pub variant: VariantKind,
    pub budget: usize,
    pub colors: BTreeMap<usize, Vec<usize>>,
    pub deleted: Vec<usize>,
    pub mistakes: usize,
    pub satisfied: usize,
    pub budget_used: usize,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl AssignmentRecord {
    pub fn new(h: &EdgeColoredHypergraph, variant: Variant, assignment: &ColorAssignment) -> Self {
        let report = evaluate(h, assignment, variant.kind);
        let colors = (0..assignment.num_nodes())
            .map(|v| (v + 1, assignment.colors(v).iter().map(|c| c + 1).collect()))
            .collect();
        Self {
            variant: variant.kind,
            budget: variant.budget,
            colors,
            deleted: assignment.deleted_nodes().into_iter().map(|v| v + 1).collect(),
            mistakes: report.mistakes,
            satisfied: report.satisfied,
            budget_used: report.budget_used,
            extra: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.insert(key.to_string(), value.into());
        self
    }

    /// Rebuilds the zero-based assignment for a hypergraph with `num_nodes` nodes.
    pub fn to_assignment(&self, num_nodes: usize) -> Result<ColorAssignment> {
        let mut a = ColorAssignment::empty(num_nodes);
        for (&v, cs) in &self.colors {
            if v == 0 || v > num_nodes || cs.contains(&0) {
                return Err(EccError::InvalidParameter(format!(
                    "node {v} out of range in assignment"
                )));
            }
            a.set_colors(v - 1, cs.iter().map(|c| c - 1).collect());
        }
        for &v in &self.deleted {
            if v == 0 || v > num_nodes {
                return Err(EccError::InvalidParameter(format!("deleted node {v} out of range")));
            }
            a.delete(v - 1);
        }
        Ok(a)
    }
}
