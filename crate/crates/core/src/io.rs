//! Text graph files, weight files and JSON documents.
//!
//! A graph file is a header line `n m` followed by `m` lines `u v` with
//! 0-based ids. A weight file has `n` lines `v w(v)`.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use crate::error::{GraphError, ParseError};
use crate::fatminor::PatternGraph;
use crate::graph::{SeparatorCertificate, WeightedGraph};
use crate::pipeline::Outcome;

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        message: message.into(),
    }
}

fn numbers(line: &str) -> impl Iterator<Item = &str> {
    line.split_whitespace()
}

fn parse_usize(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| syntax(line, format!("{what} `{tok}` is not a non-negative integer")))
}

/// Non-empty lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn parse_graph_str(text: &str) -> Result<WeightedGraph, ParseError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| syntax(1, "missing header `n m`"))?;
    let mut toks = numbers(header);
    let n = parse_usize(toks.next(), hl, "vertex count")?;
    let m = parse_usize(toks.next(), hl, "edge count")?;
    if toks.next().is_some() {
        return Err(syntax(hl, "header has extra fields"));
    }
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut last_line = hl;
    for (ln, line) in lines.by_ref().take(m) {
        last_line = ln;
        let mut toks = numbers(line);
        let u = parse_usize(toks.next(), ln, "endpoint")?;
        let v = parse_usize(toks.next(), ln, "endpoint")?;
        if toks.next().is_some() {
            return Err(syntax(ln, "edge line has extra fields"));
        }
        let err = |source| ParseError::Graph { line: ln, source };
        if u == v {
            return Err(err(GraphError::SelfLoop(u)));
        }
        for w in [u, v] {
            if w >= n {
                return Err(err(GraphError::VertexOutOfRange { vertex: w, n }));
            }
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(err(GraphError::DuplicateEdge(u.min(v), u.max(v))));
        }
        edges.push((u, v));
    }
    if edges.len() < m {
        return Err(syntax(
            last_line + 1,
            format!("expected {m} edges, found {}", edges.len()),
        ));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(syntax(ln, format!("more than the declared {m} edges")));
    }
    WeightedGraph::from_edges(n, &edges).map_err(|source| ParseError::Graph { line: hl, source })
}

pub fn parse_weights_str(text: &str, n: usize) -> Result<Vec<f64>, ParseError> {
    let mut weight = vec![f64::NAN; n];
    let mut count = 0;
    let mut last = 0;
    for (ln, line) in content_lines(text) {
        last = ln;
        let mut toks = numbers(line);
        let v = parse_usize(toks.next(), ln, "vertex")?;
        let tok = toks.next().ok_or_else(|| syntax(ln, "missing weight"))?;
        let w: f64 = tok
            .parse()
            .map_err(|_| syntax(ln, format!("weight `{tok}` is not a number")))?;
        if toks.next().is_some() {
            return Err(syntax(ln, "weight line has extra fields"));
        }
        let err = |source| ParseError::Graph { line: ln, source };
        if v >= n {
            return Err(err(GraphError::VertexOutOfRange { vertex: v, n }));
        }
        if !(w >= 0.0 && w.is_finite()) {
            return Err(err(GraphError::InvalidWeight { vertex: v, weight: w }));
        }
        if !weight[v].is_nan() {
            return Err(syntax(ln, format!("vertex {v} weighted twice")));
        }
        weight[v] = w;
        count += 1;
    }
    if count != n {
        return Err(syntax(last + 1, format!("expected {n} weights, found {count}")));
    }
    Ok(weight)
}

pub fn parse_graph(path: &Path, weight_path: Option<&Path>) -> Result<WeightedGraph, ParseError> {
    let g = parse_graph_str(&fs::read_to_string(path)?)?;
    match weight_path {
        None => Ok(g),
        Some(wp) => {
            let w = parse_weights_str(&fs::read_to_string(wp)?, g.n())?;
            Ok(g.with_weights(w).expect("weights validated"))
        }
    }
}

pub fn parse_pattern_str(text: &str) -> Result<PatternGraph, ParseError> {
    Ok(PatternGraph::from_graph(&parse_graph_str(text)?))
}

pub fn emit_graph(g: &WeightedGraph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn emit_weights(g: &WeightedGraph) -> String {
    g.weights()
        .iter()
        .enumerate()
        .map(|(v, w)| format!("{v} {w}\n"))
        .collect()
}

pub fn certificate_json(cert: &SeparatorCertificate) -> Value {
    json!({"result": "separator", "S": cert.separator, "centers": cert.centers, "radius": cert.radius})
}

pub fn parse_certificate(value: &Value) -> Result<SeparatorCertificate, ParseError> {
    Ok(serde_json::from_value(value.clone())?)
}

/// `{"result": "separator" | "model" | "failure", ...}`.
pub fn outcome_json(outcome: &Outcome, h: &PatternGraph) -> Value {
    match outcome {
        Outcome::Separator(cert) => certificate_json(cert),
        Outcome::Model(m) => {
            let mut v = m.to_json(h);
            v.as_object_mut()
                .expect("model JSON is an object")
                .insert("result".into(), json!("model"));
            v
        }
        Outcome::Failure(d) => json!({"result": "failure", "diagnostics": d}),
    }
}
