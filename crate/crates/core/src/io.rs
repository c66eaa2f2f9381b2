//! Text formats for graphs, configurations and plane graphs.
//!
//! All three formats are line-oriented and whitespace-separated;
//! `#` starts a comment. Serializers emit the canonical form, and
//! parse → serialize → parse is the identity.

use thiserror::Error;

use crate::cn::Configuration;
use crate::graph::Graph;
use crate::plane::PlaneGraph;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

fn content_lines(input: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    input.lines().enumerate().filter_map(|(i, raw)| {
        let stripped = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = stripped.split_whitespace().collect();
        if tokens.is_empty() {
            None
        } else {
            Some((i + 1, tokens))
        }
    })
}

fn parse_number<T: std::str::FromStr>(line: usize, token: &str, what: &str) -> Result<T, ParseError> {
    token
        .parse()
        .map_err(|_| ParseError::new(line, format!("invalid {}: {:?}", what, token)))
}

/// Parses the graph format: `vertices <n>` then `edge <u> <v>` lines.
pub fn parse_graph(input: &str) -> Result<Graph, ParseError> {
    let mut vertex_count: Option<usize> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (line, tokens) in content_lines(input) {
        last_line = line;
        match tokens[0] {
            "vertices" => {
                if tokens.len() != 2 {
                    return Err(ParseError::new(line, "expected: vertices <n>"));
                }
                vertex_count = Some(parse_number(line, tokens[1], "vertex count")?);
            }
            "edge" => {
                if tokens.len() != 3 {
                    return Err(ParseError::new(line, "expected: edge <u> <v>"));
                }
                let u = parse_number(line, tokens[1], "vertex")?;
                let v = parse_number(line, tokens[2], "vertex")?;
                edges.push((u, v));
            }
            other => {
                return Err(ParseError::new(line, format!("unknown directive {:?}", other)));
            }
        }
    }
    let n = vertex_count
        .ok_or_else(|| ParseError::new(last_line, "missing `vertices <n>` line"))?;
    Graph::new(n, &edges).map_err(|e| ParseError::new(last_line, e.to_string()))
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("vertices {}\n", g.vertex_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("edge {} {}\n", u, v));
    }
    out
}

/// Parses the configuration format: `name`, `k`, `vertices`, per-vertex
/// `vertex <i> degree <d>`, `edge <u> <v>`, optional `caps ...`.
pub fn parse_configuration(input: &str) -> Result<Configuration, ParseError> {
    let mut name: Option<String> = None;
    let mut k: Option<usize> = None;
    let mut vertex_count: Option<usize> = None;
    let mut degrees: Vec<Option<usize>> = Vec::new();
    let mut edges = Vec::new();
    let mut caps: Option<Vec<usize>> = None;
    let mut last_line = 0;
    for (line, tokens) in content_lines(input) {
        last_line = line;
        match tokens[0] {
            "name" => {
                if tokens.len() != 2 {
                    return Err(ParseError::new(line, "expected: name <label>"));
                }
                name = Some(tokens[1].to_string());
            }
            "k" => {
                if tokens.len() != 2 {
                    return Err(ParseError::new(line, "expected: k <int>"));
                }
                k = Some(parse_number(line, tokens[1], "choosability target")?);
            }
            "vertices" => {
                if tokens.len() != 2 {
                    return Err(ParseError::new(line, "expected: vertices <n>"));
                }
                let n = parse_number(line, tokens[1], "vertex count")?;
                vertex_count = Some(n);
                degrees = vec![None; n];
            }
            "vertex" => {
                if tokens.len() != 4 || tokens[2] != "degree" {
                    return Err(ParseError::new(line, "expected: vertex <i> degree <d>"));
                }
                let i: usize = parse_number(line, tokens[1], "vertex")?;
                let d: usize = parse_number(line, tokens[3], "degree")?;
                if i >= degrees.len() {
                    return Err(ParseError::new(
                        line,
                        format!("vertex {} out of range (declare `vertices` first)", i),
                    ));
                }
                degrees[i] = Some(d);
            }
            "edge" => {
                if tokens.len() != 3 {
                    return Err(ParseError::new(line, "expected: edge <u> <v>"));
                }
                let u = parse_number(line, tokens[1], "vertex")?;
                let v = parse_number(line, tokens[2], "vertex")?;
                edges.push((u, v));
            }
            "caps" => {
                let mut values = Vec::new();
                for token in &tokens[1..] {
                    values.push(parse_number(line, token, "cap")?);
                }
                caps = Some(values);
            }
            other => {
                return Err(ParseError::new(line, format!("unknown directive {:?}", other)));
            }
        }
    }
    let n = vertex_count
        .ok_or_else(|| ParseError::new(last_line, "missing `vertices <n>` line"))?;
    let name = name.ok_or_else(|| ParseError::new(last_line, "missing `name <label>` line"))?;
    let k = k.ok_or_else(|| ParseError::new(last_line, "missing `k <int>` line"))?;
    let full_degree: Vec<usize> = degrees
        .iter()
        .enumerate()
        .map(|(i, d)| {
            d.ok_or_else(|| {
                ParseError::new(last_line, format!("missing `vertex {} degree <d>` line", i))
            })
        })
        .collect::<Result<_, _>>()?;
    if let Some(values) = &caps {
        if values.len() != n {
            return Err(ParseError::new(
                last_line,
                format!("caps line has {} entries, expected {}", values.len(), n),
            ));
        }
    }
    let graph = Graph::new(n, &edges).map_err(|e| ParseError::new(last_line, e.to_string()))?;
    let mut config = Configuration::new(name, graph, full_degree, k)
        .map_err(|e| ParseError::new(last_line, e.to_string()))?;
    if let Some(values) = caps {
        config = config.with_explicit_caps(values);
    }
    Ok(config)
}

pub fn serialize_configuration(config: &Configuration) -> String {
    let mut out = format!("name {}\n", config.name);
    out.push_str(&format!("k {}\n", config.k));
    out.push_str(&format!("vertices {}\n", config.internal.vertex_count()));
    for (i, d) in config.full_degree.iter().enumerate() {
        out.push_str(&format!("vertex {} degree {}\n", i, d));
    }
    for (u, v) in config.internal.edges() {
        out.push_str(&format!("edge {} {}\n", u, v));
    }
    if let Some(caps) = &config.explicit_caps {
        out.push_str("caps");
        for c in caps {
            out.push_str(&format!(" {}", c));
        }
        out.push('\n');
    }
    out
}

/// Parses the plane-graph format: `vertices <n>` then one
/// `rotation <v>: <u1> ... <uk>` line per vertex, neighbors in clockwise
/// order.
pub fn parse_plane_graph(input: &str) -> Result<PlaneGraph, ParseError> {
    let mut rotation: Vec<Option<Vec<usize>>> = Vec::new();
    let mut vertex_count: Option<usize> = None;
    let mut last_line = 0;
    for (line, tokens) in content_lines(input) {
        last_line = line;
        match tokens[0] {
            "vertices" => {
                if tokens.len() != 2 {
                    return Err(ParseError::new(line, "expected: vertices <n>"));
                }
                let n = parse_number(line, tokens[1], "vertex count")?;
                vertex_count = Some(n);
                rotation = vec![None; n];
            }
            "rotation" => {
                if tokens.len() < 2 {
                    return Err(ParseError::new(line, "expected: rotation <v>: <u1> ..."));
                }
                let head = tokens[1].trim_end_matches(':');
                let v: usize = parse_number(line, head, "vertex")?;
                let mut rest = &tokens[2..];
                if rest.first() == Some(&":") {
                    rest = &rest[1..];
                }
                let neighbors: Vec<usize> = rest
                    .iter()
                    .map(|t| parse_number(line, t, "neighbor"))
                    .collect::<Result<_, _>>()?;
                if v >= rotation.len() {
                    return Err(ParseError::new(
                        line,
                        format!("vertex {} out of range (declare `vertices` first)", v),
                    ));
                }
                rotation[v] = Some(neighbors);
            }
            other => {
                return Err(ParseError::new(line, format!("unknown directive {:?}", other)));
            }
        }
    }
    vertex_count.ok_or_else(|| ParseError::new(last_line, "missing `vertices <n>` line"))?;
    let rotation: Vec<Vec<usize>> = rotation
        .into_iter()
        .map(|r| r.unwrap_or_default())
        .collect();
    PlaneGraph::new(rotation).map_err(|e| ParseError::new(last_line, e.to_string()))
}

pub fn serialize_plane_graph(pg: &PlaneGraph) -> String {
    let mut out = format!("vertices {}\n", pg.vertex_count());
    for v in 0..pg.vertex_count() {
        out.push_str(&format!("rotation {}:", v));
        for u in pg.rotation(v) {
            out.push_str(&format!(" {}", u));
        }
        out.push('\n');
    }
    out
}
