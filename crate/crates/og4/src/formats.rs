//! Graph export formats: edge lists, oriented DOT and graph6.

use std::fmt::Write as _;
use std::str::FromStr;

use og4_core::graph::Graph;
use og4_core::verify::Orientation;

use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ExportFormat {
    EdgeList,
    DotOriented,
    Graph6,
}

impl ExportFormat {
    pub fn name(self) -> &'static str {
        match self {
            ExportFormat::EdgeList => "edge_list",
            ExportFormat::DotOriented => "dot_oriented",
            ExportFormat::Graph6 => "graph6",
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            ExportFormat::EdgeList => "edges",
            ExportFormat::DotOriented => "dot",
            ExportFormat::Graph6 => "g6",
        }
    }
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "edge_list" => Ok(ExportFormat::EdgeList),
            "dot_oriented" => Ok(ExportFormat::DotOriented),
            "graph6" => Ok(ExportFormat::Graph6),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

/// Writes `graph` in `format`. DOT output needs an orientation.
pub fn export(graph: &Graph, orientation: Option<&Orientation>, format: ExportFormat) -> Result<Vec<u8>, Error> {
    match format {
        ExportFormat::EdgeList => Ok(edge_list(graph).into_bytes()),
        ExportFormat::Graph6 => Ok(graph6_encode(graph).into_bytes()),
        ExportFormat::DotOriented => {
            let o = orientation.ok_or(Error::MissingOrientation)?;
            Ok(dot_oriented(o).into_bytes())
        }
    }
}

/// One `u v` line per edge with `u < v`, ascending.
pub fn edge_list(graph: &Graph) -> String {
    let mut out = String::new();
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_edge_list(n: usize, text: &str) -> Result<Graph, Error> {
    let mut edges = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace().map(str::parse::<u32>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
            _ => return Err(Error::Format(format!("line {}: expected two vertex numbers", i + 1))),
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

/// A digraph with one arc per edge, directed along the orientation.
pub fn dot_oriented(orientation: &Orientation) -> String {
    let mut out = String::from("digraph og4 {\n");
    for (v, w) in orientation.arcs() {
        writeln!(out, "  {v} -> {w};").unwrap();
    }
    out.push_str("}\n");
    out
}

const GRAPH6_MAX: usize = 68_719_476_735;

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// The graph6 line for `graph`, newline included.
pub fn graph6_encode(graph: &Graph) -> String {
    let n = graph.vertex_count();
    assert!(n <= GRAPH6_MAX);
    let mut out = Vec::new();
    push_size(&mut out, n);
    let mut word = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            word = (word << 1) | graph.is_adjacent(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(word + 63);
                word = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((word << (6 - filled)) + 63);
    }
    out.push(b'\n');
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn graph6_decode(text: &str) -> Result<Graph, Error> {
    let line = text.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(Error::Format("graph6 byte outside 63..=126".into()));
    }
    let sixes = |range: std::ops::Range<usize>| -> Result<usize, Error> {
        let chunk = bytes
            .get(range)
            .ok_or_else(|| Error::Format("graph6 size field is truncated".into()))?;
        Ok(chunk.iter().fold(0, |acc, &b| (acc << 6) | (b - 63) as usize))
    };
    let (n, start) = match bytes {
        [] => return Err(Error::Format("empty graph6 string".into())),
        [126, 126, ..] => (sixes(2..8)?, 8),
        [126, ..] => (sixes(1..4)?, 4),
        [b, ..] => ((b - 63) as usize, 1),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let body = &bytes[start..];
    if body.len() != pairs.div_ceil(6) {
        return Err(Error::Format(format!(
            "graph6 body has {} bytes, expected {} for {n} vertices",
            body.len(),
            pairs.div_ceil(6)
        )));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                edges.push((i as u32, j as u32));
            }
            bit += 1;
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}
