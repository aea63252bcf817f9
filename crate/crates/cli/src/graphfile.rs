//! The on-disk graph format: optional `#` comment lines, a header `n m`,
//! then `m` lines `u v` with 0-indexed endpoints.

use seplearn::Graph;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: u32 },
    #[error("line {line}: duplicate edge {{{u},{v}}}")]
    DuplicateEdge { line: usize, u: u32, v: u32 },
    #[error("line {line}: endpoint {vertex} out of range (n = {n})")]
    Range { line: usize, vertex: u32, n: usize },
    #[error("expected {expected} edges, found {found}")]
    Count { expected: usize, found: usize },
    #[error("line {line}: malformed record '{text}'")]
    Malformed { line: usize, text: String },
    #[error("missing header line 'n m'")]
    MissingHeader,
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut data_lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_no, header) = data_lines.next().ok_or(ParseError::MissingHeader)?;
    let mut fields = header.split_whitespace();
    let (n, m): (usize, usize) = match (
        fields.next().and_then(|f| f.parse().ok()),
        fields.next().and_then(|f| f.parse().ok()),
        fields.next(),
    ) {
        (Some(n), Some(m), None) => (n, m),
        _ => {
            return Err(ParseError::Malformed {
                line: header_no,
                text: header.to_string(),
            })
        }
    };

    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(m);
    let mut count = 0usize;
    for (line, text) in data_lines {
        let mut fields = text.split_whitespace();
        let (u, v): (u32, u32) = match (
            fields.next().and_then(|f| f.parse().ok()),
            fields.next().and_then(|f| f.parse().ok()),
            fields.next(),
        ) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(ParseError::Malformed {
                    line,
                    text: text.to_string(),
                })
            }
        };
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        for w in [u, v] {
            if w as usize >= n {
                return Err(ParseError::Range { line, vertex: w, n });
            }
        }
        let canonical = (u.min(v), u.max(v));
        if edges.contains(&canonical) {
            return Err(ParseError::DuplicateEdge {
                line,
                u: canonical.0,
                v: canonical.1,
            });
        }
        edges.push(canonical);
        count += 1;
    }
    if count != m {
        return Err(ParseError::Count {
            expected: m,
            found: count,
        });
    }
    Ok(Graph::new(n, &edges).expect("all constraints checked during parsing"))
}

/// Canonical text form; parses back to an equal graph.
pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
