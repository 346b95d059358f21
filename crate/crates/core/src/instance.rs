//! Line-oriented instance format.
//!
//! ```text
//! # optional comments
//! hg <vertex_count>
//! e <v1> <v2> ...
//! ```
//!
//! Vertex ids are 0-based. Lines starting with `#` and blank lines are
//! ignored. Emission writes the canonical edge order, so
//! `parse(emit(h)) == h` and re-emission is byte-identical.

use thiserror::Error;

use crate::hypergraph::{Hypergraph, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing 'hg <vertex_count>' header")]
    MissingHeader,
    #[error("malformed header at line {line}: expected 'hg <vertex_count>'")]
    MalformedHeader { line: usize },
    #[error("duplicate header at line {line}")]
    DuplicateHeader { line: usize },
    #[error("empty edge at line {line}")]
    EmptyEdge { line: usize },
    #[error("vertex {vertex} out of range at line {line}")]
    VertexOutOfRange { vertex: u64, line: usize },
    #[error("unrecognized line {line}: expected 'e <v1> <v2> ...'")]
    UnrecognizedLine { line: usize },
    #[error("invalid vertex id '{token}' at line {line}")]
    InvalidVertex { token: String, line: usize },
}

pub fn parse_instance(text: &str) -> Result<Hypergraph, ParseError> {
    let mut vertex_count: Option<u32> = None;
    let mut edges: Vec<Vec<VertexId>> = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        match tokens.next() {
            Some("hg") => {
                if vertex_count.is_some() {
                    return Err(ParseError::DuplicateHeader { line });
                }
                let n = tokens
                    .next()
                    .and_then(|t| t.parse::<u32>().ok())
                    .ok_or(ParseError::MalformedHeader { line })?;
                if tokens.next().is_some() {
                    return Err(ParseError::MalformedHeader { line });
                }
                vertex_count = Some(n);
            }
            Some("e") => {
                let n = vertex_count.ok_or(ParseError::MissingHeader)?;
                let mut edge = Vec::new();
                for token in tokens {
                    let vertex: u64 = token.parse().map_err(|_| ParseError::InvalidVertex {
                        token: token.to_string(),
                        line,
                    })?;
                    if vertex >= n as u64 {
                        return Err(ParseError::VertexOutOfRange { vertex, line });
                    }
                    edge.push(vertex as VertexId);
                }
                if edge.is_empty() {
                    return Err(ParseError::EmptyEdge { line });
                }
                edges.push(edge);
            }
            _ => return Err(ParseError::UnrecognizedLine { line }),
        }
    }
    let n = vertex_count.ok_or(ParseError::MissingHeader)?;
    Ok(Hypergraph::new(n, edges).expect("lines were validated"))
}

pub fn emit_instance(h: &Hypergraph) -> String {
    let mut out = format!("hg {}\n", h.vertex_count());
    for edge in h.edges() {
        out.push('e');
        for v in edge {
            out.push(' ');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{cofinite_family, path_graph};

    #[test]
    fn parses_path() {
        let h = parse_instance("hg 3\ne 0 1\ne 1 2\n").unwrap();
        assert_eq!(h, path_graph(3).unwrap());
    }

    #[test]
    fn reports_empty_edge_with_line() {
        let err = parse_instance("hg 2\ne\n").unwrap_err();
        assert_eq!(err, ParseError::EmptyEdge { line: 2 });
        assert_eq!(err.to_string(), "empty edge at line 2");
    }

    #[test]
    fn reports_out_of_range_vertex_with_line() {
        let err = parse_instance("hg 2\ne 0 5\n").unwrap_err();
        assert_eq!(err, ParseError::VertexOutOfRange { vertex: 5, line: 2 });
        assert!(err.to_string().contains("vertex 5 out of range"));
    }

    #[test]
    fn ignores_comments_and_blank_lines() {
        let h = parse_instance("# a path\n\nhg 3\n# edges follow\ne 0 1\n\ne 1 2\n").unwrap();
        assert_eq!(h, path_graph(3).unwrap());
    }

    #[test]
    fn header_errors() {
        assert_eq!(parse_instance("e 0 1\n"), Err(ParseError::MissingHeader));
        assert_eq!(parse_instance(""), Err(ParseError::MissingHeader));
        assert_eq!(
            parse_instance("hg x\n"),
            Err(ParseError::MalformedHeader { line: 1 })
        );
        assert_eq!(
            parse_instance("hg 2\nhg 3\n"),
            Err(ParseError::DuplicateHeader { line: 2 })
        );
        assert_eq!(
            parse_instance("hg 2\nedge 0 1\n"),
            Err(ParseError::UnrecognizedLine { line: 2 })
        );
        assert_eq!(
            parse_instance("hg 2\ne 0 banana\n"),
            Err(ParseError::InvalidVertex {
                token: "banana".into(),
                line: 2
            })
        );
    }

    #[test]
    fn round_trips_are_canonical() {
        for h in [
            path_graph(3).unwrap(),
            cofinite_family(5, 1).unwrap(),
            Hypergraph::new(4, Vec::<Vec<VertexId>>::new()).unwrap(),
        ] {
            let text = emit_instance(&h);
            let parsed = parse_instance(&text).unwrap();
            assert_eq!(parsed, h);
            assert_eq!(emit_instance(&parsed), text);
        }
    }

    #[test]
    fn emits_empty_edge_set_as_header_only() {
        let h = Hypergraph::new(4, Vec::<Vec<VertexId>>::new()).unwrap();
        assert_eq!(emit_instance(&h), "hg 4\n");
    }
}
