//! Extended DIMACS edge format.
//!
//! ```text
//! c comment
//! p edge <n> <m>
//! n <v> <num>/<den>     optional vertex weight, default 1
//! e <u> <v>
//! ```
//!
//! Vertices are one-based. The writer emits a canonical form: header,
//! weight lines for non-unit weights in vertex order, then edges sorted with
//! the smaller endpoint first.

use std::fmt::Write as _;

use num_traits::One;

use crate::{Error, Graph, Rational, Result};

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut weights: Vec<Option<Rational>> = Vec::new();
    let mut edges = Vec::new();
    let mut graph: Option<Graph> = None;

    let err = |line: usize, message: String| Error::Parse { line, message };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if header.is_some() {
                    return Err(err(line_no, "duplicate problem line".into()));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(err(line_no, format!("expected `p edge <n> <m>`, got `{line}`")));
                }
                let n = parse_count(fields[2], line_no)?;
                let m = parse_count(fields[3], line_no)?;
                header = Some((n, m, line_no));
                weights = vec![None; n];
                graph = Some(Graph::new(n));
            }
            "n" | "e" => {
                let Some((n, _, _)) = header else {
                    return Err(err(line_no, "data line before the problem line".into()));
                };
                if fields.len() != 3 {
                    return Err(err(line_no, format!("expected 2 fields after `{}`", fields[0])));
                }
                let u = parse_vertex(fields[1], n, line_no)?;
                if fields[0] == "n" {
                    let w: Rational = fields[2]
                        .parse()
                        .map_err(|_| err(line_no, format!("invalid weight `{}`", fields[2])))?;
                    if weights[u].replace(w).is_some() {
                        return Err(err(line_no, format!("duplicate weight for vertex {}", u + 1)));
                    }
                } else {
                    let v = parse_vertex(fields[2], n, line_no)?;
                    let g = graph.as_mut().expect("graph exists once the header is read");
                    g.insert_edge(u, v).map_err(|e| err(line_no, e.to_string()))?;
                    edges.push((u, v));
                }
            }
            other => return Err(err(line_no, format!("unknown line type `{other}`"))),
        }
    }

    let Some((_, m, header_line)) = header else {
        return Err(err(text.lines().count().max(1), "missing problem line".into()));
    };
    if edges.len() != m {
        return Err(err(
            header_line,
            format!("header declares {m} edges but {} were given", edges.len()),
        ));
    }
    let g = graph.expect("graph exists once the header is read");
    let weights = weights
        .into_iter()
        .map(|w| w.unwrap_or_else(Rational::one))
        .collect();
    g.with_weights(weights)
}

fn parse_count(field: &str, line: usize) -> Result<usize> {
    field.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid count `{field}`"),
    })
}

fn parse_vertex(field: &str, n: usize, line: usize) -> Result<usize> {
    let v: usize = field.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid vertex `{field}`"),
    })?;
    if v == 0 || v > n {
        return Err(Error::Parse {
            line,
            message: format!("vertex {v} out of range 1..={n}"),
        });
    }
    Ok(v - 1)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for v in g.vertices() {
        let w = g.weight(v);
        if !w.is_one() {
            writeln!(out, "n {} {}", v + 1, crate::fraction(w)).unwrap();
        }
    }
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    #[test]
    fn parses_path() {
        let g = parse_graph("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn parses_single_vertex() {
        let g = parse_graph("c lone vertex\np edge 1 0\n").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn rejects_out_of_range_vertex() {
        let e = parse_graph("p edge 3 1\ne 1 5\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                message: "vertex 5 out of range 1..=3".into()
            }
        );
    }

    #[test]
    fn rejects_duplicate_edge_and_garbage() {
        let e = parse_graph("p edge 3 2\ne 1 2\ne 2 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_graph("p edge 3 0\nx 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_graph("e 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        let e = parse_graph("p edge 3 2\ne 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
        assert!(parse_graph("").is_err());
    }

    #[test]
    fn weights_round_trip() {
        let text = "p edge 3 2\nn 1 5/2\nn 3 -1/1\ne 1 2\ne 2 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.weight(0), &ratio(5, 2));
        assert_eq!(g.weight(1), &ratio(1, 1));
        assert_eq!(write_graph(&g), text);
        let g = parse_graph("p edge 2 0\nn 2 7\n").unwrap();
        assert_eq!(g.weight(1), &ratio(7, 1));
    }
}
