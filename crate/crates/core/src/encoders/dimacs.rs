use std::collections::BTreeSet;

use crate::encoders::graph::Graph;
use crate::error::{Error, Result};

/// Reads a DIMACS `p edge` graph. Vertices `1..n` become `v1..vn`;
/// comment lines start with `c`. Duplicate and self-loop edges are
/// rejected, as is an edge count that contradicts the header.
pub fn read_dimacs_graph(text: &str) -> Result<Graph> {
    let mut declared: Option<(usize, usize)> = None;
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        let err = |msg: String| Error::Format { line: line_no, msg };
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields[0] {
            "p" => {
                if declared.is_some() {
                    return Err(err("duplicate problem line".to_string()));
                }
                if fields.len() != 4 || fields[1] != "edge" {
                    return Err(err(format!("malformed problem line `{line}`")));
                }
                let n: usize = fields[2]
                    .parse()
                    .map_err(|_| err(format!("bad vertex count `{}`", fields[2])))?;
                let m: usize = fields[3]
                    .parse()
                    .map_err(|_| err(format!("bad edge count `{}`", fields[3])))?;
                declared = Some((n, m));
            }
            "e" => {
                let Some((n, _)) = declared else {
                    return Err(err("edge before problem line".to_string()));
                };
                if fields.len() != 3 {
                    return Err(err(format!("malformed edge line `{line}`")));
                }
                let u: usize = fields[1]
                    .parse()
                    .map_err(|_| err(format!("bad endpoint `{}`", fields[1])))?;
                let v: usize = fields[2]
                    .parse()
                    .map_err(|_| err(format!("bad endpoint `{}`", fields[2])))?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(err(format!("endpoint out of range in `{line}`")));
                }
                if u == v {
                    return Err(err(format!("self-loop on vertex {u}")));
                }
                if !edges.insert((u.min(v), u.max(v))) {
                    return Err(err(format!("duplicate edge {u} {v}")));
                }
            }
            _ => return Err(err(format!("unrecognized line `{line}`"))),
        }
    }

    let Some((n, m)) = declared else {
        return Err(Error::Format {
            line: 1,
            msg: "missing problem line".to_string(),
        });
    };
    if edges.len() != m {
        return Err(Error::Format {
            line: 1,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }

    let vertices: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let named: Vec<(String, String)> = edges
        .into_iter()
        .map(|(u, v)| (format!("v{u}"), format!("v{v}")))
        .collect();
    Graph::new(vertices, &named)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_a_triangle() {
        let g = read_dimacs_graph("c K3\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g.vertices(), ["v1", "v2", "v3"]);
        assert_eq!(g.edge_count(), 3);
        assert!(g.non_edges().is_empty());
    }

    #[test]
    fn reads_an_edgeless_graph() {
        let g = read_dimacs_graph("p edge 2 0\n").unwrap();
        assert_eq!(g.vertices(), ["v1", "v2"]);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(read_dimacs_graph("p edge 3 1\ne 1 4\n").is_err());
        assert!(read_dimacs_graph("p edge 3 1\ne 2 2\n").is_err());
        assert!(read_dimacs_graph("p edge 3 2\ne 1 2\ne 2 1\n").is_err());
        assert!(read_dimacs_graph("p edge 3 2\ne 1 2\n").is_err());
        assert!(read_dimacs_graph("e 1 2\n").is_err());
        assert!(read_dimacs_graph("p garbage\n").is_err());
        assert!(read_dimacs_graph("").is_err());
    }
}
