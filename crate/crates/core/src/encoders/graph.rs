use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::logic::Atom;

/// An undirected graph with named vertices, no self-loops. Vertex names
/// double as propositional atoms in the clique encoding, so they must be
/// valid identifiers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: Vec<String>, edges: &[(String, String)]) -> Result<Graph> {
        let mut seen = BTreeSet::new();
        for name in &vertices {
            Atom::new(name.as_str())
                .map_err(|_| Error::InvalidGraph(format!("invalid vertex name `{name}`")))?;
            if !seen.insert(name) {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{name}`")));
            }
        }
        let index_of = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::InvalidGraph(format!("undeclared vertex `{name}`")))
        };
        let mut normalized = BTreeSet::new();
        for (x, y) in edges {
            let (i, j) = (index_of(x)?, index_of(y)?);
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop on `{x}`")));
            }
            normalized.insert((i.min(j), i.max(j)));
        }
        Ok(Graph {
            vertices,
            edges: normalized,
        })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    /// Unordered distinct vertex pairs that are not edges, in pair order.
    pub fn non_edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if !self.edges.contains(&(i, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// A clique found in a graph: pairwise adjacent vertices, in declaration
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueResult {
    pub vertices: Vec<String>,
}

impl CliqueResult {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_validates_vertices_and_edges() {
        assert!(Graph::new(vec!["a".into(), "a".into()], &[]).is_err());
        assert!(Graph::new(vec!["1x".into()], &[]).is_err());
        assert!(Graph::new(vec!["a".into()], &[("a".into(), "a".into())]).is_err());
        assert!(Graph::new(vec!["a".into()], &[("a".into(), "b".into())]).is_err());
    }

    #[test]
    fn edges_are_unordered() {
        let g = Graph::new(
            vec!["a".into(), "b".into()],
            &[("b".into(), "a".into())],
        )
        .unwrap();
        assert!(g.is_adjacent(0, 1));
        assert!(g.is_adjacent(1, 0));
        assert!(g.non_edges().is_empty());
    }
}
