//! Discrete-optimization front end: graphs, the maximum-clique encoding,
//! and interoperability with DIMACS graph and weighted-CNF formats.

mod dimacs;
mod graph;
mod wcnf;

pub use dimacs::read_dimacs_graph;
pub use graph::{CliqueResult, Graph};
pub use wcnf::{export_wcnf, import_wcnf};

use crate::error::{Error, Result};
use crate::kb::{PenaltyKb, Penalty};
use crate::logic::Formula;
use crate::solver::{min_cost_interpretations, SearchConfig};

/// Encodes maximum clique as a penalty base: one soft unit-penalty atom
/// per vertex (prefer keeping vertices in), and one inviolable
/// `!x | !y` per unconnected pair (never keep both ends of a non-edge).
/// A minimum-cost interpretation then marks a maximum clique, at cost
/// `|vertices| - |clique|`.
pub fn encode_max_clique(g: &Graph) -> PenaltyKb {
    let mut pairs: Vec<(Formula, Penalty)> = Vec::new();
    for name in g.vertices() {
        let atom = Formula::atom(name).expect("graph vertex names are valid atoms");
        pairs.push((atom, Penalty::from_integer(1).expect("one is positive")));
    }
    for (x, y) in g.non_edges() {
        let nx = Formula::not(Formula::atom(&g.vertices()[x]).expect("valid atom"));
        let ny = Formula::not(Formula::atom(&g.vertices()[y]).expect("valid atom"));
        pairs.push((Formula::or(nx, ny), Penalty::Infinite));
    }
    PenaltyKb::new(pairs)
}

/// Solves maximum clique through the penalty encoding and decodes the
/// witness back into a vertex set.
pub fn solve_max_clique(g: &Graph) -> Result<CliqueResult> {
    let kb = encode_max_clique(g);
    let result = min_cost_interpretations(&kb, &SearchConfig::one_witness())?;
    let witness = &result.witnesses[0];

    let mut members = Vec::new();
    for (index, name) in g.vertices().iter().enumerate() {
        let atom = crate::logic::Atom::new(name.as_str())?;
        if witness.value(&atom).expect("encoding vocabulary covers vertices") {
            members.push(index);
        }
    }
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            if !g.is_adjacent(x, y) {
                return Err(Error::Internal(format!(
                    "decoded set is not a clique: {} and {} are not adjacent",
                    g.vertices()[x],
                    g.vertices()[y]
                )));
            }
        }
    }
    let expected_cost =
        crate::kb::ExtendedCost::from_integer((g.vertices().len() - members.len()) as u64);
    if result.optimum != expected_cost {
        return Err(Error::Internal(format!(
            "clique cost mismatch: optimum {} for clique of size {}",
            result.optimum,
            members.len()
        )));
    }

    Ok(CliqueResult {
        vertices: members
            .into_iter()
            .map(|i| g.vertices()[i].clone())
            .collect(),
    })
}
