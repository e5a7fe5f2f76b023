//! Seeded generators and independent oracles shared by the integration
//! suites.

#![allow(dead_code)]

use penlog::encoders::Graph;
use penlog::kb::{parse_pkb, PenaltyKb, Penalty};
use penlog::logic::Formula;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const PK1: &str = "inf a\n10 b | c\n5 !b\n7 !c\n";

pub fn pk1() -> PenaltyKb {
    parse_pkb(PK1).unwrap()
}

/// The five-item base of the entailment walkthrough.
pub fn inference_kb() -> PenaltyKb {
    parse_pkb("inf a | b\n5 !a\n4 !a | !b\n2 b -> !c\n1 a -> c\n").unwrap()
}

const ATOM_NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f_", "g_", "h_"];

pub fn random_formula(rng: &mut ChaCha8Rng, atoms: usize, depth: usize) -> Formula {
    let atoms = atoms.min(ATOM_NAMES.len());
    if depth == 0 || rng.random_bool(0.3) {
        return match rng.random_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            _ => Formula::atom(ATOM_NAMES[rng.random_range(0..atoms)]).unwrap(),
        };
    }
    match rng.random_range(0..5) {
        0 => Formula::not(random_formula(rng, atoms, depth - 1)),
        1 => Formula::and(
            random_formula(rng, atoms, depth - 1),
            random_formula(rng, atoms, depth - 1),
        ),
        2 => Formula::or(
            random_formula(rng, atoms, depth - 1),
            random_formula(rng, atoms, depth - 1),
        ),
        3 => Formula::implies(
            random_formula(rng, atoms, depth - 1),
            random_formula(rng, atoms, depth - 1),
        ),
        _ => Formula::iff(
            random_formula(rng, atoms, depth - 1),
            random_formula(rng, atoms, depth - 1),
        ),
    }
}

pub fn random_penalty(rng: &mut ChaCha8Rng, max: u64, infinite_share: f64) -> Penalty {
    if rng.random_bool(infinite_share) {
        Penalty::Infinite
    } else {
        Penalty::from_integer(rng.random_range(1..=max)).unwrap()
    }
}

pub struct KbShape {
    pub max_items: usize,
    pub max_atoms: usize,
    pub max_penalty: u64,
    pub infinite_share: f64,
}

pub fn random_kb(rng: &mut ChaCha8Rng, shape: &KbShape) -> PenaltyKb {
    let items = rng.random_range(1..=shape.max_items);
    let pairs: Vec<(Formula, Penalty)> = (0..items)
        .map(|_| {
            (
                random_formula(rng, shape.max_atoms, 3),
                random_penalty(rng, shape.max_penalty, shape.infinite_share),
            )
        })
        .collect();
    PenaltyKb::new(pairs)
}

pub fn random_graph(rng: &mut ChaCha8Rng, max_vertices: usize) -> Graph {
    let n = rng.random_range(1..=max_vertices);
    let names: Vec<String> = (0..n).map(|i| format!("v{}", i + 1)).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_bool(0.5) {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Graph::new(names, &edges).unwrap()
}

/// Exhaustive maximum-clique enumeration by subset scan; independent of
/// the penalty encoding.
pub fn brute_force_max_cliques(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.vertices().len();
    let mut best_size = 0usize;
    let mut best: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| (mask >> i) & 1 == 1).collect();
        let is_clique = members
            .iter()
            .enumerate()
            .all(|(k, &x)| members[k + 1..].iter().all(|&y| g.is_adjacent(x, y)));
        if !is_clique {
            continue;
        }
        match members.len().cmp(&best_size) {
            std::cmp::Ordering::Greater => {
                best_size = members.len();
                best = vec![members];
            }
            std::cmp::Ordering::Equal => best.push(members),
            std::cmp::Ordering::Less => {}
        }
    }
    best.sort();
    best
}
