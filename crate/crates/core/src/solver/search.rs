use std::sync::Arc;

use crate::error::Result;
use crate::kb::{ExtendedCost, PenaltyKb};
use crate::logic::{
    consistent_over, enumerate_interpretations, Formula, Interpretation, PartialAssignment, Truth,
    Vocabulary,
};
use crate::solver::{SearchConfig, VariableOrder, WitnessMode};

/// Outcome of a minimum-cost search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub optimum: ExtendedCost,
    /// Optimal interpretations, sorted by assignment. Never empty: with
    /// `WitnessMode::One` it holds exactly the lexicographically smallest
    /// optimum.
    pub witnesses: Vec<Interpretation>,
    /// Search nodes visited; diagnostics only.
    pub nodes_explored: u64,
}

/// Finds the interpretations of minimal cost by depth-first branch and
/// bound over partial assignments.
pub fn min_cost_interpretations(kb: &PenaltyKb, cfg: &SearchConfig) -> Result<SolveResult> {
    let vocab = kb.vocabulary();
    vocab.check_cap(cfg.var_cap)?;

    let hard = kb.hard_core();
    if !consistent_over(hard.iter(), vocab) {
        // Inviolable formulas clash: every interpretation costs infinity
        // and all of them are optimal.
        let witnesses = match cfg.witness_mode {
            WitnessMode::One => vec![Interpretation::from_index(vocab.clone(), 0)],
            WitnessMode::All => enumerate_interpretations(vocab, cfg.var_cap)?.collect(),
        };
        return Ok(SolveResult {
            optimum: ExtendedCost::Infinite,
            witnesses,
            nodes_explored: 0,
        });
    }

    let mut search = Search {
        kb,
        order: branching_order(kb, cfg.variable_order),
        assignment: PartialAssignment::empty(vocab.clone()),
        mode: cfg.witness_mode,
        best: ExtendedCost::Infinite,
        witnesses: Vec::new(),
        nodes: 0,
    };
    search.dive(0);

    let Search {
        best,
        mut witnesses,
        nodes,
        ..
    } = search;
    witnesses.sort_unstable();
    Ok(SolveResult {
        optimum: best,
        witnesses,
        nodes_explored: nodes,
    })
}

fn branching_order(kb: &PenaltyKb, order: VariableOrder) -> Vec<usize> {
    let n = kb.vocabulary().len();
    let mut indices: Vec<usize> = (0..n).collect();
    if order == VariableOrder::Frequency {
        let mut counts = vec![0usize; n];
        for item in kb.items() {
            count_occurrences(item.formula(), kb.vocabulary(), &mut counts);
        }
        indices.sort_by(|&a, &b| counts[b].cmp(&counts[a]).then(a.cmp(&b)));
    }
    indices
}

fn count_occurrences(f: &Formula, vocab: &Vocabulary, counts: &mut [usize]) {
    match f {
        Formula::Top | Formula::Bottom => {}
        Formula::Atom(a) => {
            if let Some(i) = vocab.index_of(a) {
                counts[i] += 1;
            }
        }
        Formula::Not(p) => count_occurrences(p, vocab, counts),
        Formula::And(p, q) | Formula::Or(p, q) | Formula::Implies(p, q) | Formula::Iff(p, q) => {
            count_occurrences(p, vocab, counts);
            count_occurrences(q, vocab, counts);
        }
    }
}

struct Search<'a> {
    kb: &'a PenaltyKb,
    order: Vec<usize>,
    assignment: PartialAssignment,
    mode: WitnessMode,
    best: ExtendedCost,
    witnesses: Vec<Interpretation>,
    nodes: u64,
}

impl Search<'_> {
    fn dive(&mut self, depth: usize) {
        self.nodes += 1;
        let bound = committed_penalty(self.kb, &self.assignment);
        // The hard core is consistent here, so the optimum is finite and
        // any definitely violated inviolable item kills the subtree.
        // Strictly worse bounds are pruned; ties survive so that `All`
        // collects every optimum and `One` can keep the smallest.
        if bound.is_infinite() || bound > self.best {
            return;
        }
        if depth == self.order.len() {
            self.record_leaf(bound);
            return;
        }
        let var = self.order[depth];
        for value in [false, true] {
            self.assignment.assign(var, value);
            self.dive(depth + 1);
        }
        self.assignment.retract(var);
    }

    fn record_leaf(&mut self, cost: ExtendedCost) {
        let w = self
            .assignment
            .to_interpretation()
            .expect("leaf assignments are total");
        if cost < self.best {
            self.best = cost;
            self.witnesses.clear();
            self.witnesses.push(w);
        } else if cost == self.best {
            match self.mode {
                WitnessMode::All => self.witnesses.push(w),
                WitnessMode::One => {
                    if w < self.witnesses[0] {
                        self.witnesses[0] = w;
                    }
                }
            }
        }
    }
}

/// The penalty already paid by items that are definitely violated under
/// the partial assignment. A lower bound on the cost of every completion.
pub(crate) fn committed_penalty(kb: &PenaltyKb, p: &PartialAssignment) -> ExtendedCost {
    let mut total = ExtendedCost::zero();
    for item in kb.items() {
        let verdict = item
            .formula()
            .partial_evaluate(p)
            .expect("base vocabulary covers its items");
        if verdict == Truth::False {
            total += item.penalty().cost();
        }
    }
    total
}

pub(crate) fn union_vocab(kb: &PenaltyKb, formulas: &[&Formula]) -> Arc<Vocabulary> {
    Arc::new(
        kb.vocabulary()
            .union(&Vocabulary::of_formulas(formulas.iter().copied())),
    )
}
