use crate::error::Result;
use crate::kb::{ExtendedCost, PenaltyKb};
use crate::logic::Interpretation;
use crate::solver::{SearchConfig, SolveResult, WitnessMode};

/// Exhaustive reference solver: scores every interpretation and keeps the
/// minima. Same contract as
/// [`min_cost_interpretations`](crate::solver::min_cost_interpretations),
/// but shares no search machinery with it; used to cross-check the branch
/// and bound.
pub fn brute_force_min_cost(kb: &PenaltyKb, cfg: &SearchConfig) -> Result<SolveResult> {
    let vocab = kb.vocabulary();
    vocab.check_cap(cfg.var_cap)?;

    let count = 1u64 << vocab.len();
    let mut best = ExtendedCost::Infinite;
    let mut witnesses: Vec<Interpretation> = Vec::new();
    let mut seen_any = false;

    for index in 0..count {
        let w = Interpretation::from_index(vocab.clone(), index);
        let cost = kb.interpretation_cost(&w)?;
        if !seen_any || cost < best {
            seen_any = true;
            best = cost;
            witnesses.clear();
            witnesses.push(w);
        } else if cost == best {
            // enumeration is already lexicographic, so the first witness
            // found is the smallest
            if cfg.witness_mode == WitnessMode::All {
                witnesses.push(w);
            }
        }
    }

    Ok(SolveResult {
        optimum: best,
        witnesses,
        nodes_explored: count,
    })
}
