use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kb::{ExtendedCost, PenaltyKb, SubTheory};
use crate::logic::{Formula, Interpretation, Vocabulary, DEFAULT_VAR_CAP};
use crate::solver::search::union_vocab;
use crate::solver::DEFAULT_ITEM_CAP;

/// The consistent sub-theories of minimal cost: no consistent subset is
/// strictly cheaper. When even the hard core is inconsistent every
/// consistent sub-theory costs infinity, and all of them are returned.
pub fn preferred_subtheories(kb: &PenaltyKb) -> Result<Vec<SubTheory>> {
    phi_preferred_subtheories(kb, &Formula::Top)
}

/// The `f`-consistent sub-theories (subsets whose formulas together with
/// `f` are satisfiable) of minimal cost among all `f`-consistent subsets.
/// Empty when `f` is unsatisfiable.
pub fn phi_preferred_subtheories(kb: &PenaltyKb, f: &Formula) -> Result<Vec<SubTheory>> {
    if kb.len() > DEFAULT_ITEM_CAP {
        return Err(Error::TooManyItems {
            count: kb.len(),
            cap: DEFAULT_ITEM_CAP,
        });
    }
    let vocab = union_vocab(kb, &[f]);
    vocab.check_cap(DEFAULT_VAR_CAP)?;

    let models = satisfied_masks(kb, Some(f), &vocab)?;
    let n = kb.len();

    let mut best: Option<ExtendedCost> = None;
    let mut minima: Vec<u32> = Vec::new();
    for mask in 0..(1u32 << n) {
        let cost = excluded_cost(kb, mask);
        if matches!(&best, Some(b) if cost > *b) {
            continue;
        }
        // f-consistency: some model of f satisfies every selected item
        if !models.iter().any(|&m| mask & !m == 0) {
            continue;
        }
        match &best {
            Some(b) if cost == *b => minima.push(mask),
            _ => {
                best = Some(cost);
                minima = vec![mask];
            }
        }
    }

    Ok(minima.into_iter().map(SubTheory::from_mask).collect())
}

/// For every model of `constraint` (every interpretation when `None`),
/// the bitmask of items the model satisfies. Deduplicated and sorted.
pub(crate) fn satisfied_masks(
    kb: &PenaltyKb,
    constraint: Option<&Formula>,
    vocab: &Arc<Vocabulary>,
) -> Result<Vec<u32>> {
    debug_assert!(kb.len() <= 32);
    let mut masks = Vec::new();
    for index in 0..(1u64 << vocab.len()) {
        let w = Interpretation::from_index(vocab.clone(), index);
        if let Some(c) = constraint {
            if !c.evaluate(&w)? {
                continue;
            }
        }
        let mut mask = 0u32;
        for (bit, item) in kb.items().iter().enumerate() {
            if item.formula().evaluate(&w)? {
                mask |= 1 << bit;
            }
        }
        masks.push(mask);
    }
    masks.sort_unstable();
    masks.dedup();
    Ok(masks)
}

fn excluded_cost(kb: &PenaltyKb, mask: u32) -> ExtendedCost {
    kb.items()
        .iter()
        .enumerate()
        .filter(|(bit, _)| (mask >> bit) & 1 == 0)
        .map(|(_, item)| item.penalty().cost())
        .sum()
}
