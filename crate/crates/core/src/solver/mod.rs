//! Minimum-cost interpretation search and preferred sub-theory
//! enumeration.
//!
//! The main search is a depth-first branch and bound over partial
//! assignments; the bound is the penalty already committed by definitely
//! violated items, which never overestimates the cost of a completion.
//! [`brute_force_min_cost`] is a deliberately independent exhaustive
//! implementation of the same contract, kept for cross-validation.

mod brute;
mod search;
mod subtheory;

pub use brute::brute_force_min_cost;
pub use search::{min_cost_interpretations, SolveResult};
pub use subtheory::{phi_preferred_subtheories, preferred_subtheories};

pub(crate) use subtheory::satisfied_masks;

use crate::error::Result;
use crate::kb::{ExtendedCost, PenaltyKb};
use crate::logic::{Formula, DEFAULT_VAR_CAP};

/// Largest item count accepted by the subset-enumeration operations.
pub const DEFAULT_ITEM_CAP: usize = 20;

/// Whether a solve reports every minimal-cost interpretation or a single
/// deterministic witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WitnessMode {
    /// The lexicographically smallest optimal assignment only.
    One,
    /// All optimal interpretations, sorted.
    #[default]
    All,
}

/// Branching order over the vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VariableOrder {
    Lexicographic,
    /// Most frequently occurring atoms first; ties lexicographic.
    #[default]
    Frequency,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub witness_mode: WitnessMode,
    pub variable_order: VariableOrder,
    pub var_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            witness_mode: WitnessMode::All,
            variable_order: VariableOrder::Frequency,
            var_cap: DEFAULT_VAR_CAP,
        }
    }
}

impl SearchConfig {
    pub fn one_witness() -> SearchConfig {
        SearchConfig {
            witness_mode: WitnessMode::One,
            ..SearchConfig::default()
        }
    }
}

/// The cost of consistency of `f`: the minimum interpretation cost among
/// models of `f`, infinite when `f` has no model compatible with the hard
/// core. Computed by solving the base extended with `f` as an inviolable
/// formula.
pub fn consistency_cost(kb: &PenaltyKb, f: &Formula) -> Result<ExtendedCost> {
    let constrained = kb.add_hard(f.clone());
    let result = min_cost_interpretations(&constrained, &SearchConfig::one_witness())?;
    Ok(result.optimum)
}
