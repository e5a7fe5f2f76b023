//! Penalty knowledge bases: multisets of weighted formulas, interpretation
//! and sub-theory costs, normalization, equivalence and cost ordering.

mod base;
mod format;
mod penalty;

pub use base::{MergeMode, PenaltyKb, Preference, SubTheory, WeightedFormula};
pub use format::{parse_pkb, write_pkb};
pub use penalty::{format_rational, parse_rational, ExtendedCost, Penalty};

pub(crate) use penalty::rational_to_f64;
