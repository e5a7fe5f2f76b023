//! Propositional language: formulas, parsing, printing, evaluation, and
//! desk-scale satisfiability by enumeration.

mod formula;
mod interpretation;
mod parser;
mod semantics;

pub use formula::{canonicalize, Atom, Formula};
pub use interpretation::{
    enumerate_interpretations, Interpretation, PartialAssignment, Vocabulary, DEFAULT_VAR_CAP,
};
pub use parser::parse_formula;
pub use semantics::{entails, equivalent, is_consistent, Truth};

pub(crate) use semantics::consistent_over;
