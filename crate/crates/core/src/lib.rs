//! Penalty logic engine.
//!
//! Knowledge bases attach a strictly positive (possibly infinite) penalty
//! to each propositional formula: the price to pay for violating it. On
//! top of that single idea the crate provides
//!
//! - costs of interpretations, formulas and sub-theories, with exact
//!   rational arithmetic ([`kb`]);
//! - minimum-cost interpretation search by branch and bound, plus an
//!   exhaustive oracle and preferred sub-theory enumeration ([`solver`]);
//! - the induced nonmonotonic entailment relation and a postulate test
//!   harness ([`inference`]);
//! - the correspondence with unnormalized Dempster-Shafer combination:
//!   contour functions and infinitesimal plausibility orders ([`belief`]);
//! - discrete-optimization encodings (maximum clique) and DIMACS/WCNF
//!   interoperability ([`encoders`]).

pub mod belief;
pub mod encoders;
mod error;
pub mod inference;
pub mod kb;
pub mod logic;
pub mod solver;

pub use error::{Error, Result};
