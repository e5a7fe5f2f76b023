use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A propositional variable, identified by a case-sensitive name.
///
/// Names are identifiers: a letter followed by letters, digits or
/// underscores. `T` and `F` are reserved for the constants.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Result<Atom> {
        let name = name.into();
        if !is_valid_atom_name(&name) {
            return Err(Error::InvalidAtom(name));
        }
        Ok(Atom(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    let head_ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic());
    head_ok
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "T"
        && name != "F"
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A propositional formula over named atoms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Top,
    Bottom,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Result<Formula> {
        Ok(Formula::Atom(Atom::new(name)?))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Formula {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Formula {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    /// Conjunction of all formulas in the iterator; `T` when empty.
    pub fn conjoin_all<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// The set of atoms occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Formula::Top | Formula::Bottom => {}
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Not(p) => p.collect_atoms(out),
            Formula::And(p, q)
            | Formula::Or(p, q)
            | Formula::Implies(p, q)
            | Formula::Iff(p, q) => {
                p.collect_atoms(out);
                q.collect_atoms(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Top | Formula::Bottom | Formula::Atom(_) => 6,
            Formula::Not(_) => 5,
            Formula::And(_, _) => 4,
            Formula::Or(_, _) => 3,
            Formula::Implies(_, _) => 2,
            Formula::Iff(_, _) => 1,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, parent: u8, strict: bool) -> fmt::Result {
        let mine = self.precedence();
        let needs_parens = if strict { mine <= parent } else { mine < parent };
        if needs_parens {
            write!(f, "(")?;
        }
        match self {
            Formula::Top => write!(f, "T")?,
            Formula::Bottom => write!(f, "F")?,
            Formula::Atom(a) => write!(f, "{a}")?,
            Formula::Not(p) => {
                write!(f, "!")?;
                p.fmt_prec(f, 5, false)?;
            }
            Formula::And(p, q) => {
                p.fmt_prec(f, 4, false)?;
                write!(f, " & ")?;
                q.fmt_prec(f, 4, false)?;
            }
            Formula::Or(p, q) => {
                p.fmt_prec(f, 3, false)?;
                write!(f, " | ")?;
                q.fmt_prec(f, 3, false)?;
            }
            Formula::Implies(p, q) => {
                // right-associative: parenthesize a nested implication on the left
                p.fmt_prec(f, 2, true)?;
                write!(f, " -> ")?;
                q.fmt_prec(f, 2, false)?;
            }
            Formula::Iff(p, q) => {
                p.fmt_prec(f, 1, false)?;
                write!(f, " <-> ")?;
                q.fmt_prec(f, 1, false)?;
            }
        }
        if needs_parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0, false)
    }
}

/// Rewrites a formula into the canonical shape used for syntactic
/// comparison: nested `&`/`|` chains are flattened and sorted, and double
/// negations are removed. The result is logically equivalent to the input.
pub fn canonicalize(f: &Formula) -> Formula {
    match f {
        Formula::Top | Formula::Bottom | Formula::Atom(_) => f.clone(),
        Formula::Not(p) => match canonicalize(p) {
            Formula::Not(inner) => *inner,
            other => Formula::not(other),
        },
        Formula::And(_, _) => {
            let mut parts = Vec::new();
            flatten(f, true, &mut parts);
            parts.sort();
            rebuild(parts, Formula::and)
        }
        Formula::Or(_, _) => {
            let mut parts = Vec::new();
            flatten(f, false, &mut parts);
            parts.sort();
            rebuild(parts, Formula::or)
        }
        Formula::Implies(p, q) => Formula::implies(canonicalize(p), canonicalize(q)),
        Formula::Iff(p, q) => Formula::iff(canonicalize(p), canonicalize(q)),
    }
}

fn flatten(f: &Formula, conj: bool, out: &mut Vec<Formula>) {
    match (f, conj) {
        (Formula::And(p, q), true) | (Formula::Or(p, q), false) => {
            flatten(p, conj, out);
            flatten(q, conj, out);
        }
        _ => out.push(canonicalize(f)),
    }
}

fn rebuild(parts: Vec<Formula>, join: fn(Formula, Formula) -> Formula) -> Formula {
    parts
        .into_iter()
        .reduce(join)
        .expect("flatten yields at least one operand")
}
