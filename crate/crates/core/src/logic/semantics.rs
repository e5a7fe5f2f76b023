use std::sync::Arc;

use crate::error::{Error, Result};
use crate::logic::formula::Formula;
use crate::logic::interpretation::{
    enumerate_interpretations, Interpretation, PartialAssignment, Vocabulary, DEFAULT_VAR_CAP,
};

/// Three-valued truth status under a partial assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    Unknown,
}

impl Truth {
    fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Unknown => Truth::Unknown,
        }
    }

    fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Unknown,
        }
    }

    fn or(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::True, _) | (_, Truth::True) => Truth::True,
            (Truth::False, Truth::False) => Truth::False,
            _ => Truth::Unknown,
        }
    }
}

impl From<bool> for Truth {
    fn from(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }
}

impl Formula {
    /// Two-valued evaluation. Errors if an atom of the formula is missing
    /// from the interpretation's vocabulary.
    pub fn evaluate(&self, w: &Interpretation) -> Result<bool> {
        match self {
            Formula::Top => Ok(true),
            Formula::Bottom => Ok(false),
            Formula::Atom(a) => w
                .value(a)
                .ok_or_else(|| Error::MissingAtom(a.name().to_string())),
            Formula::Not(p) => Ok(!p.evaluate(w)?),
            Formula::And(p, q) => Ok(p.evaluate(w)? && q.evaluate(w)?),
            Formula::Or(p, q) => Ok(p.evaluate(w)? || q.evaluate(w)?),
            Formula::Implies(p, q) => Ok(!p.evaluate(w)? || q.evaluate(w)?),
            Formula::Iff(p, q) => Ok(p.evaluate(w)? == q.evaluate(w)?),
        }
    }

    /// Three-valued (Kleene) evaluation under a partial assignment. A
    /// `True`/`False` answer holds in every completion; `Unknown` makes no
    /// claim either way.
    pub fn partial_evaluate(&self, p: &PartialAssignment) -> Result<Truth> {
        match self {
            Formula::Top => Ok(Truth::True),
            Formula::Bottom => Ok(Truth::False),
            Formula::Atom(a) => match p.value(a) {
                Some(Some(v)) => Ok(v.into()),
                Some(None) => Ok(Truth::Unknown),
                None => Err(Error::MissingAtom(a.name().to_string())),
            },
            Formula::Not(f) => Ok(f.partial_evaluate(p)?.not()),
            Formula::And(f, g) => Ok(f.partial_evaluate(p)?.and(g.partial_evaluate(p)?)),
            Formula::Or(f, g) => Ok(f.partial_evaluate(p)?.or(g.partial_evaluate(p)?)),
            Formula::Implies(f, g) => {
                Ok(f.partial_evaluate(p)?.not().or(g.partial_evaluate(p)?))
            }
            Formula::Iff(f, g) => {
                match (f.partial_evaluate(p)?, g.partial_evaluate(p)?) {
                    (Truth::Unknown, _) | (_, Truth::Unknown) => Ok(Truth::Unknown),
                    (x, y) => Ok(Truth::from(x == y)),
                }
            }
        }
    }
}

/// Classical entailment, decided by enumerating the union vocabulary.
pub fn entails(f: &Formula, g: &Formula) -> Result<bool> {
    let vocab = Arc::new(Vocabulary::of_formulas([f, g]));
    for w in enumerate_interpretations(&vocab, DEFAULT_VAR_CAP)? {
        if f.evaluate(&w)? && !g.evaluate(&w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Logical equivalence: identical truth tables over the union vocabulary.
pub fn equivalent(f: &Formula, g: &Formula) -> Result<bool> {
    let vocab = Arc::new(Vocabulary::of_formulas([f, g]));
    for w in enumerate_interpretations(&vocab, DEFAULT_VAR_CAP)? {
        if f.evaluate(&w)? != g.evaluate(&w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff some interpretation of the union vocabulary satisfies every
/// formula of the set.
pub fn is_consistent<'a>(formulas: impl IntoIterator<Item = &'a Formula> + Clone) -> Result<bool> {
    let vocab = Arc::new(Vocabulary::of_formulas(formulas.clone()));
    vocab.check_cap(DEFAULT_VAR_CAP)?;
    Ok(consistent_over(formulas, &vocab))
}

/// Uncapped satisfiability check over a given vocabulary, for internal
/// callers that have already bounded the problem size.
pub(crate) fn consistent_over<'a>(
    formulas: impl IntoIterator<Item = &'a Formula> + Clone,
    vocab: &Arc<Vocabulary>,
) -> bool {
    let n = vocab.len();
    debug_assert!(n < 64);
    for i in 0..(1u64 << n) {
        let w = Interpretation::from_index(vocab.clone(), i);
        let all_true = formulas
            .clone()
            .into_iter()
            .all(|f| f.evaluate(&w).unwrap_or(false));
        if all_true {
            return true;
        }
    }
    false
}
