use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::logic::formula::{Atom, Formula};

/// Largest vocabulary the enumeration-based operations accept.
pub const DEFAULT_VAR_CAP: usize = 24;

/// An ordered, duplicate-free set of atoms. Fixes the space of
/// interpretations; order is lexicographic by atom name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Vocabulary {
    atoms: Vec<Atom>,
}

impl Vocabulary {
    pub fn new(atoms: impl IntoIterator<Item = Atom>) -> Vocabulary {
        let mut atoms: Vec<Atom> = atoms.into_iter().collect();
        atoms.sort();
        atoms.dedup();
        Vocabulary { atoms }
    }

    /// The vocabulary of a collection of formulas.
    pub fn of_formulas<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Vocabulary {
        let mut set = std::collections::BTreeSet::new();
        for f in formulas {
            f.collect_atoms(&mut set);
        }
        Vocabulary {
            atoms: set.into_iter().collect(),
        }
    }

    pub fn union(&self, other: &Vocabulary) -> Vocabulary {
        Vocabulary::new(self.atoms.iter().chain(other.atoms.iter()).cloned())
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn contains(&self, atom: &Atom) -> bool {
        self.index_of(atom).is_some()
    }

    pub fn index_of(&self, atom: &Atom) -> Option<usize> {
        self.atoms.binary_search(atom).ok()
    }

    pub fn is_superset_of(&self, other: &Vocabulary) -> bool {
        other.atoms.iter().all(|a| self.contains(a))
    }

    pub(crate) fn check_cap(&self, cap: usize) -> Result<()> {
        if self.len() > cap {
            Err(Error::VocabularyTooLarge {
                size: self.len(),
                cap,
            })
        } else {
            Ok(())
        }
    }
}

/// A total truth assignment over a vocabulary.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation {
    vocab: Arc<Vocabulary>,
    values: Vec<bool>,
}

impl Interpretation {
    pub fn new(vocab: Arc<Vocabulary>, values: Vec<bool>) -> Result<Interpretation> {
        if values.len() != vocab.len() {
            return Err(Error::Internal(format!(
                "assignment has {} values for {} atoms",
                values.len(),
                vocab.len()
            )));
        }
        Ok(Interpretation { vocab, values })
    }

    /// Builds an interpretation from named truth values. Every atom of the
    /// vocabulary must be given exactly once.
    pub fn from_pairs<'a>(
        vocab: Arc<Vocabulary>,
        pairs: impl IntoIterator<Item = (&'a str, bool)>,
    ) -> Result<Interpretation> {
        let mut values = vec![None; vocab.len()];
        for (name, value) in pairs {
            let atom = Atom::new(name)?;
            let idx = vocab
                .index_of(&atom)
                .ok_or_else(|| Error::MissingAtom(name.to_string()))?;
            values[idx] = Some(value);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| Error::MissingAtom(vocab.atoms()[i].name().to_string())))
            .collect::<Result<Vec<bool>>>()?;
        Ok(Interpretation { vocab, values })
    }

    /// The `index`-th interpretation in binary counting order: the first
    /// atom of the vocabulary is the most significant bit, false before
    /// true.
    pub fn from_index(vocab: Arc<Vocabulary>, index: u64) -> Interpretation {
        let n = vocab.len();
        let values = (0..n).map(|j| (index >> (n - 1 - j)) & 1 == 1).collect();
        Interpretation { vocab, values }
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn value(&self, atom: &Atom) -> Option<bool> {
        self.vocab.index_of(atom).map(|i| self.values[i])
    }

    pub fn as_partial(&self) -> PartialAssignment {
        PartialAssignment {
            vocab: self.vocab.clone(),
            values: self.values.iter().map(|&v| Some(v)).collect(),
        }
    }
}

/// Prints the assignment as signed atoms, e.g. `a b !c`.
impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, atom) in self.vocab.atoms().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if !self.values[i] {
                write!(f, "!")?;
            }
            write!(f, "{atom}")?;
        }
        Ok(())
    }
}

/// Yields all `2^n` interpretations of the vocabulary in binary counting
/// order over the vocabulary order (all-false first).
pub fn enumerate_interpretations(
    vocab: &Arc<Vocabulary>,
    cap: usize,
) -> Result<impl Iterator<Item = Interpretation> + use<>> {
    vocab.check_cap(cap)?;
    let vocab = vocab.clone();
    let count: u64 = 1 << vocab.len();
    Ok((0..count).map(move |i| Interpretation::from_index(vocab.clone(), i)))
}

/// A partial truth assignment over a vocabulary; solver search state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAssignment {
    vocab: Arc<Vocabulary>,
    values: Vec<Option<bool>>,
}

impl PartialAssignment {
    pub fn empty(vocab: Arc<Vocabulary>) -> PartialAssignment {
        let n = vocab.len();
        PartialAssignment {
            vocab,
            values: vec![None; n],
        }
    }

    /// Builds a partial assignment from named truth values; unnamed atoms
    /// stay unassigned.
    pub fn from_pairs<'a>(
        vocab: Arc<Vocabulary>,
        pairs: impl IntoIterator<Item = (&'a str, bool)>,
    ) -> Result<PartialAssignment> {
        let mut p = PartialAssignment::empty(vocab);
        for (name, value) in pairs {
            let atom = Atom::new(name)?;
            let idx = p
                .vocab
                .index_of(&atom)
                .ok_or_else(|| Error::MissingAtom(name.to_string()))?;
            p.values[idx] = Some(value);
        }
        Ok(p)
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn value(&self, atom: &Atom) -> Option<Option<bool>> {
        self.vocab.index_of(atom).map(|i| self.values[i])
    }

    pub fn value_at(&self, index: usize) -> Option<bool> {
        self.values[index]
    }

    pub fn assign(&mut self, index: usize, value: bool) {
        self.values[index] = Some(value);
    }

    pub fn retract(&mut self, index: usize) {
        self.values[index] = None;
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(|v| v.is_some())
    }

    /// Converts a total partial assignment into an interpretation.
    pub fn to_interpretation(&self) -> Option<Interpretation> {
        let values = self.values.iter().copied().collect::<Option<Vec<bool>>>()?;
        Some(Interpretation {
            vocab: self.vocab.clone(),
            values,
        })
    }
}
