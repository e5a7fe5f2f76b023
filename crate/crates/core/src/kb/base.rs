use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kb::penalty::{ExtendedCost, Penalty};
use crate::logic::{
    canonicalize, enumerate_interpretations, equivalent, Formula, Interpretation, Vocabulary,
    DEFAULT_VAR_CAP,
};

/// One occurrence of a weighted formula inside a knowledge base. The tag
/// is the occurrence index and distinguishes multiset duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedFormula {
    formula: Formula,
    penalty: Penalty,
    tag: usize,
}

impl WeightedFormula {
    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn penalty(&self) -> &Penalty {
        &self.penalty
    }

    pub fn tag(&self) -> usize {
        self.tag
    }
}

/// A finite multiset of weighted formulas. Identical pairs may repeat and
/// every occurrence counts towards costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PenaltyKb {
    items: Vec<WeightedFormula>,
    vocab: Arc<Vocabulary>,
}

/// Outcome of comparing two sub-theories by cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preference {
    /// The first sub-theory is strictly cheaper.
    First,
    /// The second sub-theory is strictly cheaper.
    Second,
    Tie,
}

/// How `normalize` decides that two occurrences carry "the same" formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MergeMode {
    /// Identical after canonicalization (flatten/sort `&` and `|`, drop
    /// double negations). Cheap and deterministic.
    #[default]
    Syntactic,
    /// Identical truth tables over the base's vocabulary.
    Semantic,
}

impl PenaltyKb {
    pub fn new(pairs: impl IntoIterator<Item = (Formula, Penalty)>) -> PenaltyKb {
        let items: Vec<WeightedFormula> = pairs
            .into_iter()
            .enumerate()
            .map(|(tag, (formula, penalty))| WeightedFormula {
                formula,
                penalty,
                tag,
            })
            .collect();
        let vocab = Arc::new(Vocabulary::of_formulas(items.iter().map(|i| &i.formula)));
        PenaltyKb { items, vocab }
    }

    pub fn empty() -> PenaltyKb {
        PenaltyKb::new([])
    }

    pub fn items(&self) -> &[WeightedFormula] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn vocabulary(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> + Clone {
        self.items.iter().map(|i| &i.formula)
    }

    /// The same base over a larger vocabulary. Costs are unaffected: a
    /// formula's violation depends only on its own atoms.
    pub fn with_vocabulary(&self, vocab: &Arc<Vocabulary>) -> Result<PenaltyKb> {
        if !vocab.is_superset_of(&self.vocab) {
            return Err(Error::Internal(
                "replacement vocabulary must contain the base vocabulary".to_string(),
            ));
        }
        Ok(PenaltyKb {
            items: self.items.clone(),
            vocab: vocab.clone(),
        })
    }

    /// The base extended with one inviolable formula (fresh tag). The
    /// vocabulary grows by the formula's atoms; prior extensions are kept.
    pub fn add_hard(&self, f: Formula) -> PenaltyKb {
        let vocab = Arc::new(self.vocab.union(&Vocabulary::of_formulas([&f])));
        let mut items = self.items.clone();
        items.push(WeightedFormula {
            formula: f,
            penalty: Penalty::Infinite,
            tag: items.len(),
        });
        PenaltyKb { items, vocab }
    }

    /// Formulas carrying an infinite penalty, deduplicated, in item order.
    pub fn hard_core(&self) -> Vec<Formula> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for item in &self.items {
            if item.penalty.is_infinite() && seen.insert(&item.formula) {
                out.push(item.formula.clone());
            }
        }
        out
    }

    /// The cost of an interpretation: the sum of the penalties of the
    /// items it violates (zero when it satisfies everything).
    pub fn interpretation_cost(&self, w: &Interpretation) -> Result<ExtendedCost> {
        let mut total = ExtendedCost::zero();
        for item in &self.items {
            if !item.formula.evaluate(w)? {
                total += item.penalty.cost();
            }
        }
        Ok(total)
    }

    /// The cost of a sub-theory: the sum of the penalties of the items
    /// *outside* it.
    pub fn subtheory_cost(&self, sub: &SubTheory) -> Result<ExtendedCost> {
        sub.check_tags(self)?;
        Ok(self
            .items
            .iter()
            .filter(|item| !sub.contains(item.tag))
            .map(|item| item.penalty.cost())
            .sum())
    }

    /// Compares two sub-theories: the cheaper one is preferred.
    pub fn prefer(&self, a: &SubTheory, b: &SubTheory) -> Result<Preference> {
        let ca = self.subtheory_cost(a)?;
        let cb = self.subtheory_cost(b)?;
        Ok(match ca.cmp(&cb) {
            std::cmp::Ordering::Less => Preference::First,
            std::cmp::Ordering::Greater => Preference::Second,
            std::cmp::Ordering::Equal => Preference::Tie,
        })
    }

    /// Merges occurrences of the same formula into a single item whose
    /// penalty is the sum of the group, using syntactic identity.
    pub fn normalize(&self) -> PenaltyKb {
        self.normalize_with(MergeMode::Syntactic)
            .expect("syntactic merge cannot fail")
    }

    /// Like [`normalize`](Self::normalize) but grouping by truth-table
    /// equality, which also merges equivalent formulas that differ
    /// syntactically.
    pub fn normalize_semantic(&self) -> Result<PenaltyKb> {
        self.normalize_with(MergeMode::Semantic)
    }

    pub fn normalize_with(&self, mode: MergeMode) -> Result<PenaltyKb> {
        if mode == MergeMode::Semantic {
            self.vocab.check_cap(DEFAULT_VAR_CAP)?;
        }
        // group key -> position of the group's first occurrence
        let mut groups: BTreeMap<Formula, usize> = BTreeMap::new();
        let mut merged: Vec<(Formula, Penalty)> = Vec::new();
        for item in &self.items {
            let key = canonicalize(&item.formula);
            let key = match mode {
                MergeMode::Syntactic => key,
                MergeMode::Semantic => {
                    let found = groups
                        .keys()
                        .find(|k| equivalent(k, &key).unwrap_or(false))
                        .cloned();
                    found.unwrap_or(key)
                }
            };
            match groups.get(&key) {
                Some(&pos) => {
                    merged[pos].1 = merged[pos].1.merged_with(&item.penalty);
                }
                None => {
                    groups.insert(key.clone(), merged.len());
                    merged.push((key, item.penalty.clone()));
                }
            }
        }
        Ok(PenaltyKb::new(merged))
    }

    /// True iff the two bases induce the same cost on every interpretation
    /// of the union vocabulary.
    pub fn semantically_equivalent(&self, other: &PenaltyKb) -> Result<bool> {
        self.compare_costs(other, |a, b| a == b)
    }

    /// True iff this base costs no more than `other` on every
    /// interpretation of the union vocabulary.
    pub fn less_expensive(&self, other: &PenaltyKb) -> Result<bool> {
        self.compare_costs(other, |a, b| a <= b)
    }

    fn compare_costs(
        &self,
        other: &PenaltyKb,
        ok: impl Fn(&ExtendedCost, &ExtendedCost) -> bool,
    ) -> Result<bool> {
        let vocab = Arc::new(self.vocab.union(&other.vocab));
        for w in enumerate_interpretations(&vocab, DEFAULT_VAR_CAP)? {
            if !ok(
                &self.interpretation_cost(&w)?,
                &other.interpretation_cost(&w)?,
            ) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The sub-theory of all items the interpretation satisfies.
    pub fn satisfied_subtheory(&self, w: &Interpretation) -> Result<SubTheory> {
        let mut tags = BTreeSet::new();
        for item in &self.items {
            if item.formula.evaluate(w)? {
                tags.insert(item.tag);
            }
        }
        Ok(SubTheory { tags })
    }
}

/// A subset of a base's items, identified by occurrence tags. Consistency
/// is not required; costs are defined for arbitrary subsets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SubTheory {
    tags: BTreeSet<usize>,
}

impl SubTheory {
    pub fn from_tags(tags: impl IntoIterator<Item = usize>) -> SubTheory {
        SubTheory {
            tags: tags.into_iter().collect(),
        }
    }

    pub fn full(kb: &PenaltyKb) -> SubTheory {
        SubTheory::from_tags(0..kb.len())
    }

    pub fn tags(&self) -> impl Iterator<Item = usize> + '_ {
        self.tags.iter().copied()
    }

    pub fn contains(&self, tag: usize) -> bool {
        self.tags.contains(&tag)
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }

    /// The formulas the sub-theory selects from its base.
    pub fn formulas<'a>(&'a self, kb: &'a PenaltyKb) -> impl Iterator<Item = &'a Formula> + Clone {
        kb.items()
            .iter()
            .filter(|item| self.contains(item.tag))
            .map(|item| item.formula())
    }

    fn check_tags(&self, kb: &PenaltyKb) -> Result<()> {
        match self.tags.iter().find(|&&t| t >= kb.len()) {
            Some(&t) => Err(Error::ForeignTag(t)),
            None => Ok(()),
        }
    }

    pub(crate) fn from_mask(mask: u32) -> SubTheory {
        SubTheory::from_tags((0..32).filter(|&i| (mask >> i) & 1 == 1))
    }
}
