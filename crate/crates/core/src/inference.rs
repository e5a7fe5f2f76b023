//! The nonmonotonic entailment relation induced by a penalty base: a
//! premise entails a conclusion when every minimal-cost model of the
//! premise satisfies the conclusion. Includes a slower sub-theory-based
//! formulation kept as an independent cross-check, and a harness that
//! tests the relation against the standard rationality postulates.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::kb::PenaltyKb;
use crate::logic::{entails, equivalent, Formula, Vocabulary, DEFAULT_VAR_CAP};
use crate::solver::{
    min_cost_interpretations, phi_preferred_subtheories, SearchConfig,
};

/// A nonmonotonic entailment question: premise, conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub premise: Formula,
    pub conclusion: Formula,
}

impl Query {
    pub fn new(premise: Formula, conclusion: Formula) -> Query {
        Query {
            premise,
            conclusion,
        }
    }
}

/// True iff every minimal-cost model of the premise (over the union
/// vocabulary of the base and the query) satisfies the conclusion.
/// An unsatisfiable premise entails everything.
pub fn nm_entails(kb: &PenaltyKb, query: &Query) -> Result<bool> {
    let vocab = std::sync::Arc::new(kb.vocabulary().union(&Vocabulary::of_formulas([
        &query.premise,
        &query.conclusion,
    ])));
    vocab.check_cap(DEFAULT_VAR_CAP)?;

    if !crate::logic::consistent_over([&query.premise], &vocab) {
        return Ok(true);
    }

    let constrained = kb.with_vocabulary(&vocab)?.add_hard(query.premise.clone());
    let result = min_cost_interpretations(&constrained, &SearchConfig::default())?;
    if result.optimum.is_infinite() {
        // every model of the premise costs infinity, so all of them are
        // preferred and the relation collapses to classical entailment
        return entails(&query.premise, &query.conclusion);
    }
    for w in &result.witnesses {
        if !query.conclusion.evaluate(w)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Same relation computed on the sub-theory side: every preferred
/// premise-consistent sub-theory, together with the premise, must
/// classically entail the conclusion. Agrees with [`nm_entails`]; kept as
/// a second route for cross-validation.
pub fn nm_entails_by_subtheories(kb: &PenaltyKb, query: &Query) -> Result<bool> {
    for sub in phi_preferred_subtheories(kb, &query.premise)? {
        let conjunction = Formula::and(
            Formula::conjoin_all(sub.formulas(kb).cloned()),
            query.premise.clone(),
        );
        if !entails(&conjunction, &query.conclusion)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Answers the query and verifies the reduction identity for satisfiable
/// premises: the premise nonmonotonically entails the conclusion iff it
/// does so classically, or the conclusion follows unconditionally once
/// the premise is added as an inviolable formula.
pub fn reduction_check(kb: &PenaltyKb, query: &Query) -> Result<bool> {
    if !crate::logic::is_consistent([&query.premise])? {
        return Err(Error::UnsatisfiablePremise);
    }
    let direct = nm_entails(kb, query)?;
    let reduced = entails(&query.premise, &query.conclusion)?
        || nm_entails(
            &kb.add_hard(query.premise.clone()),
            &Query::new(Formula::Top, query.conclusion.clone()),
        )?;
    if direct != reduced {
        return Err(Error::Internal(format!(
            "reduction identity failed for `{}` |~ `{}`: direct {direct}, reduced {reduced}",
            query.premise, query.conclusion
        )));
    }
    Ok(direct)
}

/// The rationality postulates the relation is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Postulate {
    Reflexivity,
    LeftLogicalEquivalence,
    RightWeakening,
    And,
    Or,
    CautiousMonotony,
    Cut,
    RationalMonotony,
    Supraclassicality,
}

impl Postulate {
    pub const ALL: [Postulate; 9] = [
        Postulate::Reflexivity,
        Postulate::LeftLogicalEquivalence,
        Postulate::RightWeakening,
        Postulate::And,
        Postulate::Or,
        Postulate::CautiousMonotony,
        Postulate::Cut,
        Postulate::RationalMonotony,
        Postulate::Supraclassicality,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Postulate::Reflexivity => "reflexivity",
            Postulate::LeftLogicalEquivalence => "left logical equivalence",
            Postulate::RightWeakening => "right weakening",
            Postulate::And => "and",
            Postulate::Or => "or",
            Postulate::CautiousMonotony => "cautious monotony",
            Postulate::Cut => "cut",
            Postulate::RationalMonotony => "rational monotony",
            Postulate::Supraclassicality => "supraclassicality",
        }
    }
}

/// A postulate instantiation that failed, with the formulas in the role
/// order of the postulate statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub postulate: Postulate,
    pub formulas: Vec<Formula>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostulateOutcome {
    pub postulate: Postulate,
    pub cases_checked: u64,
    pub counterexamples: Vec<Counterexample>,
}

/// Per-postulate pass counts and counterexamples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PostulateReport {
    pub outcomes: Vec<PostulateOutcome>,
}

impl PostulateReport {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.counterexamples.is_empty())
    }

    pub fn counterexamples(&self) -> impl Iterator<Item = &Counterexample> {
        self.outcomes.iter().flat_map(|o| o.counterexamples.iter())
    }
}

/// Exhaustively instantiates each postulate over the sample formulas and
/// records every failure. With a penalty base the relation is expected to
/// satisfy all of them.
pub fn check_postulates(kb: &PenaltyKb, samples: &[Formula]) -> Result<PostulateReport> {
    let mut harness = Harness {
        kb,
        memo: HashMap::new(),
    };
    let mut outcomes = Vec::new();
    for postulate in Postulate::ALL {
        outcomes.push(harness.run(postulate, samples)?);
    }
    Ok(PostulateReport { outcomes })
}

struct Harness<'a> {
    kb: &'a PenaltyKb,
    memo: HashMap<(Formula, Formula), bool>,
}

impl Harness<'_> {
    /// The nonmonotonic relation, memoized per (premise, conclusion).
    fn nm(&mut self, premise: &Formula, conclusion: &Formula) -> Result<bool> {
        let key = (premise.clone(), conclusion.clone());
        if let Some(&answer) = self.memo.get(&key) {
            return Ok(answer);
        }
        let answer = nm_entails(self.kb, &Query::new(premise.clone(), conclusion.clone()))?;
        self.memo.insert(key, answer);
        Ok(answer)
    }

    fn run(&mut self, postulate: Postulate, samples: &[Formula]) -> Result<PostulateOutcome> {
        let mut cases_checked = 0;
        let mut counterexamples = Vec::new();
        let check = |holds: bool, formulas: &[&Formula], counterexamples: &mut Vec<_>| {
            if !holds {
                counterexamples.push(Counterexample {
                    postulate,
                    formulas: formulas.iter().map(|f| (*f).clone()).collect(),
                });
            }
        };

        match postulate {
            Postulate::Reflexivity => {
                for f in samples {
                    cases_checked += 1;
                    let holds = self.nm(f, f)?;
                    check(holds, &[f], &mut counterexamples);
                }
            }
            Postulate::Supraclassicality => {
                for f in samples {
                    for g in samples {
                        cases_checked += 1;
                        let holds = !entails(f, g)? || self.nm(f, g)?;
                        check(holds, &[f, g], &mut counterexamples);
                    }
                }
            }
            Postulate::LeftLogicalEquivalence => {
                for f in samples {
                    for f2 in samples {
                        for g in samples {
                            cases_checked += 1;
                            let holds = !(equivalent(f, f2)? && self.nm(f, g)?)
                                || self.nm(f2, g)?;
                            check(holds, &[f, f2, g], &mut counterexamples);
                        }
                    }
                }
            }
            Postulate::RightWeakening => {
                for f in samples {
                    for g in samples {
                        for g2 in samples {
                            cases_checked += 1;
                            let holds =
                                !(entails(g, g2)? && self.nm(f, g)?) || self.nm(f, g2)?;
                            check(holds, &[f, g, g2], &mut counterexamples);
                        }
                    }
                }
            }
            Postulate::And => {
                for f in samples {
                    for g in samples {
                        for h in samples {
                            cases_checked += 1;
                            let holds = !(self.nm(f, g)? && self.nm(f, h)?)
                                || self.nm(f, &Formula::and(g.clone(), h.clone()))?;
                            check(holds, &[f, g, h], &mut counterexamples);
                        }
                    }
                }
            }
            Postulate::Or => {
                for f in samples {
                    for g in samples {
                        for h in samples {
                            cases_checked += 1;
                            let holds = !(self.nm(f, h)? && self.nm(g, h)?)
                                || self.nm(&Formula::or(f.clone(), g.clone()), h)?;
                            check(holds, &[f, g, h], &mut counterexamples);
                        }
                    }
                }
            }
            Postulate::CautiousMonotony => {
                for f in samples {
                    for g in samples {
                        for h in samples {
                            cases_checked += 1;
                            let holds = !(self.nm(f, g)? && self.nm(f, h)?)
                                || self.nm(&Formula::and(f.clone(), g.clone()), h)?;
                            check(holds, &[f, g, h], &mut counterexamples);
                        }
                    }
                }
            }
            Postulate::Cut => {
                for f in samples {
                    for g in samples {
                        for h in samples {
                            cases_checked += 1;
                            let holds = !(self.nm(f, g)?
                                && self.nm(&Formula::and(f.clone(), g.clone()), h)?)
                                || self.nm(f, h)?;
                            check(holds, &[f, g, h], &mut counterexamples);
                        }
                    }
                }
            }
            Postulate::RationalMonotony => {
                for f in samples {
                    for g in samples {
                        for h in samples {
                            cases_checked += 1;
                            let holds = !(self.nm(f, h)?
                                && !self.nm(f, &Formula::not(g.clone()))?)
                                || self.nm(&Formula::and(f.clone(), g.clone()), h)?;
                            check(holds, &[f, g, h], &mut counterexamples);
                        }
                    }
                }
            }
        }

        Ok(PostulateOutcome {
            postulate,
            cases_checked,
            counterexamples,
        })
    }
}

/// Replays a counterexample against the relation; used to validate
/// reports.
pub fn replay_counterexample(kb: &PenaltyKb, ce: &Counterexample) -> Result<bool> {
    let mut harness = Harness {
        kb,
        memo: HashMap::new(),
    };
    let fs = &ce.formulas;
    let holds = match ce.postulate {
        Postulate::Reflexivity => harness.nm(&fs[0], &fs[0])?,
        Postulate::Supraclassicality => !entails(&fs[0], &fs[1])? || harness.nm(&fs[0], &fs[1])?,
        Postulate::LeftLogicalEquivalence => {
            !(equivalent(&fs[0], &fs[1])? && harness.nm(&fs[0], &fs[2])?)
                || harness.nm(&fs[1], &fs[2])?
        }
        Postulate::RightWeakening => {
            !(entails(&fs[1], &fs[2])? && harness.nm(&fs[0], &fs[1])?)
                || harness.nm(&fs[0], &fs[2])?
        }
        Postulate::And => {
            !(harness.nm(&fs[0], &fs[1])? && harness.nm(&fs[0], &fs[2])?)
                || harness.nm(&fs[0], &Formula::and(fs[1].clone(), fs[2].clone()))?
        }
        Postulate::Or => {
            !(harness.nm(&fs[0], &fs[2])? && harness.nm(&fs[1], &fs[2])?)
                || harness.nm(&Formula::or(fs[0].clone(), fs[1].clone()), &fs[2])?
        }
        Postulate::CautiousMonotony => {
            !(harness.nm(&fs[0], &fs[1])? && harness.nm(&fs[0], &fs[2])?)
                || harness.nm(&Formula::and(fs[0].clone(), fs[1].clone()), &fs[2])?
        }
        Postulate::Cut => {
            !(harness.nm(&fs[0], &fs[1])?
                && harness.nm(&Formula::and(fs[0].clone(), fs[1].clone()), &fs[2])?)
                || harness.nm(&fs[0], &fs[2])?
        }
        Postulate::RationalMonotony => {
            !(harness.nm(&fs[0], &fs[2])?
                && !harness.nm(&fs[0], &Formula::not(fs[1].clone()))?)
                || harness.nm(&Formula::and(fs[0].clone(), fs[1].clone()), &fs[2])?
        }
    };
    Ok(!holds)
}
