//! Belief-function view of a penalty base.
//!
//! Each weighted formula induces a simple support function putting mass
//! `1 - e^(-penalty)` on the formula and the rest on `T`; combining them
//! with the unnormalized Dempster rule yields a mass function whose
//! contour equals `e^(-cost)` on every interpretation. The infinitesimal
//! variant replaces `e^(-1)` by an infinitely small base and keeps only
//! orders of magnitude, which are computed here exactly.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kb::{ExtendedCost, PenaltyKb, Penalty};
use crate::logic::{
    canonicalize, consistent_over, enumerate_interpretations, Formula, Interpretation,
    Vocabulary, DEFAULT_VAR_CAP,
};
use crate::solver::{satisfied_masks, DEFAULT_ITEM_CAP};

/// A mass function over formula-shaped focal elements. Keys are canonical
/// formulas; masses are strictly positive and sum to one. `F` may carry
/// mass: combination does not renormalize conflict away.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFunction {
    focal: BTreeMap<Formula, f64>,
}

impl MassFunction {
    /// The vacuous mass function: everything on `T`.
    pub fn vacuous() -> MassFunction {
        MassFunction {
            focal: BTreeMap::from([(Formula::Top, 1.0)]),
        }
    }

    pub fn focal(&self) -> impl Iterator<Item = (&Formula, f64)> {
        self.focal.iter().map(|(f, &m)| (f, m))
    }

    pub fn len(&self) -> usize {
        self.focal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.focal.is_empty()
    }

    /// Mass carried by the given formula (canonicalized before lookup).
    pub fn mass_of(&self, f: &Formula) -> f64 {
        self.focal.get(&canonicalize(f)).copied().unwrap_or(0.0)
    }

    /// Mass stranded on the contradiction by conflicting combinations.
    pub fn conflict(&self) -> f64 {
        self.focal.get(&Formula::Bottom).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.focal.values().sum()
    }

    /// The vocabulary of all focal elements.
    pub fn vocabulary(&self) -> Vocabulary {
        Vocabulary::of_formulas(self.focal.keys())
    }

    fn insert(&mut self, key: Formula, mass: f64) {
        if mass != 0.0 {
            *self.focal.entry(key).or_insert(0.0) += mass;
        }
    }
}

/// The simple support function for one weighted formula: mass
/// `1 - e^(-penalty)` on the formula, `e^(-penalty)` on `T`. An infinite
/// penalty puts everything on the formula.
pub fn simple_support(f: &Formula, penalty: &Penalty) -> MassFunction {
    let escape = match penalty {
        Penalty::Finite(v) => (-crate::kb::rational_to_f64(v)).exp(),
        Penalty::Infinite => 0.0,
    };
    let mut m = MassFunction {
        focal: BTreeMap::new(),
    };
    m.insert(canonicalize(f), 1.0 - escape);
    m.insert(Formula::Top, escape);
    m
}

/// Unnormalized Dempster combination: masses multiply onto the
/// conjunction of their focal elements, and inconsistent conjunctions
/// accumulate on `F`.
pub fn combine(m1: &MassFunction, m2: &MassFunction) -> MassFunction {
    let mut out = MassFunction {
        focal: BTreeMap::new(),
    };
    for (f, mf) in m1.focal() {
        for (g, mg) in m2.focal() {
            out.insert(conjoin_focals(f, g), mf * mg);
        }
    }
    out.focal.retain(|_, m| *m != 0.0);
    out
}

/// Conjunction of two canonical focal elements: `T` operands drop out,
/// duplicate conjuncts merge, and an unsatisfiable result collapses to
/// `F`.
fn conjoin_focals(f: &Formula, g: &Formula) -> Formula {
    match conjoin_syntactic(f, g) {
        Formula::Bottom => Formula::Bottom,
        conjunction => {
            let vocab = Arc::new(Vocabulary::of_formulas([&conjunction]));
            if consistent_over([&conjunction], &vocab) {
                conjunction
            } else {
                Formula::Bottom
            }
        }
    }
}

fn conjoin_syntactic(f: &Formula, g: &Formula) -> Formula {
    let mut parts = Vec::new();
    collect_conjuncts(f, &mut parts);
    collect_conjuncts(g, &mut parts);
    if parts.contains(&Formula::Bottom) {
        return Formula::Bottom;
    }
    parts.retain(|p| *p != Formula::Top);
    parts.sort();
    parts.dedup();
    if parts.is_empty() {
        return Formula::Top;
    }
    canonicalize(&Formula::conjoin_all(parts))
}

fn collect_conjuncts(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::And(p, q) => {
            collect_conjuncts(p, out);
            collect_conjuncts(q, out);
        }
        _ => out.push(f.clone()),
    }
}

/// The combined mass function of a whole base: the fold of
/// [`combine`] over the simple support functions of its items. Focal
/// elements that are logically equivalent are merged when the vocabulary
/// is small enough to compare truth tables cheaply.
pub fn kb_mass(kb: &PenaltyKb) -> Result<MassFunction> {
    if kb.len() > DEFAULT_ITEM_CAP {
        return Err(Error::TooManyItems {
            count: kb.len(),
            cap: DEFAULT_ITEM_CAP,
        });
    }
    if kb.vocabulary().len() <= MERGE_VOCAB_LIMIT {
        return Ok(kb_mass_by_signature(kb));
    }
    let mut m = MassFunction::vacuous();
    for item in kb.items() {
        m = combine(&m, &simple_support(item.formula(), item.penalty()));
    }
    Ok(m)
}

// Truth tables fit in a few machine words below this vocabulary size, so
// the fold can key focal elements by table, which both replaces the
// per-product satisfiability checks and merges equivalent focal elements
// exactly. Merging never changes contour or plausibility sums.
const MERGE_VOCAB_LIMIT: usize = 12;

/// One truth table over a fixed small vocabulary, one bit per
/// interpretation index.
type Signature = Vec<u64>;

fn formula_signature(f: &Formula, vocab: &Arc<Vocabulary>) -> Result<Signature> {
    let size = 1usize << vocab.len();
    let mut sig = vec![0u64; size.div_ceil(64)];
    for index in 0..size {
        let w = Interpretation::from_index(vocab.clone(), index as u64);
        if f.evaluate(&w)? {
            sig[index / 64] |= 1 << (index % 64);
        }
    }
    Ok(sig)
}

fn kb_mass_by_signature(kb: &PenaltyKb) -> MassFunction {
    let vocab = kb.vocabulary();
    let size = 1usize << vocab.len();
    let full: Signature = {
        let mut sig = vec![u64::MAX; size.div_ceil(64)];
        if !size.is_multiple_of(64) {
            *sig.last_mut().expect("at least one word") = (1u64 << (size % 64)) - 1;
        }
        sig
    };

    // table -> (representative formula, accumulated mass)
    let mut focal: BTreeMap<Signature, (Formula, f64)> = BTreeMap::new();
    focal.insert(full.clone(), (Formula::Top, 1.0));

    for item in kb.items() {
        let phi = canonicalize(item.formula());
        let phi_sig = formula_signature(&phi, vocab).expect("base vocabulary covers its items");
        let escape = match item.penalty() {
            Penalty::Finite(v) => (-crate::kb::rational_to_f64(v)).exp(),
            Penalty::Infinite => 0.0,
        };
        let mut next: BTreeMap<Signature, (Formula, f64)> = BTreeMap::new();
        let mut put = |sig: Signature, formula: &Formula, mass: f64| {
            if mass == 0.0 {
                return;
            }
            next.entry(sig)
                .and_modify(|(_, total)| *total += mass)
                .or_insert_with(|| (formula.clone(), mass));
        };
        for (sig, (f, mass)) in &focal {
            let kept: Signature = sig.iter().zip(&phi_sig).map(|(a, b)| a & b).collect();
            let kept_formula = if kept.iter().all(|&w| w == 0) {
                Formula::Bottom
            } else if kept == full {
                Formula::Top
            } else {
                // the table already proves satisfiability
                conjoin_syntactic(f, &phi)
            };
            put(kept, &kept_formula, mass * (1.0 - escape));
            put(sig.clone(), f, mass * escape);
        }
        focal = next;
    }

    let mut out = MassFunction {
        focal: BTreeMap::new(),
    };
    for (_, (f, mass)) in focal {
        out.insert(f, mass);
    }
    out
}

/// The contour value at an interpretation: the summed mass of the focal
/// elements it satisfies.
pub fn contour(m: &MassFunction, w: &Interpretation) -> Result<f64> {
    let mut total = 0.0;
    for (f, mass) in m.focal() {
        if f.evaluate(w)? {
            total += mass;
        }
    }
    Ok(total)
}

/// Plausibility of a formula: the summed mass of the focal elements
/// consistent with it.
pub fn plausibility(m: &MassFunction, f: &Formula) -> Result<f64> {
    let vocab = Arc::new(
        m.vocabulary()
            .union(&Vocabulary::of_formulas([f])),
    );
    vocab.check_cap(DEFAULT_VAR_CAP)?;
    let mut total = 0.0;
    for (g, mass) in m.focal() {
        if consistent_over([g, f], &vocab) {
            total += mass;
        }
    }
    Ok(total)
}

/// The largest gap, over all interpretations, between the interpretation
/// cost and the negated log-contour of the combined mass function.
/// Infinite costs must be matched by exactly zero contour mass and count
/// as zero deviation when they are; any mismatch reports infinity.
pub fn max_contour_deviation(kb: &PenaltyKb) -> Result<f64> {
    let m = kb_mass(kb)?;
    let vocab = kb.vocabulary();
    vocab.check_cap(DEFAULT_VAR_CAP)?;

    let mut worst: f64 = 0.0;
    if vocab.len() <= MERGE_VOCAB_LIMIT {
        let mut tables = Vec::with_capacity(m.len());
        for (f, mass) in m.focal() {
            tables.push((formula_signature(f, vocab)?, mass));
        }
        for index in 0..(1usize << vocab.len()) {
            let w = Interpretation::from_index(vocab.clone(), index as u64);
            let pl = tables
                .iter()
                .filter(|(sig, _)| (sig[index / 64] >> (index % 64)) & 1 == 1)
                .map(|(_, mass)| mass)
                .sum();
            worst = worst.max(cost_log_gap(&kb.interpretation_cost(&w)?, pl));
        }
    } else {
        for w in enumerate_interpretations(vocab, DEFAULT_VAR_CAP)? {
            let pl = contour(&m, &w)?;
            worst = worst.max(cost_log_gap(&kb.interpretation_cost(&w)?, pl));
        }
    }
    Ok(worst)
}

fn cost_log_gap(cost: &ExtendedCost, pl: f64) -> f64 {
    if cost.is_infinite() {
        if pl == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (cost.to_f64() + pl.ln()).abs()
    }
}

/// The leading order of an infinitesimal plausibility: `Pl(f)` behaves
/// like `multiplicity * eps^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderOfMagnitude {
    /// Exponent of the leading term; infinite when no item subset
    /// consistent with the query has a finite excluded-penalty sum.
    pub exponent: ExtendedCost,
    /// Number of subsets attaining the exponent; zero iff the exponent is
    /// infinite.
    pub multiplicity: u64,
}

/// Computes the leading order of the plausibility of `f` under the
/// infinitesimal masses `eps^penalty`, exactly: over all item subsets
/// whose conjunction is consistent with `f`, minimize the excluded
/// penalty sum and count the minimizers. The exponent coincides with the
/// cost of consistency of `f`.
pub fn infinitesimal_plausibility(kb: &PenaltyKb, f: &Formula) -> Result<OrderOfMagnitude> {
    if kb.len() > DEFAULT_ITEM_CAP {
        return Err(Error::TooManyItems {
            count: kb.len(),
            cap: DEFAULT_ITEM_CAP,
        });
    }
    let vocab = Arc::new(
        kb.vocabulary()
            .union(&Vocabulary::of_formulas([f])),
    );
    vocab.check_cap(DEFAULT_VAR_CAP)?;

    let models = satisfied_masks(kb, Some(f), &vocab)?;
    let n = kb.len();
    let mut best: Option<BigRational> = None;
    let mut multiplicity = 0u64;

    for mask in 0..(1u32 << n) {
        if !models.iter().any(|&m| mask & !m == 0) {
            continue; // conjunction inconsistent with f
        }
        let Some(sum) = finite_excluded_sum(kb, mask) else {
            continue; // an excluded infinite penalty: eps^inf contributes 0
        };
        match &mut best {
            Some(b) if sum > *b => {}
            Some(b) if sum == *b => multiplicity += 1,
            _ => {
                best = Some(sum);
                multiplicity = 1;
            }
        }
    }

    Ok(match best {
        Some(v) => OrderOfMagnitude {
            exponent: ExtendedCost::Finite(v),
            multiplicity,
        },
        None => OrderOfMagnitude {
            exponent: ExtendedCost::Infinite,
            multiplicity: 0,
        },
    })
}

fn finite_excluded_sum(kb: &PenaltyKb, mask: u32) -> Option<BigRational> {
    let mut sum = BigRational::zero();
    for (bit, item) in kb.items().iter().enumerate() {
        if (mask >> bit) & 1 == 0 {
            match item.penalty() {
                Penalty::Finite(v) => sum += v,
                Penalty::Infinite => return None,
            }
        }
    }
    Some(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kb::parse_pkb;
    use crate::logic::parse_formula;
    use crate::solver::consistency_cost;

    fn pk1() -> PenaltyKb {
        parse_pkb("inf a\n10 b | c\n5 !b\n7 !c\n").unwrap()
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn simple_support_splits_mass_between_formula_and_top() {
        let a = parse_formula("a").unwrap();

        let hard = simple_support(&a, &Penalty::Infinite);
        assert_eq!(hard.len(), 1);
        assert_eq!(hard.mass_of(&a), 1.0);

        let ln2 = Penalty::parse("693147180559945/1000000000000000").unwrap();
        let half = simple_support(&a, &ln2);
        assert_close(half.mass_of(&a), 0.5, 1e-12);
        assert_close(half.mass_of(&Formula::Top), 0.5, 1e-12);

        let degenerate = simple_support(&Formula::Top, &Penalty::from_integer(3).unwrap());
        assert_eq!(degenerate.len(), 1);
        assert_eq!(degenerate.mass_of(&Formula::Top), 1.0);
    }

    #[test]
    fn combining_with_the_vacuous_function_changes_nothing() {
        let m = simple_support(&parse_formula("a | b").unwrap(), &Penalty::from_integer(2).unwrap());
        let combined = combine(&m, &MassFunction::vacuous());
        assert_eq!(combined, m);
    }

    #[test]
    fn total_conflict_lands_on_bottom() {
        let yes = simple_support(&parse_formula("a").unwrap(), &Penalty::Infinite);
        let no = simple_support(&parse_formula("!a").unwrap(), &Penalty::Infinite);
        let combined = combine(&yes, &no);
        assert_eq!(combined.len(), 1);
        assert_eq!(combined.conflict(), 1.0);
    }

    #[test]
    fn repeated_support_for_one_formula_compounds() {
        let a = parse_formula("a").unwrap();
        let m1 = simple_support(&a, &Penalty::from_integer(2).unwrap());
        let m2 = simple_support(&a, &Penalty::from_integer(3).unwrap());
        let combined = combine(&m1, &m2);
        assert_eq!(combined.len(), 2);
        assert_close(combined.mass_of(&a), 1.0 - (-5.0f64).exp(), 1e-12);
        assert_close(combined.mass_of(&Formula::Top), (-5.0f64).exp(), 1e-12);
    }

    #[test]
    fn kb_mass_folds_the_items() {
        let single = parse_pkb("4 a & b\n").unwrap();
        let m = kb_mass(&single).unwrap();
        let expected = simple_support(&parse_formula("a & b").unwrap(), &Penalty::from_integer(4).unwrap());
        assert_eq!(m, expected);

        let empty = kb_mass(&PenaltyKb::empty()).unwrap();
        assert_eq!(empty, MassFunction::vacuous());
    }

    #[test]
    fn equivalent_bases_share_their_contour() {
        let pk2 = parse_pkb("5 a\n3 a\n10 b\n").unwrap();
        let pk3 = parse_pkb("8 a\n10 b\n").unwrap();
        let m2 = kb_mass(&pk2).unwrap();
        let m3 = kb_mass(&pk3).unwrap();
        let vocab = Arc::new(pk2.vocabulary().union(pk3.vocabulary()));
        for w in enumerate_interpretations(&vocab, DEFAULT_VAR_CAP).unwrap() {
            assert_close(
                contour(&m2, &w).unwrap(),
                contour(&m3, &w).unwrap(),
                1e-12,
            );
        }
    }

    #[test]
    fn contour_matches_the_exponential_of_negated_cost() {
        let m = kb_mass(&pk1()).unwrap();
        let vocab = pk1().vocabulary().clone();
        let w = Interpretation::from_pairs(
            vocab.clone(),
            [("a", true), ("b", true), ("c", false)],
        )
        .unwrap();
        assert_close(contour(&m, &w).unwrap(), (-5.0f64).exp(), 1e-12);

        let w = Interpretation::from_pairs(vocab, [("a", false), ("b", true), ("c", true)])
            .unwrap();
        assert_eq!(contour(&m, &w).unwrap(), 0.0);

        let anything = Interpretation::from_pairs(
            Arc::new(Vocabulary::of_formulas([&parse_formula("x").unwrap()])),
            [("x", false)],
        )
        .unwrap();
        assert_eq!(contour(&MassFunction::vacuous(), &anything).unwrap(), 1.0);
    }

    #[test]
    fn plausibility_examples() {
        let m = kb_mass(&pk1()).unwrap();
        assert_eq!(plausibility(&m, &Formula::Bottom).unwrap(), 0.0);
        assert_eq!(
            plausibility(&MassFunction::vacuous(), &parse_formula("a").unwrap()).unwrap(),
            1.0
        );

        // independent route: sum the products over item subsets whose
        // conjunction is consistent with the query
        let kb = pk1();
        let query = parse_formula("a & b").unwrap();
        let vocab = Arc::new(kb.vocabulary().union(&Vocabulary::of_formulas([&query])));
        let mut expected = 0.0;
        for mask in 0u32..(1 << kb.len()) {
            let mut fs: Vec<&Formula> =
                kb.items().iter().enumerate().filter(|(i, _)| (mask >> i) & 1 == 1).map(|(_, it)| it.formula()).collect();
            fs.push(&query);
            if !consistent_over(fs.iter().copied(), &vocab) {
                continue;
            }
            let mut product = 1.0;
            for (i, item) in kb.items().iter().enumerate() {
                let escape = match item.penalty() {
                    Penalty::Finite(v) => (-crate::kb::rational_to_f64(v)).exp(),
                    Penalty::Infinite => 0.0,
                };
                product *= if (mask >> i) & 1 == 1 { 1.0 - escape } else { escape };
            }
            expected += product;
        }
        assert_close(plausibility(&m, &query).unwrap(), expected, 1e-12);
    }

    #[test]
    fn deviation_is_tiny_on_documented_bases() {
        assert!(max_contour_deviation(&pk1()).unwrap() <= 1e-9);
        assert_eq!(max_contour_deviation(&PenaltyKb::empty()).unwrap(), 0.0);
    }

    #[test]
    fn infinitesimal_orders() {
        let kb = pk1();
        let order = infinitesimal_plausibility(&kb, &parse_formula("a & b").unwrap()).unwrap();
        assert_eq!(order.exponent, ExtendedCost::from_integer(5));
        assert_eq!(order.multiplicity, 1);

        let bottom = infinitesimal_plausibility(&kb, &Formula::Bottom).unwrap();
        assert_eq!(bottom.exponent, ExtendedCost::Infinite);
        assert_eq!(bottom.multiplicity, 0);

        let consistent = parse_pkb("3 a\n2 b\n").unwrap();
        let top = infinitesimal_plausibility(&consistent, &Formula::Top).unwrap();
        assert_eq!(top.exponent, ExtendedCost::zero());
        assert_eq!(top.multiplicity, 1);
    }

    mod properties {
        use super::*;
        use crate::kb::tests::properties::arb_kb;
        use crate::logic::prop_tests::arb_formula;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn masses_sum_to_one(kb in arb_kb(5)) {
                let m = kb_mass(&kb).unwrap();
                prop_assert!((m.total() - 1.0).abs() <= 1e-12);
                prop_assert!(m.focal().all(|(_, mass)| mass > 0.0));
            }

            #[test]
            fn contour_is_the_product_of_item_escapes(kb in arb_kb(5), bits in any::<u64>()) {
                let m = kb_mass(&kb).unwrap();
                let vocab = kb.vocabulary().clone();
                let w = Interpretation::from_index(
                    vocab.clone(),
                    bits & ((1u64 << vocab.len()) - 1),
                );
                let mut product = 1.0;
                for item in kb.items() {
                    if !item.formula().evaluate(&w).unwrap() {
                        product *= match item.penalty() {
                            Penalty::Finite(v) => (-crate::kb::rational_to_f64(v)).exp(),
                            Penalty::Infinite => 0.0,
                        };
                    }
                }
                prop_assert!((contour(&m, &w).unwrap() - product).abs() <= 1e-9);
            }

            #[test]
            fn combination_is_commutative_and_associative(
                a in arb_kb(3), b in arb_kb(3), c in arb_kb(3)
            ) {
                let (ma, mb, mc) = (kb_mass(&a).unwrap(), kb_mass(&b).unwrap(), kb_mass(&c).unwrap());
                let ab = combine(&ma, &mb);
                let ba = combine(&mb, &ma);
                prop_assert!(mass_functions_close(&ab, &ba, 1e-12));
                let ab_c = combine(&ab, &mc);
                let a_bc = combine(&ma, &combine(&mb, &mc));
                prop_assert!(mass_functions_close(&ab_c, &a_bc, 1e-12));
            }

            #[test]
            fn leading_exponent_is_the_consistency_cost(kb in arb_kb(5), f in arb_formula()) {
                let order = infinitesimal_plausibility(&kb, &f).unwrap();
                prop_assert_eq!(order.exponent, consistency_cost(&kb, &f).unwrap());
            }

            #[test]
            fn contour_deviation_stays_below_tolerance(kb in arb_kb(6)) {
                prop_assert!(max_contour_deviation(&kb).unwrap() <= 1e-9);
            }

            #[test]
            fn equivalent_bases_keep_the_contour(kb in arb_kb(5)) {
                // normalize preserves the cost function, so the contours
                // must agree pointwise
                let merged = kb.normalize();
                let m1 = kb_mass(&kb).unwrap();
                let m2 = kb_mass(&merged).unwrap();
                let vocab = Arc::new(kb.vocabulary().union(merged.vocabulary()));
                for w in enumerate_interpretations(&vocab, DEFAULT_VAR_CAP).unwrap() {
                    let small = |m: &MassFunction, base: &PenaltyKb| {
                        let narrowed = Interpretation::from_pairs(
                            base.vocabulary().clone(),
                            base.vocabulary()
                                .atoms()
                                .iter()
                                .map(|a| (a.name(), w.value(a).unwrap())),
                        )
                        .unwrap();
                        contour(m, &narrowed).unwrap()
                    };
                    prop_assert!((small(&m1, &kb) - small(&m2, &merged)).abs() <= 1e-9);
                }
            }
        }

        fn mass_functions_close(a: &MassFunction, b: &MassFunction, tol: f64) -> bool {
            let keys: std::collections::BTreeSet<&Formula> =
                a.focal().map(|(f, _)| f).chain(b.focal().map(|(f, _)| f)).collect();
            keys.into_iter()
                .all(|k| (a.mass_of(k) - b.mass_of(k)).abs() <= tol)
        }
    }
}
