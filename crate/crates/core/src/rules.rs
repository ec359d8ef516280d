//! Positive rules from frequent itemsets, and negative rules derived from them.
//!
//! For a positive rule `A → C` the two negative forms are evaluated from
//! stored supports alone:
//!
//! ```text
//! supp(A → ¬C) = supp(A) − supp(A∪C)
//! conf(A → ¬C) = 1 − conf(A → C)
//! supp(¬A → C) = supp(C) − supp(A∪C)
//! conf(¬A → C) = supp(C) / (1 − supp(A)) · (1 − conf(C → A))
//! ```
//!
//! `¬X` means "the transaction does not contain all of X".

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::ingest::BooleanMatrix;
use crate::itemset::{ItemId, Itemset};
use crate::miner::{mine, support_of, FrequentSetCollection, MiningParams};
use crate::scalar::Scalar;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum RuleError {
    #[error("support of {0} is missing from the support table")]
    MissingSupport(Itemset),
    #[error("antecedent {0} never occurs; A → ¬C is undefined")]
    UnsupportedAntecedent(Itemset),
    #[error("antecedent {0} occurs in every transaction; ¬A → C is undefined")]
    UniversalAntecedent(Itemset),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Polarity {
    Positive,
    NegatedConsequent,
    NegatedAntecedent,
}

impl Polarity {
    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::NegatedConsequent => "negated_consequent",
            Polarity::NegatedAntecedent => "negated_antecedent",
        }
    }

    pub fn is_negative(self) -> bool {
        self != Polarity::Positive
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rule<S> {
    pub antecedent: Itemset,
    pub consequent: Itemset,
    pub polarity: Polarity,
    pub support: S,
    pub confidence: S,
}

impl<S> Rule<S> {
    pub fn key(&self) -> (Polarity, &Itemset, &Itemset) {
        (self.polarity, &self.antecedent, &self.consequent)
    }

    /// `T;Pou5f1 → ¬Mesp1` style rendering with labels.
    pub fn describe<L: AsRef<str>>(&self, labels: &[L]) -> String {
        describe(self.polarity, &self.antecedent, &self.consequent, labels)
    }
}

fn describe<L: AsRef<str>>(polarity: Polarity, a: &Itemset, c: &Itemset, labels: &[L]) -> String {
    let negated = |set: &Itemset| {
        if set.len() > 1 {
            format!("¬{{{}}}", set.display_with(labels))
        } else {
            format!("¬{}", set.display_with(labels))
        }
    };
    let (a_text, c_text) = (a.display_with(labels), c.display_with(labels));
    match polarity {
        Polarity::Positive => format!("{a_text} → {c_text}"),
        Polarity::NegatedConsequent => format!("{a_text} → {}", negated(c)),
        Polarity::NegatedAntecedent => format!("{} → {c_text}", negated(a)),
    }
}

/// A negative rule awaiting evaluation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Candidate {
    pub polarity: Polarity,
    pub antecedent: Itemset,
    pub consequent: Itemset,
}

impl Candidate {
    pub fn describe<L: AsRef<str>>(&self, labels: &[L]) -> String {
        describe(self.polarity, &self.antecedent, &self.consequent, labels)
    }
}

/// Absolute support counts keyed by itemset.
///
/// Built from a mining result plus every single item of the matrix. When a
/// matrix is attached, unions that were never counted (because they were
/// infrequent) are counted on demand with one AND/popcount.
#[derive(Clone, Debug)]
pub struct SupportTable<'m> {
    counts: HashMap<Itemset, u64>,
    n: usize,
    matrix: Option<&'m BooleanMatrix>,
}

impl<'m> SupportTable<'m> {
    pub fn from_counts<I: IntoIterator<Item = (Itemset, u64)>>(n: usize, counts: I) -> Self {
        Self { counts: counts.into_iter().collect(), n, matrix: None }
    }

    /// Frequent itemsets only; no rescans.
    pub fn from_collection(freq: &FrequentSetCollection) -> Self {
        Self::from_counts(freq.n_transactions(), freq.iter().map(|f| (f.items.clone(), f.support_count)))
    }

    /// Frequent itemsets and all single-item supports, with on-demand counting.
    pub fn with_matrix(freq: &FrequentSetCollection, matrix: &'m BooleanMatrix) -> Self {
        let mut table = Self::from_collection(freq);
        table.n = matrix.n_transactions();
        for item in 0..matrix.n_items() {
            table.counts.entry(Itemset::single(item)).or_insert_with(|| matrix.column(item).count_ones());
        }
        table.matrix = Some(matrix);
        table
    }

    pub fn n_transactions(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Stored count only.
    pub fn stored(&self, items: &Itemset) -> Option<u64> {
        self.counts.get(items).copied()
    }

    /// Stored count, falling back to the attached matrix.
    pub fn count(&self, items: &Itemset) -> Result<u64, RuleError> {
        if let Some(c) = self.stored(items) {
            return Ok(c);
        }
        match self.matrix {
            Some(m) => support_of(m, items.items()).map_err(|_| RuleError::MissingSupport(items.clone())),
            None => Err(RuleError::MissingSupport(items.clone())),
        }
    }

    pub fn support<S: Scalar>(&self, items: &Itemset) -> Result<S, RuleError> {
        Ok(S::from_counts(self.count(items)?, self.n as u64))
    }
}

/// Rules `A → c` with a single-item consequent from every frequent itemset of
/// size ≥ 2, kept when `conf ≥ minconf`. Sorted by antecedent, then consequent.
pub fn gen_positive_rules<S: Scalar>(
    freq: &FrequentSetCollection,
    params: &MiningParams,
) -> Result<Vec<Rule<S>>, RuleError> {
    let table = SupportTable::from_collection(freq);
    let minconf = S::from_rational(params.minconf());
    let mut rules = Vec::new();
    for set in freq.iter().filter(|f| f.items.len() >= 2) {
        let union: S = S::from_counts(set.support_count, freq.n_transactions() as u64);
        for &c in set.items.items() {
            let antecedent = set.items.without(c).expect("itemset has at least two items");
            let supp_a: S = match table.stored(&antecedent) {
                Some(count) => S::from_counts(count, freq.n_transactions() as u64),
                None => return Err(RuleError::MissingSupport(antecedent)),
            };
            let confidence = union.clone() / supp_a;
            if confidence >= minconf {
                rules.push(Rule {
                    antecedent,
                    consequent: Itemset::single(c),
                    polarity: Polarity::Positive,
                    support: union.clone(),
                    confidence,
                });
            }
        }
    }
    rules.sort_by(|x, y| x.key().cmp(&y.key()));
    Ok(rules)
}

/// The two negative forms of `A → C`: `A → ¬C` and `¬A → C`. Only the
/// antecedent and consequent of `rule` are read.
pub fn gen_negative_candidates<S>(rule: &Rule<S>) -> [Candidate; 2] {
    negative_pair(&rule.antecedent, &rule.consequent)
}

fn negative_pair(a: &Itemset, c: &Itemset) -> [Candidate; 2] {
    [
        Candidate { polarity: Polarity::NegatedConsequent, antecedent: a.clone(), consequent: c.clone() },
        Candidate { polarity: Polarity::NegatedAntecedent, antecedent: a.clone(), consequent: c.clone() },
    ]
}

/// `(supp(A → ¬C), conf(A → ¬C))`.
pub fn eval_negated_consequent<S: Scalar>(
    antecedent: &Itemset,
    consequent: &Itemset,
    supports: &SupportTable<'_>,
) -> Result<(S, S), RuleError> {
    let supp_a: S = supports.support(antecedent)?;
    if supp_a.is_zero() {
        return Err(RuleError::UnsupportedAntecedent(antecedent.clone()));
    }
    let supp_ac: S = supports.support(&antecedent.union(consequent))?;
    let conf_ac = supp_ac.clone() / supp_a.clone();
    Ok((supp_a - supp_ac, S::one() - conf_ac))
}

/// `(supp(¬A → C), conf(¬A → C))`.
pub fn eval_negated_antecedent<S: Scalar>(
    antecedent: &Itemset,
    consequent: &Itemset,
    supports: &SupportTable<'_>,
) -> Result<(S, S), RuleError> {
    let supp_a: S = supports.support(antecedent)?;
    let absent_a = S::one() - supp_a;
    if absent_a.is_zero() {
        return Err(RuleError::UniversalAntecedent(antecedent.clone()));
    }
    let supp_c: S = supports.support(consequent)?;
    let supp_ac: S = supports.support(&antecedent.union(consequent))?;
    // conf(C → A); C never occurring leaves nothing to condition on.
    let conf_ca = if supp_c.is_zero() { S::zero() } else { supp_ac.clone() / supp_c.clone() };
    let support = supp_c.clone() - supp_ac;
    let confidence = supp_c / absent_a * (S::one() - conf_ca);
    Ok((support, confidence))
}

pub fn evaluate_candidate<S: Scalar>(
    candidate: &Candidate,
    supports: &SupportTable<'_>,
) -> Result<(S, S), RuleError> {
    match candidate.polarity {
        Polarity::NegatedConsequent => {
            eval_negated_consequent(&candidate.antecedent, &candidate.consequent, supports)
        }
        Polarity::NegatedAntecedent => {
            eval_negated_antecedent(&candidate.antecedent, &candidate.consequent, supports)
        }
        Polarity::Positive => {
            let supp_a: S = supports.support(&candidate.antecedent)?;
            if supp_a.is_zero() {
                return Err(RuleError::UnsupportedAntecedent(candidate.antecedent.clone()));
            }
            let supp_ac: S = supports.support(&candidate.antecedent.union(&candidate.consequent))?;
            Ok((supp_ac.clone(), supp_ac / supp_a))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleOptions {
    pub emit_negative: bool,
    /// Seed negative candidates from every (frequent itemset A, frequent item
    /// c ∉ A) pair instead of only from positive rules that passed minconf.
    pub allow_unfiltered_parents: bool,
}

impl Default for RuleOptions {
    fn default() -> Self {
        Self { emit_negative: true, allow_unfiltered_parents: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RuleSet<S> {
    /// Positive rules first, then negative; each group by polarity, antecedent, consequent.
    pub rules: Vec<Rule<S>>,
    /// Negative candidates whose formula had a zero denominator.
    pub undefined: Vec<(Candidate, RuleError)>,
    pub frequent: FrequentSetCollection,
}

impl<S> RuleSet<S> {
    pub fn positive(&self) -> impl Iterator<Item = &Rule<S>> {
        self.rules.iter().filter(|r| r.polarity == Polarity::Positive)
    }

    pub fn negative(&self) -> impl Iterator<Item = &Rule<S>> {
        self.rules.iter().filter(|r| r.polarity.is_negative())
    }

    pub fn positive_count(&self) -> usize {
        self.positive().count()
    }

    pub fn negative_count(&self) -> usize {
        self.negative().count()
    }

    pub fn find(&self, polarity: Polarity, antecedent: &[ItemId], consequent: &[ItemId]) -> Option<&Rule<S>> {
        let a = Itemset::new(antecedent.iter().copied())?;
        let c = Itemset::new(consequent.iter().copied())?;
        self.rules.iter().find(|r| r.polarity == polarity && r.antecedent == a && r.consequent == c)
    }
}

/// Pairs `(A, c)` with `A` frequent and `c` a frequent item outside `A`.
pub(crate) fn unfiltered_parent_pairs(freq: &FrequentSetCollection) -> Vec<(Itemset, Itemset)> {
    let singles: Vec<ItemId> = freq.level(1).iter().map(|f| f.items.items()[0]).collect();
    let mut pairs = Vec::new();
    for a in freq.iter() {
        for &c in &singles {
            if !a.items.contains(c) {
                pairs.push((a.items.clone(), Itemset::single(c)));
            }
        }
    }
    pairs
}

/// The full pipeline: mine, positive rules, negative candidates, evaluation.
///
/// Negative rules are kept when `support > minsup` and `confidence > minconf`.
pub fn mine_all_rules<S: Scalar>(
    matrix: &BooleanMatrix,
    params: &MiningParams,
    options: &RuleOptions,
) -> Result<RuleSet<S>, RuleError> {
    let frequent = mine(matrix, params);
    rules_from_frequent(matrix, frequent, params, options)
}

pub fn rules_from_frequent<S: Scalar>(
    matrix: &BooleanMatrix,
    frequent: FrequentSetCollection,
    params: &MiningParams,
    options: &RuleOptions,
) -> Result<RuleSet<S>, RuleError> {
    let mut rules = gen_positive_rules::<S>(&frequent, params)?;
    let mut undefined = Vec::new();
    if options.emit_negative {
        let table = SupportTable::with_matrix(&frequent, matrix);
        let candidates: BTreeSet<Candidate> = if options.allow_unfiltered_parents {
            unfiltered_parent_pairs(&frequent).iter().flat_map(|(a, c)| negative_pair(a, c)).collect()
        } else {
            rules.iter().flat_map(gen_negative_candidates).collect()
        };
        let minsup = S::from_rational(params.minsup());
        let minconf = S::from_rational(params.minconf());
        let mut negatives = Vec::new();
        for candidate in candidates {
            match evaluate_candidate::<S>(&candidate, &table) {
                Ok((support, confidence)) => {
                    if support > minsup && confidence > minconf {
                        negatives.push(Rule {
                            antecedent: candidate.antecedent,
                            consequent: candidate.consequent,
                            polarity: candidate.polarity,
                            support,
                            confidence,
                        });
                    }
                }
                Err(e @ (RuleError::UniversalAntecedent(_) | RuleError::UnsupportedAntecedent(_))) => {
                    undefined.push((candidate, e));
                }
                Err(e) => return Err(e),
            }
        }
        rules.extend(negatives);
    }
    rules.sort_by(|x, y| x.key().cmp(&y.key()));
    Ok(RuleSet { rules, undefined, frequent })
}
