//! Naive reference implementations for auditing the miner and the rule formulas.
//!
//! Everything here counts transactions one row at a time and never uses the
//! column bit-vectors or the support-table formulas.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::ingest::BooleanMatrix;
use crate::itemset::Itemset;
use crate::miner::MiningParams;
use crate::rules::{Polarity, Rule, RuleOptions};
use crate::scalar::Rational;

/// Largest item count the exhaustive enumeration accepts.
pub const MAX_ORACLE_ITEMS: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{0} items exceed the enumeration bound of {MAX_ORACLE_ITEMS}")]
    TooManyItems(usize),
    #[error("denominator is zero")]
    Undefined,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub frequent: BTreeMap<Itemset, u64>,
    pub rules: Vec<Rule<Rational>>,
}

fn row_masks(matrix: &BooleanMatrix) -> Vec<u32> {
    (0..matrix.n_transactions())
        .map(|t| {
            (0..matrix.n_items()).fold(0u32, |mask, i| if matrix.get(t, i) { mask | 1 << i } else { mask })
        })
        .collect()
}

fn mask_of(set: &Itemset) -> u32 {
    set.items().iter().fold(0, |m, &i| m | 1 << i)
}

fn set_of(mask: u32) -> Itemset {
    Itemset::new((0..32).filter(|i| mask >> i & 1 == 1)).expect("non-zero mask")
}

fn containing(rows: &[u32], mask: u32) -> u64 {
    rows.iter().filter(|&&r| r & mask == mask).count() as u64
}

/// Every non-empty itemset whose containing-transaction count reaches
/// `new_support`, by exhaustive enumeration.
pub fn brute_force_frequent(
    matrix: &BooleanMatrix,
    params: &MiningParams,
) -> Result<BTreeMap<Itemset, u64>, OracleError> {
    let m = matrix.n_items();
    if m > MAX_ORACLE_ITEMS {
        return Err(OracleError::TooManyItems(m));
    }
    let rows = row_masks(matrix);
    let threshold = params.new_support(matrix.n_transactions());
    let mut out = BTreeMap::new();
    for mask in 1..(1u32 << m) {
        let count = containing(&rows, mask);
        if count >= threshold {
            out.insert(set_of(mask), count);
        }
    }
    Ok(out)
}

/// `(support, confidence)` of a rule by direct transaction scan.
///
/// For `NegatedConsequent` the rule holds in transactions containing all of
/// `A` but not all of `C`, conditioned on `A`. For `NegatedAntecedent` it holds
/// where all of `C` is present but not all of `A`, conditioned on "not all of
/// `A`". `Positive` is the plain `A ∪ C` count conditioned on `A`.
pub fn brute_force_negative(
    matrix: &BooleanMatrix,
    antecedent: &Itemset,
    consequent: &Itemset,
    polarity: Polarity,
) -> Result<(Rational, Rational), OracleError> {
    let n = matrix.n_transactions() as i128;
    let has_all = |t: usize, set: &Itemset| set.items().iter().all(|&i| matrix.get(t, i));
    let (mut hits, mut given) = (0i128, 0i128);
    for t in 0..matrix.n_transactions() {
        let a = has_all(t, antecedent);
        let c = has_all(t, consequent);
        let (condition, holds) = match polarity {
            Polarity::Positive => (a, a && c),
            Polarity::NegatedConsequent => (a, a && !c),
            Polarity::NegatedAntecedent => (!a, !a && c),
        };
        given += i128::from(condition);
        hits += i128::from(holds);
    }
    if n == 0 || given == 0 {
        return Err(OracleError::Undefined);
    }
    Ok((Rational::new(hits, n), Rational::new(hits, given)))
}

/// The full rule set recomputed by enumeration and direct scans.
pub fn brute_force_rules(
    matrix: &BooleanMatrix,
    params: &MiningParams,
    options: &RuleOptions,
) -> Result<OracleResult, OracleError> {
    let frequent = brute_force_frequent(matrix, params)?;
    let rows = row_masks(matrix);
    let n = matrix.n_transactions() as i128;
    let mut positives = Vec::new();
    for (set, &count) in frequent.iter().filter(|(s, _)| s.len() >= 2) {
        let whole = mask_of(set);
        for &c in set.items() {
            let a_count = containing(&rows, whole & !(1 << c)) as i128;
            let confidence = Rational::new(count as i128, a_count);
            if confidence >= *params.minconf() {
                positives.push(Rule {
                    antecedent: set.without(c).expect("size >= 2"),
                    consequent: Itemset::single(c),
                    polarity: Polarity::Positive,
                    support: Rational::new(count as i128, n),
                    confidence,
                });
            }
        }
    }

    let mut rules = positives.clone();
    if options.emit_negative {
        let parents: BTreeSet<(Itemset, Itemset)> = if options.allow_unfiltered_parents {
            let singles: Vec<usize> =
                frequent.keys().filter(|s| s.len() == 1).map(|s| s.items()[0]).collect();
            frequent
                .keys()
                .flat_map(|a| {
                    singles.iter().filter(|&&c| !a.contains(c)).map(move |&c| (a.clone(), Itemset::single(c)))
                })
                .collect()
        } else {
            positives.iter().map(|r| (r.antecedent.clone(), r.consequent.clone())).collect()
        };
        for (a, c) in parents {
            for polarity in [Polarity::NegatedConsequent, Polarity::NegatedAntecedent] {
                if let Ok((support, confidence)) = brute_force_negative(matrix, &a, &c, polarity) {
                    if support > *params.minsup() && confidence > *params.minconf() {
                        rules.push(Rule {
                            antecedent: a.clone(),
                            consequent: c.clone(),
                            polarity,
                            support,
                            confidence,
                        });
                    }
                }
            }
        }
    }
    rules.sort_by(|x, y| x.key().cmp(&y.key()));
    Ok(OracleResult { frequent, rules })
}
