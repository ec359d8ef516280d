//! Level-wise frequent itemset mining over per-item bit-vectors.
//!
//! Support of an itemset is the popcount of the AND of its item columns.
//! Three pruning rules cut work without changing the answer:
//!
//! * rows holding fewer than `k` live items cannot support a `k`-itemset and
//!   are masked out before level `k` is counted;
//! * an item that occurs in fewer than `k` frequent `k`-itemsets cannot be
//!   part of any frequent `(k+1)`-itemset, so its column is masked out;
//! * level `k` is only attempted while `|F(k-1)| > k-1`, since a frequent
//!   `k`-itemset has `k` frequent `(k-1)`-subsets.
//!
//! Deletion is logical: the input matrix is never modified.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::bitvec::BitVec;
use crate::ingest::BooleanMatrix;
use crate::itemset::{ItemId, Itemset};
use crate::scalar::{rational_from_f64, Rational, Scalar};

#[derive(Debug, Error, PartialEq)]
pub enum MineError {
    #[error("item {item} does not exist in a matrix of {n_items} items")]
    UnknownItem { item: ItemId, n_items: usize },
    #[error("unknown item label {0:?}")]
    UnknownLabel(String),
    #[error("{name} must lie in (0, 1], got {value}")]
    Threshold { name: &'static str, value: String },
}

/// Toggles for the three pruning rules. All on by default.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pruning {
    pub rows: bool,
    pub columns: bool,
    pub level_bound: bool,
}

impl Default for Pruning {
    fn default() -> Self {
        Self { rows: true, columns: true, level_bound: true }
    }
}

impl Pruning {
    pub fn disabled() -> Self {
        Self { rows: false, columns: false, level_bound: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MiningParams {
    minsup: Rational,
    minconf: Rational,
    pub pruning: Pruning,
}

impl MiningParams {
    pub fn new(minsup: Rational, minconf: Rational) -> Result<Self, MineError> {
        let unit = |name: &'static str, v: Rational| {
            if v > Rational::from_integer(0) && v <= Rational::from_integer(1) {
                Ok(v)
            } else {
                Err(MineError::Threshold { name, value: v.to_string() })
            }
        };
        Ok(Self {
            minsup: unit("minsup", minsup)?,
            minconf: unit("minconf", minconf)?,
            pruning: Pruning::default(),
        })
    }

    /// Thresholds given as decimals; `0.03` is read as exactly 3/100.
    pub fn from_f64(minsup: f64, minconf: f64) -> Result<Self, MineError> {
        let conv = |name: &'static str, v: f64| {
            rational_from_f64(v).ok_or(MineError::Threshold { name, value: v.to_string() })
        };
        Self::new(conv("minsup", minsup)?, conv("minconf", minconf)?)
    }

    pub fn with_pruning(mut self, pruning: Pruning) -> Self {
        self.pruning = pruning;
        self
    }

    pub fn minsup(&self) -> &Rational {
        &self.minsup
    }

    pub fn minconf(&self) -> &Rational {
        &self.minconf
    }

    /// Absolute support count `ceil(minsup × n)`, at least 1.
    pub fn new_support(&self, n: usize) -> u64 {
        let scaled = self.minsup * Rational::from_integer(n as i128);
        (scaled.ceil().to_integer() as u64).max(1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FrequentItemset {
    pub items: Itemset,
    pub support_count: u64,
}

impl FrequentItemset {
    pub fn support<S: Scalar>(&self, n: usize) -> S {
        S::from_counts(self.support_count, n as u64)
    }
}

/// Frequent itemsets grouped by size, each level sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FrequentSetCollection {
    levels: BTreeMap<usize, Vec<FrequentItemset>>,
    n: usize,
    new_support: u64,
}

impl FrequentSetCollection {
    pub fn n_transactions(&self) -> usize {
        self.n
    }

    pub fn new_support(&self) -> u64 {
        self.new_support
    }

    pub fn level(&self, k: usize) -> &[FrequentItemset] {
        self.levels.get(&k).map_or(&[], Vec::as_slice)
    }

    pub fn max_len(&self) -> usize {
        self.levels.keys().next_back().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.levels.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Ordered by size, then lexicographically.
    pub fn iter(&self) -> impl Iterator<Item = &FrequentItemset> {
        self.levels.values().flatten()
    }

    pub fn count_of(&self, items: &Itemset) -> Option<u64> {
        let level = self.levels.get(&items.len())?;
        level.binary_search_by(|f| f.items.cmp(items)).ok().map(|i| level[i].support_count)
    }

    /// Every `(k-1)`-subset of every `k`-itemset is present one level down.
    pub fn is_downward_closed(&self) -> bool {
        self.iter().all(|f| f.items.drop_one_subsets().all(|sub| self.count_of(&sub).is_some()))
    }

    pub fn to_map(&self) -> BTreeMap<Itemset, u64> {
        self.iter().map(|f| (f.items.clone(), f.support_count)).collect()
    }
}

/// Rows and columns masked out while finishing one level.
///
/// For level 1 the deleted columns are the infrequent items and the rows are
/// those left with fewer than 2 live items. For level `k >= 2` the columns are
/// items occurring in fewer than `k` frequent `k`-itemsets and the rows are
/// those left with fewer than `k+1` live items.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LevelTrace {
    pub k: usize,
    pub candidates: usize,
    pub frequent: usize,
    pub columns_deleted: Vec<ItemId>,
    pub rows_deleted: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PruneTrace {
    pub levels: Vec<LevelTrace>,
    /// Level that the `|F(k-1)| > k-1` guard refused to attempt, if any.
    pub stopped_at: Option<usize>,
}

impl PruneTrace {
    pub fn level(&self, k: usize) -> Option<&LevelTrace> {
        self.levels.iter().find(|l| l.k == k)
    }
}

/// Popcount of the AND of the named columns.
pub fn support_of(matrix: &BooleanMatrix, items: &[ItemId]) -> Result<u64, MineError> {
    if let Some(&item) = items.iter().find(|&&i| i >= matrix.n_items()) {
        return Err(MineError::UnknownItem { item, n_items: matrix.n_items() });
    }
    Ok(match items {
        [] => matrix.n_transactions() as u64,
        [single] => matrix.column(*single).count_ones(),
        [first, second] => matrix.column(*first).and_count(matrix.column(*second)),
        [first, rest @ ..] => {
            let mut acc = matrix.column(*first).clone();
            for &i in &rest[..rest.len() - 1] {
                acc.and_assign(matrix.column(i));
            }
            acc.and_count(matrix.column(rest[rest.len() - 1]))
        }
    })
}

pub fn support_of_labels(matrix: &BooleanMatrix, labels: &[&str]) -> Result<u64, MineError> {
    let items = labels
        .iter()
        .map(|l| matrix.item_index(l).ok_or_else(|| MineError::UnknownLabel((*l).to_owned())))
        .collect::<Result<Vec<_>, _>>()?;
    support_of(matrix, &items)
}

pub fn mine(matrix: &BooleanMatrix, params: &MiningParams) -> FrequentSetCollection {
    Miner::new(matrix, params).run().0
}

pub fn prune_report(matrix: &BooleanMatrix, params: &MiningParams) -> PruneTrace {
    Miner::new(matrix, params).run().1
}

/// Runs mining once and returns both the itemsets and the pruning trace.
pub fn mine_with_trace(matrix: &BooleanMatrix, params: &MiningParams) -> (FrequentSetCollection, PruneTrace) {
    Miner::new(matrix, params).run()
}

struct Miner<'m> {
    matrix: &'m BooleanMatrix,
    pruning: Pruning,
    new_support: u64,
    live_rows: BitVec,
    live_cols: Vec<bool>,
    /// Live items per row, over live columns only.
    row_counts: Vec<u32>,
}

impl<'m> Miner<'m> {
    fn new(matrix: &'m BooleanMatrix, params: &MiningParams) -> Self {
        Self {
            matrix,
            pruning: params.pruning,
            new_support: params.new_support(matrix.n_transactions()),
            live_rows: BitVec::ones(matrix.n_transactions()),
            live_cols: vec![true; matrix.n_items()],
            row_counts: matrix.row_popcounts().to_vec(),
        }
    }

    fn delete_column(&mut self, item: ItemId) {
        self.live_cols[item] = false;
        for t in self.matrix.column(item).iter_ones() {
            self.row_counts[t] -= 1;
        }
    }

    fn delete_short_rows(&mut self, min_items: u32) -> Vec<usize> {
        let doomed: Vec<usize> =
            self.live_rows.iter_ones().filter(|&t| self.row_counts[t] < min_items).collect();
        for &t in &doomed {
            self.live_rows.set(t, false);
        }
        doomed
    }

    fn count(&self, items: &Itemset) -> u64 {
        let ids = items.items();
        let mut acc = self.live_rows.clone();
        for &i in &ids[..ids.len() - 1] {
            acc.and_assign(self.matrix.column(i));
        }
        acc.and_count(self.matrix.column(ids[ids.len() - 1]))
    }

    fn run(mut self) -> (FrequentSetCollection, PruneTrace) {
        let n = self.matrix.n_transactions();
        let mut levels = BTreeMap::new();
        let mut trace = PruneTrace::default();

        let mut first = LevelTrace { k: 1, candidates: self.matrix.n_items(), ..Default::default() };
        let mut current: Vec<FrequentItemset> = Vec::new();
        for item in 0..self.matrix.n_items() {
            let count = self.matrix.column(item).count_ones();
            if count >= self.new_support {
                current.push(FrequentItemset { items: Itemset::single(item), support_count: count });
            } else {
                self.delete_column(item);
                first.columns_deleted.push(item);
            }
        }
        if self.pruning.rows {
            first.rows_deleted = self.delete_short_rows(2);
        }
        first.frequent = current.len();
        trace.levels.push(first);
        if !current.is_empty() {
            levels.insert(1, current.clone());
        }

        let mut k = 2;
        loop {
            if current.is_empty() {
                break;
            }
            // |F(k-1)| > k-1 is required to attempt level k.
            if self.pruning.level_bound && current.len() < k {
                trace.stopped_at = Some(k);
                break;
            }
            let candidates: Vec<Itemset> = join_and_prune(&current)
                .into_iter()
                .filter(|c| c.items().iter().all(|&i| self.live_cols[i]))
                .collect();
            if candidates.is_empty() {
                break;
            }
            let counted: Vec<u64> = candidates.par_iter().map(|c| self.count(c)).collect();
            let frequent: Vec<FrequentItemset> = candidates
                .iter()
                .zip(counted)
                .filter(|&(_, count)| count >= self.new_support)
                .map(|(items, support_count)| FrequentItemset { items: items.clone(), support_count })
                .collect();

            let mut level = LevelTrace {
                k,
                candidates: candidates.len(),
                frequent: frequent.len(),
                ..Default::default()
            };
            if frequent.is_empty() {
                trace.levels.push(level);
                break;
            }
            if self.pruning.columns {
                let mut occurrences = vec![0usize; self.matrix.n_items()];
                for f in &frequent {
                    for &i in f.items.items() {
                        occurrences[i] += 1;
                    }
                }
                for (item, &seen) in occurrences.iter().enumerate() {
                    if self.live_cols[item] && seen < k {
                        self.delete_column(item);
                        level.columns_deleted.push(item);
                    }
                }
            }
            if self.pruning.rows {
                level.rows_deleted = self.delete_short_rows(k as u32 + 1);
            }
            trace.levels.push(level);
            levels.insert(k, frequent.clone());
            current = frequent;
            k += 1;
        }

        (FrequentSetCollection { levels, n, new_support: self.new_support }, trace)
    }
}

/// Joins `(k-1)`-itemsets sharing their first `k-2` items, then drops any
/// candidate with a `(k-1)`-subset missing from `level`. `level` must be
/// sorted; output is sorted.
pub(crate) fn join_and_prune(level: &[FrequentItemset]) -> Vec<Itemset> {
    let mut out = Vec::new();
    let prefix_len = match level.first() {
        Some(f) => f.items.len() - 1,
        None => return out,
    };
    let present = |s: &Itemset| level.binary_search_by(|f| f.items.cmp(s)).is_ok();
    let mut start = 0;
    while start < level.len() {
        let prefix = &level[start].items.items()[..prefix_len];
        let mut end = start + 1;
        while end < level.len() && &level[end].items.items()[..prefix_len] == prefix {
            end += 1;
        }
        for i in start..end {
            for j in i + 1..end {
                let mut items = level[i].items.items().to_vec();
                items.push(*level[j].items.items().last().expect("non-empty"));
                let candidate = Itemset::from_sorted_unchecked(items);
                // Subsets dropping one of the last two items are the join parents.
                let all_present = (0..prefix_len).all(|skip| {
                    let sub: Vec<ItemId> = candidate
                        .items()
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p != skip)
                        .map(|(_, &v)| v)
                        .collect();
                    present(&Itemset::from_sorted_unchecked(sub))
                });
                if all_present {
                    out.push(candidate);
                }
            }
        }
        start = end;
    }
    out
}
