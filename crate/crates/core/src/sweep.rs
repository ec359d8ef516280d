//! Rule counts over a grid of (minsup, minconf) pairs.

use rayon::prelude::*;

use crate::ingest::BooleanMatrix;
use crate::miner::{MineError, MiningParams, Pruning};
use crate::rules::{mine_all_rules, RuleError, RuleOptions, RuleSet};
use crate::scalar::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub minsup: Rational,
    pub minconf: Rational,
    pub positive_count: usize,
    pub negative_count: usize,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SweepError {
    #[error("sweep needs at least one minsup and one minconf value")]
    EmptyGrid,
    #[error(transparent)]
    Params(#[from] MineError),
    #[error(transparent)]
    Rules(#[from] RuleError),
}

/// One full pipeline run per grid point, ordered by minsup then minconf.
/// Grid points are evaluated in parallel.
pub fn sweep(
    matrix: &BooleanMatrix,
    minsups: &[Rational],
    minconfs: &[Rational],
    pruning: Pruning,
    options: &RuleOptions,
) -> Result<Vec<SweepRow>, SweepError> {
    if minsups.is_empty() || minconfs.is_empty() {
        return Err(SweepError::EmptyGrid);
    }
    let grid: Vec<(Rational, Rational)> =
        minsups.iter().flat_map(|&s| minconfs.iter().map(move |&c| (s, c))).collect();
    let mut rows = grid
        .par_iter()
        .map(|&(minsup, minconf)| {
            let params = MiningParams::new(minsup, minconf)?.with_pruning(pruning);
            let rules: RuleSet<Rational> = mine_all_rules(matrix, &params, options)?;
            Ok(SweepRow {
                minsup,
                minconf,
                positive_count: rules.positive_count(),
                negative_count: rules.negative_count(),
            })
        })
        .collect::<Result<Vec<_>, SweepError>>()?;
    rows.sort_by_key(|r| (r.minsup, r.minconf));
    Ok(rows)
}
