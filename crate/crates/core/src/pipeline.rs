//! Text in, rules out.
//!
//! The source is read exactly once into a [`BooleanMatrix`]; mining and rule
//! evaluation afterwards only touch the in-memory bit-vectors.

use std::io::Read;

use thiserror::Error;

use crate::ingest::{
    discretize, parse_boolean_matrix, parse_similarity_matrix, BooleanMatrix, DiscretizationSpec,
    DiscretizeError, IngestError,
};
use crate::miner::MiningParams;
use crate::rules::{mine_all_rules, RuleError, RuleOptions, RuleSet};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum InputKind {
    #[default]
    Similarity,
    Boolean,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IngestOptions {
    pub kind: InputKind,
    pub delimiter: u8,
    /// Input has genes as rows and probe patterns as columns.
    pub transpose: bool,
    pub discretization: DiscretizationSpec,
}

impl Default for IngestOptions {
    fn default() -> Self {
        Self {
            kind: InputKind::Similarity,
            delimiter: b',',
            transpose: false,
            discretization: DiscretizationSpec::MaxMinusX { x_percent: 25, scope: Default::default() },
        }
    }
}

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Parse(#[from] IngestError),
    #[error(transparent)]
    Discretize(#[from] DiscretizeError),
    #[error("matrix has {transactions} transactions and {items} items; nothing to mine")]
    EmptyMatrix { transactions: usize, items: usize },
    #[error(transparent)]
    Rules(#[from] RuleError),
}

impl PipelineError {
    pub fn is_degenerate(&self) -> bool {
        matches!(self, PipelineError::Discretize(_) | PipelineError::EmptyMatrix { .. })
    }

    pub fn is_io(&self) -> bool {
        matches!(self, PipelineError::Parse(e) if e.is_io())
    }
}

/// Reads and, for similarity input, discretizes. Rejects matrices with no
/// transactions or no items.
pub fn load_matrix<R: Read>(source: R, options: &IngestOptions) -> Result<BooleanMatrix, PipelineError> {
    let matrix = match options.kind {
        InputKind::Boolean => {
            let m = parse_boolean_matrix(source, options.delimiter)?;
            if options.transpose {
                m.transpose()
            } else {
                m
            }
        }
        InputKind::Similarity => {
            let m = parse_similarity_matrix::<f64, _>(source, options.delimiter)?;
            let m = if options.transpose { m.transpose() } else { m };
            if m.n_rows() == 0 || m.n_cols() == 0 {
                return Err(PipelineError::EmptyMatrix { transactions: m.n_rows(), items: m.n_cols() });
            }
            discretize(&m, &options.discretization)?
        }
    };
    if matrix.n_transactions() == 0 || matrix.n_items() == 0 {
        return Err(PipelineError::EmptyMatrix {
            transactions: matrix.n_transactions(),
            items: matrix.n_items(),
        });
    }
    Ok(matrix)
}

pub fn run<S: Scalar, R: Read>(
    source: R,
    ingest: &IngestOptions,
    params: &MiningParams,
    options: &RuleOptions,
) -> Result<(BooleanMatrix, RuleSet<S>), PipelineError> {
    let matrix = load_matrix(source, ingest)?;
    let rules = mine_all_rules(&matrix, params, options)?;
    Ok((matrix, rules))
}
