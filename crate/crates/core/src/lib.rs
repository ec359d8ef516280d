//! Positive and negative association rules from spatial gene-expression data.
//!
//! A similarity matrix (probe patterns × genes, Jaccard values) is
//! discretized into a Boolean transaction matrix, frequent itemsets are mined
//! level-wise with AND/popcount over per-gene bit-vectors, and rules of the
//! forms `A → C`, `A → ¬C` and `¬A → C` are derived from the stored supports.
//!
//! Rule metrics are generic over [`Scalar`]; [`Rational`] keeps them exact.
//!
//! ```
//! use negassoc::{mine_all_rules, BooleanMatrix, ExactRuleSet, MiningParams, RuleOptions};
//!
//! let matrix = BooleanMatrix::from_unlabelled_rows(&[
//!     vec![true, true],
//!     vec![true, false],
//! ]);
//! let params = MiningParams::from_f64(0.5, 0.5).unwrap();
//! let rules: ExactRuleSet = mine_all_rules(&matrix, &params, &RuleOptions::default()).unwrap();
//! assert_eq!(rules.positive_count(), 2);
//! ```

pub mod bitvec;
pub mod ingest;
pub mod itemset;
pub mod miner;
pub mod oracle;
pub mod pipeline;
pub mod rules;
pub mod scalar;
pub mod sweep;

pub use bitvec::BitVec;
pub use ingest::{
    discretize, parse_boolean_matrix, parse_similarity_matrix, write_boolean_matrix, write_similarity_matrix,
    BooleanMatrix, DiscretizationSpec, DiscretizeError, HvScope, IngestError, SimilarityMatrix,
};
pub use itemset::{ItemId, Itemset};
pub use miner::{
    mine, mine_with_trace, prune_report, support_of, support_of_labels, FrequentItemset,
    FrequentSetCollection, LevelTrace, MineError, MiningParams, PruneTrace, Pruning,
};
pub use pipeline::{load_matrix, IngestOptions, InputKind, PipelineError};
pub use rules::{
    eval_negated_antecedent, eval_negated_consequent, evaluate_candidate, gen_negative_candidates,
    gen_positive_rules, mine_all_rules, rules_from_frequent, Candidate, Polarity, Rule, RuleError,
    RuleOptions, RuleSet, SupportTable,
};
pub use scalar::{parse_rational, render_rational, Rational, Scalar};
pub use sweep::{sweep, SweepError, SweepRow};

pub type ExactRule = Rule<Rational>;
pub type ExactRuleSet = RuleSet<Rational>;
pub type Rule64 = Rule<f64>;
pub type RuleSet64 = RuleSet<f64>;
pub type Rule32 = Rule<f32>;
pub type RuleSet32 = RuleSet<f32>;
pub type SimilarityMatrix64 = SimilarityMatrix<f64>;
pub type SimilarityMatrix32 = SimilarityMatrix<f32>;
