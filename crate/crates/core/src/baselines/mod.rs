//! Comparison systems: rule-based pair scoring and title-vector clustering.
//!
//! Both produce the same [`Clustering`](crate::disambig::Clustering) output
//! as the embedding-based disambiguator, so they share evaluation and I/O.

mod score_pairs;
mod title_similarity;

pub use score_pairs::{record_blocks, score_pair, score_pairs_cluster, PairRules, PublicationIndex, DEFAULT_PAIR_THRESHOLD};
pub use title_similarity::{title_blocks, title_similarity_cluster, DEFAULT_TITLE_THRESHOLD};
