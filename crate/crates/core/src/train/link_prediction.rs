use std::collections::HashSet;

use rayon::prelude::*;

use crate::kg::{EntityId, Triple};
use crate::linalg::Matrix;
use crate::literals::LiteralFeatures;
use crate::model::{distmult_score, ModelParams};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LinkPredictionMetrics {
    pub mrr: f64,
    pub hits_at_1: f64,
    pub hits_at_3: f64,
    pub hits_at_10: f64,
    /// Number of ranks computed (two per triple).
    pub ranks: usize,
}

/// Rank of a true score among candidates, counting tied candidates as
/// half a position each (mean of optimistic and pessimistic rank).
fn realistic_rank(true_score: f64, candidates: impl Iterator<Item = f64>) -> f64 {
    let (mut greater, mut equal) = (0usize, 0usize);
    for s in candidates {
        if s > true_score {
            greater += 1;
        } else if s == true_score {
            equal += 1;
        }
    }
    1.0 + greater as f64 + equal as f64 / 2.0
}

/// Filtered head and tail ranks of each triple.
pub fn filtered_ranks(model: &ModelParams, reps: &Matrix, triples: &[Triple], known: &HashSet<Triple>) -> Vec<(f64, f64)> {
    let n = model.num_entities();
    triples
        .par_iter()
        .map(|&t| {
            let r = model.relation.row(t.relation.0);
            let true_score = distmult_score(reps.row(t.head.0), r, reps.row(t.tail.0));
            let tail_rank = realistic_rank(
                true_score,
                (0..n)
                    .filter(|&e| e != t.tail.0 && !known.contains(&Triple { tail: EntityId(e), ..t }))
                    .map(|e| distmult_score(reps.row(t.head.0), r, reps.row(e))),
            );
            let head_rank = realistic_rank(
                true_score,
                (0..n)
                    .filter(|&e| e != t.head.0 && !known.contains(&Triple { head: EntityId(e), ..t }))
                    .map(|e| distmult_score(reps.row(e), r, reps.row(t.tail.0))),
            );
            (head_rank, tail_rank)
        })
        .collect()
}

/// Filtered MRR and Hits@{1,3,10} over head and tail prediction.
pub fn eval_link_prediction(model: &ModelParams, features: &LiteralFeatures, triples: &[Triple], known: &HashSet<Triple>) -> LinkPredictionMetrics {
    if triples.is_empty() {
        return LinkPredictionMetrics::default();
    }
    let reps = model.representations(features);
    let ranks: Vec<f64> = filtered_ranks(model, &reps, triples, known)
        .into_iter()
        .flat_map(|(h, t)| [h, t])
        .collect();
    let n = ranks.len() as f64;
    let hits = |k: f64| ranks.iter().filter(|&&r| r <= k).count() as f64 / n;
    LinkPredictionMetrics {
        mrr: ranks.iter().map(|r| 1.0 / r).sum::<f64>() / n,
        hits_at_1: hits(1.0),
        hits_at_3: hits(3.0),
        hits_at_10: hits(10.0),
        ranks: ranks.len(),
    }
}
