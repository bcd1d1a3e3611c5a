use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{KnowledgeGraph, Triple};
use crate::{Error, Result};

pub const DEFAULT_RATIOS: (f64, f64, f64) = (0.64, 0.16, 0.20);

/// Train/validation/test partition of the structural triples, as indices
/// into [`KnowledgeGraph::object_triples`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetSplit {
    pub train: Vec<usize>,
    pub valid: Vec<usize>,
    pub test: Vec<usize>,
    pub seed: u64,
}

impl DatasetSplit {
    pub fn triples<'a>(kg: &'a KnowledgeGraph, part: &'a [usize]) -> impl Iterator<Item = Triple> + 'a {
        part.iter().map(|&i| kg.object_triples()[i])
    }
}

/// Shuffle the structural triples with a seeded RNG and cut them by `ratios`.
///
/// Validation and test sizes are rounded to the nearest integer and the
/// training part takes the remainder. Literal triples are never split.
pub fn split_structural(kg: &KnowledgeGraph, ratios: (f64, f64, f64), seed: u64) -> Result<DatasetSplit> {
    let (tr, va, te) = ratios;
    if [tr, va, te].iter().any(|r| !(0.0..=1.0).contains(r)) || ((tr + va + te) - 1.0).abs() > 1e-9 {
        return Err(Error::Config(format!("split ratios {ratios:?} must be fractions summing to 1")));
    }
    let n = kg.object_triples().len();
    if n < 3 {
        return Err(Error::Config(format!("need at least 3 structural triples to split, found {n}")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let n_valid = (va * n as f64).round() as usize;
    let n_test = ((te * n as f64).round() as usize).min(n - n_valid);
    let n_train = n - n_valid - n_test;

    let test = order.split_off(n_train + n_valid);
    let valid = order.split_off(n_train);
    Ok(DatasetSplit {
        train: order,
        valid,
        test,
        seed,
    })
}
