use rayon::prelude::*;

use crate::eval::{pair_counts, prf, PairCounts, Prf};
use crate::{Error, Result};

use super::cluster::check_threshold;
use super::{Block, DistanceMatrix};

/// Micro-averaged metrics of the clustering at one threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub threshold: f64,
    pub metrics: Prf,
    pub counts: PairCounts,
}

/// Cluster every block at each threshold of `grid` and score the result
/// against the ORCID iDs carried by the records. Records without an iD are
/// ignored. The distance matrix of each block is computed once.
pub fn threshold_sweep(blocks: &[Block], grid: &[f64]) -> Result<Vec<SweepPoint>> {
    if grid.is_empty() {
        return Err(Error::Config("empty threshold grid".into()));
    }
    for &t in grid {
        check_threshold(t)?;
    }
    let per_block: Vec<Vec<PairCounts>> = blocks
        .par_iter()
        .map(|block| {
            let labeled: Vec<_> = block.members.iter().filter(|m| m.record.orcid.is_some()).collect();
            let truth: Vec<&str> = labeled.iter().filter_map(|m| m.record.orcid.as_deref()).collect();
            let vectors: Vec<&[f64]> = labeled.iter().map(|m| m.vector.as_slice()).collect();
            let dist = DistanceMatrix::cosine(&vectors);
            grid.iter().map(|&t| pair_counts(&dist.single_linkage(t), &truth)).collect()
        })
        .collect();
    Ok(grid
        .iter()
        .enumerate()
        .map(|(i, &threshold)| {
            let counts: PairCounts = per_block.iter().map(|c| c[i]).sum();
            SweepPoint {
                threshold,
                metrics: prf(&counts),
                counts,
            }
        })
        .collect())
}

/// The point with the highest F1; the lowest threshold wins ties.
pub fn best_point(points: &[SweepPoint]) -> Option<SweepPoint> {
    points.iter().copied().fold(None, |best: Option<SweepPoint>, p| match best {
        Some(b) if b.metrics.f1 > p.metrics.f1 || (b.metrics.f1 == p.metrics.f1 && b.threshold <= p.threshold) => Some(b),
        _ => Some(p),
    })
}
