use crate::linalg::{dot, norm};
use crate::{Error, Result};

use super::{Block, Clustering};

/// `1 − cos(a, b)`; defined as 1.0 when either vector is zero.
pub fn cosine_distance(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 {
        return 1.0;
    }
    1.0 - dot(a, b) / (na * nb)
}

/// Condensed upper-triangular distance matrix.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn cosine(vectors: &[&[f64]]) -> Self {
        let n = vectors.len();
        let norms: Vec<f64> = vectors.iter().map(|v| norm(v)).collect();
        let mut data = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let d = if norms[i] == 0.0 || norms[j] == 0.0 {
                    1.0
                } else {
                    1.0 - dot(vectors[i], vectors[j]) / (norms[i] * norms[j])
                };
                data.push(d);
            }
        }
        DistanceMatrix { n, data }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                data.push(f(i, j));
            }
        }
        DistanceMatrix { n, data }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.data[i * (2 * self.n - i - 1) / 2 + (j - i - 1)]
    }

    /// Single-linkage flat clustering: connected components of the graph
    /// with an edge wherever the distance is strictly below `threshold`.
    pub fn single_linkage(&self, threshold: f64) -> Vec<usize> {
        let mut uf = UnionFind::new(self.n);
        let mut k = 0;
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.data[k] < threshold {
                    uf.union(i, j);
                }
                k += 1;
            }
        }
        uf.labels()
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }

    /// Contiguous component ids, numbered by first occurrence.
    pub fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut ids = vec![usize::MAX; n];
        let mut next = 0;
        (0..n)
            .map(|i| {
                let r = self.find(i);
                if ids[r] == usize::MAX {
                    ids[r] = next;
                    next += 1;
                }
                ids[r]
            })
            .collect()
    }
}

/// Relabel arbitrary cluster ids to `0..k` by first occurrence.
pub fn canonical_labels(labels: &[usize]) -> Vec<usize> {
    let mut map = std::collections::HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

pub(crate) fn check_threshold(threshold: f64) -> Result<()> {
    if !(0.0..=2.0).contains(&threshold) {
        return Err(Error::Config(format!("cosine distance threshold {threshold} outside [0, 2]")));
    }
    Ok(())
}

/// Single-linkage agglomerative clustering of one block over cosine distance.
pub fn cluster_block(block: &Block, threshold: f64) -> Result<Clustering> {
    check_threshold(threshold)?;
    let vectors: Vec<&[f64]> = block.members.iter().map(|m| m.vector.as_slice()).collect();
    let labels = DistanceMatrix::cosine(&vectors).single_linkage(threshold);
    Ok(Clustering::new(block, labels, threshold))
}
