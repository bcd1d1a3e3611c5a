//! Author features, name blocking and clustering.
//!
//! An author's clustering feature is the concatenation `[E; D]` of the
//! author's representation and the mean representation of the documents
//! they created. Features are grouped into blocks by last name and first
//! initial, and each block is clustered independently.

mod blocking;
mod cluster;
mod dedupe;
mod io;
mod post_filter;
mod sweep;

use rayon::prelude::*;

pub use blocking::{full_name_key, group_blocks, ln_fi_key, normalize_name, Block};
pub use cluster::{canonical_labels, cluster_block, cosine_distance, DistanceMatrix, UnionFind};
pub use dedupe::{dedupe_kg, DedupeResult};
pub use io::{read_clusterings, write_clusterings, write_merge_map};
pub use post_filter::post_block_filter;
pub use sweep::{best_point, threshold_sweep, SweepPoint};

use crate::kg::AuthorRecord;
use crate::literals::LiteralFeatures;
use crate::model::ModelParams;
use crate::{Error, Result};

/// Which document representation enters `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DocumentSource {
    /// Literal-fused representation (identical to raw for the unimodal model).
    #[default]
    Fused,
    /// Raw entity embedding.
    Raw,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuthorFeature {
    pub record: AuthorRecord,
    /// `[E; D]`, length `2h`.
    pub vector: Vec<f64>,
}

pub fn build_author_feature(model: &ModelParams, record: &AuthorRecord, features: &LiteralFeatures, source: DocumentSource) -> Result<AuthorFeature> {
    if record.documents.is_empty() {
        return Err(Error::Contract(format!("author {} has no documents", record.iri)));
    }
    let h = model.dim();
    let mut vector = model.entity_representation(record.author, features);
    vector.resize(2 * h, 0.0);
    let scale = 1.0 / record.documents.len() as f64;
    for &doc in &record.documents {
        let rep = match source {
            DocumentSource::Fused => model.entity_representation(doc, features),
            DocumentSource::Raw => model.raw_embedding(doc).to_vec(),
        };
        for (acc, x) in vector[h..].iter_mut().zip(rep) {
            *acc += x * scale;
        }
    }
    Ok(AuthorFeature {
        record: record.clone(),
        vector,
    })
}

/// Features for every record, grouped into name blocks.
pub fn build_blocks(records: &[AuthorRecord], model: &ModelParams, features: &LiteralFeatures, source: DocumentSource) -> Result<Vec<Block>> {
    let feats = records
        .par_iter()
        .map(|r| build_author_feature(model, r, features, source))
        .collect::<Result<Vec<_>>>()?;
    Ok(group_blocks(feats))
}

/// Partition of one block into predicted authors.
#[derive(Debug, Clone, PartialEq)]
pub struct Clustering {
    pub block_key: String,
    /// Author IRIs in block order.
    pub members: Vec<String>,
    /// Cluster id per member, contiguous from 0.
    pub labels: Vec<usize>,
    pub threshold: f64,
}

impl Clustering {
    pub fn new(block: &Block, labels: Vec<usize>, threshold: f64) -> Self {
        Clustering {
            block_key: block.key.clone(),
            members: block.members.iter().map(|m| m.record.iri.clone()).collect(),
            labels: canonical_labels(&labels),
            threshold,
        }
    }

    pub fn num_clusters(&self) -> usize {
        self.labels.iter().max().map_or(0, |m| m + 1)
    }

    /// Member indices per cluster id.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.num_clusters()];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l].push(i);
        }
        out
    }
}

/// Cluster every block in parallel.
pub fn cluster_blocks(blocks: &[Block], threshold: f64) -> Result<Vec<Clustering>> {
    blocks.par_iter().map(|b| cluster_block(b, threshold)).collect()
}
