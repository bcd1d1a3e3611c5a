use crate::disambig::{cluster_block, group_blocks, AuthorFeature, Block, Clustering};
use crate::kg::AuthorRecord;
use crate::literals::TextFeatureTable;
use crate::Result;

pub const DEFAULT_TITLE_THRESHOLD: f64 = 0.18;

/// Blocks whose feature is the title vector of each record's first
/// document (zero when the title has no vector).
pub fn title_blocks(records: &[AuthorRecord], titles: &TextFeatureTable) -> Vec<Block> {
    group_blocks(
        records
            .iter()
            .map(|r| AuthorFeature {
                record: r.clone(),
                vector: r.documents.first().map_or_else(|| vec![0.0; titles.dim()], |&d| titles.get(d).to_vec()),
            })
            .collect(),
    )
}

/// Single-linkage clustering of one block over title-vector cosine distance.
pub fn title_similarity_cluster(block: &Block, threshold: f64) -> Result<Clustering> {
    cluster_block(block, threshold)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kg::EntityId;

    fn record(i: usize, doc: usize) -> AuthorRecord {
        AuthorRecord {
            author: EntityId(i),
            iri: format!("a{i}"),
            family_name: "Kim".into(),
            given_name: "J".into(),
            documents: vec![EntityId(doc)],
            orcid: None,
        }
    }

    #[test]
    fn identical_and_orthogonal_titles() {
        let mut t = TextFeatureTable::new(2);
        t.insert(EntityId(10), vec![1.0, 0.0]).unwrap();
        t.insert(EntityId(11), vec![1.0, 0.0]).unwrap();
        t.insert(EntityId(12), vec![0.0, 1.0]).unwrap();
        let blocks = title_blocks(&[record(0, 10), record(1, 11), record(2, 12), record(3, 13)], &t);
        assert_eq!(blocks.len(), 1);
        let c = title_similarity_cluster(&blocks[0], DEFAULT_TITLE_THRESHOLD).unwrap();
        assert_eq!(c.labels, vec![0, 0, 1, 2]);
        let c = title_similarity_cluster(&blocks[0], 1e-9).unwrap();
        assert_eq!(c.labels, vec![0, 0, 1, 2]);
    }
}
