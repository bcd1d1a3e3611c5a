use std::collections::HashMap;

use super::{cosine_distance, full_name_key, normalize_name, Block, Clustering};

/// Split clusters that mix different full names.
///
/// Members whose given name is only an initial (or missing) cannot
/// contradict anyone, so they follow their nearest fully named neighbour in
/// the same cluster. A cluster with no fully named member is left alone.
pub fn post_block_filter(clustering: &Clustering, block: &Block) -> Clustering {
    assert_eq!(clustering.members.len(), block.members.len(), "clustering does not belong to block");
    let named: Vec<Option<String>> = block
        .members
        .iter()
        .map(|m| {
            let r = &m.record;
            (normalize_name(&r.given_name).chars().count() > 1).then(|| full_name_key(&r.family_name, &r.given_name))
        })
        .collect();

    let mut labels = vec![0; clustering.labels.len()];
    let mut next = 0;
    for cluster in clustering.clusters() {
        let anchors: Vec<usize> = cluster.iter().copied().filter(|&i| named[i].is_some()).collect();
        if anchors.is_empty() {
            for &i in &cluster {
                labels[i] = next;
            }
            next += 1;
            continue;
        }
        let mut fragment: HashMap<&str, usize> = HashMap::new();
        for &i in &anchors {
            let key = named[i].as_deref().unwrap_or_default();
            let id = *fragment.entry(key).or_insert_with(|| {
                next += 1;
                next - 1
            });
            labels[i] = id;
        }
        for &i in cluster.iter().filter(|&&i| named[i].is_none()) {
            let nearest = anchors
                .iter()
                .copied()
                .min_by(|&a, &b| {
                    let da = cosine_distance(&block.members[i].vector, &block.members[a].vector);
                    let db = cosine_distance(&block.members[i].vector, &block.members[b].vector);
                    da.total_cmp(&db)
                })
                .unwrap_or(i);
            labels[i] = labels[nearest];
        }
    }
    Clustering::new(block, labels, clustering.threshold)
}
