use std::collections::HashMap;

use crate::kg::{EntityId, GraphBuilder, KnowledgeGraph};
use crate::{Error, Result};

use super::Clustering;

#[derive(Debug)]
pub struct DedupeResult {
    pub kg: KnowledgeGraph,
    /// `(merged IRI, canonical IRI)` for every entity that was folded away.
    pub merge_map: Vec<(String, String)>,
}

impl DedupeResult {
    pub fn merged(&self) -> usize {
        self.merge_map.len()
    }
}

/// Collapse each predicted cluster into one author entity.
///
/// The lexicographically smallest IRI of a cluster is kept. Triples of the
/// other members are re-pointed at it and duplicates dropped; for literals
/// the first value per attribute wins.
pub fn dedupe_kg(kg: &KnowledgeGraph, clusterings: &[Clustering]) -> Result<DedupeResult> {
    let mut canonical: HashMap<&str, &str> = HashMap::new();
    let mut seen: HashMap<&str, &str> = HashMap::new();
    for c in clusterings {
        for iri in &c.members {
            if let Some(other) = seen.insert(iri, &c.block_key) {
                return Err(Error::Contract(format!("{iri} appears in blocks {other} and {}", c.block_key)));
            }
            if kg.entity_id(iri).is_none() {
                return Err(Error::Contract(format!("{iri} is not an entity of the graph")));
            }
        }
        for cluster in c.clusters() {
            let Some(keep) = cluster.iter().map(|&i| c.members[i].as_str()).min() else {
                continue;
            };
            for &i in &cluster {
                let iri = c.members[i].as_str();
                if iri != keep {
                    canonical.insert(iri, keep);
                }
            }
        }
    }

    let mut builder = GraphBuilder::new(kg.schema());
    let mut remap = vec![EntityId(usize::MAX); kg.num_entities()];
    for (idx, iri) in kg.entities().iter() {
        if !canonical.contains_key(iri) {
            remap[idx] = builder.entity(iri);
        }
    }
    for (idx, iri) in kg.entities().iter() {
        if let Some(keep) = canonical.get(iri) {
            remap[idx] = builder.entity(keep);
        }
    }
    let map = |e: EntityId| remap[e.0];

    for t in kg.object_triples() {
        let kind = kg.relation_kind(t.relation);
        let relation = builder
            .relation_id(kind)
            .ok_or_else(|| Error::Contract(format!("relation {kind:?} missing after rebuild")))?;
        builder.add_object(crate::kg::Triple {
            head: map(t.head),
            relation,
            tail: map(t.tail),
        });
    }
    for t in kg.text_triples() {
        builder.add_text(map(t.entity), &t.attribute, t.kind, &t.value);
    }
    for t in kg.numeric_triples() {
        builder.add_year(map(t.entity), &t.attribute, t.year);
    }

    let mut merge_map: Vec<(String, String)> = canonical.into_iter().map(|(a, b)| (a.to_owned(), b.to_owned())).collect();
    merge_map.sort();
    Ok(DedupeResult {
        kg: builder.finish(),
        merge_map,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kg::{parse_triples_str, RelationKind, Schema, TripleFormat};

    const KG: &str = "\
p1\thttp://purl.org/dc/terms/creator\ta1\tiri
p2\thttp://purl.org/dc/terms/creator\ta2\tiri
p3\thttp://purl.org/dc/terms/creator\ta3\tiri
a1\thttp://xmlns.com/foaf/0.1/knows\tc\tiri
a2\thttp://xmlns.com/foaf/0.1/knows\tc\tiri
a1\thttp://xmlns.com/foaf/0.1/familyName\tLiu\ttext
a2\thttp://xmlns.com/foaf/0.1/familyName\tLiu\ttext
a2\thttp://xmlns.com/foaf/0.1/givenName\tWei\ttext
a3\thttp://xmlns.com/foaf/0.1/familyName\tLiu\ttext
";

    fn kg() -> KnowledgeGraph {
        parse_triples_str(KG, TripleFormat::Tsv, Schema::Oc).unwrap()
    }

    fn clustering(members: &[&str], labels: Vec<usize>) -> Clustering {
        Clustering {
            block_key: "liu_w".into(),
            members: members.iter().map(|s| s.to_string()).collect(),
            labels,
            threshold: 0.5,
        }
    }

    #[test]
    fn merges_into_smallest_iri() {
        let kg = kg();
        let r = dedupe_kg(&kg, &[clustering(&["a1", "a2", "a3"], vec![0, 0, 1])]).unwrap();
        assert_eq!(r.merge_map, vec![("a2".to_string(), "a1".to_string())]);
        assert_eq!(r.kg.num_entities(), kg.num_entities() - 1);
        assert!(r.kg.entity_id("a2").is_none());
        // knows edges collapse into one
        assert_eq!(r.kg.triples_of(RelationKind::Knows).count(), 1);
        assert_eq!(r.kg.triples_of(RelationKind::Creator).count(), 3);
        let a1 = r.kg.entity_id("a1").unwrap();
        let heads: Vec<_> = r
            .kg
            .triples_of(RelationKind::Creator)
            .filter(|t| t.tail == a1)
            .map(|t| r.kg.entity_iri(t.head))
            .collect();
        assert_eq!(heads, ["p1", "p2"]);
        // first value kept, missing attribute filled from the merged entity
        assert_eq!(r.kg.text_triples().len(), 3);
    }

    #[test]
    fn identity_when_all_singletons() {
        let kg = kg();
        let r = dedupe_kg(&kg, &[clustering(&["a1", "a2", "a3"], vec![0, 1, 2])]).unwrap();
        assert!(r.merge_map.is_empty());
        assert_eq!(r.kg.object_triples(), kg.object_triples());
        assert_eq!(r.kg.num_entities(), kg.num_entities());
    }

    #[test]
    fn overlapping_blocks_are_rejected() {
        let kg = kg();
        let a = clustering(&["a1", "a2"], vec![0, 0]);
        let mut b = clustering(&["a2", "a3"], vec![0, 0]);
        b.block_key = "liu_x".into();
        assert!(matches!(dedupe_kg(&kg, &[a, b]), Err(Error::Contract(_))));
        assert!(dedupe_kg(&kg, &[clustering(&["zz"], vec![0])]).is_err());
    }
}
