use std::collections::{HashMap, HashSet};

use crate::disambig::{group_blocks, ln_fi_key, normalize_name, AuthorFeature, Block, Clustering, UnionFind};
use crate::kg::{AuthorRecord, EntityId, KnowledgeGraph, RelationKind, TextAttr};
use crate::{Error, Result};

pub const DEFAULT_PAIR_THRESHOLD: u32 = 10;

/// Function words ignored when comparing titles.
const STOPWORDS: &[&str] = &[
    "a", "about", "after", "against", "all", "also", "an", "and", "any", "are", "as", "at", "be", "been", "before", "being",
    "between", "both", "but", "by", "can", "do", "does", "during", "each", "for", "from", "has", "have", "how", "in", "into",
    "is", "it", "its", "more", "most", "new", "not", "of", "on", "or", "other", "our", "over", "some", "such", "than", "that",
    "the", "their", "these", "this", "those", "through", "to", "towards", "under", "up", "using", "via", "was", "we", "were",
    "what", "when", "which", "while", "who", "why", "will", "with", "within", "without",
];

/// Points per rule. Tier vectors give the score for 1, 2, ... shared items;
/// the last entry also covers every larger count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRules {
    pub title_words: Vec<u32>,
    pub coauthors: Vec<u32>,
    pub same_venue: u32,
    pub shared_citations: Vec<u32>,
    pub self_citation: u32,
}

impl Default for PairRules {
    fn default() -> Self {
        PairRules {
            title_words: vec![3, 5, 8],
            coauthors: vec![4, 7, 10],
            same_venue: 6,
            shared_citations: vec![2, 3, 6, 8, 10],
            self_citation: 10,
        }
    }
}

fn tier(tiers: &[u32], shared: usize) -> u32 {
    match shared {
        0 => 0,
        n => tiers[(n - 1).min(tiers.len() - 1)],
    }
}

#[derive(Debug, Default, Clone)]
struct Publication {
    title: HashSet<String>,
    /// LN-FI keys of all creators.
    authors: HashSet<String>,
    venue: Option<EntityId>,
    cites: HashSet<EntityId>,
}

/// Per-publication metadata used by the pair rules.
#[derive(Debug, Clone)]
pub struct PublicationIndex {
    publications: HashMap<EntityId, Publication>,
    rules: PairRules,
}

fn title_tokens(title: &str) -> HashSet<String> {
    title
        .split(|c: char| !c.is_alphanumeric())
        .map(normalize_name)
        .filter(|t| !t.is_empty() && !STOPWORDS.contains(&t.as_str()))
        .collect()
}

impl PublicationIndex {
    pub fn new(kg: &KnowledgeGraph) -> Self {
        Self::with_rules(kg, PairRules::default())
    }

    pub fn with_rules(kg: &KnowledgeGraph, rules: PairRules) -> Self {
        let family = kg.text_of(TextAttr::FamilyName);
        let given = kg.text_of(TextAttr::GivenName);
        let mut publications: HashMap<EntityId, Publication> = HashMap::new();
        for (&e, title) in &kg.text_of(TextAttr::Title) {
            publications.entry(e).or_default().title = title_tokens(title);
        }
        for t in kg.triples_of(RelationKind::Creator) {
            let p = publications.entry(t.head).or_default();
            if let Some(f) = family.get(&t.tail) {
                p.authors.insert(ln_fi_key(f, given.get(&t.tail).copied().unwrap_or("")));
            }
        }
        for t in kg.triples_of(RelationKind::PartOf) {
            let p = publications.entry(t.head).or_default();
            p.venue.get_or_insert(t.tail);
        }
        for t in kg.triples_of(RelationKind::Cites) {
            publications.entry(t.head).or_default().cites.insert(t.tail);
        }
        PublicationIndex { publications, rules }
    }

    pub fn rules(&self) -> &PairRules {
        &self.rules
    }
}

/// Affinity of two distinct publications sharing the blocked name
/// `exclude_key`, which is not counted as a shared coauthor.
pub fn score_pair(index: &PublicationIndex, p1: EntityId, p2: EntityId, exclude_key: &str) -> Result<u32> {
    if p1 == p2 {
        return Err(Error::Contract(format!("cannot score publication {} against itself", p1.0)));
    }
    let empty = Publication::default();
    let a = index.publications.get(&p1).unwrap_or(&empty);
    let b = index.publications.get(&p2).unwrap_or(&empty);
    let rules = &index.rules;

    let titles = a.title.intersection(&b.title).count();
    let coauthors = a.authors.intersection(&b.authors).filter(|k| k.as_str() != exclude_key).count();
    let venue = matches!((a.venue, b.venue), (Some(x), Some(y)) if x == y);
    let citations = a.cites.intersection(&b.cites).count();
    let self_cite = a.cites.contains(&p2) || b.cites.contains(&p1);

    Ok(tier(&rules.title_words, titles)
        + tier(&rules.coauthors, coauthors)
        + if venue { rules.same_venue } else { 0 }
        + tier(&rules.shared_citations, citations)
        + if self_cite { rules.self_citation } else { 0 })
}

/// Blocks of records without embedding features, for the baselines.
pub fn record_blocks(records: &[AuthorRecord]) -> Vec<Block> {
    group_blocks(
        records
            .iter()
            .map(|r| AuthorFeature {
                record: r.clone(),
                vector: Vec::new(),
            })
            .collect(),
    )
}

/// Link every pair of records whose best document pair scores at least
/// `threshold` (strictly above when `strict`), then take connected
/// components.
pub fn score_pairs_cluster(block: &Block, index: &PublicationIndex, threshold: u32, strict: bool) -> Result<Clustering> {
    let n = block.members.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (&block.members[i].record, &block.members[j].record);
            let mut best = 0;
            for &da in &a.documents {
                for &db in &b.documents {
                    // two author entities on the same paper are different people
                    if da != db {
                        best = best.max(score_pair(index, da, db, &block.key)?);
                    }
                }
            }
            if best > threshold || (!strict && best == threshold) {
                uf.union(i, j);
            }
        }
    }
    Ok(Clustering::new(block, uf.labels(), threshold as f64))
}
