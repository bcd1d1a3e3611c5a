use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Read;

use log::warn;

use super::{EntityId, KnowledgeGraph, RelationKind, TextAttr};
use crate::disambig::ln_fi_key;
use crate::Result;

/// Author IRI to ORCID iD.
pub type OrcidTable = HashMap<String, String>;

/// One author entity to disambiguate.
#[derive(Debug, Clone, PartialEq)]
pub struct AuthorRecord {
    pub author: EntityId,
    pub iri: String,
    pub family_name: String,
    pub given_name: String,
    /// Publications linked to the author through creator edges, never empty.
    pub documents: Vec<EntityId>,
    pub orcid: Option<String>,
}

impl AuthorRecord {
    pub fn block_key(&self) -> String {
        ln_fi_key(&self.family_name, &self.given_name)
    }
}

#[derive(Debug, Clone, Default)]
pub struct RecordSet {
    pub records: Vec<AuthorRecord>,
    /// Authors without a family name literal.
    pub missing_family: Vec<EntityId>,
    /// Labeled authors without a given name, kept out of evaluation blocks.
    pub missing_given: Vec<EntityId>,
    /// Truth-table IRIs that do not name an author entity.
    pub unknown_truth: Vec<String>,
}

impl RecordSet {
    pub fn num_blocks(&self) -> usize {
        self.records.iter().map(AuthorRecord::block_key).collect::<HashSet<_>>().len()
    }

    pub fn num_orcids(&self) -> usize {
        self.records.iter().filter_map(|r| r.orcid.as_deref()).collect::<HashSet<_>>().len()
    }
}

/// Read a CSV with header `author_iri,orcid`.
pub fn read_orcid_table<R: Read>(reader: R) -> Result<OrcidTable> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut table = OrcidTable::new();
    for row in rdr.records() {
        let row = row?;
        if let (Some(iri), Some(orcid)) = (row.get(0), row.get(1)) {
            table.entry(iri.trim().to_owned()).or_insert_with(|| orcid.trim().to_owned());
        }
    }
    Ok(table)
}

/// One record per author entity (object of a creator edge).
///
/// Without `truth`, every author with a family name is returned. With
/// `truth`, only labeled authors are kept, and only within name blocks that
/// carry at least two distinct ORCID iDs.
pub fn extract_author_records(kg: &KnowledgeGraph, truth: Option<&OrcidTable>) -> RecordSet {
    let mut docs: BTreeMap<EntityId, Vec<EntityId>> = BTreeMap::new();
    for t in kg.triples_of(RelationKind::Creator) {
        docs.entry(t.tail).or_default().push(t.head);
    }
    let family = kg.text_of(TextAttr::FamilyName);
    let given = kg.text_of(TextAttr::GivenName);

    let mut out = RecordSet::default();
    for (author, mut documents) in docs {
        documents.sort_unstable();
        documents.dedup();
        let Some(&family_name) = family.get(&author) else {
            out.missing_family.push(author);
            continue;
        };
        out.records.push(AuthorRecord {
            author,
            iri: kg.entity_iri(author).to_owned(),
            family_name: family_name.to_owned(),
            given_name: given.get(&author).copied().unwrap_or("").to_owned(),
            documents,
            orcid: None,
        });
    }
    if !out.missing_family.is_empty() {
        warn!("{} authors without a family name excluded", out.missing_family.len());
    }
    out.records.sort_by(|a, b| a.iri.cmp(&b.iri));

    let Some(truth) = truth else { return out };

    let index: HashMap<&str, usize> = out.records.iter().enumerate().map(|(i, r)| (r.iri.as_str(), i)).collect();
    let mut labeled = vec![None; out.records.len()];
    let mut unknown: Vec<String> = Vec::new();
    for (iri, orcid) in truth {
        match index.get(iri.as_str()) {
            Some(&i) => labeled[i] = Some(orcid.clone()),
            None => unknown.push(iri.clone()),
        }
    }
    unknown.sort();
    for iri in &unknown {
        warn!("truth entry {iri} does not match an author record, skipped");
    }
    out.unknown_truth = unknown;

    let mut kept = Vec::new();
    for (mut rec, orcid) in std::mem::take(&mut out.records).into_iter().zip(labeled) {
        let Some(orcid) = orcid else { continue };
        if rec.given_name.trim().is_empty() {
            out.missing_given.push(rec.author);
            continue;
        }
        rec.orcid = Some(orcid);
        kept.push(rec);
    }
    if !out.missing_given.is_empty() {
        warn!("{} labeled authors without a given name excluded from evaluation", out.missing_given.len());
    }

    let mut ids_per_key: HashMap<String, HashSet<&str>> = HashMap::new();
    for r in &kept {
        ids_per_key.entry(r.block_key()).or_default().insert(r.orcid.as_deref().unwrap_or_default());
    }
    let ambiguous: HashSet<String> = ids_per_key
        .into_iter()
        .filter(|(_, ids)| ids.len() >= 2)
        .map(|(k, _)| k)
        .collect();
    out.records = kept.into_iter().filter(|r| ambiguous.contains(&r.block_key())).collect();
    out
}
