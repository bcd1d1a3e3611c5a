//! Scholarly knowledge graph storage.
//!
//! Triples are split by the kind of their object: entity-to-entity links
//! (structural triples used for embedding training), text literals (titles,
//! names) and numeric year literals. Entities and relations are interned to
//! dense integer indices.

mod parse;
mod records;
mod split;
mod write;

use std::collections::{HashMap, HashSet};
use std::fmt;

pub use parse::{parse_triples, parse_triples_str, TripleFormat};
pub use records::{
    extract_author_records, read_orcid_table, AuthorRecord, OrcidTable,
    RecordSet,
};
pub use split::{split_structural, DatasetSplit, DEFAULT_RATIOS};
pub use write::{write_index_dump, write_triples};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EntityId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationId(pub usize);

impl fmt::Display for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// A structural (object) triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub head: EntityId,
    pub relation: RelationId,
    pub tail: EntityId,
}

impl Triple {
    pub fn new(head: usize, relation: usize, tail: usize) -> Self {
        Triple {
            head: EntityId(head),
            relation: RelationId(relation),
            tail: EntityId(tail),
        }
    }
}

/// Input dialect. Decides the admissible relation vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schema {
    /// Creator, co-authorship, citation and venue links.
    Oc,
    /// Creator, affiliation and venue links.
    Aminer,
}

impl Schema {
    pub fn relations(self) -> &'static [RelationKind] {
        match self {
            Schema::Oc => &[
                RelationKind::Creator,
                RelationKind::Knows,
                RelationKind::Cites,
                RelationKind::PartOf,
            ],
            Schema::Aminer => &[
                RelationKind::Creator,
                RelationKind::Affiliation,
                RelationKind::PartOf,
            ],
        }
    }
}

impl std::str::FromStr for Schema {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "oc" => Ok(Schema::Oc),
            "aminer" => Ok(Schema::Aminer),
            other => Err(crate::Error::Config(format!("unknown schema {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Creator,
    Knows,
    Cites,
    PartOf,
    Affiliation,
}

impl RelationKind {
    pub fn iri(self) -> &'static str {
        match self {
            RelationKind::Creator => "http://purl.org/dc/terms/creator",
            RelationKind::Knows => "http://xmlns.com/foaf/0.1/knows",
            RelationKind::Cites => "http://purl.org/spar/cito/cites",
            RelationKind::PartOf => "http://purl.org/vocab/frbr/core#partOf",
            RelationKind::Affiliation => "https://schema.org/affiliation",
        }
    }

    fn local_name(self) -> &'static str {
        match self {
            RelationKind::Creator => "creator",
            RelationKind::Knows => "knows",
            RelationKind::Cites => "cites",
            RelationKind::PartOf => "partOf",
            RelationKind::Affiliation => "affiliation",
        }
    }

    fn from_predicate(predicate: &str) -> Option<Self> {
        let name = local_name(predicate);
        [
            RelationKind::Creator,
            RelationKind::Knows,
            RelationKind::Cites,
            RelationKind::PartOf,
            RelationKind::Affiliation,
        ]
        .into_iter()
        .find(|k| k.local_name() == name)
    }
}

/// Text attribute predicates understood by the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TextAttr {
    Title,
    FamilyName,
    GivenName,
    Name,
}

impl TextAttr {
    fn from_predicate(predicate: &str) -> Option<Self> {
        match local_name(predicate) {
            "title" => Some(TextAttr::Title),
            "familyName" | "family_name" | "lastName" => Some(TextAttr::FamilyName),
            "givenName" | "given_name" | "firstName" => Some(TextAttr::GivenName),
            "name" => Some(TextAttr::Name),
            _ => None,
        }
    }
}

fn is_year_predicate(predicate: &str) -> bool {
    matches!(
        local_name(predicate),
        "publicationDate" | "issued" | "date" | "year" | "publicationYear"
    )
}

/// Local part of an IRI or CURIE: text after the last `#`, `/` or `:`.
pub(crate) fn local_name(iri: &str) -> &str {
    let iri = iri.trim_start_matches('<').trim_end_matches('>');
    iri.rsplit(['#', '/', ':']).next().unwrap_or(iri)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TextTriple {
    pub entity: EntityId,
    pub attribute: String,
    pub kind: TextAttr,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericTriple {
    pub entity: EntityId,
    pub attribute: String,
    pub year: i32,
}

/// Bidirectional IRI to index table.
#[derive(Debug, Clone, Default)]
pub struct Interner {
    iris: Vec<String>,
    index: HashMap<String, usize>,
}

impl Interner {
    pub fn intern(&mut self, iri: &str) -> usize {
        if let Some(&i) = self.index.get(iri) {
            return i;
        }
        let i = self.iris.len();
        self.iris.push(iri.to_owned());
        self.index.insert(iri.to_owned(), i);
        i
    }

    pub fn get(&self, iri: &str) -> Option<usize> {
        self.index.get(iri).copied()
    }

    pub fn iri(&self, index: usize) -> &str {
        &self.iris[index]
    }

    pub fn len(&self) -> usize {
        self.iris.len()
    }

    pub fn is_empty(&self) -> bool {
        self.iris.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &str)> {
        self.iris.iter().enumerate().map(|(i, s)| (i, s.as_str()))
    }
}

/// Immutable, integer-indexed triple store.
#[derive(Debug, Clone)]
pub struct KnowledgeGraph {
    schema: Schema,
    entities: Interner,
    relations: Interner,
    relation_kinds: Vec<RelationKind>,
    object_triples: Vec<Triple>,
    text_triples: Vec<TextTriple>,
    numeric_triples: Vec<NumericTriple>,
}

/// Triple and entity counts, in the layout of the dataset statistics tables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KgStats {
    pub object_triples: usize,
    pub text_triples: usize,
    pub numeric_triples: usize,
    pub entities: usize,
    pub publications: usize,
    pub venues: usize,
    pub authors: usize,
    pub organizations: usize,
    pub per_relation: Vec<(RelationKind, usize)>,
}

impl fmt::Display for KgStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "object_triples\t{}", self.object_triples)?;
        writeln!(f, "text_triples\t{}", self.text_triples)?;
        writeln!(f, "numeric_triples\t{}", self.numeric_triples)?;
        writeln!(f, "entities\t{}", self.entities)?;
        writeln!(f, "publications\t{}", self.publications)?;
        writeln!(f, "venues\t{}", self.venues)?;
        writeln!(f, "authors\t{}", self.authors)?;
        writeln!(f, "organizations\t{}", self.organizations)?;
        for (kind, n) in &self.per_relation {
            writeln!(f, "{}\t{}", kind.local_name(), n)?;
        }
        Ok(())
    }
}

impl KnowledgeGraph {
    /// An empty graph with the schema's relation vocabulary pre-registered.
    pub fn new(schema: Schema) -> Self {
        let mut relations = Interner::default();
        let mut relation_kinds = Vec::new();
        for &kind in schema.relations() {
            relations.intern(kind.iri());
            relation_kinds.push(kind);
        }
        KnowledgeGraph {
            schema,
            entities: Interner::default(),
            relations,
            relation_kinds,
            object_triples: Vec::new(),
            text_triples: Vec::new(),
            numeric_triples: Vec::new(),
        }
    }

    pub fn schema(&self) -> Schema {
        self.schema
    }

    pub fn entities(&self) -> &Interner {
        &self.entities
    }

    pub fn relations(&self) -> &Interner {
        &self.relations
    }

    pub fn num_entities(&self) -> usize {
        self.entities.len()
    }

    pub fn num_relations(&self) -> usize {
        self.relations.len()
    }

    pub fn entity_iri(&self, id: EntityId) -> &str {
        self.entities.iri(id.0)
    }

    pub fn entity_id(&self, iri: &str) -> Option<EntityId> {
        self.entities.get(iri).map(EntityId)
    }

    pub fn relation_id(&self, kind: RelationKind) -> Option<RelationId> {
        self.relation_kinds
            .iter()
            .position(|&k| k == kind)
            .map(RelationId)
    }

    pub fn relation_kind(&self, id: RelationId) -> RelationKind {
        self.relation_kinds[id.0]
    }

    pub fn object_triples(&self) -> &[Triple] {
        &self.object_triples
    }

    pub fn text_triples(&self) -> &[TextTriple] {
        &self.text_triples
    }

    pub fn numeric_triples(&self) -> &[NumericTriple] {
        &self.numeric_triples
    }

    /// Object triples of one relation kind.
    pub fn triples_of(&self, kind: RelationKind) -> impl Iterator<Item = &Triple> {
        let rel = self.relation_id(kind);
        self.object_triples
            .iter()
            .filter(move |t| Some(t.relation) == rel)
    }

    /// First literal of the given kind per entity.
    pub fn text_of(&self, kind: TextAttr) -> HashMap<EntityId, &str> {
        let mut out = HashMap::new();
        for t in self.text_triples.iter().filter(|t| t.kind == kind) {
            out.entry(t.entity).or_insert(t.value.as_str());
        }
        out
    }

    pub fn stats(&self) -> KgStats {
        let distinct = |kind: RelationKind, heads: bool| -> usize {
            self.triples_of(kind)
                .map(|t| if heads { t.head } else { t.tail })
                .collect::<HashSet<_>>()
                .len()
        };
        KgStats {
            object_triples: self.object_triples.len(),
            text_triples: self.text_triples.len(),
            numeric_triples: self.numeric_triples.len(),
            entities: self.entities.len(),
            publications: distinct(RelationKind::Creator, true),
            venues: distinct(RelationKind::PartOf, false),
            authors: distinct(RelationKind::Creator, false),
            organizations: distinct(RelationKind::Affiliation, false),
            per_relation: self
                .relation_kinds
                .iter()
                .map(|&k| (k, self.triples_of(k).count()))
                .collect(),
        }
    }
}

/// Single-writer builder enforcing the ingestion invariants.
pub(crate) struct GraphBuilder {
    kg: KnowledgeGraph,
    seen_objects: HashSet<Triple>,
    seen_literals: HashSet<(EntityId, String)>,
}

impl GraphBuilder {
    pub(crate) fn new(schema: Schema) -> Self {
        GraphBuilder {
            kg: KnowledgeGraph::new(schema),
            seen_objects: HashSet::new(),
            seen_literals: HashSet::new(),
        }
    }

    pub(crate) fn entity(&mut self, iri: &str) -> EntityId {
        EntityId(self.kg.entities.intern(iri))
    }

    pub(crate) fn relation_for(&self, predicate: &str) -> Option<RelationId> {
        RelationKind::from_predicate(predicate).and_then(|k| self.kg.relation_id(k))
    }

    pub(crate) fn relation_id(&self, kind: RelationKind) -> Option<RelationId> {
        self.kg.relation_id(kind)
    }

    pub(crate) fn text_kind(predicate: &str) -> Option<TextAttr> {
        TextAttr::from_predicate(predicate)
    }

    pub(crate) fn is_year(predicate: &str) -> bool {
        is_year_predicate(predicate)
    }

    /// Returns false when the triple was a duplicate.
    pub(crate) fn add_object(&mut self, triple: Triple) -> bool {
        if self.seen_objects.insert(triple) {
            self.kg.object_triples.push(triple);
            true
        } else {
            false
        }
    }

    pub(crate) fn add_text(&mut self, entity: EntityId, attribute: &str, kind: TextAttr, value: &str) -> bool {
        if !self.seen_literals.insert((entity, attribute.to_owned())) {
            return false;
        }
        self.kg.text_triples.push(TextTriple {
            entity,
            attribute: attribute.to_owned(),
            kind,
            value: value.to_owned(),
        });
        true
    }

    pub(crate) fn add_year(&mut self, entity: EntityId, attribute: &str, year: i32) -> bool {
        if !self.seen_literals.insert((entity, attribute.to_owned())) {
            return false;
        }
        self.kg.numeric_triples.push(NumericTriple {
            entity,
            attribute: attribute.to_owned(),
            year,
        });
        true
    }

    pub(crate) fn finish(self) -> KnowledgeGraph {
        self.kg
    }
}
