//! Generator for small knowledge graphs with planted ambiguous authors.
//!
//! Several distinct people share each ambiguous name. Every publication gets
//! a fresh author entity for its ambiguous creator, as in citation graphs
//! where author roles are minted per paper. The people differ only in the
//! structure around their papers: a stable set of coauthors, a home venue,
//! citations among their own work and a topical title vocabulary. Filler
//! papers by unrelated people add background noise.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kg::{GraphBuilder, KnowledgeGraph, OrcidTable, RelationKind, Schema, TextAttr, Triple};

const FAMILIES: &[&str] = &["Liu", "Park", "Wang", "Kim", "Cabanac", "Zhang", "Lee", "Chen", "Nguyen", "Smith"];
const INITIALS: &[&str] = &["W.", "H.", "X.", "J.", "G.", "Y.", "S.", "L.", "T.", "M."];
const WORDS: &[&str] = &[
    "graph", "embedding", "protein", "folding", "network", "citation", "quantum", "sensor", "robot", "language", "vision",
    "retrieval", "kernel", "cloud", "privacy", "genome", "climate", "market", "energy", "storage", "neural", "bayesian",
    "stream", "compiler", "query", "ontology", "battery", "imaging", "traffic", "spectral", "wireless", "crystal",
    "enzyme", "fluid", "turbine", "catalyst", "soil", "ocean", "vaccine", "tumor",
];
const FILLER_WORDS: &[&str] = &["analysis", "study", "approach", "method", "results", "model", "evaluation", "framework"];

const CREATOR: &str = "http://purl.org/dc/terms/creator";
const KNOWS: &str = "http://xmlns.com/foaf/0.1/knows";
const CITES: &str = "http://purl.org/spar/cito/cites";
const PART_OF: &str = "http://purl.org/vocab/frbr/core#partOf";
const TITLE: &str = "http://purl.org/dc/terms/title";
const FAMILY: &str = "http://xmlns.com/foaf/0.1/familyName";
const GIVEN: &str = "http://xmlns.com/foaf/0.1/givenName";
const ISSUED: &str = "http://purl.org/dc/terms/issued";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticConfig {
    /// Ambiguous names (at most 10).
    pub names: usize,
    pub authors_per_name: usize,
    pub records_per_author: usize,
    pub coauthors_per_author: usize,
    /// Coauthors drawn from the pool for each paper.
    pub coauthors_per_paper: usize,
    pub filler_papers: usize,
    pub filler_authors: usize,
    pub filler_venues: usize,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            names: 5,
            authors_per_name: 4,
            records_per_author: 4,
            coauthors_per_author: 4,
            coauthors_per_paper: 3,
            filler_papers: 80,
            filler_authors: 60,
            filler_venues: 10,
            seed: 7,
        }
    }
}

/// Ground truth for one planted person.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedAuthor {
    pub orcid: String,
    pub family_name: String,
    pub given_name: String,
    /// Per-paper author entity IRIs.
    pub records: Vec<String>,
    pub papers: Vec<String>,
    pub venue: String,
    pub coauthors: Vec<String>,
}

#[derive(Debug)]
pub struct SyntheticDataset {
    pub kg: KnowledgeGraph,
    pub truth: OrcidTable,
    pub authors: Vec<PlantedAuthor>,
}

struct Writer {
    b: GraphBuilder,
}

impl Writer {
    fn object(&mut self, s: &str, p: &str, o: &str) {
        let relation = self.b.relation_for(p).expect("predicate in the OC vocabulary");
        let (head, tail) = (self.b.entity(s), self.b.entity(o));
        self.b.add_object(Triple { head, relation, tail });
    }

    fn text(&mut self, s: &str, p: &str, value: &str) {
        let kind = GraphBuilder::text_kind(p).expect("text predicate");
        let e = self.b.entity(s);
        self.b.add_text(e, p, kind, value);
    }

    fn person(&mut self, iri: &str, family: &str, given: &str) {
        self.text(iri, FAMILY, family);
        self.text(iri, GIVEN, given);
    }

    fn paper(&mut self, iri: &str, title: &str, year: i32, venue: &str) {
        self.text(iri, TITLE, title);
        let e = self.b.entity(iri);
        self.b.add_year(e, ISSUED, year);
        self.object(iri, PART_OF, venue);
    }
}

fn title(rng: &mut ChaCha8Rng, topic: &[&str]) -> String {
    let mut words: Vec<&str> = topic.choose_multiple(rng, 2).copied().collect();
    words.push(FILLER_WORDS.choose(rng).copied().unwrap_or("study"));
    words.push(WORDS.choose(rng).copied().unwrap_or("graph"));
    words.shuffle(rng);
    let mut t = words.join(" ");
    if let Some(first) = t.get_mut(0..1) {
        first.make_ascii_uppercase();
    }
    t
}

/// Build a graph in the OC vocabulary. Deterministic in `config.seed`.
pub fn generate(config: &SyntheticConfig) -> SyntheticDataset {
    assert!(config.names <= FAMILIES.len(), "at most {} ambiguous names", FAMILIES.len());
    assert!(config.coauthors_per_paper <= config.coauthors_per_author);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut w = Writer { b: GraphBuilder::new(Schema::Oc) };
    let mut truth = OrcidTable::new();
    let mut authors = Vec::new();
    let mut planted_papers = Vec::new();

    let base = "https://example.org/";
    let mut person = 0usize;
    for n in 0..config.names {
        for a in 0..config.authors_per_name {
            let idx = n * config.authors_per_name + a;
            let orcid = format!("0000-0000-{:04}-{:04}", n, a);
            let venue = format!("{base}venue/home{idx}");
            w.text(&venue, TITLE, &format!("Journal of {} {}", WORDS[(3 * idx) % WORDS.len()], idx));
            let topic: Vec<&str> = WORDS.choose_multiple(&mut rng, 4).copied().collect();
            let year = rng.gen_range(1995..2015);

            let coauthors: Vec<String> = (0..config.coauthors_per_author)
                .map(|c| {
                    let iri = format!("{base}person/c{idx}_{c}");
                    w.person(&iri, &format!("Co{idx}x{c}"), &format!("Pat{c}"));
                    iri
                })
                .collect();

            let mut records = Vec::new();
            let mut papers: Vec<String> = Vec::new();
            for r in 0..config.records_per_author {
                let paper = format!("{base}paper/p{idx}_{r}");
                let record = format!("{base}role/r{person}");
                person += 1;
                w.paper(&paper, &title(&mut rng, &topic), year + rng.gen_range(0..4), &venue);
                w.person(&record, FAMILIES[n], INITIALS[n]);
                w.object(&paper, CREATOR, &record);
                for c in coauthors.choose_multiple(&mut rng, config.coauthors_per_paper) {
                    w.object(&paper, CREATOR, c);
                    w.object(&record, KNOWS, c);
                }
                if let Some(prev) = papers.choose(&mut rng) {
                    w.object(&paper, CITES, prev);
                }
                truth.insert(record.clone(), orcid.clone());
                records.push(record);
                papers.push(paper);
            }
            planted_papers.extend(papers.iter().cloned());
            authors.push(PlantedAuthor {
                orcid,
                family_name: FAMILIES[n].into(),
                given_name: INITIALS[n].into(),
                records,
                papers,
                venue,
                coauthors,
            });
        }
    }

    let fillers: Vec<String> = (0..config.filler_authors)
        .map(|i| {
            let iri = format!("{base}person/f{i}");
            w.person(&iri, &format!("Filler{i}"), "Alex");
            iri
        })
        .collect();
    let venues: Vec<String> = (0..config.filler_venues).map(|v| format!("{base}venue/v{v}")).collect();
    for v in &venues {
        w.text(v, TITLE, "Proceedings of general topics");
    }
    let mut filler_papers: Vec<String> = Vec::new();
    for i in 0..config.filler_papers {
        let paper = format!("{base}paper/f{i}");
        let topic: Vec<&str> = WORDS.choose_multiple(&mut rng, 4).copied().collect();
        let venue = venues.choose(&mut rng).cloned().unwrap_or_default();
        w.paper(&paper, &title(&mut rng, &topic), rng.gen_range(1995..2020), &venue);
        let team: Vec<&String> = fillers.choose_multiple(&mut rng, 2).collect();
        for f in &team {
            w.object(&paper, CREATOR, f);
        }
        if let [a, b] = team[..] {
            w.object(a, KNOWS, b);
        }
        // background citations into both filler and planted work
        if let Some(cited) = planted_papers.choose(&mut rng) {
            w.object(&paper, CITES, cited);
        }
        if let Some(cited) = filler_papers.choose(&mut rng) {
            w.object(&paper, CITES, cited);
        }
        filler_papers.push(paper);
    }

    let kg = w.b.finish();
    debug_assert_eq!(kg.relations().len(), Schema::Oc.relations().len());
    debug_assert!(kg.relation_id(RelationKind::Creator).is_some());
    debug_assert!(kg.text_of(TextAttr::FamilyName).len() >= truth.len());
    SyntheticDataset { kg, truth, authors }
}
