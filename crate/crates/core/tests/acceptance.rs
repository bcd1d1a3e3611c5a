//! Acceptance criteria, one line per criterion.
//!
//! Runs without the test harness so every verdict is printed:
//! `cargo test --test acceptance`. The two dataset-scale criteria need the
//! published graph dumps and run only when these are configured:
//!
//! * `LAND_OC_KG`, `LAND_AMINER_KG`: triple files for the ingestion counts
//! * `LAND_OC_TRUTH` and `LAND_FULL_SCALE=1`: full-size training run

use std::collections::{HashMap, HashSet, VecDeque};
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use land::baselines::{record_blocks, score_pair, score_pairs_cluster, PublicationIndex};
use land::disambig::{
    best_point, build_blocks, cluster_block, cluster_blocks, dedupe_kg, threshold_sweep, AuthorFeature, Block, Clustering,
    DistanceMatrix, DocumentSource,
};
use land::eval::{evaluate, pairwise_counts, prf, PairCounts};
use land::kg::{
    extract_author_records, parse_triples, parse_triples_str, read_orcid_table, split_structural, AuthorRecord, EntityId,
    KnowledgeGraph, OrcidTable, RelationKind, Schema, Triple, TripleFormat, DEFAULT_RATIOS,
};
use land::literals::{LiteralFeatures, NumericFeatureTable, TextFeatureTable};
use land::model::{ModelParams, Variant};
use land::pipeline::Grid;
use land::synthetic::{generate, SyntheticConfig};
use land::train::{loss_and_gradients, train_model, TrainConfig};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

use Verdict::{Fail, Pass, Skip};

fn check(ok: bool, detail: String) -> Verdict {
    if ok {
        Pass(detail)
    } else {
        Fail(detail)
    }
}

fn within(got: f64, want: f64, tol: f64) -> bool {
    // slack for two-decimal values that are not exact in binary
    (got - want).abs() <= tol + 1e-9
}

// ---------------------------------------------------------------------------
// metrics oracle

fn metrics_oracle() -> Verdict {
    let m = prf(&PairCounts::new(996, 90, 488, 1582));
    let ok = within(m.precision, 91.71, 0.01) && within(m.recall, 67.11, 0.01) && within(m.f1, 77.50, 0.01);
    check(
        ok,
        format!(
            "P={:.2} R={:.2} F1={:.2} (reported 91.71 / 67.11 / 77.50, tolerance 0.01)",
            m.precision, m.recall, m.f1
        ),
    )
}

// ---------------------------------------------------------------------------
// gradient check

fn gradient_check() -> Verdict {
    const H: usize = 6;
    const D: usize = 4;
    const PROBES: usize = 120;
    const STEP: f64 = 1e-5;
    const FLOOR: f64 = 1e-6;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (n_ent, n_rel) = (9, 3);

    let mut text = TextFeatureTable::new(D);
    let mut years = HashMap::new();
    // a few entities without literals exercise the zero-feature path
    for e in 0..n_ent - 2 {
        text.insert(EntityId(e), (0..D).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap();
        years.insert(EntityId(e), rng.gen_range(0.0..1.0));
    }
    let features = LiteralFeatures::new(text, NumericFeatureTable::from_values(years, 1978, 2021));

    let mut worst = Vec::new();
    for variant in Variant::ALL {
        let mut model = ModelParams::init(variant, n_ent, n_rel, H, D, &mut rng);
        // larger scale than the initializer so every path carries signal
        for (_, t) in model.tensors_mut() {
            t.iter_mut().for_each(|x| *x = rng.gen_range(-0.8..0.8));
        }
        let triples: Vec<Triple> = (0..16)
            .map(|_| Triple::new(rng.gen_range(0..n_ent), rng.gen_range(0..n_rel), rng.gen_range(0..n_ent)))
            .collect();
        let labels: Vec<bool> = (0..triples.len()).map(|_| rng.gen_bool(0.5)).collect();
        let smoothing = 0.1;
        let (_, grads) = loss_and_gradients(&model, &triples, &labels, smoothing, &features);
        let sizes: Vec<usize> = model.tensors().iter().map(|(_, t)| t.len()).collect();
        let names: Vec<&str> = model.tensors().iter().map(|(n, _)| *n).collect();
        let dense: Vec<Vec<f64>> = (0..sizes.len()).map(|i| grads.dense(&model, i)).collect();

        let mut max_rel: f64 = 0.0;
        let mut at = String::new();
        for p in 0..PROBES {
            // every tensor gets probed, then random ones
            let ti = if p < sizes.len() { p } else { rng.gen_range(0..sizes.len()) };
            let j = rng.gen_range(0..sizes[ti]);
            let original = model.tensors()[ti].1[j];
            let loss_at = |x: f64, m: &mut ModelParams| {
                m.tensors_mut()[ti].1[j] = x;
                loss_and_gradients(m, &triples, &labels, smoothing, &features).0
            };
            let numeric = (loss_at(original + STEP, &mut model) - loss_at(original - STEP, &mut model)) / (2.0 * STEP);
            model.tensors_mut()[ti].1[j] = original;
            let analytic = dense[ti][j];
            let rel = (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(FLOOR);
            if rel > max_rel {
                max_rel = rel;
                at = format!("{}[{j}]", names[ti]);
            }
        }
        worst.push((variant, max_rel, at));
    }
    let ok = worst.iter().all(|(_, r, _)| *r < 1e-4);
    let detail = worst
        .iter()
        .map(|(v, r, at)| format!("{v} max rel err {r:.1e} at {at}"))
        .collect::<Vec<_>>()
        .join(", ");
    check(ok, format!("{PROBES} probes per variant, h={H}, d={D}: {detail}"))
}

// ---------------------------------------------------------------------------
// clustering oracle

/// Textbook agglomeration with a cluster-distance matrix updated by the
/// single-linkage (minimum) rule; stops when the closest pair is not below
/// the threshold. O(n^3).
fn naive_hac(d: &DistanceMatrix, threshold: f64) -> Vec<usize> {
    let n = d.len();
    let mut dist: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| d.get(i, j)).collect()).collect();
    let mut active: Vec<bool> = vec![true; n];
    let mut label: Vec<usize> = (0..n).collect();
    loop {
        let mut best = (f64::INFINITY, 0, 0);
        for i in 0..n {
            if !active[i] {
                continue;
            }
            for j in i + 1..n {
                if active[j] && dist[i][j] < best.0 {
                    best = (dist[i][j], i, j);
                }
            }
        }
        let (link, a, b) = best;
        if link >= threshold || link.is_nan() {
            break;
        }
        active[b] = false;
        for k in 0..n {
            let m = dist[a][k].min(dist[b][k]);
            dist[a][k] = m;
            dist[k][a] = m;
        }
        for l in label.iter_mut() {
            if *l == b {
                *l = a;
            }
        }
    }
    canonical(&label)
}

/// Breadth-first components of the graph with an edge per sub-threshold pair.
fn components(d: &DistanceMatrix, threshold: f64) -> Vec<usize> {
    let n = d.len();
    let mut label = vec![usize::MAX; n];
    let mut next = 0;
    for s in 0..n {
        if label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if label[v] == usize::MAX && d.get(u, v) < threshold {
                    label[v] = next;
                    queue.push_back(v);
                }
            }
        }
        next += 1;
    }
    label
}

fn canonical(labels: &[usize]) -> Vec<usize> {
    let mut map = HashMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

fn record(i: usize, family: &str, given: &str) -> AuthorRecord {
    AuthorRecord {
        author: EntityId(i),
        iri: format!("r{i:04}"),
        family_name: family.into(),
        given_name: given.into(),
        documents: vec![EntityId(10_000 + i)],
        orcid: None,
    }
}

fn clustering_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut sizes = Vec::new();
    for inst in 0..50 {
        let n = if inst == 0 { 200 } else { rng.gen_range(1..=200) };
        let dim = rng.gen_range(2..8);
        let centers: Vec<Vec<f64>> = (0..rng.gen_range(1..8)).map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
        let noise = rng.gen_range(0.05..0.6);
        let members: Vec<AuthorFeature> = (0..n)
            .map(|i| {
                let c = centers.choose(&mut rng).unwrap();
                // occasional zero vector
                let vector = if rng.gen_bool(0.02) {
                    vec![0.0; dim]
                } else {
                    c.iter().map(|x| x + rng.gen_range(-noise..noise)).collect()
                };
                AuthorFeature { record: record(i, "Liu", "W"), vector }
            })
            .collect();
        let block = Block { key: "liu_w".into(), members };
        let threshold = rng.gen_range(0.0..1.2);
        let got = cluster_block(&block, threshold).unwrap();
        let vectors: Vec<&[f64]> = block.members.iter().map(|m| m.vector.as_slice()).collect();
        let d = DistanceMatrix::cosine(&vectors);
        let naive = naive_hac(&d, threshold);
        let cc = components(&d, threshold);
        if got.labels != naive || got.labels != cc {
            return Fail(format!("instance {inst} (n={n}, t={threshold:.3}) disagrees"));
        }
        sizes.push(n);
    }
    Pass(format!(
        "50 instances, n from {} to {}, equal to naive HAC and connected components",
        sizes.iter().min().unwrap(),
        sizes.iter().max().unwrap()
    ))
}

// ---------------------------------------------------------------------------
// pairwise counts oracle

fn counts_oracle() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for inst in 0..100 {
        let n = rng.gen_range(0..=100);
        let k_pred = rng.gen_range(1..=n.max(1));
        let k_true = rng.gen_range(1..=n.max(1));
        let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k_pred)).collect();
        let orcid: Vec<Option<String>> = (0..n)
            .map(|_| (!rng.gen_bool(0.05)).then(|| format!("o{}", rng.gen_range(0..k_true))))
            .collect();
        let members: Vec<String> = (0..n).map(|i| format!("a{i}")).collect();
        let truth: OrcidTable = members
            .iter()
            .zip(&orcid)
            .filter_map(|(m, o)| o.as_ref().map(|o| (m.clone(), o.clone())))
            .collect();
        let c = Clustering {
            block_key: "x".into(),
            members,
            labels: canonical(&labels),
            threshold: 0.5,
        };
        let got = pairwise_counts(&c, &truth);

        let mut want = PairCounts::default();
        for i in 0..n {
            for j in i + 1..n {
                let (Some(oi), Some(oj)) = (&orcid[i], &orcid[j]) else { continue };
                match (labels[i] == labels[j], oi == oj) {
                    (true, true) => want.tp += 1,
                    (true, false) => want.fp += 1,
                    (false, true) => want.fn_ += 1,
                    (false, false) => want.tn += 1,
                }
            }
        }
        if got != want {
            return Fail(format!("partition {inst} (n={n}): {got:?} != {want:?}"));
        }
    }
    Pass("100 random partitions with n <= 100 equal brute-force pair enumeration".into())
}

// ---------------------------------------------------------------------------
// Score-Pairs fixtures

struct Fixture {
    lines: Vec<String>,
    next: usize,
}

impl Fixture {
    fn iri(&mut self, kind: &str) -> String {
        self.next += 1;
        format!("{kind}{}", self.next)
    }

    fn obj(&mut self, s: &str, p: &str, o: &str) {
        self.lines.push(format!("{s}\t{p}\t{o}\tiri"));
    }

    fn text(&mut self, s: &str, p: &str, v: &str) {
        self.lines.push(format!("{s}\t{p}\t{v}\ttext"));
    }

    fn person(&mut self, family: &str, given: &str) -> String {
        let a = self.iri("a");
        self.text(&a, "http://xmlns.com/foaf/0.1/familyName", family);
        self.text(&a, "http://xmlns.com/foaf/0.1/givenName", given);
        a
    }

    /// A publication by a fresh "Liu, Wei" plus the given coauthor names.
    fn paper(&mut self, title: Option<&str>, coauthors: &[&str], venue: Option<&str>, cites: &[&str]) -> String {
        let p = self.iri("p");
        let me = self.person("Liu", "Wei");
        self.obj(&p, "http://purl.org/dc/terms/creator", &me);
        for c in coauthors {
            let a = self.person(c, "Ann");
            self.obj(&p, "http://purl.org/dc/terms/creator", &a);
        }
        if let Some(t) = title {
            self.text(&p, "http://purl.org/dc/terms/title", t);
        }
        if let Some(v) = venue {
            self.obj(&p, "http://purl.org/vocab/frbr/core#partOf", v);
        }
        for c in cites {
            self.obj(&p, "http://purl.org/spar/cito/cites", c);
        }
        p
    }
}

fn score_pairs_fixtures() -> Verdict {
    let mut f = Fixture { lines: Vec::new(), next: 0 };
    let refs: Vec<String> = (0..6).map(|i| format!("ref{i}")).collect();
    let r: Vec<&str> = refs.iter().map(String::as_str).collect();
    let mut cases: Vec<(&str, String, String, u32)> = Vec::new();
    let mut add = |f: &mut Fixture, name: &'static str, a: (Option<&str>, &[&str], Option<&str>, &[&str]), b: (Option<&str>, &[&str], Option<&str>, &[&str]), want: u32| {
        let pa = f.paper(a.0, a.1, a.2, a.3);
        let pb = f.paper(b.0, b.1, b.2, b.3);
        cases.push((name, pa, pb, want));
    };
    let none: &[&str] = &[];
    add(&mut f, "1 title word", (Some("Graph embeddings"), none, None, none), (Some("Graph theory"), none, None, none), 3);
    add(&mut f, "2 title words", (Some("Graph embeddings survey"), none, None, none), (Some("The graph embeddings benchmark"), none, None, none), 5);
    add(&mut f, "3+ title words", (Some("Deep graph embeddings survey"), none, None, none), (Some("A survey of deep graph embeddings"), none, None, none), 8);
    add(&mut f, "1 coauthor", (None, &["Kim"], None, none), (None, &["Kim", "Park"], None, none), 4);
    add(&mut f, "2 coauthors", (None, &["Kim", "Park"], None, none), (None, &["Kim", "Park"], None, none), 7);
    add(&mut f, "3+ coauthors", (None, &["Kim", "Park", "Wang", "Chen"], None, none), (None, &["Kim", "Park", "Wang", "Chen"], None, none), 10);
    add(&mut f, "same journal", (None, none, Some("j1"), none), (None, none, Some("j1"), none), 6);
    add(&mut f, "different journal", (None, none, Some("j1"), none), (None, none, Some("j2"), none), 0);
    add(&mut f, "1 shared citation", (None, none, None, &r[..1]), (None, none, None, &r[..1]), 2);
    add(&mut f, "2 shared citations", (None, none, None, &r[..2]), (None, none, None, &r[..3]), 3);
    add(&mut f, "3 shared citations", (None, none, None, &r[..3]), (None, none, None, &r[..3]), 6);
    add(&mut f, "4 shared citations", (None, none, None, &r[..4]), (None, none, None, &r[..4]), 8);
    add(&mut f, "5+ shared citations", (None, none, None, &r[..6]), (None, none, None, &r[..6]), 10);
    add(&mut f, "no overlap", (Some("Protein folding"), &["Kim"], Some("j1"), &r[..1]), (Some("Graph theory"), &["Park"], Some("j2"), &r[1..2]), 0);
    add(&mut f, "2 title words + journal", (Some("Graph embeddings survey"), none, Some("j3"), none), (Some("Graph embeddings benchmark"), none, Some("j3"), none), 11);

    // self-citation cases need the other paper's IRI
    let pa = f.paper(None, none, None, none);
    let pb = f.paper(None, none, None, &[pa.as_str()]);
    cases.push(("self-citation", pa, pb, 10));
    let pa = f.paper(None, &["Kim", "Park", "Wang"], None, none);
    let pb = f.paper(None, &["Kim", "Park", "Wang"], None, &[pa.as_str()]);
    cases.push(("3 coauthors + self-citation", pa, pb, 20));

    // chaining: a~b (2 title words + journal) and b~c (2 title words + 3
    // shared citations) score 11, a~c scores 0
    let a = f.paper(Some("Graph embeddings"), none, Some("jx"), none);
    let b = f.paper(Some("Graph embeddings for protein folding"), none, Some("jx"), &r[..3]);
    let c = f.paper(Some("Protein folding"), none, None, &r[..3]);

    let kg = parse_triples_str(&(f.lines.join("\n") + "\n"), TripleFormat::Tsv, Schema::Oc).unwrap();
    let index = PublicationIndex::new(&kg);
    let id = |s: &str| kg.entity_id(s).unwrap();
    let mut wrong = Vec::new();
    for (name, pa, pb, want) in &cases {
        let s1 = score_pair(&index, id(pa), id(pb), "liu_w").unwrap();
        let s2 = score_pair(&index, id(pb), id(pa), "liu_w").unwrap();
        if s1 != *want || s2 != s1 {
            wrong.push(format!("{name}: {s1}/{s2} != {want}"));
        }
    }
    if score_pair(&index, id(&cases[0].1), id(&cases[0].1), "liu_w").is_ok() {
        wrong.push("identical publications accepted".into());
    }

    // clustering: chaining and the inclusive threshold
    let ab = score_pair(&index, id(&a), id(&b), "liu_w").unwrap();
    let bc = score_pair(&index, id(&b), id(&c), "liu_w").unwrap();
    let ac = score_pair(&index, id(&a), id(&c), "liu_w").unwrap();
    let records = extract_author_records(&kg, None).records;
    let by_doc: HashMap<EntityId, &AuthorRecord> = records
        .iter()
        .filter(|r| r.family_name == "Liu")
        .map(|r| (r.documents[0], r))
        .collect();
    let block_of = |papers: &[&str]| {
        let recs: Vec<AuthorRecord> = papers.iter().map(|p| by_doc[&id(p)].clone()).collect();
        record_blocks(&recs).remove(0)
    };
    let chain = score_pairs_cluster(&block_of(&[&a, &b, &c]), &index, 10, false).unwrap();
    if chain.num_clusters() != 1 {
        wrong.push(format!("chain ab={ab} bc={bc} ac={ac} gave {} clusters", chain.num_clusters()));
    }
    let self_cite = &cases[cases.len() - 2];
    let at_threshold = score_pairs_cluster(&block_of(&[&self_cite.1, &self_cite.2]), &index, 10, false).unwrap();
    let strict = score_pairs_cluster(&block_of(&[&self_cite.1, &self_cite.2]), &index, 10, true).unwrap();
    if at_threshold.num_clusters() != 1 || strict.num_clusters() != 2 {
        wrong.push("score 10 must match inclusively and not strictly".into());
    }
    let below = score_pairs_cluster(&block_of(&[&cases[0].1, &cases[0].2]), &index, 10, false).unwrap();
    if below.num_clusters() != 2 {
        wrong.push("sub-threshold pair merged".into());
    }

    if wrong.is_empty() {
        Pass(format!(
            "{} tier fixtures exact and symmetric (incl. 11 and 20), chaining {ab}/{bc}/{ac} -> 1 cluster, inclusive threshold",
            cases.len()
        ))
    } else {
        Fail(wrong.join("; "))
    }
}

// ---------------------------------------------------------------------------
// synthetic end-to-end

/// Link two records when their papers share a coauthor entity or a venue.
/// The generator is valid when this brute-force partition is the truth.
fn structural_oracle(kg: &KnowledgeGraph, block: &Block) -> Vec<usize> {
    let creators: Vec<&Triple> = kg.triples_of(RelationKind::Creator).collect();
    let venue: HashMap<EntityId, EntityId> = kg.triples_of(RelationKind::PartOf).map(|t| (t.head, t.tail)).collect();
    let signature = |r: &AuthorRecord| -> (HashSet<EntityId>, HashSet<EntityId>) {
        let docs: HashSet<EntityId> = r.documents.iter().copied().collect();
        let coauthors = creators
            .iter()
            .filter(|t| docs.contains(&t.head) && t.tail != r.author)
            .map(|t| t.tail)
            .collect();
        let venues = docs.iter().filter_map(|d| venue.get(d).copied()).collect();
        (coauthors, venues)
    };
    let sigs: Vec<_> = block.members.iter().map(|m| signature(&m.record)).collect();
    let n = sigs.len();
    let d = DistanceMatrix::from_fn(n, |i, j| {
        let linked = !sigs[i].0.is_disjoint(&sigs[j].0) || !sigs[i].1.is_disjoint(&sigs[j].1);
        if linked {
            0.0
        } else {
            1.0
        }
    });
    components(&d, 0.5)
}

fn synthetic_recovery() -> Verdict {
    let data = generate(&SyntheticConfig::default());
    let recs = extract_author_records(&data.kg, Some(&data.truth));
    if recs.records.len() != 80 || recs.num_blocks() != 5 || recs.num_orcids() != 20 {
        return Fail(format!(
            "generator produced {} records, {} blocks, {} people",
            recs.records.len(),
            recs.num_blocks(),
            recs.num_orcids()
        ));
    }
    let plain = record_blocks(&recs.records);
    let oracle: Vec<Clustering> = plain
        .iter()
        .map(|b| Clustering::new(b, structural_oracle(&data.kg, b), 0.0))
        .collect();
    let oracle_f1 = evaluate(&oracle, &data.truth).unwrap().micro.f1;
    if oracle_f1 != 100.0 {
        return Fail(format!("structural oracle recovers the planted people only at F1={oracle_f1:.2}"));
    }

    let split = split_structural(&data.kg, DEFAULT_RATIOS, 1).unwrap();
    let config = TrainConfig {
        dim: 32,
        learning_rate: 0.01,
        negatives: 8,
        batch_size: 64,
        smoothing: 0.001,
        max_epochs: 200,
        seed: 2,
        ..TrainConfig::default()
    };
    let features = LiteralFeatures::empty(0);
    let outcome = train_model(&data.kg, &split, &features, Variant::Unimodal, &config).unwrap();
    let blocks = build_blocks(&recs.records, &outcome.model, &features, DocumentSource::Fused).unwrap();
    let grid = Grid { lo: 0.05, hi: 1.95, step: 0.05 }.points();
    let best = best_point(&threshold_sweep(&blocks, &grid).unwrap()).unwrap();
    // the sweep and a direct clustering at the chosen threshold must agree
    let direct = evaluate(&cluster_blocks(&blocks, best.threshold).unwrap(), &data.truth).unwrap();
    if direct.counts != best.counts {
        return Fail("sweep and direct clustering disagree".into());
    }
    check(
        best.metrics.f1 >= 80.0,
        format!(
            "structural oracle F1=100.00; unimodal h=32, {} epochs (best {}): micro-F1={:.2} at threshold {} (bound 80.00)",
            outcome.history.stopped_epoch, outcome.history.best_epoch, best.metrics.f1, best.threshold
        ),
    )
}

// ---------------------------------------------------------------------------
// dataset-scale criteria

fn env_path(key: &str) -> Option<PathBuf> {
    std::env::var_os(key).map(PathBuf::from).filter(|p| p.exists())
}

fn load(path: &PathBuf, schema: Schema) -> KnowledgeGraph {
    parse_triples(BufReader::new(File::open(path).unwrap()), TripleFormat::from_path(path), schema).unwrap()
}

fn ingestion_counts() -> Verdict {
    let (oc, am) = (env_path("LAND_OC_KG"), env_path("LAND_AMINER_KG"));
    if oc.is_none() && am.is_none() {
        return Skip("LAND_OC_KG / LAND_AMINER_KG not set; the graph dumps are not available offline".into());
    }
    let mut wrong = Vec::new();
    let mut done = Vec::new();
    let mut cmp = |name: &str, got: usize, want: usize| {
        if got != want {
            wrong.push(format!("{name} {got} != {want}"));
        }
    };
    if let Some(p) = oc {
        let s = load(&p, Schema::Oc).stats();
        cmp("oc object", s.object_triples, 620_321);
        cmp("oc text", s.text_triples, 104_621);
        cmp("oc numeric", s.numeric_triples, 56_975);
        cmp("oc entities", s.entities, 293_186);
        cmp("oc publications", s.publications, 57_266);
        cmp("oc venues", s.venues, 47_355);
        cmp("oc authors", s.authors, 188_565);
        let rel = |k| s.per_relation.iter().find(|(r, _)| *r == k).map_or(0, |(_, n)| *n);
        cmp("oc creator", rel(RelationKind::Creator), 188_565);
        cmp("oc knows", rel(RelationKind::Knows), 253_942);
        cmp("oc cites", rel(RelationKind::Cites), 128_738);
        cmp("oc partOf", rel(RelationKind::PartOf), 49_076);
        done.push("OC");
    }
    if let Some(p) = am {
        let s = load(&p, Schema::Aminer).stats();
        cmp("aminer object", s.object_triples, 428_473);
        cmp("aminer text", s.text_triples, 70_046);
        cmp("aminer numeric", s.numeric_triples, 35_021);
        cmp("aminer entities", s.entities, 179_377);
        cmp("aminer publications", s.publications, 35_023);
        cmp("aminer venues", s.venues, 5_889);
        cmp("aminer authors", s.authors, 110_837);
        cmp("aminer organizations", s.organizations, 27_628);
        let rel = |k| s.per_relation.iter().find(|(r, _)| *r == k).map_or(0, |(_, n)| *n);
        cmp("aminer creator", rel(RelationKind::Creator), 197_249);
        cmp("aminer affiliation", rel(RelationKind::Affiliation), 196_201);
        cmp("aminer partOf", rel(RelationKind::PartOf), 35_023);
        done.push("AMiner");
    }
    if wrong.is_empty() {
        Pass(format!("{} counts exact", done.join(" and ")))
    } else {
        Fail(wrong.join(", "))
    }
}

fn paper_scale() -> Verdict {
    let (Some(kg_path), Some(truth_path)) = (env_path("LAND_OC_KG"), env_path("LAND_OC_TRUTH")) else {
        return Skip("LAND_OC_KG / LAND_OC_TRUTH not set; the graph dump and ORCID table are not available offline".into());
    };
    if std::env::var("LAND_FULL_SCALE").as_deref() != Ok("1") {
        return Skip("set LAND_FULL_SCALE=1 to run the hours-long full-size training".into());
    }
    let kg = load(&kg_path, Schema::Oc);
    let truth = read_orcid_table(File::open(truth_path).unwrap()).unwrap();
    let split = split_structural(&kg, DEFAULT_RATIOS, 42).unwrap();
    let features = LiteralFeatures::empty(0);
    let model = train_model(&kg, &split, &features, Variant::Unimodal, &TrainConfig::oc()).unwrap().model;

    let labeled = extract_author_records(&kg, Some(&truth)).records;
    let blocks = build_blocks(&labeled, &model, &features, DocumentSource::Fused).unwrap();
    let report = evaluate(&cluster_blocks(&blocks, 0.6).unwrap(), &truth).unwrap();

    let all = extract_author_records(&kg, None).records;
    let blocks = build_blocks(&all, &model, &features, DocumentSource::Fused).unwrap();
    let deduped = dedupe_kg(&kg, &cluster_blocks(&blocks, 0.6).unwrap()).unwrap();
    let (before, after) = (kg.stats().authors, deduped.kg.stats().authors);
    let reduction = 1.0 - after as f64 / before as f64;
    check(
        within(report.micro.f1, 77.50, 3.0) && reduction >= 0.25,
        format!(
            "micro-F1={:.2} (target 77.50 +/- 3.0), authors {before} -> {after} ({:.1}% reduction, bound 25%)",
            report.micro.f1,
            100.0 * reduction
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 8] = [
        ("metrics-oracle", metrics_oracle),
        ("gradient-check", gradient_check),
        ("clustering-oracle", clustering_oracle),
        ("pairwise-counts-oracle", counts_oracle),
        ("score-pairs-fixtures", score_pairs_fixtures),
        ("synthetic-recovery", synthetic_recovery),
        ("ingestion-counts", ingestion_counts),
        ("paper-scale-reproduction", paper_scale),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let verdict = f();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match verdict {
            Pass(d) => ("PASS", d),
            Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Skip(d) => ("SKIP", d),
        };
        println!("{tag} {name} ({secs:.1}s): {detail}");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
