use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufRead, BufReader, Cursor, Read};
use std::path::Path;

use log::info;

use super::{write_atomic, Baseline, PipelineConfig, SPLIT_SEED_OFFSET};
use crate::baselines::{record_blocks, score_pairs_cluster, title_blocks, title_similarity_cluster, PublicationIndex};
use crate::disambig::{
    best_point, build_blocks, cluster_blocks, dedupe_kg, post_block_filter, read_clusterings, threshold_sweep, write_clusterings,
    write_merge_map, Block, Clustering,
};
use crate::eval::{evaluate as evaluate_clusterings, pr_curve_points};
use crate::kg::{
    extract_author_records, parse_triples, read_orcid_table, split_structural, write_index_dump, write_triples, AuthorRecord,
    DatasetSplit, KnowledgeGraph, OrcidTable, Triple, TripleFormat, DEFAULT_RATIOS,
};
use crate::literals::{build_numeric_features, fallback_text_features, load_text_vectors, LiteralFeatures, TextFeatureTable};
use crate::model::{read_checkpoint, write_checkpoint, ModelParams, Variant};
use crate::train::{eval_link_prediction, train_model};
use crate::{Error, Result};

const KG: &str = "kg.tsv";
const SPLIT: &str = "split.tsv";
const MODEL: &str = "model.ckpt";
const CLUSTERS: &str = "clusters.csv";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Ingest,
    Train,
    Disambiguate,
    Baseline,
    Evaluate,
    Sweep,
    Dedupe,
}

/// Run one command; the returned text is a human-readable summary.
pub fn run(command: Command, cfg: &PipelineConfig) -> Result<String> {
    match command {
        Command::Ingest => ingest(cfg),
        Command::Train => train(cfg),
        Command::Disambiguate => disambiguate(cfg),
        Command::Baseline => baseline(cfg),
        Command::Evaluate => evaluate(cfg),
        Command::Sweep => sweep(cfg),
        Command::Dedupe => dedupe(cfg),
    }
}

fn load_kg(cfg: &PipelineConfig) -> Result<KnowledgeGraph> {
    let path = cfg.require(KG, "ingest")?;
    parse_triples(BufReader::new(File::open(path)?), TripleFormat::Tsv, cfg.schema)
}

fn load_truth(cfg: &PipelineConfig) -> Result<Option<OrcidTable>> {
    match &cfg.truth {
        None => Ok(None),
        Some(_) => Ok(Some(read_orcid_table(File::open(cfg.input(&cfg.truth, "truth")?)?)?)),
    }
}

fn load_split(cfg: &PipelineConfig) -> Result<DatasetSplit> {
    let path = cfg.require(SPLIT, "ingest")?;
    let mut split = DatasetSplit {
        train: Vec::new(),
        valid: Vec::new(),
        test: Vec::new(),
        seed: cfg.seed + SPLIT_SEED_OFFSET,
    };
    for (i, line) in BufReader::new(File::open(path)?).lines().enumerate() {
        let line = line?;
        let bad = || Error::Parse {
            line: i + 1,
            message: format!("expected `part<TAB>index`, found {line:?}"),
        };
        let (part, idx) = line.split_once('\t').ok_or_else(bad)?;
        let idx: usize = idx.parse().map_err(|_| bad())?;
        match part {
            "train" => split.train.push(idx),
            "valid" => split.valid.push(idx),
            "test" => split.test.push(idx),
            _ => return Err(bad()),
        }
    }
    Ok(split)
}

/// Title vectors from `--vectors` (dimension from the file header), else
/// the hashed fallback embedder.
fn load_text_features(cfg: &PipelineConfig, kg: &KnowledgeGraph) -> Result<TextFeatureTable> {
    let Some(_) = &cfg.vectors else {
        info!("no vector file, using {}-d fallback title embeddings", cfg.text_dim);
        return Ok(fallback_text_features(kg, cfg.text_dim, cfg.seed));
    };
    let path = cfg.input(&cfg.vectors, "vectors")?;
    let mut reader = BufReader::new(File::open(path)?);
    let mut header = String::new();
    reader.read_line(&mut header)?;
    let dim = header
        .trim()
        .strip_prefix("dim ")
        .and_then(|d| d.trim().parse().ok())
        .ok_or_else(|| Error::Parse {
            line: 1,
            message: format!("expected `dim <d>` header, found {:?}", header.trim()),
        })?;
    let loaded = load_text_vectors(BufReader::new(Cursor::new(header).chain(reader)), kg, dim)?;
    if !loaded.unknown.is_empty() {
        log::warn!("{} vector rows name unknown entities", loaded.unknown.len());
    }
    Ok(loaded.table)
}

fn literal_features(cfg: &PipelineConfig, kg: &KnowledgeGraph, variant: Variant) -> Result<LiteralFeatures> {
    if variant == Variant::Unimodal {
        return Ok(LiteralFeatures::empty(0));
    }
    Ok(LiteralFeatures::new(load_text_features(cfg, kg)?, build_numeric_features(kg)))
}

fn save_text(path: &Path, text: &str) -> Result<()> {
    write_atomic(path, |w| Ok(w.write_all(text.as_bytes())?))
}

/// Parse the source triples, normalize them and cut the structural split.
pub fn ingest(cfg: &PipelineConfig) -> Result<String> {
    let source = cfg.input(&cfg.triples, "triples")?;
    let parsed = parse_triples(BufReader::new(File::open(&source)?), TripleFormat::from_path(&source), cfg.schema)?;
    let kg_path = cfg.artifact(KG);
    write_atomic(&kg_path, |w| write_triples(&parsed, w))?;
    // reload so entity ids match what later commands will see
    let kg = load_kg(cfg)?;
    write_atomic(&cfg.artifact("entities.csv"), |w| write_index_dump(kg.entities(), w))?;
    write_atomic(&cfg.artifact("relations.csv"), |w| write_index_dump(kg.relations(), w))?;
    let split = split_structural(&kg, DEFAULT_RATIOS, cfg.seed + SPLIT_SEED_OFFSET)?;
    write_atomic(&cfg.artifact(SPLIT), |w| {
        for (name, part) in [("train", &split.train), ("valid", &split.valid), ("test", &split.test)] {
            for i in part {
                writeln!(w, "{name}\t{i}")?;
            }
        }
        Ok(())
    })?;
    let mut summary = kg.stats().to_string();
    let _ = writeln!(summary, "split\t{}/{}/{}", split.train.len(), split.valid.len(), split.test.len());
    save_text(&cfg.artifact("stats.txt"), &summary)?;
    Ok(summary)
}

/// Train the configured variant and report filtered test link prediction.
pub fn train(cfg: &PipelineConfig) -> Result<String> {
    let kg = load_kg(cfg)?;
    let split = load_split(cfg)?;
    let features = literal_features(cfg, &kg, cfg.variant)?;
    let config = cfg.train_config();
    info!("training {} with {config:?}", cfg.variant);
    let outcome = train_model(&kg, &split, &features, cfg.variant, &config)?;

    let known: HashSet<Triple> = kg.object_triples().iter().copied().collect();
    let test: Vec<Triple> = DatasetSplit::triples(&kg, &split.test).collect();
    let m = eval_link_prediction(&outcome.model, &features, &test, &known);

    write_atomic(&cfg.artifact(MODEL), |w| write_checkpoint(w, &outcome.model, "entities.csv"))?;
    save_text(&cfg.artifact("train_log.tsv"), &outcome.history.log())?;
    let summary = format!(
        "variant\t{}\nepochs\t{}\nbest_epoch\t{}\ntest_mrr\t{:.4}\ntest_hits@1\t{:.4}\ntest_hits@3\t{:.4}\ntest_hits@10\t{:.4}\n",
        cfg.variant, outcome.history.stopped_epoch, outcome.history.best_epoch, m.mrr, m.hits_at_1, m.hits_at_3, m.hits_at_10
    );
    save_text(&cfg.artifact("link_prediction.txt"), &summary)?;
    Ok(summary)
}

fn load_model(cfg: &PipelineConfig, kg: &KnowledgeGraph) -> Result<ModelParams> {
    let ckpt = read_checkpoint(BufReader::new(File::open(cfg.require(MODEL, "train")?)?))?;
    let model = ckpt.model;
    if model.num_entities() != kg.num_entities() || model.num_relations() != kg.num_relations() {
        return Err(Error::Checkpoint(format!(
            "checkpoint has {} entities and {} relations, graph has {} and {}",
            model.num_entities(),
            model.num_relations(),
            kg.num_entities(),
            kg.num_relations()
        )));
    }
    Ok(model)
}

/// Labeled records when a truth table is configured, otherwise every author.
fn records(kg: &KnowledgeGraph, truth: Option<&OrcidTable>) -> Vec<AuthorRecord> {
    let set = extract_author_records(kg, truth);
    if !set.missing_given.is_empty() {
        info!("{} labeled authors without a given name left out", set.missing_given.len());
    }
    set.records
}

fn land_blocks(cfg: &PipelineConfig, kg: &KnowledgeGraph, truth: Option<&OrcidTable>) -> Result<Vec<Block>> {
    let model = load_model(cfg, kg)?;
    let features = literal_features(cfg, kg, model.variant())?;
    if model.variant() != Variant::Unimodal && features.text_dim() != model.text_dim() {
        return Err(Error::Config(format!(
            "checkpoint expects {}-d title vectors, configured vectors have {}",
            model.text_dim(),
            features.text_dim()
        )));
    }
    build_blocks(&records(kg, truth), &model, &features, cfg.document_source)
}

fn apply_post_filter(cfg: &PipelineConfig, clusterings: Vec<Clustering>, blocks: &[Block]) -> Vec<Clustering> {
    if !cfg.post_filter {
        return clusterings;
    }
    clusterings.iter().zip(blocks).map(|(c, b)| post_block_filter(c, b)).collect()
}

fn clusters_name(baseline: Option<Baseline>) -> String {
    match baseline {
        None => CLUSTERS.to_owned(),
        Some(b) => format!("clusters_{b}.csv"),
    }
}

fn report_and_save(cfg: &PipelineConfig, clusterings: &[Clustering], truth: &OrcidTable, tag: &str) -> Result<String> {
    let report = evaluate_clusterings(clusterings, truth)?;
    let text = report.render();
    save_text(&cfg.artifact(&format!("report{tag}.txt")), &text)?;
    save_text(&cfg.artifact(&format!("confusion{tag}.csv")), &report.confusion_csv())?;
    Ok(text)
}

fn write_clusters(cfg: &PipelineConfig, clusterings: &[Clustering], baseline: Option<Baseline>) -> Result<()> {
    write_atomic(&cfg.artifact(&clusters_name(baseline)), |w| write_clusterings(w, clusterings))
}

fn cluster_summary(clusterings: &[Clustering]) -> String {
    let records: usize = clusterings.iter().map(|c| c.members.len()).sum();
    let clusters: usize = clusterings.iter().map(Clustering::num_clusters).sum();
    format!("blocks\t{}\nrecords\t{records}\nclusters\t{clusters}\n", clusterings.len())
}

/// Features, blocking and clustering; a report as well when truth is given.
pub fn disambiguate(cfg: &PipelineConfig) -> Result<String> {
    let kg = load_kg(cfg)?;
    let truth = load_truth(cfg)?;
    let blocks = land_blocks(cfg, &kg, truth.as_ref())?;
    let clusterings = apply_post_filter(cfg, cluster_blocks(&blocks, cfg.cluster_threshold())?, &blocks);
    write_clusters(cfg, &clusterings, None)?;
    let mut summary = cluster_summary(&clusterings);
    if let Some(t) = &truth {
        summary.push('\n');
        summary.push_str(&report_and_save(cfg, &clusterings, t, "")?);
    }
    Ok(summary)
}

/// Run the configured baseline over the same blocks.
pub fn baseline(cfg: &PipelineConfig) -> Result<String> {
    let which = cfg
        .baseline
        .ok_or_else(|| Error::Config("this command needs --baseline score-pairs|title-similarity".into()))?;
    let kg = load_kg(cfg)?;
    let truth = load_truth(cfg)?;
    let recs = records(&kg, truth.as_ref());
    let (blocks, clusterings) = match which {
        Baseline::ScorePairs => {
            let threshold = match cfg.threshold {
                None => crate::baselines::DEFAULT_PAIR_THRESHOLD,
                Some(t) if t >= 0.0 && t.fract() == 0.0 => t as u32,
                Some(t) => return Err(Error::Config(format!("score-pairs threshold must be a whole number, found {t}"))),
            };
            let index = PublicationIndex::new(&kg);
            let blocks = record_blocks(&recs);
            let cs = blocks
                .iter()
                .map(|b| score_pairs_cluster(b, &index, threshold, cfg.strict_pairs))
                .collect::<Result<Vec<_>>>()?;
            (blocks, cs)
        }
        Baseline::TitleSimilarity => {
            let threshold = cfg.threshold.unwrap_or(crate::baselines::DEFAULT_TITLE_THRESHOLD);
            let blocks = title_blocks(&recs, &load_text_features(cfg, &kg)?);
            let cs = blocks
                .iter()
                .map(|b| title_similarity_cluster(b, threshold))
                .collect::<Result<Vec<_>>>()?;
            (blocks, cs)
        }
    };
    let clusterings = apply_post_filter(cfg, clusterings, &blocks);
    write_clusters(cfg, &clusterings, Some(which))?;
    let mut summary = format!("baseline\t{which}\n{}", cluster_summary(&clusterings));
    if let Some(t) = &truth {
        summary.push('\n');
        summary.push_str(&report_and_save(cfg, &clusterings, t, &format!("_{which}"))?);
    }
    Ok(summary)
}

/// Score a stored clustering (of `--baseline` if given) against the truth.
pub fn evaluate(cfg: &PipelineConfig) -> Result<String> {
    let truth = load_truth(cfg)?.ok_or_else(|| Error::Config("this command needs --truth".into()))?;
    let producer = if cfg.baseline.is_some() { "baseline" } else { "disambiguate" };
    let path = cfg.require(&clusters_name(cfg.baseline), producer)?;
    let clusterings = read_clusterings(File::open(path)?)?;
    let tag = cfg.baseline.map(|b| format!("_{b}")).unwrap_or_default();
    report_and_save(cfg, &clusterings, &truth, &tag)
}

/// Precision/recall over the threshold grid.
pub fn sweep(cfg: &PipelineConfig) -> Result<String> {
    let kg = load_kg(cfg)?;
    let truth = load_truth(cfg)?.ok_or_else(|| Error::Config("this command needs --truth".into()))?;
    let blocks = land_blocks(cfg, &kg, Some(&truth))?;
    let points = threshold_sweep(&blocks, &cfg.grid.points())?;
    let csv = pr_curve_points(&points)?;
    save_text(&cfg.artifact("pr_curve.csv"), &csv)?;
    let best = best_point(&points).ok_or_else(|| Error::Config("empty grid".into()))?;
    Ok(format!(
        "points\t{}\nbest_threshold\t{}\nP={:.2}\tR={:.2}\tF1={:.2}\n",
        points.len(),
        best.threshold,
        best.metrics.precision,
        best.metrics.recall,
        best.metrics.f1
    ))
}

/// Merge each predicted cluster into one author entity.
pub fn dedupe(cfg: &PipelineConfig) -> Result<String> {
    let kg = load_kg(cfg)?;
    let clusterings = read_clusterings(File::open(cfg.require(CLUSTERS, "disambiguate")?)?)?;
    let result = dedupe_kg(&kg, &clusterings)?;
    write_atomic(&cfg.artifact("kg_dedup.tsv"), |w| write_triples(&result.kg, w))?;
    write_atomic(&cfg.artifact("merge_map.csv"), |w| write_merge_map(w, &result.merge_map))?;
    let (before, after) = (kg.stats().authors, result.kg.stats().authors);
    let reduction = if before == 0 { 0.0 } else { 100.0 * (before - after) as f64 / before as f64 };
    let summary = format!(
        "entities\t{} -> {}\nauthors\t{before} -> {after}\nreduction\t{reduction:.2}%\nmerged\t{}\n",
        kg.num_entities(),
        result.kg.num_entities(),
        result.merged()
    );
    save_text(&cfg.artifact("dedupe.txt"), &summary)?;
    Ok(summary)
}
