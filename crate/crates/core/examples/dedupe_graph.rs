//! Cluster every author of a planted-author graph and merge each cluster
//! into a single entity.
//!
//! ```text
//! cargo run --release --example dedupe_graph
//! ```

use land::disambig::{build_blocks, cluster_blocks, dedupe_kg, post_block_filter, DocumentSource};
use land::kg::{extract_author_records, split_structural, DEFAULT_RATIOS};
use land::literals::LiteralFeatures;
use land::model::Variant;
use land::synthetic::{generate, SyntheticConfig};
use land::train::{train_model, TrainConfig};

fn main() -> anyhow::Result<()> {
    let data = generate(&SyntheticConfig::default());
    let split = split_structural(&data.kg, DEFAULT_RATIOS, 1)?;
    let config = TrainConfig {
        dim: 32,
        learning_rate: 0.01,
        negatives: 8,
        batch_size: 64,
        max_epochs: 200,
        seed: 2,
        ..TrainConfig::default()
    };
    let features = LiteralFeatures::empty(0);
    let model = train_model(&data.kg, &split, &features, Variant::Unimodal, &config)?.model;

    // all authors, labeled or not
    let records = extract_author_records(&data.kg, None).records;
    let blocks = build_blocks(&records, &model, &features, DocumentSource::Fused)?;
    let clusterings: Vec<_> = cluster_blocks(&blocks, 0.35)?
        .iter()
        .zip(&blocks)
        .map(|(c, b)| post_block_filter(c, b))
        .collect();

    let result = dedupe_kg(&data.kg, &clusterings)?;
    let (before, after) = (data.kg.stats().authors, result.kg.stats().authors);
    println!("authors {before} -> {after} ({} merged)", result.merged());
    for (old, keep) in result.merge_map.iter().take(5) {
        println!("{old} -> {keep}");
    }
    Ok(())
}
