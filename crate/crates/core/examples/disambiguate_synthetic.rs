//! Train DistMult on a planted-author graph, sweep the clustering threshold
//! and report pairwise metrics at the best one.
//!
//! ```text
//! cargo run --release --example disambiguate_synthetic
//! ```

use land::disambig::{best_point, build_blocks, cluster_blocks, threshold_sweep, DocumentSource};
use land::eval::evaluate;
use land::kg::{extract_author_records, split_structural, DEFAULT_RATIOS};
use land::literals::LiteralFeatures;
use land::model::Variant;
use land::pipeline::Grid;
use land::synthetic::{generate, SyntheticConfig};
use land::train::{train_model, TrainConfig};

fn main() -> anyhow::Result<()> {
    env_logger::init();
    let data = generate(&SyntheticConfig::default());
    println!("{}", data.kg.stats());

    let split = split_structural(&data.kg, DEFAULT_RATIOS, 1)?;
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
    let outcome = train_model(&data.kg, &split, &features, Variant::Unimodal, &config)?;
    println!(
        "trained {} epochs, best at {}",
        outcome.history.stopped_epoch, outcome.history.best_epoch
    );

    let records = extract_author_records(&data.kg, Some(&data.truth)).records;
    let blocks = build_blocks(&records, &outcome.model, &features, DocumentSource::Fused)?;
    let grid = Grid { lo: 0.05, hi: 1.95, step: 0.05 }.points();
    let sweep = threshold_sweep(&blocks, &grid)?;
    let best = best_point(&sweep).expect("non-empty grid");
    println!("best threshold {:.2}: P={:.2} R={:.2} F1={:.2}", best.threshold, best.metrics.precision, best.metrics.recall, best.metrics.f1);

    let report = evaluate(&cluster_blocks(&blocks, best.threshold)?, &data.truth)?;
    print!("{}", report.render());
    Ok(())
}
