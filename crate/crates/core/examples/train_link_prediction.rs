//! Train each model variant on a planted-author graph and compare filtered
//! link prediction on the held-out test triples.
//!
//! ```text
//! cargo run --release --example train_link_prediction
//! ```

use std::collections::HashSet;

use land::kg::{split_structural, DatasetSplit, Triple, DEFAULT_RATIOS};
use land::literals::{build_numeric_features, fallback_text_features, LiteralFeatures};
use land::model::Variant;
use land::synthetic::{generate, SyntheticConfig};
use land::train::{eval_link_prediction, train_model, TrainConfig};

fn main() -> anyhow::Result<()> {
    env_logger::init();
    let data = generate(&SyntheticConfig::default());
    let kg = &data.kg;
    let split = split_structural(kg, DEFAULT_RATIOS, 42)?;
    let features = LiteralFeatures::new(fallback_text_features(kg, 16, 0), build_numeric_features(kg));
    let known: HashSet<Triple> = kg.object_triples().iter().copied().collect();
    let test: Vec<Triple> = DatasetSplit::triples(kg, &split.test).collect();

    let config = TrainConfig {
        dim: 32,
        learning_rate: 0.01,
        negatives: 8,
        batch_size: 64,
        max_epochs: 100,
        ..TrainConfig::default()
    };
    println!("variant\tepochs\tmrr\thits@1\thits@10");
    for variant in Variant::ALL {
        let outcome = train_model(kg, &split, &features, variant, &config)?;
        let m = eval_link_prediction(&outcome.model, &features, &test, &known);
        println!("{variant}\t{}\t{:.3}\t{:.3}\t{:.3}", outcome.history.best_epoch, m.mrr, m.hits_at_1, m.hits_at_10);
    }
    Ok(())
}
