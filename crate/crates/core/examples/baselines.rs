//! The two comparison systems on a planted-author graph: rule-based pair
//! scoring and title-vector clustering.
//!
//! ```text
//! cargo run --example baselines
//! ```

use land::baselines::{
    record_blocks, score_pair, score_pairs_cluster, title_blocks, title_similarity_cluster, PublicationIndex, DEFAULT_PAIR_THRESHOLD,
    DEFAULT_TITLE_THRESHOLD,
};
use land::eval::evaluate;
use land::kg::extract_author_records;
use land::literals::fallback_text_features;
use land::synthetic::{generate, SyntheticConfig};

fn main() -> anyhow::Result<()> {
    let data = generate(&SyntheticConfig::default());
    let records = extract_author_records(&data.kg, Some(&data.truth)).records;
    let index = PublicationIndex::new(&data.kg);

    let first = &data.authors[0];
    let (p0, p1) = (data.kg.entity_id(&first.papers[0]).unwrap(), data.kg.entity_id(&first.papers[1]).unwrap());
    println!("score of two papers by {}: {}", first.orcid, score_pair(&index, p0, p1, &records[0].block_key())?);

    let blocks = record_blocks(&records);
    let pairs = blocks
        .iter()
        .map(|b| score_pairs_cluster(b, &index, DEFAULT_PAIR_THRESHOLD, false))
        .collect::<land::Result<Vec<_>>>()?;
    let r = evaluate(&pairs, &data.truth)?;
    println!("score-pairs       P={:.2} R={:.2} F1={:.2}", r.micro.precision, r.micro.recall, r.micro.f1);

    let titles = fallback_text_features(&data.kg, 64, 0);
    let blocks = title_blocks(&records, &titles);
    let sims = blocks
        .iter()
        .map(|b| title_similarity_cluster(b, DEFAULT_TITLE_THRESHOLD))
        .collect::<land::Result<Vec<_>>>()?;
    let r = evaluate(&sims, &data.truth)?;
    println!("title-similarity  P={:.2} R={:.2} F1={:.2}", r.micro.precision, r.micro.recall, r.micro.f1);
    Ok(())
}
