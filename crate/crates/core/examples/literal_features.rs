//! Title vectors and years as entity features: the fallback title embedder,
//! the vector file format, and the two fusion functions applied to one
//! entity.
//!
//! ```text
//! cargo run --example literal_features
//! ```

use land::kg::{parse_triples_str, Schema, TripleFormat};
use land::linalg::dot;
use land::literals::{build_numeric_features, fallback_text_features, load_text_vectors, write_text_vectors, LiteralFeatures};
use land::model::{ModelParams, Variant};
use rand::SeedableRng;

const TSV: &str = "\
p1\thttp://purl.org/dc/terms/title\tGraph embeddings for author disambiguation\ttext
p2\thttp://purl.org/dc/terms/title\tAuthor disambiguation with graph embeddings\ttext
p3\thttp://purl.org/dc/terms/title\tProtein folding kinetics\ttext
p1\thttp://purl.org/dc/terms/issued\t2012\tyear
p2\thttp://purl.org/dc/terms/issued\t2020\tyear
p1\thttp://purl.org/dc/terms/creator\ta1\tiri
";

fn main() -> anyhow::Result<()> {
    let kg = parse_triples_str(TSV, TripleFormat::Tsv, Schema::Oc)?;
    let text = fallback_text_features(&kg, 64, 0);
    let id = |iri: &str| kg.entity_id(iri).expect("entity");
    let (v1, v2, v3) = (text.get(id("p1")), text.get(id("p2")), text.get(id("p3")));
    println!("cos(p1, p2) = {:.3}", dot(v1, v2));
    println!("cos(p1, p3) = {:.3}", dot(v1, v3));

    // the file format written by external encoders
    let mut file = Vec::new();
    write_text_vectors(&text, &kg, &mut file)?;
    let loaded = load_text_vectors(file.as_slice(), &kg, 64)?;
    println!("vector file: {} bytes, {} rows read back", file.len(), loaded.table.len());

    let years = build_numeric_features(&kg);
    println!("years {}..{}: p1 -> {}, p2 -> {}", years.min_year, years.max_year, years.get(id("p1")), years.get(id("p2")));

    let features = LiteralFeatures::new(loaded.table, years);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for variant in Variant::ALL {
        let model = ModelParams::init(variant, kg.num_entities(), kg.num_relations(), 8, 64, &mut rng);
        let rep = model.entity_representation(id("p1"), &features);
        println!("{variant:>9}: {:?}", rep.iter().map(|x| format!("{x:+.3}")).collect::<Vec<_>>());
    }
    Ok(())
}
