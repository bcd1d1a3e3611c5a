//! Write a planted-author graph, its ORCID truth table and fallback title
//! vectors to a directory, ready for the `land` command line.
//!
//! ```text
//! cargo run --example synthetic_dataset -- /tmp/land-demo
//! land ingest --triples /tmp/land-demo/triples.tsv --out /tmp/land-demo/out
//! ```

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::PathBuf;

use land::kg::write_triples;
use land::literals::{fallback_text_features, write_text_vectors};
use land::synthetic::{generate, SyntheticConfig};

fn main() -> anyhow::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "land-demo".into()));
    fs::create_dir_all(&dir)?;
    let data = generate(&SyntheticConfig::default());

    write_triples(&data.kg, BufWriter::new(File::create(dir.join("triples.tsv"))?))?;

    let mut truth = csv::Writer::from_path(dir.join("truth.csv"))?;
    truth.write_record(["author_iri", "orcid"])?;
    let mut rows: Vec<_> = data.truth.iter().collect();
    rows.sort();
    for (iri, orcid) in rows {
        truth.write_record([iri, orcid])?;
    }
    truth.flush()?;

    let vectors = fallback_text_features(&data.kg, 32, 0);
    write_text_vectors(&vectors, &data.kg, BufWriter::new(File::create(dir.join("vectors.txt"))?))?;

    println!("wrote {} triples, {} labeled authors to {}", data.kg.stats().object_triples, data.truth.len(), dir.display());
    Ok(())
}
