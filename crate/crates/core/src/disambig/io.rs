use std::collections::BTreeMap;
use std::io::{Read, Write};

use crate::{Error, Result};

use super::Clustering;

/// CSV with header `author_iri,block_key,cluster_id`. Cluster ids are global
/// across blocks so the file reads as a flat author-to-person map.
pub fn write_clusterings<W: Write>(writer: W, clusterings: &[Clustering]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["author_iri", "block_key", "cluster_id"])?;
    let mut offset = 0;
    for c in clusterings {
        for (iri, &label) in c.members.iter().zip(&c.labels) {
            w.write_record([iri.as_str(), c.block_key.as_str(), &(offset + label).to_string()])?;
        }
        offset += c.num_clusters();
    }
    w.flush()?;
    Ok(())
}

/// Inverse of [`write_clusterings`]. Blocks come back sorted by key with
/// members in file order; the threshold is not stored and reads as NaN.
pub fn read_clusterings<R: Read>(reader: R) -> Result<Vec<Clustering>> {
    let mut rdr = csv::Reader::from_reader(reader);
    let mut blocks: BTreeMap<String, (Vec<String>, Vec<usize>)> = BTreeMap::new();
    for (i, row) in rdr.records().enumerate() {
        let row = row?;
        let line = i + 2;
        if row.len() != 3 {
            return Err(Error::Parse {
                line,
                message: format!("expected 3 columns, found {}", row.len()),
            });
        }
        let id: usize = row[2].parse().map_err(|_| Error::Parse {
            line,
            message: format!("bad cluster id {:?}", &row[2]),
        })?;
        let entry = blocks.entry(row[1].to_owned()).or_default();
        entry.0.push(row[0].to_owned());
        entry.1.push(id);
    }
    Ok(blocks
        .into_iter()
        .map(|(block_key, (members, labels))| Clustering {
            block_key,
            members,
            labels: super::canonical_labels(&labels),
            threshold: f64::NAN,
        })
        .collect())
}

/// CSV with header `old_iri,canonical_iri`.
pub fn write_merge_map<W: Write>(writer: W, merge_map: &[(String, String)]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["old_iri", "canonical_iri"])?;
    for (old, keep) in merge_map {
        w.write_record([old, keep])?;
    }
    w.flush()?;
    Ok(())
}
