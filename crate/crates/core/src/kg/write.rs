use std::io::Write;

use super::{Interner, KnowledgeGraph};
use crate::Result;

/// Serialize every triple back to the 4-column TSV format.
pub fn write_triples<W: Write>(kg: &KnowledgeGraph, mut out: W) -> Result<()> {
    for t in kg.object_triples() {
        writeln!(
            out,
            "{}\t{}\t{}\tiri",
            kg.entity_iri(t.head),
            kg.relations().iri(t.relation.0),
            kg.entity_iri(t.tail)
        )?;
    }
    for t in kg.text_triples() {
        writeln!(out, "{}\t{}\t{}\ttext", kg.entity_iri(t.entity), t.attribute, t.value)?;
    }
    for t in kg.numeric_triples() {
        writeln!(out, "{}\t{}\t{}\tyear", kg.entity_iri(t.entity), t.attribute, t.year)?;
    }
    out.flush()?;
    Ok(())
}

/// `iri,index` CSV dump of an entity or relation table.
pub fn write_index_dump<W: Write>(table: &Interner, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["iri", "index"])?;
    for (i, iri) in table.iter() {
        w.write_record([iri, &i.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
