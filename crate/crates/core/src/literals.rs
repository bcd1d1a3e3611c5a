//! Per-entity literal features: title vectors and normalized years.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use log::warn;

use crate::kg::{EntityId, KnowledgeGraph, TextAttr};
use crate::linalg::norm;
use crate::{Error, Result};

/// Dense text vectors keyed by entity. Lookup is total: entities without a
/// vector resolve to the zero vector.
#[derive(Debug, Clone)]
pub struct TextFeatureTable {
    dim: usize,
    vectors: HashMap<EntityId, Vec<f64>>,
    zero: Vec<f64>,
}

impl TextFeatureTable {
    pub fn new(dim: usize) -> Self {
        TextFeatureTable {
            dim,
            vectors: HashMap::new(),
            zero: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn insert(&mut self, entity: EntityId, vector: Vec<f64>) -> Result<()> {
        if vector.len() != self.dim {
            return Err(Error::Dimension {
                entity: entity.to_string(),
                expected: self.dim,
                found: vector.len(),
            });
        }
        self.vectors.insert(entity, vector);
        Ok(())
    }

    pub fn get(&self, entity: EntityId) -> &[f64] {
        self.vectors.get(&entity).map_or(&self.zero, Vec::as_slice)
    }

    pub fn contains(&self, entity: EntityId) -> bool {
        self.vectors.contains_key(&entity)
    }
}

#[derive(Debug, Clone)]
pub struct LoadedVectors {
    pub table: TextFeatureTable,
    /// IRIs of rows naming no entity of the graph.
    pub unknown: Vec<String>,
}

/// Read a vector file: a `dim <d>` header followed by
/// `entity_iri<TAB>v1 v2 ... vd` rows.
pub fn load_text_vectors<R: BufRead>(reader: R, kg: &KnowledgeGraph, expected_dim: usize) -> Result<LoadedVectors> {
    let mut lines = reader.lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    let declared = header
        .strip_prefix("dim ")
        .and_then(|d| d.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::Parse {
            line: 1,
            message: format!("expected `dim <d>` header, found {header:?}"),
        })?;
    if declared != expected_dim {
        return Err(Error::Dimension {
            entity: "<header>".into(),
            expected: expected_dim,
            found: declared,
        });
    }

    let mut table = TextFeatureTable::new(expected_dim);
    let mut unknown = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let (iri, values) = line.split_once('\t').ok_or_else(|| Error::Parse {
            line: i + 2,
            message: "expected `iri<TAB>values`".into(),
        })?;
        let vector = values
            .split_ascii_whitespace()
            .map(str::parse::<f64>)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse {
                line: i + 2,
                message: format!("bad float: {e}"),
            })?;
        if vector.len() != expected_dim {
            return Err(Error::Dimension {
                entity: iri.to_owned(),
                expected: expected_dim,
                found: vector.len(),
            });
        }
        match kg.entity_id(iri) {
            Some(id) => {
                table.vectors.insert(id, vector);
            }
            None => {
                warn!("vector row for unknown entity {iri} skipped");
                unknown.push(iri.to_owned());
            }
        }
    }
    Ok(LoadedVectors { table, unknown })
}

/// Write a table in the format read by [`load_text_vectors`], rows sorted
/// by IRI. Floats use the shortest representation that reads back exactly.
pub fn write_text_vectors<W: Write>(table: &TextFeatureTable, kg: &KnowledgeGraph, mut out: W) -> Result<()> {
    writeln!(out, "dim {}", table.dim)?;
    let mut rows: Vec<(&str, &Vec<f64>)> = table.vectors.iter().map(|(e, v)| (kg.entity_iri(*e), v)).collect();
    rows.sort_by(|a, b| a.0.cmp(b.0));
    for (iri, v) in rows {
        let values: Vec<String> = v.iter().map(f64::to_string).collect();
        writeln!(out, "{iri}\t{}", values.join(" "))?;
    }
    out.flush()?;
    Ok(())
}

fn fnv1a(bytes: &[u8], seed: u64) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64 ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// Deterministic title embedding for running without an external encoder:
/// lower-cased character trigrams hashed into `dim` buckets, L2-normalized.
pub fn fallback_title_embed(title: &str, dim: usize, seed: u64) -> Vec<f64> {
    assert!(dim >= 8, "fallback embedding needs dim >= 8");
    let mut v = vec![0.0; dim];
    if title.is_empty() {
        return v;
    }
    let chars: Vec<char> = format!("  {} ", title.to_lowercase()).chars().collect();
    let mut buf = [0u8; 12];
    for w in chars.windows(3) {
        let mut len = 0;
        for c in w {
            len += c.encode_utf8(&mut buf[len..]).len();
        }
        v[(fnv1a(&buf[..len], seed) % dim as u64) as usize] += 1.0;
    }
    let n = norm(&v);
    v.iter_mut().for_each(|x| *x /= n);
    v
}

/// Fallback vectors for every entity carrying a title literal.
pub fn fallback_text_features(kg: &KnowledgeGraph, dim: usize, seed: u64) -> TextFeatureTable {
    let mut table = TextFeatureTable::new(dim);
    for (entity, title) in kg.text_of(TextAttr::Title) {
        table.vectors.insert(entity, fallback_title_embed(title, dim, seed));
    }
    table
}

/// Min-max normalized publication years.
#[derive(Debug, Clone, Default)]
pub struct NumericFeatureTable {
    values: HashMap<EntityId, f64>,
    pub min_year: i32,
    pub max_year: i32,
}

impl NumericFeatureTable {
    /// Table over already-normalized values.
    pub fn from_values(values: HashMap<EntityId, f64>, min_year: i32, max_year: i32) -> Self {
        NumericFeatureTable {
            values,
            min_year,
            max_year,
        }
    }

    /// Normalized value, 0.0 for entities without a year.
    pub fn get(&self, entity: EntityId) -> f64 {
        self.values.get(&entity).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn build_numeric_features(kg: &KnowledgeGraph) -> NumericFeatureTable {
    let years = kg.numeric_triples();
    let Some(min_year) = years.iter().map(|t| t.year).min() else {
        return NumericFeatureTable::default();
    };
    let max_year = years.iter().map(|t| t.year).max().unwrap_or(min_year);
    let span = f64::from(max_year - min_year);
    let mut values = HashMap::new();
    for t in years {
        let v = if span > 0.0 {
            f64::from(t.year - min_year) / span
        } else {
            0.5
        };
        values.entry(t.entity).or_insert(v);
    }
    NumericFeatureTable {
        values,
        min_year,
        max_year,
    }
}

/// Text and numeric literal tables consumed by the fusion functions.
#[derive(Debug, Clone)]
pub struct LiteralFeatures {
    pub text: TextFeatureTable,
    pub numeric: NumericFeatureTable,
}

impl LiteralFeatures {
    pub fn new(text: TextFeatureTable, numeric: NumericFeatureTable) -> Self {
        LiteralFeatures { text, numeric }
    }

    /// No literals at all; every lookup yields zeros.
    pub fn empty(text_dim: usize) -> Self {
        LiteralFeatures {
            text: TextFeatureTable::new(text_dim),
            numeric: NumericFeatureTable::default(),
        }
    }

    pub fn text_dim(&self) -> usize {
        self.text.dim()
    }
}
