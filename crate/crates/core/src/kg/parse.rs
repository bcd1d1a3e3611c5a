//! Readers for the 4-column TSV triple format and a small N-Triples subset.

use std::io::BufRead;

use log::{debug, warn};

use super::{GraphBuilder, KnowledgeGraph, Schema, Triple};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripleFormat {
    /// `subject \t predicate \t object \t {iri|text|year}`
    Tsv,
    /// `<s> <p> <o> .` or `<s> <p> "literal"^^<datatype> .`
    NTriples,
}

impl TripleFormat {
    pub fn from_path(path: &std::path::Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("nt") => TripleFormat::NTriples,
            _ => TripleFormat::Tsv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ObjectKind {
    Iri,
    Text,
    Year,
}

struct RawTriple {
    subject: String,
    predicate: String,
    object: String,
    kind: ObjectKind,
}

pub fn parse_triples_str(input: &str, format: TripleFormat, schema: Schema) -> Result<KnowledgeGraph> {
    parse_triples(input.as_bytes(), format, schema)
}

/// Parse a triple stream into a [`KnowledgeGraph`].
///
/// Unknown predicates are collected over the whole input and reported
/// together. Objects of structural triples that were never seen as subjects
/// become new entities.
pub fn parse_triples<R: BufRead>(source: R, format: TripleFormat, schema: Schema) -> Result<KnowledgeGraph> {
    let mut builder = GraphBuilder::new(schema);
    let mut unknown_lines = Vec::new();
    let mut unknown_predicates: Vec<String> = Vec::new();
    let mut duplicates = 0usize;

    for (i, line) in source.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        let raw = match format {
            TripleFormat::Tsv => parse_tsv_line(&line, line_no)?,
            TripleFormat::NTriples => parse_nt_line(&line, line_no)?,
        };
        let Some(raw) = raw else { continue };

        let accepted = match raw.kind {
            ObjectKind::Iri => match builder.relation_for(&raw.predicate) {
                Some(rel) => {
                    let head = builder.entity(&raw.subject);
                    let tail = builder.entity(&raw.object);
                    Some(builder.add_object(Triple { head, relation: rel, tail }))
                }
                None => None,
            },
            ObjectKind::Text => match GraphBuilder::text_kind(&raw.predicate) {
                Some(kind) => {
                    let entity = builder.entity(&raw.subject);
                    Some(builder.add_text(entity, &raw.predicate, kind, &raw.object))
                }
                None => None,
            },
            ObjectKind::Year => {
                if GraphBuilder::is_year(&raw.predicate) {
                    let year = parse_year(&raw.object).ok_or_else(|| Error::Datatype {
                        line: line_no,
                        value: raw.object.clone(),
                    })?;
                    let entity = builder.entity(&raw.subject);
                    Some(builder.add_year(entity, &raw.predicate, year))
                } else {
                    None
                }
            }
        };
        match accepted {
            Some(true) => {}
            Some(false) => {
                duplicates += 1;
                debug!("line {line_no}: duplicate triple ignored");
            }
            None => {
                unknown_lines.push(line_no);
                if !unknown_predicates.contains(&raw.predicate) {
                    unknown_predicates.push(raw.predicate);
                }
            }
        }
    }

    if !unknown_lines.is_empty() {
        return Err(Error::UnknownPredicates {
            predicates: unknown_predicates,
            lines: unknown_lines,
        });
    }
    if duplicates > 0 {
        warn!("{duplicates} duplicate triples or repeated literals ignored");
    }
    Ok(builder.finish())
}

fn parse_year(value: &str) -> Option<i32> {
    let value = value.trim();
    value.parse().ok().or_else(|| {
        // xsd:date style values carry the year as the leading component
        let head = value.split('-').next()?;
        if head.len() == 4 {
            head.parse().ok()
        } else {
            None
        }
    })
}

fn parse_tsv_line(line: &str, line_no: usize) -> Result<Option<RawTriple>> {
    if line.trim().is_empty() {
        return Ok(None);
    }
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 4 {
        return Err(Error::Parse {
            line: line_no,
            message: format!("expected 4 tab-separated columns, found {}", cols.len()),
        });
    }
    let kind = match cols[3].trim() {
        "iri" => ObjectKind::Iri,
        "text" => ObjectKind::Text,
        "year" => ObjectKind::Year,
        other => {
            return Err(Error::Parse {
                line: line_no,
                message: format!("unknown object kind {other:?}"),
            })
        }
    };
    Ok(Some(RawTriple {
        subject: cols[0].to_owned(),
        predicate: cols[1].to_owned(),
        object: cols[2].to_owned(),
        kind,
    }))
}

fn parse_nt_line(line: &str, line_no: usize) -> Result<Option<RawTriple>> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let err = |message: &str| Error::Parse {
        line: line_no,
        message: message.to_owned(),
    };
    let mut rest = trimmed;
    let subject = take_iri(&mut rest).ok_or_else(|| err("subject must be an IRI"))?;
    let predicate = take_iri(&mut rest).ok_or_else(|| err("predicate must be an IRI"))?;
    rest = rest.trim_start();
    let (object, kind) = if rest.starts_with('<') {
        let iri = take_iri(&mut rest).ok_or_else(|| err("unterminated object IRI"))?;
        (iri, ObjectKind::Iri)
    } else if rest.starts_with('"') {
        let (value, after) = take_literal(rest).ok_or_else(|| err("unterminated literal"))?;
        rest = after;
        let mut kind = ObjectKind::Text;
        if let Some(after_dt) = rest.strip_prefix("^^") {
            rest = after_dt;
            let dt = take_iri(&mut rest).ok_or_else(|| err("datatype must be an IRI"))?;
            if matches!(
                super::local_name(&dt),
                "gYear" | "integer" | "int" | "date" | "gYearMonth"
            ) {
                kind = ObjectKind::Year;
            }
        } else if rest.starts_with('@') {
            let end = rest.find(|c: char| c.is_whitespace()).unwrap_or(rest.len());
            rest = &rest[end..];
        }
        (value, kind)
    } else {
        return Err(err("object must be an IRI or a literal"));
    };
    if rest.trim() != "." {
        return Err(err("expected terminating '.'"));
    }
    Ok(Some(RawTriple {
        subject,
        predicate,
        object,
        kind,
    }))
}

fn take_iri(rest: &mut &str) -> Option<String> {
    let s = rest.trim_start();
    let s = s.strip_prefix('<')?;
    let end = s.find('>')?;
    let iri = s[..end].to_owned();
    *rest = &s[end + 1..];
    Some(iri)
}

fn take_literal(s: &str) -> Option<(String, &str)> {
    let body = s.strip_prefix('"')?;
    let mut out = String::new();
    let mut chars = body.char_indices();
    while let Some((i, c)) = chars.next() {
        match c {
            '"' => return Some((out, &body[i + 1..])),
            '\\' => {
                let (_, esc) = chars.next()?;
                match esc {
                    'n' => out.push('\n'),
                    't' => out.push('\t'),
                    'r' => out.push('\r'),
                    '"' => out.push('"'),
                    '\\' => out.push('\\'),
                    'u' => {
                        let hex: String = (0..4).filter_map(|_| chars.next().map(|(_, c)| c)).collect();
                        out.push(char::from_u32(u32::from_str_radix(&hex, 16).ok()?)?);
                    }
                    _ => return None,
                }
            }
            c => out.push(c),
        }
    }
    None
}
