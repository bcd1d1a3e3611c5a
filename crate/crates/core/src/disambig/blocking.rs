use std::collections::BTreeMap;

use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

use super::AuthorFeature;

/// Lower-cased, diacritic-free, alphanumeric-only form of a name part.
pub fn normalize_name(s: &str) -> String {
    s.nfkd()
        .filter(|c| !is_combining_mark(*c))
        .flat_map(char::to_lowercase)
        .filter(|c| c.is_alphanumeric())
        .collect()
}

/// Last name plus first initial: `("Müller", "Jörg")` becomes `muller_j`.
pub fn ln_fi_key(family_name: &str, given_name: &str) -> String {
    let family = normalize_name(family_name);
    let initial = normalize_name(given_name).chars().find(|c| c.is_alphabetic());
    match initial {
        Some(c) => format!("{family}_{c}"),
        None => format!("{family}_"),
    }
}

/// Normalized full name, used by the post-blocking filter.
pub fn full_name_key(family_name: &str, given_name: &str) -> String {
    format!("{}_{}", normalize_name(family_name), normalize_name(given_name))
}

/// Author features sharing one name key.
#[derive(Debug, Clone)]
pub struct Block {
    pub key: String,
    pub members: Vec<AuthorFeature>,
}

/// Group features by name key. Blocks come out sorted by key and members
/// sorted by author IRI.
pub fn group_blocks(features: Vec<AuthorFeature>) -> Vec<Block> {
    let mut groups: BTreeMap<String, Vec<AuthorFeature>> = BTreeMap::new();
    for f in features {
        groups.entry(f.record.block_key()).or_default().push(f);
    }
    groups
        .into_iter()
        .map(|(key, mut members)| {
            members.sort_by(|a, b| a.record.iri.cmp(&b.record.iri));
            Block { key, members }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys() {
        assert_eq!(ln_fi_key("Liu", "Wei"), "liu_w");
        assert_eq!(ln_fi_key("Cabanac", "Guillaume"), "cabanac_g");
        assert_eq!(ln_fi_key("Müller", "Jörg"), "muller_j");
        assert_eq!(ln_fi_key("O'Brien-Smith", "  émile"), "obriensmith_e");
        assert_eq!(ln_fi_key("Liu", ""), "liu_");
        assert_eq!(ln_fi_key("Liu", "W."), "liu_w");
    }

    #[test]
    fn full_names() {
        assert_eq!(full_name_key("Liu", "Wei"), "liu_wei");
        assert_ne!(full_name_key("Liu", "Wei"), full_name_key("Liu", "Wen"));
        assert_eq!(full_name_key("Müller", "Jörg"), full_name_key("MULLER", "Jorg"));
    }
}
