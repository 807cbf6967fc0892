//! Unigram/bigram lexicon with IDF values and per-category weights.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};

use crate::taxonomy::{Category, Taxonomy, UnknownCategory};

#[derive(Clone, Debug, PartialEq)]
pub struct LexiconEntry {
    pub idf: f64,
    pub weights: BTreeMap<Category, f64>,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum LexiconError {
    #[error("term `{0}` must be one or two lowercase tokens")]
    BadTerm(String),
    #[error("term `{term}` has invalid idf {idf}")]
    BadIdf { term: String, idf: f64 },
    #[error("term `{term}` has invalid weight {weight} for `{category}`")]
    BadWeight {
        term: String,
        category: String,
        weight: f64,
    },
    #[error("term `{0}` has no category weights")]
    NoCategories(String),
    #[error(transparent)]
    UnknownCategory(#[from] UnknownCategory),
}

#[derive(Clone, Debug, Default)]
pub struct Lexicon {
    entries: BTreeMap<String, LexiconEntry>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds or replaces a term. Category names are resolved against the
    /// taxonomy; weights must be positive and finite, idf non-negative.
    pub fn insert<'a, I>(
        &mut self,
        taxonomy: &Taxonomy,
        term: &str,
        idf: f64,
        weights: I,
    ) -> Result<(), LexiconError>
    where
        I: IntoIterator<Item = (&'a str, f64)>,
    {
        let term = normalize_term(term).ok_or_else(|| LexiconError::BadTerm(term.to_string()))?;
        if !idf.is_finite() || idf < 0.0 {
            return Err(LexiconError::BadIdf { term, idf });
        }
        let mut resolved = BTreeMap::new();
        for (name, weight) in weights {
            let category = taxonomy.resolve(name)?;
            if !weight.is_finite() || weight <= 0.0 {
                return Err(LexiconError::BadWeight {
                    term,
                    category: category.to_string(),
                    weight,
                });
            }
            resolved.insert(category, weight);
        }
        if resolved.is_empty() {
            return Err(LexiconError::NoCategories(term));
        }
        self.entries.insert(
            term,
            LexiconEntry {
                idf,
                weights: resolved,
            },
        );
        Ok(())
    }

    pub fn get(&self, term: &str) -> Option<&LexiconEntry> {
        self.entries.get(term)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &LexiconEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }
}

fn normalize_term(term: &str) -> Option<String> {
    let lower = term.trim().to_lowercase();
    let mut parts = lower.split(' ');
    let first = parts.next()?;
    let second = parts.next();
    if parts.next().is_some() {
        return None;
    }
    let valid = |t: &str| !t.is_empty() && t.chars().all(char::is_alphanumeric);
    if !valid(first) || second.is_some_and(|s| !valid(s)) {
        return None;
    }
    Some(lower)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn taxonomy() -> Taxonomy {
        Taxonomy::new(["health & fitness", "news"]).unwrap()
    }

    #[test]
    fn accepts_unigrams_and_bigrams() {
        let t = taxonomy();
        let mut lex = Lexicon::new();
        lex.insert(&t, "Diabetes", 2.0, [("health & fitness", 1.0)]).unwrap();
        lex.insert(&t, "heart disease", 5.0, [("health & fitness", 0.5), ("news", 0.1)])
            .unwrap();
        assert_eq!(lex.get("diabetes").unwrap().idf, 2.0);
        assert_eq!(lex.get("heart disease").unwrap().weights.len(), 2);
    }

    #[test]
    fn rejects_bad_entries() {
        let t = taxonomy();
        let mut lex = Lexicon::new();
        assert!(matches!(
            lex.insert(&t, "a b c", 1.0, [("news", 1.0)]),
            Err(LexiconError::BadTerm(_))
        ));
        assert!(matches!(
            lex.insert(&t, "heart  disease", 1.0, [("news", 1.0)]),
            Err(LexiconError::BadTerm(_))
        ));
        assert!(matches!(
            lex.insert(&t, "x", -1.0, [("news", 1.0)]),
            Err(LexiconError::BadIdf { .. })
        ));
        assert!(matches!(
            lex.insert(&t, "x", 1.0, [("news", 0.0)]),
            Err(LexiconError::BadWeight { .. })
        ));
        assert!(matches!(
            lex.insert(&t, "x", 1.0, [("sports", 1.0)]),
            Err(LexiconError::UnknownCategory(_))
        ));
        assert!(matches!(
            lex.insert(&t, "x", 1.0, []),
            Err(LexiconError::NoCategories(_))
        ));
        assert!(lex.is_empty());
    }
}
