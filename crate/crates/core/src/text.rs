//! Tokenization and unigram/bigram extraction for page fields.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

/// Page field an n-gram was extracted from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Url,
    Title,
    Keywords,
    Body,
}

impl Field {
    /// Scoring order. Summation follows it so results are reproducible.
    pub const ALL: [Field; 4] = [Field::Url, Field::Title, Field::Keywords, Field::Body];
}

/// Multipliers applied to term frequencies per field. Publisher keywords,
/// titles and URLs describe a page better than its body text.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldWeights {
    pub url: f64,
    pub title: f64,
    pub keywords: f64,
    pub body: f64,
}

impl Default for FieldWeights {
    fn default() -> Self {
        FieldWeights {
            url: 3.0,
            title: 4.0,
            keywords: 5.0,
            body: 1.0,
        }
    }
}

impl FieldWeights {
    pub fn weight(&self, field: Field) -> f64 {
        match field {
            Field::Url => self.url,
            Field::Title => self.title,
            Field::Keywords => self.keywords,
            Field::Body => self.body,
        }
    }
}

/// One extracted term with its field weight and raw in-field count.
#[derive(Clone, Debug, PartialEq)]
pub struct Ngram {
    pub term: String,
    pub field_weight: f64,
    pub term_frequency: u32,
}

/// Raw term counts for one field, ordered by term.
pub type TermCounts = BTreeMap<String, u32>;

#[derive(Clone, Debug, Default)]
pub struct Tokenizer {
    stopwords: BTreeSet<String>,
}

impl Tokenizer {
    pub fn new<I, S>(stopwords: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Tokenizer {
            stopwords: stopwords
                .into_iter()
                .map(|s| s.as_ref().trim().to_lowercase())
                .filter(|s| !s.is_empty())
                .collect(),
        }
    }

    pub fn is_stopword(&self, token: &str) -> bool {
        self.stopwords.contains(token)
    }

    /// Lowercases, splits on anything that is not alphanumeric, and drops
    /// single-character tokens and stopwords.
    pub fn tokens(&self, text: &str) -> Vec<String> {
        let lower = text.to_lowercase();
        lower
            .split(|c: char| !c.is_alphanumeric())
            .filter(|t| t.chars().nth(1).is_some())
            .filter(|t| !self.stopwords.contains(*t))
            .map(String::from)
            .collect()
    }

    /// Adds unigram and adjacent-bigram counts of `text` into `counts`.
    pub fn count_ngrams(&self, text: &str, counts: &mut TermCounts) {
        let tokens = self.tokens(text);
        for pair in tokens.windows(2) {
            let mut bigram = String::with_capacity(pair[0].len() + 1 + pair[1].len());
            bigram.push_str(&pair[0]);
            bigram.push(' ');
            bigram.push_str(&pair[1]);
            *counts.entry(bigram).or_insert(0) += 1;
        }
        for token in tokens {
            *counts.entry(token).or_insert(0) += 1;
        }
    }
}

/// Unigrams and bigrams of one field's text, sorted by term.
pub fn extract_ngrams(
    tokenizer: &Tokenizer,
    text: &str,
    field: Field,
    weights: &FieldWeights,
) -> Vec<Ngram> {
    let mut counts = TermCounts::new();
    tokenizer.count_ngrams(text, &mut counts);
    let field_weight = weights.weight(field);
    counts
        .into_iter()
        .map(|(term, term_frequency)| Ngram {
            term,
            field_weight,
            term_frequency,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tok() -> Tokenizer {
        Tokenizer::new(["and", "the", "of"])
    }

    fn terms(ngrams: &[Ngram]) -> Vec<(&str, u32)> {
        ngrams
            .iter()
            .map(|n| (n.term.as_str(), n.term_frequency))
            .collect()
    }

    #[test]
    fn title_with_stopword() {
        let ngrams = extract_ngrams(&tok(), "Heart Disease and Diet", Field::Title, &FieldWeights::default());
        assert_eq!(
            terms(&ngrams),
            [
                ("diet", 1),
                ("disease", 1),
                ("disease diet", 1),
                ("heart", 1),
                ("heart disease", 1)
            ]
        );
        assert!(ngrams.iter().all(|n| n.field_weight == 4.0));
    }

    #[test]
    fn empty_text() {
        assert!(extract_ngrams(&tok(), "", Field::Body, &FieldWeights::default()).is_empty());
    }

    #[test]
    fn repeated_token_counts() {
        let ngrams = extract_ngrams(&tok(), "cancer cancer", Field::Body, &FieldWeights::default());
        assert_eq!(terms(&ngrams), [("cancer", 2), ("cancer cancer", 1)]);
    }

    #[test]
    fn splits_on_punctuation_and_drops_short_tokens() {
        assert_eq!(
            tok().tokens("https://www.WebMD.com/a/heart-disease?x=1"),
            ["https", "www", "webmd", "com", "heart", "disease"]
        );
        assert_eq!(tok().tokens("Ünïcode ÉTÉ"), ["ünïcode", "été"]);
    }
}
