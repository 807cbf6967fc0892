//! TF-IDF category scoring and threshold selection.
//!
//! Each n-gram adds `field_weight * tf * idf * weight(term, c)` to every
//! category `c` it is associated with. Selection keeps the categories whose
//! score clears `alpha * (max - mean)`, at most three of them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::lexicon::Lexicon;
use crate::taxonomy::Category;
use crate::text::{Field, FieldWeights, Ngram, TermCounts};

pub const DEFAULT_ALPHA: f64 = 0.3;
pub const MAX_CATEGORIES: usize = 3;

/// Accumulated scores. Categories never touched by a matching term are
/// absent and count as zero.
pub type CategoryScores = BTreeMap<Category, f64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SelectionError {
    #[error("no category scored above zero")]
    AllZeroScores,
}

/// Adds the contribution of `ngrams` into `scores`, in slice order.
pub fn score_terms(lexicon: &Lexicon, ngrams: &[Ngram], scores: &mut CategoryScores) {
    for ngram in ngrams {
        add_term(lexicon, &ngram.term, ngram.field_weight, ngram.term_frequency, scores);
    }
}

/// Scores per-field term counts, walking fields in [`Field::ALL`] order and
/// terms in sorted order so the floating-point sum is reproducible.
pub fn score_fields(
    lexicon: &Lexicon,
    fields: &[(Field, TermCounts)],
    weights: &FieldWeights,
) -> CategoryScores {
    let mut scores = CategoryScores::new();
    for field in Field::ALL {
        for (_, counts) in fields.iter().filter(|(f, _)| *f == field) {
            let fw = weights.weight(field);
            for (term, tf) in counts {
                add_term(lexicon, term, fw, *tf, &mut scores);
            }
        }
    }
    scores
}

fn add_term(lexicon: &Lexicon, term: &str, fw: f64, tf: u32, scores: &mut CategoryScores) {
    let Some(entry) = lexicon.get(term) else {
        return;
    };
    let base = fw * f64::from(tf) * entry.idf;
    for (category, w) in &entry.weights {
        *scores.entry(category.clone()).or_insert(0.0) += base * w;
    }
}

/// Picks up to [`MAX_CATEGORIES`] categories. `population` is the taxonomy
/// size used for the mean, so unscored categories pull it down.
///
/// Falls back to the single best category if nothing clears the threshold
/// (possible only for `alpha > 1`).
pub fn select_categories(
    scores: &CategoryScores,
    population: usize,
    alpha: f64,
) -> Result<Vec<Category>, SelectionError> {
    if !scores.values().any(|&s| s > 0.0) {
        return Err(SelectionError::AllZeroScores);
    }
    let max = scores.values().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut sum = 0.0;
    for s in scores.values() {
        sum += *s;
    }
    let population = population.max(scores.len()).max(1);
    let mean = sum / population as f64;
    let threshold = alpha * (max - mean);

    let mut ranked: Vec<(&Category, f64)> = scores.iter().map(|(c, s)| (c, *s)).collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let mut picked: Vec<Category> = ranked
        .iter()
        .filter(|(_, s)| *s > threshold)
        .take(MAX_CATEGORIES)
        .map(|(c, _)| (*c).clone())
        .collect();
    if picked.is_empty() {
        picked.push(ranked[0].0.clone());
    }
    Ok(picked)
}
