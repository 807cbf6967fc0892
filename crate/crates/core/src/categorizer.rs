//! Page categorization pipeline.
//!
//! Resolution order: user override, cache, publisher-declared category,
//! domain list, lexicon scoring. A page nothing matches is left
//! uncategorized, which category policy never blocks.

use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::cache::{CategoryCache, CACHE_CAPACITY};
use crate::domain::RegistrableDomain;
use crate::domain_list::DomainCategoryList;
use crate::lexicon::Lexicon;
use crate::page::PageFeatures;
use crate::scoring::{score_fields, select_categories, CategoryScores, DEFAULT_ALPHA};
use crate::taxonomy::{Category, Taxonomy};
use crate::text::{Field, FieldWeights, TermCounts, Tokenizer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AssignmentSource {
    Cache,
    DeclaredTag,
    DomainList,
    Lexicon,
    UserOverride,
    FallbackUncategorized,
}

impl AssignmentSource {
    pub fn as_str(self) -> &'static str {
        match self {
            AssignmentSource::Cache => "cache",
            AssignmentSource::DeclaredTag => "declared-tag",
            AssignmentSource::DomainList => "domain-list",
            AssignmentSource::Lexicon => "lexicon",
            AssignmentSource::UserOverride => "user-override",
            AssignmentSource::FallbackUncategorized => "fallback-uncategorized",
        }
    }
}

/// Categories of one page and where they came from. Uncategorized pages
/// carry an empty list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryAssignment {
    pub categories: Vec<Category>,
    pub source: AssignmentSource,
}

impl CategoryAssignment {
    pub fn uncategorized() -> Self {
        CategoryAssignment {
            categories: Vec::new(),
            source: AssignmentSource::FallbackUncategorized,
        }
    }
}

#[derive(Debug)]
pub struct Categorizer {
    taxonomy: Taxonomy,
    tokenizer: Tokenizer,
    lexicon: Lexicon,
    domains: DomainCategoryList,
    weights: FieldWeights,
    alpha: f64,
    cache: CategoryCache,
    scoring_runs: u64,
}

impl Categorizer {
    pub fn new(
        taxonomy: Taxonomy,
        tokenizer: Tokenizer,
        lexicon: Lexicon,
        domains: DomainCategoryList,
    ) -> Self {
        Categorizer {
            taxonomy,
            tokenizer,
            lexicon,
            domains,
            weights: FieldWeights::default(),
            alpha: DEFAULT_ALPHA,
            cache: CategoryCache::new(CACHE_CAPACITY),
            scoring_runs: 0,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_field_weights(mut self, weights: FieldWeights) -> Self {
        self.weights = weights;
        self
    }

    pub fn with_cache_capacity(mut self, capacity: usize) -> Self {
        self.cache = CategoryCache::new(capacity);
        self
    }

    pub fn taxonomy(&self) -> &Taxonomy {
        &self.taxonomy
    }

    pub fn tokenizer(&self) -> &Tokenizer {
        &self.tokenizer
    }

    pub fn cache(&self) -> &CategoryCache {
        &self.cache
    }

    /// How many times lexicon scoring has run. Cache and domain-list hits
    /// do not count.
    pub fn scoring_runs(&self) -> u64 {
        self.scoring_runs
    }

    pub fn invalidate(&mut self, normalized_url: &str) -> bool {
        self.cache.invalidate(normalized_url)
    }

    pub fn clear_cache(&mut self) {
        self.cache.clear();
    }

    /// Runs the resolution pipeline. `user_override` is the stored manual
    /// recategorization for this URL, if any.
    pub fn categorize(
        &mut self,
        features: &PageFeatures,
        user_override: Option<&[Category]>,
    ) -> CategoryAssignment {
        if let Some(categories) = user_override {
            return CategoryAssignment {
                categories: categories.to_vec(),
                source: AssignmentSource::UserOverride,
            };
        }
        if let Some(hit) = self.cache.get(&features.normalized_url) {
            return CategoryAssignment {
                categories: hit.categories.clone(),
                source: AssignmentSource::Cache,
            };
        }
        let Some(assignment) = self.classify(features) else {
            return CategoryAssignment::uncategorized();
        };
        self.cache
            .insert(features.normalized_url.clone(), assignment.clone());
        assignment
    }

    /// Sources 3 to 5 of the pipeline, bypassing override and cache.
    fn classify(&mut self, features: &PageFeatures) -> Option<CategoryAssignment> {
        if let Some(declared) = &features.declared_category {
            if self.taxonomy.contains(declared) {
                return Some(CategoryAssignment {
                    categories: alloc::vec![declared.clone()],
                    source: AssignmentSource::DeclaredTag,
                });
            }
        }
        let registrable = RegistrableDomain::new(&features.registrable_domain);
        if let Some(categories) = self
            .domains
            .categorize_by_domain(&features.hostname, &registrable)
        {
            return Some(CategoryAssignment {
                categories: categories.to_vec(),
                source: AssignmentSource::DomainList,
            });
        }
        let scores = self.score(features);
        select_categories(&scores, self.taxonomy.len(), self.alpha)
            .ok()
            .map(|categories| CategoryAssignment {
                categories,
                source: AssignmentSource::Lexicon,
            })
    }

    /// Lexicon scores for the page's URL, title, keywords and body.
    pub fn score(&mut self, features: &PageFeatures) -> CategoryScores {
        self.scoring_runs += 1;
        let fields = self.field_counts(features);
        score_fields(&self.lexicon, &fields, &self.weights)
    }

    fn field_counts(&self, features: &PageFeatures) -> Vec<(Field, TermCounts)> {
        let mut out = Vec::with_capacity(4);
        let mut counts = |field, texts: &[&str]| {
            let mut c = TermCounts::new();
            for t in texts {
                self.tokenizer.count_ngrams(t, &mut c);
            }
            out.push((field, c));
        };
        counts(Field::Url, &[&features.normalized_url]);
        counts(Field::Title, &[&features.title]);
        let keywords: Vec<&str> = features.keywords.iter().map(String::as_str).collect();
        counts(Field::Keywords, &keywords);
        counts(Field::Body, &[&features.body_text]);
        out
    }
}
