//! Decision core for a category-aware tracker blocker.
//!
//! A visited page is classified into at most three top-level interest
//! categories (domain list first, then a field-weighted TF-IDF n-gram
//! lexicon). The user's per-category and per-URL policies turn that into a
//! Block/Allow verdict for the page, and on blocked pages third-party
//! requests are refused when their registrable domain is a tracker (seen on
//! three or more distinct first parties) and not on the allowlist of
//! functionality-essential domains.
//!
//! Everything here is pure data manipulation over `alloc` collections; IO,
//! file formats, synchronization and networking live in the `trackwall`
//! crate.

#![no_std]

extern crate alloc;

pub mod analytics;
pub mod cache;
pub mod categorizer;
pub mod domain;
pub mod domain_list;
pub mod event;
mod html;
pub mod lexicon;
pub mod page;
pub mod policy;
pub mod scoring;
pub mod taxonomy;
pub mod text;
pub mod tracker;
pub mod urlnorm;

pub use analytics::{
    build_report, classify_ad_iframes, tracker_stats, AdCount, AdDomainList, AdDomainSummary,
    CategoryStats, OverallStats, Report, ReportOptions, TrackerStats, TrackerSummary,
};
pub use cache::{CategoryCache, CACHE_CAPACITY};
pub use categorizer::{AssignmentSource, CategoryAssignment, Categorizer};
pub use domain::{RegistrableDomain, SuffixList, SuffixListError};
pub use domain_list::{DomainCategoryList, DomainListError};
pub use event::{page_hash, BrowsingEvent};
pub use lexicon::{Lexicon, LexiconEntry, LexiconError};
pub use page::{extract_features, PageFeatures, RawPage, DEFAULT_BODY_CAP};
pub use policy::{
    resolve, DecisionReason, PolicyConfig, PolicyDecision, PolicyError, UrlPolicyUpdate, Verdict,
};
pub use scoring::{
    score_fields, score_terms, select_categories, CategoryScores, SelectionError, DEFAULT_ALPHA,
    MAX_CATEGORIES,
};
pub use taxonomy::{Category, Taxonomy, TaxonomyError, UnknownCategory};
pub use text::{extract_ngrams, Field, FieldWeights, Ngram, Tokenizer};
pub use tracker::{
    evaluate_request, should_block_request, AllowedDomains, RequestCheck, SameParty,
    TrackerRegistry, TRACKER_THRESHOLD,
};
pub use urlnorm::{normalize_url, url_host, MalformedUrl};
