//! User policy: blocked categories, per-URL verdicts and manual
//! recategorizations, and the page-level Block/Allow decision.
//!
//! Precedence: a per-URL verdict beats everything, then any overlap with the
//! blocked categories blocks, otherwise the page is allowed.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::categorizer::CategoryAssignment;
use crate::scoring::MAX_CATEGORIES;
use crate::taxonomy::{Category, Taxonomy, UnknownCategory};
use crate::urlnorm::{normalize_url, MalformedUrl};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Block,
    Allow,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Block => "block",
            Verdict::Allow => "allow",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecisionReason {
    UrlOverride,
    CategoryMatch,
    DefaultAllow,
}

impl DecisionReason {
    pub fn as_str(self) -> &'static str {
        match self {
            DecisionReason::UrlOverride => "url-override",
            DecisionReason::CategoryMatch => "category-match",
            DecisionReason::DefaultAllow => "default-allow",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PolicyDecision {
    pub verdict: Verdict,
    pub reason: DecisionReason,
    /// Blocked categories the page matched, in assignment order. Empty
    /// unless the reason is a category match.
    pub matched_categories: Vec<Category>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UrlPolicyUpdate {
    Block,
    Allow,
    Clear,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PolicyError {
    #[error(transparent)]
    UnknownCategory(#[from] UnknownCategory),
    #[error(transparent)]
    MalformedUrl(#[from] MalformedUrl),
    #[error("at most three categories per page, got {0}")]
    TooManyCategories(usize),
    #[error("a category override needs at least one category")]
    NoCategories,
}

/// The persisted policy document. URL keys are normalized.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct PolicyConfig {
    pub blocked_categories: BTreeSet<Category>,
    pub url_policies: BTreeMap<String, Verdict>,
    pub category_overrides: BTreeMap<String, Vec<Category>>,
}

impl PolicyConfig {
    /// Checks every category against the taxonomy and normalizes every URL
    /// key. Use after deserializing a hand-edited document.
    pub fn validated(self, taxonomy: &Taxonomy) -> Result<Self, PolicyError> {
        let mut out = PolicyConfig::default();
        for c in &self.blocked_categories {
            out.blocked_categories.insert(taxonomy.resolve(c.as_str())?);
        }
        for (url, verdict) in self.url_policies {
            out.url_policies.insert(normalize_url(&url)?, verdict);
        }
        for (url, cats) in self.category_overrides {
            let names: Vec<&str> = cats.iter().map(Category::as_str).collect();
            out.set_category_override(taxonomy, &url, &names)?;
        }
        Ok(out)
    }

    pub fn is_blocked(&self, category: &Category) -> bool {
        self.blocked_categories.contains(category)
    }

    /// Returns whether the set changed.
    pub fn set_category_blocked(
        &mut self,
        taxonomy: &Taxonomy,
        category: &str,
        blocked: bool,
    ) -> Result<bool, PolicyError> {
        let c = taxonomy.resolve(category)?;
        Ok(if blocked {
            self.blocked_categories.insert(c)
        } else {
            self.blocked_categories.remove(&c)
        })
    }

    /// Replaces the blocked set wholesale. Nothing changes on error.
    pub fn set_blocked_categories<'a, I>(
        &mut self,
        taxonomy: &Taxonomy,
        categories: I,
    ) -> Result<(), PolicyError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut set = BTreeSet::new();
        for name in categories {
            set.insert(taxonomy.resolve(name)?);
        }
        self.blocked_categories = set;
        Ok(())
    }

    /// Returns the normalized URL the update applied to.
    pub fn set_url_policy(
        &mut self,
        url: &str,
        update: UrlPolicyUpdate,
    ) -> Result<String, PolicyError> {
        let url = normalize_url(url)?;
        match update {
            UrlPolicyUpdate::Block => {
                self.url_policies.insert(url.clone(), Verdict::Block);
            }
            UrlPolicyUpdate::Allow => {
                self.url_policies.insert(url.clone(), Verdict::Allow);
            }
            UrlPolicyUpdate::Clear => {
                self.url_policies.remove(&url);
            }
        }
        Ok(url)
    }

    pub fn url_policy(&self, url: &str) -> Option<Verdict> {
        self.url_policies.get(url).copied()
    }

    /// Stores a manual recategorization (1 to 3 names, duplicates dropped,
    /// order kept). Returns the normalized URL.
    pub fn set_category_override(
        &mut self,
        taxonomy: &Taxonomy,
        url: &str,
        categories: &[&str],
    ) -> Result<String, PolicyError> {
        let url = normalize_url(url)?;
        let mut cats: Vec<Category> = Vec::new();
        for name in categories {
            let c = taxonomy.resolve(name)?;
            if !cats.contains(&c) {
                cats.push(c);
            }
        }
        if cats.is_empty() {
            return Err(PolicyError::NoCategories);
        }
        if cats.len() > MAX_CATEGORIES {
            return Err(PolicyError::TooManyCategories(cats.len()));
        }
        self.category_overrides.insert(url.clone(), cats);
        Ok(url)
    }

    pub fn clear_category_override(&mut self, url: &str) -> Result<bool, PolicyError> {
        let url = normalize_url(url)?;
        Ok(self.category_overrides.remove(&url).is_some())
    }

    pub fn category_override(&self, url: &str) -> Option<&[Category]> {
        self.category_overrides.get(url).map(Vec::as_slice)
    }
}

/// Page-level decision for an already-normalized URL.
pub fn resolve(url: &str, assignment: &CategoryAssignment, config: &PolicyConfig) -> PolicyDecision {
    if let Some(verdict) = config.url_policy(url) {
        return PolicyDecision {
            verdict,
            reason: DecisionReason::UrlOverride,
            matched_categories: Vec::new(),
        };
    }
    let matched: Vec<Category> = assignment
        .categories
        .iter()
        .filter(|c| config.is_blocked(c))
        .cloned()
        .collect();
    if matched.is_empty() {
        PolicyDecision {
            verdict: Verdict::Allow,
            reason: DecisionReason::DefaultAllow,
            matched_categories: matched,
        }
    } else {
        PolicyDecision {
            verdict: Verdict::Block,
            reason: DecisionReason::CategoryMatch,
            matched_categories: matched,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::categorizer::AssignmentSource;
    use alloc::vec;

    fn taxonomy() -> Taxonomy {
        Taxonomy::new(["adult", "health & fitness", "news", "religion", "sports"]).unwrap()
    }

    fn assigned(names: &[&str]) -> CategoryAssignment {
        CategoryAssignment {
            categories: names.iter().map(|n| Category::new(n)).collect(),
            source: AssignmentSource::Lexicon,
        }
    }

    const URL: &str = "https://pub.example/page";

    #[test]
    fn url_allow_beats_blocked_category() {
        let t = taxonomy();
        let mut c = PolicyConfig::default();
        c.set_category_blocked(&t, "religion", true).unwrap();
        c.set_url_policy(URL, UrlPolicyUpdate::Allow).unwrap();
        let d = resolve(URL, &assigned(&["religion"]), &c);
        assert_eq!(d.verdict, Verdict::Allow);
        assert_eq!(d.reason, DecisionReason::UrlOverride);
    }

    #[test]
    fn any_blocked_category_blocks() {
        let t = taxonomy();
        let mut c = PolicyConfig::default();
        c.set_category_blocked(&t, "health & fitness", true).unwrap();
        let d = resolve(URL, &assigned(&["news", "health & fitness"]), &c);
        assert_eq!(d.verdict, Verdict::Block);
        assert_eq!(d.reason, DecisionReason::CategoryMatch);
        assert_eq!(d.matched_categories, vec![Category::new("health & fitness")]);
    }

    #[test]
    fn empty_config_allows() {
        let d = resolve(URL, &assigned(&["adult"]), &PolicyConfig::default());
        assert_eq!(d.verdict, Verdict::Allow);
        assert_eq!(d.reason, DecisionReason::DefaultAllow);
        let d = resolve(URL, &CategoryAssignment::uncategorized(), &PolicyConfig::default());
        assert_eq!(d.verdict, Verdict::Allow);
    }

    #[test]
    fn precedence_truth_table() {
        let t = taxonomy();
        for url_entry in [None, Some(Verdict::Block), Some(Verdict::Allow)] {
            for intersects in [false, true] {
                let mut c = PolicyConfig::default();
                c.set_category_blocked(&t, "adult", true).unwrap();
                if let Some(v) = url_entry {
                    let u = if v == Verdict::Block { UrlPolicyUpdate::Block } else { UrlPolicyUpdate::Allow };
                    c.set_url_policy(URL, u).unwrap();
                }
                let a = assigned(if intersects { &["adult"] } else { &["news"] });
                let d = resolve(URL, &a, &c);
                let (want_v, want_r) = match (url_entry, intersects) {
                    (Some(v), _) => (v, DecisionReason::UrlOverride),
                    (None, true) => (Verdict::Block, DecisionReason::CategoryMatch),
                    (None, false) => (Verdict::Allow, DecisionReason::DefaultAllow),
                };
                assert_eq!((d.verdict, d.reason), (want_v, want_r), "{url_entry:?} {intersects}");
                if d.reason == DecisionReason::CategoryMatch {
                    assert!(!d.matched_categories.is_empty());
                    assert!(d.matched_categories.iter().all(|m| c.is_blocked(m)));
                }
            }
        }
    }

    #[test]
    fn clear_restores_category_behaviour() {
        let t = taxonomy();
        let mut c = PolicyConfig::default();
        c.set_category_blocked(&t, "adult", true).unwrap();
        c.set_url_policy(URL, UrlPolicyUpdate::Allow).unwrap();
        c.set_url_policy("HTTPS://PUB.example/page#x", UrlPolicyUpdate::Clear).unwrap();
        assert_eq!(resolve(URL, &assigned(&["adult"]), &c).verdict, Verdict::Block);
        // Clearing again is a no-op.
        c.set_url_policy(URL, UrlPolicyUpdate::Clear).unwrap();
        assert!(c.url_policies.is_empty());
    }

    #[test]
    fn category_updates_validate() {
        let t = taxonomy();
        let mut c = PolicyConfig::default();
        assert!(!c.set_category_blocked(&t, "news", false).unwrap());
        assert!(matches!(
            c.set_category_blocked(&t, "astrology", true),
            Err(PolicyError::UnknownCategory(_))
        ));
        assert!(matches!(
            c.set_category_override(&t, URL, &["news", "sports", "adult", "religion"]),
            Err(PolicyError::TooManyCategories(4))
        ));
        assert!(matches!(
            c.set_url_policy("not a url", UrlPolicyUpdate::Block),
            Err(PolicyError::MalformedUrl(_))
        ));
        c.set_category_override(&t, URL, &["news"]).unwrap();
        c.set_category_override(&t, URL, &["news"]).unwrap();
        assert_eq!(c.category_override(URL), Some(&[Category::new("news")][..]));
        assert!(matches!(
            c.set_blocked_categories(&t, ["news", "bogus"]),
            Err(PolicyError::UnknownCategory(_))
        ));
        assert!(c.blocked_categories.is_empty());
    }

    #[test]
    fn blocking_unrelated_category_changes_nothing() {
        let t = taxonomy();
        let mut c = PolicyConfig::default();
        let a = assigned(&["news", "sports"]);
        let before = resolve(URL, &a, &c);
        c.set_category_blocked(&t, "adult", true).unwrap();
        assert_eq!(resolve(URL, &a, &c), before);
    }

    #[test]
    fn validated_normalizes_keys() {
        let t = taxonomy();
        let mut raw = PolicyConfig::default();
        raw.blocked_categories.insert(Category::new("Adult"));
        raw.url_policies.insert("HTTPS://Pub.Example:443/page".into(), Verdict::Block);
        raw.category_overrides.insert("https://pub.example/o#f".into(), vec![Category::new("news")]);
        let c = raw.validated(&t).unwrap();
        assert_eq!(c.url_policy(URL), Some(Verdict::Block));
        assert!(c.category_override("https://pub.example/o").is_some());
        assert!(c.is_blocked(&Category::new("adult")));
    }
}
