//! Pre-categorized hostnames and registrable domains.
//!
//! Only domains whose every page belongs to the listed categories go here;
//! a lookup hit skips lexicon scoring entirely.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::domain::RegistrableDomain;
use crate::scoring::MAX_CATEGORIES;
use crate::taxonomy::{Category, Taxonomy, UnknownCategory};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DomainListError {
    #[error("`{0}` is not a bare hostname")]
    BadKey(String),
    #[error("`{0}` has no categories")]
    NoCategories(String),
    #[error("`{0}` lists more than three categories")]
    TooManyCategories(String),
    #[error(transparent)]
    UnknownCategory(#[from] UnknownCategory),
}

#[derive(Clone, Debug, Default)]
pub struct DomainCategoryList {
    entries: BTreeMap<String, Vec<Category>>,
}

impl DomainCategoryList {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert<'a, I>(
        &mut self,
        taxonomy: &Taxonomy,
        key: &str,
        categories: I,
    ) -> Result<(), DomainListError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let key = key.trim().trim_end_matches('.').to_lowercase();
        if key.is_empty() || key.contains(['/', ':', '?', '#', ' ']) {
            return Err(DomainListError::BadKey(key));
        }
        let mut cats = Vec::new();
        for name in categories {
            let c = taxonomy.resolve(name)?;
            if !cats.contains(&c) {
                cats.push(c);
            }
        }
        if cats.is_empty() {
            return Err(DomainListError::NoCategories(key));
        }
        if cats.len() > MAX_CATEGORIES {
            return Err(DomainListError::TooManyCategories(key));
        }
        cats.sort();
        self.entries.insert(key, cats);
        Ok(())
    }

    /// Exact hostname first, then its registrable domain.
    pub fn categorize_by_domain(
        &self,
        hostname: &str,
        registrable: &RegistrableDomain,
    ) -> Option<&[Category]> {
        self.entries
            .get(hostname)
            .or_else(|| self.entries.get(registrable.as_str()))
            .map(Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains_key(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::SuffixList;
    use alloc::vec;

    fn setup() -> (DomainCategoryList, SuffixList) {
        let t = Taxonomy::new(["technology & computing", "news", "sports"]).unwrap();
        let mut list = DomainCategoryList::new();
        list.insert(&t, "techcrunch.com", ["technology & computing"]).unwrap();
        list.insert(&t, "sport.example.com", ["sports"]).unwrap();
        let psl = SuffixList::parse("// ===BEGIN ICANN DOMAINS===\ncom\norg\n").unwrap();
        (list, psl)
    }

    fn lookup<'a>(list: &'a DomainCategoryList, psl: &SuffixList, host: &str) -> Option<Vec<&'a str>> {
        list.categorize_by_domain(host, &psl.registrable_domain(host))
            .map(|c| c.iter().map(Category::as_str).collect())
    }

    #[test]
    fn exact_then_registrable() {
        let (list, psl) = setup();
        assert_eq!(lookup(&list, &psl, "techcrunch.com"), Some(vec!["technology & computing"]));
        assert_eq!(
            lookup(&list, &psl, "blog.techcrunch.com"),
            Some(vec!["technology & computing"])
        );
        assert_eq!(lookup(&list, &psl, "example.org"), None);
        // A hostname entry does not cover its siblings.
        assert_eq!(lookup(&list, &psl, "sport.example.com"), Some(vec!["sports"]));
        assert_eq!(lookup(&list, &psl, "www.example.com"), None);
    }

    #[test]
    fn rejects_bad_entries() {
        let t = Taxonomy::new(["a", "b", "c", "d"]).unwrap();
        let mut list = DomainCategoryList::new();
        assert!(matches!(
            list.insert(&t, "https://x.com/", ["a"]),
            Err(DomainListError::BadKey(_))
        ));
        assert!(matches!(
            list.insert(&t, "x.com", ["a", "b", "c", "d"]),
            Err(DomainListError::TooManyCategories(_))
        ));
        assert!(matches!(
            list.insert(&t, "x.com", []),
            Err(DomainListError::NoCategories(_))
        ));
        assert!(matches!(
            list.insert(&t, "x.com", ["zzz"]),
            Err(DomainListError::UnknownCategory(_))
        ));
    }
}
