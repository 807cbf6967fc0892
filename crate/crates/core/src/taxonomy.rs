//! Two-level interest taxonomy: top-level categories users interact with,
//! and bottom-level subcategories that each roll up to one top-level parent.

use alloc::borrow::ToOwned;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

/// A top-level category name (lowercase, trimmed).
///
/// Construction through [`Taxonomy::resolve`] guarantees the name is part of
/// the taxonomy; [`Category::new`] only normalizes case and whitespace and is
/// meant for toy taxonomies and tests.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Category(String);

impl Category {
    pub fn new(name: &str) -> Self {
        Category(name.trim().to_lowercase())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Category {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("unknown category `{0}`")]
pub struct UnknownCategory(pub String);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TaxonomyError {
    #[error("taxonomy has no top-level categories")]
    Empty,
    #[error("empty category name")]
    EmptyName,
    #[error("duplicate top-level category `{0}`")]
    Duplicate(String),
    #[error("subcategory `{sub}` already belongs to `{parent}`")]
    SubcategoryConflict { sub: String, parent: String },
    #[error(transparent)]
    Unknown(#[from] UnknownCategory),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Taxonomy {
    top: Vec<Category>,
    subcategories: BTreeMap<String, Category>,
}

impl Taxonomy {
    /// Builds a taxonomy from top-level names, keeping their order.
    pub fn new<I, S>(top: I) -> Result<Self, TaxonomyError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut seen = Vec::new();
        for name in top {
            let cat = Category::new(name.as_ref());
            if cat.as_str().is_empty() {
                return Err(TaxonomyError::EmptyName);
            }
            if seen.contains(&cat) {
                return Err(TaxonomyError::Duplicate(cat.0));
            }
            seen.push(cat);
        }
        if seen.is_empty() {
            return Err(TaxonomyError::Empty);
        }
        Ok(Taxonomy {
            top: seen,
            subcategories: BTreeMap::new(),
        })
    }

    /// Attaches bottom-level subcategories. Consumes the taxonomy so that a
    /// loaded instance cannot be changed afterwards.
    pub fn with_subcategories<I, A, B>(mut self, pairs: I) -> Result<Self, TaxonomyError>
    where
        I: IntoIterator<Item = (A, B)>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        for (sub, parent) in pairs {
            let sub = sub.as_ref().trim().to_lowercase();
            if sub.is_empty() {
                return Err(TaxonomyError::EmptyName);
            }
            let parent = self.resolve(parent.as_ref())?;
            match self.subcategories.get(&sub) {
                Some(existing) if *existing != parent => {
                    return Err(TaxonomyError::SubcategoryConflict {
                        sub,
                        parent: existing.to_string(),
                    })
                }
                _ => {
                    self.subcategories.insert(sub, parent);
                }
            }
        }
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.top.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top.is_empty()
    }

    pub fn categories(&self) -> &[Category] {
        &self.top
    }

    pub fn contains(&self, category: &Category) -> bool {
        self.top.contains(category)
    }

    /// Looks a name up among the top-level categories (case-insensitive).
    pub fn resolve(&self, name: &str) -> Result<Category, UnknownCategory> {
        let wanted = Category::new(name);
        if self.top.contains(&wanted) {
            Ok(wanted)
        } else {
            Err(UnknownCategory(name.to_owned()))
        }
    }

    pub fn parent_of(&self, subcategory: &str) -> Option<&Category> {
        self.subcategories.get(&subcategory.trim().to_lowercase())
    }

    pub fn subcategories(&self) -> impl Iterator<Item = (&str, &Category)> {
        self.subcategories.iter().map(|(k, v)| (k.as_str(), v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolve_is_case_insensitive() {
        let t = Taxonomy::new(["news", "Health & Fitness"]).unwrap();
        assert_eq!(t.resolve(" HEALTH & fitness").unwrap().as_str(), "health & fitness");
        assert_eq!(t.resolve("bogus"), Err(UnknownCategory("bogus".into())));
    }

    #[test]
    fn rejects_duplicates_and_empty() {
        assert_eq!(
            Taxonomy::new(["news", "News"]),
            Err(TaxonomyError::Duplicate("news".into()))
        );
        assert_eq!(Taxonomy::new(Vec::<&str>::new()), Err(TaxonomyError::Empty));
    }

    #[test]
    fn subcategory_has_one_parent() {
        let t = Taxonomy::new(["health & fitness", "personal finance"]).unwrap();
        let t = t
            .with_subcategories([("diabetes", "health & fitness"), ("insurance", "personal finance")])
            .unwrap();
        assert_eq!(t.parent_of("Diabetes").unwrap().as_str(), "health & fitness");
        let err = t
            .clone()
            .with_subcategories([("diabetes", "personal finance")])
            .unwrap_err();
        assert!(matches!(err, TaxonomyError::SubcategoryConflict { .. }));
        assert!(t.with_subcategories([("x", "nope")]).is_err());
    }
}
