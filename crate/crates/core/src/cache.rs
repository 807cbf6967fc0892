//! Least-recently-used cache of category assignments keyed by normalized URL.

use alloc::string::String;
use core::num::NonZeroUsize;

use lru::LruCache;

use crate::categorizer::CategoryAssignment;

/// Number of recently visited pages whose assignment is remembered.
pub const CACHE_CAPACITY: usize = 500;

pub struct CategoryCache {
    inner: LruCache<String, CategoryAssignment>,
}

impl core::fmt::Debug for CategoryCache {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("CategoryCache")
            .field("len", &self.inner.len())
            .field("capacity", &self.inner.cap())
            .finish()
    }
}

impl Default for CategoryCache {
    fn default() -> Self {
        Self::new(CACHE_CAPACITY)
    }
}

impl CategoryCache {
    /// A capacity of zero is treated as one.
    pub fn new(capacity: usize) -> Self {
        let cap = NonZeroUsize::new(capacity).unwrap_or(NonZeroUsize::MIN);
        CategoryCache {
            inner: LruCache::new(cap),
        }
    }

    /// Looks up and marks the entry as most recently used.
    pub fn get(&mut self, url: &str) -> Option<&CategoryAssignment> {
        self.inner.get(url)
    }

    /// Looks up without touching recency.
    pub fn peek(&self, url: &str) -> Option<&CategoryAssignment> {
        self.inner.peek(url)
    }

    pub fn insert(&mut self, url: String, assignment: CategoryAssignment) {
        self.inner.put(url, assignment);
    }

    pub fn invalidate(&mut self, url: &str) -> bool {
        self.inner.pop(url).is_some()
    }

    pub fn clear(&mut self) {
        self.inner.clear();
    }

    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.inner.cap().get()
    }
}
