//! Pseudonymous per-page record that analytics consume.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::categorizer::{AssignmentSource, CategoryAssignment};
use crate::domain::RegistrableDomain;
use crate::policy::{DecisionReason, PolicyDecision, Verdict};
use crate::taxonomy::Category;
use crate::tracker::RequestCheck;

/// First 8 bytes of SHA-256 over the normalized URL, as 16 hex digits.
pub fn page_hash(normalized_url: &str) -> String {
    let digest = Sha256::digest(normalized_url.as_bytes());
    let mut out = String::with_capacity(16);
    for b in &digest[..8] {
        let _ = write!(out, "{b:02x}");
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BrowsingEvent {
    pub timestamp: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub client: Option<String>,
    pub page_hash: String,
    pub categories: Vec<Category>,
    pub source: AssignmentSource,
    pub verdict: Verdict,
    pub reason: DecisionReason,
    #[serde(default)]
    pub third_party_domains: BTreeSet<RegistrableDomain>,
    /// Third parties that were trackers at the time of the request.
    #[serde(default)]
    pub tracker_domains: BTreeSet<RegistrableDomain>,
    #[serde(default)]
    pub blocked_domains: BTreeSet<RegistrableDomain>,
    #[serde(default)]
    pub iframe_urls: Vec<String>,
}

impl BrowsingEvent {
    pub fn new(
        timestamp: u64,
        client: Option<String>,
        normalized_url: &str,
        assignment: &CategoryAssignment,
        decision: &PolicyDecision,
    ) -> Self {
        BrowsingEvent {
            timestamp,
            client,
            page_hash: page_hash(normalized_url),
            categories: assignment.categories.clone(),
            source: assignment.source,
            verdict: decision.verdict,
            reason: decision.reason,
            third_party_domains: BTreeSet::new(),
            tracker_domains: BTreeSet::new(),
            blocked_domains: BTreeSet::new(),
            iframe_urls: Vec::new(),
        }
    }

    pub fn record_request(&mut self, check: &RequestCheck) {
        if !check.third_party {
            return;
        }
        self.third_party_domains.insert(check.domain.clone());
        if check.tracker {
            self.tracker_domains.insert(check.domain.clone());
        }
        if check.blocked {
            self.blocked_domains.insert(check.domain.clone());
        }
    }

    /// Appends unless already present.
    pub fn add_iframe(&mut self, url: &str) {
        if !self.iframe_urls.iter().any(|u| u == url) {
            self.iframe_urls.push(String::from(url));
        }
    }

    /// Updates categories and verdict after a recategorization, keeping the
    /// observed requests.
    pub fn redecide(&mut self, assignment: &CategoryAssignment, decision: &PolicyDecision) {
        self.categories = assignment.categories.clone();
        self.source = assignment.source;
        self.verdict = decision.verdict;
        self.reason = decision.reason;
    }

    pub fn is_blocked(&self) -> bool {
        self.verdict == Verdict::Block
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_is_sha256_prefix() {
        // sha256("abc") = ba7816bf8f01cfea 414140de...
        assert_eq!(page_hash("abc"), "ba7816bf8f01cfea");
        assert_eq!(page_hash("https://a.b/").len(), 16);
    }

    #[test]
    fn records_only_third_parties() {
        let mut e = BrowsingEvent::new(
            0,
            None,
            "https://a.example/",
            &CategoryAssignment::uncategorized(),
            &PolicyDecision {
                verdict: Verdict::Block,
                reason: DecisionReason::UrlOverride,
                matched_categories: Vec::new(),
            },
        );
        let check = |d: &str, third, tracker, blocked| RequestCheck {
            third_party: third,
            domain: RegistrableDomain::new(d),
            tracker,
            allowlisted: false,
            blocked,
        };
        e.record_request(&check("a.example", false, false, false));
        e.record_request(&check("z.example", true, true, true));
        e.record_request(&check("m.example", true, false, false));
        let names = |s: &BTreeSet<RegistrableDomain>| s.iter().map(|d| d.as_str().into()).collect::<Vec<String>>();
        assert_eq!(names(&e.third_party_domains), ["m.example", "z.example"]);
        assert_eq!(names(&e.blocked_domains), ["z.example"]);
        e.add_iframe("https://x/");
        e.add_iframe("https://x/");
        assert_eq!(e.iframe_urls.len(), 1);
        assert!(e.blocked_domains.is_subset(&e.third_party_domains));
    }
}
