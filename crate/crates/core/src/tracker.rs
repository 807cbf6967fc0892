//! Tracker heuristic and the per-request block decision.
//!
//! A third-party domain becomes a tracker once it has been seen on
//! [`TRACKER_THRESHOLD`] distinct first-party domains. On a blocked page a
//! request is refused only if it is third-party, a tracker, and not on the
//! allowlist of domains pages need to work.

use alloc::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::domain::{RegistrableDomain, SuffixList};
use crate::policy::{PolicyDecision, Verdict};

pub const TRACKER_THRESHOLD: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("`{0}` cannot be a third party on its own pages")]
pub struct SameParty(pub RegistrableDomain);

/// Third-party domain to the set of first parties it was seen on.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TrackerRegistry {
    observations: BTreeMap<RegistrableDomain, BTreeSet<RegistrableDomain>>,
}

impl TrackerRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns whether the set grew.
    pub fn record_observation(
        &mut self,
        third: &RegistrableDomain,
        first: &RegistrableDomain,
    ) -> Result<bool, SameParty> {
        if third == first {
            return Err(SameParty(third.clone()));
        }
        if let Some(set) = self.observations.get_mut(third) {
            return Ok(set.insert(first.clone()));
        }
        let mut set = BTreeSet::new();
        set.insert(first.clone());
        self.observations.insert(third.clone(), set);
        Ok(true)
    }

    pub fn first_party_count(&self, domain: &str) -> usize {
        self.observations.get(domain).map_or(0, BTreeSet::len)
    }

    pub fn is_tracker(&self, domain: &str) -> bool {
        self.first_party_count(domain) >= TRACKER_THRESHOLD
    }

    pub fn first_parties(&self, domain: &str) -> impl Iterator<Item = &RegistrableDomain> {
        self.observations.get(domain).into_iter().flatten()
    }

    /// All known trackers, sorted.
    pub fn trackers(&self) -> impl Iterator<Item = &RegistrableDomain> {
        self.observations
            .iter()
            .filter(|(_, s)| s.len() >= TRACKER_THRESHOLD)
            .map(|(d, _)| d)
    }

    /// Every observed third party with its distinct first-party count.
    pub fn iter_counts(&self) -> impl Iterator<Item = (&RegistrableDomain, usize)> {
        self.observations.iter().map(|(d, s)| (d, s.len()))
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    /// Drops entries that violate the registry invariants (self-observation),
    /// as can happen in a hand-edited file.
    pub fn sanitized(mut self) -> Self {
        for (third, firsts) in self.observations.iter_mut() {
            firsts.remove(third);
        }
        self.observations.retain(|_, s| !s.is_empty());
        self
    }
}

/// Registrable domains essential for page functionality (CDNs and similar).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AllowedDomains {
    domains: BTreeSet<RegistrableDomain>,
}

impl AllowedDomains {
    pub fn new<I, S>(domains: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        AllowedDomains {
            domains: domains
                .into_iter()
                .map(|d| RegistrableDomain::new(d.as_ref()))
                .filter(|d| !d.as_str().is_empty())
                .collect(),
        }
    }

    pub fn contains(&self, domain: &str) -> bool {
        self.domains.contains(domain)
    }

    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &RegistrableDomain> {
        self.domains.iter()
    }
}

/// Everything learned about one subresource request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RequestCheck {
    pub third_party: bool,
    pub domain: RegistrableDomain,
    pub tracker: bool,
    pub allowlisted: bool,
    pub blocked: bool,
}

/// Records the observation when the request is third-party, then decides.
/// Recording happens before the tracker query and regardless of the page
/// verdict or the allowlist.
pub fn evaluate_request(
    request_host: &str,
    page_host: &str,
    decision: &PolicyDecision,
    registry: &mut TrackerRegistry,
    allowlist: &AllowedDomains,
    suffixes: &SuffixList,
) -> RequestCheck {
    let domain = suffixes.registrable_domain(request_host);
    let first = suffixes.registrable_domain(page_host);
    let third_party = domain != first;
    if third_party {
        // Cannot fail: the domains differ.
        let _ = registry.record_observation(&domain, &first);
    }
    let tracker = third_party && registry.is_tracker(domain.as_str());
    let allowlisted = allowlist.contains(domain.as_str());
    let blocked = decision.verdict == Verdict::Block && third_party && !allowlisted && tracker;
    RequestCheck {
        third_party,
        domain,
        tracker,
        allowlisted,
        blocked,
    }
}

pub fn should_block_request(
    request_host: &str,
    page_host: &str,
    decision: &PolicyDecision,
    registry: &mut TrackerRegistry,
    allowlist: &AllowedDomains,
    suffixes: &SuffixList,
) -> bool {
    evaluate_request(request_host, page_host, decision, registry, allowlist, suffixes).blocked
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policy::DecisionReason;
    use alloc::format;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn psl() -> SuffixList {
        SuffixList::parse("// ===BEGIN ICANN DOMAINS===\ncom\nnet\nfr\n").unwrap()
    }

    fn d(s: &str) -> RegistrableDomain {
        RegistrableDomain::new(s)
    }

    fn decision(v: Verdict) -> PolicyDecision {
        PolicyDecision {
            verdict: v,
            reason: if v == Verdict::Block {
                DecisionReason::UrlOverride
            } else {
                DecisionReason::DefaultAllow
            },
            matched_categories: Vec::new(),
        }
    }

    #[test]
    fn observation_counting() {
        let mut r = TrackerRegistry::new();
        assert!(r.record_observation(&d("t.com"), &d("a.com")).unwrap());
        assert!(!r.record_observation(&d("t.com"), &d("a.com")).unwrap());
        assert_eq!(r.first_party_count("t.com"), 1);
        r.record_observation(&d("t.com"), &d("b.com")).unwrap();
        assert!(!r.is_tracker("t.com"));
        r.record_observation(&d("t.com"), &d("c.com")).unwrap();
        assert_eq!(r.first_party_count("t.com"), 3);
        assert!(r.is_tracker("t.com"));
        assert!(!r.is_tracker("unseen.com"));
        assert_eq!(r.record_observation(&d("t.com"), &d("t.com")), Err(SameParty(d("t.com"))));
    }

    #[test]
    fn lemde_only_on_lemonde_is_not_a_tracker() {
        let mut r = TrackerRegistry::new();
        let s = psl();
        let allow = AllowedDomains::default();
        for _ in 0..10 {
            let c = evaluate_request("lemde.fr", "www.lemonde.fr", &decision(Verdict::Block), &mut r, &allow, &s);
            assert!(c.third_party && !c.tracker && !c.blocked);
        }
    }

    #[test]
    fn conjunction_truth_table() {
        let s = psl();
        for blocked_page in [false, true] {
            for third in [false, true] {
                for allowlisted in [false, true] {
                    for tracker in [false, true] {
                        let mut r = TrackerRegistry::new();
                        let req = if third { "px.track.net" } else { "static.pub.com" };
                        let dom = s.registrable_domain(req);
                        if tracker {
                            for fp in ["x.com", "y.com", "z.com"] {
                                let _ = r.record_observation(&dom, &d(fp));
                            }
                        }
                        let allow = if allowlisted {
                            AllowedDomains::new([dom.as_str()])
                        } else {
                            AllowedDomains::default()
                        };
                        let v = if blocked_page { Verdict::Block } else { Verdict::Allow };
                        let got = should_block_request(req, "www.pub.com", &decision(v), &mut r, &allow, &s);
                        // Same-party requests are never trackers of their own page.
                        let want = blocked_page && third && !allowlisted && tracker;
                        assert_eq!(got, want, "{blocked_page} {third} {allowlisted} {tracker}");
                    }
                }
            }
        }
    }

    #[test]
    fn allowed_page_records_but_never_blocks() {
        let s = psl();
        let mut r = TrackerRegistry::new();
        let allow = AllowedDomains::new(["cdn.net"]);
        for fp in ["a.com", "b.com", "c.com", "e.com"] {
            let c = evaluate_request("cdn.net", fp, &decision(Verdict::Allow), &mut r, &allow, &s);
            assert!(!c.blocked);
            let c = evaluate_request("ads.track.net", fp, &decision(Verdict::Allow), &mut r, &allow, &s);
            assert!(!c.blocked);
        }
        assert!(r.is_tracker("cdn.net"));
        let c = evaluate_request("cdn.net", "f.com", &decision(Verdict::Block), &mut r, &allow, &s);
        assert!(c.tracker && c.allowlisted && !c.blocked);
        let c = evaluate_request("ads.track.net", "f.com", &decision(Verdict::Block), &mut r, &allow, &s);
        assert!(c.blocked);
    }

    #[test]
    fn sanitized_drops_self_observations() {
        let json_like = {
            let mut r = TrackerRegistry::new();
            r.record_observation(&d("t.com"), &d("a.com")).unwrap();
            r.observations.get_mut("t.com").unwrap().insert(d("t.com"));
            r.observations.insert(d("u.com"), [d("u.com")].into_iter().collect());
            r
        };
        let r = json_like.sanitized();
        assert_eq!(r.len(), 1);
        assert_eq!(r.first_party_count("t.com"), 1);
    }

    proptest! {
        // Tracker status only ever turns on, and never before the third
        // distinct first party.
        #[test]
        fn monotone_and_never_early(visits in proptest::collection::vec((0u8..6, 0u8..8), 1..200)) {
            let s = psl();
            let mut r = TrackerRegistry::new();
            let allow = AllowedDomains::default();
            let mut seen: BTreeMap<u8, BTreeSet<u8>> = BTreeMap::new();
            let mut was_tracker: BTreeSet<u8> = BTreeSet::new();
            for (t, f) in visits {
                let req = format!("cdn.t{t}.net");
                let page = format!("www.p{f}.com");
                let c = evaluate_request(&req, &page, &decision(Verdict::Block), &mut r, &allow, &s);
                seen.entry(t).or_default().insert(f);
                prop_assert_eq!(c.blocked, seen[&t].len() >= 3);
                if was_tracker.contains(&t) {
                    prop_assert!(c.tracker);
                }
                if c.tracker {
                    was_tracker.insert(t);
                }
            }
        }
    }
}
