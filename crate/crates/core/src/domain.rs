//! Registrable domains (eTLD+1) under a bundled public-suffix snapshot.
//!
//! Both the first/third-party test and the tracker counting work on
//! registrable domains, so `static.lemonde.fr` and `www.lemonde.fr` are the
//! same party while `lemde.fr` is a different one.

use alloc::string::String;
use core::borrow::Borrow;
use core::fmt;
use core::net::Ipv4Addr;
use core::str::FromStr;

use publicsuffix::{List, Psl};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RegistrableDomain(String);

impl RegistrableDomain {
    /// Wraps an already-reduced domain, lowercasing it. Use
    /// [`SuffixList::registrable_domain`] to reduce a hostname.
    pub fn new(domain: &str) -> Self {
        RegistrableDomain(domain.trim().trim_end_matches('.').to_lowercase())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for RegistrableDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Borrow<str> for RegistrableDomain {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl AsRef<str> for RegistrableDomain {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid public suffix snapshot: {0}")]
pub struct SuffixListError(String);

/// Public suffix rules in the standard list format (ICANN and PRIVATE
/// sections, wildcard and exception rules).
#[derive(Debug, Clone)]
pub struct SuffixList {
    list: List,
}

impl SuffixList {
    pub fn parse(snapshot: &str) -> Result<Self, SuffixListError> {
        List::from_str(snapshot)
            .map(|list| SuffixList { list })
            .map_err(|e| SuffixListError(alloc::format!("{e:?}")))
    }

    /// eTLD+1 of `host`. IP literals, single-label hosts and hosts that are
    /// themselves public suffixes come back unchanged (lowercased).
    pub fn registrable_domain(&self, host: &str) -> RegistrableDomain {
        let host = host.trim().trim_end_matches('.').to_lowercase();
        if host.contains(':') || host.starts_with('[') || Ipv4Addr::from_str(&host).is_ok() {
            return RegistrableDomain(host);
        }
        if !host.contains('.') || host.split('.').any(str::is_empty) {
            return RegistrableDomain(host);
        }
        match self.list.domain(host.as_bytes()) {
            Some(domain) => match core::str::from_utf8(domain.as_bytes()) {
                Ok(d) => RegistrableDomain(String::from(d)),
                Err(_) => RegistrableDomain(host),
            },
            None => RegistrableDomain(host),
        }
    }

    /// True when the two hosts belong to different registrable domains.
    pub fn is_third_party(&self, request_host: &str, page_host: &str) -> bool {
        self.registrable_domain(request_host) != self.registrable_domain(page_host)
    }
}
