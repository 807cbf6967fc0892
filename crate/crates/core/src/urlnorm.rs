//! URL normalization used for cache keys, per-URL policies and page hashes.

use alloc::string::{String, ToString};

use url::Url;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("malformed url `{0}`")]
pub struct MalformedUrl(pub String);

/// Lowercases scheme and host, drops the default port and the fragment.
/// Requires an absolute URL with a host.
pub fn normalize_url(input: &str) -> Result<String, MalformedUrl> {
    let mut url = parse_absolute(input)?;
    url.set_fragment(None);
    Ok(url.into())
}

/// Host of an absolute URL, lowercased, without port.
pub fn url_host(input: &str) -> Option<String> {
    let url = parse_absolute(input).ok()?;
    url.host_str().map(|h| h.to_string())
}

pub(crate) fn parse_absolute(input: &str) -> Result<Url, MalformedUrl> {
    let url = Url::parse(input.trim()).map_err(|_| MalformedUrl(input.to_string()))?;
    match url.host_str() {
        Some(h) if !h.is_empty() => Ok(url),
        _ => Err(MalformedUrl(input.to_string())),
    }
}
