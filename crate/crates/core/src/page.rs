//! Turning a fetched document into categorization features.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::domain::SuffixList;
use crate::html;
use crate::taxonomy::{Category, Taxonomy};
use crate::urlnorm::{normalize_url, parse_absolute, MalformedUrl};

/// Bodies longer than this are truncated before extraction.
pub const DEFAULT_BODY_CAP: usize = 2 * 1024 * 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawPage {
    pub url: String,
    pub content_type: String,
    pub body: Vec<u8>,
    pub fetch_status: u16,
}

impl RawPage {
    /// Truncates `body` to [`DEFAULT_BODY_CAP`].
    pub fn new(url: &str, content_type: &str, body: Vec<u8>, fetch_status: u16) -> Self {
        Self::with_cap(url, content_type, body, fetch_status, DEFAULT_BODY_CAP)
    }

    pub fn with_cap(
        url: &str,
        content_type: &str,
        mut body: Vec<u8>,
        fetch_status: u16,
        cap: usize,
    ) -> Self {
        body.truncate(cap);
        RawPage {
            url: url.to_string(),
            content_type: content_type.to_string(),
            body,
            fetch_status,
        }
    }

    pub fn is_html(&self) -> bool {
        let ct = self.content_type.to_ascii_lowercase();
        if ct.trim().is_empty() {
            let start = self.body.iter().position(|b| !b.is_ascii_whitespace());
            return start.is_some_and(|i| self.body[i] == b'<');
        }
        ct.contains("html")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PageFeatures {
    /// Lowercase scheme and host, no default port, no fragment.
    pub normalized_url: String,
    pub hostname: String,
    pub registrable_domain: String,
    pub title: String,
    pub keywords: Vec<String>,
    pub body_text: String,
    pub declared_category: Option<Category>,
    /// Absolute http(s) URLs.
    pub iframe_sources: Vec<String>,
}

impl PageFeatures {
    /// URL-derived fields only; everything else empty.
    pub fn from_url(url: &str, suffixes: &SuffixList) -> Result<Self, MalformedUrl> {
        let normalized_url = normalize_url(url)?;
        let parsed = parse_absolute(&normalized_url)?;
        let hostname = parsed.host_str().unwrap_or_default().to_string();
        let registrable_domain = suffixes.registrable_domain(&hostname).as_str().to_string();
        Ok(PageFeatures {
            normalized_url,
            hostname,
            registrable_domain,
            ..PageFeatures::default()
        })
    }

    /// Sets the declared category if `name` is a top-level category;
    /// anything else is ignored.
    pub fn declare_category(&mut self, name: &str, taxonomy: &Taxonomy) {
        self.declared_category = taxonomy.resolve(name).ok();
    }
}

/// Extracts title, meta keywords, declared category, visible body text and
/// iframe sources. Non-HTML documents give URL-only features. Malformed
/// markup never fails; only an unusable page URL does.
pub fn extract_features(
    page: &RawPage,
    taxonomy: &Taxonomy,
    suffixes: &SuffixList,
) -> Result<PageFeatures, MalformedUrl> {
    let mut features = PageFeatures::from_url(&page.url, suffixes)?;
    if !page.is_html() {
        return Ok(features);
    }
    let text = String::from_utf8_lossy(&page.body);
    let scan = html::scan(&text);
    features.title = scan.title.unwrap_or_default();
    features.keywords = scan
        .keywords
        .map(|k| split_keywords(&k))
        .unwrap_or_default();
    features.body_text = scan.text;
    if let Some(declared) = scan.page_category {
        features.declare_category(&declared, taxonomy);
    }

    let page_url = parse_absolute(&features.normalized_url)?;
    let base = scan
        .base_href
        .and_then(|href| page_url.join(&href).ok())
        .unwrap_or(page_url);
    for src in scan.iframe_srcs {
        if src.is_empty() {
            continue;
        }
        if let Ok(abs) = base.join(&src) {
            if matches!(abs.scheme(), "http" | "https") && abs.host_str().is_some() {
                features.iframe_sources.push(abs.into());
            }
        }
    }
    Ok(features)
}

fn split_keywords(raw: &str) -> Vec<String> {
    raw.split(',')
        .map(html::collapse_whitespace)
        .filter(|k| !k.is_empty())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn env() -> (Taxonomy, SuffixList) {
        (
            Taxonomy::new(["religion", "news", "sports"]).unwrap(),
            SuffixList::parse("// ===BEGIN ICANN DOMAINS===\ncom\nexample\nuk\nco.uk\n").unwrap(),
        )
    }

    fn html(url: &str, body: &str) -> RawPage {
        RawPage::new(url, "text/html; charset=utf-8", body.as_bytes().to_vec(), 200)
    }

    #[test]
    fn minimal_title() {
        let (t, s) = env();
        let f = extract_features(&html("https://pub.example/p", "<title>Bible study</title>"), &t, &s).unwrap();
        assert_eq!(f.title, "Bible study");
        assert!(f.keywords.is_empty());
        assert!(f.iframe_sources.is_empty());
        assert_eq!(f.hostname, "pub.example");
    }

    #[test]
    fn relative_iframe_resolves_against_page() {
        let (t, s) = env();
        let f = extract_features(&html("https://pub.example/p", "<iframe src=\"/ad\"></iframe>"), &t, &s).unwrap();
        assert_eq!(f.iframe_sources, ["https://pub.example/ad"]);
    }

    #[test]
    fn iframe_filtering_and_base() {
        let (t, s) = env();
        let body = "<base href=\"https://cdn.example/x/\"><iframe src=\"a\"></iframe>\
                    <iframe src=\"javascript:void(0)\"></iframe><iframe src=\"\"></iframe>\
                    <iframe src=\"//ads.example/slot\"></iframe>";
        let f = extract_features(&html("https://pub.example/p", body), &t, &s).unwrap();
        assert_eq!(f.iframe_sources, ["https://cdn.example/x/a", "https://ads.example/slot"]);
    }

    #[test]
    fn keywords_and_declared_category() {
        let (t, s) = env();
        let body = "<meta name=keywords content=\" Church , faith,, bible study \">\
                    <meta name=\"page-category\" content=\"Religion\"><p>Football scores</p>";
        let f = extract_features(&html("https://www.bbc.co.uk/x#frag", body), &t, &s).unwrap();
        assert_eq!(f.keywords, vec!["Church", "faith", "bible study"]);
        assert_eq!(f.declared_category, Some(Category::new("religion")));
        assert_eq!(f.body_text, "Football scores");
        assert_eq!(f.registrable_domain, "bbc.co.uk");
        assert_eq!(f.normalized_url, "https://www.bbc.co.uk/x");
    }

    #[test]
    fn invalid_declared_category_ignored() {
        let (t, s) = env();
        let body = "<meta name=\"page-category\" content=\"astrology\">";
        let f = extract_features(&html("https://pub.example/", body), &t, &s).unwrap();
        assert_eq!(f.declared_category, None);
    }

    #[test]
    fn non_html_is_url_only() {
        let (t, s) = env();
        let page = RawPage::new("https://pub.example/img.png", "image/png", b"<title>x</title>".to_vec(), 200);
        let f = extract_features(&page, &t, &s).unwrap();
        assert_eq!(f, PageFeatures::from_url("https://pub.example/img.png", &s).unwrap());
    }

    #[test]
    fn truncated_html_gives_prefix_features() {
        let (t, s) = env();
        let f = extract_features(&html("https://pub.example/", "<title>Match report</title><p>Goal in the 90th min"), &t, &s).unwrap();
        assert_eq!(f.title, "Match report");
        assert_eq!(f.body_text, "Goal in the 90th min");
    }

    #[test]
    fn body_cap_truncates() {
        let page = RawPage::with_cap("https://pub.example/", "text/html", vec![b'a'; 100], 200, 10);
        assert_eq!(page.body.len(), 10);
        assert_eq!(RawPage::new("https://p.example/", "", vec![b'a'; 10], 200).body.len(), 10);
    }

    #[test]
    fn malformed_page_url() {
        let (t, s) = env();
        assert!(extract_features(&html("nope", "<title>x</title>"), &t, &s).is_err());
    }

    proptest! {
        #[test]
        fn never_panics_on_arbitrary_bytes(body in proptest::collection::vec(any::<u8>(), 0..2048)) {
            let (t, s) = env();
            let page = RawPage::new("https://pub.example/p", "text/html", body, 200);
            let f = extract_features(&page, &t, &s).unwrap();
            for src in &f.iframe_sources {
                prop_assert!(src.starts_with("http://") || src.starts_with("https://"));
            }
        }

        #[test]
        fn never_panics_on_tag_soup(
            parts in proptest::collection::vec(
                prop_oneof![
                    Just("<"), Just(">"), Just("</"), Just("<!--"), Just("-->"), Just("\""), Just("'"),
                    Just("<title>"), Just("</title>"), Just("<script>"), Just("</script"), Just("<iframe src="),
                    Just("<meta name=keywords content="), Just("&amp"), Just("&#x1F600;"), Just("é"), Just("text "),
                    Just("="), Just("/"), Just("<base href=")
                ],
                0..64,
            )
        ) {
            let (t, s) = env();
            let body: String = parts.concat();
            let page = RawPage::new("https://pub.example/p", "text/html", body.into_bytes(), 200);
            let f = extract_features(&page, &t, &s).unwrap();
            for src in &f.iframe_sources {
                prop_assert!(src.starts_with("http://") || src.starts_with("https://"));
            }
        }
    }
}
