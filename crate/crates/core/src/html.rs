//! Forgiving tag-level HTML scanner.
//!
//! Not a tree builder: it walks tags left to right, tracks only whether it is
//! inside a raw-text element, and recovers from anything malformed by
//! treating the rest of the input as text or skipping it.

use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Default, PartialEq)]
pub(crate) struct Scan {
    pub title: Option<String>,
    pub keywords: Option<String>,
    pub page_category: Option<String>,
    pub iframe_srcs: Vec<String>,
    pub base_href: Option<String>,
    pub text: String,
}

/// Elements whose content is never visible text.
const HIDDEN: &[&str] = &["script", "style", "noscript", "template", "textarea", "title"];

pub(crate) fn scan(html: &str) -> Scan {
    let bytes = html.as_bytes();
    let mut out = Scan::default();
    let mut text = String::new();
    let mut i = 0;
    while i < bytes.len() {
        let Some(lt) = memchr(b'<', bytes, i) else {
            text.push_str(&html[i..]);
            break;
        };
        text.push_str(&html[i..lt]);
        i = lt;
        let rest = &bytes[i..];
        if rest.starts_with(b"<!--") {
            i = find(bytes, i + 4, b"-->").map_or(bytes.len(), |p| p + 3);
            continue;
        }
        if rest.starts_with(b"<!") || rest.starts_with(b"<?") {
            i = memchr(b'>', bytes, i).map_or(bytes.len(), |p| p + 1);
            continue;
        }
        let closing = rest.get(1) == Some(&b'/');
        let name_start = i + 1 + usize::from(closing);
        let name_end = bytes[name_start..]
            .iter()
            .position(|b| !(b.is_ascii_alphanumeric() || *b == b'-' || *b == b':'))
            .map_or(bytes.len(), |p| name_start + p);
        if name_end == name_start || !bytes[name_start].is_ascii_alphabetic() {
            // A stray '<' is text.
            text.push('<');
            i += 1;
            continue;
        }
        let name = html[name_start..name_end].to_ascii_lowercase();
        let (attrs, tag_end) = parse_attributes(html, name_end);
        i = tag_end;
        separate(&mut text);
        if closing {
            continue;
        }
        match name.as_str() {
            "meta" => {
                let get = |k: &str| attrs.iter().find(|(n, _)| n == k).map(|(_, v)| v);
                let meta_name = get("name").map(|n| n.trim().to_ascii_lowercase());
                if let (Some(n), Some(content)) = (meta_name, get("content")) {
                    if n == "keywords" && out.keywords.is_none() {
                        out.keywords = Some(decode_entities(content));
                    } else if n == "page-category" && out.page_category.is_none() {
                        out.page_category = Some(decode_entities(content));
                    }
                }
            }
            "iframe" => {
                if let Some((_, src)) = attrs.iter().find(|(n, _)| n == "src") {
                    out.iframe_srcs.push(decode_entities(src.trim()));
                }
            }
            "base" if out.base_href.is_none() => {
                if let Some((_, href)) = attrs.iter().find(|(n, _)| n == "href") {
                    out.base_href = Some(decode_entities(href.trim()));
                }
            }
            _ => {}
        }
        if HIDDEN.contains(&name.as_str()) {
            let close = closing_tag(bytes, i, &name);
            let inner = &html[i..close.0];
            if name == "title" && out.title.is_none() {
                out.title = Some(collapse_whitespace(&decode_entities(inner)));
            }
            i = close.1;
        }
    }
    out.text = collapse_whitespace(&decode_entities(&text));
    out
}

/// Keeps words from adjacent elements apart (`<p>a</p><p>b</p>`).
fn separate(text: &mut String) {
    if !text.ends_with(' ') && !text.is_empty() {
        text.push(' ');
    }
}

/// Parses attributes starting right after the tag name; returns them
/// (names lowercased, values raw) and the index just past the closing `>`.
fn parse_attributes(html: &str, mut i: usize) -> (Vec<(String, String)>, usize) {
    let bytes = html.as_bytes();
    let mut attrs = Vec::new();
    loop {
        while i < bytes.len() && (bytes[i].is_ascii_whitespace() || bytes[i] == b'/') {
            i += 1;
        }
        if i >= bytes.len() {
            return (attrs, bytes.len());
        }
        if bytes[i] == b'>' {
            return (attrs, i + 1);
        }
        let start = i;
        while i < bytes.len()
            && !bytes[i].is_ascii_whitespace()
            && !matches!(bytes[i], b'=' | b'>' | b'/')
        {
            i += 1;
        }
        if start == i {
            // Lone '=' or similar junk.
            i += 1;
            continue;
        }
        let name = html[start..i].to_ascii_lowercase();
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        let mut value = String::new();
        if i < bytes.len() && bytes[i] == b'=' {
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'"' || bytes[i] == b'\'') {
                let quote = bytes[i];
                let end = memchr(quote, bytes, i + 1).unwrap_or(bytes.len());
                value.push_str(&html[i + 1..end]);
                i = (end + 1).min(bytes.len());
            } else {
                let vstart = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && bytes[i] != b'>' {
                    i += 1;
                }
                value.push_str(&html[vstart..i]);
            }
        }
        attrs.push((name, value));
    }
}

/// Finds `</name` (any case) from `from`; returns the content end and the
/// index after the closing tag, or the input end if unclosed.
fn closing_tag(bytes: &[u8], from: usize, name: &str) -> (usize, usize) {
    let mut pos = from;
    while let Some(lt) = find(bytes, pos, b"</") {
        let n = lt + 2;
        let end = n + name.len();
        if end <= bytes.len()
            && bytes[n..end].eq_ignore_ascii_case(name.as_bytes())
            && bytes
                .get(end)
                .is_none_or(|b| !b.is_ascii_alphanumeric())
        {
            let after = memchr(b'>', bytes, end).map_or(bytes.len(), |p| p + 1);
            return (lt, after);
        }
        pos = lt + 2;
    }
    (bytes.len(), bytes.len())
}

fn memchr(needle: u8, hay: &[u8], from: usize) -> Option<usize> {
    hay.get(from..)?
        .iter()
        .position(|b| *b == needle)
        .map(|p| from + p)
}

fn find(hay: &[u8], from: usize, needle: &[u8]) -> Option<usize> {
    let tail = hay.get(from..)?;
    tail.windows(needle.len())
        .position(|w| w == needle)
        .map(|p| from + p)
}

pub(crate) fn collapse_whitespace(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for word in s.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

pub(crate) fn decode_entities(s: &str) -> String {
    if !s.contains('&') {
        return String::from(s);
    }
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(amp) = rest.find('&') {
        out.push_str(&rest[..amp]);
        rest = &rest[amp..];
        let semi = rest.bytes().take(12).position(|b| b == b';');
        let decoded = semi.and_then(|semi| entity(&rest[1..semi]).map(|c| (c, semi + 1)));
        match decoded {
            Some((c, len)) => {
                out.push(c);
                rest = &rest[len..];
            }
            None => {
                out.push('&');
                rest = &rest[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

fn entity(name: &str) -> Option<char> {
    if let Some(num) = name.strip_prefix('#') {
        let code = match num.strip_prefix(['x', 'X']) {
            Some(hex) => u32::from_str_radix(hex, 16).ok()?,
            None => num.parse().ok()?,
        };
        return char::from_u32(code);
    }
    Some(match name {
        "amp" => '&',
        "lt" => '<',
        "gt" => '>',
        "quot" => '"',
        "apos" => '\'',
        "nbsp" => ' ',
        "ndash" => '\u{2013}',
        "mdash" => '\u{2014}',
        "hellip" => '\u{2026}',
        "copy" => '\u{a9}',
        "reg" => '\u{ae}',
        "eacute" => '\u{e9}',
        "egrave" => '\u{e8}',
        "agrave" => '\u{e0}',
        "ccedil" => '\u{e7}',
        "rsquo" => '\u{2019}',
        "lsquo" => '\u{2018}',
        "rdquo" => '\u{201d}',
        "ldquo" => '\u{201c}',
        _ => return None,
    })
}
