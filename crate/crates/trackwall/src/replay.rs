//! Offline replay of recorded browsing sessions.
//!
//! One JSON object per line:
//! `{"page": url, "html": path|null, "features": {...}, "subresources": [host, ...],
//!   "iframes": [url, ...], "client": name, "ts": int}`.
//! Everything but `page` is optional. Relative `html` paths are resolved
//! against the log's directory. Lines that are not JSON objects or whose
//! page URL cannot be normalized are skipped and counted.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::Value;
use trackwall_core::{extract_features, PageFeatures, RawPage};

use crate::gateway::Gateway;

/// Context key for records without a `client`.
pub const DEFAULT_CLIENT: &str = "replay";

#[derive(Debug, Clone, PartialEq)]
pub struct ReplayRecord {
    pub page: String,
    pub html: Option<PathBuf>,
    pub features: Option<Value>,
    pub subresources: Vec<String>,
    pub iframes: Vec<String>,
    pub client: Option<String>,
    pub ts: Option<u64>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RecordError {
    #[error("not valid JSON")]
    Json,
    #[error("not a JSON object")]
    NotObject,
    #[error("missing or non-string `page`")]
    NoPage,
}

fn strings(v: Option<&Value>) -> Vec<String> {
    v.and_then(Value::as_array)
        .map(|a| a.iter().filter_map(Value::as_str).map(str::to_string).collect())
        .unwrap_or_default()
}

impl ReplayRecord {
    pub fn parse(line: &str) -> Result<Self, RecordError> {
        let value: Value = serde_json::from_str(line).map_err(|_| RecordError::Json)?;
        let Value::Object(obj) = value else {
            return Err(RecordError::NotObject);
        };
        let page = obj
            .get("page")
            .and_then(Value::as_str)
            .ok_or(RecordError::NoPage)?
            .to_string();
        Ok(ReplayRecord {
            page,
            html: obj.get("html").and_then(Value::as_str).map(PathBuf::from),
            features: obj.get("features").filter(|f| f.is_object()).cloned(),
            subresources: strings(obj.get("subresources")),
            iframes: strings(obj.get("iframes")),
            client: obj.get("client").and_then(Value::as_str).map(str::to_string),
            ts: obj.get("ts").and_then(Value::as_u64),
        })
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReplayStats {
    pub records: u64,
    pub malformed: u64,
    /// Records whose `html` file could not be read; they fall back to inline
    /// or URL-only features.
    pub missing_html: u64,
}

pub struct Replayer<'a> {
    gateway: &'a Gateway,
    base_dir: PathBuf,
    stats: ReplayStats,
}

impl<'a> Replayer<'a> {
    pub fn new(gateway: &'a Gateway, base_dir: impl Into<PathBuf>) -> Self {
        Replayer {
            gateway,
            base_dir: base_dir.into(),
            stats: ReplayStats::default(),
        }
    }

    pub fn stats(&self) -> ReplayStats {
        self.stats
    }

    /// Replays a whole log. Line numbers count from 0 and include blank lines.
    pub fn run(&mut self, text: &str) -> ReplayStats {
        for (lineno, line) in text.split('\n').enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            match ReplayRecord::parse(line) {
                Ok(rec) => self.apply(&rec, lineno as u64),
                Err(e) => {
                    tracing::warn!(line = lineno + 1, "skipping replay record: {e}");
                    self.stats.malformed += 1;
                }
            }
        }
        self.stats
    }

    /// Feeds one record through the gateway and emits its event. `fallback_ts`
    /// is used when the record has no `ts`.
    pub fn apply(&mut self, rec: &ReplayRecord, fallback_ts: u64) {
        let Some(features) = self.features(rec) else {
            tracing::warn!(page = rec.page, "skipping replay record: malformed page URL");
            self.stats.malformed += 1;
            return;
        };
        let client = rec.client.as_deref().unwrap_or(DEFAULT_CLIENT);
        let ts = rec.ts.unwrap_or(fallback_ts);
        self.gateway
            .navigate(client, rec.client.clone(), &features, ts);
        for host in &rec.subresources {
            self.gateway
                .subresource(client, host, Some(&features.normalized_url), None);
        }
        self.gateway.flush_client(client);
        self.stats.records += 1;
    }

    fn features(&mut self, rec: &ReplayRecord) -> Option<PageFeatures> {
        let data = self.gateway.data();
        let mut features = match &rec.html {
            Some(rel) => {
                let path = self.base_dir.join(rel);
                match fs::read(&path) {
                    Ok(body) => {
                        let raw = RawPage::new(&rec.page, "text/html", body, 200);
                        extract_features(&raw, &data.taxonomy, &data.suffixes).ok()?
                    }
                    Err(e) => {
                        tracing::warn!(path = %path.display(), "cannot read page: {e}");
                        self.stats.missing_html += 1;
                        self.inline(rec)?
                    }
                }
            }
            None => self.inline(rec)?,
        };
        for u in &rec.iframes {
            if !features.iframe_sources.contains(u) {
                features.iframe_sources.push(u.clone());
            }
        }
        Some(features)
    }

    fn inline(&self, rec: &ReplayRecord) -> Option<PageFeatures> {
        let data = self.gateway.data();
        let mut features = PageFeatures::from_url(&rec.page, &data.suffixes).ok()?;
        if let Some(f) = &rec.features {
            let text = |k: &str| f.get(k).and_then(Value::as_str).unwrap_or_default().to_string();
            features.title = text("title");
            features.body_text = text("body");
            features.keywords = strings(f.get("keywords"));
            if let Some(name) = f.get("declaredCategory").and_then(Value::as_str) {
                features.declare_category(name, &data.taxonomy);
            }
        }
        Some(features)
    }
}

/// Replays the log at `path`, resolving `html` paths next to it.
pub fn replay_file(gateway: &Gateway, path: &Path) -> io::Result<ReplayStats> {
    let text = fs::read_to_string(path)?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    let mut r = Replayer::new(gateway, base);
    Ok(r.run(&text))
}
