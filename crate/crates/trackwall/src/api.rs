//! Loopback JSON control API. See `docs/api.md` for the endpoint list.

use std::collections::BTreeMap;
use std::io::{self, BufReader};
use std::net::{SocketAddr, TcpListener, TcpStream};
use std::path::{Component, Path, PathBuf};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::thread::{self, JoinHandle};
use std::time::Duration;

use percent_encoding::percent_decode_str;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use trackwall_core::{PolicyError, UrlPolicyUpdate, Verdict};

use crate::gateway::{Gateway, GatewayError};
use crate::http::{self, Request};

const MAX_BODY: u64 = 1024 * 1024;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    UnknownCategory,
    MalformedUrl,
    NotFound,
    InvalidBody,
    /// Server-side failure such as an unwritable policy file.
    Internal,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: u16,
    pub code: ErrorCode,
    pub message: String,
}

impl ApiError {
    fn new(status: u16, code: ErrorCode, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            message: message.into(),
        }
    }

    fn not_found(message: impl Into<String>) -> Self {
        Self::new(404, ErrorCode::NotFound, message)
    }

    fn invalid(message: impl Into<String>) -> Self {
        Self::new(400, ErrorCode::InvalidBody, message)
    }
}

impl From<GatewayError> for ApiError {
    fn from(e: GatewayError) -> Self {
        let msg = e.to_string();
        match e {
            GatewayError::Policy(PolicyError::UnknownCategory(_)) => {
                ApiError::new(400, ErrorCode::UnknownCategory, msg)
            }
            GatewayError::Policy(PolicyError::MalformedUrl(_)) | GatewayError::MalformedUrl(_) => {
                ApiError::new(400, ErrorCode::MalformedUrl, msg)
            }
            GatewayError::Policy(_) | GatewayError::Invalid(_) => ApiError::invalid(msg),
            GatewayError::Store(_) | GatewayError::Data(_) | GatewayError::Io(_) => {
                tracing::error!("control api: {msg}");
                ApiError::new(500, ErrorCode::Internal, msg)
            }
        }
    }
}

/// A handled request: status and serialized JSON body. Bodies are
/// serialized straight from their types so field order stays stable.
#[derive(Debug, Clone, PartialEq)]
pub struct Reply {
    pub status: u16,
    pub body: Vec<u8>,
}

impl Reply {
    fn ok(body: impl Serialize) -> Self {
        Reply {
            status: 200,
            body: serde_json::to_vec(&body).expect("reply bodies serialize"),
        }
    }

    pub fn json(&self) -> Value {
        serde_json::from_slice(&self.body).unwrap_or(Value::Null)
    }
}

pub struct Api {
    gateway: Arc<Gateway>,
    ui_dir: Option<PathBuf>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CategoriesBody {
    List(Vec<String>),
    Object {
        #[serde(rename = "blockedCategories")]
        blocked_categories: Vec<String>,
    },
}

#[derive(Deserialize)]
struct UrlPolicyBody {
    verdict: Verdict,
}

#[derive(Deserialize)]
struct RecategorizeBody {
    url: String,
    categories: Vec<String>,
}

#[derive(Deserialize)]
struct BrokenPageBody {
    url: String,
    #[serde(default)]
    note: String,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct TrackerView {
    domain: String,
    first_parties: usize,
    is_tracker: bool,
}

fn parse_body<T: for<'de> Deserialize<'de>>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError::invalid(format!("invalid JSON body: {e}")))
}

fn method_not_allowed(method: &str, path: &str) -> ApiError {
    ApiError::new(405, ErrorCode::NotFound, format!("{method} is not supported on {path}"))
}

impl Api {
    pub fn new(gateway: Arc<Gateway>, ui_dir: Option<PathBuf>) -> Self {
        Api { gateway, ui_dir }
    }

    /// Routes one request. `target` is the raw request target, path plus
    /// optional query.
    pub fn handle(&self, method: &str, target: &str, body: &[u8]) -> Result<Reply, ApiError> {
        let (path, query) = target.split_once('?').unwrap_or((target, ""));
        let query: BTreeMap<String, String> = url::form_urlencoded::parse(query.as_bytes())
            .into_owned()
            .collect();
        let g = &self.gateway;
        match path {
            "/taxonomy" => match method {
                "GET" => {
                    let t = &g.data().taxonomy;
                    let subs: BTreeMap<&str, &str> =
                        t.subcategories().map(|(s, c)| (s, c.as_str())).collect();
                    Ok(Reply::ok(json!({ "categories": t.categories(), "subcategories": subs })))
                }
                _ => Err(method_not_allowed(method, path)),
            },
            "/policy" => match method {
                "GET" => Ok(Reply::ok(g.policy())),
                _ => Err(method_not_allowed(method, path)),
            },
            "/policy/categories" => match method {
                "GET" => Ok(Reply::ok(g.policy().blocked_categories)),
                "PUT" => {
                    let names = match parse_body::<CategoriesBody>(body)? {
                        CategoriesBody::List(v) => v,
                        CategoriesBody::Object { blocked_categories } => blocked_categories,
                    };
                    Ok(Reply::ok(g.set_blocked_categories(&names)?))
                }
                _ => Err(method_not_allowed(method, path)),
            },
            "/policy/urls" => match method {
                "GET" => Ok(Reply::ok(g.policy().url_policies)),
                _ => Err(method_not_allowed(method, path)),
            },
            "/page/current" => match method {
                "GET" => {
                    let client = match query.get("client") {
                        Some(c) => c.clone(),
                        None => match g.clients().as_slice() {
                            [only] => only.clone(),
                            _ => return Err(ApiError::not_found("pass ?client= to pick a client")),
                        },
                    };
                    g.current_page(&client)
                        .map(Reply::ok)
                        .ok_or_else(|| ApiError::not_found(format!("no page for client `{client}`")))
                }
                _ => Err(method_not_allowed(method, path)),
            },
            "/clients" => match method {
                "GET" => Ok(Reply::ok(g.clients())),
                _ => Err(method_not_allowed(method, path)),
            },
            "/page/recategorize" => match method {
                "POST" => {
                    let b: RecategorizeBody = parse_body(body)?;
                    let (url, categories) = g.recategorize(&b.url, &b.categories)?;
                    Ok(Reply::ok(json!({ "url": url, "categories": categories, "source": "user-override" })))
                }
                _ => Err(method_not_allowed(method, path)),
            },
            "/report/broken-page" => match method {
                "POST" => {
                    let b: BrokenPageBody = parse_body(body)?;
                    g.report_broken_page(&b.url, &b.note)?;
                    Ok(Reply::ok(json!({ "recorded": true })))
                }
                _ => Err(method_not_allowed(method, path)),
            },
            "/metrics" => match method {
                "GET" => Ok(Reply::ok(g.metrics())),
                _ => Err(method_not_allowed(method, path)),
            },
            "/counters" => match method {
                "GET" => Ok(Reply::ok(g.counters())),
                _ => Err(method_not_allowed(method, path)),
            },
            "/trackers" => match method {
                "GET" => {
                    let reg = g.registry();
                    let list: Vec<TrackerView> = reg
                        .iter_counts()
                        .map(|(d, n)| TrackerView {
                            domain: d.to_string(),
                            first_parties: n,
                            is_tracker: n >= trackwall_core::TRACKER_THRESHOLD,
                        })
                        .collect();
                    Ok(Reply::ok(list))
                }
                _ => Err(method_not_allowed(method, path)),
            },
            "/allowlist/reload" => match method {
                "POST" => Ok(Reply::ok(json!({ "domains": g.reload_allowlist()? }))),
                _ => Err(method_not_allowed(method, path)),
            },
            _ => {
                if let Some(enc) = path.strip_prefix("/policy/urls/") {
                    return self.url_policy(method, enc, body);
                }
                Err(ApiError::not_found(format!("no endpoint {path}")))
            }
        }
    }

    fn url_policy(&self, method: &str, encoded: &str, body: &[u8]) -> Result<Reply, ApiError> {
        let url = percent_decode_str(encoded)
            .decode_utf8()
            .map_err(|_| ApiError::new(400, ErrorCode::MalformedUrl, "URL is not valid UTF-8"))?;
        let g = &self.gateway;
        match method {
            "GET" => match g.url_policy(&url)? {
                (key, Some(v)) => Ok(Reply::ok(json!({ "url": key, "verdict": v }))),
                (key, None) => Err(ApiError::not_found(format!("no policy for {key}"))),
            },
            "PUT" => {
                let b: UrlPolicyBody = parse_body(body)?;
                let update = match b.verdict {
                    Verdict::Block => UrlPolicyUpdate::Block,
                    Verdict::Allow => UrlPolicyUpdate::Allow,
                };
                let (key, _) = g.set_url_policy(&url, update)?;
                Ok(Reply::ok(json!({ "url": key, "verdict": b.verdict })))
            }
            "DELETE" => {
                // Validate first so a malformed URL is not reported as absent.
                let (key, existing) = g.url_policy(&url)?;
                if existing.is_none() {
                    return Err(ApiError::not_found(format!("no policy for {key}")));
                }
                g.set_url_policy(&key, UrlPolicyUpdate::Clear)?;
                Ok(Reply::ok(json!({ "url": key, "deleted": true })))
            }
            _ => Err(method_not_allowed(method, "/policy/urls/{url}")),
        }
    }

    fn static_file(&self, target: &str) -> Option<(Vec<u8>, &'static str)> {
        let dir = self.ui_dir.as_ref()?;
        let path = target.split('?').next()?;
        let rel = path.strip_prefix("/ui").filter(|r| r.is_empty() || r.starts_with('/'))?;
        let rel = percent_decode_str(rel.trim_start_matches('/')).decode_utf8().ok()?;
        let rel = if rel.is_empty() { "index.html".into() } else { rel };
        let rel = Path::new(rel.as_ref());
        if rel.components().any(|c| !matches!(c, Component::Normal(_))) {
            return None;
        }
        let full = dir.join(rel);
        let full = if full.is_dir() { full.join("index.html") } else { full };
        let bytes = std::fs::read(&full).ok()?;
        let mime = match full.extension().and_then(|e| e.to_str()) {
            Some("html") => "text/html; charset=utf-8",
            Some("js" | "mjs") => "text/javascript; charset=utf-8",
            Some("css") => "text/css; charset=utf-8",
            Some("json") => "application/json",
            Some("svg") => "image/svg+xml",
            Some("png") => "image/png",
            _ => "application/octet-stream",
        };
        Some((bytes, mime))
    }

    fn serve_connection(&self, stream: TcpStream) -> Result<(), http::HttpError> {
        stream.set_read_timeout(Some(Duration::from_secs(10)))?;
        let mut reader = BufReader::new(stream.try_clone()?);
        let mut out = stream;
        let Some(head) = http::read_head(&mut reader)? else {
            return Ok(());
        };
        let reply = match http::parse_request(&head) {
            Ok(Request {
                method,
                target,
                headers,
                ..
            }) => {
                if method == "GET" && (target == "/ui" || target.starts_with("/ui/")) {
                    if let Some((bytes, mime)) = self.static_file(&target) {
                        http::write_response(&mut out, 200, "OK", &[("Content-Type", mime)], &bytes)?;
                        return Ok(());
                    }
                }
                match http::read_request_body(&mut reader, &headers, MAX_BODY) {
                    Ok(body) => self.handle(&method, &target, &body),
                    Err(_) => Err(ApiError::invalid("unreadable or oversized body")),
                }
            }
            Err(_) => Err(ApiError::invalid("malformed HTTP request")),
        };
        let (status, bytes) = match reply {
            Ok(r) => (r.status, r.body),
            Err(e) => (e.status, serde_json::to_vec(&e).expect("errors serialize")),
        };
        http::write_response(
            &mut out,
            status,
            reason(status),
            &[("Content-Type", "application/json")],
            &bytes,
        )?;
        Ok(())
    }
}

fn reason(status: u16) -> &'static str {
    match status {
        200 => "OK",
        400 => "Bad Request",
        404 => "Not Found",
        405 => "Method Not Allowed",
        _ => "Internal Server Error",
    }
}

pub struct ApiServer {
    addr: SocketAddr,
    stop: Arc<AtomicBool>,
    thread: Option<JoinHandle<()>>,
}

impl ApiServer {
    /// Binds the API. Non-loopback addresses are refused since there is no
    /// authentication.
    pub fn bind(addr: &str, api: Api) -> io::Result<Self> {
        let listener = TcpListener::bind(addr)?;
        let addr = listener.local_addr()?;
        if !addr.ip().is_loopback() {
            return Err(io::Error::new(
                io::ErrorKind::PermissionDenied,
                format!("control API must bind a loopback address, not {addr}"),
            ));
        }
        let api = Arc::new(api);
        let stop = Arc::new(AtomicBool::new(false));
        let flag = stop.clone();
        let thread = thread::Builder::new().name("api-accept".into()).spawn(move || {
            for conn in listener.incoming() {
                if flag.load(Ordering::SeqCst) {
                    break;
                }
                let Ok(stream) = conn else { continue };
                let api = api.clone();
                let _ = thread::Builder::new().name("api-conn".into()).spawn(move || {
                    if let Err(e) = api.serve_connection(stream) {
                        tracing::debug!("api connection: {e}");
                    }
                });
            }
        })?;
        Ok(ApiServer {
            addr,
            stop,
            thread: Some(thread),
        })
    }

    pub fn local_addr(&self) -> SocketAddr {
        self.addr
    }

    pub fn join(mut self) {
        if let Some(t) = self.thread.take() {
            let _ = t.join();
        }
    }
}

impl Drop for ApiServer {
    fn drop(&mut self) {
        if let Some(t) = self.thread.take() {
            self.stop.store(true, Ordering::SeqCst);
            let _ = TcpStream::connect(self.addr);
            let _ = t.join();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{default_data_dir, DataSet};
    use crate::gateway::GatewayOptions;
    use trackwall_core::{PolicyConfig, TrackerRegistry};

    fn api() -> Api {
        let data = DataSet::load(&default_data_dir()).unwrap();
        let g = Gateway::new(data, PolicyConfig::default(), TrackerRegistry::new(), GatewayOptions::default())
            .unwrap();
        Api::new(Arc::new(g), None)
    }

    #[test]
    fn taxonomy_is_read_only() {
        let a = api();
        let r = a.handle("GET", "/taxonomy", b"").unwrap();
        assert_eq!(r.json()["categories"].as_array().unwrap().len(), 32);
        assert_eq!(a.handle("POST", "/taxonomy", b"").unwrap_err().status, 405);
    }

    #[test]
    fn url_policy_crud() {
        let a = api();
        let enc = "https%3A%2F%2FExample.com%3A443%2Fa%23frag";
        let e = a.handle("DELETE", &format!("/policy/urls/{enc}"), b"").unwrap_err();
        assert_eq!((e.status, e.code), (404, ErrorCode::NotFound));
        a.handle("PUT", &format!("/policy/urls/{enc}"), br#"{"verdict":"allow"}"#).unwrap();
        let r = a.handle("GET", "/policy/urls/https%3A%2F%2Fexample.com%2Fa", b"").unwrap();
        assert_eq!(r.json(), json!({"url": "https://example.com/a", "verdict": "allow"}));
        a.handle("DELETE", &format!("/policy/urls/{enc}"), b"").unwrap();
        let e = a.handle("GET", "/policy/urls/not%20a%20url", b"").unwrap_err();
        assert_eq!(e.code, ErrorCode::MalformedUrl);
    }

    #[test]
    fn error_codes() {
        let a = api();
        let e = a.handle("PUT", "/policy/categories", br#"["bogus"]"#).unwrap_err();
        assert_eq!((e.status, e.code), (400, ErrorCode::UnknownCategory));
        let e = a.handle("PUT", "/policy/categories", b"{").unwrap_err();
        assert_eq!(e.code, ErrorCode::InvalidBody);
        let e = a
            .handle("POST", "/page/recategorize", br#"{"url":"https://a.example/","categories":["news","sports","travel","law"]}"#)
            .unwrap_err();
        assert_eq!((e.status, e.code), (400, ErrorCode::InvalidBody));
        assert_eq!(a.handle("GET", "/page/current?client=x", b"").unwrap_err().status, 404);
        assert_eq!(a.handle("GET", "/nope", b"").unwrap_err().code, ErrorCode::NotFound);
    }

    #[test]
    fn error_body_shape() {
        let e = ApiError::invalid("x");
        assert_eq!(serde_json::to_value(&e).unwrap(), json!({"code": "invalid_body", "message": "x"}));
    }
}
