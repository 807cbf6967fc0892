//! Plain-HTTP forward proxy with CONNECT tunnelling.
//!
//! Each client connection carries one request and is then closed. Top-level
//! navigations are fetched in full so their features can be extracted; the
//! response bytes are relayed unchanged. Blocked subresources get a 403
//! without any upstream contact. CONNECT targets can only be judged by
//! hostname, since tunnels are not intercepted.

use std::io::{self, BufReader, Read, Write};
use std::net::{Shutdown, SocketAddr, TcpListener, TcpStream, ToSocketAddrs};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::thread::{self, JoinHandle};
use std::time::Duration;

use trackwall_core::{extract_features, PageFeatures, RawPage, DEFAULT_BODY_CAP};
use url::Url;

use crate::gateway::{unix_now, Gateway};
use crate::http::{self, header, Header, HttpError, Request};

pub const BLOCKED_BODY: &str = "blocked by trackwall";
/// Explicit navigation hint, e.g. from the console.
pub const NAVIGATE_HEADER: &str = "x-mtc-navigate";
/// Optional client key; the peer IP is used otherwise.
pub const CLIENT_HEADER: &str = "x-mtc-client";

const IO_TIMEOUT: Duration = Duration::from_secs(30);
const MAX_REQUEST_BODY: u64 = 64 * 1024 * 1024;

/// Opens upstream connections. Tests substitute one that points every
/// host at a stub server.
pub type Connector = Arc<dyn Fn(&str, u16) -> io::Result<TcpStream> + Send + Sync>;

pub fn direct_connector() -> Connector {
    Arc::new(|host, port| {
        let mut last = io::Error::new(io::ErrorKind::NotFound, "no address");
        for addr in (host, port).to_socket_addrs()? {
            match TcpStream::connect_timeout(&addr, Duration::from_secs(10)) {
                Ok(s) => return Ok(s),
                Err(e) => last = e,
            }
        }
        Err(last)
    })
}

pub struct ProxyServer {
    addr: SocketAddr,
    stop: Arc<AtomicBool>,
    thread: Option<JoinHandle<()>>,
}

impl ProxyServer {
    pub fn bind(addr: &str, gateway: Arc<Gateway>, connector: Connector) -> io::Result<Self> {
        let listener = TcpListener::bind(addr)?;
        let addr = listener.local_addr()?;
        let stop = Arc::new(AtomicBool::new(false));
        let flag = stop.clone();
        let thread = thread::Builder::new()
            .name("proxy-accept".into())
            .spawn(move || {
                for conn in listener.incoming() {
                    if flag.load(Ordering::SeqCst) {
                        break;
                    }
                    let Ok(stream) = conn else { continue };
                    let g = gateway.clone();
                    let c = connector.clone();
                    let _ = thread::Builder::new()
                        .name("proxy-conn".into())
                        .spawn(move || {
                            if let Err(e) = handle(stream, &g, &c) {
                                tracing::debug!("proxy connection: {e}");
                            }
                        });
                }
            })?;
        Ok(ProxyServer {
            addr,
            stop,
            thread: Some(thread),
        })
    }

    pub fn local_addr(&self) -> SocketAddr {
        self.addr
    }

    /// Blocks until the accept loop ends.
    pub fn join(mut self) {
        if let Some(t) = self.thread.take() {
            let _ = t.join();
        }
    }

    pub fn shutdown(mut self) {
        self.stop_accepting();
    }

    fn stop_accepting(&mut self) {
        self.stop.store(true, Ordering::SeqCst);
        let _ = TcpStream::connect(self.addr);
        if let Some(t) = self.thread.take() {
            let _ = t.join();
        }
    }
}

impl Drop for ProxyServer {
    fn drop(&mut self) {
        if self.thread.is_some() {
            self.stop_accepting();
        }
    }
}

/// How a plain HTTP request is treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RequestKind {
    Navigation,
    /// HTML loaded into a frame of an open page.
    Subdocument,
    Subresource,
}

/// Navigation if explicitly hinted, or if the browser says so via
/// `Sec-Fetch-Dest`, or if it accepts HTML and its Referer is not an open
/// page of this client.
pub fn classify(req: &Request, client: &str, gateway: &Gateway) -> RequestKind {
    let h = &req.headers;
    if header(h, NAVIGATE_HEADER) == Some("1") {
        return RequestKind::Navigation;
    }
    let accepts_html = header(h, "accept").is_some_and(|a| a.contains("text/html"));
    match header(h, "sec-fetch-dest") {
        Some("document") => return RequestKind::Navigation,
        Some("iframe" | "frame") => return RequestKind::Subdocument,
        Some(d) if !d.is_empty() && d != "empty" && !accepts_html => {
            return RequestKind::Subresource
        }
        _ => {}
    }
    if !accepts_html {
        return RequestKind::Subresource;
    }
    let referer_open = header(h, "referer").is_some_and(|r| gateway.is_open_page(client, r));
    if referer_open {
        RequestKind::Subdocument
    } else {
        RequestKind::Navigation
    }
}

fn client_key(req: &Request, peer: Option<SocketAddr>) -> String {
    match header(&req.headers, CLIENT_HEADER) {
        Some(c) if !c.is_empty() => c.to_string(),
        _ => peer.map(|p| p.ip().to_string()).unwrap_or_else(|| "unknown".into()),
    }
}

fn handle(stream: TcpStream, gateway: &Gateway, connector: &Connector) -> Result<(), HttpError> {
    stream.set_read_timeout(Some(IO_TIMEOUT))?;
    stream.set_write_timeout(Some(IO_TIMEOUT))?;
    let peer = stream.peer_addr().ok();
    let mut reader = BufReader::new(stream.try_clone()?);
    let mut out = stream;
    let Some(head) = http::read_head(&mut reader)? else {
        return Ok(());
    };
    let req = match http::parse_request(&head) {
        Ok(r) => r,
        Err(_) => return Ok(plain(&mut out, 400, "Bad Request", "malformed request")?),
    };
    let client = client_key(&req, peer);
    if req.method.eq_ignore_ascii_case("CONNECT") {
        return tunnel(req, &client, reader, out, gateway, connector);
    }
    let Ok(url) = Url::parse(&req.target) else {
        return Ok(plain(&mut out, 400, "Bad Request", "proxy requests need an absolute URL")?);
    };
    if url.scheme() != "http" || url.host_str().is_none() {
        return Ok(plain(&mut out, 400, "Bad Request", "only http:// URLs can be proxied")?);
    }
    let host = url.host_str().unwrap_or_default().to_string();
    let body = match http::read_request_body(&mut reader, &req.headers, MAX_REQUEST_BODY) {
        Ok(b) => b,
        Err(_) => return Ok(plain(&mut out, 400, "Bad Request", "unreadable request body")?),
    };

    match classify(&req, &client, gateway) {
        RequestKind::Navigation => navigate(&req, &url, &body, &client, out, gateway, connector),
        kind => {
            let referer = header(&req.headers, "referer");
            let doc = (kind == RequestKind::Subdocument).then_some(url.as_str());
            let outcome = gateway.subresource(&client, &host, referer, doc);
            if outcome.blocked() {
                return Ok(plain(&mut out, 403, "Forbidden", BLOCKED_BODY)?);
            }
            let Some(mut up) = open_upstream(&url, connector) else {
                return Ok(plain(&mut out, 502, "Bad Gateway", "upstream unreachable")?);
            };
            send_upstream(&mut up, &req, &url, &body)?;
            io::copy(&mut up, &mut out)?;
            out.flush()?;
            Ok(())
        }
    }
}

fn navigate(
    req: &Request,
    url: &Url,
    body: &[u8],
    client: &str,
    mut out: TcpStream,
    gateway: &Gateway,
    connector: &Connector,
) -> Result<(), HttpError> {
    let Some(mut up) = open_upstream(url, connector) else {
        return Ok(plain(&mut out, 502, "Bad Gateway", "upstream unreachable")?);
    };
    send_upstream(&mut up, req, url, body)?;
    let mut response = Vec::new();
    up.read_to_end(&mut response)?;
    let features = page_features(gateway, url.as_str(), &response);
    gateway.navigate(client, Some(client.to_string()), &features, unix_now());
    out.write_all(&response)?;
    out.flush()?;
    Ok(())
}

/// Features from a raw upstream response. Unparseable responses give
/// URL-only features.
fn page_features(gateway: &Gateway, url: &str, response: &[u8]) -> PageFeatures {
    let data = gateway.data();
    let url_only = || {
        PageFeatures::from_url(url, &data.suffixes).expect("proxied URLs have a host")
    };
    let Ok((head, n)) = http::parse_response(response) else {
        return url_only();
    };
    let raw_body = &response[n..];
    let body = if http::is_chunked(&head.headers) {
        http::decode_chunked(raw_body)
    } else {
        raw_body.to_vec()
    };
    let ct = header(&head.headers, "content-type").unwrap_or_default();
    let page = RawPage::with_cap(url, ct, body, head.status, DEFAULT_BODY_CAP);
    extract_features(&page, &data.taxonomy, &data.suffixes).unwrap_or_else(|_| url_only())
}

fn open_upstream(url: &Url, connector: &Connector) -> Option<TcpStream> {
    let host = url.host_str()?;
    let host = host.trim_start_matches('[').trim_end_matches(']');
    let port = url.port_or_known_default().unwrap_or(80);
    match connector(host, port) {
        Ok(s) => {
            let _ = s.set_read_timeout(Some(IO_TIMEOUT));
            let _ = s.set_write_timeout(Some(IO_TIMEOUT));
            Some(s)
        }
        Err(e) => {
            tracing::debug!(host, port, "upstream connect failed: {e}");
            None
        }
    }
}

fn hop_by_hop(name: &str) -> bool {
    const DROP: [&str; 8] = [
        "connection",
        "proxy-connection",
        "keep-alive",
        "proxy-authorization",
        "te",
        "upgrade",
        "accept-encoding",
        "host",
    ];
    let lower = name.to_ascii_lowercase();
    DROP.contains(&lower.as_str()) || lower.starts_with("x-mtc-")
}

fn send_upstream(up: &mut TcpStream, req: &Request, url: &Url, body: &[u8]) -> io::Result<()> {
    let mut path = url.path().to_string();
    if let Some(q) = url.query() {
        path.push('?');
        path.push_str(q);
    }
    let host = match url.port() {
        Some(p) => format!("{}:{p}", url.host_str().unwrap_or_default()),
        None => url.host_str().unwrap_or_default().to_string(),
    };
    let mut head = format!("{} {path} HTTP/1.1\r\nHost: {host}\r\n", req.method).into_bytes();
    for Header { name, value } in req.headers.iter().filter(|h| !hop_by_hop(&h.name)) {
        head.extend_from_slice(name.as_bytes());
        head.extend_from_slice(b": ");
        head.extend_from_slice(value);
        head.extend_from_slice(b"\r\n");
    }
    head.extend_from_slice(b"Connection: close\r\n\r\n");
    up.write_all(&head)?;
    up.write_all(body)?;
    up.flush()
}

fn tunnel(
    req: Request,
    client: &str,
    reader: BufReader<TcpStream>,
    mut out: TcpStream,
    gateway: &Gateway,
    connector: &Connector,
) -> Result<(), HttpError> {
    let Some((host, port)) = split_authority(&req.target) else {
        return Ok(plain(&mut out, 400, "Bad Request", "CONNECT needs host:port")?);
    };
    if gateway.connect(client, &host).blocked() {
        return Ok(plain(&mut out, 403, "Forbidden", BLOCKED_BODY)?);
    }
    let up = match connector(&host, port) {
        Ok(s) => s,
        Err(_) => return Ok(plain(&mut out, 502, "Bad Gateway", "upstream unreachable")?),
    };
    out.write_all(b"HTTP/1.1 200 Connection Established\r\n\r\n")?;
    out.set_read_timeout(None)?;
    up.set_read_timeout(None)?;
    // Bytes the client sent after the CONNECT head are still buffered.
    let pending = reader.buffer().to_vec();
    let mut up_w = up.try_clone()?;
    let mut client_r = reader.into_inner();
    let up_thread = thread::spawn(move || {
        let r = up_w.write_all(&pending).and_then(|_| io::copy(&mut client_r, &mut up_w));
        let _ = up_w.shutdown(Shutdown::Write);
        r
    });
    let mut up_r = up;
    let _ = io::copy(&mut up_r, &mut out);
    let _ = out.shutdown(Shutdown::Write);
    let _ = up_thread.join();
    Ok(())
}

fn split_authority(target: &str) -> Option<(String, u16)> {
    let (host, port) = target.rsplit_once(':')?;
    let port = port.parse().ok()?;
    let host = host.trim_start_matches('[').trim_end_matches(']');
    (!host.is_empty()).then(|| (host.to_ascii_lowercase(), port))
}

fn plain(out: &mut TcpStream, status: u16, reason: &str, body: &str) -> io::Result<()> {
    http::write_response(
        out,
        status,
        reason,
        &[("Content-Type", "text/plain; charset=utf-8")],
        body.as_bytes(),
    )
}
