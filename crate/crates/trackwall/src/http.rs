//! Minimal HTTP/1.1 framing shared by the proxy and the control API.
//! Head parsing is done by `httparse`; bodies are handled here.

use std::io::{self, BufRead, Read, Write};

/// Upper bound on a request or response head.
pub const MAX_HEAD: usize = 64 * 1024;
const MAX_HEADERS: usize = 128;

#[derive(Debug, thiserror::Error)]
pub enum HttpError {
    #[error("malformed HTTP head")]
    Malformed,
    #[error("HTTP head too large")]
    TooLarge,
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Header {
    pub name: String,
    pub value: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub method: String,
    pub target: String,
    pub minor_version: u8,
    pub headers: Vec<Header>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Response {
    pub status: u16,
    pub reason: String,
    pub headers: Vec<Header>,
}

/// Case-insensitive header lookup; non-UTF-8 values are skipped.
pub fn header<'a>(headers: &'a [Header], name: &str) -> Option<&'a str> {
    headers
        .iter()
        .filter(|h| h.name.eq_ignore_ascii_case(name))
        .find_map(|h| std::str::from_utf8(&h.value).ok())
        .map(str::trim)
}

fn has_token(headers: &[Header], name: &str, token: &str) -> bool {
    headers
        .iter()
        .filter(|h| h.name.eq_ignore_ascii_case(name))
        .filter_map(|h| std::str::from_utf8(&h.value).ok())
        .flat_map(|v| v.split(','))
        .any(|t| t.trim().eq_ignore_ascii_case(token))
}

pub fn is_chunked(headers: &[Header]) -> bool {
    has_token(headers, "transfer-encoding", "chunked")
}

pub fn content_length(headers: &[Header]) -> Option<u64> {
    header(headers, "content-length").and_then(|v| v.parse().ok())
}

/// Reads up to and including the blank line ending a head. `None` on EOF
/// before the first byte.
pub fn read_head<R: BufRead>(r: &mut R) -> Result<Option<Vec<u8>>, HttpError> {
    let mut head = Vec::new();
    loop {
        let before = head.len();
        let n = r
            .by_ref()
            .take((MAX_HEAD + 1 - before) as u64)
            .read_until(b'\n', &mut head)?;
        if n == 0 {
            return if head.is_empty() {
                Ok(None)
            } else {
                Err(HttpError::Malformed)
            };
        }
        if head.len() > MAX_HEAD {
            return Err(HttpError::TooLarge);
        }
        let line = &head[before..];
        if line == b"\r\n" || line == b"\n" {
            // Tolerate blank lines before a request line.
            if before == 0 {
                head.clear();
                continue;
            }
            return Ok(Some(head));
        }
    }
}

fn collect(headers: &[httparse::Header<'_>]) -> Vec<Header> {
    headers
        .iter()
        .map(|h| Header {
            name: h.name.to_string(),
            value: h.value.to_vec(),
        })
        .collect()
}

pub fn parse_request(head: &[u8]) -> Result<Request, HttpError> {
    let mut buf = [httparse::EMPTY_HEADER; MAX_HEADERS];
    let mut req = httparse::Request::new(&mut buf);
    match req.parse(head) {
        Ok(httparse::Status::Complete(_)) => Ok(Request {
            method: req.method.unwrap_or_default().to_string(),
            target: req.path.unwrap_or_default().to_string(),
            minor_version: req.version.unwrap_or(1),
            headers: collect(req.headers),
        }),
        _ => Err(HttpError::Malformed),
    }
}

/// Parses a response head at the start of `bytes`, returning it and the
/// head length.
pub fn parse_response(bytes: &[u8]) -> Result<(Response, usize), HttpError> {
    let mut buf = [httparse::EMPTY_HEADER; MAX_HEADERS];
    let mut resp = httparse::Response::new(&mut buf);
    match resp.parse(bytes) {
        Ok(httparse::Status::Complete(n)) => Ok((
            Response {
                status: resp.code.unwrap_or(0),
                reason: resp.reason.unwrap_or_default().to_string(),
                headers: collect(resp.headers),
            },
            n,
        )),
        _ => Err(HttpError::Malformed),
    }
}

/// Reads a request body as sent: `Content-Length` bytes, or the raw chunked
/// encoding including its framing and trailers.
pub fn read_request_body<R: BufRead>(
    r: &mut R,
    headers: &[Header],
    limit: u64,
) -> Result<Vec<u8>, HttpError> {
    let mut body = Vec::new();
    if is_chunked(headers) {
        loop {
            let mut line = Vec::new();
            r.by_ref().take(1024).read_until(b'\n', &mut line)?;
            if !line.ends_with(b"\n") {
                return Err(HttpError::Malformed);
            }
            let size = chunk_size(&line).ok_or(HttpError::Malformed)?;
            body.extend_from_slice(&line);
            if size == 0 {
                // trailers up to the blank line
                loop {
                    let mut t = Vec::new();
                    r.by_ref().take(MAX_HEAD as u64).read_until(b'\n', &mut t)?;
                    body.extend_from_slice(&t);
                    if t.is_empty() || t == b"\r\n" || t == b"\n" {
                        return Ok(body);
                    }
                }
            }
            if body.len() as u64 + size > limit {
                return Err(HttpError::TooLarge);
            }
            let start = body.len();
            body.resize(start + size as usize + 2, 0);
            r.read_exact(&mut body[start..])?;
        }
    }
    let n = content_length(headers).unwrap_or(0);
    if n > limit {
        return Err(HttpError::TooLarge);
    }
    r.by_ref().take(n).read_to_end(&mut body)?;
    if body.len() as u64 != n {
        return Err(HttpError::Io(io::ErrorKind::UnexpectedEof.into()));
    }
    Ok(body)
}

fn chunk_size(line: &[u8]) -> Option<u64> {
    let s = std::str::from_utf8(line).ok()?;
    let hex = s.split(';').next()?.trim();
    u64::from_str_radix(hex, 16).ok()
}

/// Removes chunked transfer framing. Stops quietly at the first framing
/// error or at the end of input and returns what was decoded.
pub fn decode_chunked(mut body: &[u8]) -> Vec<u8> {
    let mut out = Vec::new();
    loop {
        let Some(eol) = body.iter().position(|&b| b == b'\n') else {
            return out;
        };
        let Some(size) = chunk_size(&body[..eol]) else {
            return out;
        };
        body = &body[eol + 1..];
        if size == 0 {
            return out;
        }
        let take = (size as usize).min(body.len());
        out.extend_from_slice(&body[..take]);
        body = &body[take..];
        body = body.strip_prefix(b"\r\n").or_else(|| body.strip_prefix(b"\n")).unwrap_or(body);
    }
}

/// Writes a complete response with `Content-Length` and `Connection: close`.
pub fn write_response<W: Write>(
    w: &mut W,
    status: u16,
    reason: &str,
    headers: &[(&str, &str)],
    body: &[u8],
) -> io::Result<()> {
    let mut head = format!("HTTP/1.1 {status} {reason}\r\n");
    for (k, v) in headers {
        head.push_str(k);
        head.push_str(": ");
        head.push_str(v);
        head.push_str("\r\n");
    }
    head.push_str(&format!(
        "Content-Length: {}\r\nConnection: close\r\n\r\n",
        body.len()
    ));
    w.write_all(head.as_bytes())?;
    w.write_all(body)?;
    w.flush()
}
