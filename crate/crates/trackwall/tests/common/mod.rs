#![allow(dead_code)]

use std::io::{BufRead, BufReader, Read, Write};
use std::net::{SocketAddr, TcpListener, TcpStream};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::thread;

use trackwall::data::{default_data_dir, DataSet};
use trackwall::proxy::Connector;
use trackwall_core::{RegistrableDomain, TrackerRegistry};

pub fn data() -> DataSet {
    DataSet::load(&default_data_dir()).unwrap()
}

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

/// Registry in which `domain` already counts as a tracker.
pub fn registry_with_tracker(domain: &str) -> TrackerRegistry {
    let mut r = TrackerRegistry::new();
    for fp in ["seen-a.com", "seen-b.com", "seen-c.com"] {
        r.record_observation(&RegistrableDomain::new(domain), &RegistrableDomain::new(fp))
            .unwrap();
    }
    r
}

/// An upstream that answers every request with a canned response chosen by
/// path, and counts connections and requested hosts.
pub struct StubUpstream {
    pub addr: SocketAddr,
    connections: Arc<AtomicUsize>,
    hosts: Arc<Mutex<Vec<String>>>,
}

impl StubUpstream {
    pub fn start(routes: Vec<(&'static str, Vec<u8>)>) -> Self {
        let listener = TcpListener::bind("127.0.0.1:0").unwrap();
        let addr = listener.local_addr().unwrap();
        let connections = Arc::new(AtomicUsize::new(0));
        let hosts = Arc::new(Mutex::new(Vec::new()));
        let (c, h) = (connections.clone(), hosts.clone());
        thread::spawn(move || {
            for stream in listener.incoming() {
                let Ok(stream) = stream else { continue };
                c.fetch_add(1, Ordering::SeqCst);
                let mut reader = BufReader::new(stream.try_clone().unwrap());
                let mut path = String::new();
                let mut host = String::new();
                let mut line = String::new();
                while reader.read_line(&mut line).unwrap_or(0) > 0 {
                    if path.is_empty() {
                        path = line.split_whitespace().nth(1).unwrap_or("").to_string();
                    } else if let Some(v) = line.strip_prefix("Host: ") {
                        host = v.trim().to_string();
                    }
                    if line == "\r\n" {
                        break;
                    }
                    line.clear();
                }
                h.lock().unwrap().push(host);
                let body = routes
                    .iter()
                    .find(|(p, _)| *p == path)
                    .map(|(_, b)| b.clone())
                    .unwrap_or_else(|| b"HTTP/1.1 404 Not Found\r\nContent-Length: 0\r\n\r\n".to_vec());
                let mut out = stream;
                let _ = out.write_all(&body);
            }
        });
        StubUpstream {
            addr,
            connections,
            hosts,
        }
    }

    pub fn connections(&self) -> usize {
        self.connections.load(Ordering::SeqCst)
    }

    pub fn hosts(&self) -> Vec<String> {
        self.hosts.lock().unwrap().clone()
    }

    /// Routes every host to this stub except `down.example`, which fails.
    pub fn connector(&self) -> Connector {
        let addr = self.addr;
        Arc::new(move |host, _port| {
            if host == "down.example" {
                return Err(std::io::Error::new(std::io::ErrorKind::ConnectionRefused, "down"));
            }
            TcpStream::connect(addr)
        })
    }
}

/// Sends raw bytes to `addr` and returns everything read back.
pub fn roundtrip(addr: SocketAddr, request: &str) -> Vec<u8> {
    let mut s = TcpStream::connect(addr).unwrap();
    s.write_all(request.as_bytes()).unwrap();
    let mut out = Vec::new();
    s.read_to_end(&mut out).unwrap();
    out
}

pub fn status_of(response: &[u8]) -> u16 {
    let text = String::from_utf8_lossy(response);
    text.split_whitespace().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0)
}

pub fn body_of(response: &[u8]) -> &[u8] {
    let at = response.windows(4).position(|w| w == b"\r\n\r\n").unwrap();
    &response[at + 4..]
}
