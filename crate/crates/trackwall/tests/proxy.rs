mod common;

use std::io::{Read, Write};
use std::net::TcpStream;
use std::sync::Arc;

use trackwall::gateway::{Gateway, GatewayOptions};
use trackwall::proxy::ProxyServer;
use trackwall::replay::Replayer;
use trackwall_core::{PolicyConfig, TrackerRegistry, UrlPolicyUpdate};

use common::*;

const PAGE: &[u8] = b"<html><head><title>Parish news</title><meta name=keywords content=\"church, prayer\"></head>\
<body>Sunday mass and prayer group. <iframe src=\"/frame.html\"></iframe>\
<iframe src=\"http://ads.adnxs.com/slot/9\"></iframe></body></html>";

fn page_response() -> Vec<u8> {
    let mut r = format!("HTTP/1.1 200 OK\r\nContent-Type: text/html\r\nContent-Length: {}\r\n\r\n", PAGE.len()).into_bytes();
    r.extend_from_slice(PAGE);
    r
}

fn pixel() -> Vec<u8> {
    b"HTTP/1.1 200 OK\r\nContent-Length: 2\r\n\r\nok".to_vec()
}

fn setup(policy: PolicyConfig, registry: TrackerRegistry, options: GatewayOptions) -> (StubUpstream, Arc<Gateway>, ProxyServer) {
    let stub = StubUpstream::start(vec![
        ("/", page_response()),
        ("/frame.html", b"HTTP/1.1 200 OK\r\nContent-Type: text/html\r\nContent-Length: 4\r\n\r\nhi!!".to_vec()),
        ("/p.gif", pixel()),
    ]);
    let g = Arc::new(Gateway::new(data(), policy, registry, options).unwrap());
    let proxy = ProxyServer::bind("127.0.0.1:0", g.clone(), stub.connector()).unwrap();
    (stub, g, proxy)
}

fn get(proxy: &ProxyServer, url: &str, headers: &str) -> Vec<u8> {
    roundtrip(
        proxy.local_addr(),
        &format!("GET {url} HTTP/1.1\r\nHost: ignored\r\nX-MTC-Client: c\r\n{headers}\r\n"),
    )
}

#[test]
fn connect_without_context_tunnels() {
    let (stub, _g, proxy) = setup(PolicyConfig::default(), registry_with_tracker("tracker.net"), GatewayOptions::default());
    let mut s = TcpStream::connect(proxy.local_addr()).unwrap();
    s.write_all(b"CONNECT px.tracker.net:443 HTTP/1.1\r\nHost: px.tracker.net:443\r\nX-MTC-Client: nobody\r\n\r\n")
        .unwrap();
    let mut head = [0u8; 39];
    s.read_exact(&mut head).unwrap();
    assert_eq!(&head, b"HTTP/1.1 200 Connection Established\r\n\r\n");
    s.write_all(b"GET /p.gif HTTP/1.1\r\nHost: px.tracker.net\r\n\r\n").unwrap();
    let mut rest = Vec::new();
    s.read_to_end(&mut rest).unwrap();
    assert_eq!(rest, pixel());
    assert_eq!(stub.connections(), 1);
}

#[test]
fn orphan_requests_fail_open() {
    let mut policy = PolicyConfig::default();
    policy.set_url_policy("http://parish.example/", UrlPolicyUpdate::Block).unwrap();
    let (stub, g, proxy) = setup(policy, registry_with_tracker("tracker.net"), GatewayOptions::default());
    let r = get(&proxy, "http://px.tracker.net/p.gif", "");
    assert_eq!(r, pixel());
    assert_eq!(stub.connections(), 1);
    assert_eq!(g.counters().orphan_requests, 1);
}

#[test]
fn iframes_and_third_parties_attach_to_the_referring_page() {
    let mut policy = PolicyConfig::default();
    policy.set_url_policy("http://parish.example/", UrlPolicyUpdate::Block).unwrap();
    let (_stub, g, proxy) = setup(policy, registry_with_tracker("tracker.net"), GatewayOptions::default());
    let nav = get(&proxy, "http://parish.example/", "Accept: text/html\r\n");
    assert_eq!(nav, page_response());
    let page = g.current_page("c").unwrap();
    assert_eq!(page.iframes, ["http://parish.example/frame.html", "http://ads.adnxs.com/slot/9"]);

    // a frame from another site, asked for as HTML by the open page
    let r = get(&proxy, "http://widgets.other.org/frame.html", "Accept: text/html\r\nReferer: http://parish.example/\r\n");
    assert_eq!(status_of(&r), 200);
    let page = g.current_page("c").unwrap();
    assert_eq!(page.url, "http://parish.example/", "subdocument must not replace the page");
    assert!(page.iframes.contains(&"http://widgets.other.org/frame.html".to_string()));
    assert!(page.third_parties.iter().any(|t| t.domain == "other.org" && !t.is_tracker));

    let r = get(&proxy, "http://px.tracker.net/p.gif", "Referer: http://parish.example/\r\nSec-Fetch-Dest: image\r\n");
    assert_eq!(status_of(&r), 403);
    let page = g.current_page("c").unwrap();
    assert!(page.third_parties.iter().any(|t| t.domain == "tracker.net" && t.blocked));
}

#[test]
fn navigation_replaces_context_and_events_are_logged() {
    let dir = tempfile::tempdir().unwrap();
    let events = dir.path().join("events.jsonl");
    let options = GatewayOptions {
        events_out: Some(events.clone()),
        ..GatewayOptions::default()
    };
    let (_stub, g, proxy) = setup(PolicyConfig::default(), TrackerRegistry::new(), options);
    get(&proxy, "http://one.example/", "X-MTC-Navigate: 1\r\n");
    get(&proxy, "http://two.example/", "Sec-Fetch-Dest: document\r\nReferer: http://one.example/\r\n");
    assert_eq!(g.current_page("c").unwrap().url, "http://two.example/");
    g.shutdown().unwrap();
    let text = std::fs::read_to_string(&events).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().all(|l| l.contains("\"client\":\"c\"")));
}

#[test]
fn live_and_replay_decide_identically() {
    let mut policy = PolicyConfig::default();
    policy.set_blocked_categories(&data().taxonomy, ["religion"]).unwrap();
    let (_stub, live, proxy) = setup(policy.clone(), registry_with_tracker("tracker.net"), GatewayOptions::default());
    get(&proxy, "http://parish.example/", "Accept: text/html\r\n");
    for host in ["px.tracker.net", "cdn.other.org", "static.parish.example"] {
        get(&proxy, &format!("http://{host}/p.gif"), "Referer: http://parish.example/\r\n");
    }
    live.flush_client("c");
    let live_event = live.finished_events().pop().unwrap();

    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("page.html"), PAGE).unwrap();
    let replayed = Gateway::new(data(), policy, registry_with_tracker("tracker.net"), GatewayOptions::default()).unwrap();
    let log = r#"{"page":"http://parish.example/","html":"page.html","client":"c","subresources":["px.tracker.net","cdn.other.org","static.parish.example"]}"#;
    Replayer::new(&replayed, dir.path()).run(log);
    let mut replay_event = replayed.finished_events().pop().unwrap();
    replay_event.timestamp = live_event.timestamp;
    assert_eq!(live_event, replay_event);
    assert_eq!(live_event.categories[0].as_str(), "religion");
    assert!(live_event.blocked_domains.contains("tracker.net"));
}

#[test]
fn rejects_non_proxy_requests() {
    let (_stub, _g, proxy) = setup(PolicyConfig::default(), TrackerRegistry::new(), GatewayOptions::default());
    let r = roundtrip(proxy.local_addr(), "GET /relative HTTP/1.1\r\nHost: x\r\n\r\n");
    assert_eq!(status_of(&r), 400);
    let r = roundtrip(proxy.local_addr(), "GET https://secure.example/ HTTP/1.1\r\nHost: x\r\n\r\n");
    assert_eq!(status_of(&r), 400);
}
