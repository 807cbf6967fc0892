mod common;

use std::net::SocketAddr;
use std::sync::Arc;

use serde_json::{json, Value};
use trackwall::api::{Api, ApiServer};
use trackwall::gateway::{Gateway, GatewayOptions};
use trackwall::replay::Replayer;
use trackwall::store;
use trackwall_core::{PolicyConfig, TrackerRegistry};

use common::*;

struct Live {
    gateway: Arc<Gateway>,
    server: ApiServer,
    dir: tempfile::TempDir,
}

impl Live {
    fn start() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let options = GatewayOptions {
            policy_path: Some(dir.path().join("policy.json")),
            registry_path: Some(dir.path().join("registry.json")),
            review_path: Some(dir.path().join("broken_pages.jsonl")),
            events_out: None,
            data_dir: Some(trackwall::data::default_data_dir()),
        };
        let gateway = Arc::new(
            Gateway::new(data(), PolicyConfig::default(), registry_with_tracker("tracker.net"), options)
                .unwrap(),
        );
        let server = ApiServer::bind("127.0.0.1:0", Api::new(gateway.clone(), None)).unwrap();
        Live { gateway, server, dir }
    }

    fn addr(&self) -> SocketAddr {
        self.server.local_addr()
    }

    fn call(&self, method: &str, path: &str, body: Option<Value>) -> (u16, Value) {
        let body = body.map(|b| b.to_string()).unwrap_or_default();
        let req = format!(
            "{method} {path} HTTP/1.1\r\nHost: localhost\r\nContent-Type: application/json\r\nContent-Length: {}\r\n\r\n{body}",
            body.len()
        );
        let resp = roundtrip(self.addr(), &req);
        let v = serde_json::from_slice(body_of(&resp)).unwrap_or(Value::Null);
        (status_of(&resp), v)
    }
}

#[test]
fn taxonomy_lists_32_names_in_file_order() {
    let live = Live::start();
    let (status, v) = live.call("GET", "/taxonomy", None);
    assert_eq!(status, 200);
    let names: Vec<&str> = v["categories"].as_array().unwrap().iter().map(|n| n.as_str().unwrap()).collect();
    let file = std::fs::read_to_string(trackwall::data::default_data_dir().join("taxonomy.txt")).unwrap();
    let want: Vec<&str> = file.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')).collect();
    assert_eq!(names, want);
    assert_eq!(live.call("POST", "/taxonomy", None).0, 405);
}

#[test]
fn category_policy_round_trips_and_persists() {
    let live = Live::start();
    let (s, _) = live.call("PUT", "/policy/categories", Some(json!(["adult", "religion", "health & fitness"])));
    assert_eq!(s, 200);
    let (_, v) = live.call("GET", "/policy/categories", None);
    assert_eq!(v, json!(["adult", "health & fitness", "religion"]));
    let saved = store::load_policy(&live.dir.path().join("policy.json"), &live.gateway.data().taxonomy).unwrap();
    assert_eq!(saved.blocked_categories.len(), 3);

    let (s, v) = live.call("PUT", "/policy/categories", Some(json!(["bogus"])));
    assert_eq!((s, v["code"].as_str()), (400, Some("unknown_category")));
    // a rejected PUT leaves the previous set in place
    assert_eq!(live.call("GET", "/policy/categories", None).1.as_array().unwrap().len(), 3);
    live.call("PUT", "/policy/categories", Some(json!([])));
    assert_eq!(live.call("GET", "/policy/categories", None).1, json!([]));
}

#[test]
fn url_policies_use_percent_encoded_keys() {
    let live = Live::start();
    let key = "https%3A%2F%2FNews.Example%2Fstory%3Fid%3D1%23top";
    let (s, v) = live.call("PUT", &format!("/policy/urls/{key}"), Some(json!({"verdict": "block"})));
    assert_eq!(s, 200);
    assert_eq!(v["url"], "https://news.example/story?id=1");
    let (s, v) = live.call("GET", "/policy/urls/https%3A%2F%2Fnews.example%2Fstory%3Fid%3D1", None);
    assert_eq!((s, v["verdict"].as_str()), (200, Some("block")));
    assert_eq!(live.call("GET", "/policy/urls", None).1, json!({"https://news.example/story?id=1": "block"}));
    assert_eq!(live.call("DELETE", &format!("/policy/urls/{key}"), None).0, 200);
    let (s, v) = live.call("DELETE", &format!("/policy/urls/{key}"), None);
    assert_eq!((s, v["code"].as_str()), (404, Some("not_found")));
    let (s, v) = live.call("PUT", "/policy/urls/nope", Some(json!({"verdict": "allow"})));
    assert_eq!((s, v["code"].as_str()), (400, Some("malformed_url")));
    let (s, v) = live.call("PUT", &format!("/policy/urls/{key}"), Some(json!({"verdict": "maybe"})));
    assert_eq!((s, v["code"].as_str()), (400, Some("invalid_body")));
}

#[test]
fn current_page_reflects_replay_and_recategorization() {
    let live = Live::start();
    assert_eq!(live.call("GET", "/page/current?client=alice", None).0, 404);
    let log = r#"{"page":"https://first-a.com/","subresources":["px.tracker.net"]}
{"page":"https://www.lemonde.fr/politique","client":"alice","subresources":["px.tracker.net","static.lemonde.fr","cdn.other.org"]}
"#;
    Replayer::new(&live.gateway, ".").run(log);
    let (s, v) = live.call("GET", "/page/current?client=alice", None);
    assert_eq!(s, 200);
    assert_eq!(v["url"], "https://www.lemonde.fr/politique");
    let event = live.gateway.finished_events().pop().unwrap();
    let listed: Vec<String> = v["thirdParties"].as_array().unwrap().iter().map(|t| t["domain"].as_str().unwrap().to_string()).collect();
    let recorded: Vec<String> = event.third_party_domains.iter().map(|d| d.to_string()).collect();
    assert_eq!(listed, recorded);
    assert!(v["thirdParties"].as_array().unwrap().iter().any(|t| t["domain"] == "tracker.net" && t["isTracker"] == true));

    let body = json!({"url": "https://www.lemonde.fr/politique", "categories": ["religion"]});
    assert_eq!(live.call("POST", "/page/recategorize", Some(body.clone())).0, 200);
    assert_eq!(live.call("POST", "/page/recategorize", Some(body)).0, 200);
    let (_, v) = live.call("GET", "/page/current?client=alice", None);
    assert_eq!(v["source"], "user-override");
    assert_eq!(v["categories"], json!(["religion"]));
    let (s, _) = live.call(
        "POST",
        "/page/recategorize",
        Some(json!({"url": "https://a.example/", "categories": ["news", "sports", "travel", "law"]})),
    );
    assert_eq!(s, 400);
}

#[test]
fn policy_changes_apply_to_the_next_page() {
    let live = Live::start();
    live.call("PUT", "/policy/categories", Some(json!(["religion"])));
    let page = r#"{"page":"https://faith.example/","client":"c","features":{"declaredCategory":"religion"}}"#;
    Replayer::new(&live.gateway, ".").run(page);
    assert_eq!(live.call("GET", "/page/current?client=c", None).1["verdict"], "block");
    live.call("PUT", "/policy/urls/https%3A%2F%2Ffaith.example%2F", Some(json!({"verdict": "allow"})));
    Replayer::new(&live.gateway, ".").run(page);
    let (_, v) = live.call("GET", "/page/current?client=c", None);
    assert_eq!((v["verdict"].as_str(), v["reason"].as_str()), (Some("allow"), Some("url-override")));
}

#[test]
fn broken_page_reports_append() {
    let live = Live::start();
    let body = json!({"url": "https://shop.example/cart", "note": "checkout button dead"});
    assert_eq!(live.call("POST", "/report/broken-page", Some(body.clone())).0, 200);
    assert_eq!(live.call("POST", "/report/broken-page", Some(body)).0, 200);
    let text = std::fs::read_to_string(live.dir.path().join("broken_pages.jsonl")).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.contains("checkout button dead"));
    let (s, v) = live.call("POST", "/report/broken-page", Some(json!({"url": "  "})));
    assert_eq!((s, v["code"].as_str()), (400, Some("invalid_body")));
}

#[test]
fn metrics_match_golden_after_fixture_replay() {
    let live = Live::start();
    let (s, v) = live.call("GET", "/metrics", None);
    assert_eq!(s, 200);
    assert_eq!(v["overall"]["pagesTotal"], 0);
    assert_eq!(v["perCategory"].as_object().unwrap().len(), 32);

    let dir = fixtures().join("replay");
    let d = data();
    let policy = store::load_policy(&dir.join("policy.json"), &d.taxonomy).unwrap();
    let g = Arc::new(Gateway::new(d, policy, TrackerRegistry::new(), GatewayOptions::default()).unwrap());
    trackwall::replay::replay_file(&g, &dir.join("log.jsonl")).unwrap();
    let server = ApiServer::bind("127.0.0.1:0", Api::new(g, None)).unwrap();
    let resp = roundtrip(server.local_addr(), "GET /metrics HTTP/1.1\r\nHost: x\r\n\r\n");
    let golden = std::fs::read_to_string(dir.join("golden_report.json")).unwrap();
    assert_eq!(body_of(&resp), golden.trim_end().as_bytes());
}

#[test]
fn trackers_and_allowlist_reload() {
    let live = Live::start();
    let (_, v) = live.call("GET", "/trackers", None);
    assert_eq!(v, json!([{"domain": "tracker.net", "firstParties": 3, "isTracker": true}]));
    let (s, v) = live.call("POST", "/allowlist/reload", None);
    assert_eq!(s, 200);
    assert!(v["domains"].as_u64().unwrap() > 0);
}

#[test]
fn refuses_non_loopback_bind() {
    let g = Arc::new(Gateway::new(data(), PolicyConfig::default(), TrackerRegistry::new(), GatewayOptions::default()).unwrap());
    assert!(ApiServer::bind("0.0.0.0:0", Api::new(g, None)).is_err());
}

#[test]
fn malformed_http_gets_json_error() {
    let live = Live::start();
    let resp = roundtrip(live.addr(), "garbage\r\n\r\n");
    assert_eq!(status_of(&resp), 400);
    let v: Value = serde_json::from_slice(body_of(&resp)).unwrap();
    assert_eq!(v["code"], "invalid_body");
}
