use std::path::PathBuf;

use trackwall::data::{default_data_dir, DataSet};
use trackwall::gateway::{Gateway, GatewayOptions};
use trackwall::replay::replay_file;
use trackwall::store::load_policy;
use trackwall_core::{build_report, ReportOptions, TrackerRegistry};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/replay")
}

fn replayed() -> (Gateway, trackwall::replay::ReplayStats) {
    let data = DataSet::load(&default_data_dir()).unwrap();
    let policy = load_policy(&fixtures().join("policy.json"), &data.taxonomy).unwrap();
    let g = Gateway::new(data, policy, TrackerRegistry::new(), GatewayOptions::default()).unwrap();
    let stats = replay_file(&g, &fixtures().join("log.jsonl")).unwrap();
    (g, stats)
}

#[test]
fn replay_events_match_golden_bytes() {
    let (g, stats) = replayed();
    assert_eq!(stats.malformed, 24);
    let got: Vec<String> = g
        .finished_events()
        .iter()
        .map(|e| serde_json::to_string(e).unwrap())
        .collect();
    let want = std::fs::read_to_string(fixtures().join("golden_events.jsonl")).unwrap();
    let want: Vec<&str> = want.lines().collect();
    assert_eq!(got.len(), want.len());
    for (i, (g, w)) in got.iter().zip(&want).enumerate() {
        assert_eq!(g, w, "event {i} differs");
    }
}

#[test]
fn report_matches_golden_bytes() {
    let (g, _) = replayed();
    let d = g.data();
    let report = build_report(
        &g.finished_events(),
        &d.taxonomy,
        &d.ads,
        &d.suffixes,
        &ReportOptions::default(),
    );
    let want = std::fs::read_to_string(fixtures().join("golden_report.json")).unwrap();
    assert_eq!(serde_json::to_string(&report).unwrap(), want.trim_end());
    assert_eq!(g.metrics(), report);
}
