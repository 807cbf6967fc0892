//! Loading event logs and rendering reports as JSON or markdown tables.

use std::fmt::Write as _;
use std::str::FromStr;

use trackwall_core::{BrowsingEvent, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown report format `{0}` (expected json or markdown)")]
pub struct UnknownFormat(pub String);

impl FromStr for ReportFormat {
    type Err = UnknownFormat;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "markdown" | "md" | "markdown-table" => Ok(ReportFormat::Markdown),
            _ => Err(UnknownFormat(s.to_string())),
        }
    }
}

/// Parses an `events.jsonl` log. Returns the events and the number of
/// non-blank lines that were not valid events.
pub fn load_events(text: &str) -> (Vec<BrowsingEvent>, usize) {
    let mut events = Vec::new();
    let mut skipped = 0;
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        match serde_json::from_str(line) {
            Ok(e) => events.push(e),
            Err(_) => skipped += 1,
        }
    }
    (events, skipped)
}

pub fn render(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports always serialize");
            s.push('\n');
            s
        }
        ReportFormat::Markdown => markdown(report),
    }
}

fn pct(a: u64, b: u64) -> f64 {
    if b == 0 {
        0.0
    } else {
        100.0 * a as f64 / b as f64
    }
}

fn markdown(r: &Report) -> String {
    let o = &r.overall;
    let mut s = String::new();
    let _ = writeln!(s, "# Browsing report\n");
    let _ = writeln!(s, "| | value |\n|---|---:|");
    let _ = writeln!(s, "| pages | {} |", o.pages_total);
    let _ = writeln!(s, "| distinct pages | {} |", o.pages_distinct);
    let _ = writeln!(s, "| pages blocked | {} ({:.2}%) |", o.pages_blocked, o.pct_pages_blocked);
    let _ = writeln!(s, "| ad iframes | {} |", o.ads_total);
    let _ = writeln!(s, "| ad iframes blocked | {} ({:.2}%) |", o.ads_blocked, o.pct_ads_blocked);
    let _ = writeln!(s, "| pages with trackers counted | {} |", o.tracked_pages);
    let _ = writeln!(s, "| trackers per page | {:.2} ± {:.2} |", o.avg_trackers, o.std_trackers);
    let _ = writeln!(s, "| distinct trackers | {} |", o.distinct_trackers);

    let _ = writeln!(s, "\n## Per category\n");
    let _ = writeln!(
        s,
        "| category | pages | distinct | blocked | % blocked | ads | ads blocked | % ads blocked | trackers/page | std | distinct trackers |"
    );
    let _ = writeln!(s, "|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|");
    for (cat, c) in &r.per_category {
        let _ = writeln!(
            s,
            "| {} | {} | {} | {} | {:.2} | {} | {} | {:.2} | {:.2} | {:.2} | {} |",
            cat.as_str().replace('|', "\\|"),
            c.pages_total,
            c.pages_distinct,
            c.pages_blocked,
            pct(c.pages_blocked, c.pages_total),
            c.ads_total,
            c.ads_blocked,
            pct(c.ads_blocked, c.ads_total),
            c.avg_trackers_per_page,
            c.std_trackers_per_page,
            c.distinct_trackers,
        );
    }

    let _ = writeln!(s, "\n## Top trackers\n");
    let _ = writeln!(s, "| rank | domain | pages | % of tracked pages |\n|---:|---|---:|---:|");
    for (i, t) in o.top_trackers.iter().enumerate() {
        let _ = writeln!(s, "| {} | {} | {} | {:.2} |", i + 1, t.domain.as_str(), t.pages, t.pct);
    }

    let _ = writeln!(s, "\n## Top ad domains\n");
    let _ = writeln!(s, "| rank | domain | ads | % of ads |\n|---:|---|---:|---:|");
    for (i, a) in o.top_ad_domains.iter().enumerate() {
        let _ = writeln!(s, "| {} | {} | {} | {:.2} |", i + 1, a.domain.as_str(), a.ads, a.pct);
    }
    s
}
