//! Aggregate reports over browsing events: blocked pages and ads per
//! category, and tracker prevalence on pages that were not blocked.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::domain::{RegistrableDomain, SuffixList};
use crate::event::BrowsingEvent;
use crate::taxonomy::{Category, Taxonomy};
use crate::urlnorm::url_host;

pub const TOP_TRACKERS: usize = 10;
pub const TOP_AD_DOMAINS: usize = 40;

/// Registrable domains regarded as ad-serving.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdDomainList {
    domains: BTreeSet<RegistrableDomain>,
}

impl AdDomainList {
    pub fn new<I, S>(domains: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        AdDomainList {
            domains: domains
                .into_iter()
                .map(|d| RegistrableDomain::new(d.as_ref()))
                .filter(|d| !d.as_str().is_empty())
                .collect(),
        }
    }

    pub fn contains(&self, domain: &str) -> bool {
        self.domains.contains(domain)
    }

    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }
}

/// Ad iframes on one page. All of them count as blocked when the page was.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdCount {
    pub total: u64,
    pub blocked: u64,
    /// Ad domain of each ad iframe, in iframe order.
    pub domains: Vec<RegistrableDomain>,
}

pub fn classify_ad_iframes(
    event: &BrowsingEvent,
    ads: &AdDomainList,
    suffixes: &SuffixList,
) -> AdCount {
    let mut count = AdCount::default();
    for url in &event.iframe_urls {
        let Some(host) = url_host(url) else { continue };
        let domain = suffixes.registrable_domain(&host);
        if ads.contains(domain.as_str()) {
            count.total += 1;
            count.domains.push(domain);
        }
    }
    if event.is_blocked() {
        count.blocked = count.total;
    }
    count
}

/// Tracker prevalence over pages that were not blocked.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TrackerStats {
    pub pages: u64,
    pub avg: f64,
    /// Population standard deviation.
    pub std: f64,
    pub distinct: u64,
}

pub fn tracker_stats<'a, I>(events: I) -> TrackerStats
where
    I: IntoIterator<Item = &'a BrowsingEvent>,
{
    let mut counts = Vec::new();
    let mut distinct = BTreeSet::new();
    for e in events.into_iter().filter(|e| !e.is_blocked()) {
        counts.push(e.tracker_domains.len() as f64);
        distinct.extend(e.tracker_domains.iter());
    }
    let (avg, std) = mean_std(&counts);
    TrackerStats {
        pages: counts.len() as u64,
        avg,
        std,
        distinct: distinct.len() as u64,
    }
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mut total = 0.0;
    for x in xs {
        total += x;
    }
    let mean = total / n;
    let mut var = 0.0;
    for x in xs {
        let d = x - mean;
        var += d * d;
    }
    (mean, libm::sqrt(var / n))
}

fn pct(part: u64, whole: u64) -> f64 {
    if whole == 0 {
        0.0
    } else {
        100.0 * part as f64 / whole as f64
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CategoryStats {
    pub pages_total: u64,
    pub pages_distinct: u64,
    pub pages_blocked: u64,
    pub ads_total: u64,
    pub ads_blocked: u64,
    pub tracked_pages: u64,
    pub avg_trackers_per_page: f64,
    pub std_trackers_per_page: f64,
    pub distinct_trackers: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrackerSummary {
    pub domain: RegistrableDomain,
    pub pages: u64,
    pub pct: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdDomainSummary {
    pub domain: RegistrableDomain,
    pub ads: u64,
    pub pct: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OverallStats {
    pub pages_total: u64,
    pub pages_distinct: u64,
    pub pages_blocked: u64,
    pub pct_pages_blocked: f64,
    pub ads_total: u64,
    pub ads_blocked: u64,
    pub pct_ads_blocked: f64,
    pub tracked_pages: u64,
    pub avg_trackers: f64,
    pub std_trackers: f64,
    pub distinct_trackers: u64,
    /// Trackers by number of non-blocked pages they appeared on;
    /// percentages relative to `tracked_pages`.
    pub top_trackers: Vec<TrackerSummary>,
    /// Ad domains by iframe count; percentages relative to `ads_total`.
    pub top_ad_domains: Vec<AdDomainSummary>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub per_category: BTreeMap<Category, CategoryStats>,
    pub overall: OverallStats,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    /// Drop clients with fewer events than this. Events without a client
    /// form one group.
    pub min_pages: Option<u64>,
}

/// Builds the report. Per-category rows attribute a page to each of its
/// categories; overall figures count every event once.
pub fn build_report(
    events: &[BrowsingEvent],
    taxonomy: &Taxonomy,
    ads: &AdDomainList,
    suffixes: &SuffixList,
    options: &ReportOptions,
) -> Report {
    let kept = filter_min_pages(events, options.min_pages);
    let ad_counts: Vec<AdCount> = kept
        .iter()
        .map(|e| classify_ad_iframes(e, ads, suffixes))
        .collect();

    let mut per_category = BTreeMap::new();
    for category in taxonomy.categories() {
        let idx: Vec<usize> = (0..kept.len())
            .filter(|&i| kept[i].categories.contains(category))
            .collect();
        per_category.insert(category.clone(), summarize(&kept, &ad_counts, &idx).0);
    }

    let all: Vec<usize> = (0..kept.len()).collect();
    let (row, ads_total) = summarize(&kept, &ad_counts, &all);

    let mut tracker_pages: BTreeMap<&RegistrableDomain, u64> = BTreeMap::new();
    for e in kept.iter().filter(|e| !e.is_blocked()) {
        for d in &e.tracker_domains {
            *tracker_pages.entry(d).or_insert(0) += 1;
        }
    }
    let mut ad_iframes: BTreeMap<&RegistrableDomain, u64> = BTreeMap::new();
    for c in &ad_counts {
        for d in &c.domains {
            *ad_iframes.entry(d).or_insert(0) += 1;
        }
    }
    let top_trackers = ranked(tracker_pages, TOP_TRACKERS)
        .into_iter()
        .map(|(domain, pages)| TrackerSummary {
            domain,
            pages,
            pct: pct(pages, row.tracked_pages),
        })
        .collect();
    let top_ad_domains = ranked(ad_iframes, TOP_AD_DOMAINS)
        .into_iter()
        .map(|(domain, n)| AdDomainSummary {
            domain,
            ads: n,
            pct: pct(n, ads_total),
        })
        .collect();

    Report {
        per_category,
        overall: OverallStats {
            pages_total: row.pages_total,
            pages_distinct: row.pages_distinct,
            pages_blocked: row.pages_blocked,
            pct_pages_blocked: pct(row.pages_blocked, row.pages_total),
            ads_total: row.ads_total,
            ads_blocked: row.ads_blocked,
            pct_ads_blocked: pct(row.ads_blocked, row.ads_total),
            tracked_pages: row.tracked_pages,
            avg_trackers: row.avg_trackers_per_page,
            std_trackers: row.std_trackers_per_page,
            distinct_trackers: row.distinct_trackers,
            top_trackers,
            top_ad_domains,
        },
    }
}

fn filter_min_pages(events: &[BrowsingEvent], min_pages: Option<u64>) -> Vec<&BrowsingEvent> {
    let Some(min) = min_pages else {
        return events.iter().collect();
    };
    let mut per_client: BTreeMap<Option<&str>, u64> = BTreeMap::new();
    for e in events {
        *per_client.entry(e.client.as_deref()).or_insert(0) += 1;
    }
    events
        .iter()
        .filter(|e| per_client[&e.client.as_deref()] >= min)
        .collect()
}

fn summarize(events: &[&BrowsingEvent], ads: &[AdCount], idx: &[usize]) -> (CategoryStats, u64) {
    let mut distinct = BTreeSet::new();
    let mut row = CategoryStats::default();
    for &i in idx {
        let e = events[i];
        row.pages_total += 1;
        distinct.insert(e.page_hash.as_str());
        if e.is_blocked() {
            row.pages_blocked += 1;
        }
        row.ads_total += ads[i].total;
        row.ads_blocked += ads[i].blocked;
    }
    row.pages_distinct = distinct.len() as u64;
    let stats = tracker_stats(idx.iter().map(|&i| events[i]));
    row.tracked_pages = stats.pages;
    row.avg_trackers_per_page = stats.avg;
    row.std_trackers_per_page = stats.std;
    row.distinct_trackers = stats.distinct;
    let ads_total = row.ads_total;
    (row, ads_total)
}

/// Sorted by count descending, then domain ascending.
fn ranked(counts: BTreeMap<&RegistrableDomain, u64>, limit: usize) -> Vec<(RegistrableDomain, u64)> {
    let mut v: Vec<(RegistrableDomain, u64)> =
        counts.into_iter().map(|(d, n)| (d.clone(), n)).collect();
    v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    v.truncate(limit);
    v
}

/// Names of categories in report order, for renderers.
pub fn category_names(report: &Report) -> impl Iterator<Item = &str> {
    report.per_category.keys().map(Category::as_str)
}
