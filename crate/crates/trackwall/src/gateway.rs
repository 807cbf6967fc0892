//! Shared decision state behind the proxy, the control API and replay.
//!
//! One mutex guards the categorizer, policy, tracker registry and page
//! contexts, so every request sees a consistent policy and registry and
//! each record-then-query on the registry is atomic.

use std::collections::{HashMap, VecDeque};
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::{Mutex, MutexGuard};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use trackwall_core::{
    build_report, evaluate_request, normalize_url, resolve, AllowedDomains, BrowsingEvent,
    Categorizer, Category, CategoryAssignment, MalformedUrl, PageFeatures, PolicyConfig,
    PolicyDecision, PolicyError, Report, ReportOptions, RequestCheck, TrackerRegistry,
    UrlPolicyUpdate, Verdict,
};

use crate::data::{self, DataSet};
use crate::store::{self, StoreError};

/// Open pages remembered per client for Referer matching.
pub const CONTEXTS_PER_CLIENT: usize = 8;

#[derive(Debug, Clone, Default)]
pub struct GatewayOptions {
    pub policy_path: Option<PathBuf>,
    pub registry_path: Option<PathBuf>,
    pub events_out: Option<PathBuf>,
    /// Broken-page reports are appended here.
    pub review_path: Option<PathBuf>,
    /// Data directory, for reloading the allowlist.
    pub data_dir: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum GatewayError {
    #[error(transparent)]
    Policy(#[from] PolicyError),
    #[error(transparent)]
    MalformedUrl(#[from] MalformedUrl),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Data(#[from] data::DataError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone)]
pub struct PageContext {
    pub url: String,
    pub host: String,
    pub assignment: CategoryAssignment,
    pub decision: PolicyDecision,
    pub started_at: u64,
    pub event: BrowsingEvent,
    /// Already written out by a flush; kept only as the visible current page.
    pub emitted: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ThirdPartyView {
    pub domain: String,
    pub is_tracker: bool,
    pub blocked: bool,
}

/// What `GET /page/current` shows.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CurrentPage {
    pub url: String,
    pub categories: Vec<Category>,
    pub source: trackwall_core::AssignmentSource,
    pub verdict: Verdict,
    pub reason: trackwall_core::DecisionReason,
    pub third_parties: Vec<ThirdPartyView>,
    pub iframes: Vec<String>,
}

impl From<&PageContext> for CurrentPage {
    fn from(ctx: &PageContext) -> Self {
        let e = &ctx.event;
        CurrentPage {
            url: ctx.url.clone(),
            categories: ctx.assignment.categories.clone(),
            source: ctx.assignment.source,
            verdict: ctx.decision.verdict,
            reason: ctx.decision.reason,
            third_parties: e
                .third_party_domains
                .iter()
                .map(|d| ThirdPartyView {
                    domain: d.to_string(),
                    is_tracker: e.tracker_domains.contains(d),
                    blocked: e.blocked_domains.contains(d),
                })
                .collect(),
            iframes: e.iframe_urls.clone(),
        }
    }
}

/// Outcome of a subresource or CONNECT check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RequestOutcome {
    /// False when no page context could be found (fail open).
    pub had_context: bool,
    pub check: Option<RequestCheck>,
}

impl RequestOutcome {
    pub fn blocked(&self) -> bool {
        self.check.as_ref().is_some_and(|c| c.blocked)
    }
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Counters {
    pub navigations: u64,
    pub requests: u64,
    pub blocked_requests: u64,
    pub orphan_requests: u64,
    pub refused_connects: u64,
}

struct State {
    categorizer: Categorizer,
    policy: PolicyConfig,
    registry: TrackerRegistry,
    registry_dirty: bool,
    allowlist: AllowedDomains,
    clients: HashMap<String, VecDeque<PageContext>>,
    finished: Vec<BrowsingEvent>,
    events_out: Option<BufWriter<File>>,
    counters: Counters,
}

pub struct Gateway {
    data: DataSet,
    options: GatewayOptions,
    state: Mutex<State>,
}

pub fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

impl Gateway {
    pub fn new(
        data: DataSet,
        policy: PolicyConfig,
        registry: TrackerRegistry,
        options: GatewayOptions,
    ) -> Result<Self, GatewayError> {
        let events_out = match &options.events_out {
            Some(p) => {
                if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                    std::fs::create_dir_all(dir)?;
                }
                Some(BufWriter::new(
                    OpenOptions::new().create(true).append(true).open(p)?,
                ))
            }
            None => None,
        };
        let categorizer = Categorizer::new(
            data.taxonomy.clone(),
            data.tokenizer.clone(),
            data.lexicon.clone(),
            data.domains.clone(),
        );
        let allowlist = data.allowed.clone();
        Ok(Gateway {
            state: Mutex::new(State {
                categorizer,
                policy,
                registry,
                registry_dirty: false,
                allowlist,
                clients: HashMap::new(),
                finished: Vec::new(),
                events_out,
                counters: Counters::default(),
            }),
            data,
            options,
        })
    }

    pub fn data(&self) -> &DataSet {
        &self.data
    }

    fn lock(&self) -> MutexGuard<'_, State> {
        // A panic while holding the lock leaves consistent data behind (every
        // mutation is a single insert or replace), so keep serving.
        self.state.lock().unwrap_or_else(|e| e.into_inner())
    }

    /// Categorizes and decides a top-level page load and installs it as the
    /// client's current context.
    pub fn navigate(
        &self,
        client: &str,
        label: Option<String>,
        features: &PageFeatures,
        timestamp: u64,
    ) -> CurrentPage {
        let mut guard = self.lock();
        let st = &mut *guard;
        st.counters.navigations += 1;
        let url = features.normalized_url.clone();
        let user_override = st.policy.category_override(&url);
        let assignment = st.categorizer.categorize(features, user_override);
        let decision = resolve(&url, &assignment, &st.policy);
        let mut event = BrowsingEvent::new(timestamp, label, &url, &assignment, &decision);
        for src in &features.iframe_sources {
            event.add_iframe(src);
        }
        let ctx = PageContext {
            url,
            host: features.hostname.clone(),
            assignment,
            decision,
            started_at: timestamp,
            event,
            emitted: false,
        };
        let view = CurrentPage::from(&ctx);
        let queue = st.clients.entry(client.to_string()).or_default();
        queue.push_front(ctx);
        let evicted: Vec<PageContext> = queue.drain(CONTEXTS_PER_CLIENT.min(queue.len())..).collect();
        for old in evicted.into_iter().filter(|c| !c.emitted) {
            finish(st, old.event);
        }
        view
    }

    /// True when `referer` is one of the client's open pages.
    pub fn is_open_page(&self, client: &str, referer: &str) -> bool {
        let Ok(url) = normalize_url(referer) else {
            return false;
        };
        self.lock()
            .clients
            .get(client)
            .is_some_and(|q| q.iter().any(|c| !c.emitted && c.url == url))
    }

    /// Checks a subresource request against the page it belongs to: the
    /// open page matching `referer`, else the client's current page.
    /// `document_url` is set for HTML subdocuments (iframes), which are added
    /// to the page's iframe list.
    pub fn subresource(
        &self,
        client: &str,
        request_host: &str,
        referer: Option<&str>,
        document_url: Option<&str>,
    ) -> RequestOutcome {
        let mut guard = self.lock();
        let st = &mut *guard;
        st.counters.requests += 1;
        let referer = referer.and_then(|r| normalize_url(r).ok());
        let queue = st.clients.get_mut(client);
        let ctx = queue.and_then(|q| {
            let idx = referer
                .and_then(|r| q.iter().position(|c| !c.emitted && c.url == r))
                .unwrap_or(0);
            q.get_mut(idx).filter(|c| !c.emitted)
        });
        let Some(ctx) = ctx else {
            st.counters.orphan_requests += 1;
            tracing::debug!(client, request_host, "request without page context");
            return RequestOutcome {
                had_context: false,
                check: None,
            };
        };
        let check = evaluate_request(
            request_host,
            &ctx.host,
            &ctx.decision,
            &mut st.registry,
            &st.allowlist,
            &self.data.suffixes,
        );
        if check.third_party {
            st.registry_dirty = true;
        }
        ctx.event.record_request(&check);
        if let Some(u) = document_url {
            ctx.event.add_iframe(u);
        }
        if check.blocked {
            st.counters.blocked_requests += 1;
        }
        RequestOutcome {
            had_context: true,
            check: Some(check),
        }
    }

    /// Decides a CONNECT tunnel against the client's current page only.
    pub fn connect(&self, client: &str, target_host: &str) -> RequestOutcome {
        let mut guard = self.lock();
        let st = &mut *guard;
        let front = st.clients.get_mut(client).and_then(|q| q.front_mut());
        let Some(ctx) = front.filter(|c| !c.emitted) else {
            return RequestOutcome {
                had_context: false,
                check: None,
            };
        };
        let check = evaluate_request(
            target_host,
            &ctx.host,
            &ctx.decision,
            &mut st.registry,
            &st.allowlist,
            &self.data.suffixes,
        );
        if check.third_party {
            st.registry_dirty = true;
        }
        ctx.event.record_request(&check);
        if check.blocked {
            st.counters.refused_connects += 1;
        }
        RequestOutcome {
            had_context: true,
            check: Some(check),
        }
    }

    /// Emits the events of every open page of `client`, oldest first. The
    /// current page stays visible but later requests no longer reach it.
    pub fn flush_client(&self, client: &str) {
        let mut guard = self.lock();
        let st = &mut *guard;
        let Some(mut queue) = st.clients.remove(client) else {
            return;
        };
        while let Some(ctx) = queue.pop_back() {
            let last = queue.is_empty();
            let mut ctx = ctx;
            if !ctx.emitted {
                finish(st, ctx.event.clone());
                ctx.emitted = true;
            }
            if last {
                st.clients.insert(client.to_string(), VecDeque::from([ctx]));
            }
        }
    }

    /// Finalizes all open pages and writes registry and event log to disk.
    pub fn shutdown(&self) -> Result<(), GatewayError> {
        let clients: Vec<String> = self.lock().clients.keys().cloned().collect();
        for c in clients {
            self.flush_client(&c);
        }
        self.persist()
    }

    /// Saves the registry if it changed and flushes the event log.
    pub fn persist(&self) -> Result<(), GatewayError> {
        let mut guard = self.lock();
        let st = &mut *guard;
        if let Some(w) = st.events_out.as_mut() {
            w.flush()?;
        }
        if st.registry_dirty {
            if let Some(p) = &self.options.registry_path {
                store::save_registry(p, &st.registry)?;
            }
            st.registry_dirty = false;
        }
        Ok(())
    }

    pub fn current_page(&self, client: &str) -> Option<CurrentPage> {
        self.lock()
            .clients
            .get(client)
            .and_then(|q| q.front())
            .map(CurrentPage::from)
    }

    pub fn clients(&self) -> Vec<String> {
        let mut v: Vec<String> = self.lock().clients.keys().cloned().collect();
        v.sort();
        v
    }

    pub fn policy(&self) -> PolicyConfig {
        self.lock().policy.clone()
    }

    pub fn registry(&self) -> TrackerRegistry {
        self.lock().registry.clone()
    }

    pub fn counters(&self) -> Counters {
        self.lock().counters
    }

    /// Events finalized so far, in emission order.
    pub fn finished_events(&self) -> Vec<BrowsingEvent> {
        self.lock().finished.clone()
    }

    /// Report over finalized events plus the pages still open.
    pub fn metrics(&self) -> Report {
        let st = self.lock();
        let mut events = st.finished.clone();
        for q in st.clients.values() {
            events.extend(q.iter().rev().filter(|c| !c.emitted).map(|c| c.event.clone()));
        }
        drop(st);
        build_report(
            &events,
            &self.data.taxonomy,
            &self.data.ads,
            &self.data.suffixes,
            &ReportOptions::default(),
        )
    }

    /// Applies `change` to a copy of the policy, persists it, then swaps it
    /// in. Nothing changes if validation or the write fails.
    fn update_policy<T>(
        &self,
        change: impl FnOnce(&mut PolicyConfig) -> Result<T, GatewayError>,
    ) -> Result<(T, PolicyConfig), GatewayError> {
        let mut st = self.lock();
        let mut next = st.policy.clone();
        let out = change(&mut next)?;
        if let Some(p) = &self.options.policy_path {
            store::save_policy(p, &next)?;
        }
        st.policy = next.clone();
        Ok((out, next))
    }

    pub fn set_blocked_categories(&self, names: &[String]) -> Result<Vec<Category>, GatewayError> {
        let taxonomy = &self.data.taxonomy;
        let (_, p) = self.update_policy(|p| {
            p.set_blocked_categories(taxonomy, names.iter().map(String::as_str))?;
            Ok(())
        })?;
        Ok(p.blocked_categories.into_iter().collect())
    }

    /// Returns the normalized URL and whether an entry existed before.
    pub fn set_url_policy(
        &self,
        url: &str,
        update: UrlPolicyUpdate,
    ) -> Result<(String, Option<Verdict>), GatewayError> {
        let (out, _) = self.update_policy(|p| {
            let key = normalize_url(url)?;
            let before = p.url_policy(&key);
            p.set_url_policy(&key, update)?;
            Ok((key, before))
        })?;
        Ok(out)
    }

    pub fn url_policy(&self, url: &str) -> Result<(String, Option<Verdict>), GatewayError> {
        let key = normalize_url(url)?;
        let v = self.lock().policy.url_policy(&key);
        Ok((key, v))
    }

    /// Installs a manual recategorization, drops the cached assignment and
    /// re-decides open pages with that URL.
    pub fn recategorize(
        &self,
        url: &str,
        categories: &[String],
    ) -> Result<(String, Vec<Category>), GatewayError> {
        let taxonomy = &self.data.taxonomy;
        let names: Vec<&str> = categories.iter().map(String::as_str).collect();
        let (key, _) = self.update_policy(|p| Ok(p.set_category_override(taxonomy, url, &names)?))?;
        let mut guard = self.lock();
        let st = &mut *guard;
        st.categorizer.invalidate(&key);
        let cats = st
            .policy
            .category_override(&key)
            .map(<[Category]>::to_vec)
            .unwrap_or_default();
        let assignment = CategoryAssignment {
            categories: cats.clone(),
            source: trackwall_core::AssignmentSource::UserOverride,
        };
        for queue in st.clients.values_mut() {
            for ctx in queue.iter_mut().filter(|c| c.url == key) {
                ctx.decision = resolve(&key, &assignment, &st.policy);
                ctx.assignment = assignment.clone();
                ctx.event.redecide(&ctx.assignment, &ctx.decision);
            }
        }
        Ok((key, cats))
    }

    /// Appends a misbehaving-page report for operator review.
    pub fn report_broken_page(&self, url: &str, note: &str) -> Result<(), GatewayError> {
        let url = url.trim();
        if url.is_empty() {
            return Err(GatewayError::Invalid("url must not be empty".into()));
        }
        let Some(path) = &self.options.review_path else {
            return Err(GatewayError::Invalid("no review file configured".into()));
        };
        let (key, domains) = match normalize_url(url) {
            Ok(key) => {
                let st = self.lock();
                let domains: Vec<String> = st
                    .clients
                    .values()
                    .flatten()
                    .filter(|c| c.url == key)
                    .flat_map(|c| c.event.blocked_domains.iter().map(|d| d.to_string()))
                    .collect();
                (key, domains)
            }
            Err(_) => (url.to_string(), Vec::new()),
        };
        let line = serde_json::json!({
            "timestamp": unix_now(),
            "url": key,
            "note": note,
            "blockedDomains": domains,
        });
        append_line(path, &line.to_string())?;
        Ok(())
    }

    /// Re-reads the allowlist from the data directory.
    pub fn reload_allowlist(&self) -> Result<usize, GatewayError> {
        let dir = self
            .options
            .data_dir
            .clone()
            .ok_or_else(|| GatewayError::Invalid("no data directory configured".into()))?;
        let allowed = data::load_allowed(&dir.join(data::ALLOWED_FILE))?;
        let n = allowed.len();
        self.lock().allowlist = allowed;
        Ok(n)
    }

    pub fn scoring_runs(&self) -> u64 {
        self.lock().categorizer.scoring_runs()
    }

    pub fn categorize_only(&self, features: &PageFeatures) -> CategoryAssignment {
        let mut st = self.lock();
        let user_override = st.policy.category_override(&features.normalized_url).map(<[Category]>::to_vec);
        st.categorizer.categorize(features, user_override.as_deref())
    }
}

fn finish(st: &mut State, event: BrowsingEvent) {
    if let Some(w) = st.events_out.as_mut() {
        let line = serde_json::to_string(&event).expect("events always serialize");
        if let Err(e) = writeln!(w, "{line}") {
            tracing::warn!("cannot write event: {e}");
        }
    }
    st.finished.push(event);
}

fn append_line(path: &Path, line: &str) -> std::io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut f = OpenOptions::new().create(true).append(true).open(path)?;
    writeln!(f, "{line}")
}
