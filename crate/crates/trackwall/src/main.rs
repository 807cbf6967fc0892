use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use trackwall::api::{Api, ApiServer};
use trackwall::data::{default_data_dir, DataSet};
use trackwall::gateway::{Gateway, GatewayOptions};
use trackwall::proxy::{direct_connector, ProxyServer};
use trackwall::replay::replay_file;
use trackwall::report::{load_events, render, ReportFormat};
use trackwall::store;
use trackwall_core::{build_report, ReportOptions, TrackerRegistry};

#[derive(Parser)]
#[command(name = "trackwall", version, about = "Category-aware tracker-blocking proxy")]
#[command(args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Aggregate an events.jsonl log into a report.
    Report(ReportArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Proxy listen address.
    #[arg(long, default_value = "127.0.0.1:8118")]
    listen: String,
    /// Control API listen address (loopback only).
    #[arg(long, default_value = "127.0.0.1:8119")]
    api_listen: String,
    /// Directory with taxonomy, lexicon, domain and suffix lists.
    #[arg(long)]
    data_dir: Option<PathBuf>,
    /// Where the tracker registry, policy and broken-page reports live.
    #[arg(long, default_value = "trackwall-state")]
    state_dir: PathBuf,
    /// Policy file; defaults to <state-dir>/policy.json.
    #[arg(long)]
    policy: Option<PathBuf>,
    /// Append finalized browsing events here as JSON lines.
    #[arg(long)]
    events_out: Option<PathBuf>,
    /// Replay a recorded JSONL log instead of serving. Events go to
    /// --events-out, or stdout when that is not given.
    #[arg(long)]
    replay: Option<PathBuf>,
    /// Start from an empty tracker registry.
    #[arg(long)]
    reset_registry: bool,
    /// Serve a built web console from this directory under /ui.
    #[arg(long)]
    ui_dir: Option<PathBuf>,
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long)]
    events: PathBuf,
    #[arg(long)]
    data_dir: Option<PathBuf>,
    /// json or markdown.
    #[arg(long, default_value = "json")]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Only count clients with at least this many pages.
    #[arg(long)]
    min_pages: Option<u64>,
}

fn data_dir(arg: Option<PathBuf>) -> PathBuf {
    arg.unwrap_or_else(|| {
        let local = PathBuf::from("data");
        if local.join(trackwall::data::TAXONOMY_FILE).exists() {
            local
        } else {
            default_data_dir()
        }
    })
}

fn main() -> Result<()> {
    tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env()
                .unwrap_or_else(|_| "info".into()),
        )
        .with_writer(std::io::stderr)
        .with_ansi(std::io::stderr().is_terminal())
        .init();
    let cli = Cli::parse();
    match cli.command {
        Some(Command::Report(args)) => report(args),
        None => run(cli.run),
    }
}

fn report(args: ReportArgs) -> Result<()> {
    let format: ReportFormat = args.format.parse()?;
    let dir = data_dir(args.data_dir);
    let data = DataSet::load(&dir).with_context(|| format!("loading data from {}", dir.display()))?;
    let text = std::fs::read_to_string(&args.events)
        .with_context(|| format!("reading {}", args.events.display()))?;
    let (events, skipped) = load_events(&text);
    if skipped > 0 {
        tracing::warn!("skipped {skipped} unparseable event lines");
    }
    let options = ReportOptions {
        min_pages: args.min_pages,
    };
    let report = build_report(&events, &data.taxonomy, &data.ads, &data.suffixes, &options);
    let rendered = render(&report, format);
    match args.out {
        Some(p) => std::fs::write(&p, rendered).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(rendered.as_bytes())?,
    }
    Ok(())
}

fn run(args: RunArgs) -> Result<()> {
    let dir = data_dir(args.data_dir);
    let data = DataSet::load(&dir).with_context(|| format!("loading data from {}", dir.display()))?;
    let state = args.state_dir;
    let policy_path = args.policy.unwrap_or_else(|| state.join("policy.json"));
    let registry_path = state.join("tracker_registry.json");
    let policy = store::load_policy(&policy_path, &data.taxonomy)?;
    let registry = if args.reset_registry {
        TrackerRegistry::new()
    } else {
        store::load_registry(&registry_path)?
    };
    tracing::info!(
        categories = data.taxonomy.len(),
        lexicon = data.lexicon.len(),
        known_third_parties = registry.len(),
        "data loaded from {}",
        dir.display()
    );
    let options = GatewayOptions {
        policy_path: Some(policy_path),
        registry_path: Some(registry_path),
        events_out: args.events_out.clone(),
        review_path: Some(state.join("broken_pages.jsonl")),
        data_dir: Some(dir),
    };
    let gateway = Arc::new(Gateway::new(data, policy, registry, options)?);

    if let Some(log) = args.replay {
        return replay(&gateway, &log, args.events_out.is_none());
    }

    let ui_dir = match args.ui_dir {
        Some(d) if !d.is_dir() => bail!("--ui-dir {} is not a directory", d.display()),
        other => other,
    };
    let proxy = ProxyServer::bind(&args.listen, gateway.clone(), direct_connector())
        .with_context(|| format!("binding proxy on {}", args.listen))?;
    let api = ApiServer::bind(&args.api_listen, Api::new(gateway.clone(), ui_dir))
        .with_context(|| format!("binding control API on {}", args.api_listen))?;
    tracing::info!("proxy on http://{}, control API on http://{}", proxy.local_addr(), api.local_addr());

    let g = gateway.clone();
    std::thread::spawn(move || loop {
        std::thread::sleep(Duration::from_secs(10));
        if let Err(e) = g.persist() {
            tracing::warn!("persisting state: {e}");
        }
    });
    proxy.join();
    drop(api);
    gateway.shutdown()?;
    Ok(())
}

fn replay(gateway: &Gateway, log: &Path, to_stdout: bool) -> Result<()> {
    let stats = replay_file(gateway, log).with_context(|| format!("reading {}", log.display()))?;
    gateway.shutdown()?;
    if to_stdout {
        let mut out = std::io::stdout().lock();
        for e in gateway.finished_events() {
            serde_json::to_writer(&mut out, &e)?;
            out.write_all(b"\n")?;
        }
    }
    tracing::info!(
        records = stats.records,
        malformed = stats.malformed,
        missing_html = stats.missing_html,
        "replay finished"
    );
    Ok(())
}
