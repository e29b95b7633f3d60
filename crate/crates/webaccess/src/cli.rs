//! The `wat` command line: simulate, train, detect, baseline, report and
//! bench.
//!
//! Exit codes: 0 success (no anomalies), 1 anomalies detected, 2 usage
//! error, 3 data or IO error.

use std::ffi::OsString;
use std::fmt::Display;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::net::IpAddr;
use std::path::{Path, PathBuf};

use chrono::{DateTime, Duration};
use clap::{Args, Parser, Subcommand, ValueEnum};
use webaccess_core::{
    anomaly_ranking, build_document_matrix, build_proximity_graph, build_user_profiles, detect,
    document_rank, generate_site, knn_distance_outliers, merge_logs, pagerank, rank_shift,
    simulate_flood, simulate_normal, train_wat, user_feature_vector, window_slice, AccessLog,
    Bandwidth, GraphError, LogFormat, PageRankParams, PointSet, RowNormalization, SimConfig,
    ThresholdConfig, TimeWindow, PRNG_NAME,
};

use crate::bench::{run_bench, BenchConfig};
use crate::config::{Config, ConfigError};
use crate::formats::{self, FormatError};
use crate::io::{read_log, write_log};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExitStatus(pub i32);

impl ExitStatus {
    pub const OK: ExitStatus = ExitStatus(0);
    pub const ANOMALIES: ExitStatus = ExitStatus(1);
    pub const USAGE: ExitStatus = ExitStatus(2);
    pub const DATA: ExitStatus = ExitStatus(3);
}

#[derive(Parser, Debug)]
#[command(name = "wat", version, about = "Web access table anomaly detection for access logs")]
struct Cli {
    /// Access-log grammar.
    #[arg(long, global = true, value_enum)]
    log_format: Option<FormatArg>,

    /// Suppress the human-readable summary on standard output.
    #[arg(long, global = true)]
    quiet: bool,

    /// Optional `key=value` settings file; flags win over it.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Common,
    Combined,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum NormalizeArg {
    /// Divide by all requests in the window.
    Window,
    /// Divide by the user's own requests in the window.
    User,
}

#[derive(Args, Debug, Default)]
struct WindowArgs {
    /// Window start (RFC 3339), inclusive.
    #[arg(long)]
    window_start: Option<String>,
    /// Window end (RFC 3339), exclusive.
    #[arg(long)]
    window_end: Option<String>,
    /// Window of this many seconds ending just after the log's last record.
    #[arg(long, value_name = "SECONDS")]
    window_last: Option<u64>,
}

#[derive(Args, Debug, Default)]
struct ThresholdArgs {
    /// Absolute frequency-deviation threshold [default: 0.05].
    #[arg(long)]
    theta: Option<f64>,
    /// Multiplier on the trained standard deviation [default: 3].
    #[arg(long)]
    k_sigma: Option<f64>,
    /// Users with fewer requests in the window are not judged [default: 10].
    #[arg(long)]
    min_requests: Option<u64>,
    /// Only check underflow for URIs with at least this trained mean [default: 0.1].
    #[arg(long)]
    underflow_floor: Option<f64>,
    /// Denominator for test-window frequencies [default: window].
    #[arg(long, value_enum)]
    normalize: Option<NormalizeArg>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Learn the web access table from a clean log.
    Train {
        log: PathBuf,
        #[arg(long, default_value = "trained.dat")]
        out: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Judge a log against a trained table and report anomalous users.
    Detect {
        log: PathBuf,
        #[arg(long, default_value = "trained.dat")]
        wat: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        thresholds: ThresholdArgs,
        #[arg(long, default_value = "alerts.txt")]
        report: PathBuf,
        #[arg(long, default_value = "alerts.csv")]
        csv: PathBuf,
        #[arg(long, default_value = "am_test.dat")]
        matrix: PathBuf,
    },
    /// Rank users with the proximity-graph PageRank baseline and the
    /// kth-nearest-neighbor distance ranking.
    Baseline {
        log: PathBuf,
        #[arg(long, default_value = "trained.dat")]
        wat: PathBuf,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(short, long, default_value_t = 5)]
        k: usize,
        /// Kernel bandwidth: `median` or a positive number.
        #[arg(long, default_value = "median")]
        sigma: String,
        /// Rows to print.
        #[arg(long, default_value_t = 10)]
        top: usize,
        /// Feature dimension [default: number of trained URIs].
        #[arg(long)]
        dim: Option<usize>,
        /// Write the graph edge list here (labels go to `<path>.labels`).
        #[arg(long)]
        graph_out: Option<PathBuf>,
        /// Write `user,score,rank` CSV here.
        #[arg(long)]
        scores_out: Option<PathBuf>,
    },
    /// Generate a synthetic access log, optionally with a flood.
    Simulate {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 50)]
        pages: usize,
        #[arg(long, default_value_t = 4)]
        branching: usize,
        #[arg(long, default_value_t = 50)]
        users: usize,
        #[arg(long, default_value_t = 30)]
        session_len: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Seed for the site structure [default: --seed].
        #[arg(long)]
        site_seed: Option<u64>,
        #[arg(long, default_value = "2023-10-10T00:00:00Z")]
        start: String,
        #[arg(long, default_value_t = 3600)]
        duration: u32,
        #[arg(long, default_value_t = 0)]
        flood_count: usize,
        /// URI to flood [default: the deepest page of the site].
        #[arg(long)]
        flood_target: Option<String>,
        #[arg(long, default_value = "10.0.0.2")]
        attacker: String,
        /// Also write the site graph here.
        #[arg(long)]
        site_out: Option<PathBuf>,
    },
    /// Time the table pipeline against the graph baseline.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "1000,2000,4000,8000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        reps: usize,
    },
    /// Show the trained document ranking, and per-user rank shift for a log.
    Report {
        #[arg(long, default_value = "trained.dat")]
        wat: PathBuf,
        #[arg(long)]
        log: Option<PathBuf>,
        #[arg(long, default_value_t = 10)]
        top_n: usize,
        #[command(flatten)]
        window: WindowArgs,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
}

fn usage(msg: impl Display) -> Failure {
    Failure::Usage(msg.to_string())
}

fn data(msg: impl Display) -> Failure {
    Failure::Data(msg.to_string())
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        data(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        data(format!("IOFailure: {e}"))
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Io { .. } => data(e),
            _ => usage(e),
        }
    }
}

/// Parses `args` (program name first) and runs the command, writing the
/// summary to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                ExitStatus::USAGE
            } else {
                let _ = write!(out, "{rendered}");
                ExitStatus::OK
            };
        }
    };
    match execute(cli, out) {
        Ok(status) => status,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            ExitStatus::USAGE
        }
        Err(Failure::Data(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            ExitStatus::DATA
        }
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    quiet: bool,
    config: Config,
    format: LogFormat,
}

impl Ctx<'_> {
    fn say(&mut self, line: impl Display) -> Result<(), Failure> {
        if !self.quiet {
            writeln!(self.out, "{line}")?;
        }
        Ok(())
    }

    fn read_log(&self, path: &Path) -> Result<AccessLog, Failure> {
        read_log(path, self.format).map_err(|e| data(format!("IOFailure: {}: {e}", path.display())))
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<ExitStatus, Failure> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    let format = match cli.log_format {
        Some(FormatArg::Common) => LogFormat::Common,
        Some(FormatArg::Combined) => LogFormat::Combined,
        None => match config.raw("log_format") {
            None | Some("combined") => LogFormat::Combined,
            Some("common") => LogFormat::Common,
            Some(other) => return Err(usage(format!("config log_format: unknown value `{other}`"))),
        },
    };
    let mut ctx = Ctx {
        out,
        quiet: cli.quiet,
        config,
        format,
    };

    match cli.command {
        Command::Train { log, out, window } => cmd_train(&mut ctx, &log, &out, &window),
        Command::Detect {
            log,
            wat,
            window,
            thresholds,
            report,
            csv,
            matrix,
        } => cmd_detect(&mut ctx, &log, &wat, &window, &thresholds, &report, &csv, &matrix),
        Command::Baseline {
            log,
            wat,
            window,
            k,
            sigma,
            top,
            dim,
            graph_out,
            scores_out,
        } => cmd_baseline(
            &mut ctx,
            &log,
            &wat,
            &window,
            BaselineOpts {
                k,
                sigma,
                top,
                dim,
                graph_out,
                scores_out,
            },
        ),
        Command::Simulate {
            out,
            pages,
            branching,
            users,
            session_len,
            seed,
            site_seed,
            start,
            duration,
            flood_count,
            flood_target,
            attacker,
            site_out,
        } => cmd_simulate(
            &mut ctx,
            SimulateOpts {
                out,
                pages,
                branching,
                users,
                session_len,
                seed,
                site_seed: site_seed.unwrap_or(seed),
                start,
                duration,
                flood_count,
                flood_target,
                attacker,
                site_out,
            },
        ),
        Command::Bench { sizes, seed, reps } => cmd_bench(&mut ctx, sizes, seed, reps),
        Command::Report {
            wat,
            log,
            top_n,
            window,
        } => cmd_report(&mut ctx, &wat, log.as_deref(), top_n, &window),
    }
}

fn parse_instant(flag: &str, s: &str) -> Result<webaccess_core::Timestamp, Failure> {
    DateTime::parse_from_rfc3339(s).map_err(|e| usage(format!("{flag}: `{s}` is not an RFC 3339 instant ({e})")))
}

/// The window selected by the flags, defaulting to one covering the whole
/// log. `None` only when the log is empty and no explicit window was given.
fn resolve_window(args: &WindowArgs, log: &AccessLog) -> Result<Option<TimeWindow>, Failure> {
    let covering = TimeWindow::covering(&log.records);
    if let Some(secs) = args.window_last {
        if args.window_start.is_some() || args.window_end.is_some() {
            return Err(usage("--window-last cannot be combined with --window-start/--window-end"));
        }
        if secs == 0 {
            return Err(usage("--window-last must be positive"));
        }
        return Ok(covering.map(|c| {
            let secs = i64::try_from(secs).unwrap_or(i64::MAX / 2_000_000);
            TimeWindow::new(c.end() - Duration::seconds(secs), c.end()).expect("positive span")
        }));
    }
    let start = args
        .window_start
        .as_deref()
        .map(|s| parse_instant("--window-start", s))
        .transpose()?;
    let end = args
        .window_end
        .as_deref()
        .map(|s| parse_instant("--window-end", s))
        .transpose()?;
    let (Some(start), Some(end)) = (
        start.or(covering.map(|c| c.start())),
        end.or(covering.map(|c| c.end())),
    ) else {
        return Ok(None);
    };
    TimeWindow::new(start, end)
        .map(Some)
        .map_err(|_| usage("window start must be before window end"))
}

fn cmd_train(ctx: &mut Ctx, log_path: &Path, out_path: &Path, window: &WindowArgs) -> Result<ExitStatus, Failure> {
    let log = ctx.read_log(log_path)?;
    let Some(window) = resolve_window(window, &log)? else {
        return Err(data(webaccess_core::WatError::EmptyTraining));
    };
    let sliced = window_slice(&log, &window);
    let profiles = build_user_profiles(&sliced.records);
    let wat = train_wat(&profiles, sliced.records.len() as u64, window).map_err(data)?;
    formats::save_wat(&wat, out_path)?;
    ctx.say(format_args!(
        "trained {} URIs from {} users over {} records ({} lines skipped) window={}",
        wat.len(),
        wat.num_users,
        wat.total_logs,
        log.skipped,
        formats::window_label(&wat.window)
    ))?;
    ctx.say(format_args!("wrote {}", out_path.display()))?;
    Ok(ExitStatus::OK)
}

fn threshold_config(ctx: &Ctx, args: &ThresholdArgs) -> Result<ThresholdConfig, Failure> {
    let d = ThresholdConfig::default();
    let c = &ctx.config;
    let cfg = ThresholdConfig {
        theta_abs: args.theta.or(c.get("theta")?).unwrap_or(d.theta_abs),
        k_sigma: args.k_sigma.or(c.get("k_sigma")?).unwrap_or(d.k_sigma),
        min_requests: args.min_requests.or(c.get("min_requests")?).unwrap_or(d.min_requests),
        underflow_floor: args.underflow_floor.or(c.get("underflow_floor")?).unwrap_or(d.underflow_floor),
    };
    cfg.validate().map_err(usage)?;
    Ok(cfg)
}

fn normalization(ctx: &Ctx, arg: Option<NormalizeArg>) -> Result<RowNormalization, Failure> {
    Ok(match arg {
        Some(NormalizeArg::Window) => RowNormalization::WindowTotal,
        Some(NormalizeArg::User) => RowNormalization::UserTotal,
        None => match ctx.config.raw("normalize") {
            None | Some("window") => RowNormalization::WindowTotal,
            Some("user") => RowNormalization::UserTotal,
            Some(other) => return Err(usage(format!("config normalize: unknown value `{other}`"))),
        },
    })
}

fn create(path: &Path) -> Result<BufWriter<fs::File>, Failure> {
    fs::File::create(path)
        .map(BufWriter::new)
        .map_err(|e| data(format!("IOFailure: {}: {e}", path.display())))
}

#[allow(clippy::too_many_arguments)]
fn cmd_detect(
    ctx: &mut Ctx,
    log_path: &Path,
    wat_path: &Path,
    window: &WindowArgs,
    thresholds: &ThresholdArgs,
    report_path: &Path,
    csv_path: &Path,
    matrix_path: &Path,
) -> Result<ExitStatus, Failure> {
    let cfg = threshold_config(ctx, thresholds)?;
    let norm = normalization(ctx, thresholds.normalize)?;
    let wat = formats::load_wat(wat_path).map_err(|e| data(format!("{}: {e}", wat_path.display())))?;
    let log = ctx.read_log(log_path)?;
    let window = resolve_window(window, &log)?
        .ok_or_else(|| data(format!("{}: no records to judge", log_path.display())))?;

    let matrix = build_document_matrix(&log, window, norm);
    let alerts = detect(&matrix, &wat, &cfg);

    formats::write_matrix(&matrix, create(matrix_path)?)?;
    formats::write_alert_report(&alerts, &window, create(report_path)?)?;
    formats::write_alert_csv(&alerts, create(csv_path)?)?;

    ctx.say(format_args!(
        "judged {} users over {} records ({} lines skipped)",
        matrix.rows.len(),
        matrix.window_total,
        log.skipped
    ))?;
    for a in &alerts {
        ctx.say(a)?;
    }
    ctx.say(formats::alert_summary(&alerts, &window))?;
    Ok(if alerts.is_empty() {
        ExitStatus::OK
    } else {
        ExitStatus::ANOMALIES
    })
}

struct BaselineOpts {
    k: usize,
    sigma: String,
    top: usize,
    dim: Option<usize>,
    graph_out: Option<PathBuf>,
    scores_out: Option<PathBuf>,
}

fn cmd_baseline(
    ctx: &mut Ctx,
    log_path: &Path,
    wat_path: &Path,
    window: &WindowArgs,
    opts: BaselineOpts,
) -> Result<ExitStatus, Failure> {
    let bandwidth = match opts.sigma.as_str() {
        "median" => Bandwidth::MedianKnn,
        s => match s.parse::<f64>() {
            Ok(v) if v > 0.0 && v.is_finite() => Bandwidth::Fixed(v),
            _ => return Err(usage(format!("--sigma must be `median` or a positive number, got `{s}`"))),
        },
    };
    let wat = formats::load_wat(wat_path).map_err(|e| data(format!("{}: {e}", wat_path.display())))?;
    let dim = opts.dim.unwrap_or(wat.len());
    if dim == 0 {
        return Err(usage("--dim must be at least 1"));
    }
    let log = ctx.read_log(log_path)?;
    let sliced = match resolve_window(window, &log)? {
        Some(w) => window_slice(&log, &w),
        None => log,
    };
    let profiles = build_user_profiles(&sliced.records);
    let n = profiles.len();
    if opts.k < 1 || opts.k >= n {
        return Err(usage(GraphError::InvalidK { k: opts.k, n }));
    }
    let labels: Vec<IpAddr> = profiles.keys().copied().collect();
    let vectors = profiles.values().map(|p| user_feature_vector(p, &wat, dim)).collect();
    let points = PointSet::new(labels, vectors).map_err(data)?;
    let graph = build_proximity_graph(&points, opts.k, bandwidth).map_err(usage)?;
    let scores = match pagerank(&graph, &PageRankParams::default()) {
        Ok(s) => s,
        Err(GraphError::NotConverged(s)) => {
            ctx.say("warning: PageRank did not converge; showing the last iterate")?;
            s
        }
        Err(e) => return Err(data(e)),
    };
    let ranking = anomaly_ranking(&scores, points.labels());
    let outliers = knn_distance_outliers(&points, opts.k, n).map_err(usage)?;

    if let Some(path) = &opts.graph_out {
        formats::write_graph(&graph, create(path)?)?;
        let mut labels_path = path.clone().into_os_string();
        labels_path.push(".labels");
        formats::write_node_labels(points.labels(), create(Path::new(&labels_path))?)?;
    }
    if let Some(path) = &opts.scores_out {
        formats::write_scores(&ranking, create(path)?)?;
    }

    ctx.say(format_args!(
        "proximity graph: {} users, dim={}, k={}, sigma={:.6}, pagerank iterations={}",
        n,
        dim,
        opts.k,
        graph.sigma().unwrap_or(f64::NAN),
        scores.iterations
    ))?;
    ctx.say(format_args!(
        "{:>4}  {:<39} {:>12}  {:<39} {:>12}",
        "rank", "pagerank_user", "score", "knn_user", "kth_nn_dist"
    ))?;
    for (i, ((pu, ps), (ku, kd))) in ranking.iter().zip(&outliers).take(opts.top).enumerate() {
        ctx.say(format_args!(
            "{:>4}  {:<39} {:>12.8}  {:<39} {:>12.8}",
            i + 1,
            pu.to_string(),
            ps,
            ku.to_string(),
            kd
        ))?;
    }
    Ok(ExitStatus::OK)
}

struct SimulateOpts {
    out: PathBuf,
    pages: usize,
    branching: usize,
    users: usize,
    session_len: usize,
    seed: u64,
    site_seed: u64,
    start: String,
    duration: u32,
    flood_count: usize,
    flood_target: Option<String>,
    attacker: String,
    site_out: Option<PathBuf>,
}

fn cmd_simulate(ctx: &mut Ctx, o: SimulateOpts) -> Result<ExitStatus, Failure> {
    for (flag, v) in [
        ("--pages", o.pages),
        ("--branching", o.branching),
        ("--users", o.users),
        ("--session-len", o.session_len),
        ("--duration", o.duration as usize),
    ] {
        if v == 0 {
            return Err(usage(format!("{flag} must be at least 1")));
        }
    }
    let start = parse_instant("--start", &o.start)?;
    let attacker: IpAddr = o
        .attacker
        .parse()
        .map_err(|_| usage(format!("--attacker: `{}` is not an IP address", o.attacker)))?;

    let site = generate_site(o.pages, o.branching, o.site_seed);
    let cfg = SimConfig {
        seed: o.seed,
        num_users: o.users,
        session_len: o.session_len,
        start,
        duration_secs: o.duration,
    };
    let normal = simulate_normal(&site, &cfg).map_err(usage)?;
    let normal_count = normal.records.len();
    let mut logs = vec![normal];
    let mut flood_line = None;
    if o.flood_count > 0 {
        let target = o.flood_target.clone().unwrap_or_else(|| site.deepest_page().to_string());
        let flood = simulate_flood(&site, attacker, &target, o.flood_count, &cfg).map_err(usage)?;
        flood_line = Some(format!("flood: {} records from {attacker} to {target}", flood.records.len()));
        logs.push(flood);
    } else if let Some(t) = &o.flood_target {
        if !site.contains(t) {
            return Err(usage(webaccess_core::WorkloadError::UnknownTarget(t.clone())));
        }
    }
    let merged = merge_logs(&logs);
    write_log(&merged, create(&o.out)?)?;
    if let Some(path) = &o.site_out {
        formats::write_site(&site, create(path)?)?;
    }

    ctx.say(format_args!(
        "site: {} pages, branching {} (prng={PRNG_NAME} site_seed={} seed={})",
        site.pages.len(),
        o.branching,
        o.site_seed,
        o.seed
    ))?;
    ctx.say(format_args!("normal: {normal_count} records from {} users", o.users))?;
    if let Some(line) = flood_line {
        ctx.say(line)?;
    }
    ctx.say(format_args!("wrote {} records to {}", merged.records.len(), o.out.display()))?;
    Ok(ExitStatus::OK)
}

fn cmd_bench(ctx: &mut Ctx, sizes: Vec<usize>, seed: u64, reps: usize) -> Result<ExitStatus, Failure> {
    if sizes.len() < 2 {
        return Err(usage("bench needs at least two sizes"));
    }
    let cfg = BenchConfig {
        sizes,
        seed,
        reps,
        ..BenchConfig::default()
    };
    let report = run_bench(&cfg).map_err(|e| match e {
        crate::bench::BenchError::TooFewSizes | crate::bench::BenchError::SizeTooSmall(_) => usage(e),
        e => data(e),
    })?;
    ctx.say(report)?;
    Ok(ExitStatus::OK)
}

fn cmd_report(
    ctx: &mut Ctx,
    wat_path: &Path,
    log_path: Option<&Path>,
    top_n: usize,
    window: &WindowArgs,
) -> Result<ExitStatus, Failure> {
    if top_n == 0 {
        return Err(usage("--top-n must be at least 1"));
    }
    let wat = formats::load_wat(wat_path).map_err(|e| data(format!("{}: {e}", wat_path.display())))?;
    ctx.say(format_args!(
        "document rank ({} URIs, {} users, {} records, window={})",
        wat.len(),
        wat.num_users,
        wat.total_logs,
        formats::window_label(&wat.window)
    ))?;
    ctx.say("rank\tmean_freq\tstd_freq\tsupport\turi")?;
    for (uri, rank) in document_rank(&wat) {
        let e = &wat.entries[&uri];
        ctx.say(format_args!("{rank}\t{:.6}\t{:.6}\t{}\t{uri}", e.mean_freq, e.std_freq, e.support))?;
    }

    let Some(log_path) = log_path else {
        return Ok(ExitStatus::OK);
    };
    let log = ctx.read_log(log_path)?;
    let Some(window) = resolve_window(window, &log)? else {
        return Ok(ExitStatus::OK);
    };
    let matrix = build_document_matrix(&log, window, RowNormalization::UserTotal);
    let mut shifts: Vec<(f64, IpAddr, u64)> = matrix
        .rows
        .iter()
        .map(|(u, row)| (rank_shift(row, &wat, top_n), *u, row.total))
        .collect();
    shifts.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    ctx.say(format_args!("rank shift against the top {top_n} documents"))?;
    ctx.say("user\trequests\trank_shift")?;
    for (shift, user, total) in shifts {
        ctx.say(format_args!("{user}\t{total}\t{shift}"))?;
    }
    Ok(ExitStatus::OK)
}
