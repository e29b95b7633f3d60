//! Wall-time scaling of the table-based detector against the
//! proximity-graph baseline on simulated logs of growing size.

use std::fmt;
use std::time::Instant;

use chrono::DateTime;
use webaccess_core::{
    anomaly_ranking, build_document_matrix, build_proximity_graph, build_user_profiles, detect,
    generate_site, knn_distance_outliers, merge_logs, pagerank, parse_lines, simulate_flood,
    simulate_normal, train_wat, user_feature_vector, AccessLog, Bandwidth, GraphError, LogFormat,
    PageRankParams, PointSet, RowNormalization, SimConfig, ThresholdConfig, TimeWindow,
};

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    /// Target record counts per test log.
    pub sizes: Vec<usize>,
    pub seed: u64,
    /// Each stage is timed this many times; the fastest run is kept.
    pub reps: usize,
    pub session_len: usize,
    pub pages: usize,
    pub branching: usize,
    pub k: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![1000, 2000, 4000, 8000],
            seed: 42,
            reps: 3,
            session_len: 10,
            pages: 50,
            branching: 4,
            k: 5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Wat,
    Baseline,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Stage::Wat => "wat",
            Stage::Baseline => "baseline",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub size: usize,
    pub records: usize,
    pub users: usize,
    pub stage: Stage,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub wat_exponent: f64,
    pub baseline_exponent: f64,
}

impl BenchReport {
    pub fn seconds(&self, size: usize, stage: Stage) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.size == size && r.stage == stage)
            .map(|r| r.seconds)
    }
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>8} {:>8} {:>6} {:<9} {:>12}", "size", "records", "users", "stage", "seconds")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>8} {:>8} {:>6} {:<9} {:>12.6}",
                r.size, r.records, r.users, r.stage, r.seconds
            )?;
        }
        write!(
            f,
            "growth exponent: wat={:.3} baseline={:.3}",
            self.wat_exponent, self.baseline_exponent
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("bench needs at least two sizes")]
    TooFewSizes,
    #[error("bench size {0} is too small")]
    SizeTooSmall(usize),
    #[error(transparent)]
    Workload(#[from] webaccess_core::WorkloadError),
    #[error(transparent)]
    Wat(#[from] webaccess_core::WatError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Least-squares slope of `ln(seconds)` against `ln(records)`.
pub fn growth_exponent(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.max(1e-12).ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

fn render(log: &AccessLog) -> Vec<String> {
    log.records.iter().map(|r| r.to_string()).collect()
}

fn time<T>(reps: usize, mut f: impl FnMut() -> T) -> (f64, T) {
    let mut best = f64::INFINITY;
    let mut out = None;
    for _ in 0..reps.max(1) {
        let t = Instant::now();
        let v = f();
        best = best.min(t.elapsed().as_secs_f64());
        out = Some(v);
    }
    (best, out.expect("at least one repetition"))
}

fn wat_pipeline(train: &[String], test: &[String]) -> Result<usize, BenchError> {
    let train = parse_lines(train, "train", LogFormat::Combined);
    let window = TimeWindow::covering(&train.records).ok_or(webaccess_core::WatError::EmptyTraining)?;
    let wat = train_wat(
        &build_user_profiles(&train.records),
        train.records.len() as u64,
        window,
    )?;
    let test = parse_lines(test, "test", LogFormat::Combined);
    let window = TimeWindow::covering(&test.records).ok_or(webaccess_core::WatError::EmptyTraining)?;
    let matrix = build_document_matrix(&test, window, RowNormalization::WindowTotal);
    Ok(detect(&matrix, &wat, &ThresholdConfig::default()).len())
}

fn baseline_pipeline(
    test: &AccessLog,
    wat: &webaccess_core::TrainedWat,
    k: usize,
) -> Result<usize, BenchError> {
    let profiles = build_user_profiles(&test.records);
    let labels: Vec<_> = profiles.keys().copied().collect();
    let vectors = profiles
        .values()
        .map(|p| user_feature_vector(p, wat, wat.len()))
        .collect();
    let points = PointSet::new(labels, vectors)?;
    let graph = build_proximity_graph(&points, k.min(points.len() - 1), Bandwidth::MedianKnn)?;
    let scores = match pagerank(&graph, &PageRankParams::default()) {
        Ok(s) | Err(GraphError::NotConverged(s)) => s,
        Err(e) => return Err(e.into()),
    };
    let ranking = anomaly_ranking(&scores, points.labels());
    let outliers = knn_distance_outliers(&points, k.min(points.len() - 1), 10)?;
    Ok(ranking.len() + outliers.len())
}

pub fn run_bench(cfg: &BenchConfig) -> Result<BenchReport, BenchError> {
    if cfg.sizes.len() < 2 {
        return Err(BenchError::TooFewSizes);
    }
    let start = DateTime::parse_from_rfc3339("2023-10-10T00:00:00Z").expect("literal timestamp");
    let site = generate_site(cfg.pages, cfg.branching, cfg.seed);
    let mut rows = Vec::new();

    for &size in &cfg.sizes {
        let users = size / cfg.session_len.max(1);
        if users < 2 {
            return Err(BenchError::SizeTooSmall(size));
        }
        let sim = |seed| SimConfig {
            seed,
            num_users: users,
            session_len: cfg.session_len,
            start,
            duration_secs: 3600,
        };
        let train = simulate_normal(&site, &sim(cfg.seed))?;
        let normal = simulate_normal(&site, &sim(cfg.seed.wrapping_add(1)))?;
        let flood = simulate_flood(
            &site,
            "10.0.0.2".parse().expect("literal address"),
            site.deepest_page(),
            (size / 100).max(1),
            &sim(cfg.seed),
        )?;
        let test = merge_logs(&[normal, flood]);
        let train_text = render(&train);
        let test_text = render(&test);

        let (wat_secs, alerts) = time(cfg.reps, || wat_pipeline(&train_text, &test_text));
        alerts?;

        let window = TimeWindow::covering(&train.records).ok_or(webaccess_core::WatError::EmptyTraining)?;
        let wat = train_wat(&build_user_profiles(&train.records), train.records.len() as u64, window)?;
        let (base_secs, ranked) = time(cfg.reps, || baseline_pipeline(&test, &wat, cfg.k));
        ranked?;

        let test_users = build_user_profiles(&test.records).len();
        for (stage, seconds) in [(Stage::Wat, wat_secs), (Stage::Baseline, base_secs)] {
            rows.push(BenchRow {
                size,
                records: test.records.len(),
                users: test_users,
                stage,
                seconds,
            });
        }
    }

    let fit = |stage| {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.stage == stage)
            .map(|r| (r.records as f64, r.seconds))
            .collect();
        growth_exponent(&pts)
    };
    Ok(BenchReport {
        wat_exponent: fit(Stage::Wat),
        baseline_exponent: fit(Stage::Baseline),
        rows,
    })
}
