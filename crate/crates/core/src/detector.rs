//! Cross-comparison of test-window rows against the trained table.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::net::IpAddr;

use crate::log_model::TimeWindow;
use crate::wat::{DocumentMatrix, DocumentRow, TrainedWat};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DetectError {
    #[error("theta must be a positive number, got {0}")]
    InvalidTheta(f64),
    #[error("k-sigma must be a non-negative number, got {0}")]
    InvalidKSigma(f64),
    #[error("min-requests must be at least 1")]
    InvalidMinRequests,
    #[error("underflow floor must be a non-negative number, got {0}")]
    InvalidUnderflowFloor(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdConfig {
    /// Absolute frequency-deviation threshold.
    pub theta_abs: f64,
    /// Per-URI threshold is `max(theta_abs, k_sigma * std_freq)`.
    pub k_sigma: f64,
    /// Rows with fewer requests in the window are not judged.
    pub min_requests: u64,
    /// Underflow is only checked for URIs whose trained mean reaches this
    /// value. Anything above 1 turns underflow detection off.
    pub underflow_floor: f64,
}

impl Default for ThresholdConfig {
    fn default() -> Self {
        ThresholdConfig {
            theta_abs: 0.05,
            k_sigma: 3.0,
            min_requests: 10,
            underflow_floor: 0.10,
        }
    }
}

impl ThresholdConfig {
    pub fn validate(&self) -> Result<(), DetectError> {
        if !(self.theta_abs > 0.0 && self.theta_abs.is_finite()) {
            return Err(DetectError::InvalidTheta(self.theta_abs));
        }
        if !(self.k_sigma >= 0.0 && self.k_sigma.is_finite()) {
            return Err(DetectError::InvalidKSigma(self.k_sigma));
        }
        if self.min_requests == 0 {
            return Err(DetectError::InvalidMinRequests);
        }
        if !(self.underflow_floor >= 0.0) {
            return Err(DetectError::InvalidUnderflowFloor(self.underflow_floor));
        }
        Ok(())
    }

    pub fn effective_threshold(&self, std_freq: f64) -> f64 {
        self.theta_abs.max(self.k_sigma * std_freq)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Direction {
    Over,
    Under,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Over => "over",
            Direction::Under => "under",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Alert {
    pub user: IpAddr,
    pub uri: String,
    /// Hits on `uri` by `user` inside the window.
    pub attempts: u64,
    pub observed_freq: f64,
    /// Trained mean, 0 for URIs never seen in training.
    pub expected_freq: f64,
    pub deviation: f64,
    pub direction: Direction,
    pub window: TimeWindow,
}

/// Judges one user's row. Returns alerts sorted by deviation descending,
/// then URI.
pub fn score_user(
    user: IpAddr,
    row: &DocumentRow,
    wat: &TrainedWat,
    cfg: &ThresholdConfig,
    window: TimeWindow,
) -> Vec<Alert> {
    let mut alerts = Vec::new();
    if row.total < cfg.min_requests {
        return alerts;
    }

    let mut push = |uri: &str, observed: f64, expected: f64, std: f64, direction| {
        let deviation = libm::fabs(observed - expected);
        if deviation > cfg.effective_threshold(std) {
            alerts.push(Alert {
                user,
                uri: uri.into(),
                attempts: row.hits(uri),
                observed_freq: observed,
                expected_freq: expected,
                deviation,
                direction,
                window,
            });
        }
    };

    for (uri, observed) in row.frequencies() {
        let (expected, std) = wat.get(uri).map_or((0.0, 0.0), |e| (e.mean_freq, e.std_freq));
        if observed > expected {
            push(uri, observed, expected, std, Direction::Over);
        }
    }
    for entry in wat.entries.values() {
        if entry.mean_freq < cfg.underflow_floor {
            continue;
        }
        let observed = row.frequency(&entry.uri);
        if observed < entry.mean_freq {
            push(&entry.uri, observed, entry.mean_freq, entry.std_freq, Direction::Under);
        }
    }

    alerts.sort_by(|a, b| by_deviation(a, b).then_with(|| a.uri.cmp(&b.uri)));
    alerts
}

fn by_deviation(a: &Alert, b: &Alert) -> Ordering {
    b.deviation.total_cmp(&a.deviation)
}

/// Scores every row. Output is ordered by deviation descending, then user,
/// then URI.
pub fn detect(matrix: &DocumentMatrix, wat: &TrainedWat, cfg: &ThresholdConfig) -> Vec<Alert> {
    let mut alerts: Vec<Alert> = matrix
        .rows
        .iter()
        .flat_map(|(user, row)| score_user(*user, row, wat, cfg, matrix.window))
        .collect();
    alerts.sort_by(|a, b| {
        by_deviation(a, b)
            .then_with(|| a.user.cmp(&b.user))
            .then_with(|| a.uri.cmp(&b.uri))
    });
    alerts
}

/// Spearman footrule between the trained document ranking and the row's
/// own ranking (by frequency descending, ties by URI), restricted to the
/// union of both top-`top_n` lists. A URI outside a list's top `top_n`
/// takes rank `top_n + 1` in that list.
pub fn rank_shift(row: &DocumentRow, wat: &TrainedWat, top_n: usize) -> f64 {
    let missing = top_n + 1;
    let trained: BTreeMap<&str, usize> = wat
        .ranked()
        .into_iter()
        .take(top_n)
        .enumerate()
        .map(|(i, e)| (e.uri.as_str(), i + 1))
        .collect();

    let mut row_order: Vec<(&str, u64)> = row.counts.iter().map(|(u, &c)| (u.as_str(), c)).collect();
    row_order.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    let observed: BTreeMap<&str, usize> = row_order
        .into_iter()
        .take(top_n)
        .enumerate()
        .map(|(i, (u, _))| (u, i + 1))
        .collect();

    let mut union: Vec<&str> = trained.keys().chain(observed.keys()).copied().collect();
    union.sort_unstable();
    union.dedup();
    union
        .into_iter()
        .map(|u| {
            let a = trained.get(u).copied().unwrap_or(missing);
            let b = observed.get(u).copied().unwrap_or(missing);
            a.abs_diff(b) as f64
        })
        .sum()
}

/// `attack from ip:<ip> req:<uri> attempts:<n>` for over-use,
/// `underflow from ip:<ip> req:<uri> expected:<mean>` for under-use.
impl fmt::Display for Alert {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.direction {
            Direction::Over => write!(
                f,
                "attack from ip:{} req:{} attempts:{}",
                self.user, self.uri, self.attempts
            ),
            Direction::Under => write!(
                f,
                "underflow from ip:{} req:{} expected:{:.6}",
                self.user, self.uri, self.expected_freq
            ),
        }
    }
}

pub fn format_alert(a: &Alert) -> String {
    alloc::format!("{a}")
}
