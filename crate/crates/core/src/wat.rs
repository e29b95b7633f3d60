//! User profiles, the trained Web Access Table and test-time document
//! matrices.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::net::IpAddr;

use crate::log_model::{window_slice, AccessLog, LogRecord, TimeWindow};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WatError {
    #[error("DegenerateDenominator: frequency requested over zero log records")]
    DegenerateDenominator,
    #[error("hit count {hits} exceeds total of {total} records")]
    HitsExceedTotal { hits: u64, total: u64 },
    #[error("EmptyTraining: the training data contains no requests")]
    EmptyTraining,
    #[error("total_logs = {given} does not match the {counted} requests held by the profiles")]
    InconsistentTotal { given: u64, counted: u64 },
}

/// Who accessed what, and how many times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UserProfile {
    pub user: IpAddr,
    pub counts: BTreeMap<String, u64>,
    pub total: u64,
}

impl UserProfile {
    pub fn new(user: IpAddr) -> Self {
        UserProfile {
            user,
            counts: BTreeMap::new(),
            total: 0,
        }
    }

    pub fn record_hit(&mut self, uri: &str) {
        *self.counts.entry(uri.into()).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn hits(&self, uri: &str) -> u64 {
        self.counts.get(uri).copied().unwrap_or(0)
    }
}

/// Per-user hit counts. Users are keyed by client address.
pub fn build_user_profiles<'a, I>(records: I) -> BTreeMap<IpAddr, UserProfile>
where
    I: IntoIterator<Item = &'a LogRecord>,
{
    let mut profiles = BTreeMap::new();
    for r in records {
        profiles
            .entry(r.client_ip)
            .or_insert_with(|| UserProfile::new(r.client_ip))
            .record_hit(&r.uri);
    }
    profiles
}

/// `hits / total_logs`, always in `[0, 1]`.
pub fn access_frequency(hits: u64, total_logs: u64) -> Result<f64, WatError> {
    if total_logs == 0 {
        return Err(WatError::DegenerateDenominator);
    }
    if hits > total_logs {
        return Err(WatError::HitsExceedTotal {
            hits,
            total: total_logs,
        });
    }
    Ok(hits as f64 / total_logs as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct WatEntry {
    pub uri: String,
    /// Mean access frequency over the users that requested the URI.
    pub mean_freq: f64,
    /// Population standard deviation of those frequencies.
    pub std_freq: f64,
    /// 1-based popularity rank, by `mean_freq` descending.
    pub rank: usize,
    /// Number of distinct users that requested the URI.
    pub support: usize,
}

/// The learned model of normal access behavior.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainedWat {
    pub entries: BTreeMap<String, WatEntry>,
    pub total_logs: u64,
    pub num_users: usize,
    pub window: TimeWindow,
}

impl TrainedWat {
    pub fn get(&self, uri: &str) -> Option<&WatEntry> {
        self.entries.get(uri)
    }

    /// Trained mean for `uri`, 0 for documents never seen in training.
    pub fn expected(&self, uri: &str) -> f64 {
        self.entries.get(uri).map_or(0.0, |e| e.mean_freq)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries ordered by rank.
    pub fn ranked(&self) -> Vec<&WatEntry> {
        let mut v: Vec<&WatEntry> = self.entries.values().collect();
        v.sort_by_key(|e| e.rank);
        v
    }
}

/// Builds the Web Access Table from training profiles.
///
/// For each URI, the frequency of every user that requested it is
/// `hits / total_logs`; the table keeps the mean and population standard
/// deviation of those frequencies and ranks URIs by mean (ties broken by
/// URI).
pub fn train_wat(
    profiles: &BTreeMap<IpAddr, UserProfile>,
    total_logs: u64,
    window: TimeWindow,
) -> Result<TrainedWat, WatError> {
    let counted: u64 = profiles.values().map(|p| p.total).sum();
    if counted == 0 {
        return Err(WatError::EmptyTraining);
    }
    if counted != total_logs {
        return Err(WatError::InconsistentTotal {
            given: total_logs,
            counted,
        });
    }

    let mut per_uri: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for profile in profiles.values() {
        for (uri, &hits) in &profile.counts {
            per_uri
                .entry(uri.as_str())
                .or_default()
                .push(access_frequency(hits, total_logs)?);
        }
    }

    let mut entries: Vec<WatEntry> = per_uri
        .into_iter()
        .map(|(uri, freqs)| {
            let n = freqs.len() as f64;
            let mean = (freqs.iter().sum::<f64>() / n).clamp(0.0, 1.0);
            let var = freqs.iter().map(|f| (f - mean) * (f - mean)).sum::<f64>() / n;
            WatEntry {
                uri: uri.into(),
                mean_freq: mean,
                std_freq: if freqs.len() == 1 { 0.0 } else { libm::sqrt(var) },
                rank: 0,
                support: freqs.len(),
            }
        })
        .collect();

    entries.sort_by(|a, b| b.mean_freq.total_cmp(&a.mean_freq).then_with(|| a.uri.cmp(&b.uri)));
    for (i, e) in entries.iter_mut().enumerate() {
        e.rank = i + 1;
    }

    Ok(TrainedWat {
        entries: entries.into_iter().map(|e| (e.uri.clone(), e)).collect(),
        total_logs,
        num_users: profiles.values().filter(|p| p.total > 0).count(),
        window,
    })
}

/// `(uri, rank)` pairs in rank order.
pub fn document_rank(wat: &TrainedWat) -> Vec<(String, usize)> {
    wat.ranked().into_iter().map(|e| (e.uri.clone(), e.rank)).collect()
}

/// Denominator used for test-time frequencies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RowNormalization {
    /// `hits / records in the window`, the same normalization the trained
    /// table uses, so observed and expected values share one scale.
    #[default]
    WindowTotal,
    /// `hits / the user's own requests in the window`; each row is a
    /// probability profile.
    UserTotal,
}

/// One user's test-window access counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentRow {
    pub counts: BTreeMap<String, u64>,
    /// The user's requests in the window.
    pub total: u64,
    /// Divisor for [`DocumentRow::frequency`].
    pub denominator: u64,
}

impl DocumentRow {
    pub fn hits(&self, uri: &str) -> u64 {
        self.counts.get(uri).copied().unwrap_or(0)
    }

    pub fn frequency(&self, uri: &str) -> f64 {
        if self.denominator == 0 {
            0.0
        } else {
            self.hits(uri) as f64 / self.denominator as f64
        }
    }

    pub fn frequencies(&self) -> impl Iterator<Item = (&str, f64)> + '_ {
        self.counts
            .iter()
            .map(|(u, &c)| (u.as_str(), c as f64 / self.denominator as f64))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentMatrix {
    pub window: TimeWindow,
    pub normalization: RowNormalization,
    /// Records that fell inside the window.
    pub window_total: u64,
    pub rows: BTreeMap<IpAddr, DocumentRow>,
}

pub fn build_document_matrix(
    test_log: &AccessLog,
    window: TimeWindow,
    normalization: RowNormalization,
) -> DocumentMatrix {
    let sliced = window_slice(test_log, &window);
    let window_total = sliced.records.len() as u64;
    let rows = build_user_profiles(&sliced.records)
        .into_iter()
        .map(|(user, p)| {
            let denominator = match normalization {
                RowNormalization::WindowTotal => window_total,
                RowNormalization::UserTotal => p.total,
            };
            let row = DocumentRow {
                counts: p.counts,
                total: p.total,
                denominator,
            };
            (user, row)
        })
        .collect();
    DocumentMatrix {
        window,
        normalization,
        window_total,
        rows,
    }
}
