//! Behavioral anomaly detection over web server access logs.
//!
//! The crate learns a *Web Access Table* (per-document access frequency and
//! popularity rank) from a clean training log, then judges each user's
//! test-window access profile against it. Users whose frequency on some
//! document overshoots (flooding) or undershoots (ignoring popular pages)
//! the trained profile by more than a threshold are reported.
//!
//! A heavier reference detector is included for cross-checking: users are
//! embedded as frequency vectors, connected in a kNN proximity graph and
//! ranked by the stationary distribution of a damped random walk
//! (PageRank). A brute-force kth-nearest-neighbor distance ranking serves
//! as an independent oracle for that detector.
//!
//! Everything here is pure computation over in-memory values and builds
//! under `#![no_std]` with `alloc`. File formats, IO and the command line
//! live in the companion `webaccess` crate.
#![no_std]

extern crate alloc;

pub mod detector;
pub mod graph;
pub mod log_model;
pub mod wat;
pub mod workload;

pub use detector::{
    detect, format_alert, rank_shift, score_user, Alert, DetectError, Direction, ThresholdConfig,
};
pub use graph::{
    anomaly_ranking, build_proximity_graph, knn_distance_outliers, pagerank, user_feature_vector,
    Bandwidth, GraphError, PageRankParams, PointSet, ProximityGraph, ScoreVector,
};
pub use log_model::{
    normalize_uri, parse_line, parse_lines, window_slice, AccessLog, LogFormat, LogRecord,
    ParseFailure, ParseReason, TimeWindow, Timestamp, UriError, WindowError,
};
pub use wat::{
    access_frequency, build_document_matrix, build_user_profiles, document_rank, train_wat,
    DocumentMatrix, DocumentRow, RowNormalization, TrainedWat, UserProfile, WatEntry, WatError,
};
pub use workload::{
    generate_site, merge_logs, simulate_flood, simulate_normal, SimConfig, SiteGraph,
    WorkloadError, PRNG_NAME,
};
