//! The detector checked against a plain recomputation of every
//! (user, URI) deviation, and `rank_shift` against enumeration.

use std::collections::{BTreeMap, BTreeSet};
use std::net::IpAddr;

use chrono::DateTime;
use proptest::prelude::*;
use webaccess_core::{
    detect, rank_shift, Direction, DocumentMatrix, DocumentRow, RowNormalization,
    ThresholdConfig, TimeWindow, TrainedWat, WatEntry,
};

fn window() -> TimeWindow {
    TimeWindow::new(
        DateTime::parse_from_rfc3339("2023-10-10T00:00:00Z").unwrap(),
        DateTime::parse_from_rfc3339("2023-10-11T00:00:00Z").unwrap(),
    )
    .unwrap()
}

fn uri(i: usize) -> String {
    format!("/u{i}")
}

fn wat_from(means: &[(usize, f64, f64)]) -> TrainedWat {
    let mut sorted = means.to_vec();
    sorted.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| uri(a.0).cmp(&uri(b.0))));
    TrainedWat {
        entries: sorted
            .iter()
            .enumerate()
            .map(|(r, &(u, m, s))| {
                (uri(u), WatEntry { uri: uri(u), mean_freq: m, std_freq: s, rank: r + 1, support: 1 })
            })
            .collect(),
        total_logs: 100,
        num_users: 8,
        window: window(),
    }
}

fn matrix_from(rows: &[Vec<u64>], normalization: RowNormalization) -> DocumentMatrix {
    let window_total: u64 = rows.iter().flatten().sum();
    DocumentMatrix {
        window: window(),
        normalization,
        window_total,
        rows: rows
            .iter()
            .enumerate()
            .filter(|(_, counts)| counts.iter().sum::<u64>() > 0)
            .map(|(i, counts)| {
                let total = counts.iter().sum();
                let row = DocumentRow {
                    counts: counts
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c > 0)
                        .map(|(j, &c)| (uri(j), c))
                        .collect(),
                    total,
                    denominator: match normalization {
                        RowNormalization::WindowTotal => window_total,
                        RowNormalization::UserTotal => total,
                    },
                };
                (IpAddr::from([10, 0, 0, i as u8 + 1]), row)
            })
            .collect(),
    }
}

type AlertKey = (IpAddr, String, Direction);

/// Every user with enough requests, every URI seen in the row or in
/// training: flag over-use for URIs the user requested, under-use for
/// trained URIs whose mean reaches the floor.
fn exhaustive(m: &DocumentMatrix, wat: &TrainedWat, cfg: &ThresholdConfig) -> BTreeSet<AlertKey> {
    let mut out = BTreeSet::new();
    for (user, row) in &m.rows {
        if row.total < cfg.min_requests {
            continue;
        }
        let mut uris: BTreeSet<String> = row.counts.keys().cloned().collect();
        uris.extend(wat.entries.keys().cloned());
        for u in uris {
            let hits = row.counts.get(&u).copied().unwrap_or(0);
            let observed = hits as f64 / row.denominator as f64;
            let (mean, std) = wat.entries.get(&u).map_or((0.0, 0.0), |e| (e.mean_freq, e.std_freq));
            let threshold = if cfg.k_sigma * std > cfg.theta_abs { cfg.k_sigma * std } else { cfg.theta_abs };
            let deviation = (observed - mean).abs();
            if deviation <= threshold {
                continue;
            }
            if observed > mean && hits > 0 {
                out.insert((*user, u, Direction::Over));
            } else if observed < mean && mean >= cfg.underflow_floor {
                out.insert((*user, u, Direction::Under));
            }
        }
    }
    out
}

fn small_case() -> impl Strategy<Value = (Vec<Vec<u64>>, Vec<(usize, f64, f64)>, ThresholdConfig, bool)> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(users, uris)| {
        (
            prop::collection::vec(prop::collection::vec(0u64..12, uris), users),
            prop::collection::btree_map(0..uris + 2, (0.0f64..0.6, 0.0f64..0.05), 1..=uris + 2)
                .prop_map(|m| m.into_iter().map(|(u, (a, b))| (u, a, b)).collect::<Vec<_>>()),
            (0.01f64..0.3, 0.0f64..4.0, 1u64..12, 0.0f64..1.2).prop_map(|(t, k, m, f)| ThresholdConfig {
                theta_abs: t,
                k_sigma: k,
                min_requests: m,
                underflow_floor: f,
            }),
            any::<bool>(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn alert_set_matches_exhaustive_recomputation((rows, means, cfg, per_user) in small_case()) {
        let norm = if per_user { RowNormalization::UserTotal } else { RowNormalization::WindowTotal };
        let m = matrix_from(&rows, norm);
        let wat = wat_from(&means);
        let alerts = detect(&m, &wat, &cfg);
        let got: BTreeSet<AlertKey> = alerts.iter().map(|a| (a.user, a.uri.clone(), a.direction)).collect();
        prop_assert_eq!(got.len(), alerts.len(), "no duplicate alerts");
        prop_assert_eq!(&got, &exhaustive(&m, &wat, &cfg));
        for a in &alerts {
            let std = wat.entries.get(&a.uri).map_or(0.0, |e| e.std_freq);
            prop_assert!(a.deviation > cfg.effective_threshold(std));
            if a.direction == Direction::Over {
                prop_assert!(a.attempts >= 1);
            }
        }
        for w in alerts.windows(2) {
            prop_assert!(
                w[0].deviation > w[1].deviation
                    || (w[0].deviation == w[1].deviation && (&w[0].user, &w[0].uri) < (&w[1].user, &w[1].uri))
            );
        }
    }

    #[test]
    fn doubling_theta_never_adds_alerts((rows, means, cfg, per_user) in small_case()) {
        let norm = if per_user { RowNormalization::UserTotal } else { RowNormalization::WindowTotal };
        let m = matrix_from(&rows, norm);
        let wat = wat_from(&means);
        let key = |c: &ThresholdConfig| -> BTreeSet<AlertKey> {
            detect(&m, &wat, c).into_iter().map(|a| (a.user, a.uri, a.direction)).collect()
        };
        let strict = ThresholdConfig { theta_abs: cfg.theta_abs * 2.0, ..cfg };
        prop_assert!(key(&strict).is_subset(&key(&cfg)));
    }
}

#[test]
fn flooding_row_is_ranked_first() {
    // Eight ordinary users spread over four URIs, one user hammering /u3.
    let mut rows: Vec<Vec<u64>> = (0..8).map(|i| vec![6 + i % 3, 4, 3 + i % 2, 2]).collect();
    rows.push(vec![0, 0, 0, 60]);
    let m = matrix_from(&rows, RowNormalization::WindowTotal);
    let total = m.window_total as f64;
    let wat = wat_from(&[(0, 7.0 / total, 0.002), (1, 4.0 / total, 0.0), (2, 3.5 / total, 0.002), (3, 2.0 / total, 0.0)]);
    let cfg = ThresholdConfig { theta_abs: 0.05, ..Default::default() };

    // brute force: largest |observed - expected| over every cell
    let mut best = (0.0f64, IpAddr::from([0, 0, 0, 0]));
    for (user, row) in &m.rows {
        for j in 0..4 {
            let obs = row.counts.get(&uri(j)).copied().unwrap_or(0) as f64 / total;
            let d = (obs - wat.entries[&uri(j)].mean_freq).abs();
            if d > best.0 {
                best = (d, *user);
            }
        }
    }
    let alerts = detect(&m, &wat, &cfg);
    assert_eq!(best.1, IpAddr::from([10, 0, 0, 9]));
    assert_eq!(alerts[0].user, best.1);
    assert_eq!(alerts[0].deviation, best.0);
    assert!(alerts.iter().all(|a| a.user == best.1), "{alerts:?}");
}

/// Footrule written out position by position.
fn footrule(trained: &[&str], observed: &[&str], top_n: usize) -> usize {
    let pos = |list: &[&str], u: &str| list.iter().take(top_n).position(|x| *x == u).map_or(top_n + 1, |p| p + 1);
    let mut union: Vec<&str> = trained.iter().take(top_n).chain(observed.iter().take(top_n)).copied().collect();
    union.sort();
    union.dedup();
    union.iter().map(|u| pos(trained, u).abs_diff(pos(observed, u))).sum()
}

fn permutations(items: &[&'static str]) -> Vec<Vec<&'static str>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = vec![];
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

#[test]
fn rank_shift_maximum_matches_enumeration() {
    let wat = wat_from(&[(0, 0.4, 0.0), (1, 0.3, 0.0), (2, 0.2, 0.0), (3, 0.1, 0.0)]);
    let trained: Vec<String> = wat.ranked().iter().map(|e| e.uri.clone()).collect();
    let trained: Vec<&str> = trained.iter().map(String::as_str).collect();
    let pool = ["/u0", "/u1", "/u2", "/u3", "/x", "/y"];
    let top_n = 2;

    // every ordered choice of the row's top two URIs
    let mut max = 0;
    for p in permutations(&pool) {
        max = max.max(footrule(&trained, &p[..2], top_n));
    }
    assert_eq!(max, 6);

    let row = |counts: &[(&str, u64)]| DocumentRow {
        counts: counts.iter().map(|&(u, c)| (u.to_string(), c)).collect(),
        total: counts.iter().map(|c| c.1).sum(),
        denominator: counts.iter().map(|c| c.1).sum(),
    };
    let disjoint = row(&[("/x", 5), ("/y", 2)]);
    assert_eq!(rank_shift(&disjoint, &wat, top_n), max as f64);
    assert_eq!(footrule(&trained, &["/x", "/y"], top_n), 6);

    // the library agrees with the reference on every two-URI row ranking
    for p in permutations(&pool) {
        let r = row(&[(p[0], 9), (p[1], 4), (p[2], 1)]);
        assert_eq!(rank_shift(&r, &wat, top_n), footrule(&trained, &p[..3], top_n) as f64, "{p:?}");
    }
}

#[test]
fn rank_shift_is_zero_for_matching_ranking() {
    let wat = wat_from(&[(0, 0.4, 0.0), (1, 0.3, 0.0), (2, 0.2, 0.0)]);
    let r = DocumentRow {
        counts: BTreeMap::from([(uri(0), 8), (uri(1), 6), (uri(2), 4)]),
        total: 18,
        denominator: 18,
    };
    for n in 1..=4 {
        assert_eq!(rank_shift(&r, &wat, n), 0.0);
    }
}
