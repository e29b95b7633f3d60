//! On-disk artifacts: the trained table, the per-user matrix, alert
//! reports and the graph-baseline dumps.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::net::IpAddr;
use std::path::Path;

use chrono::{DateTime, SecondsFormat};
use webaccess_core::{
    Alert, DocumentMatrix, ProximityGraph, RowNormalization, SiteGraph, TimeWindow, Timestamp,
    TrainedWat, WatEntry,
};

pub const WAT_HEADER: &str = "#wat v1";
pub const MATRIX_HEADER: &str = "#matrix v1";

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("IOFailure: {0}")]
    Io(#[from] io::Error),
    #[error("FormatVersionMismatch: expected header `{expected}`, found `{found}`")]
    VersionMismatch { expected: &'static str, found: String },
    #[error("malformed line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("EmptyTraining: refusing to save a table without entries")]
    EmptyTable,
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

fn malformed(line: usize, reason: impl Into<String>) -> FormatError {
    FormatError::Malformed {
        line,
        reason: reason.into(),
    }
}

pub fn iso(t: &Timestamp) -> String {
    t.to_rfc3339_opts(SecondsFormat::Secs, true)
}

pub fn window_label(w: &TimeWindow) -> String {
    format!("{}/{}", iso(&w.start()), iso(&w.end()))
}

fn parse_window(s: &str, line: usize) -> Result<TimeWindow, FormatError> {
    let (a, b) = s
        .split_once('/')
        .ok_or_else(|| malformed(line, "window is not `<start>/<end>`"))?;
    let a = DateTime::parse_from_rfc3339(a).map_err(|e| malformed(line, e.to_string()))?;
    let b = DateTime::parse_from_rfc3339(b).map_err(|e| malformed(line, e.to_string()))?;
    TimeWindow::new(a, b).map_err(|e| malformed(line, e.to_string()))
}

/// Writes `trained.dat`: a header line, then one tab-separated line per
/// entry in rank order. Reals use the shortest decimal that reads back to
/// the same `f64`.
pub fn write_wat<W: Write>(wat: &TrainedWat, mut w: W) -> Result<(), FormatError> {
    if wat.is_empty() {
        return Err(FormatError::EmptyTable);
    }
    writeln!(
        w,
        "{WAT_HEADER} total_logs={} users={} window={}",
        wat.total_logs,
        wat.num_users,
        window_label(&wat.window)
    )?;
    for e in wat.ranked() {
        writeln!(
            w,
            "{}\t{}\t{}\t{}\t{}",
            e.uri, e.mean_freq, e.std_freq, e.rank, e.support
        )?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_wat(wat: &TrainedWat, path: &Path) -> Result<(), FormatError> {
    if wat.is_empty() {
        return Err(FormatError::EmptyTable);
    }
    write_wat(wat, BufWriter::new(fs::File::create(path)?))
}

pub fn read_wat<R: BufRead>(r: R) -> Result<TrainedWat, FormatError> {
    let mut lines = r.lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    let Some(fields) = header.strip_prefix(WAT_HEADER).and_then(|s| s.strip_prefix(' ')) else {
        return Err(FormatError::VersionMismatch {
            expected: WAT_HEADER,
            found: header.chars().take(40).collect(),
        });
    };

    let mut total_logs = None;
    let mut users = None;
    let mut window = None;
    for kv in fields.split(' ') {
        match kv.split_once('=') {
            Some(("total_logs", v)) => total_logs = v.parse::<u64>().ok(),
            Some(("users", v)) => users = v.parse::<usize>().ok(),
            Some(("window", v)) => window = Some(parse_window(v, 1)?),
            _ => return Err(malformed(1, format!("unknown header field `{kv}`"))),
        }
    }
    let total_logs = total_logs.ok_or_else(|| malformed(1, "missing total_logs"))?;
    let num_users = users.ok_or_else(|| malformed(1, "missing users"))?;
    let window = window.ok_or_else(|| malformed(1, "missing window"))?;

    let mut entries = BTreeMap::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        let line = line?;
        let cols: Vec<&str> = line.split('\t').collect();
        let [uri, mean, std, rank, support] = cols[..] else {
            return Err(malformed(line_no, "expected 5 tab-separated columns"));
        };
        let num = |s: &str| s.parse::<f64>().map_err(|e| malformed(line_no, e.to_string()));
        let int = |s: &str| s.parse::<usize>().map_err(|e| malformed(line_no, e.to_string()));
        let entry = WatEntry {
            uri: uri.to_string(),
            mean_freq: num(mean)?,
            std_freq: num(std)?,
            rank: int(rank)?,
            support: int(support)?,
        };
        if !(0.0..=1.0).contains(&entry.mean_freq) || !(entry.std_freq >= 0.0) {
            return Err(malformed(line_no, "frequency out of range"));
        }
        if entries.insert(entry.uri.clone(), entry).is_some() {
            return Err(malformed(line_no, "duplicate URI"));
        }
    }
    if entries.is_empty() {
        return Err(malformed(2, "table has no entries"));
    }
    let ranks: BTreeSet<usize> = entries.values().map(|e: &WatEntry| e.rank).collect();
    if ranks.len() != entries.len() || ranks.first() != Some(&1) || ranks.last() != Some(&entries.len()) {
        return Err(malformed(2, "ranks are not a permutation of 1..n"));
    }
    Ok(TrainedWat {
        entries,
        total_logs,
        num_users,
        window,
    })
}

pub fn load_wat(path: &Path) -> Result<TrainedWat, FormatError> {
    read_wat(BufReader::new(fs::File::open(path)?))
}

/// Writes the test-window document matrix (`am_test.dat`): one line per
/// (user, URI) cell with its hit count and frequency.
pub fn write_matrix<W: Write>(m: &DocumentMatrix, mut w: W) -> Result<(), FormatError> {
    let norm = match m.normalization {
        RowNormalization::WindowTotal => "window",
        RowNormalization::UserTotal => "user",
    };
    writeln!(
        w,
        "{MATRIX_HEADER} window={} normalization={norm} window_total={} users={}",
        window_label(&m.window),
        m.window_total,
        m.rows.len()
    )?;
    for (user, row) in &m.rows {
        for (uri, freq) in row.frequencies() {
            writeln!(w, "{user}\t{uri}\t{}\t{freq}", row.hits(uri))?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Alert lines followed by the `#alerts=` summary.
pub fn write_alert_report<W: Write>(
    alerts: &[Alert],
    window: &TimeWindow,
    mut w: W,
) -> Result<(), FormatError> {
    for a in alerts {
        writeln!(w, "{a}")?;
    }
    writeln!(w, "{}", alert_summary(alerts, window))?;
    w.flush()?;
    Ok(())
}

pub fn alert_summary(alerts: &[Alert], window: &TimeWindow) -> String {
    let flagged: BTreeSet<IpAddr> = alerts.iter().map(|a| a.user).collect();
    format!(
        "#alerts={} users_flagged={} window={}",
        alerts.len(),
        flagged.len(),
        window_label(window)
    )
}

pub fn write_alert_csv<W: Write>(alerts: &[Alert], w: W) -> Result<(), FormatError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["user", "uri", "attempts", "observed", "expected", "deviation", "direction"])?;
    for a in alerts {
        out.write_record([
            a.user.to_string(),
            a.uri.clone(),
            a.attempts.to_string(),
            a.observed_freq.to_string(),
            a.expected_freq.to_string(),
            a.deviation.to_string(),
            a.direction.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

/// Edge list `src<TAB>dst<TAB>weight`. Symmetric graphs list each edge once
/// with `src < dst`.
pub fn write_graph<W: Write>(g: &ProximityGraph, mut w: W) -> Result<(), FormatError> {
    let symmetric = g.is_symmetric();
    for (a, b, weight) in g.arcs() {
        if !symmetric || a < b {
            writeln!(w, "{a}\t{b}\t{weight}")?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_node_labels<W: Write, L: std::fmt::Display>(labels: &[L], mut w: W) -> Result<(), FormatError> {
    for (i, l) in labels.iter().enumerate() {
        writeln!(w, "{i}\t{l}")?;
    }
    w.flush()?;
    Ok(())
}

/// `user,score,rank` where rank 1 is the most anomalous.
pub fn write_scores<W: Write>(ranking: &[(IpAddr, f64)], w: W) -> Result<(), FormatError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["user", "score", "rank"])?;
    for (i, (user, score)) in ranking.iter().enumerate() {
        out.write_record([user.to_string(), score.to_string(), (i + 1).to_string()])?;
    }
    out.flush()?;
    Ok(())
}

/// `uri<TAB>link1,link2,...` per page, entry page first.
pub fn write_site<W: Write>(site: &SiteGraph, mut w: W) -> Result<(), FormatError> {
    for page in &site.pages {
        writeln!(w, "{page}\t{}", site.links_of(page).join(","))?;
    }
    w.flush()?;
    Ok(())
}
