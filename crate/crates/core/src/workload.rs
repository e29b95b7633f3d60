//! Seeded synthetic traffic: a site link structure, random-walk browsing
//! sessions and a single-URI flood.
//!
//! All randomness comes from ChaCha8 seeded with `seed_from_u64`, so a
//! given seed produces the same bytes on every platform.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::net::{IpAddr, Ipv4Addr};

use chrono::Duration;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::log_model::{AccessLog, LogRecord, Timestamp};

/// Recorded in generated artifacts so fixtures can be reproduced.
pub const PRNG_NAME: &str = "chacha8";

/// Probability that a browsing step jumps back to the entry page.
const RESTART_PROB: f64 = 0.10;

const AGENTS: [&str; 4] = [
    "Mozilla/5.0 (X11; Linux x86_64; rv:118.0) Gecko/20100101 Firefox/118.0",
    "Mozilla/5.0 (Windows NT 10.0; Win64; x64) AppleWebKit/537.36 (KHTML, like Gecko) Chrome/117.0 Safari/537.36",
    "Mozilla/5.0 (Macintosh; Intel Mac OS X 13_5) AppleWebKit/605.1.15 (KHTML, like Gecko) Version/16.6 Safari/605.1.15",
    "Mozilla/5.0 (iPhone; CPU iPhone OS 16_6 like Mac OS X) AppleWebKit/605.1.15 Mobile/15E148",
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WorkloadError {
    #[error("UnknownTarget: {0} is not a page of the site")]
    UnknownTarget(String),
    #[error("invalid simulation parameter: {0}")]
    InvalidParameter(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteGraph {
    /// Pages in creation order; `pages[0]` is the entry `/`.
    pub pages: Vec<String>,
    pub links: BTreeMap<String, Vec<String>>,
}

impl SiteGraph {
    pub fn entry(&self) -> &str {
        &self.pages[0]
    }

    pub fn contains(&self, uri: &str) -> bool {
        self.links.contains_key(uri)
    }

    pub fn links_of(&self, uri: &str) -> &[String] {
        self.links.get(uri).map_or(&[], Vec::as_slice)
    }

    /// Page with the longest path, ties resolved toward later pages.
    pub fn deepest_page(&self) -> &str {
        self.pages
            .iter()
            .max_by_key(|p| p.matches('/').count())
            .map(String::as_str)
            .unwrap_or("/")
    }

    /// Pages reachable from the entry by following links.
    pub fn reachable(&self) -> usize {
        let mut seen = BTreeMap::new();
        let mut queue = VecDeque::from([self.entry()]);
        seen.insert(self.entry(), ());
        while let Some(p) = queue.pop_front() {
            for next in self.links_of(p) {
                if seen.insert(next.as_str(), ()).is_none() {
                    queue.push_back(next);
                }
            }
        }
        seen.len()
    }
}

/// Random site with `num_pages` pages and out-degree at most `branching`.
///
/// Pages form a random tree rooted at `/` (each page hangs under an
/// earlier page with spare capacity, and its URI extends the parent's
/// path), then extra cross links are added while capacity remains.
pub fn generate_site(num_pages: usize, branching: usize, seed: u64) -> SiteGraph {
    let num_pages = num_pages.max(1);
    let branching = branching.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut pages: Vec<String> = vec!["/".into()];
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut open: Vec<usize> = vec![0];
    for i in 1..num_pages {
        let slot = rng.gen_range(0..open.len());
        let parent = open[slot];
        let base = if parent == 0 { "" } else { pages[parent].as_str() };
        pages.push(format!("{base}/n{i}"));
        children.push(Vec::new());
        children[parent].push(i);
        if children[parent].len() >= branching {
            open.swap_remove(slot);
        }
        open.push(i);
    }

    for (i, kids) in children.iter_mut().enumerate() {
        let extra = rng.gen_range(0..=branching - kids.len().min(branching));
        for _ in 0..extra {
            let target = rng.gen_range(0..num_pages);
            if target != i && !kids.contains(&target) && kids.len() < branching {
                kids.push(target);
            }
        }
    }

    let links = children
        .iter()
        .enumerate()
        .map(|(i, kids)| (pages[i].clone(), kids.iter().map(|&k| pages[k].clone()).collect()))
        .collect();
    SiteGraph { pages, links }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimConfig {
    pub seed: u64,
    pub num_users: usize,
    /// Mean requests per user; actual lengths are uniform on
    /// `[ceil(L/2), L + floor(L/2)]`.
    pub session_len: usize,
    pub start: Timestamp,
    pub duration_secs: u32,
}

impl SimConfig {
    fn validate(&self) -> Result<(), WorkloadError> {
        if self.num_users == 0 {
            return Err(WorkloadError::InvalidParameter("num_users must be at least 1"));
        }
        if self.session_len == 0 {
            return Err(WorkloadError::InvalidParameter("session_len must be at least 1"));
        }
        if self.duration_secs == 0 {
            return Err(WorkloadError::InvalidParameter("duration must be positive"));
        }
        Ok(())
    }
}

/// Address of simulated user `i`: 10.1.0.1, 10.1.0.2, ...
pub fn user_ip(i: usize) -> IpAddr {
    let n = i as u32 + 1;
    IpAddr::V4(Ipv4Addr::new(10, 1 + (n >> 16) as u8, (n >> 8) as u8, n as u8))
}

fn page_bytes(uri: &str) -> u64 {
    // FNV-1a, so a page always reports the same size
    let h = uri
        .bytes()
        .fold(0xcbf2_9ce4_8422_2325_u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
    512 + h % 40_000
}

/// Normal browsing: each user walks the site's links from the entry page,
/// restarting at the entry with probability 0.1 per step (and whenever a
/// page has no links). Records come back sorted by timestamp.
pub fn simulate_normal(site: &SiteGraph, cfg: &SimConfig) -> Result<AccessLog, WorkloadError> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let lo = cfg.session_len.div_ceil(2);
    let hi = cfg.session_len + cfg.session_len / 2;
    let last = i64::from(cfg.duration_secs) - 1;

    let mut records = Vec::new();
    for u in 0..cfg.num_users {
        let ip = user_ip(u);
        let agent = AGENTS[rng.gen_range(0..AGENTS.len())];
        let len = rng.gen_range(lo..=hi);
        // the whole session fits in the window, squeezed if it is too long
        let gaps: Vec<i64> = (1..len).map(|_| rng.gen_range(1..=20)).collect();
        let span: i64 = gaps.iter().sum();
        let begin = rng.gen_range(0..=(last - span).max(0));
        let mut elapsed = 0;
        let mut offset = begin;
        let mut page: &str = site.entry();
        let mut referrer: Option<&str> = None;
        for step in 0..len {
            if step > 0 {
                elapsed += gaps[step - 1];
                offset = begin + if span > last { elapsed * last / span } else { elapsed };
                let links = site.links_of(page);
                if links.is_empty() || rng.gen_bool(RESTART_PROB) {
                    referrer = None;
                    page = site.entry();
                } else {
                    referrer = Some(page);
                    page = links.choose(&mut rng).map(String::as_str).unwrap_or("/");
                }
            }
            records.push(LogRecord {
                client_ip: ip,
                timestamp: cfg.start + Duration::seconds(offset),
                method: "GET".into(),
                uri: page.into(),
                protocol: "HTTP/1.1".into(),
                referrer: referrer.map(Into::into),
                status: 200,
                bytes: Some(page_bytes(page)),
                user_agent: Some(agent.into()),
                line_no: 0,
            });
        }
    }
    records.sort_by_key(|r| r.timestamp);
    for (i, r) in records.iter_mut().enumerate() {
        r.line_no = i as u64 + 1;
    }
    Ok(AccessLog::from_records(records, format!("normal:{PRNG_NAME}:{}", cfg.seed)))
}

/// `count` requests for `target_uri` from `attacker`, spread evenly over
/// the configured window.
pub fn simulate_flood(
    site: &SiteGraph,
    attacker: IpAddr,
    target_uri: &str,
    count: usize,
    cfg: &SimConfig,
) -> Result<AccessLog, WorkloadError> {
    if !site.contains(target_uri) {
        return Err(WorkloadError::UnknownTarget(target_uri.into()));
    }
    if count == 0 {
        return Err(WorkloadError::InvalidParameter("flood count must be at least 1"));
    }
    cfg.validate()?;
    let span = u64::from(cfg.duration_secs);
    let records = (0..count as u64)
        .map(|i| LogRecord {
            client_ip: attacker,
            timestamp: cfg.start + Duration::seconds((i * span / count as u64) as i64),
            method: "GET".into(),
            uri: target_uri.into(),
            protocol: "HTTP/1.1".into(),
            referrer: None,
            status: 200,
            bytes: Some(page_bytes(target_uri)),
            user_agent: Some("python-requests/2.31.0".into()),
            line_no: i + 1,
        })
        .collect();
    Ok(AccessLog::from_records(records, format!("flood:{attacker}")))
}

/// Stable merge by timestamp; equal timestamps keep input-list order.
pub fn merge_logs(logs: &[AccessLog]) -> AccessLog {
    let mut records: Vec<LogRecord> = logs.iter().flat_map(|l| l.records.iter().cloned()).collect();
    records.sort_by_key(|r| r.timestamp);
    let source = logs.iter().map(|l| l.source.as_str()).collect::<Vec<_>>().join("+");
    AccessLog {
        records,
        skipped: logs.iter().map(|l| l.skipped).sum(),
        source,
    }
}
