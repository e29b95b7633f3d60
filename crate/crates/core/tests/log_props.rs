use chrono::{DateTime, Duration};
use proptest::prelude::*;
use webaccess_core::{
    normalize_uri, parse_line, parse_lines, window_slice, AccessLog, LogFormat, LogRecord,
    TimeWindow,
};

fn record_strategy() -> impl Strategy<Value = LogRecord> {
    (
        prop_oneof![
            any::<[u8; 4]>().prop_map(|b| std::net::IpAddr::from(b)),
            any::<[u16; 8]>().prop_map(|b| std::net::IpAddr::from(b)),
        ],
        0i64..4_000_000_000,
        -14i32 * 4..=14 * 4,
        prop::sample::select(vec!["GET", "POST", "HEAD", "PUT"]),
        "/[a-zA-Z0-9 _%?#/.\"\\\\é-]{0,20}",
        prop::option::of("[ -~]{0,12}"),
        100u16..600,
        prop::option::of(any::<u32>()),
        prop::option::of("[ -~]{0,16}"),
        1u64..100_000,
    )
        .prop_filter_map(
            "uri must canonicalize",
            |(ip, secs, quarter_hours, method, raw_uri, referrer, status, bytes, agent, line_no)| {
                let offset = chrono::FixedOffset::east_opt(quarter_hours * 900)?;
                let ts = DateTime::from_timestamp(secs, 0)?.with_timezone(&offset);
                Some(LogRecord {
                    client_ip: ip,
                    timestamp: ts,
                    method: method.into(),
                    uri: normalize_uri(&raw_uri).ok()?,
                    protocol: "HTTP/1.1".into(),
                    referrer: referrer.filter(|r| r != "-"),
                    status,
                    bytes: bytes.map(u64::from),
                    user_agent: agent.filter(|a| a != "-"),
                    line_no,
                })
            },
        )
}

proptest! {
    #[test]
    fn parsing_is_total(lines in prop::collection::vec(".{0,80}", 0..30)) {
        let log = parse_lines(&lines, "fuzz", LogFormat::Combined);
        prop_assert_eq!(log.records.len() + log.skipped, lines.len());
        prop_assert!(log.records.windows(2).all(|w| w[0].line_no < w[1].line_no));
        prop_assert!(log.records.iter().all(|r| r.uri.starts_with('/') && r.line_no >= 1));
    }

    #[test]
    fn format_then_parse_round_trips(r in record_strategy()) {
        let line = r.to_string();
        let back = parse_line(&line, r.line_no, LogFormat::Combined).unwrap();
        prop_assert_eq!(back.timestamp.offset(), r.timestamp.offset());
        prop_assert_eq!(back, r);
    }

    #[test]
    fn normalize_is_idempotent(raw in "/[a-zA-Z0-9%?#/ .éA-F]{0,24}") {
        if let Ok(once) = normalize_uri(&raw) {
            prop_assert_eq!(normalize_uri(&once), Ok(once.clone()));
            prop_assert!(once.starts_with('/'));
            prop_assert!(!once.contains('?') && !once.contains('#'));
        }
    }

    #[test]
    fn adjacent_windows_partition(offsets in prop::collection::vec(0i64..1000, 0..40), cut in 1i64..999) {
        let base = DateTime::parse_from_rfc3339("2023-10-10T00:00:00Z").unwrap();
        let template = parse_line(
            "1.2.3.4 - - [10/Oct/2023:00:00:00 +0000] \"GET / HTTP/1.1\" 200 1",
            1,
            LogFormat::Combined,
        ).unwrap();
        let records = offsets.iter().enumerate().map(|(i, &o)| LogRecord {
            timestamp: base + Duration::seconds(o),
            line_no: i as u64 + 1,
            ..template.clone()
        }).collect();
        let log = AccessLog::from_records(records, "p");
        let mid = base + Duration::seconds(cut);
        let end = base + Duration::seconds(1000);
        let left = window_slice(&log, &TimeWindow::new(base, mid).unwrap());
        let right = window_slice(&log, &TimeWindow::new(mid, end).unwrap());
        let whole = window_slice(&log, &TimeWindow::new(base, end).unwrap());
        prop_assert_eq!(left.records.len() + right.records.len(), whole.records.len());
        let mut joined: Vec<u64> = left.records.iter().chain(&right.records).map(|r| r.line_no).collect();
        joined.sort_unstable();
        let expect: Vec<u64> = whole.records.iter().map(|r| r.line_no).collect();
        prop_assert_eq!(joined, expect);
    }
}
