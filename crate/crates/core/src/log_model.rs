//! Access-log records, the Combined Log Format grammar and time windows.
//!
//! Accepted line shape:
//!
//! ```text
//! <ip> <ident> <authuser> [<dd>/<Mon>/<yyyy>:<hh>:<mm>:<ss> <±hhmm>] "<method> <target> <protocol>" <status> <bytes|-> "<referrer|->" "<agent>"
//! ```
//!
//! The referrer and agent fields may be missing entirely (Common Log
//! Format). Request targets are canonicalized by [`normalize_uri`] so that
//! every spelling of the same document counts as one URI.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::net::IpAddr;

use chrono::{DateTime, Datelike, Duration, FixedOffset, NaiveDate, Timelike};

/// A wall-clock instant with its original UTC offset, second precision.
pub type Timestamp = DateTime<FixedOffset>;

const MONTHS: [&str; 12] = [
    "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogFormat {
    /// Seven fields; anything after the byte count is ignored.
    Common,
    /// Common fields plus optional quoted referrer and user agent.
    #[default]
    Combined,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogRecord {
    pub client_ip: IpAddr,
    pub timestamp: Timestamp,
    pub method: String,
    /// Canonical request path, see [`normalize_uri`].
    pub uri: String,
    pub protocol: String,
    pub referrer: Option<String>,
    pub status: u16,
    pub bytes: Option<u64>,
    pub user_agent: Option<String>,
    /// 1-based line number in the source the record was read from.
    pub line_no: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum UriError {
    #[error("empty request target")]
    Empty,
    #[error("request target is not an origin-form path: {0:?}")]
    NotAPath(String),
    #[error("request target is not valid UTF-8 after percent-decoding")]
    InvalidUtf8,
    #[error("request target decodes to a control character")]
    ControlCharacter,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseReason {
    #[error("grammar mismatch: {0}")]
    GrammarMismatch(&'static str),
    #[error("invalid client address")]
    BadAddress,
    #[error("invalid timestamp")]
    BadTimestamp,
    #[error("invalid status code")]
    BadStatus,
    #[error("invalid byte count")]
    BadBytes,
    #[error("malformed URI: {0}")]
    MalformedUri(UriError),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line_no}: {reason}")]
pub struct ParseFailure {
    pub line_no: u64,
    pub reason: ParseReason,
}

/// A parsed log: the records that matched the grammar plus a tally of
/// the lines that did not.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AccessLog {
    pub records: Vec<LogRecord>,
    pub skipped: usize,
    pub source: String,
}

impl AccessLog {
    pub fn new(source: impl Into<String>) -> Self {
        AccessLog {
            records: Vec::new(),
            skipped: 0,
            source: source.into(),
        }
    }

    pub fn from_records(records: Vec<LogRecord>, source: impl Into<String>) -> Self {
        AccessLog {
            records,
            skipped: 0,
            source: source.into(),
        }
    }

    /// Number of lines consumed so far (parsed plus skipped).
    pub fn lines_seen(&self) -> u64 {
        (self.records.len() + self.skipped) as u64
    }

    /// Parses the next input line. Failures are tallied into `skipped` and
    /// also returned so the caller can report them.
    pub fn ingest(&mut self, line: &str, format: LogFormat) -> Result<(), ParseFailure> {
        let line_no = self.lines_seen() + 1;
        match parse_line(line, line_no, format) {
            Ok(record) => {
                self.records.push(record);
                Ok(())
            }
            Err(failure) => {
                self.skipped += 1;
                Err(failure)
            }
        }
    }

    /// Stable sort by timestamp.
    pub fn sort_by_time(&mut self) {
        self.records.sort_by_key(|r| r.timestamp);
    }

    pub fn is_time_ordered(&self) -> bool {
        self.records
            .windows(2)
            .all(|w| w[0].timestamp <= w[1].timestamp)
    }
}

/// Parses every line of `lines` into an [`AccessLog`]. Never fails: lines
/// that do not match the grammar are counted in `skipped`.
pub fn parse_lines<I, S>(lines: I, source: &str, format: LogFormat) -> AccessLog
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut log = AccessLog::new(source);
    for line in lines {
        let _ = log.ingest(line.as_ref(), format);
    }
    log
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WindowError {
    #[error("window start must precede its end")]
    Empty,
}

/// Half-open interval `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TimeWindow {
    start: Timestamp,
    end: Timestamp,
}

impl TimeWindow {
    pub fn new(start: Timestamp, end: Timestamp) -> Result<Self, WindowError> {
        if start < end {
            Ok(TimeWindow { start, end })
        } else {
            Err(WindowError::Empty)
        }
    }

    pub fn start(&self) -> Timestamp {
        self.start
    }

    pub fn end(&self) -> Timestamp {
        self.end
    }

    pub fn contains(&self, t: &Timestamp) -> bool {
        self.start <= *t && *t < self.end
    }

    /// Smallest second-granular window holding every record:
    /// `[min, max + 1s)`. `None` for an empty input.
    pub fn covering<'a, I>(records: I) -> Option<TimeWindow>
    where
        I: IntoIterator<Item = &'a LogRecord>,
    {
        let mut bounds: Option<(Timestamp, Timestamp)> = None;
        for r in records {
            bounds = Some(match bounds {
                None => (r.timestamp, r.timestamp),
                Some((lo, hi)) => (lo.min(r.timestamp), hi.max(r.timestamp)),
            });
        }
        bounds.map(|(lo, hi)| TimeWindow {
            start: lo,
            end: hi + Duration::seconds(1),
        })
    }
}

/// Records with `w.start <= timestamp < w.end`, in their original order.
/// The skipped-line tally of the source log is carried over.
pub fn window_slice(log: &AccessLog, w: &TimeWindow) -> AccessLog {
    AccessLog {
        records: log
            .records
            .iter()
            .filter(|r| w.contains(&r.timestamp))
            .cloned()
            .collect(),
        skipped: log.skipped,
        source: log.source.clone(),
    }
}

/// Canonicalizes a request target:
///
/// * the query string and fragment are dropped,
/// * percent-escapes are decoded once, except `%25`, `%3F` and `%23`
///   which stay encoded (upper-cased) so that the result is a fixed point,
/// * a `%` that does not start a valid escape becomes `%25`,
/// * trailing `/` are removed, except for the root path.
///
/// The result always begins with `/` and contains no control characters.
pub fn normalize_uri(raw: &str) -> Result<String, UriError> {
    if raw.is_empty() {
        return Err(UriError::Empty);
    }
    let path = raw.split(['?', '#']).next().unwrap_or("");
    if !path.starts_with('/') {
        return Err(UriError::NotAPath(raw.into()));
    }

    let bytes = path.as_bytes();
    let mut out = Vec::with_capacity(bytes.len());
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        if b != b'%' {
            out.push(b);
            i += 1;
            continue;
        }
        match (bytes.get(i + 1), bytes.get(i + 2)) {
            (Some(&h), Some(&l)) if h.is_ascii_hexdigit() && l.is_ascii_hexdigit() => {
                let decoded = (hex_value(h) << 4) | hex_value(l);
                if matches!(decoded, b'%' | b'?' | b'#') {
                    out.push(b'%');
                    out.push(h.to_ascii_uppercase());
                    out.push(l.to_ascii_uppercase());
                } else {
                    out.push(decoded);
                }
                i += 3;
            }
            _ => {
                out.extend_from_slice(b"%25");
                i += 1;
            }
        }
    }

    let mut uri = String::from_utf8(out).map_err(|_| UriError::InvalidUtf8)?;
    if uri.chars().any(char::is_control) {
        return Err(UriError::ControlCharacter);
    }
    while uri.len() > 1 && uri.ends_with('/') {
        uri.pop();
    }
    Ok(uri)
}

fn hex_value(b: u8) -> u8 {
    match b {
        b'0'..=b'9' => b - b'0',
        b'a'..=b'f' => b - b'a' + 10,
        _ => b - b'A' + 10,
    }
}

/// Parses one log line (without its trailing newline).
pub fn parse_line(line: &str, line_no: u64, format: LogFormat) -> Result<LogRecord, ParseFailure> {
    let fail = |reason| ParseFailure { line_no, reason };
    let mismatch = |what| fail(ParseReason::GrammarMismatch(what));

    let mut cur = Cursor { rest: line };
    let ip = cur.word().ok_or_else(|| mismatch("missing client address"))?;
    let client_ip: IpAddr = ip.parse().map_err(|_| fail(ParseReason::BadAddress))?;
    cur.word().ok_or_else(|| mismatch("missing ident field"))?;
    cur.word().ok_or_else(|| mismatch("missing authuser field"))?;

    let ts = cur
        .bracketed()
        .ok_or_else(|| mismatch("missing [timestamp]"))?;
    let timestamp = parse_timestamp(ts).ok_or_else(|| fail(ParseReason::BadTimestamp))?;

    let request = cur
        .quoted()
        .ok_or_else(|| mismatch("missing quoted request line"))?;
    let mut parts = request.split(' ');
    let (method, target, protocol) = match (parts.next(), parts.next(), parts.next(), parts.next())
    {
        (Some(m), Some(t), Some(p), None) if !m.is_empty() && !t.is_empty() && !p.is_empty() => {
            (m, t, p)
        }
        _ => return Err(mismatch("request line is not `<method> <target> <protocol>`")),
    };
    if !method.bytes().all(is_tchar) {
        return Err(mismatch("invalid method token"));
    }
    let uri = normalize_uri(target).map_err(|e| fail(ParseReason::MalformedUri(e)))?;

    let status = cur.word().ok_or_else(|| mismatch("missing status"))?;
    let status = match status.parse::<u16>() {
        Ok(s) if status.len() == 3 && (100..=599).contains(&s) => s,
        _ => return Err(fail(ParseReason::BadStatus)),
    };
    let bytes = match cur.word().ok_or_else(|| mismatch("missing byte count"))? {
        "-" => None,
        b => Some(b.parse::<u64>().map_err(|_| fail(ParseReason::BadBytes))?),
    };

    let mut referrer = None;
    let mut user_agent = None;
    if format == LogFormat::Combined {
        if !cur.at_end() {
            referrer = dash_as_none(cur.quoted().ok_or_else(|| mismatch("bad referrer field"))?);
            if !cur.at_end() {
                user_agent =
                    dash_as_none(cur.quoted().ok_or_else(|| mismatch("bad user-agent field"))?);
            }
        }
        if !cur.at_end() {
            return Err(mismatch("trailing content after user agent"));
        }
    }

    Ok(LogRecord {
        client_ip,
        timestamp,
        method: method.into(),
        uri,
        protocol: protocol.into(),
        referrer,
        status,
        bytes,
        user_agent,
        line_no,
    })
}

fn dash_as_none(s: String) -> Option<String> {
    if s == "-" {
        None
    } else {
        Some(s)
    }
}

fn is_tchar(b: u8) -> bool {
    b.is_ascii_alphanumeric() || b"!#$%&'*+-.^_`|~".contains(&b)
}

struct Cursor<'a> {
    rest: &'a str,
}

impl<'a> Cursor<'a> {
    fn skip_spaces(&mut self) {
        self.rest = self.rest.trim_start_matches(' ');
    }

    fn at_end(&mut self) -> bool {
        self.rest = self.rest.trim_start();
        self.rest.is_empty()
    }

    fn word(&mut self) -> Option<&'a str> {
        self.skip_spaces();
        let end = self.rest.find(' ').unwrap_or(self.rest.len());
        if end == 0 {
            return None;
        }
        let (w, rest) = self.rest.split_at(end);
        self.rest = rest;
        Some(w)
    }

    fn bracketed(&mut self) -> Option<&'a str> {
        self.skip_spaces();
        let inner = self.rest.strip_prefix('[')?;
        let close = inner.find(']')?;
        self.rest = &inner[close + 1..];
        Some(&inner[..close])
    }

    /// A double-quoted field; `\"` and `\\` are unescaped, any other
    /// backslash is kept literally.
    fn quoted(&mut self) -> Option<String> {
        self.skip_spaces();
        let inner = self.rest.strip_prefix('"')?;
        let mut out = String::new();
        let mut chars = inner.char_indices();
        while let Some((i, c)) = chars.next() {
            match c {
                '"' => {
                    self.rest = &inner[i + 1..];
                    return Some(out);
                }
                '\\' => match inner[i + 1..].chars().next() {
                    Some(next @ ('"' | '\\')) => {
                        out.push(next);
                        chars.next();
                    }
                    _ => out.push('\\'),
                },
                c => out.push(c),
            }
        }
        None
    }
}

/// `dd/Mon/yyyy:hh:mm:ss ±hhmm`
fn parse_timestamp(s: &str) -> Option<Timestamp> {
    let b = s.as_bytes();
    if b.len() != 26 || b[2] != b'/' || b[6] != b'/' || b[11] != b':' || b[14] != b':' {
        return None;
    }
    if b[17] != b':' || b[20] != b' ' {
        return None;
    }
    let day = digits(&b[0..2])?;
    let month = MONTHS.iter().position(|m| m.as_bytes() == &b[3..6])? as u32 + 1;
    let year = digits(&b[7..11])? as i32;
    let hour = digits(&b[12..14])?;
    let minute = digits(&b[15..17])?;
    let second = digits(&b[18..20])?;
    let sign = match b[21] {
        b'+' => 1,
        b'-' => -1,
        _ => return None,
    };
    let off_h = digits(&b[22..24])? as i32;
    let off_m = digits(&b[24..26])? as i32;
    if off_m >= 60 {
        return None;
    }
    let offset = FixedOffset::east_opt(sign * (off_h * 3600 + off_m * 60))?;
    let naive = NaiveDate::from_ymd_opt(year, month, day)?.and_hms_opt(hour, minute, second)?;
    naive.and_local_timezone(offset).single()
}

fn digits(b: &[u8]) -> Option<u32> {
    b.iter().try_fold(0u32, |acc, &d| {
        d.is_ascii_digit().then(|| acc * 10 + u32::from(d - b'0'))
    })
}

/// Renders a timestamp in the bracket-free access-log form.
pub struct ClfTime<'a>(pub &'a Timestamp);

impl fmt::Display for ClfTime<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let local = self.0.naive_local();
        let off = self.0.offset().local_minus_utc();
        let sign = if off < 0 { '-' } else { '+' };
        let off = off.abs();
        write!(
            f,
            "{:02}/{}/{:04}:{:02}:{:02}:{:02} {}{:02}{:02}",
            local.day(),
            MONTHS[local.month0() as usize],
            local.year(),
            local.hour(),
            local.minute(),
            local.second(),
            sign,
            off / 3600,
            (off % 3600) / 60
        )
    }
}

struct Quoted<'a>(Option<&'a str>);

impl fmt::Display for Quoted<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("\"")?;
        match self.0 {
            None => f.write_str("-")?,
            Some(s) => {
                for c in s.chars() {
                    match c {
                        '"' => f.write_str("\\\"")?,
                        '\\' => f.write_str("\\\\")?,
                        c => fmt::Write::write_char(f, c)?,
                    }
                }
            }
        }
        f.write_str("\"")
    }
}

/// Writes the record back as one Combined Log Format line. Spaces and
/// quotes in the URI are percent-encoded so the line re-parses to an
/// equal record.
impl fmt::Display for LogRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - - [{}] \"{} ", self.client_ip, ClfTime(&self.timestamp), self.method)?;
        for c in self.uri.chars() {
            match c {
                ' ' => f.write_str("%20")?,
                '"' => f.write_str("%22")?,
                '\\' => f.write_str("%5C")?,
                c => fmt::Write::write_char(f, c)?,
            }
        }
        write!(f, " {}\" {} ", self.protocol, self.status)?;
        match self.bytes {
            Some(b) => write!(f, "{b}")?,
            None => f.write_str("-")?,
        }
        write!(
            f,
            " {} {}",
            Quoted(self.referrer.as_deref()),
            Quoted(self.user_agent.as_deref())
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    const SAMPLE_LINE: &str = "10.0.0.2 - - [10/Oct/2023:13:55:36 +0000] \"GET /layer7/myweb/sample3/images/album_pics03.jpg HTTP/1.1\" 200 2326 \"-\" \"Mozilla/5.0\"";

    fn ts(s: &str) -> Timestamp {
        DateTime::parse_from_rfc3339(s).unwrap()
    }

    #[test]
    fn parses_combined_line() {
        let r = parse_line(SAMPLE_LINE, 1, LogFormat::Combined).unwrap();
        assert_eq!(r.client_ip, "10.0.0.2".parse::<IpAddr>().unwrap());
        assert_eq!(r.uri, "/layer7/myweb/sample3/images/album_pics03.jpg");
        assert_eq!(r.status, 200);
        assert_eq!(r.bytes, Some(2326));
        assert_eq!(r.referrer, None);
        assert_eq!(r.user_agent.as_deref(), Some("Mozilla/5.0"));
        assert_eq!(r.timestamp, ts("2023-10-10T13:55:36Z"));
        assert_eq!(r.line_no, 1);
    }

    #[test]
    fn rejects_garbage() {
        let err = parse_line("not a log line", 7, LogFormat::Combined).unwrap_err();
        assert_eq!(err.line_no, 7);
        assert!(matches!(err.reason, ParseReason::BadAddress | ParseReason::GrammarMismatch(_)));
        let err = parse_line("", 1, LogFormat::Combined).unwrap_err();
        assert!(matches!(err.reason, ParseReason::GrammarMismatch(_)));
    }

    #[test]
    fn common_format_has_no_referrer_or_agent() {
        let line = "::1 - alice [01/Feb/2024:00:00:00 -0530] \"POST /login HTTP/2\" 302 -";
        let r = parse_line(line, 3, LogFormat::Combined).unwrap();
        assert_eq!(r.client_ip, "::1".parse::<IpAddr>().unwrap());
        assert_eq!(r.bytes, None);
        assert_eq!(r.referrer, None);
        assert_eq!(r.user_agent, None);
        assert_eq!(r.timestamp, ts("2024-02-01T00:00:00-05:30"));

        let r = parse_line(SAMPLE_LINE, 1, LogFormat::Common).unwrap();
        assert_eq!(r.user_agent, None);
    }

    #[test]
    fn referrer_and_escaped_quotes() {
        let line = r#"1.2.3.4 - - [10/Oct/2023:13:55:36 +0000] "GET /a?x=1 HTTP/1.1" 404 0 "http://ref/" "agent \"q\" x""#;
        let r = parse_line(line, 1, LogFormat::Combined).unwrap();
        assert_eq!(r.uri, "/a");
        assert_eq!(r.referrer.as_deref(), Some("http://ref/"));
        assert_eq!(r.user_agent.as_deref(), Some("agent \"q\" x"));
    }

    #[test]
    fn field_level_failures() {
        let base = |ip: &str, ts: &str, req: &str, status: &str, bytes: &str| {
            format_args_line(ip, ts, req, status, bytes)
        };
        let cases = [
            (base("999.1.1.1", "10/Oct/2023:13:55:36 +0000", "GET / HTTP/1.1", "200", "1"), ParseReason::BadAddress),
            (base("1.1.1.1", "10/Foo/2023:13:55:36 +0000", "GET / HTTP/1.1", "200", "1"), ParseReason::BadTimestamp),
            (base("1.1.1.1", "31/Feb/2023:13:55:36 +0000", "GET / HTTP/1.1", "200", "1"), ParseReason::BadTimestamp),
            (base("1.1.1.1", "10/Oct/2023:13:55:36 +0000", "GET / HTTP/1.1", "20x", "1"), ParseReason::BadStatus),
            (base("1.1.1.1", "10/Oct/2023:13:55:36 +0000", "GET / HTTP/1.1", "200", "x"), ParseReason::BadBytes),
            (
                base("1.1.1.1", "10/Oct/2023:13:55:36 +0000", "CONNECT host:443 HTTP/1.1", "200", "1"),
                ParseReason::MalformedUri(UriError::NotAPath("host:443".into())),
            ),
        ];
        for (line, want) in cases {
            assert_eq!(parse_line(&line, 1, LogFormat::Combined).unwrap_err().reason, want, "{line}");
        }
    }

    fn format_args_line(ip: &str, ts: &str, req: &str, status: &str, bytes: &str) -> String {
        alloc::format!("{ip} - - [{ts}] \"{req}\" {status} {bytes} \"-\" \"ua\"")
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_uri("/a?x=1").unwrap(), "/a");
        assert_eq!(normalize_uri("/").unwrap(), "/");
        assert_eq!(normalize_uri("/img%20x/").unwrap(), "/img x");
        assert_eq!(normalize_uri("/a#frag").unwrap(), "/a");
        assert_eq!(normalize_uri("/100%").unwrap(), "/100%25");
        assert_eq!(normalize_uri("/q%3fmark").unwrap(), "/q%3Fmark");
        assert_eq!(normalize_uri(""), Err(UriError::Empty));
        assert_eq!(normalize_uri("*"), Err(UriError::NotAPath("*".into())));
        assert_eq!(normalize_uri("/a%0Ab"), Err(UriError::ControlCharacter));
        assert_eq!(normalize_uri("/%FF"), Err(UriError::InvalidUtf8));
    }

    #[test]
    fn display_reparses_to_same_record() {
        let r = parse_line(SAMPLE_LINE, 4, LogFormat::Combined).unwrap();
        let again = parse_line(&r.to_string(), 4, LogFormat::Combined).unwrap();
        assert_eq!(r, again);
        assert_eq!(r.to_string(), SAMPLE_LINE);
    }

    #[test]
    fn parse_lines_counts() {
        assert_eq!(parse_lines(Vec::<&str>::new(), "empty", LogFormat::Combined), AccessLog::new("empty"));
        let lines = vec![SAMPLE_LINE, "garbage", SAMPLE_LINE, SAMPLE_LINE];
        let log = parse_lines(&lines, "t", LogFormat::Combined);
        assert_eq!(log.records.len(), 3);
        assert_eq!(log.skipped, 1);
        let nos: Vec<u64> = log.records.iter().map(|r| r.line_no).collect();
        assert_eq!(nos, vec![1, 3, 4]);
        assert_eq!(log, parse_lines(&lines, "t", LogFormat::Combined));
    }

    #[test]
    fn window_is_half_open() {
        let mk = |s: &str| {
            let mut r = parse_line(SAMPLE_LINE, 1, LogFormat::Combined).unwrap();
            r.timestamp = ts(s);
            r
        };
        let log = AccessLog::from_records(
            vec![mk("2023-10-10T10:00:00Z"), mk("2023-10-10T10:00:05Z"), mk("2023-10-10T10:00:10Z")],
            "w",
        );
        let all = TimeWindow::covering(&log.records).unwrap();
        assert_eq!(window_slice(&log, &all).records, log.records);

        let before = TimeWindow::new(ts("2023-10-10T09:00:00Z"), ts("2023-10-10T09:30:00Z")).unwrap();
        assert!(window_slice(&log, &before).records.is_empty());

        let upto = TimeWindow::new(ts("2023-10-10T10:00:00Z"), ts("2023-10-10T10:00:10Z")).unwrap();
        assert_eq!(window_slice(&log, &upto).records.len(), 2);

        assert_eq!(
            TimeWindow::new(ts("2023-10-10T10:00:00Z"), ts("2023-10-10T10:00:00Z")),
            Err(WindowError::Empty)
        );
    }

    #[test]
    fn negative_offsets_format() {
        let t = ts("2024-02-01T00:00:00-05:30");
        assert_eq!(ClfTime(&t).to_string(), "01/Feb/2024:00:00:00 -0530");
    }
}
