use std::fs;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use webaccess_core::{AccessLog, LogFormat};

/// Reads an access log line by line. Lines that fail to parse are tallied
/// in `skipped`; a read error discards everything read so far.
pub fn parse_log<R: BufRead>(input: R, source: &str, format: LogFormat) -> io::Result<AccessLog> {
    let mut log = AccessLog::new(source);
    for line in input.lines() {
        let line = line?;
        let _ = log.ingest(&line, format);
    }
    Ok(log)
}

pub fn read_log(path: &Path, format: LogFormat) -> io::Result<AccessLog> {
    let file = fs::File::open(path)?;
    parse_log(BufReader::new(file), &path.display().to_string(), format)
}

/// Writes records as Combined Log Format lines.
pub fn write_log<W: Write>(log: &AccessLog, w: W) -> io::Result<()> {
    let mut w = BufWriter::new(w);
    for r in &log.records {
        writeln!(w, "{r}")?;
    }
    w.flush()
}
