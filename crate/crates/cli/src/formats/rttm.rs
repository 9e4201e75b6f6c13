//! RTTM speaker segments:
//! `SPEAKER <file> 1 <tbeg> <tdur> <NA> <NA> <speaker> <NA> <NA>`.
//!
//! Times are written in seconds with three decimals and lines are sorted by
//! file, start and speaker. Segments shorter than a millisecond after
//! rounding are omitted.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use sthg_core::Segment;

use crate::error::{content_lines, CliError, CliResult, Fields};

pub type SegmentsByFile = BTreeMap<String, Vec<Segment>>;

fn millis(t: f64) -> i64 {
    (t * 1000.0).round() as i64
}

fn fmt_millis(ms: i64) -> String {
    format!("{}.{:03}", ms / 1000, ms % 1000)
}

pub fn write_rttm(segments: &SegmentsByFile) -> CliResult<String> {
    let mut out = String::new();
    for (file, segs) in segments {
        if file.is_empty() || file.chars().any(char::is_whitespace) {
            return Err(CliError::Invalid(format!("bad RTTM file id {file:?}")));
        }
        let mut rows: Vec<(i64, &str, i64)> = segs
            .iter()
            .map(|s| {
                let b = millis(s.start);
                (b, s.speaker.as_str(), millis(s.end) - b)
            })
            .filter(|r| r.2 > 0)
            .collect();
        rows.sort();
        for (b, speaker, d) in rows {
            if speaker.is_empty() || speaker.chars().any(char::is_whitespace) {
                return Err(CliError::Invalid(format!("bad speaker id {speaker:?}")));
            }
            let _ = writeln!(
                out,
                "SPEAKER {file} 1 {} {} <NA> <NA> {speaker} <NA> <NA>",
                fmt_millis(b),
                fmt_millis(d)
            );
        }
    }
    Ok(out)
}

/// Lines starting with `;` or `#` are comments.
pub fn parse_rttm(file: &str, text: &str) -> CliResult<SegmentsByFile> {
    let mut out = SegmentsByFile::new();
    for (line, content) in content_lines(text) {
        if content.starts_with(';') {
            continue;
        }
        let mut f = Fields::new(file, line, content);
        let kind = f.next_str("type")?;
        if kind != "SPEAKER" {
            return Err(f.error("type", format!("unsupported RTTM type {kind:?}")));
        }
        let id = f.next_str("file")?;
        f.next_str("channel")?;
        let start = f.finite("tbeg")?;
        let dur = f.finite("tdur")?;
        if start < 0.0 {
            return Err(f.error("tbeg", "negative"));
        }
        if dur <= 0.0 {
            return Err(f.error("tdur", "must be positive"));
        }
        f.next_str("ortho")?;
        f.next_str("stype")?;
        let speaker = f.next_str("name")?;
        f.next_str("conf")?;
        f.next_str("slat")?;
        f.end()?;
        let seg = Segment::new(speaker, start, start + dur).map_err(|e| f.error("tdur", e.to_string()))?;
        out.entry(id.to_string()).or_default().push(seg);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn writes_standard_sorted_lines() {
        let mut m = SegmentsByFile::new();
        m.insert(
            "v1".into(),
            vec![
                Segment::new("P2", 1.0, 2.5).unwrap(),
                Segment::new("CW", 1.0, 1.25).unwrap(),
                Segment::new("P1", 0.0, 0.1234).unwrap(),
                Segment::new("P1", 3.0, 3.0004).unwrap(),
            ],
        );
        let text = write_rttm(&m).unwrap();
        assert_eq!(
            text,
            "SPEAKER v1 1 0.000 0.123 <NA> <NA> P1 <NA> <NA>\n\
             SPEAKER v1 1 1.000 0.250 <NA> <NA> CW <NA> <NA>\n\
             SPEAKER v1 1 1.000 1.500 <NA> <NA> P2 <NA> <NA>\n"
        );
        let back = parse_rttm("r", &text).unwrap();
        assert_eq!(back["v1"].len(), 3);
        assert_eq!(write_rttm(&back).unwrap(), text);
    }

    #[test]
    fn rejects_short_lines() {
        let e = parse_rttm("r.rttm", "SPEAKER v 1 0.0 1.0 <NA> <NA>\n").unwrap_err();
        assert!(e.to_string().contains("r.rttm:1"));
        assert!(e.to_string().contains("name"));
    }
}
