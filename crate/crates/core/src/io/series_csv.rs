//! Plain numeric series: one real per line, optional "value" header,
//! LF or CRLF, decimal point '.'.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::types::TimeSeries;

pub fn load_series_csv(path: impl AsRef<Path>) -> Result<TimeSeries> {
    let text = fs::read_to_string(&path)?;
    parse_series(&text, &path.as_ref().display().to_string())
}

pub fn parse_series(text: &str, source_id: &str) -> Result<TimeSeries> {
    let mut samples = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if idx == 0 && line.eq_ignore_ascii_case("value") {
            continue;
        }
        let v: f64 = line.parse().map_err(|_| Error::ParseError {
            line: idx + 1,
            msg: format!("not a number: {line:?}"),
        })?;
        if !v.is_finite() {
            return Err(Error::ParseError {
                line: idx + 1,
                msg: "non-finite value".into(),
            });
        }
        samples.push(v);
    }
    TimeSeries::new(samples, 1, source_id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_values() {
        let ts = parse_series("1\n2\n3\n", "t").unwrap();
        assert_eq!(ts.samples, vec![1.0, 2.0, 3.0]);
        assert_eq!(ts.sample_rate_hz, 1);
    }

    #[test]
    fn header_skipped() {
        let ts = parse_series("value\n0.5\n", "t").unwrap();
        assert_eq!(ts.samples, vec![0.5]);
    }

    #[test]
    fn parse_error_carries_line() {
        match parse_series("1\nabc\n", "t") {
            Err(Error::ParseError { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected ParseError, got {other:?}"),
        }
    }

    #[test]
    fn crlf_accepted() {
        let ts = parse_series("value\r\n1.5\r\n-2\r\n", "t").unwrap();
        assert_eq!(ts.samples, vec![1.5, -2.0]);
    }
}
