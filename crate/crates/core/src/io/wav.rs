//! Minimal RIFF/WAVE reader and writer: PCM format code 1, 16-bit only.
//! Unknown chunks are skipped; multi-channel input is mono-mixed by the
//! per-frame arithmetic mean of channels; samples are divided by 32768.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::types::TimeSeries;

fn u16_le(b: &[u8], off: usize) -> Result<u16> {
    b.get(off..off + 2)
        .map(|s| u16::from_le_bytes([s[0], s[1]]))
        .ok_or(Error::TruncatedFile)
}

fn u32_le(b: &[u8], off: usize) -> Result<u32> {
    b.get(off..off + 4)
        .map(|s| u32::from_le_bytes([s[0], s[1], s[2], s[3]]))
        .ok_or(Error::TruncatedFile)
}

pub fn load_wav(path: impl AsRef<Path>) -> Result<TimeSeries> {
    let bytes = fs::read(&path)?;
    parse_wav(&bytes, &path.as_ref().display().to_string())
}

pub fn parse_wav(bytes: &[u8], source_id: &str) -> Result<TimeSeries> {
    if bytes.len() < 12 {
        return if bytes.starts_with(b"RIFF") {
            Err(Error::TruncatedFile)
        } else {
            Err(Error::NotWav)
        };
    }
    if &bytes[0..4] != b"RIFF" || &bytes[8..12] != b"WAVE" {
        return Err(Error::NotWav);
    }

    let mut fmt: Option<(u16, u16, u32, u16)> = None; // format, channels, rate, bits
    let mut data: Option<&[u8]> = None;
    let mut off = 12;
    while off + 8 <= bytes.len() {
        let id = &bytes[off..off + 4];
        let size = u32_le(bytes, off + 4)? as usize;
        let body_start = off + 8;
        let body_end = body_start.checked_add(size).ok_or(Error::TruncatedFile)?;
        if body_end > bytes.len() {
            return Err(Error::TruncatedFile);
        }
        let body = &bytes[body_start..body_end];
        match id {
            b"fmt " => {
                if size < 16 {
                    return Err(Error::TruncatedFile);
                }
                fmt = Some((
                    u16_le(body, 0)?,
                    u16_le(body, 2)?,
                    u32_le(body, 4)?,
                    u16_le(body, 14)?,
                ));
            }
            b"data" => data = Some(body),
            _ => {} // skip
        }
        // chunks are word-aligned
        off = body_end + (size & 1);
    }

    let (format, channels, rate, bits) = fmt.ok_or(Error::TruncatedFile)?;
    if format != 1 {
        return Err(Error::UnsupportedEncoding(format!("format code {format}")));
    }
    if bits != 16 {
        return Err(Error::UnsupportedEncoding(format!("{bits}-bit samples")));
    }
    if channels == 0 {
        return Err(Error::UnsupportedEncoding("zero channels".into()));
    }
    let data = data.ok_or(Error::TruncatedFile)?;

    let frame_bytes = 2 * channels as usize;
    let n_frames = data.len() / frame_bytes;
    if n_frames == 0 {
        return Err(Error::TruncatedFile);
    }
    let mut samples = Vec::with_capacity(n_frames);
    for frame in 0..n_frames {
        let mut acc = 0.0;
        for ch in 0..channels as usize {
            let off = frame * frame_bytes + 2 * ch;
            let v = i16::from_le_bytes([data[off], data[off + 1]]) as f64;
            acc += v;
        }
        samples.push(acc / channels as f64 / 32768.0);
    }
    TimeSeries::new(samples, rate, source_id)
}

/// Quantize to 16-bit mono PCM: round(sample * 32768) clamped to i16 range.
pub fn write_wav(path: impl AsRef<Path>, series: &TimeSeries) -> Result<()> {
    let n = series.len();
    let data_len = 2 * n as u32;
    let mut out = Vec::with_capacity(44 + 2 * n);
    out.extend_from_slice(b"RIFF");
    out.extend_from_slice(&(36 + data_len).to_le_bytes());
    out.extend_from_slice(b"WAVE");
    out.extend_from_slice(b"fmt ");
    out.extend_from_slice(&16u32.to_le_bytes());
    out.extend_from_slice(&1u16.to_le_bytes()); // PCM
    out.extend_from_slice(&1u16.to_le_bytes()); // mono
    out.extend_from_slice(&series.sample_rate_hz.to_le_bytes());
    out.extend_from_slice(&(series.sample_rate_hz * 2).to_le_bytes()); // byte rate
    out.extend_from_slice(&2u16.to_le_bytes()); // block align
    out.extend_from_slice(&16u16.to_le_bytes());
    out.extend_from_slice(b"data");
    out.extend_from_slice(&data_len.to_le_bytes());
    for &v in &series.samples {
        let q = (v * 32768.0).round().clamp(i16::MIN as f64, i16::MAX as f64) as i16;
        out.extend_from_slice(&q.to_le_bytes());
    }
    fs::write(path, out)?;
    Ok(())
}
