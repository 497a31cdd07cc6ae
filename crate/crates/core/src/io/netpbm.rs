//! Netpbm reader/writer: PGM (P2/P5) and PPM (P3/P6), maxval 255.
//! '#' comments are allowed anywhere in the header; ASCII and binary variants
//! of the same logical image load to bit-identical planes.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::types::{ChannelTag, Plane, RgbImage};

struct HeaderReader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderReader<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Self { bytes, pos: 0 }
    }

    fn skip_ws_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Result<&'a str> {
        self.skip_ws_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && !self.bytes[self.pos].is_ascii_whitespace()
            && self.bytes[self.pos] != b'#'
        {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::MalformedHeader("unexpected end of header".into()));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .map_err(|_| Error::MalformedHeader("non-ascii header token".into()))
    }

    fn number(&mut self) -> Result<usize> {
        let tok = self.token()?;
        tok.parse()
            .map_err(|_| Error::MalformedHeader(format!("expected integer, got {tok:?}")))
    }
}

pub fn load_image(path: impl AsRef<Path>) -> Result<RgbImage> {
    let bytes = fs::read(&path)?;
    parse_image(&bytes)
}

pub fn parse_image(bytes: &[u8]) -> Result<RgbImage> {
    let mut hdr = HeaderReader::new(bytes);
    let magic = hdr.token()?;
    let (color, binary) = match magic {
        "P2" => (false, false),
        "P3" => (true, false),
        "P5" => (false, true),
        "P6" => (true, true),
        other => return Err(Error::UnsupportedFormat(format!("magic {other:?}"))),
    };
    let width = hdr.number()?;
    let height = hdr.number()?;
    let maxval = hdr.number()?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedHeader("zero dimension".into()));
    }
    if maxval != 255 {
        return Err(Error::UnsupportedFormat(format!("maxval {maxval}")));
    }
    let n_values = width * height * if color { 3 } else { 1 };

    let values: Vec<f64> = if binary {
        // exactly one whitespace byte separates maxval from pixel data
        let start = hdr.pos + 1;
        let end = start + n_values;
        if end > bytes.len() {
            return Err(Error::TruncatedPixelData);
        }
        bytes[start..end].iter().map(|&b| b as f64).collect()
    } else {
        let mut out = Vec::with_capacity(n_values);
        for _ in 0..n_values {
            hdr.skip_ws_and_comments();
            if hdr.pos >= bytes.len() {
                return Err(Error::TruncatedPixelData);
            }
            let v = hdr.number()?;
            if v > 255 {
                return Err(Error::MalformedHeader(format!("pixel value {v} > 255")));
            }
            out.push(v as f64);
        }
        out
    };

    if color {
        let mut red = Vec::with_capacity(width * height);
        let mut green = Vec::with_capacity(width * height);
        let mut blue = Vec::with_capacity(width * height);
        for px in values.chunks(3) {
            red.push(px[0]);
            green.push(px[1]);
            blue.push(px[2]);
        }
        RgbImage::new(
            Plane::new(red, width, height, ChannelTag::Red)?,
            Plane::new(green, width, height, ChannelTag::Green)?,
            Plane::new(blue, width, height, ChannelTag::Blue)?,
        )
    } else {
        let gray = Plane::new(values, width, height, ChannelTag::Gray)?;
        let as_tag = |tag| {
            Plane::new(gray.values().to_vec(), width, height, tag).expect("same dimensions")
        };
        RgbImage::new(as_tag(ChannelTag::Red), as_tag(ChannelTag::Green), as_tag(ChannelTag::Blue))
    }
}

fn quantize(v: f64) -> u8 {
    v.round().clamp(0.0, 255.0) as u8
}

/// Binary PGM (P5) from a plane; values rounded and clamped to 0..255.
pub fn write_pgm(path: impl AsRef<Path>, plane: &Plane) -> Result<()> {
    let mut out = format!("P5\n{} {}\n255\n", plane.width(), plane.height()).into_bytes();
    out.extend(plane.values().iter().map(|&v| quantize(v)));
    fs::write(path, out)?;
    Ok(())
}

/// Binary PPM (P6) from three planes; values rounded and clamped to 0..255.
pub fn write_ppm(path: impl AsRef<Path>, img: &RgbImage) -> Result<()> {
    let mut out = format!("P6\n{} {}\n255\n", img.width(), img.height()).into_bytes();
    for r in 0..img.height() {
        for c in 0..img.width() {
            out.push(quantize(img.red.get(r, c)));
            out.push(quantize(img.green.get(r, c)));
            out.push(quantize(img.blue.get(r, c)));
        }
    }
    fs::write(path, out)?;
    Ok(())
}
