//! Domain types shared by the analysis kernels and the pipeline.

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelTag {
    Red,
    Green,
    Blue,
    Gray,
}

/// 1D sequence of real samples with a sample rate.
#[derive(Debug, Clone)]
pub struct TimeSeries {
    pub samples: Vec<f64>,
    pub sample_rate_hz: u32,
    pub source_id: String,
}

impl TimeSeries {
    pub fn new(samples: Vec<f64>, sample_rate_hz: u32, source_id: impl Into<String>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::SeriesTooShort {
                length: 0,
                required: 1,
            });
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::ParseError {
                line: 0,
                msg: "non-finite sample".into(),
            });
        }
        Ok(Self {
            samples,
            sample_rate_hz,
            source_id: source_id.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

/// 2D matrix of real-valued pixels (one channel or grayscale), row-major.
#[derive(Debug, Clone)]
pub struct Plane {
    values: Vec<f64>,
    width: usize,
    height: usize,
    pub channel_tag: ChannelTag,
}

impl Plane {
    pub fn new(values: Vec<f64>, width: usize, height: usize, channel_tag: ChannelTag) -> Result<Self> {
        if width == 0 || height == 0 || values.len() != width * height {
            return Err(Error::DimensionMismatch {
                a_h: height,
                a_w: width,
                b_h: if width == 0 { 0 } else { values.len() / width },
                b_w: width,
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::ParseError {
                line: 0,
                msg: "non-finite pixel value".into(),
            });
        }
        Ok(Self {
            values,
            width,
            height,
            channel_tag,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.width + col]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    pub fn is_constant(&self) -> bool {
        let first = self.values[0];
        self.values.iter().all(|&v| v == first)
    }

    pub fn transpose(&self) -> Plane {
        let mut values = vec![0.0; self.values.len()];
        for r in 0..self.height {
            for c in 0..self.width {
                values[c * self.height + r] = self.get(r, c);
            }
        }
        Plane {
            values,
            width: self.height,
            height: self.width,
            channel_tag: self.channel_tag,
        }
    }

    /// Top-left crop to at most (height, width).
    pub fn crop(&self, height: usize, width: usize) -> Plane {
        let h = height.min(self.height);
        let w = width.min(self.width);
        let mut values = Vec::with_capacity(h * w);
        for r in 0..h {
            values.extend_from_slice(&self.values[r * self.width..r * self.width + w]);
        }
        Plane {
            values,
            width: w,
            height: h,
            channel_tag: self.channel_tag,
        }
    }

    /// Per-pixel map, preserving dimensions.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Plane {
        Plane {
            values: self.values.iter().map(|&v| f(v)).collect(),
            width: self.width,
            height: self.height,
            channel_tag: self.channel_tag,
        }
    }
}

/// Three same-sized planes, one per color channel.
#[derive(Debug, Clone)]
pub struct RgbImage {
    pub red: Plane,
    pub green: Plane,
    pub blue: Plane,
}

impl RgbImage {
    pub fn new(red: Plane, green: Plane, blue: Plane) -> Result<Self> {
        for p in [&green, &blue] {
            if p.width() != red.width() || p.height() != red.height() {
                return Err(Error::DimensionMismatch {
                    a_h: red.height(),
                    a_w: red.width(),
                    b_h: p.height(),
                    b_w: p.width(),
                });
            }
        }
        Ok(Self { red, green, blue })
    }

    pub fn width(&self) -> usize {
        self.red.width()
    }

    pub fn height(&self) -> usize {
        self.red.height()
    }
}

/// BT.601 luma; output stays real-valued, no re-quantization.
pub fn to_grayscale(img: &RgbImage) -> Plane {
    let mut values = Vec::with_capacity(img.width() * img.height());
    for r in 0..img.height() {
        for c in 0..img.width() {
            values.push(
                0.299 * img.red.get(r, c) + 0.587 * img.green.get(r, c) + 0.114 * img.blue.get(r, c),
            );
        }
    }
    Plane::new(values, img.width(), img.height(), ChannelTag::Gray).expect("dimensions preserved")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Modality {
    Audio,
    Image,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Valence {
    Happy,
    Sad,
    Unknown,
}

/// One row of the stimulus manifest: a file plus its a-priori rating metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StimulusRecord {
    pub id: String,
    pub modality: Modality,
    pub path: PathBuf,
    #[serde(default = "default_valence")]
    pub target: Valence,
    /// 0-10 psychological ratings keyed by emotion name.
    #[serde(default)]
    pub ratings: BTreeMap<String, f64>,
}

fn default_valence() -> Valence {
    Valence::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane_from(rows: &[&[f64]], tag: ChannelTag) -> Plane {
        let height = rows.len();
        let width = rows[0].len();
        let values: Vec<f64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Plane::new(values, width, height, tag).unwrap()
    }

    #[test]
    fn grayscale_white_pixel() {
        let p = |v: f64, t| plane_from(&[&[v]], t);
        let img = RgbImage::new(
            p(255.0, ChannelTag::Red),
            p(255.0, ChannelTag::Green),
            p(255.0, ChannelTag::Blue),
        )
        .unwrap();
        let gray = to_grayscale(&img);
        assert!((gray.get(0, 0) - 255.0).abs() < 1e-12);
    }

    #[test]
    fn grayscale_pure_red() {
        let p = |v: f64, t| plane_from(&[&[v]], t);
        let img = RgbImage::new(
            p(255.0, ChannelTag::Red),
            p(0.0, ChannelTag::Green),
            p(0.0, ChannelTag::Blue),
        )
        .unwrap();
        // hand check: 0.299 * 255 = 76.245
        assert!((to_grayscale(&img).get(0, 0) - 76.245).abs() < 1e-12);
    }

    #[test]
    fn grayscale_identity_on_gray_input() {
        let p = plane_from(&[&[12.0, 200.0], &[7.0, 55.0]], ChannelTag::Gray);
        let img = RgbImage::new(p.clone(), p.clone(), p.clone()).unwrap();
        let gray = to_grayscale(&img);
        for r in 0..2 {
            for c in 0..2 {
                assert!((gray.get(r, c) - p.get(r, c)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rgb_image_rejects_mismatched_planes() {
        let a = plane_from(&[&[1.0, 2.0]], ChannelTag::Red);
        let b = plane_from(&[&[1.0], &[2.0]], ChannelTag::Green);
        let c = plane_from(&[&[1.0, 2.0]], ChannelTag::Blue);
        assert!(RgbImage::new(a, b, c).is_err());
    }
}
