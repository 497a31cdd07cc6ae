//! Shared numerical kernels: cumulative profiles, scale grids, least-squares
//! line/plane fits, and log-log power-law fitting.

use serde::{Deserialize, Serialize};

use crate::curve::CurvePoint;
use crate::error::{Error, Result};
use crate::types::{Plane, TimeSeries};

/// Cumulative sum of mean-removed samples; the integrated object DFA detrends.
#[derive(Debug, Clone)]
pub struct Profile1D {
    pub values: Vec<f64>,
}

/// Double cumulative sum of mean-removed pixels, row-major.
#[derive(Debug, Clone)]
pub struct Profile2D {
    pub values: Vec<f64>,
    pub width: usize,
    pub height: usize,
}

impl Profile2D {
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.width + col]
    }
}

/// Strictly increasing integer scales s in [s_min, s_max].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScaleGrid {
    pub scales: Vec<usize>,
    pub s_min: usize,
    pub s_max: usize,
}

pub const MIN_SCALE: usize = 5;
pub const MIN_FIT_POINTS: usize = 6;
pub const DEFAULT_N_SCALES: usize = 20;

impl ScaleGrid {
    /// Approximately geometric integer spacing, deduplicated, ascending.
    pub fn geometric(s_min: usize, s_max: usize, n_scales: usize) -> Result<ScaleGrid> {
        if s_max < s_min {
            return Err(Error::InputTooSmall { min_dim: s_max * 4 });
        }
        let mut scales = Vec::with_capacity(n_scales);
        let lo = s_min as f64;
        let hi = s_max as f64;
        for k in 0..n_scales {
            let t = if n_scales == 1 {
                0.0
            } else {
                k as f64 / (n_scales - 1) as f64
            };
            let s = (lo * (hi / lo).powf(t)).round() as usize;
            let s = s.clamp(s_min, s_max);
            if scales.last() != Some(&s) {
                scales.push(s);
            }
        }
        if scales.len() < MIN_FIT_POINTS {
            return Err(Error::TooFewScales {
                available: scales.len(),
                required: MIN_FIT_POINTS,
            });
        }
        Ok(ScaleGrid {
            scales,
            s_min,
            s_max,
        })
    }
}

/// Default grid for an input whose smallest dimension (or length) is `min_dim`:
/// s_min = 5 up to s_max = floor(min_dim / 4).
pub fn make_scale_grid(min_dim: usize, n_scales: usize) -> Result<ScaleGrid> {
    let s_max = min_dim / 4;
    if s_max < MIN_SCALE {
        return Err(Error::InputTooSmall { min_dim });
    }
    ScaleGrid::geometric(MIN_SCALE, s_max, n_scales).map_err(|e| match e {
        Error::TooFewScales { .. } => Error::InputTooSmall { min_dim },
        other => other,
    })
}

pub fn profile_1d(x: &TimeSeries) -> Profile1D {
    let mean = x.samples.iter().sum::<f64>() / x.len() as f64;
    let mut acc = 0.0;
    let values = x
        .samples
        .iter()
        .map(|&v| {
            acc += v - mean;
            acc
        })
        .collect();
    Profile1D { values }
}

/// Double cumulative sum of mean-removed pixels, O(MN) via running sums.
pub fn profile_2d(p: &Plane) -> Profile2D {
    let mean = p.mean();
    let (w, h) = (p.width(), p.height());
    let mut values = vec![0.0; w * h];
    for r in 0..h {
        let mut row_acc = 0.0;
        for c in 0..w {
            row_acc += p.get(r, c) - mean;
            let above = if r > 0 { values[(r - 1) * w + c] } else { 0.0 };
            values[r * w + c] = above + row_acc;
        }
    }
    Profile2D {
        values,
        width: w,
        height: h,
    }
}

/// Ordinary least squares y = slope * t + intercept.
pub fn fit_line(t: &[f64], y: &[f64]) -> Result<(f64, f64)> {
    if t.len() != y.len() {
        return Err(Error::LengthMismatch {
            a: t.len(),
            b: y.len(),
        });
    }
    if t.len() < 2 {
        return Err(Error::SeriesTooShort {
            length: t.len(),
            required: 2,
        });
    }
    let n = t.len() as f64;
    let t_mean = t.iter().sum::<f64>() / n;
    let y_mean = y.iter().sum::<f64>() / n;
    let mut stt = 0.0;
    let mut sty = 0.0;
    for (&ti, &yi) in t.iter().zip(y) {
        let dt = ti - t_mean;
        stt += dt * dt;
        sty += dt * (yi - y_mean);
    }
    if stt == 0.0 {
        return Err(Error::DegenerateRegressor);
    }
    let slope = sty / stt;
    Ok((slope, y_mean - slope * t_mean))
}

/// Least-squares plane a*i + b*j + c over an s x s window.
#[derive(Debug, Clone, Copy)]
pub struct PlaneFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Fit z ~ a*i + b*j + c with 1-based local grid coordinates i (row), j (col).
/// On a regular grid the centered regressors are orthogonal, so the 3x3 normal
/// equations decouple into closed-form ratios.
pub fn fit_plane(window: &[f64], s: usize) -> PlaneFit {
    debug_assert_eq!(window.len(), s * s);
    let center = (s as f64 + 1.0) / 2.0;
    // sum over the grid of u^2 where u = i - center (same for v)
    let suu = (s * s) as f64 * (s as f64 * s as f64 - 1.0) / 12.0;
    let mut sum = 0.0;
    let mut su = 0.0;
    let mut sv = 0.0;
    for i in 0..s {
        let u = (i + 1) as f64 - center;
        for j in 0..s {
            let v = (j + 1) as f64 - center;
            let z = window[i * s + j];
            sum += z;
            su += u * z;
            sv += v * z;
        }
    }
    let mean = sum / (s * s) as f64;
    if s == 1 {
        return PlaneFit {
            a: 0.0,
            b: 0.0,
            c: mean,
        };
    }
    let a = su / suu;
    let b = sv / suu;
    PlaneFit {
        a,
        b,
        c: mean - (a + b) * center,
    }
}

impl PlaneFit {
    #[inline]
    pub fn eval(&self, i: usize, j: usize) -> f64 {
        self.a * i as f64 + self.b * j as f64 + self.c
    }
}

/// Slope/intercept/quality of an OLS fit of ln F against ln s.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct LogLogFit {
    pub exponent: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// Power-law fit over the given points, optionally restricted to an inclusive
/// scale interval. All fluctuation values in range must be > 0.
pub fn loglog_fit(points: &[CurvePoint], fit_range: Option<(usize, usize)>) -> Result<LogLogFit> {
    let in_range = |s: usize| match fit_range {
        Some((lo, hi)) => s >= lo && s <= hi,
        None => true,
    };
    let mut ln_s = Vec::new();
    let mut ln_f = Vec::new();
    for p in points.iter().filter(|p| in_range(p.scale)) {
        if p.f <= 0.0 {
            return Err(Error::NonPositiveFluctuation { scale: p.scale });
        }
        ln_s.push((p.scale as f64).ln());
        ln_f.push(p.f.ln());
    }
    if ln_s.len() < MIN_FIT_POINTS {
        return Err(Error::TooFewScales {
            available: ln_s.len(),
            required: MIN_FIT_POINTS,
        });
    }
    let (exponent, intercept) = fit_line(&ln_s, &ln_f)?;
    let mut ss_res = 0.0;
    let mut ss_tot = 0.0;
    let f_mean = ln_f.iter().sum::<f64>() / ln_f.len() as f64;
    for (&ls, &lf) in ln_s.iter().zip(&ln_f) {
        let r = lf - (exponent * ls + intercept);
        ss_res += r * r;
        ss_tot += (lf - f_mean) * (lf - f_mean);
    }
    let r_squared = if ss_tot <= 0.0 {
        1.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };
    Ok(LogLogFit {
        exponent,
        intercept,
        r_squared,
        n_points: ln_s.len(),
    })
}
