//! 1D and 2D Detrended Fluctuation Analysis.
//!
//! Profile -> non-overlapping boxes (1D) or s x s windows (2D) anchored at the
//! origin, remainders discarded -> per-box linear / per-window planar detrend ->
//! RMS residual F(s) -> log-log slope alpha.

use serde::{Deserialize, Serialize};

use crate::curve::{CurveKind, CurvePoint, FluctuationCurve, Sign};
use crate::error::{Error, Result};
use crate::kernel::{
    self, fit_line, fit_plane, loglog_fit, LogLogFit, Profile1D, Profile2D, ScaleGrid,
};
use crate::types::{ChannelTag, Plane, RgbImage, TimeSeries};

/// Fitted exponent plus the curve and fit diagnostics behind it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScalingResult {
    pub exponent: f64,
    pub fit: LogLogFit,
    pub curve: FluctuationCurve,
    pub channel_tag: Option<ChannelTag>,
}

/// Per-scale aggregate of the per-window detrended covariances.
///
/// `signed_mean` is the plain average of the window covariances and carries
/// the sign of the aggregate cross-correlation; `abs_mean` averages their
/// magnitudes and is the quantity whose square root is fitted. In the
/// self-correlation case every window covariance is a non-negative variance,
/// so the two fields are bit-identical and DCCA(x, x) collapses to DFA(x).
#[derive(Debug, Clone, Copy)]
pub(crate) struct WindowStat {
    pub signed_mean: f64,
    pub abs_mean: f64,
}

/// Box-wise detrended covariance of two profiles at box size `s`.
///
/// Both DFA (x == y) and DCCA (x != y) go through this one accumulation so the
/// self-correlation case is bitwise identical to plain DFA. Summation order is
/// fixed: within-box ascending index, boxes ascending.
pub(crate) fn box_mean_product_1d(px: &Profile1D, py: &Profile1D, s: usize) -> WindowStat {
    let n = px.values.len();
    let n_boxes = n / s;
    let t: Vec<f64> = (0..s).map(|k| k as f64).collect();
    let mut signed = 0.0;
    let mut abs = 0.0;
    for b in 0..n_boxes {
        let seg_x = &px.values[b * s..(b + 1) * s];
        let seg_y = &py.values[b * s..(b + 1) * s];
        let (ax, bx) = fit_line(&t, seg_x).expect("t is non-constant for s >= 2");
        let (ay, by) = fit_line(&t, seg_y).expect("t is non-constant for s >= 2");
        let mut win = 0.0;
        for k in 0..s {
            let rx = seg_x[k] - (ax * t[k] + bx);
            let ry = seg_y[k] - (ay * t[k] + by);
            win += rx * ry;
        }
        let cov = win / s as f64;
        signed += cov;
        abs += cov.abs();
    }
    WindowStat {
        signed_mean: signed / n_boxes as f64,
        abs_mean: abs / n_boxes as f64,
    }
}

/// Window-wise detrended covariance of two 2D profiles at scale `s`.
pub(crate) fn window_mean_product_2d(px: &Profile2D, py: &Profile2D, s: usize) -> WindowStat {
    let nbi = px.height / s;
    let nbj = px.width / s;
    let mut wx = vec![0.0; s * s];
    let mut wy = vec![0.0; s * s];
    let mut signed = 0.0;
    let mut abs = 0.0;
    for bi in 0..nbi {
        for bj in 0..nbj {
            for i in 0..s {
                for j in 0..s {
                    wx[i * s + j] = px.get(bi * s + i, bj * s + j);
                    wy[i * s + j] = py.get(bi * s + i, bj * s + j);
                }
            }
            let fx = fit_plane(&wx, s);
            let fy = fit_plane(&wy, s);
            let mut win = 0.0;
            for i in 0..s {
                for j in 0..s {
                    let rx = wx[i * s + j] - fx.eval(i + 1, j + 1);
                    let ry = wy[i * s + j] - fy.eval(i + 1, j + 1);
                    win += rx * ry;
                }
            }
            let cov = win / (s * s) as f64;
            signed += cov;
            abs += cov.abs();
        }
    }
    WindowStat {
        signed_mean: signed / (nbi * nbj) as f64,
        abs_mean: abs / (nbi * nbj) as f64,
    }
}

fn is_constant(samples: &[f64]) -> bool {
    let first = samples[0];
    samples.iter().all(|&v| v == first)
}

pub(crate) fn check_series(x: &TimeSeries, grid: &ScaleGrid) -> Result<()> {
    let required = (4 * grid.s_min).max(grid.s_max);
    if x.len() < required {
        return Err(Error::SeriesTooShort {
            length: x.len(),
            required,
        });
    }
    if is_constant(&x.samples) {
        return Err(Error::DegenerateInput);
    }
    Ok(())
}

pub(crate) fn check_plane(p: &Plane, grid: &ScaleGrid) -> Result<()> {
    let min_dim = p.width().min(p.height());
    if min_dim < grid.s_max {
        return Err(Error::InputTooSmall { min_dim });
    }
    if p.is_constant() {
        return Err(Error::DegenerateInput);
    }
    Ok(())
}

pub(crate) fn curve_from_means(
    kind: CurveKind,
    scales: &[usize],
    means: &[f64],
) -> Result<FluctuationCurve> {
    if means.iter().all(|&m| m == 0.0) {
        return Err(Error::DegenerateInput);
    }
    let points = scales
        .iter()
        .zip(means)
        .map(|(&scale, &m)| CurvePoint {
            scale,
            f: m.abs().sqrt(),
            sign: Sign::of(m),
        })
        .collect();
    Ok(FluctuationCurve { kind, points })
}

pub fn fluctuation_1d(x: &TimeSeries, grid: &ScaleGrid) -> Result<FluctuationCurve> {
    check_series(x, grid)?;
    let profile = kernel::profile_1d(x);
    let means: Vec<f64> = grid
        .scales
        .iter()
        .map(|&s| box_mean_product_1d(&profile, &profile, s).signed_mean)
        .collect();
    curve_from_means(CurveKind::Dfa1d, &grid.scales, &means)
}

pub fn dfa_1d(
    x: &TimeSeries,
    grid: &ScaleGrid,
    fit_range: Option<(usize, usize)>,
) -> Result<ScalingResult> {
    let curve = fluctuation_1d(x, grid)?;
    let fit = loglog_fit(&curve.points, fit_range)?;
    Ok(ScalingResult {
        exponent: fit.exponent,
        fit,
        curve,
        channel_tag: None,
    })
}

pub fn fluctuation_2d(p: &Plane, grid: &ScaleGrid) -> Result<FluctuationCurve> {
    check_plane(p, grid)?;
    let profile = kernel::profile_2d(p);
    let means: Vec<f64> = grid
        .scales
        .iter()
        .map(|&s| window_mean_product_2d(&profile, &profile, s).signed_mean)
        .collect();
    curve_from_means(CurveKind::Dfa2d, &grid.scales, &means)
}

pub fn dfa_2d(
    p: &Plane,
    grid: &ScaleGrid,
    fit_range: Option<(usize, usize)>,
) -> Result<ScalingResult> {
    let curve = fluctuation_2d(p, grid)?;
    let fit = loglog_fit(&curve.points, fit_range)?;
    Ok(ScalingResult {
        exponent: fit.exponent,
        fit,
        curve,
        channel_tag: Some(p.channel_tag),
    })
}

/// Per-channel 2D-DFA exponents; each channel fails or succeeds independently.
#[derive(Debug)]
pub struct ChannelExponents {
    pub red: Result<ScalingResult>,
    pub green: Result<ScalingResult>,
    pub blue: Result<ScalingResult>,
}

impl ChannelExponents {
    /// Unweighted mean of the channel exponents; None unless all three computed.
    pub fn mean_alpha(&self) -> Option<f64> {
        match (&self.red, &self.green, &self.blue) {
            (Ok(r), Ok(g), Ok(b)) => Some((r.exponent + g.exponent + b.exponent) / 3.0),
            _ => None,
        }
    }
}

pub fn channel_exponents(
    img: &RgbImage,
    grid: &ScaleGrid,
    fit_range: Option<(usize, usize)>,
) -> ChannelExponents {
    ChannelExponents {
        red: dfa_2d(&img.red, grid, fit_range),
        green: dfa_2d(&img.green, grid, fit_range),
        blue: dfa_2d(&img.blue, grid, fit_range),
    }
}
