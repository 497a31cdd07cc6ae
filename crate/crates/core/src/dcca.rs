//! 1D and 2D Detrended Cross-Correlation Analysis.
//!
//! Same partitioning and detrending as DFA, but the per-window statistic is the
//! mean product of the two residual fields — a covariance that may be negative.
//! F2(s) averages the magnitudes of the window covariances so the log-log fit
//! is well defined and uncorrelated inputs land at lambda ~ 0.5 (gamma_x ~ 1);
//! the sign flag carries the sign of the plain (signed) average. For x == y
//! every window covariance is non-negative, so both aggregates coincide and
//! the curve is bitwise identical to DFA.

use serde::{Deserialize, Serialize};

use crate::curve::{CurveKind, CurvePoint, FluctuationCurve, Sign};
use crate::dfa::{box_mean_product_1d, check_plane, check_series, window_mean_product_2d, WindowStat};
use crate::error::{Error, Result};
use crate::kernel::{self, loglog_fit, LogLogFit, ScaleGrid, MIN_FIT_POINTS};
use crate::types::{Plane, RgbImage, TimeSeries};

/// Cross-correlation scaling exponent lambda and gamma_x = 2 - 2*lambda.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossResult {
    pub lambda: f64,
    pub gamma_x: f64,
    pub fit: LogLogFit,
    pub curve: FluctuationCurve,
    pub sign_consistent: bool,
}

pub fn gamma_from_lambda(lambda: f64) -> f64 {
    2.0 - 2.0 * lambda
}

fn cross_curve(kind: CurveKind, scales: &[usize], stats: &[WindowStat]) -> FluctuationCurve {
    let points = scales
        .iter()
        .zip(stats)
        .map(|(&scale, st)| CurvePoint {
            scale,
            f: st.abs_mean.sqrt(),
            sign: Sign::of(st.signed_mean),
        })
        .collect();
    FluctuationCurve { kind, points }
}

pub fn cross_fluctuation_1d(
    x: &TimeSeries,
    y: &TimeSeries,
    grid: &ScaleGrid,
) -> Result<FluctuationCurve> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            a: x.len(),
            b: y.len(),
        });
    }
    check_series(x, grid)?;
    check_series(y, grid)?;
    let px = kernel::profile_1d(x);
    let py = kernel::profile_1d(y);
    let stats: Vec<WindowStat> = grid
        .scales
        .iter()
        .map(|&s| box_mean_product_1d(&px, &py, s))
        .collect();
    Ok(cross_curve(CurveKind::Dcca1d, &grid.scales, &stats))
}

pub fn cross_fluctuation_2d(a: &Plane, b: &Plane, grid: &ScaleGrid) -> Result<FluctuationCurve> {
    if a.width() != b.width() || a.height() != b.height() {
        return Err(Error::DimensionMismatch {
            a_h: a.height(),
            a_w: a.width(),
            b_h: b.height(),
            b_w: b.width(),
        });
    }
    check_plane(a, grid)?;
    check_plane(b, grid)?;
    let pa = kernel::profile_2d(a);
    let pb = kernel::profile_2d(b);
    let stats: Vec<WindowStat> = grid
        .scales
        .iter()
        .map(|&s| window_mean_product_2d(&pa, &pb, s))
        .collect();
    Ok(cross_curve(CurveKind::Dcca2d, &grid.scales, &stats))
}

/// Fit lambda on |F| over scales with nonzero F2; exact zeros are excluded.
fn fit_cross(curve: FluctuationCurve, fit_range: Option<(usize, usize)>) -> Result<CrossResult> {
    let nonzero: Vec<CurvePoint> = curve
        .points
        .iter()
        .filter(|p| p.f != 0.0)
        .copied()
        .collect();
    if nonzero.is_empty() {
        return Err(Error::AllZeroCrossFluctuation);
    }
    if nonzero.len() < MIN_FIT_POINTS {
        return Err(Error::TooFewScales {
            available: nonzero.len(),
            required: MIN_FIT_POINTS,
        });
    }
    let fit = loglog_fit(&nonzero, fit_range)?;
    Ok(CrossResult {
        lambda: fit.exponent,
        gamma_x: gamma_from_lambda(fit.exponent),
        fit,
        sign_consistent: curve.sign_consistent(),
        curve,
    })
}

pub fn dcca_1d(
    x: &TimeSeries,
    y: &TimeSeries,
    grid: &ScaleGrid,
    fit_range: Option<(usize, usize)>,
) -> Result<CrossResult> {
    fit_cross(cross_fluctuation_1d(x, y, grid)?, fit_range)
}

pub fn dcca_2d(
    a: &Plane,
    b: &Plane,
    grid: &ScaleGrid,
    fit_range: Option<(usize, usize)>,
) -> Result<CrossResult> {
    fit_cross(cross_fluctuation_2d(a, b, grid)?, fit_range)
}

/// Per-channel (R-R, G-G, B-B) 2D-DCCA of an image pair; the reported pair
/// coefficient is the arithmetic mean of the three gamma_x values.
#[derive(Debug)]
pub struct ImagePairResult {
    pub red: Result<CrossResult>,
    pub green: Result<CrossResult>,
    pub blue: Result<CrossResult>,
}

impl ImagePairResult {
    pub fn mean_gamma_x(&self) -> Option<f64> {
        match (&self.red, &self.green, &self.blue) {
            (Ok(r), Ok(g), Ok(b)) => Some((r.gamma_x + g.gamma_x + b.gamma_x) / 3.0),
            _ => None,
        }
    }
}

pub fn image_pair_coefficient(
    a: &RgbImage,
    b: &RgbImage,
    grid: &ScaleGrid,
    fit_range: Option<(usize, usize)>,
) -> ImagePairResult {
    ImagePairResult {
        red: dcca_2d(&a.red, &b.red, grid, fit_range),
        green: dcca_2d(&a.green, &b.green, grid, fit_range),
        blue: dcca_2d(&a.blue, &b.blue, grid, fit_range),
    }
}
