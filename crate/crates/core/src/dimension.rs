//! Dimension estimates from covering profiles.
//!
//! Graphs have no `l -> 0` limit, so every dimension is read off the finite
//! profile in one of two ways:
//!
//! * [`FitMode::Slope`]: least-squares line through `(ln l, y(l))`, with
//!   `dimension = -slope`. `y` is `ln N_B` for the box-counting dimension and
//!   the entropy `S_q` for the (Tsallis) information dimension. Box size 1 is
//!   a valid abscissa here.
//! * [`FitMode::Pointwise`]: the per-size ratio `S_q(l) / ln l`, reported per
//!   `l` and averaged into `dimension`. Undefined at `l = 1`.

use std::fmt;
use std::str::FromStr;

use crate::cover::CoveringProfile;
use crate::entropy::{box_probabilities, tsallis_entropy};
use crate::error::{Error, Result};

/// Ordinary least-squares line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// `1 - SS_res / SS_tot`, taken as 1 for constant data.
    pub r_squared: f64,
}

/// Fits `y = slope * x + intercept`.
pub fn fit_slope(points: &[(f64, f64)]) -> Result<LineFit> {
    if points.len() < 2 {
        return Err(Error::Fit(format!(
            "need at least 2 points, got {}",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (dx, dy) = (x - mean_x, y - mean_y);
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(Error::Fit("all x values are equal".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        let ss_res: f64 = points
            .iter()
            .map(|&(x, y)| {
                let r = y - (slope * x + intercept);
                r * r
            })
            .sum();
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Ok(LineFit {
        slope,
        intercept,
        r_squared,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FitMode {
    #[default]
    Slope,
    Pointwise,
}

impl fmt::Display for FitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitMode::Slope => "slope",
            FitMode::Pointwise => "pointwise",
        })
    }
}

impl FromStr for FitMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "slope" => Ok(FitMode::Slope),
            "pointwise" => Ok(FitMode::Pointwise),
            other => Err(Error::Argument(format!(
                "unknown mode {other:?} (expected slope or pointwise)"
            ))),
        }
    }
}

/// One box size of a profile evaluated at one `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfilePoint {
    pub l_b: u32,
    pub ln_l: f64,
    pub n_boxes: usize,
    pub entropy: f64,
}

impl ProfilePoint {
    /// `S_q(l) / ln l`, undefined at `l = 1`.
    pub fn pointwise_ratio(&self) -> Option<f64> {
        (self.l_b >= 2).then(|| self.entropy / self.ln_l)
    }
}

/// Entropy of every covering in the profile at `q`.
pub fn profile_points(profile: &CoveringProfile, q: f64) -> Result<Vec<ProfilePoint>> {
    profile
        .coverings
        .iter()
        .map(|cov| {
            let p = box_probabilities(cov, profile.n)?;
            Ok(ProfilePoint {
                l_b: cov.l_b,
                ln_l: f64::from(cov.l_b).ln(),
                n_boxes: cov.box_count(),
                entropy: tsallis_entropy(&p, q).value,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionEstimate {
    /// `None` for the box-counting dimension.
    pub q: Option<f64>,
    pub dimension: f64,
    /// Slope mode only.
    pub slope: Option<f64>,
    /// Slope mode only.
    pub intercept: Option<f64>,
    /// Slope mode with at least 3 points.
    pub r_squared: Option<f64>,
    /// Smallest and largest box size that entered the estimate.
    pub fit_l_range: (u32, u32),
    pub mode: FitMode,
    /// `(l_b, S_q / ln l)` in pointwise mode, empty otherwise.
    pub pointwise_values: Vec<(u32, f64)>,
    pub points: usize,
}

fn in_range(l_b: u32, l_range: Option<(u32, u32)>) -> bool {
    l_range.is_none_or(|(lo, hi)| lo <= l_b && l_b <= hi)
}

fn slope_estimate(q: Option<f64>, xy: &[(u32, f64, f64)]) -> Result<DimensionEstimate> {
    let pts: Vec<(f64, f64)> = xy.iter().map(|&(_, x, y)| (x, y)).collect();
    let fit = fit_slope(&pts)?;
    Ok(DimensionEstimate {
        q,
        dimension: -fit.slope,
        slope: Some(fit.slope),
        intercept: Some(fit.intercept),
        r_squared: (pts.len() >= 3).then_some(fit.r_squared),
        fit_l_range: (xy[0].0, xy[xy.len() - 1].0),
        mode: FitMode::Slope,
        pointwise_values: Vec::new(),
        points: pts.len(),
    })
}

/// Box-counting dimension: `-slope` of `ln N_B` against `ln l_B`.
pub fn box_counting_dimension(
    profile: &CoveringProfile,
    l_range: Option<(u32, u32)>,
) -> Result<DimensionEstimate> {
    let xy: Vec<(u32, f64, f64)> = profile
        .coverings
        .iter()
        .filter(|c| in_range(c.l_b, l_range))
        .map(|c| (c.l_b, f64::from(c.l_b).ln(), (c.box_count() as f64).ln()))
        .collect();
    slope_estimate(None, &xy)
}

/// Tsallis information dimension at `q`.
///
/// An explicit `l_range` reaching down to `l = 1` is a domain error in
/// pointwise mode; without a range, pointwise mode starts at `l = 2`.
pub fn tsallis_dimension(
    profile: &CoveringProfile,
    q: f64,
    mode: FitMode,
    l_range: Option<(u32, u32)>,
) -> Result<DimensionEstimate> {
    let points: Vec<ProfilePoint> = profile_points(profile, q)?
        .into_iter()
        .filter(|p| in_range(p.l_b, l_range))
        .collect();
    match mode {
        FitMode::Slope => {
            let xy: Vec<_> = points.iter().map(|p| (p.l_b, p.ln_l, p.entropy)).collect();
            slope_estimate(Some(q), &xy)
        }
        FitMode::Pointwise => {
            if matches!(l_range, Some((lo, _)) if lo <= 1) {
                return Err(Error::Domain(
                    "pointwise ratio is undefined at box size 1 (ln 1 = 0)".into(),
                ));
            }
            let ratios: Vec<(u32, f64)> = points
                .iter()
                .filter_map(|p| p.pointwise_ratio().map(|r| (p.l_b, r)))
                .collect();
            if ratios.is_empty() {
                return Err(Error::Fit("no box size >= 2 in range".into()));
            }
            let mean = ratios.iter().map(|r| r.1).sum::<f64>() / ratios.len() as f64;
            Ok(DimensionEstimate {
                q: Some(q),
                dimension: mean,
                slope: None,
                intercept: None,
                r_squared: None,
                fit_l_range: (ratios[0].0, ratios[ratios.len() - 1].0),
                mode: FitMode::Pointwise,
                points: ratios.len(),
                pointwise_values: ratios,
            })
        }
    }
}

/// Classical information dimension; [`tsallis_dimension`] at `q = 1` in
/// slope mode.
pub fn information_dimension(
    profile: &CoveringProfile,
    l_range: Option<(u32, u32)>,
) -> Result<DimensionEstimate> {
    tsallis_dimension(profile, 1.0, FitMode::Slope, l_range)
}

/// One estimate per `q`, all from the same profile.
pub fn q_sweep(
    profile: &CoveringProfile,
    q_list: &[f64],
    mode: FitMode,
    l_range: Option<(u32, u32)>,
) -> Result<Vec<DimensionEstimate>> {
    if q_list.is_empty() {
        return Err(Error::Argument("q list is empty".into()));
    }
    q_list
        .iter()
        .map(|&q| tsallis_dimension(profile, q, mode, l_range))
        .collect()
}
