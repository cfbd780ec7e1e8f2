//! Closed-form lower bounds on the squared interpolation error and the
//! boundary-flattening map of the half notch domain.

use serde::Serialize;

use super::run::FamilyKind;
use super::ExperimentError;

/// Lower bound on `|u - I u|^2_{H^1}` for a sharpness-family member with
/// non-degeneracy constant `c_v` and vertex-to-edge (or face) distance
/// `dist`. The non-convex polyhedral family has no lower bound.
pub fn paper_lower_bound(kind: FamilyKind, c_v: f64, dist: f64) -> Result<f64, ExperimentError> {
    if !(c_v > 0.0 && dist > 0.0) {
        return Err(ExperimentError::BadData("c_v and dist must be positive"));
    }
    match kind {
        FamilyKind::Convex2d => Ok(c_v.powi(8) / (8.0 * dist)),
        FamilyKind::Nonconvex2d => {
            let d = dist / std::f64::consts::SQRT_2;
            Ok(c_v.powi(4) / 8.0 * ((d + 0.5 * c_v * c_v).ln() - d.ln()))
        }
        FamilyKind::Convex3d => {
            let drop = (1.0 - std::f64::consts::FRAC_1_SQRT_2) * c_v * c_v;
            Ok(std::f64::consts::PI * c_v.powi(4) / 8.0 * drop * drop / dist)
        }
        FamilyKind::Nonconvex3d => Err(ExperimentError::NoBound("nonconvex3d")),
        FamilyKind::ClassP => Err(ExperimentError::NoBound("class_P")),
    }
}

/// Slopes of the three pieces of the flattening map, their supremum, and
/// the largest difference quotient seen on a sample grid.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlatteningReport {
    pub eps: f64,
    pub slopes: [f64; 3],
    pub sup: f64,
    pub sampled_lipschitz: f64,
}

/// Boundary of the half notch domain near the origin as a graph over the
/// axis rotated so that `xhat = (x - 2y)/sqrt(5)`.
pub fn flattening_profile(eps: f64, xhat: f64) -> f64 {
    let s5 = 5f64.sqrt();
    if xhat > 0.0 {
        2.0 * xhat
    } else if xhat >= -2.0 * eps / s5 {
        -0.5 * xhat
    } else {
        ((3.0 - eps) * xhat + s5 * eps) / (2.0 * eps - 1.0)
    }
}

/// Slopes of the flattening profile for `0 < eps < 1/4`, checked against
/// difference quotients on `samples + 1` points of `[-1/2, 1/2]`.
pub fn flattening_check(eps: f64, samples: usize) -> Result<FlatteningReport, ExperimentError> {
    if !(eps > 0.0 && eps < 0.25) {
        return Err(ExperimentError::OutOfRange { name: "eps", value: eps, range: "(0, 1/4)" });
    }
    if samples < 2 {
        return Err(ExperimentError::BadData("need at least two samples"));
    }
    let slopes = [2.0, 0.5, ((3.0 - eps) / (2.0 * eps - 1.0)).abs()];
    let sup = slopes.iter().copied().fold(0.0, f64::max);
    let xs: Vec<f64> = (0..=samples).map(|k| -0.5 + k as f64 / samples as f64).collect();
    let sampled_lipschitz = xs
        .windows(2)
        .map(|w| ((flattening_profile(eps, w[1]) - flattening_profile(eps, w[0])) / (w[1] - w[0])).abs())
        .fold(0.0, f64::max);
    Ok(FlatteningReport { eps, slopes, sup, sampled_lipschitz })
}
