//! Frame operator, frame bounds and tightness.

use serde::Serialize;

use crate::error::{FrameError, Result};
use crate::linalg::{apply_scaling, sym2_eigen, Frame, Scaling, SymMatrix2, Vec2};

/// Lower bounds at or below this are treated as zero (rank-deficient family).
pub const RANK_TOL: f64 = 1e-14;

/// Default relative tolerance for [`is_tight`].
pub const TIGHT_TOL: f64 = 1e-9;

/// Optimal lower and upper frame bounds and their ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    /// `upper / lower`, or `f64::INFINITY` when the family does not span.
    pub cond: f64,
}

impl FrameBounds {
    pub fn from_eigenvalues(lambda_max: f64, lambda_min: f64) -> Self {
        let lower = lambda_min.max(0.0);
        let upper = lambda_max.max(lower);
        let cond = if lower <= RANK_TOL { f64::INFINITY } else { upper / lower };
        Self { lower, upper, cond }
    }

    pub fn spans(&self) -> bool {
        self.cond.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TightnessReport {
    pub is_tight: bool,
    pub sum_a2: f64,
    pub sum_b2: f64,
    pub sum_ab: f64,
    /// Common value of the coordinate sums; meaningful when tight.
    pub tight_constant: f64,
}

/// `S = Σ φᵢ φᵢᵀ`. Zero vectors are allowed.
pub fn frame_operator(family: &[Vec2]) -> Result<SymMatrix2> {
    if family.is_empty() {
        return Err(FrameError::InvalidInput("empty family".into()));
    }
    if family.iter().any(|v| !v.is_finite()) {
        return Err(FrameError::InvalidInput("family has a non-finite entry".into()));
    }
    Ok(family
        .iter()
        .fold(SymMatrix2::default(), |acc, &v| acc + SymMatrix2::outer(v)))
}

pub fn bounds_of_operator(s: &SymMatrix2) -> Result<FrameBounds> {
    let eig = sym2_eigen(s)?;
    Ok(FrameBounds::from_eigenvalues(eig.lambda_max, eig.lambda_min))
}

pub fn frame_bounds(family: &[Vec2]) -> Result<FrameBounds> {
    bounds_of_operator(&frame_operator(family)?)
}

/// Bounds of the family `{wᵢ φᵢ}`.
pub fn scaled_bounds(frame: &Frame, scaling: &Scaling) -> Result<FrameBounds> {
    frame_bounds(&apply_scaling(frame, scaling)?)
}

/// Tightness via the coordinate conditions `Σaᵢ² = Σbᵢ²` and `Σaᵢbᵢ = 0`,
/// both checked relative to `max(1, Σaᵢ²)`.
///
/// The all-zero family satisfies both conditions and is reported tight
/// with constant 0 even though it is not a frame.
pub fn is_tight(family: &[Vec2], tol: f64) -> TightnessReport {
    let (sum_a2, sum_b2, sum_ab) = family.iter().fold((0.0, 0.0, 0.0), |(aa, bb, ab), v| {
        (aa + v.x * v.x, bb + v.y * v.y, ab + v.x * v.y)
    });
    let scale = sum_a2.max(1.0);
    let is_tight = (sum_a2 - sum_b2).abs() <= tol * scale && sum_ab.abs() <= tol * scale;
    TightnessReport { is_tight, sum_a2, sum_b2, sum_ab, tight_constant: sum_a2 }
}

/// `min_c ‖S - cI‖` in operator norm: attained at the midpoint of the bounds.
pub fn best_identity_shift(bounds: &FrameBounds) -> (f64, f64) {
    let c = 0.5 * (bounds.lower + bounds.upper);
    (c, 0.5 * (bounds.upper - bounds.lower))
}

/// `min_{c ≥ 0} ‖I - cS‖_F²` over nonnegative multiples of `S`.
///
/// The minimizer is the root of `2cΣλᵢ² - 2Σλᵢ`, i.e. `c = Σλᵢ / Σλᵢ²`,
/// and the minimum is `2 - (Σλᵢ)² / Σλᵢ²`.
pub fn frobenius_best_multiple(s: &SymMatrix2) -> Result<(f64, f64)> {
    let eig = sym2_eigen(s)?;
    if eig.lambda_min < -RANK_TOL * eig.lambda_max.abs().max(1.0) {
        return Err(FrameError::InvalidInput("matrix is not positive semidefinite".into()));
    }
    let sum = eig.lambda_max + eig.lambda_min;
    let sum_sq = eig.lambda_max * eig.lambda_max + eig.lambda_min * eig.lambda_min;
    if sum_sq == 0.0 {
        return Err(FrameError::InvalidInput("zero matrix".into()));
    }
    Ok((sum / sum_sq, 2.0 - sum * sum / sum_sq))
}

/// Operator-norm distance `‖S - I‖ = max |λᵢ - 1|`.
pub fn distance_to_identity(s: &SymMatrix2) -> Result<f64> {
    let eig = sym2_eigen(s)?;
    Ok((eig.lambda_max - 1.0).abs().max((eig.lambda_min - 1.0).abs()))
}

/// Rescales `scaling` by `1/√((A+B)/2)` so the scaled family's bounds are
/// centred on 1. The condition number is unchanged.
pub fn normalize_scaling(frame: &Frame, scaling: &Scaling) -> Result<Scaling> {
    let bounds = scaled_bounds(frame, scaling)?;
    if !bounds.spans() {
        return Err(FrameError::DegenerateFrame(
            "scaled family does not span the plane".into(),
        ));
    }
    let factor = (0.5 * (bounds.lower + bounds.upper)).sqrt().recip();
    Scaling::new(scaling.weights().iter().map(|w| w * factor).collect())
}
