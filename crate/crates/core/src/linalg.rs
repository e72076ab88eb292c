//! Plane vectors, frames, scalings and the exact 2x2 symmetric eigenproblem.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{FrameError, Result};

/// A vector in the real plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Unit vector at `angle` radians from the positive first axis.
    pub fn from_angle(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c, s)
    }

    pub fn polar(norm: f64, angle: f64) -> Self {
        Self::from_angle(angle) * norm
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product.
    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn normalized(self) -> Vec2 {
        self * (1.0 / self.norm())
    }

    /// Counter-clockwise rotation by `angle` radians.
    pub fn rotated(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Vec2::new(x, y)
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

/// An ordered family of at least two nonzero, finite plane vectors.
///
/// Spanning is not required here: a family whose vectors are all collinear
/// is a valid `Frame` value, and the analysis reports its lower bound as 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    vectors: Vec<Vec2>,
}

impl Frame {
    pub fn new(vectors: Vec<Vec2>) -> Result<Self> {
        if vectors.len() < 2 {
            return Err(FrameError::InvalidInput(format!(
                "a frame needs at least 2 vectors, got {}",
                vectors.len()
            )));
        }
        for (i, v) in vectors.iter().enumerate() {
            if !v.is_finite() {
                return Err(FrameError::InvalidInput(format!("vector {i} has a non-finite entry")));
            }
            if v.norm() == 0.0 {
                return Err(FrameError::InvalidInput(format!("vector {i} is zero")));
            }
        }
        Ok(Self { vectors })
    }

    pub fn from_points(points: &[[f64; 2]]) -> Result<Self> {
        Self::new(points.iter().map(|&p| Vec2::from(p)).collect())
    }

    pub fn vectors(&self) -> &[Vec2] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, i: usize) -> Vec2 {
        self.vectors[i]
    }

    pub fn norms(&self) -> Vec<f64> {
        self.vectors.iter().map(|v| v.norm()).collect()
    }

    pub fn rotated(&self, angle: f64) -> Frame {
        Frame {
            vectors: self.vectors.iter().map(|v| v.rotated(angle)).collect(),
        }
    }

    /// Sub-frame built from the given indices (in that order).
    pub fn select(&self, indices: &[usize]) -> Result<Frame> {
        Frame::new(indices.iter().map(|&i| self.vectors[i]).collect())
    }
}

impl AsRef<[Vec2]> for Frame {
    fn as_ref(&self) -> &[Vec2] {
        &self.vectors
    }
}

/// Symmetric 2x2 matrix `[[s11, s12], [s12, s22]]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct SymMatrix2 {
    pub s11: f64,
    pub s12: f64,
    pub s22: f64,
}

impl SymMatrix2 {
    pub const IDENTITY: SymMatrix2 = SymMatrix2::new(1.0, 0.0, 1.0);

    pub const fn new(s11: f64, s12: f64, s22: f64) -> Self {
        Self { s11, s12, s22 }
    }

    /// The rank-one matrix `v vᵀ`.
    pub fn outer(v: Vec2) -> Self {
        Self::new(v.x * v.x, v.x * v.y, v.y * v.y)
    }

    pub fn trace(&self) -> f64 {
        self.s11 + self.s22
    }

    pub fn det(&self) -> f64 {
        self.s11 * self.s22 - self.s12 * self.s12
    }

    pub fn apply(&self, v: Vec2) -> Vec2 {
        Vec2::new(self.s11 * v.x + self.s12 * v.y, self.s12 * v.x + self.s22 * v.y)
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self::new(self.s11 * t, self.s12 * t, self.s22 * t)
    }

    pub fn is_finite(&self) -> bool {
        self.s11.is_finite() && self.s12.is_finite() && self.s22.is_finite()
    }

    /// Largest absolute entry difference.
    pub fn max_abs_diff(&self, other: &SymMatrix2) -> f64 {
        (self.s11 - other.s11)
            .abs()
            .max((self.s12 - other.s12).abs())
            .max((self.s22 - other.s22).abs())
    }
}

impl Add for SymMatrix2 {
    type Output = SymMatrix2;
    fn add(self, rhs: SymMatrix2) -> SymMatrix2 {
        SymMatrix2::new(self.s11 + rhs.s11, self.s12 + rhs.s12, self.s22 + rhs.s22)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenDecomposition {
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub v_max: Vec2,
    pub v_min: Vec2,
}

/// First nonzero component positive.
fn canonical_sign(v: Vec2) -> Vec2 {
    let lead = if v.x != 0.0 { v.x } else { v.y };
    if lead < 0.0 {
        -v
    } else {
        v
    }
}

/// Eigenvalues `(λ_max, λ_min)` only; see [`sym2_eigen`].
pub fn sym2_eigenvalues(m: &SymMatrix2) -> Result<(f64, f64)> {
    if !m.is_finite() {
        return Err(FrameError::InvalidInput("matrix has a non-finite entry".into()));
    }
    let half_trace = 0.5 * m.trace();
    let half_gap = (0.5 * (m.s11 - m.s22)).hypot(m.s12);
    let det = m.det();

    let (big, other) = if half_trace >= 0.0 {
        let big = half_trace + half_gap;
        (big, if big != 0.0 { det / big } else { half_trace - half_gap })
    } else {
        let big = half_trace - half_gap;
        (big, det / big)
    };
    Ok((big.max(other), big.min(other)))
}

/// Eigen-decomposition of a symmetric 2x2 matrix.
///
/// The eigenvalues are the roots of `x² - tr(M) x + det(M)`. The root of
/// larger magnitude is formed first and the other one recovered as
/// `det / root`, which avoids cancellation for nearly singular matrices.
/// The half-gap between roots is `hypot((s11 - s22)/2, s12)`, so the
/// discriminant is never negative.
pub fn sym2_eigen(m: &SymMatrix2) -> Result<EigenDecomposition> {
    let (lambda_max, lambda_min) = sym2_eigenvalues(m)?;

    // Principal axis angle; atan2(0, 0) = 0 picks e1 for multiples of I.
    let theta = 0.5 * (2.0 * m.s12).atan2(m.s11 - m.s22);
    let v_max = Vec2::from_angle(theta);
    let v_min = Vec2::new(-v_max.y, v_max.x);

    Ok(EigenDecomposition {
        lambda_max,
        lambda_min,
        v_max: canonical_sign(v_max),
        v_min: canonical_sign(v_min),
    })
}

/// Nonnegative per-vector weights.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scaling {
    weights: Vec<f64>,
    /// True when every weight is strictly positive.
    strict: bool,
}

impl Scaling {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(i) = weights.iter().position(|w| !w.is_finite() || *w < 0.0) {
            return Err(FrameError::InvalidInput(format!(
                "weight {i} must be finite and nonnegative, got {}",
                weights[i]
            )));
        }
        let strict = weights.iter().all(|&w| w > 0.0);
        Ok(Self { weights, strict })
    }

    pub fn uniform(m: usize, w: f64) -> Result<Self> {
        Self::new(vec![w; m])
    }

    pub fn ones(m: usize) -> Self {
        Self { weights: vec![1.0; m], strict: true }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn into_weights(self) -> Vec<f64> {
        self.weights
    }
}

/// Multiplies vector `i` by weight `i`.
///
/// The result is a raw family rather than a [`Frame`]: zero weights
/// produce zero vectors.
pub fn apply_scaling(frame: &Frame, scaling: &Scaling) -> Result<Vec<Vec2>> {
    if frame.len() != scaling.len() {
        return Err(FrameError::Dimension { expected: frame.len(), got: scaling.len() });
    }
    Ok(frame
        .vectors()
        .iter()
        .zip(scaling.weights())
        .map(|(&v, &w)| v * w)
        .collect())
}
