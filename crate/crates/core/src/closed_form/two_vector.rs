//! Two-vector frames in canonical position `φ₁ = (k, 0)`, `φ₂ = (a, b)`.

use serde::Serialize;

use super::{Method, ScalingResult};
use crate::error::{FrameError, Result};
use crate::linalg::{Frame, Scaling, Vec2};

/// Pairs with `|cos angle| ≥ 1 - COLLINEAR_TOL` are treated as collinear.
pub const COLLINEAR_TOL: f64 = 1e-12;

/// Moves that carry an arbitrary pair to canonical position.
///
/// Applied in order: optional swap (shorter vector first), uniform scale by
/// `1 / ‖longer‖`, rotation placing the shorter vector on the positive
/// first axis, optional sign flip of the longer vector, optional
/// reflection across the first axis. Each of these preserves the
/// condition number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PairTransform {
    pub swapped: bool,
    pub scale: f64,
    pub rotation: f64,
    pub long_sign: f64,
    pub reflect: bool,
}

impl PairTransform {
    fn map(&self, p: Vec2) -> Vec2 {
        let q = (p * self.scale).rotated(self.rotation);
        if self.reflect {
            Vec2::new(q.x, -q.y)
        } else {
            q
        }
    }

    fn unmap(&self, p: Vec2) -> Vec2 {
        let q = if self.reflect { Vec2::new(p.x, -p.y) } else { p };
        q.rotated(-self.rotation) * (1.0 / self.scale)
    }

    /// Images of the original pair `(u, v)` in canonical position.
    pub fn canonicalize(&self, u: Vec2, v: Vec2) -> (Vec2, Vec2) {
        let (short, long) = if self.swapped { (v, u) } else { (u, v) };
        (self.map(short), self.map(long) * self.long_sign)
    }

    /// Inverse of [`canonicalize`](Self::canonicalize).
    pub fn restore(&self, short: Vec2, long: Vec2) -> (Vec2, Vec2) {
        let s = self.unmap(short);
        let l = self.unmap(long * self.long_sign);
        if self.swapped {
            (l, s)
        } else {
            (s, l)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoVectorConfig {
    /// Norm ratio shorter / longer, in `(0, 1]`.
    pub k: f64,
    /// `|cos|` of the angle between the pair, in `[0, 1)`.
    pub a: f64,
    pub b: f64,
    pub transform: PairTransform,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoVectorEigen {
    pub d: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    /// Positive root of `(ak)w² + (1 - k²)w - ka = 0`; 0 when `a = 0`.
    pub w: f64,
}

/// `|⟨û, v̂⟩|` for nonzero `u`, `v`.
pub fn pair_cosine(u: Vec2, v: Vec2) -> f64 {
    (u.normalized().dot(v.normalized())).abs().min(1.0)
}

pub fn two_vector_config(u: Vec2, v: Vec2) -> Result<TwoVectorConfig> {
    for (i, p) in [u, v].iter().enumerate() {
        if !p.is_finite() || p.norm() == 0.0 {
            return Err(FrameError::InvalidInput(format!("pair vector {i} is zero or non-finite")));
        }
    }
    let a = pair_cosine(u, v);
    if a >= 1.0 - COLLINEAR_TOL {
        return Err(FrameError::DegeneratePair(0, 1));
    }
    let swapped = u.norm() > v.norm();
    let (short, long) = if swapped { (v, u) } else { (u, v) };
    let scale = 1.0 / long.norm();
    let rotation = -short.angle();

    let mut transform = PairTransform { swapped, scale, rotation, long_sign: 1.0, reflect: false };
    let image = (long * scale).rotated(rotation);
    if image.x < 0.0 {
        transform.long_sign = -1.0;
    }
    if image.y * transform.long_sign < 0.0 {
        transform.reflect = true;
    }

    Ok(TwoVectorConfig {
        k: short.norm() * scale,
        a,
        b: ((1.0 - a) * (1.0 + a)).sqrt(),
        transform,
    })
}

/// Eigenvalues `(k² + 1 ± √D) / 2` with `D = (1 - k²)² + 4k²a²`.
///
/// The smaller root and `w` are evaluated in rationalized form
/// (`λ₂ = 2k²b² / (k² + 1 + √D)`, `w = 2ka / (√D + 1 - k²)`), which are
/// algebraically identical and free of cancellation.
pub fn two_vector_eigen(cfg: &TwoVectorConfig) -> TwoVectorEigen {
    let (k, a, b) = (cfg.k, cfg.a, cfg.b);
    let k2 = k * k;
    let d = (1.0 - k2) * (1.0 - k2) + 4.0 * k2 * a * a;
    let root = d.sqrt();
    let lambda1 = 0.5 * (k2 + 1.0 + root);
    let lambda2 = 2.0 * k2 * b * b / (k2 + 1.0 + root);
    let w = if a > 0.0 { 2.0 * k * a / (root + 1.0 - k2) } else { 0.0 };
    TwoVectorEigen { d, lambda1, lambda2, w }
}

/// `f(k, a) = λ₁ / λ₂`.
pub fn two_vector_condition(cfg: &TwoVectorConfig) -> f64 {
    let e = two_vector_eigen(cfg);
    e.lambda1 / e.lambda2
}

/// Weights giving both vectors the norm `min(‖u‖, ‖v‖)`.
pub fn equalized_weights(u: Vec2, v: Vec2) -> (f64, f64) {
    let (nu, nv) = (u.norm(), v.norm());
    let longest = nu.max(nv);
    (nv / longest, nu / longest)
}

/// Scales a pair to equal norms; the condition number becomes
/// `(1 + a) / (1 - a)` with `a = |⟨û, v̂⟩|`.
pub fn equalize_pair(u: Vec2, v: Vec2) -> Result<ScalingResult> {
    two_vector_config(u, v)?;
    let (wu, wv) = equalized_weights(u, v);
    let frame = Frame::new(vec![u, v])?;
    ScalingResult::evaluate(&frame, Scaling::new(vec![wu, wv])?, Method::EqualPair, Some((0, 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::frame_bounds;
    use approx::assert_abs_diff_eq;

    fn cfg(k: f64, a: f64) -> TwoVectorConfig {
        two_vector_config(Vec2::new(k, 0.0), Vec2::new(a, (1.0 - a * a).sqrt())).unwrap()
    }

    #[test]
    fn config_examples() {
        let c = two_vector_config(Vec2::new(0.0, 0.5), Vec2::new(0.6, 0.8)).unwrap();
        assert_abs_diff_eq!(c.k, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(c.a, 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(c.b, 0.6, epsilon = 1e-15);

        let c = two_vector_config(Vec2::new(1.0, 0.0), Vec2::new(0.0, 2.0)).unwrap();
        assert_eq!((c.k, c.a), (0.5, 0.0));

        assert_eq!(
            two_vector_config(Vec2::new(1.0, 0.0), Vec2::new(2.0, 0.0)),
            Err(FrameError::DegeneratePair(0, 1))
        );
        assert!(matches!(
            two_vector_config(Vec2::new(0.0, 0.0), Vec2::new(2.0, 0.0)),
            Err(FrameError::InvalidInput(_))
        ));
    }

    #[test]
    fn transform_roundtrip() {
        let cases = [
            (Vec2::new(3.0, -1.0), Vec2::new(-0.5, 0.7)),
            (Vec2::new(-0.2, -0.9), Vec2::new(1.5, -2.0)),
            (Vec2::new(0.3, 0.1), Vec2::new(-0.1, -2.0)),
        ];
        for (u, v) in cases {
            let c = two_vector_config(u, v).unwrap();
            let (p1, p2) = c.transform.canonicalize(u, v);
            assert_abs_diff_eq!(p1.x, c.k, epsilon = 1e-12);
            assert_abs_diff_eq!(p1.y, 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!(p2.x, c.a, epsilon = 1e-12);
            assert_abs_diff_eq!(p2.y, c.b, epsilon = 1e-12);
            let (ru, rv) = c.transform.restore(p1, p2);
            assert_abs_diff_eq!((ru - u).norm(), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!((rv - v).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn eigen_examples() {
        let e = two_vector_eigen(&cfg(1.0, 0.3));
        assert_abs_diff_eq!(e.lambda1, 1.3, epsilon = 1e-15);
        assert_abs_diff_eq!(e.lambda2, 0.7, epsilon = 1e-15);
        assert_abs_diff_eq!(e.w, 1.0, epsilon = 1e-15);

        let e = two_vector_eigen(&cfg(0.5, 0.6));
        assert_abs_diff_eq!(e.d, 0.9225, epsilon = 1e-15);
        assert_abs_diff_eq!(e.lambda1, 1.105234, epsilon = 1e-6);
        assert_abs_diff_eq!(e.lambda2, 0.144766, epsilon = 1e-6);

        let e = two_vector_eigen(&cfg(0.4, 0.0));
        assert_abs_diff_eq!(e.d, 0.84 * 0.84, epsilon = 1e-15);
        assert_abs_diff_eq!(e.lambda1, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.lambda2, 0.16, epsilon = 1e-15);
        assert_eq!(e.w, 0.0);
    }

    #[test]
    fn w_solves_quadratic_and_eigen_identities() {
        for (k, a) in [(0.5, 0.6), (0.1, 0.95), (0.9, 0.05), (1.0, 0.7)] {
            let c = cfg(k, a);
            let e = two_vector_eigen(&c);
            let residual = a * k * e.w * e.w + (1.0 - k * k) * e.w - k * a;
            assert_abs_diff_eq!(residual, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(e.lambda1, 1.0 + e.w * k * a, epsilon = 1e-12);
            assert_abs_diff_eq!(e.lambda2, k * k - e.w * k * a, epsilon = 1e-12);
        }
    }

    #[test]
    fn condition_examples() {
        assert_abs_diff_eq!(two_vector_condition(&cfg(1.0, 0.3)), 13.0 / 7.0, epsilon = 1e-12);
        // S = [[0.61, 0.48], [0.48, 0.64]]: trace 1.25, det 0.16
        let disc = (1.25f64 * 1.25 - 4.0 * 0.16).sqrt();
        let expected = (1.25 + disc) / (1.25 - disc);
        assert_abs_diff_eq!(two_vector_condition(&cfg(0.5, 0.6)), expected, epsilon = 1e-12);
        assert_abs_diff_eq!(two_vector_condition(&cfg(0.5, 0.6)), 7.634647, epsilon = 1e-5);
        for k in [0.2, 0.5, 0.9] {
            assert_abs_diff_eq!(two_vector_condition(&cfg(k, 0.0)), 1.0 / (k * k), epsilon = 1e-12);
        }
    }

    #[test]
    fn condition_matches_frame_bounds() {
        let c = cfg(0.5, 0.6);
        let b = frame_bounds(&[Vec2::new(0.5, 0.0), Vec2::new(0.6, 0.8)]).unwrap();
        assert_abs_diff_eq!(two_vector_condition(&c), b.cond, epsilon = 1e-12);
    }

    #[test]
    fn equalize_examples() {
        let r = equalize_pair(Vec2::new(0.5, 0.0), Vec2::new(0.0, 1.0)).unwrap();
        assert_eq!(r.weights(), &[1.0, 0.5]);
        assert_abs_diff_eq!(r.cond(), 1.0, epsilon = 1e-15);

        let a: f64 = 0.3;
        let r = equalize_pair(Vec2::new(1.0, 0.0), Vec2::from_angle(a.acos())).unwrap();
        assert_abs_diff_eq!(r.weights()[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.weights()[1], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.cond(), 13.0 / 7.0, epsilon = 1e-12);

        let r = equalize_pair(Vec2::new(0.0, 0.5), Vec2::new(0.6, 0.8)).unwrap();
        assert_eq!(r.weights(), &[1.0, 0.5]);
        assert_abs_diff_eq!(r.cond(), 9.0, epsilon = 1e-12);
        assert_eq!(r.method, Method::EqualPair);

        assert!(equalize_pair(Vec2::new(1.0, 1.0), Vec2::new(-2.0, -2.0)).is_err());
    }
}
