//! Frames with any number of vectors.

use std::f64::consts::FRAC_PI_2;

use super::{equalized_weights, pair_cosine, Method, ScalingResult, COLLINEAR_TOL};
use crate::error::{FrameError, Result};
use crate::linalg::{Frame, Scaling};
use crate::scalability::{classify_scalability, directions_mod_pi, min_covering_arc, ANGLE_TOL};

/// Best squared length for vector `j` with every other vector held fixed.
///
/// In coordinates where `φⱼ` lies on the positive first axis, let
/// `a = Σ xᵢ²`, `b = Σ yᵢ²` and `c = (Σ xᵢyᵢ)²` over `i ≠ j`. Replacing `φⱼ`
/// by `(√x, 0)` gives a condition number whose only critical point is at
/// `x + a = b + 2c/b`; below zero the clamp keeps `x = 0`.
///
/// Returns `x` and the scaling (weight `√x / ‖φⱼ‖` on `j`, 1 elsewhere).
pub fn optimal_inline_component(frame: &Frame, j: usize) -> Result<(f64, ScalingResult)> {
    if j >= frame.len() {
        return Err(FrameError::InvalidInput(format!(
            "index {j} out of range for a frame of {} vectors",
            frame.len()
        )));
    }
    let target = frame.get(j);
    let rotation = -target.angle();
    let (mut a, mut b, mut ab) = (0.0, 0.0, 0.0);
    for (i, v) in frame.vectors().iter().enumerate() {
        if i == j {
            continue;
        }
        let r = v.rotated(rotation);
        a += r.x * r.x;
        b += r.y * r.y;
        ab += r.x * r.y;
    }
    if b <= f64::EPSILON * a.max(f64::MIN_POSITIVE) {
        return Err(FrameError::DegenerateFrame(format!(
            "every other vector is collinear with vector {j}"
        )));
    }
    let x = (b - a + 2.0 * ab * ab / b).max(0.0);

    let mut weights = vec![1.0; frame.len()];
    weights[j] = x.sqrt() / target.norm();
    let result = ScalingResult::evaluate(frame, Scaling::new(weights)?, Method::InlineComponent, None)?;
    Ok((x, result))
}

/// For a frame whose directions fit in an open quadrant: keep the pair with
/// the smallest `|⟨φ̂ᵢ, φ̂ⱼ⟩|` (the widest angle), equalize its norms and
/// zero everything else. The condition number is then `(1 + a) / (1 - a)`.
pub fn best_pair_scaling(frame: &Frame) -> Result<ScalingResult> {
    let arc = min_covering_arc(&directions_mod_pi(frame)?);
    if arc.spread >= FRAC_PI_2 - ANGLE_TOL {
        return Err(FrameError::Precondition(format!(
            "best-pair scaling needs a non-scalable frame, spread is {}",
            arc.spread
        )));
    }

    let m = frame.len();
    let mut best = (f64::INFINITY, 0, 1);
    for i in 0..m {
        for j in i + 1..m {
            let a = pair_cosine(frame.get(i), frame.get(j));
            if a < best.0 {
                best = (a, i, j);
            }
        }
    }
    let (a, i, j) = best;
    if a >= 1.0 - COLLINEAR_TOL {
        return Err(FrameError::DegeneratePair(i, j));
    }
    let (wi, wj) = equalized_weights(frame.get(i), frame.get(j));
    let mut weights = vec![0.0; m];
    weights[i] = wi;
    weights[j] = wj;
    ScalingResult::evaluate(frame, Scaling::new(weights)?, Method::BestPair, Some((i, j)))
}

/// Tight witness when the frame is scalable, best pair otherwise.
pub fn min_condition_scaling(frame: &Frame) -> Result<ScalingResult> {
    let verdict = classify_scalability(frame)?;
    match verdict.witness {
        Some(witness) => {
            let pair = match verdict.witness_kind {
                Some(crate::scalability::WitnessKind::OrthogonalPair { i, j }) => Some((i, j)),
                _ => None,
            };
            ScalingResult::evaluate(frame, witness, Method::TightWitness, pair)
        }
        None => best_pair_scaling(frame),
    }
}
