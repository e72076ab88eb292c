//! Parseval scaling of three plane vectors whose directions do not fit in a
//! closed quadrant.
//!
//! With the triple in normal position (`⟨φ₁,φ₂⟩ > 0`, `⟨φ₂,φ₃⟩ > 0`,
//! `⟨φ₁,φ₃⟩ < 0`) pick `c > 0` with `⟨φ₁,φ₂⟩⟨φ₂,φ₃⟩ = -c⟨φ₁,φ₃⟩` and lift
//! into `R² ⊕ R`:
//!
//! ```text
//! ψ₁ = φ₁ ⊕ (-⟨φ₁,φ₂⟩/√c),   ψ₂ = φ₂ ⊕ √c,   ψ₃ = φ₃ ⊕ (-⟨φ₂,φ₃⟩/√c)
//! ```
//!
//! The ψᵢ are pairwise orthogonal, so `{ψᵢ/‖ψᵢ‖}` is an orthonormal basis of
//! R³ and its projection onto the plane, `{φᵢ/‖ψᵢ‖}`, is Parseval.

use std::f64::consts::FRAC_PI_2;

use super::{pair_cosine, Method, ScalingResult, COLLINEAR_TOL};
use crate::analysis::{is_tight, TIGHT_TOL};
use crate::error::{FrameError, Result};
use crate::linalg::{apply_scaling, Frame, Scaling, Vec2};
use crate::scalability::{directions_mod_pi, min_covering_arc, ANGLE_TOL};

/// `c = -⟨p1,p2⟩⟨p2,p3⟩ / ⟨p1,p3⟩` for a triple in normal position.
pub fn lift_constant(p1: Vec2, p2: Vec2, p3: Vec2) -> Result<f64> {
    let d12 = p1.dot(p2);
    let d23 = p2.dot(p3);
    let d13 = p1.dot(p3);
    if !(d13 < 0.0) {
        return Err(FrameError::NormalPosition(format!("<p1,p3> = {d13} is not negative")));
    }
    if !(d12 * d23 > 0.0) {
        return Err(FrameError::NormalPosition(format!(
            "<p1,p2><p2,p3> = {} is not positive",
            d12 * d23
        )));
    }
    Ok(-d12 * d23 / d13)
}

/// Weights `1/‖ψᵢ‖` for a triple already in normal position.
fn lifted_weights(p: [Vec2; 3]) -> Result<[f64; 3]> {
    let c = lift_constant(p[0], p[1], p[2])?;
    let d12 = p[0].dot(p[1]);
    let d23 = p[1].dot(p[2]);
    let sc = c.sqrt();
    Ok([
        sc / (c * p[0].norm_sq() + d12 * d12).sqrt(),
        1.0 / (p[1].norm_sq() + c).sqrt(),
        sc / (c * p[2].norm_sq() + d23 * d23).sqrt(),
    ])
}

pub fn three_vector_parseval(frame: &Frame) -> Result<ScalingResult> {
    if frame.len() != 3 {
        return Err(FrameError::Dimension { expected: 3, got: frame.len() });
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if pair_cosine(frame.get(i), frame.get(j)) >= 1.0 - COLLINEAR_TOL {
                return Err(FrameError::DegeneratePair(i, j));
            }
        }
    }
    let dirs = directions_mod_pi(frame)?;
    let arc = min_covering_arc(&dirs);
    if arc.spread <= FRAC_PI_2 + ANGLE_TOL {
        return Err(FrameError::NotScalable { spread: arc.spread });
    }

    // Walk the arc from its start; orient each vector along its unwrapped
    // direction so consecutive inner products are positive and the outer
    // one (spread > π/2) is negative.
    let mut order = [0usize; 3];
    let mut oriented = [Vec2::default(); 3];
    for step in 0..3 {
        let pos = (arc.start_pos + step) % 3;
        let idx = dirs.source_index[pos];
        let unwrapped = dirs.angles[pos] + if pos < arc.start_pos { std::f64::consts::PI } else { 0.0 };
        let v = frame.get(idx);
        order[step] = idx;
        oriented[step] = if v.dot(Vec2::from_angle(unwrapped)) >= 0.0 { v } else { -v };
    }

    let w = lifted_weights(oriented)?;
    let mut weights = [0.0; 3];
    for (slot, wi) in order.iter().zip(w) {
        weights[*slot] = wi;
    }
    let scaling = Scaling::new(weights.to_vec())?;
    let report = is_tight(&apply_scaling(frame, &scaling)?, TIGHT_TOL);
    if !report.is_tight || (report.tight_constant - 1.0).abs() > TIGHT_TOL {
        return Err(FrameError::InternalConsistency(format!(
            "lifted triple scaling is not Parseval: {report:?}"
        )));
    }
    ScalingResult::evaluate(frame, scaling, Method::TightWitness, None)
}
