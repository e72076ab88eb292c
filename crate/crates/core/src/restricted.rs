//! Scaling under a budget: every weight must lie in `[1 - ε, 1 + ε]`.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::closed_form::{pair_cosine, Method, ScalingResult, COLLINEAR_TOL};
use crate::error::{FrameError, Result};
use crate::linalg::{Frame, Scaling, Vec2};
use crate::scalability::{directions_mod_pi, min_covering_arc, ANGLE_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Budget {
    epsilon: f64,
}

impl Budget {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&epsilon) {
            return Err(FrameError::InvalidInput(format!(
                "budget epsilon must lie in [0, 1), got {epsilon}"
            )));
        }
        Ok(Self { epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn lo(&self) -> f64 {
        1.0 - self.epsilon
    }

    pub fn hi(&self) -> f64 {
        1.0 + self.epsilon
    }

    pub fn contains(&self, w: f64) -> bool {
        (self.lo()..=self.hi()).contains(&w)
    }
}

/// Weights for the pair `(u, v)`: grow the shorter vector and shrink the
/// longer one by the same factor `δ = (b - a)/(a + b)` when that is within
/// budget (norms become equal), otherwise saturate at `(1 + ε, 1 - ε)`.
fn pair_weights(u: Vec2, v: Vec2, budget: Budget) -> (f64, f64) {
    let (nu, nv) = (u.norm(), v.norm());
    let (a, b) = (nu.min(nv), nu.max(nv));
    let delta = (b - a) / (a + b);
    let step = if delta <= budget.epsilon() { delta } else { budget.epsilon() };
    let (short_w, long_w) = ((1.0 + step).min(budget.hi()), (1.0 - step).max(budget.lo()));
    if nu <= nv {
        (short_w, long_w)
    } else {
        (long_w, short_w)
    }
}

pub fn restricted_pair(u: Vec2, v: Vec2, budget: Budget) -> Result<ScalingResult> {
    if !u.is_finite() || !v.is_finite() || u.norm() == 0.0 || v.norm() == 0.0 {
        return Err(FrameError::InvalidInput("pair vectors must be finite and nonzero".into()));
    }
    if pair_cosine(u, v) >= 1.0 - COLLINEAR_TOL {
        return Err(FrameError::DegeneratePair(0, 1));
    }
    let (wu, wv) = pair_weights(u, v, budget);
    let frame = Frame::new(vec![u, v])?;
    ScalingResult::evaluate(&frame, Scaling::new(vec![wu, wv])?, Method::Restricted, Some((0, 1)))
}

/// Budgeted rule for frames inside a closed quadrant: the two outer vectors
/// (endpoints of the covering arc) get the pair rule, every other vector
/// gets `1 - ε`. A vector sharing an endpoint direction with a lower index
/// counts as interior.
pub fn restricted_scaling(frame: &Frame, budget: Budget) -> Result<ScalingResult> {
    let dirs = directions_mod_pi(frame)?;
    let arc = min_covering_arc(&dirs);
    if arc.spread > FRAC_PI_2 + ANGLE_TOL {
        return Err(FrameError::Precondition(format!(
            "restricted scaling needs directions inside a quadrant, spread is {} rad",
            arc.spread
        )));
    }
    let lowest_index_at = |angle: f64| {
        (0..dirs.len())
            .filter(|&p| (dirs.angles[p] - angle).abs() <= ANGLE_TOL)
            .map(|p| dirs.source_index[p])
            .min()
            .expect("arc endpoint is one of the directions")
    };
    let first = lowest_index_at(dirs.angles[arc.start_pos]);
    let mut last = lowest_index_at(dirs.angles[arc.end_pos]);
    if first == last {
        // every vector shares one direction
        last = if first == 0 { 1 } else { 0 };
    }
    if first == last || pair_cosine(frame.get(first), frame.get(last)) >= 1.0 - COLLINEAR_TOL {
        return Err(FrameError::DegeneratePair(first.min(last), first.max(last)));
    }

    let (wf, wl) = pair_weights(frame.get(first), frame.get(last), budget);
    let mut weights = vec![budget.lo(); frame.len()];
    weights[first] = wf;
    weights[last] = wl;
    let pair = (first.min(last), first.max(last));
    ScalingResult::evaluate(frame, Scaling::new(weights)?, Method::Restricted, Some(pair))
}

/// Projects every weight onto `[1 - ε, 1 + ε]`.
pub fn clamp_scaling(scaling: &Scaling, budget: Budget) -> Scaling {
    let clamped = scaling
        .weights()
        .iter()
        .map(|w| w.clamp(budget.lo(), budget.hi()))
        .collect();
    Scaling::new(clamped).expect("clamped weights are positive and finite")
}
