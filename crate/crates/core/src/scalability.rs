//! Quadrant test for scalability in the plane.
//!
//! Sign flips identify `φ` with `-φ`, so each vector contributes a direction
//! on a circle of circumference π. A frame is scalable (with nonnegative
//! weights) exactly when those directions do not fit in an open arc of
//! length π/2. If they fit, the covering arc is the certificate; if they do
//! not, an orthogonal pair or a three-vector Parseval construction is the
//! witness.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::analysis::{is_tight, TIGHT_TOL};
use crate::closed_form::{equalized_weights, three_vector_parseval};
use crate::error::{FrameError, Result};
use crate::linalg::{apply_scaling, Frame, Scaling};

/// Angular tolerance (radians) for spread comparisons and direction ties.
pub const ANGLE_TOL: f64 = 1e-12;

/// Directions of the frame vectors reduced to `[0, π)` and sorted.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirectionSet {
    pub angles: Vec<f64>,
    /// `source_index[p]` is the frame index of `angles[p]`.
    pub source_index: Vec<usize>,
}

impl DirectionSet {
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// Angle at sorted position `p`, unwrapped so that positions past the
    /// end continue around the circle.
    fn unwrapped(&self, p: usize) -> f64 {
        let m = self.len();
        self.angles[p % m] + PI * (p / m) as f64
    }
}

/// Minimal arc (on the circle of circumference π) covering every direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoveringArc {
    pub start: f64,
    pub spread: f64,
    /// Sorted positions of the first and last direction inside the arc.
    pub start_pos: usize,
    pub end_pos: usize,
}

/// How a scalability witness was built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WitnessKind {
    OrthogonalPair { i: usize, j: usize },
    Triple { i: usize, j: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalabilityVerdict {
    pub scalable: bool,
    pub spread: f64,
    pub arc_start: f64,
    pub witness: Option<Scaling>,
    pub witness_kind: Option<WitnessKind>,
}

/// Direction of `v` in `[0, π)`.
pub fn direction_mod_pi(x: f64, y: f64) -> f64 {
    let mut t = y.atan2(x);
    if t < 0.0 {
        t += PI;
    }
    if t >= PI {
        t -= PI;
    }
    // folds -0.0
    t + 0.0
}

pub fn directions_mod_pi(frame: &Frame) -> Result<DirectionSet> {
    let mut tagged = Vec::with_capacity(frame.len());
    for (i, v) in frame.vectors().iter().enumerate() {
        if v.norm() == 0.0 || !v.is_finite() {
            return Err(FrameError::InvalidInput(format!("vector {i} has no direction")));
        }
        tagged.push((direction_mod_pi(v.x, v.y), i));
    }
    tagged.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let (angles, source_index) = tagged.into_iter().unzip();
    Ok(DirectionSet { angles, source_index })
}

/// The covering arc is the complement of the largest circular gap between
/// consecutive directions. Gaps within [`ANGLE_TOL`] of the largest count as
/// ties and the one whose arc starts at the smallest angle wins.
pub fn min_covering_arc(dirs: &DirectionSet) -> CoveringArc {
    let m = dirs.len();
    assert!(m > 0, "covering arc of an empty direction set");
    let gap = |p: usize| dirs.unwrapped(p + 1) - dirs.unwrapped(p);
    let largest = (0..m).map(gap).fold(f64::NEG_INFINITY, f64::max);

    let mut best: Option<usize> = None;
    for p in 0..m {
        if gap(p) < largest - ANGLE_TOL {
            continue;
        }
        let start = dirs.angles[(p + 1) % m];
        match best {
            Some(q) if dirs.angles[(q + 1) % m] <= start => {}
            _ => best = Some(p),
        }
    }
    let p = best.expect("at least one gap attains the maximum");
    CoveringArc {
        start: dirs.angles[(p + 1) % m],
        spread: (PI - gap(p)).max(0.0),
        start_pos: (p + 1) % m,
        end_pos: p,
    }
}

/// Angle between two directions on the mod-π circle, in `[0, π/2]`.
fn direction_separation(a: f64, b: f64) -> f64 {
    let d = (a - b).abs() % PI;
    d.min(PI - d)
}

fn find_orthogonal_pair(frame: &Frame) -> Option<(usize, usize)> {
    let dirs: Vec<f64> = frame
        .vectors()
        .iter()
        .map(|v| direction_mod_pi(v.x, v.y))
        .collect();
    for i in 0..dirs.len() {
        for j in i + 1..dirs.len() {
            if (direction_separation(dirs[i], dirs[j]) - FRAC_PI_2).abs() <= ANGLE_TOL {
                return Some((i, j));
            }
        }
    }
    None
}

/// Picks three directions whose pairwise circular gaps are all strictly
/// between 0 and π/2, preferring the triple with the smallest largest gap.
fn find_spanning_triple(dirs: &DirectionSet) -> Option<[usize; 3]> {
    let m = dirs.len();
    let limit = FRAC_PI_2 - ANGLE_TOL;
    let mut best: Option<(f64, [usize; 3])> = None;
    for i in 0..m {
        let ti = dirs.unwrapped(i);
        let Some(j) = (i + 1..i + m).take_while(|&p| dirs.unwrapped(p) - ti < limit).last() else {
            continue;
        };
        let tj = dirs.unwrapped(j);
        let Some(k) = (j + 1..i + m).take_while(|&p| dirs.unwrapped(p) - tj < limit).last() else {
            continue;
        };
        let tk = dirs.unwrapped(k);
        let gaps = [tj - ti, tk - tj, ti + PI - tk];
        if gaps.iter().all(|&g| g > ANGLE_TOL && g < limit) {
            let worst = gaps.iter().copied().fold(0.0, f64::max);
            if best.is_none_or(|(w, _)| worst < w) {
                best = Some((worst, [i, j % m, k % m]));
            }
        }
    }
    best.map(|(_, pos)| pos.map(|p| dirs.source_index[p]))
}

/// Scalable iff the angular spread is at least π/2 (closed quadrant counts
/// as scalable). Every witness is checked with [`is_tight`] before return.
pub fn classify_scalability(frame: &Frame) -> Result<ScalabilityVerdict> {
    let dirs = directions_mod_pi(frame)?;
    let arc = min_covering_arc(&dirs);
    if arc.spread < FRAC_PI_2 - ANGLE_TOL {
        return Ok(ScalabilityVerdict {
            scalable: false,
            spread: arc.spread,
            arc_start: arc.start,
            witness: None,
            witness_kind: None,
        });
    }

    let m = frame.len();
    let (witness, kind) = if let Some((i, j)) = find_orthogonal_pair(frame) {
        let (wi, wj) = equalized_weights(frame.get(i), frame.get(j));
        let mut weights = vec![0.0; m];
        weights[i] = wi;
        weights[j] = wj;
        (Scaling::new(weights)?, WitnessKind::OrthogonalPair { i, j })
    } else {
        let idx = find_spanning_triple(&dirs).ok_or_else(|| {
            FrameError::InternalConsistency(format!(
                "spread {} exceeds pi/2 but no spanning triple was found",
                arc.spread
            ))
        })?;
        let sub = frame.select(&idx)?;
        let result = three_vector_parseval(&sub)?;
        let mut weights = vec![0.0; m];
        for (slot, w) in idx.iter().zip(result.scaling.weights()) {
            weights[*slot] = *w;
        }
        (Scaling::new(weights)?, WitnessKind::Triple { i: idx[0], j: idx[1], k: idx[2] })
    };

    let report = is_tight(&apply_scaling(frame, &witness)?, TIGHT_TOL);
    if !report.is_tight || report.tight_constant <= 0.0 {
        return Err(FrameError::InternalConsistency(format!(
            "scalability witness {kind:?} is not tight: {report:?}"
        )));
    }
    Ok(ScalabilityVerdict {
        scalable: true,
        spread: arc.spread,
        arc_start: arc.start,
        witness: Some(witness),
        witness_kind: Some(kind),
    })
}
