//! Brute-force ground truth for small frames.
//!
//! [`grid_search_scaling`] evaluates the condition number on a full weight
//! lattice; [`refine_scaling`] polishes a point by cyclic coordinate descent.
//! Neither uses any closed-form scaling rule, only the frame operator and
//! its eigenvalues.

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{is_tight, scaled_bounds, TightnessReport, RANK_TOL, TIGHT_TOL};
use crate::closed_form::{Method, ScalingResult};
use crate::error::{FrameError, Result};
use crate::linalg::{apply_scaling, sym2_eigenvalues, Frame, Scaling, SymMatrix2};
use crate::restricted::Budget;

pub const DEFAULT_CAP: u128 = 100_000_000;
pub const DEFAULT_REFINE_ITERATIONS: usize = 200;

/// Closed weight interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo >= 0.0 && lo <= hi) {
            return Err(FrameError::InvalidInput(format!(
                "weight interval [{lo}, {hi}] must satisfy 0 <= lo <= hi"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, w: f64) -> bool {
        (self.lo..=self.hi).contains(&w)
    }

    fn level(&self, i: usize, levels: usize) -> f64 {
        if i + 1 == levels {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * (i as f64 / (levels - 1) as f64)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchSpec {
    pub intervals: Vec<Interval>,
    pub levels: usize,
    pub refine: bool,
    pub refine_iterations: usize,
    pub cap: u128,
}

impl SearchSpec {
    pub fn uniform(m: usize, lo: f64, hi: f64, levels: usize) -> Result<Self> {
        Self::new(vec![Interval::new(lo, hi)?; m], levels)
    }

    /// Every weight in `[1 - ε, 1 + ε]`.
    pub fn budgeted(m: usize, budget: Budget, levels: usize) -> Result<Self> {
        Self::uniform(m, budget.lo(), budget.hi(), levels)
    }

    pub fn new(intervals: Vec<Interval>, levels: usize) -> Result<Self> {
        if levels < 2 {
            return Err(FrameError::InvalidInput(format!("need at least 2 levels, got {levels}")));
        }
        Ok(Self {
            intervals,
            levels,
            refine: false,
            refine_iterations: DEFAULT_REFINE_ITERATIONS,
            cap: DEFAULT_CAP,
        })
    }

    pub fn with_refine(mut self, refine: bool) -> Self {
        self.refine = refine;
        self
    }

    pub fn with_cap(mut self, cap: u128) -> Self {
        self.cap = cap;
        self
    }

    pub fn evaluations(&self) -> Option<u128> {
        (self.levels as u128).checked_pow(self.intervals.len() as u32)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleOutcome {
    pub result: ScalingResult,
    /// Best condition number on the lattice, before any refinement.
    pub grid_cond: f64,
    pub evaluated: u128,
    /// Lattice points skipped because the scaled family did not span.
    pub skipped: u128,
}

/// Condition number of `Σ wᵢ² Pᵢ`, or `None` when the family does not span.
fn lattice_cond(outers: &[SymMatrix2], weights: &[f64]) -> Option<f64> {
    let s = outers
        .iter()
        .zip(weights)
        .fold(SymMatrix2::default(), |acc, (p, w)| acc + p.scaled(w * w));
    let (hi, lo) = sym2_eigenvalues(&s).ok()?;
    (lo > RANK_TOL).then(|| hi / lo)
}

#[derive(Clone, Copy)]
struct Best {
    cond: f64,
    index: u128,
}

impl Best {
    fn better(self, other: Best) -> Best {
        if other.cond < self.cond || (other.cond == self.cond && other.index < self.index) {
            other
        } else {
            self
        }
    }
}

/// Exhaustive lattice search. The first weight is the most significant
/// lattice coordinate; among equal condition numbers the lexicographically
/// smallest weight tuple wins, independent of how the work is split.
pub fn grid_search_scaling(frame: &Frame, spec: &SearchSpec) -> Result<OracleOutcome> {
    let m = frame.len();
    if spec.intervals.len() != m {
        return Err(FrameError::Dimension { expected: m, got: spec.intervals.len() });
    }
    let total = match spec.evaluations() {
        Some(n) if n <= spec.cap => n,
        Some(n) => return Err(FrameError::BudgetExceeded { evaluations: n, cap: spec.cap }),
        None => return Err(FrameError::BudgetExceeded { evaluations: u128::MAX, cap: spec.cap }),
    };
    let levels = spec.levels;
    let lattice: Vec<Vec<f64>> = spec
        .intervals
        .iter()
        .map(|iv| (0..levels).map(|i| iv.level(i, levels)).collect())
        .collect();
    let outers: Vec<SymMatrix2> = frame.vectors().iter().map(|&v| SymMatrix2::outer(v)).collect();

    // One task per value of the leading weight; the tail is an odometer.
    let tail = total / levels as u128;
    let (best, skipped) = (0..levels)
        .into_par_iter()
        .map(|lead| {
            let mut digits = vec![0usize; m];
            digits[0] = lead;
            let mut weights: Vec<f64> = (0..m).map(|i| lattice[i][digits[i]]).collect();
            let mut best = Best { cond: f64::INFINITY, index: u128::MAX };
            let mut skipped = 0u128;
            for offset in 0..tail {
                match lattice_cond(&outers, &weights) {
                    Some(cond) => {
                        best = best.better(Best { cond, index: lead as u128 * tail + offset });
                    }
                    None => skipped += 1,
                }
                for pos in (1..m).rev() {
                    digits[pos] += 1;
                    if digits[pos] < levels {
                        weights[pos] = lattice[pos][digits[pos]];
                        break;
                    }
                    digits[pos] = 0;
                    weights[pos] = lattice[pos][0];
                }
            }
            (best, skipped)
        })
        .reduce(
            || (Best { cond: f64::INFINITY, index: u128::MAX }, 0),
            |(a, sa), (b, sb)| (a.better(b), sa + sb),
        );

    if best.index == u128::MAX {
        return Err(FrameError::DegenerateFrame(
            "no lattice point gives a spanning family".into(),
        ));
    }
    let mut rem = best.index;
    let mut weights = vec![0.0; m];
    for pos in (0..m).rev() {
        weights[pos] = lattice[pos][(rem % levels as u128) as usize];
        rem /= levels as u128;
    }
    let grid = ScalingResult::evaluate(frame, Scaling::new(weights)?, Method::GridSearch, None)?;
    let grid_cond = grid.cond();
    let result = if spec.refine {
        refine_scaling(frame, &grid.scaling, &spec.intervals, spec.refine_iterations)?
    } else {
        grid
    };
    Ok(OracleOutcome { result, grid_cond, evaluated: total - skipped, skipped })
}

const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the minimum of `f` on `[lo, hi]`; returns the
/// best point seen (endpoints included).
fn golden_section(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    let mut best = (lo, f(lo));
    let fh = f(hi);
    if fh < best.1 {
        best = (hi, fh);
    }
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - GOLDEN * (b - a);
    let mut x2 = a + GOLDEN * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let tol = 1e-15 * hi.abs().max(1.0);
    while b - a > tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - GOLDEN * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLDEN * (b - a);
            f2 = f(x2);
        }
        for (x, fx) in [(x1, f1), (x2, f2)] {
            if fx < best.1 {
                best = (x, fx);
            }
        }
    }
    best
}

/// Cyclic coordinate descent inside `intervals`, starting from `init`.
/// A coordinate only moves when the condition number strictly drops, so the
/// result is never worse than the starting point.
pub fn refine_scaling(
    frame: &Frame,
    init: &Scaling,
    intervals: &[Interval],
    max_iterations: usize,
) -> Result<ScalingResult> {
    let m = frame.len();
    if init.len() != m || intervals.len() != m {
        return Err(FrameError::Dimension { expected: m, got: init.len().min(intervals.len()) });
    }
    if let Some(i) = (0..m).find(|&i| !intervals[i].contains(init.weights()[i])) {
        return Err(FrameError::Precondition(format!("initial weight {i} lies outside its interval")));
    }
    let outers: Vec<SymMatrix2> = frame.vectors().iter().map(|&v| SymMatrix2::outer(v)).collect();
    let cond_of = |w: &[f64]| lattice_cond(&outers, w).unwrap_or(f64::INFINITY);

    let mut weights = init.weights().to_vec();
    let mut current = cond_of(&weights);
    for _ in 0..max_iterations {
        let before = current;
        for i in 0..m {
            let Interval { lo, hi } = intervals[i];
            if lo == hi {
                continue;
            }
            let mut trial = weights.clone();
            let (t, ft) = golden_section(
                |t| {
                    trial[i] = t;
                    cond_of(&trial)
                },
                lo,
                hi,
            );
            if ft < current {
                weights[i] = t;
                current = ft;
            }
        }
        if !(before - current >= 1e-12) {
            break;
        }
    }
    ScalingResult::evaluate(frame, Scaling::new(weights)?, Method::Refined, None)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub claimed_cond: f64,
    pub cond: f64,
    pub lower: f64,
    pub upper: f64,
    pub tightness: TightnessReport,
    pub strict: bool,
}

/// Recomputes the bounds of the scaled family and compares the condition
/// number with `claimed` at relative tolerance `tol·max(1, claimed)`.
pub fn verify_scaling(
    frame: &Frame,
    scaling: &Scaling,
    claimed: f64,
    tol: f64,
) -> Result<VerificationReport> {
    let bounds = scaled_bounds(frame, scaling)?;
    let passed = if claimed.is_infinite() || bounds.cond.is_infinite() {
        claimed == bounds.cond
    } else {
        (bounds.cond - claimed).abs() <= tol * claimed.abs().max(1.0)
    };
    Ok(VerificationReport {
        passed,
        claimed_cond: claimed,
        cond: bounds.cond,
        lower: bounds.lower,
        upper: bounds.upper,
        tightness: is_tight(&apply_scaling(frame, scaling)?, TIGHT_TOL),
        strict: scaling.is_strict(),
    })
}
