//! Closed-form scalings.
//!
//! * [`two_vector`]: canonical pair form, eigenstructure and the equal-norm rule.
//! * [`three_vector`]: Parseval scaling of three vectors that do not fit in a quadrant.
//! * [`general`]: the optimal length of one vector, the best pair for
//!   non-scalable frames, and the dispatcher [`min_condition_scaling`].

pub mod general;
pub mod three_vector;
pub mod two_vector;

use serde::Serialize;

use crate::analysis::{scaled_bounds, FrameBounds};
use crate::error::Result;
use crate::linalg::{Frame, Scaling};

pub use general::{best_pair_scaling, min_condition_scaling, optimal_inline_component};
pub use three_vector::{lift_constant, three_vector_parseval};
pub use two_vector::{
    equalize_pair, equalized_weights, pair_cosine, two_vector_condition, two_vector_config,
    two_vector_eigen, PairTransform, TwoVectorConfig, TwoVectorEigen, COLLINEAR_TOL,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    TightWitness,
    EqualPair,
    BestPair,
    InlineComponent,
    Restricted,
    GridSearch,
    Refined,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::TightWitness => "tight-witness",
            Method::EqualPair => "equal-pair",
            Method::BestPair => "best-pair",
            Method::InlineComponent => "inline-component",
            Method::Restricted => "restricted",
            Method::GridSearch => "grid-search",
            Method::Refined => "refined",
        }
    }
}

/// A scaling together with the bounds of the family it produces.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingResult {
    pub scaling: Scaling,
    /// Recomputed from the scaled family, never taken from a formula.
    pub bounds: FrameBounds,
    pub method: Method,
    pub pair: Option<(usize, usize)>,
}

impl ScalingResult {
    pub fn evaluate(
        frame: &Frame,
        scaling: Scaling,
        method: Method,
        pair: Option<(usize, usize)>,
    ) -> Result<Self> {
        let bounds = scaled_bounds(frame, &scaling)?;
        Ok(Self { scaling, bounds, method, pair })
    }

    pub fn cond(&self) -> f64 {
        self.bounds.cond
    }

    pub fn weights(&self) -> &[f64] {
        self.scaling.weights()
    }
}
