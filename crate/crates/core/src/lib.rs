//! Scalings of finite frames in the plane that minimize the condition number.
//!
//! A frame is a finite spanning family `φ₁, …, φₘ` in R². Scaling it by
//! weights `wᵢ ≥ 0` changes its frame operator to `Σ wᵢ² φᵢφᵢᵀ`; this crate
//! finds weights making the ratio of the operator's eigenvalues as small as
//! possible:
//!
//! * exactly (ratio 1) when the frame is scalable ([`scalability`]),
//! * in closed form when it is not ([`closed_form`]),
//! * under a per-weight budget `[1 - ε, 1 + ε]` ([`restricted`]),
//!
//! and checks each answer against a brute-force grid search ([`oracle`]).

pub mod analysis;
pub mod cli;
pub mod closed_form;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod restricted;
pub mod scalability;

pub use analysis::{frame_bounds, frame_operator, is_tight, scaled_bounds, FrameBounds, TightnessReport};
pub use closed_form::{best_pair_scaling, min_condition_scaling, Method, ScalingResult};
pub use error::{FrameError, Result};
pub use linalg::{apply_scaling, Frame, Scaling, SymMatrix2, Vec2};
pub use oracle::{grid_search_scaling, refine_scaling, verify_scaling, SearchSpec};
pub use restricted::{restricted_scaling, Budget};
pub use scalability::{classify_scalability, ScalabilityVerdict};
