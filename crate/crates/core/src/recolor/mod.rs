//! The recoloring machinery behind the `n - 1` lower bound for convex `K_n`.
//!
//! A covering by plane star-forests is rewritten, one audited move at a
//! time, until every `k`-edge is *supported*: it lies in a forest together
//! with the full fan of shorter edges from one of its endpoints. Once all
//! spans up to `n - 1` are supported some forest is a spanning star; removing
//! it together with its center leaves a covering of `K_{n-1}` with one forest
//! fewer, and [`descend`] repeats this down to a single vertex.

mod descent;
mod engine;
mod moves;
mod support;
mod trace;

use thiserror::Error;

use crate::model::{Edge, EdgeRep};

pub use descent::{descend, descend_with, extract_spanning_star, DescentCertificate, DescentLevel};
pub use engine::{make_all_supported_up_to, make_supported, RecolorEngine, RecolorOptions};
pub use moves::move_star;
pub use support::{is_supported, supported_reps, supporting_forest, SupportKind};
pub use trace::TraceEntry;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecolorError {
    #[error("span {} is not in 2..{n} for rep ({}, {})", rep.k, rep.a, rep.k)]
    BadSpan { rep: EdgeRep, n: usize },
    #[error("the star is not a component of forest {forest}")]
    NotAComponent { forest: usize },
    #[error("moving the star into forest {forest} makes {first} cross {second}")]
    CrossingIntroduced { forest: usize, first: Edge, second: Edge },
    #[error("moving the star into forest {forest} would put vertex {vertex} in two components")]
    WouldBreakStarForest { forest: usize, vertex: usize },
    #[error("no forest is a spanning star")]
    NoSpanningStar,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("proof invariant violated at {step}: {detail}")]
    ProofInvariantViolation { step: String, detail: String },
}

impl RecolorError {
    pub(crate) fn violation(step: impl Into<String>, detail: impl Into<String>) -> Self {
        RecolorError::ProofInvariantViolation { step: step.into(), detail: detail.into() }
    }
}
