//! Iterated crossing closures of planar point sets, dilation of plane
//! straight-line graphs, epsilon-cover metrics and a numeric checker for the
//! square-boundary dilation-gap certificate.

// NaN-rejecting guards are written as negated comparisons.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certificate;
pub mod cli;
pub mod closure;
pub mod cover;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod io;
pub mod point_set;
pub mod svg;

pub use closure::{
    classify_stability, intersection_closure, iterate, ClosureBudgets, ClosureMode, Iteration,
    Parallelism, StabilityVerdict, StopReason,
};
pub use error::{Error, Result};
pub use geometry::{
    convex_hull, in_convex_position, orientation, segment_intersection, ExactPoint, FPoint,
    Orientation, Rational, Segment,
};
pub use graph::PlaneGraph;
pub use point_set::PointSet;
