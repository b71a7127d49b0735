use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::ExactPoint;
use crate::graph::{PlaneGraph, ShortestPathTree};

/// Absolute slack allowed on the focal-sum ratio.
pub const FOCAL_TOLERANCE: f64 = 1e-9;

/// Minor-axis width `|pq| * sqrt(delta^2 - 1)` of the ellipse with foci
/// `p, q` and focal sum `delta * |pq|`.
pub fn ellipse_width(p: &ExactPoint, q: &ExactPoint, delta: f64) -> Result<f64> {
    if !(delta >= 1.0) || !delta.is_finite() {
        return Err(Error::InvalidDilation(delta));
    }
    Ok(p.dist(q) * ((delta - 1.0) * (delta + 1.0)).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EllipseViolation {
    pub p: usize,
    pub q: usize,
    pub t: usize,
    /// `(|pt| + |tq|) / |pq|`.
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EllipseReport {
    pub delta: f64,
    pub pairs_checked: usize,
    pub vertices_checked: usize,
    /// Smallest `delta - (|pt| + |tq|) / |pq|` seen.
    pub worst_slack: f64,
    pub worst: Option<EllipseViolation>,
    pub violations: Vec<EllipseViolation>,
}

impl EllipseReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every vertex on every chosen shortest path lies inside the
/// ellipse with the pair as foci and focal sum `delta * |pq|`.
pub fn check_paths_in_ellipses(g: &PlaneGraph, delta: f64) -> Result<EllipseReport> {
    if !(delta >= 1.0) || !delta.is_finite() {
        return Err(Error::InvalidDilation(delta));
    }
    let n = g.vertices().len();
    let adj = g.adjacency();
    let v = g.vertices();
    let mut report = EllipseReport {
        delta,
        pairs_checked: 0,
        vertices_checked: 0,
        worst_slack: f64::INFINITY,
        worst: None,
        violations: Vec::new(),
    };
    for p in 0..n {
        let tree = ShortestPathTree::build(&adj, p);
        for q in p + 1..n {
            let path = tree
                .path(q)
                .ok_or(Error::DisconnectedGraph { from: p, to: q })?;
            let pq = v[p].dist(&v[q]);
            report.pairs_checked += 1;
            for &t in &path {
                let ratio = (v[p].dist(&v[t]) + v[t].dist(&v[q])) / pq;
                let slack = delta - ratio;
                let entry = EllipseViolation { p, q, t, ratio };
                report.vertices_checked += 1;
                if slack < report.worst_slack {
                    report.worst_slack = slack;
                    report.worst = Some(entry);
                }
                if ratio > delta + FOCAL_TOLERANCE {
                    report.violations.push(entry);
                }
            }
        }
    }
    Ok(report)
}
