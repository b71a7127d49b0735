//! Epsilon-covers, directed Hausdorff radii and the density profile of the
//! iterated closure of five convex points.
//!
//! Cover radii between exact points are decided exactly: a float pass finds
//! the candidates and exact squared distances settle the comparison. Sampled
//! float targets use plain `f64` with [`APPROX_TOLERANCE`] at the `<= eps`
//! boundary.

use rayon::prelude::*;
use serde::Serialize;

use crate::closure::{iterate, ClosureBudgets, ClosureMode, Iteration, StopReason};
use crate::error::{Error, Result};
use crate::geometry::{
    convex_hull, doubled_area, in_convex_position, rational_to_f64, ExactPoint, FPoint, Rational,
};
use crate::point_set::PointSet;

/// Relative tolerance for float cover decisions.
pub const APPROX_TOLERANCE: f64 = 1e-12;

/// Float pre-selection slack, relative to the squared coordinate scale.
const CANDIDATE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoverReport {
    pub is_cover: bool,
    /// Largest distance from a target to its nearest cover point.
    pub radius_achieved: f64,
    /// Exact square of `radius_achieved` when every target was exact.
    #[serde(serialize_with = "serialize_opt_rational")]
    pub radius_squared: Option<Rational>,
    pub worst_target: FPoint,
    pub worst_target_index: usize,
}

fn serialize_opt_rational<S: serde::Serializer>(
    r: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&crate::geometry::format_rational(r)),
        None => s.serialize_none(),
    }
}

fn scale_sq(cover: &[FPoint], targets: &[FPoint]) -> f64 {
    let m = cover
        .iter()
        .chain(targets)
        .map(|p| p.x.abs().max(p.y.abs()))
        .fold(0.0f64, f64::max);
    (m * m).max(f64::MIN_POSITIVE)
}

fn d2(a: &FPoint, b: &FPoint) -> f64 {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    dx * dx + dy * dy
}

/// Exact directed Hausdorff radius from `targets` to `cover`.
pub fn cover_radius(cover: &PointSet, targets: &[ExactPoint]) -> Result<CoverReport> {
    if cover.is_empty() {
        return Err(Error::EmptyInput("cover set"));
    }
    if targets.is_empty() {
        return Err(Error::EmptyInput("targets"));
    }
    let qf: Vec<FPoint> = cover.iter().map(ExactPoint::to_f64).collect();
    let tf: Vec<FPoint> = targets.iter().map(ExactPoint::to_f64).collect();
    let slack = CANDIDATE_SLACK * scale_sq(&qf, &tf);
    let qs = cover.as_slice();

    // Exact nearest squared distance per target.
    let nearest: Vec<(f64, Rational)> = tf
        .par_iter()
        .zip(targets.par_iter())
        .map(|(t, te)| {
            let dists: Vec<f64> = qf.iter().map(|q| d2(t, q)).collect();
            let min = dists.iter().copied().fold(f64::INFINITY, f64::min);
            let exact = dists
                .iter()
                .enumerate()
                .filter(|(_, &d)| d <= min + slack)
                .map(|(i, _)| te.dist2(&qs[i]))
                .min()
                .expect("non-empty cover");
            (min, exact)
        })
        .collect();

    let max_float = nearest.iter().map(|(f, _)| *f).fold(0.0f64, f64::max);
    let (worst_target_index, radius_squared) = nearest
        .iter()
        .enumerate()
        .filter(|(_, (f, _))| *f >= max_float - slack)
        .map(|(i, (_, e))| (i, e))
        // Largest exact value, first index among equals.
        .fold(None::<(usize, &Rational)>, |best, (i, e)| match best {
            Some((_, b)) if b >= e => best,
            _ => Some((i, e)),
        })
        .map(|(i, e)| (i, e.clone()))
        .expect("non-empty targets");
    Ok(CoverReport {
        is_cover: true,
        radius_achieved: rational_to_f64(&radius_squared).sqrt(),
        radius_squared: Some(radius_squared),
        worst_target: tf[worst_target_index],
        worst_target_index,
    })
}

/// Float directed Hausdorff radius from sampled `targets` to `cover`.
pub fn cover_radius_approx(cover: &PointSet, targets: &[FPoint]) -> Result<CoverReport> {
    if cover.is_empty() {
        return Err(Error::EmptyInput("cover set"));
    }
    if targets.is_empty() {
        return Err(Error::EmptyInput("targets"));
    }
    let qf: Vec<FPoint> = cover.iter().map(ExactPoint::to_f64).collect();
    let nearest: Vec<f64> = targets
        .par_iter()
        .map(|t| qf.iter().map(|q| d2(t, q)).fold(f64::INFINITY, f64::min))
        .collect();
    let (worst_target_index, worst) =
        nearest
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |(bi, bv), (i, &v)| {
                if v > bv {
                    (i, v)
                } else {
                    (bi, bv)
                }
            });
    Ok(CoverReport {
        is_cover: true,
        radius_achieved: worst.sqrt(),
        radius_squared: None,
        worst_target: targets[worst_target_index],
        worst_target_index,
    })
}

/// Whether every target has a cover point within closed distance `eps`,
/// with `eps` taken at its exact binary value.
pub fn is_eps_cover(cover: &PointSet, targets: &[ExactPoint], eps: f64) -> Result<CoverReport> {
    let eps = nonnegative_eps(eps)?;
    let exact = Rational::from_float(eps).expect("finite eps");
    is_eps_cover_exact(cover, targets, &exact)
}

pub fn is_eps_cover_exact(
    cover: &PointSet,
    targets: &[ExactPoint],
    eps: &Rational,
) -> Result<CoverReport> {
    if *eps < Rational::from_integer(0.into()) {
        return Err(Error::InvalidParams("eps must be non-negative".into()));
    }
    let mut report = cover_radius(cover, targets)?;
    let r2 = report.radius_squared.as_ref().expect("exact radius");
    report.is_cover = *r2 <= eps * eps;
    Ok(report)
}

pub fn is_eps_cover_approx(cover: &PointSet, targets: &[FPoint], eps: f64) -> Result<CoverReport> {
    let eps = nonnegative_eps(eps)?;
    let mut report = cover_radius_approx(cover, targets)?;
    report.is_cover = report.radius_achieved <= eps + APPROX_TOLERANCE * eps.max(1.0);
    Ok(report)
}

fn nonnegative_eps(eps: f64) -> Result<f64> {
    if !(eps >= 0.0) || !eps.is_finite() {
        return Err(Error::InvalidParams(format!(
            "eps must be finite and non-negative, got {eps}"
        )));
    }
    Ok(eps)
}

/// Convex hull of the first-round crossings of five convex points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionA {
    polygon: Vec<ExactPoint>,
}

impl RegionA {
    /// Counterclockwise vertices.
    pub fn polygon(&self) -> &[ExactPoint] {
        &self.polygon
    }

    pub fn polygon_f64(&self) -> Vec<FPoint> {
        self.polygon.iter().map(ExactPoint::to_f64).collect()
    }

    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, a) in self.polygon.iter().enumerate() {
            for b in &self.polygon[i + 1..] {
                best = best.max(a.dist(b));
            }
        }
        best
    }

    /// Closed point-in-polygon test with a relative tolerance.
    pub fn contains(&self, p: &FPoint) -> bool {
        self.edge_margins(p).all(|m| m >= -1e-9)
    }

    fn strictly_contains(&self, p: &FPoint) -> bool {
        self.edge_margins(p).all(|m| m > 1e-12)
    }

    /// Signed distance from `p` to each edge line, positive inside.
    fn edge_margins<'a>(&'a self, p: &'a FPoint) -> impl Iterator<Item = f64> + 'a {
        let v = self.polygon_f64();
        let n = v.len();
        (0..n).map(move |i| {
            let a = v[i];
            let b = v[(i + 1) % n];
            let len = a.dist(&b);
            ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)) / len
        })
    }
}

/// Region A for five points in convex position.
pub fn region_a(points: &PointSet) -> Result<RegionA> {
    if points.len() != 5 || !in_convex_position(points) {
        return Err(Error::NotFiveConvex);
    }
    let first = crate::closure::intersection_closure(points, ClosureMode::Segments);
    let crossings = first.difference(points);
    let polygon = convex_hull(&crossings);
    debug_assert!(polygon.len() >= 3 && doubled_area(&polygon) > Rational::from_integer(0.into()));
    Ok(RegionA { polygon })
}

/// Interior points of the pitch-`h` grid anchored at the bounding-box
/// corner, plus boundary points every `h` of arc length from each vertex.
pub fn sample_region(region: &RegionA, h: f64) -> Result<Vec<FPoint>> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidParams(format!(
            "grid pitch must be positive, got {h}"
        )));
    }
    let v = region.polygon_f64();
    let (xmin, xmax) = v
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.x), hi.max(p.x))
        });
    let (ymin, ymax) = v
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
            (lo.min(p.y), hi.max(p.y))
        });
    let mut out = Vec::new();
    let nx = ((xmax - xmin) / h).floor() as usize;
    let ny = ((ymax - ymin) / h).floor() as usize;
    for i in 0..=nx {
        for j in 0..=ny {
            let p = FPoint::new(xmin + i as f64 * h, ymin + j as f64 * h);
            if region.strictly_contains(&p) {
                out.push(p);
            }
        }
    }
    let n = v.len();
    for i in 0..n {
        let a = v[i];
        let b = v[(i + 1) % n];
        let len = a.dist(&b);
        let steps = (len / h).ceil() as usize;
        for s in 0..steps.max(1) {
            let t = s as f64 * h;
            if s > 0 && t >= len * (1.0 - 1e-12) {
                break;
            }
            let f = t / len;
            out.push(FPoint::new(a.x + f * (b.x - a.x), a.y + f * (b.y - a.y)));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProfileEntry {
    pub round: usize,
    pub radius: f64,
    pub points: usize,
}

#[derive(Debug, Clone)]
pub struct DensityProfile {
    pub region: RegionA,
    pub pitch: f64,
    pub samples: Vec<FPoint>,
    pub entries: Vec<ProfileEntry>,
    pub iteration: Option<Iteration>,
    /// Set when a budget cut the profile short of the requested rounds.
    pub budget_stop: Option<StopReason>,
}

/// Default sampling pitch: one fiftieth of the region's diameter.
pub fn default_pitch(region: &RegionA) -> f64 {
    region.diameter() / 50.0
}

/// Cover radius of region A's samples under `P^1 ..= P^k_max`.
pub fn density_profile(
    points: &PointSet,
    k_max: usize,
    pitch: Option<f64>,
    budgets: ClosureBudgets,
) -> Result<DensityProfile> {
    let region = region_a(points)?;
    let pitch = pitch.unwrap_or_else(|| default_pitch(&region));
    let samples = sample_region(&region, pitch)?;
    if k_max == 0 {
        return Ok(DensityProfile {
            region,
            pitch,
            samples,
            entries: Vec::new(),
            iteration: None,
            budget_stop: None,
        });
    }
    let capped = ClosureBudgets {
        max_rounds: k_max.min(budgets.max_rounds),
        ..budgets
    };
    let it = iterate(points, ClosureMode::Segments, capped);
    let mut entries = Vec::new();
    for k in 1..=k_max {
        let set = match it.rounds.get(k) {
            Some(set) => set,
            // Past a fixed point every later round is the same set.
            None if matches!(it.stop, StopReason::FixedPoint { .. }) => it.last(),
            None => break,
        };
        let r = cover_radius_approx(set, &samples)?;
        entries.push(ProfileEntry {
            round: k,
            radius: r.radius_achieved,
            points: set.len(),
        });
    }
    let budget_stop = (entries.len() < k_max).then(|| it.stop.clone());
    Ok(DensityProfile {
        region,
        pitch,
        samples,
        entries,
        iteration: Some(it),
        budget_stop,
    })
}
