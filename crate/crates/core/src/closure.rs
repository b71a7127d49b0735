//! Complete intersection sets and their iterates.
//!
//! One round adds every point where two non-parallel segments (or lines)
//! spanned by pairs of the current points meet. Iteration runs until a fixed
//! point or until one of the [`ClosureBudgets`] caps is hit; the iterates
//! are infinite in general, so a budget stop is an ordinary outcome.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{rational_to_f64_bounded, ExactPoint, Homog, Line};
use crate::point_set::PointSet;

/// Segment count above which supporting lines are recomputed per pair
/// instead of cached.
const LINE_CACHE_LIMIT: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureMode {
    /// Crossings of segments between pairs of points.
    #[default]
    Segments,
    /// Crossings of the infinite lines through pairs of points.
    Lines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClosureBudgets {
    pub max_points: usize,
    pub max_rounds: usize,
    pub max_coordinate_bits: u64,
}

impl ClosureBudgets {
    pub fn new(max_points: usize, max_rounds: usize, max_coordinate_bits: u64) -> Result<Self> {
        if max_points == 0 || max_rounds == 0 || max_coordinate_bits == 0 {
            return Err(Error::InvalidParams(
                "closure budgets must be strictly positive".into(),
            ));
        }
        Ok(ClosureBudgets {
            max_points,
            max_rounds,
            max_coordinate_bits,
        })
    }
}

impl Default for ClosureBudgets {
    fn default() -> Self {
        ClosureBudgets {
            max_points: 100_000,
            max_rounds: 6,
            max_coordinate_bits: 4096,
        }
    }
}

/// Where pair enumeration runs. The result never depends on this.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    Sequential,
    /// A dedicated pool with this many worker threads.
    Threads(usize),
    /// The global rayon pool.
    #[default]
    Global,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StopReason {
    /// `P^round` equals its own closure; confirmed while computing round + 1.
    FixedPoint {
        round: usize,
    },
    MaxRounds,
    /// Computing `attempted_round` would exceed the point cap.
    MaxPoints {
        attempted_round: usize,
    },
    /// `attempted_round` needs coordinates of `bits` bits.
    MaxCoordinateBits {
        attempted_round: usize,
        bits: u64,
    },
}

impl StopReason {
    pub fn label(&self) -> &'static str {
        match self {
            StopReason::FixedPoint { .. } => "fixed_point",
            StopReason::MaxRounds => "max_rounds",
            StopReason::MaxPoints { .. } => "max_points",
            StopReason::MaxCoordinateBits { .. } => "max_coordinate_bits",
        }
    }
}

/// `[P^0, ..., P^m]`, pairwise distinct, and why iteration stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Iteration {
    pub rounds: Vec<PointSet>,
    pub stop: StopReason,
}

impl Iteration {
    pub fn last(&self) -> &PointSet {
        self.rounds.last().expect("iteration always holds P^0")
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.rounds.iter().map(PointSet::len).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StabilityVerdict {
    Stable,
    StabilizesAtRound { round: usize, fixed_point: PointSet },
    BudgetExceeded { last_round: usize, last_size: usize },
}

/// One round: `P` together with every crossing point of its segments
/// (or lines, per `mode`).
pub fn intersection_closure(points: &PointSet, mode: ClosureMode) -> PointSet {
    intersection_closure_with(points, mode, Parallelism::default())
}

pub fn intersection_closure_with(
    points: &PointSet,
    mode: ClosureMode,
    parallelism: Parallelism,
) -> PointSet {
    closure_round(points, mode, parallelism, usize::MAX).expect("uncapped round always completes")
}

pub fn iterate(points: &PointSet, mode: ClosureMode, budgets: ClosureBudgets) -> Iteration {
    iterate_with(points, mode, budgets, Parallelism::default())
}

pub fn iterate_with(
    points: &PointSet,
    mode: ClosureMode,
    budgets: ClosureBudgets,
    parallelism: Parallelism,
) -> Iteration {
    let mut rounds = vec![points.clone()];
    let stop = loop {
        let attempted_round = rounds.len();
        if attempted_round > budgets.max_rounds {
            break StopReason::MaxRounds;
        }
        let prev = rounds.last().expect("non-empty");
        let Some(next) = closure_round(prev, mode, parallelism, budgets.max_points) else {
            break StopReason::MaxPoints { attempted_round };
        };
        if next.len() == prev.len() {
            break StopReason::FixedPoint {
                round: attempted_round - 1,
            };
        }
        let bits = next.max_coordinate_bits();
        if bits > budgets.max_coordinate_bits {
            break StopReason::MaxCoordinateBits {
                attempted_round,
                bits,
            };
        }
        rounds.push(next);
    };
    Iteration { rounds, stop }
}

/// Segment-mode stability verdict.
pub fn classify_stability(points: &PointSet, budgets: ClosureBudgets) -> StabilityVerdict {
    classify_stability_in(points, ClosureMode::Segments, budgets)
}

pub fn classify_stability_in(
    points: &PointSet,
    mode: ClosureMode,
    budgets: ClosureBudgets,
) -> StabilityVerdict {
    let it = iterate(points, mode, budgets);
    match it.stop {
        StopReason::FixedPoint { round: 0 } => StabilityVerdict::Stable,
        StopReason::FixedPoint { round } => StabilityVerdict::StabilizesAtRound {
            round,
            fixed_point: it.rounds[round].clone(),
        },
        _ => StabilityVerdict::BudgetExceeded {
            last_round: it.rounds.len() - 1,
            last_size: it.last().len(),
        },
    }
}

struct RoundCtx<'a> {
    points: &'a PointSet,
    homog: Vec<Homog>,
    /// Float coordinates with small relative error, where representable.
    approx: Vec<Option<(f64, f64)>>,
    lines: Option<Vec<Line>>,
    mode: ClosureMode,
    cap: usize,
    exceeded: AtomicBool,
}

impl RoundCtx<'_> {
    fn seg_index(&self, i: usize, j: usize) -> usize {
        let n = self.homog.len();
        i * n - i * (i + 1) / 2 + (j - i - 1)
    }

    fn line(&self, i: usize, j: usize) -> std::borrow::Cow<'_, Line> {
        match &self.lines {
            Some(lines) => std::borrow::Cow::Borrowed(&lines[self.seg_index(i, j)]),
            None => std::borrow::Cow::Owned(Line::through(&self.homog[i], &self.homog[j])),
        }
    }

    /// Orientation sign of `(i, j, k)` when the float evaluation is
    /// unambiguous. The bound is far above the accumulated rounding error.
    fn orient_hint(&self, i: usize, j: usize, k: usize) -> Option<i8> {
        let (ax, ay) = self.approx[i]?;
        let (bx, by) = self.approx[j]?;
        let (cx, cy) = self.approx[k]?;
        let det = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
        let perm = (ax.abs() + bx.abs()) * (ay.abs() + cy.abs())
            + (ay.abs() + by.abs()) * (ax.abs() + cx.abs());
        if !det.is_finite() || !perm.is_finite() || perm < 1e-250 {
            return None;
        }
        if det.abs() > 1e-12 * perm {
            Some(if det > 0.0 { 1 } else { -1 })
        } else {
            None
        }
    }

    fn over_cap(&self, acc: &BTreeSet<ExactPoint>) -> bool {
        self.points.len().saturating_add(acc.len()) > self.cap
    }

    /// Records a crossing; `false` once the cap is hit.
    fn record(&self, x: ExactPoint, acc: &mut BTreeSet<ExactPoint>) -> bool {
        if !self.points.contains(&x) && acc.insert(x) && self.over_cap(acc) {
            self.exceeded.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    /// All crossings of segments `(i, j)`, `j > i`, with later segments.
    fn scan_from(&self, i: usize, acc: &mut BTreeSet<ExactPoint>) {
        match self.mode {
            ClosureMode::Segments => self.scan_segments_from(i, acc),
            ClosureMode::Lines => self.scan_lines_from(i, acc),
        }
    }

    fn scan_lines_from(&self, i: usize, acc: &mut BTreeSet<ExactPoint>) {
        let n = self.homog.len();
        for j in i + 1..n {
            let l1 = self.line(i, j);
            // Later pairs (k, m) sharing no endpoint with (i, j); lines
            // through a shared endpoint only meet in P.
            for k in (i + 1..n).filter(|&k| k != j) {
                if self.exceeded.load(Ordering::Relaxed) {
                    return;
                }
                for m in (k + 1..n).filter(|&m| m != j) {
                    if let Some(x) = l1.meet(&self.line(k, m)) {
                        if !self.record(x, acc) {
                            return;
                        }
                    }
                }
            }
        }
    }

    /// Only proper crossings can be new: a segment touching the line of
    /// `(i, j)` meets it at a point of P or not at all. So each later
    /// segment must have one endpoint strictly on either side.
    fn scan_segments_from(&self, i: usize, acc: &mut BTreeSet<ExactPoint>) {
        let n = self.homog.len();
        let h = &self.homog;
        let mut left = Vec::new();
        let mut right = Vec::new();
        for j in i + 1..n {
            if self.exceeded.load(Ordering::Relaxed) {
                return;
            }
            let l1 = self.line(i, j);
            left.clear();
            right.clear();
            for k in (i + 1..n).filter(|&k| k != j) {
                match self.orient_hint(i, j, k).unwrap_or_else(|| l1.side(&h[k])) {
                    1 => left.push(k),
                    -1 => right.push(k),
                    _ => {}
                }
            }
            for &k in &left {
                if self.exceeded.load(Ordering::Relaxed) {
                    return;
                }
                for &m in &right {
                    let (k, m) = if k < m { (k, m) } else { (m, k) };
                    let side_i = self.orient_hint(k, m, i);
                    let side_j = self.orient_hint(k, m, j);
                    if let (Some(si), Some(sj)) = (side_i, side_j) {
                        if si * sj >= 0 {
                            continue;
                        }
                    }
                    let l2 = self.line(k, m);
                    let si = side_i.unwrap_or_else(|| l2.side(&h[i]));
                    let sj = side_j.unwrap_or_else(|| l2.side(&h[j]));
                    if si * sj >= 0 {
                        continue;
                    }
                    if let Some(x) = l1.meet(&l2) {
                        if !self.record(x, acc) {
                            return;
                        }
                    }
                }
            }
        }
    }
}

/// `None` when the closed set would exceed `cap` points.
fn closure_round(
    points: &PointSet,
    mode: ClosureMode,
    parallelism: Parallelism,
    cap: usize,
) -> Option<PointSet> {
    let homog: Vec<Homog> = points.iter().map(Homog::from_point).collect();
    let approx = points
        .iter()
        .map(|p| {
            Some((
                rational_to_f64_bounded(&p.x)?,
                rational_to_f64_bounded(&p.y)?,
            ))
        })
        .collect();
    let n = homog.len();
    let n_segments = n * n.saturating_sub(1) / 2;
    let lines = (n_segments <= LINE_CACHE_LIMIT).then(|| {
        let mut v = Vec::with_capacity(n_segments);
        for i in 0..n {
            for j in i + 1..n {
                v.push(Line::through(&homog[i], &homog[j]));
            }
        }
        v
    });
    let ctx = RoundCtx {
        points,
        approx,
        homog,
        lines,
        mode,
        cap,
        exceeded: AtomicBool::new(false),
    };

    let run_parallel = || {
        (0..n)
            .into_par_iter()
            .with_max_len(1)
            .fold(BTreeSet::new, |mut acc, i| {
                ctx.scan_from(i, &mut acc);
                acc
            })
            .reduce(BTreeSet::new, |mut a, mut b| {
                if a.len() < b.len() {
                    std::mem::swap(&mut a, &mut b);
                }
                a.extend(b);
                a
            })
    };
    let crossings = match parallelism {
        Parallelism::Sequential => {
            let mut acc = BTreeSet::new();
            for i in 0..n {
                ctx.scan_from(i, &mut acc);
            }
            acc
        }
        Parallelism::Global => run_parallel(),
        Parallelism::Threads(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .expect("thread pool")
            .install(run_parallel),
    };
    if ctx.exceeded.load(Ordering::Relaxed) || ctx.over_cap(&crossings) {
        return None;
    }
    let mut all = crossings;
    all.extend(points.iter().cloned());
    Some(PointSet::from_sorted_set(all))
}
