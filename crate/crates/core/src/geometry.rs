//! Exact rational points, segments and the predicates built on them.
//!
//! Coordinates are arbitrary-precision rationals kept in lowest terms, so two
//! crossing points coincide exactly when their coordinates compare equal.
//! The hot loops (closure rounds, convex-position search) use a homogeneous
//! integer form instead, which avoids a gcd per arithmetic step.

use std::borrow::Borrow;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::point_set::PointSet;

/// Arbitrary-precision rational in canonical form (positive denominator,
/// coprime numerator and denominator).
pub type Rational = BigRational;

/// Sign of a turn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn as_sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    fn from_sign(s: &BigInt) -> Self {
        if s.is_positive() {
            Orientation::CounterClockwise
        } else if s.is_negative() {
            Orientation::Clockwise
        } else {
            Orientation::Collinear
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactPoint {
    pub x: Rational,
    pub y: Rational,
}

impl ExactPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        ExactPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        ExactPoint::new(
            Rational::from_integer(x.into()),
            Rational::from_integer(y.into()),
        )
    }

    /// Point with coordinates `xn/xd`, `yn/yd`.
    ///
    /// Panics if a denominator is zero.
    pub fn from_fractions(xn: i64, xd: i64, yn: i64, yd: i64) -> Self {
        ExactPoint::new(
            Rational::new(xn.into(), xd.into()),
            Rational::new(yn.into(), yd.into()),
        )
    }

    /// Exact binary value of two finite floats.
    pub fn from_f64(x: f64, y: f64) -> Option<Self> {
        Some(ExactPoint::new(
            Rational::from_float(x)?,
            Rational::from_float(y)?,
        ))
    }

    pub fn to_f64(&self) -> FPoint {
        FPoint::new(rational_to_f64(&self.x), rational_to_f64(&self.y))
    }

    pub fn dist2(&self, other: &ExactPoint) -> Rational {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }

    /// Euclidean distance, rounded once from the exact squared distance.
    pub fn dist(&self, other: &ExactPoint) -> f64 {
        rational_to_f64(&self.dist2(other)).sqrt()
    }

    /// Largest bit length over both numerators and denominators.
    pub fn coordinate_bits(&self) -> u64 {
        [
            self.x.numer().bits(),
            self.x.denom().bits(),
            self.y.numer().bits(),
            self.y.denom().bits(),
        ]
        .into_iter()
        .max()
        .unwrap_or(0)
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Floating-point point, used for sampled targets and rendering.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FPoint {
    pub x: f64,
    pub y: f64,
}

impl FPoint {
    pub fn new(x: f64, y: f64) -> Self {
        FPoint { x, y }
    }

    pub fn dist(&self, other: &FPoint) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// `r` as `q * 2^e` with `q` a quotient of two 64-bit-truncated parts, so
/// `q` is off by at most a few ulps whatever the operand sizes.
fn split_f64(r: &Rational) -> (f64, i64) {
    let top = |v: &BigInt| {
        let shift = v.bits().saturating_sub(64);
        ((v >> shift).to_f64().expect("64-bit value"), shift as i64)
    };
    let (n, ns) = top(r.numer());
    let (d, ds) = top(r.denom());
    (n / d, ns - ds)
}

/// Nearest-ish `f64`; saturates to infinity or zero out of range.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let (q, e) = split_f64(r);
    let e = e.clamp(-2200, 2200) as i32;
    // Two steps so neither power of two leaves the f64 range on its own.
    q * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
}

/// `r` within a few ulps of relative error, or `None` when the value is
/// not a normal float (so that error bound would not hold).
pub(crate) fn rational_to_f64_bounded(r: &Rational) -> Option<f64> {
    if r.is_zero() {
        return Some(0.0);
    }
    let (_, e) = split_f64(r);
    if e.abs() > 900 {
        return None;
    }
    let v = rational_to_f64(r);
    v.is_normal().then_some(v)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    a: ExactPoint,
    b: ExactPoint,
}

impl Segment {
    /// Returns `None` for coincident endpoints.
    pub fn new(a: ExactPoint, b: ExactPoint) -> Option<Self> {
        (a != b).then_some(Segment { a, b })
    }

    pub fn endpoint_a(&self) -> &ExactPoint {
        &self.a
    }

    pub fn endpoint_b(&self) -> &ExactPoint {
        &self.b
    }

    /// Whether `p` lies on the closed segment.
    pub fn contains(&self, p: &ExactPoint) -> bool {
        orientation(&self.a, &self.b, p) == Orientation::Collinear && in_box(&self.a, &self.b, p)
    }
}

fn in_box(a: &ExactPoint, b: &ExactPoint, p: &ExactPoint) -> bool {
    let (x0, x1) = if a.x <= b.x {
        (&a.x, &b.x)
    } else {
        (&b.x, &a.x)
    };
    let (y0, y1) = if a.y <= b.y {
        (&a.y, &b.y)
    } else {
        (&b.y, &a.y)
    };
    x0 <= &p.x && &p.x <= x1 && y0 <= &p.y && &p.y <= y1
}

/// Sign of `(q - p) x (r - p)`.
pub fn orientation(p: &ExactPoint, q: &ExactPoint, r: &ExactPoint) -> Orientation {
    let cross = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
    Orientation::from_sign(cross.numer())
}

/// The single common point of two closed, non-parallel segments.
///
/// Parallel pairs, including collinear overlapping ones, yield `None`.
pub fn segment_intersection(s1: &Segment, s2: &Segment) -> Option<ExactPoint> {
    let a = Homog::from_point(&s1.a);
    let b = Homog::from_point(&s1.b);
    let c = Homog::from_point(&s2.a);
    let d = Homog::from_point(&s2.b);
    let l1 = Line::through(&a, &b);
    if l1.side(&c) * l1.side(&d) > 0 {
        return None;
    }
    let l2 = Line::through(&c, &d);
    if l2.side(&a) * l2.side(&b) > 0 {
        return None;
    }
    l1.meet(&l2)
}

/// Point `(x/w, y/w)` with integer coordinates and `w > 0`.
#[derive(Debug, Clone)]
pub(crate) struct Homog {
    x: BigInt,
    y: BigInt,
    w: BigInt,
}

impl Homog {
    pub(crate) fn from_point(p: &ExactPoint) -> Self {
        let w = p.x.denom().lcm(p.y.denom());
        let x = p.x.numer() * (&w / p.x.denom());
        let y = p.y.numer() * (&w / p.y.denom());
        Homog { x, y, w }
    }
}

/// Homogeneous line `a*x + b*y + c*w = 0`.
#[derive(Debug, Clone)]
pub(crate) struct Line {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

impl Line {
    /// Line through two homogeneous points, oriented so that `side` agrees
    /// with `orientation(p, q, r)`.
    pub(crate) fn through(p: &Homog, q: &Homog) -> Self {
        Line {
            a: &p.y * &q.w - &p.w * &q.y,
            b: &p.w * &q.x - &p.x * &q.w,
            c: &p.x * &q.y - &p.y * &q.x,
        }
    }

    /// Orientation sign of `r` relative to the directed line.
    pub(crate) fn side(&self, r: &Homog) -> i8 {
        let v = &self.a * &r.x + &self.b * &r.y + &self.c * &r.w;
        Orientation::from_sign(&v).as_sign()
    }

    /// Common point of two lines, `None` when parallel or coincident.
    pub(crate) fn meet(&self, other: &Line) -> Option<ExactPoint> {
        let w = &self.a * &other.b - &self.b * &other.a;
        if w.is_zero() {
            return None;
        }
        let x = &self.b * &other.c - &self.c * &other.b;
        let y = &self.c * &other.a - &self.a * &other.c;
        Some(ExactPoint::new(
            Rational::new(x, w.clone()),
            Rational::new(y, w),
        ))
    }
}

fn homog_orient(p: &Homog, q: &Homog, r: &Homog) -> i8 {
    Line::through(p, q).side(r)
}

/// Hull vertices in counterclockwise order starting from the
/// lexicographically smallest point, with collinear boundary points dropped.
///
/// Collinear input yields its two extreme points; a singleton yields itself.
pub fn convex_hull(points: &PointSet) -> Vec<ExactPoint> {
    let homog: Vec<Homog> = points.iter().map(Homog::from_point).collect();
    hull_indices(&homog)
        .into_iter()
        .map(|i| points.as_slice()[i].clone())
        .collect()
}

/// Andrew's monotone chain over points already in lexicographic order.
fn hull_indices<H: Borrow<Homog>>(pts: &[H]) -> Vec<usize> {
    let pts: Vec<&Homog> = pts.iter().map(Borrow::borrow).collect();
    let n = pts.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * n);
    for i in 0..n {
        while hull.len() >= 2
            && homog_orient(pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]], pts[i]) <= 0
        {
            hull.pop();
        }
        hull.push(i);
    }
    let lower_len = hull.len() + 1;
    for i in (0..n - 1).rev() {
        while hull.len() >= lower_len
            && homog_orient(pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]], pts[i]) <= 0
        {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    if hull.len() == 2 && hull[0] == hull[1] {
        hull.truncate(1);
    }
    hull
}

/// Twice the signed area of a polygon.
pub fn doubled_area(polygon: &[ExactPoint]) -> Rational {
    let n = polygon.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        let p = &polygon[i];
        let q = &polygon[(i + 1) % n];
        acc += &p.x * &q.y - &q.x * &p.y;
    }
    acc
}

/// True iff every point is a strict vertex of the convex hull.
pub fn in_convex_position(points: &PointSet) -> bool {
    convex_hull(points).len() == points.len()
}

/// Cap on the number of 5-subsets `contains_five_convex` may examine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiveConvexBudget {
    pub max_subsets: u64,
}

impl Default for FiveConvexBudget {
    /// Exhaustive search over 60 points, C(60, 5) subsets.
    fn default() -> Self {
        FiveConvexBudget {
            max_subsets: 5_461_512,
        }
    }
}

/// Some 5-subset in convex position, or `None` if there is none.
///
/// Hull vertices are tried first; otherwise 5-subsets are enumerated in
/// lexicographic index order and the first hit is returned.
pub fn contains_five_convex(
    points: &PointSet,
    budget: FiveConvexBudget,
) -> Result<Option<PointSet>> {
    let n = points.len();
    if n < 5 {
        return Ok(None);
    }
    let hull = convex_hull(points);
    if hull.len() >= 5 {
        return Ok(Some(PointSet::from_points(hull.into_iter().take(5))));
    }
    let homog: Vec<Homog> = points.iter().map(Homog::from_point).collect();
    let mut examined: u64 = 0;
    let mut idx = [0usize, 1, 2, 3, 4];
    loop {
        if examined >= budget.max_subsets {
            return Err(Error::SearchBudget {
                examined,
                points: n,
            });
        }
        examined += 1;
        // Increasing indices keep the subset in lexicographic order.
        let sub: Vec<&Homog> = idx.iter().map(|&i| &homog[i]).collect();
        if hull_indices(&sub).len() == 5 {
            let slice = points.as_slice();
            return Ok(Some(PointSet::from_points(
                idx.iter().map(|&i| slice[i].clone()),
            )));
        }
        if !next_combination(&mut idx, n) {
            return Ok(None);
        }
    }
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Parses a decimal literal (`-1.25`, `3`, `.5`) or a fraction (`p/q`)
/// into an exact rational.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in {s:?}"))?;
        let q: BigInt = q
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in {s:?}"))?;
        if q.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        return Ok(Rational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(format!("not a number: {s:?}"));
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| format!("not a number: {s:?}"))?
    };
    let denom = num_traits::pow(BigInt::from(10u8), frac_part.len());
    let r = Rational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

/// `p/q`, or `p` for integers; re-parses to the same value.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
