//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use dilagap::{ExactPoint, PlaneGraph, PointSet, Rational};
use num_traits::{One, Zero};
use rand::Rng;

fn between01(t: &Rational) -> bool {
    *t >= Rational::zero() && *t <= Rational::one()
}

/// Crossing of `a + t(b - a)` and `c + u(d - c)` by Cramer's rule;
/// `bounded` restricts both parameters to `[0, 1]`.
pub fn crossing(
    a: &ExactPoint,
    b: &ExactPoint,
    c: &ExactPoint,
    d: &ExactPoint,
    bounded: bool,
) -> Option<ExactPoint> {
    let (rx, ry) = (&b.x - &a.x, &b.y - &a.y);
    let (sx, sy) = (&d.x - &c.x, &d.y - &c.y);
    let den = &rx * &sy - &ry * &sx;
    if den.is_zero() {
        return None;
    }
    let (qx, qy) = (&c.x - &a.x, &c.y - &a.y);
    let t = (&qx * &sy - &qy * &sx) / &den;
    let u = (&qx * &ry - &qy * &rx) / &den;
    if bounded && !(between01(&t) && between01(&u)) {
        return None;
    }
    Some(ExactPoint::new(&a.x + &t * &rx, &a.y + &t * &ry))
}

/// Quadruple loop over all pairs of point pairs.
pub fn brute_closure(points: &PointSet, lines: bool) -> PointSet {
    let p = points.as_slice();
    let n = p.len();
    let mut out: BTreeSet<ExactPoint> = p.iter().cloned().collect();
    for i in 0..n {
        for j in i + 1..n {
            for k in 0..n {
                for m in k + 1..n {
                    if (i, j) >= (k, m) {
                        continue;
                    }
                    if let Some(x) = crossing(&p[i], &p[j], &p[k], &p[m], !lines) {
                        out.insert(x);
                    }
                }
            }
        }
    }
    PointSet::from_points(out)
}

/// All-pairs shortest paths by Floyd-Warshall; `None` if disconnected.
pub fn floyd_dilation(g: &PlaneGraph) -> Option<f64> {
    let v = g.vertices();
    let n = v.len();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for (a, b) in g.edges() {
        let w = v[a].dist(&v[b]);
        d[a][b] = w;
        d[b][a] = w;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let mut worst = 1.0f64;
    for i in 0..n {
        for j in i + 1..n {
            if d[i][j].is_infinite() {
                return None;
            }
            worst = worst.max(d[i][j] / v[i].dist(&v[j]));
        }
    }
    Some(worst)
}

/// Points on a small integer grid, so collinear triples and shared
/// crossings are common.
pub fn grid_points<R: Rng>(rng: &mut R, n: usize, side: i64) -> PointSet {
    PointSet::from_points(
        (0..n).map(|_| ExactPoint::from_ints(rng.gen_range(0..side), rng.gen_range(0..side))),
    )
}

/// Points with coordinates `k / 10^6`, generic with overwhelming probability.
pub fn fine_points<R: Rng>(rng: &mut R, n: usize) -> PointSet {
    let den = 1_000_000;
    let mut set = PointSet::new();
    while set.len() < n {
        let extra = (0..n - set.len()).map(|_| {
            ExactPoint::from_fractions(rng.gen_range(0..den), den, rng.gen_range(0..den), den)
        });
        set = set.union(&PointSet::from_points(extra));
    }
    set
}
