//! Delaunay triangulation with exact predicates.
//!
//! A lexicographic sweep builds an initial triangulation, Lawson flips make
//! it Delaunay, and every cocircular face (triangles joined across edges
//! with a zero in-circle test) is re-triangulated as a fan from its
//! lexicographically smallest vertex. The output is therefore a function of
//! the point set alone.

use std::collections::{BTreeMap, HashMap};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, orientation, ExactPoint, Orientation, Rational};
use crate::graph::PlaneGraph;
use crate::point_set::PointSet;

/// Sign of the in-circle determinant: positive iff `d` lies strictly inside
/// the circle through the counterclockwise triangle `a, b, c`.
fn incircle(a: &ExactPoint, b: &ExactPoint, c: &ExactPoint, d: &ExactPoint) -> i8 {
    let row = |p: &ExactPoint| {
        let x = &p.x - &d.x;
        let y = &p.y - &d.y;
        let w = &x * &x + &y * &y;
        (x, y, w)
    };
    let (ax, ay, aw) = row(a);
    let (bx, by, bw) = row(b);
    let (cx, cy, cw) = row(c);
    let det: Rational = &ax * (&by * &cw - &bw * &cy) - &ay * (&bx * &cw - &bw * &cx)
        + &aw * (&bx * &cy - &by * &cx);
    if det.is_positive() {
        1
    } else if det.is_negative() {
        -1
    } else {
        0
    }
}

struct Mesh<'a> {
    pts: &'a [ExactPoint],
    tris: Vec<[usize; 3]>,
    /// Directed edge `(u, v)` to the counterclockwise triangle containing it.
    half_edges: HashMap<(usize, usize), usize>,
}

impl<'a> Mesh<'a> {
    fn new(pts: &'a [ExactPoint]) -> Self {
        Mesh {
            pts,
            tris: Vec::new(),
            half_edges: HashMap::new(),
        }
    }

    fn add(&mut self, t: [usize; 3]) {
        debug_assert_eq!(
            orientation(&self.pts[t[0]], &self.pts[t[1]], &self.pts[t[2]]),
            Orientation::CounterClockwise
        );
        let idx = self.tris.len();
        self.tris.push(t);
        self.index(idx);
    }

    fn index(&mut self, idx: usize) {
        let [a, b, c] = self.tris[idx];
        for e in [(a, b), (b, c), (c, a)] {
            self.half_edges.insert(e, idx);
        }
    }

    /// Third vertex of the triangle holding directed edge `(u, v)`.
    fn apex(&self, t: usize, u: usize, v: usize) -> usize {
        let tri = self.tris[t];
        *tri.iter().find(|&&w| w != u && w != v).expect("triangle")
    }

    /// Flips `(a, b)` if the opposite vertex lies strictly inside the
    /// circumcircle; returns the edges to recheck.
    fn try_flip(&mut self, a: usize, b: usize) -> Option<[(usize, usize); 4]> {
        let t1 = *self.half_edges.get(&(a, b))?;
        let t2 = *self.half_edges.get(&(b, a))?;
        let c = self.apex(t1, a, b);
        let d = self.apex(t2, b, a);
        let p = self.pts;
        if incircle(&p[a], &p[b], &p[c], &p[d]) <= 0 {
            return None;
        }
        self.half_edges.remove(&(a, b));
        self.half_edges.remove(&(b, a));
        self.tris[t1] = [a, d, c];
        self.tris[t2] = [d, b, c];
        self.index(t1);
        self.index(t2);
        Some([(a, d), (d, b), (b, c), (c, a)])
    }
}

/// Delaunay triangulation of `points`, vertices in the set's order.
pub fn delaunay(points: &PointSet) -> Result<PlaneGraph> {
    let pts = points.as_slice();
    let n = pts.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let first_off = (2..n)
        .find(|&k| orientation(&pts[0], &pts[1], &pts[k]) != Orientation::Collinear)
        .ok_or(Error::CollinearInput)?;

    let mut mesh = Mesh::new(pts);
    let apex = first_off;
    let left = orientation(&pts[0], &pts[1], &pts[apex]) == Orientation::CounterClockwise;
    for i in 0..apex - 1 {
        if left {
            mesh.add([i, i + 1, apex]);
        } else {
            mesh.add([i + 1, i, apex]);
        }
    }
    // Counterclockwise hull cycle.
    let mut hull: Vec<usize> = if left {
        (0..apex).chain([apex]).collect()
    } else {
        (0..apex).rev().chain([apex]).collect()
    };

    for p in apex + 1..n {
        let h = hull.len();
        let visible: Vec<bool> = (0..h)
            .map(|t| {
                orientation(&pts[hull[t]], &pts[hull[(t + 1) % h]], &pts[p])
                    == Orientation::Clockwise
            })
            .collect();
        let start = (0..h)
            .find(|&t| visible[t] && !visible[(t + h - 1) % h])
            .expect("a point beyond the hull sees at least one edge");
        hull.rotate_left(start);
        let count = visible.iter().filter(|&&v| v).count();
        for t in 0..count {
            let (u, v) = (hull[t], hull[(t + 1) % h]);
            mesh.add([v, u, p]);
        }
        hull.drain(1..count);
        hull.insert(1, p);
    }

    let mut stack: Vec<(usize, usize)> = mesh.half_edges.keys().copied().collect();
    stack.sort_unstable();
    while let Some((a, b)) = stack.pop() {
        if let Some(next) = mesh.try_flip(a, b) {
            stack.extend(next);
        }
    }

    Ok(canonical_graph(&mesh, points))
}

/// Merges triangles across cocircular edges and fans each merged face from
/// its lexicographically smallest vertex.
fn canonical_graph(mesh: &Mesh<'_>, points: &PointSet) -> PlaneGraph {
    let pts = mesh.pts;
    let nt = mesh.tris.len();
    let mut parent: Vec<usize> = (0..nt).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (&(a, b), &t1) in &mesh.half_edges {
        if a > b {
            continue;
        }
        let Some(&t2) = mesh.half_edges.get(&(b, a)) else {
            continue;
        };
        let c = mesh.apex(t1, a, b);
        let d = mesh.apex(t2, b, a);
        if incircle(&pts[a], &pts[b], &pts[c], &pts[d]) == 0 {
            let (r1, r2) = (find(&mut parent, t1), find(&mut parent, t2));
            parent[r1.max(r2)] = r1.min(r2);
        }
    }
    let mut faces: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for t in 0..nt {
        let root = find(&mut parent, t);
        faces.entry(root).or_default().extend(mesh.tris[t]);
    }

    let mut edges = Vec::new();
    for verts in faces.into_values() {
        let face = PointSet::from_points(verts.iter().map(|&v| pts[v].clone()));
        let ring: Vec<usize> = convex_hull(&face)
            .iter()
            .map(|q| pts.binary_search(q).expect("face vertex is an input point"))
            .collect();
        let k = ring.len();
        for i in 0..k {
            edges.push((ring[i], ring[(i + 1) % k]));
        }
        for i in 2..k.saturating_sub(1) {
            edges.push((ring[0], ring[i]));
        }
    }
    PlaneGraph::new(points.as_slice().to_vec(), edges).expect("indices from the mesh")
}
