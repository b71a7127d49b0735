//! Straight-line plane graphs over exact vertices.
//!
//! Coordinates stay exact; edge lengths, path lengths and dilation are `f64`
//! because distances are irrational in general.

mod delaunay;
mod ellipse;

use std::cmp::Ordering;
use std::collections::{BTreeSet, BinaryHeap};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{convex_hull, orientation, ExactPoint, Segment};
use crate::point_set::PointSet;

pub use delaunay::delaunay;
pub use ellipse::{
    check_paths_in_ellipses, ellipse_width, EllipseReport, EllipseViolation, FOCAL_TOLERANCE,
};

/// Relative tolerance under which two path lengths count as equal.
pub const LENGTH_TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    vertices: Vec<ExactPoint>,
    edges: BTreeSet<(usize, usize)>,
}

impl PlaneGraph {
    /// Edges are unordered; `(u, v)` and `(v, u)` collapse to one edge.
    pub fn new<I>(vertices: Vec<ExactPoint>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let distinct: BTreeSet<&ExactPoint> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::InvalidParams("duplicate vertex coordinates".into()));
        }
        let mut g = PlaneGraph {
            vertices,
            edges: BTreeSet::new(),
        };
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        let len = self.vertices.len();
        for index in [u, v] {
            if index >= len {
                return Err(Error::InvalidVertex { index, len });
            }
        }
        if u == v {
            return Err(Error::InvalidParams(format!("self-loop at vertex {u}")));
        }
        Ok(self.edges.insert((u.min(v), u.max(v))))
    }

    pub fn vertices(&self) -> &[ExactPoint] {
        &self.vertices
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    fn segment(&self, (u, v): (usize, usize)) -> Segment {
        Segment::new(self.vertices[u].clone(), self.vertices[v].clone())
            .expect("vertices are distinct")
    }

    fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for &(u, v) in &self.edges {
            let w = self.vertices[u].dist(&self.vertices[v]);
            adj[u].push((v, w));
            adj[v].push((u, w));
        }
        for list in &mut adj {
            list.sort_by_key(|&(v, _)| v);
        }
        adj
    }

    fn check_vertex(&self, index: usize) -> Result<()> {
        if index >= self.vertices.len() {
            return Err(Error::InvalidVertex {
                index,
                len: self.vertices.len(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PlanarityViolation {
    /// Two edges share a point other than a common endpoint.
    EdgeCrossing {
        first: (usize, usize),
        second: (usize, usize),
    },
    /// A vertex lies in the relative interior of an edge.
    VertexOnEdge { vertex: usize, edge: (usize, usize) },
}

/// Every pair of edges (and vertex/edge pair) that breaks the straight-line
/// plane embedding. Empty iff the graph is plane.
pub fn validate_plane(g: &PlaneGraph) -> Vec<PlanarityViolation> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut out = Vec::new();
    for (i, &e1) in edges.iter().enumerate() {
        let s1 = g.segment(e1);
        for &e2 in &edges[i + 1..] {
            let s2 = g.segment(e2);
            if edges_conflict(e1, &s1, e2, &s2) {
                out.push(PlanarityViolation::EdgeCrossing {
                    first: e1,
                    second: e2,
                });
            }
        }
        for (vertex, p) in g.vertices.iter().enumerate() {
            if vertex != e1.0 && vertex != e1.1 && s1.contains(p) {
                out.push(PlanarityViolation::VertexOnEdge { vertex, edge: e1 });
            }
        }
    }
    out
}

fn edges_conflict(e1: (usize, usize), s1: &Segment, e2: (usize, usize), s2: &Segment) -> bool {
    let shared = [e1.0, e1.1].into_iter().find(|v| *v == e2.0 || *v == e2.1);
    let Some(shared) = shared else {
        return segments_touch(s1, s2);
    };
    // Sharing an endpoint is fine unless the edges overlap along a line.
    let far = |e: (usize, usize), s: &Segment| {
        if e.0 == shared {
            s.endpoint_b().clone()
        } else {
            s.endpoint_a().clone()
        }
    };
    let (x, y) = (far(e1, s1), far(e2, s2));
    s1.contains(&y) || s2.contains(&x)
}

/// Whether two closed segments share any point, collinear overlaps included.
fn segments_touch(s1: &Segment, s2: &Segment) -> bool {
    let (a, b) = (s1.endpoint_a(), s1.endpoint_b());
    let (c, d) = (s2.endpoint_a(), s2.endpoint_b());
    let o1 = orientation(a, b, c).as_sign();
    let o2 = orientation(a, b, d).as_sign();
    let o3 = orientation(c, d, a).as_sign();
    let o4 = orientation(c, d, b).as_sign();
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && s1.contains(c))
        || (o2 == 0 && s1.contains(d))
        || (o3 == 0 && s2.contains(a))
        || (o4 == 0 && s2.contains(b))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphPath {
    pub vertex_indices: Vec<usize>,
    pub length: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DilationReport {
    pub dilation: f64,
    /// Vertex pair `(u, v)`, `u < v`, attaining the maximum.
    pub witness_pair: (usize, usize),
    pub path_length: f64,
    pub distance: f64,
}

#[derive(Clone, Copy, PartialEq)]
struct HeapEntry {
    dist: f64,
    vertex: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn nearly_equal(a: f64, b: f64) -> bool {
    (a - b).abs() <= LENGTH_TIE_TOLERANCE * a.abs().max(b.abs())
}

/// Single-source shortest-path tree. Among equally short paths, each
/// vertex's predecessor chain is the lexicographically smallest index
/// sequence from the source.
pub(crate) struct ShortestPathTree {
    pub(crate) dist: Vec<f64>,
    pub(crate) pred: Vec<Option<usize>>,
    source: usize,
}

impl ShortestPathTree {
    pub(crate) fn build(adj: &[Vec<(usize, f64)>], source: usize) -> Self {
        let n = adj.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut pred = vec![None; n];
        let mut done = vec![false; n];
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(HeapEntry {
            dist: 0.0,
            vertex: source,
        });
        while let Some(HeapEntry { vertex: u, .. }) = heap.pop() {
            if done[u] {
                continue;
            }
            done[u] = true;
            for &(v, w) in &adj[u] {
                if done[v] {
                    continue;
                }
                let nd = dist[u] + w;
                if dist[v].is_finite() && nearly_equal(nd, dist[v]) {
                    let mut via_u = chain(&pred, u);
                    via_u.push(v);
                    if via_u < chain(&pred, v) {
                        pred[v] = Some(u);
                        dist[v] = dist[v].min(nd);
                    }
                } else if nd < dist[v] {
                    dist[v] = nd;
                    pred[v] = Some(u);
                    heap.push(HeapEntry {
                        dist: nd,
                        vertex: v,
                    });
                }
            }
        }
        ShortestPathTree { dist, pred, source }
    }

    pub(crate) fn path(&self, target: usize) -> Option<Vec<usize>> {
        if !self.dist[target].is_finite() {
            return None;
        }
        let path = chain(&self.pred, target);
        debug_assert_eq!(path[0], self.source);
        Some(path)
    }
}

fn chain(pred: &[Option<usize>], target: usize) -> Vec<usize> {
    let mut out = vec![target];
    let mut cur = target;
    while let Some(p) = pred[cur] {
        out.push(p);
        cur = p;
    }
    out.reverse();
    out
}

/// Shortest path from `p` to `q` by Euclidean edge length.
pub fn shortest_path(g: &PlaneGraph, p: usize, q: usize) -> Result<GraphPath> {
    g.check_vertex(p)?;
    g.check_vertex(q)?;
    let tree = ShortestPathTree::build(&g.adjacency(), p);
    let vertex_indices = tree
        .path(q)
        .ok_or(Error::DisconnectedGraph { from: p, to: q })?;
    let length = path_length(g, &vertex_indices);
    Ok(GraphPath {
        vertex_indices,
        length,
    })
}

pub fn path_length(g: &PlaneGraph, path: &[usize]) -> f64 {
    path.windows(2)
        .map(|w| g.vertices[w[0]].dist(&g.vertices[w[1]]))
        .sum()
}

/// Maximum over vertex pairs of graph distance over Euclidean distance.
pub fn dilation(g: &PlaneGraph) -> Result<DilationReport> {
    let n = g.vertices.len();
    if n < 2 {
        return Err(Error::TooFewPoints { needed: 2, got: n });
    }
    let adj = g.adjacency();
    let per_source: Vec<Result<Option<DilationReport>>> = (0..n - 1)
        .into_par_iter()
        .map(|u| {
            let tree = ShortestPathTree::build(&adj, u);
            let mut best: Option<DilationReport> = None;
            for v in u + 1..n {
                let path_length = tree.dist[v];
                if !path_length.is_finite() {
                    return Err(Error::DisconnectedGraph { from: u, to: v });
                }
                let distance = g.vertices[u].dist(&g.vertices[v]);
                let ratio = path_length / distance;
                if best.is_none_or(|b| ratio > b.dilation) {
                    best = Some(DilationReport {
                        dilation: ratio,
                        witness_pair: (u, v),
                        path_length,
                        distance,
                    });
                }
            }
            Ok(best)
        })
        .collect();
    let mut best: Option<DilationReport> = None;
    for r in per_source {
        if let Some(cand) = r? {
            // Sources arrive in ascending order, so strict `>` keeps the
            // smallest witness pair among exact ties.
            if best.is_none_or(|b| cand.dilation > b.dilation) {
                best = Some(cand);
            }
        }
    }
    Ok(best.expect("n >= 2 gives at least one pair"))
}

/// Edge `(p, q)` for every pair with no third point inside the open segment
/// and no segment between two other points properly crossing it.
///
/// For a stable point set this is its maximal triangulation.
pub fn maximal_plane_graph(points: &PointSet) -> Result<PlaneGraph> {
    let n = points.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let pts = points.as_slice();
    let mut edges = Vec::new();
    for p in 0..n {
        for q in p + 1..n {
            let seg = Segment::new(pts[p].clone(), pts[q].clone()).expect("distinct points");
            let blocked_by_point = (0..n)
                .filter(|&r| r != p && r != q)
                .any(|r| seg.contains(&pts[r]));
            if blocked_by_point {
                continue;
            }
            let crossed = (0..n).filter(|&r| r != p && r != q).any(|r| {
                (r + 1..n)
                    .filter(|&s| s != p && s != q)
                    .any(|s| properly_cross(&pts[p], &pts[q], &pts[r], &pts[s]))
            });
            if !crossed {
                edges.push((p, q));
            }
        }
    }
    PlaneGraph::new(pts.to_vec(), edges)
}

fn properly_cross(a: &ExactPoint, b: &ExactPoint, c: &ExactPoint, d: &ExactPoint) -> bool {
    orientation(a, b, c).as_sign() * orientation(a, b, d).as_sign() < 0
        && orientation(c, d, a).as_sign() * orientation(c, d, b).as_sign() < 0
}

/// Number of input points on the convex-hull boundary, collinear boundary
/// points included.
pub fn boundary_point_count(points: &PointSet) -> usize {
    let hull = convex_hull(points);
    if hull.len() < 3 {
        return points.len();
    }
    let edges: Vec<Segment> = (0..hull.len())
        .map(|i| {
            Segment::new(hull[i].clone(), hull[(i + 1) % hull.len()].clone())
                .expect("distinct hull vertices")
        })
        .collect();
    points
        .iter()
        .filter(|p| edges.iter().any(|e| e.contains(p)))
        .count()
}

/// Whether `g` is a triangulation of its vertex set: plane, full-dimensional,
/// and edge-maximal (`3n - 3 - h` edges, `h` boundary points), which forces
/// every bounded face to be a triangle.
pub fn is_triangulation(g: &PlaneGraph) -> bool {
    let points = PointSet::from_points(g.vertices.iter().cloned());
    let n = points.len();
    if n < 3 || convex_hull(&points).len() < 3 {
        return false;
    }
    let h = boundary_point_count(&points);
    g.edge_count() == 3 * n - 3 - h && validate_plane(g).is_empty()
}
