//! Plain SVG output. Coordinates are printed with a fixed number of
//! decimals so the same input always produces the same bytes.

use std::fmt::Write as _;

use crate::certificate::CertificateReport;
use crate::cover::RegionA;
use crate::geometry::FPoint;
use crate::graph::PlaneGraph;
use crate::point_set::PointSet;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;

/// Maps world coordinates into an 800px square, y pointing up.
pub struct Canvas {
    xmin: f64,
    ymin: f64,
    scale: f64,
    body: String,
}

impl Canvas {
    pub fn fit<'a, I: IntoIterator<Item = &'a FPoint>>(points: I) -> Self {
        let (mut xmin, mut ymin) = (f64::INFINITY, f64::INFINITY);
        let (mut xmax, mut ymax) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in points {
            xmin = xmin.min(p.x);
            xmax = xmax.max(p.x);
            ymin = ymin.min(p.y);
            ymax = ymax.max(p.y);
        }
        if !xmin.is_finite() {
            (xmin, xmax, ymin, ymax) = (0.0, 1.0, 0.0, 1.0);
        }
        let span = (xmax - xmin).max(ymax - ymin).max(f64::MIN_POSITIVE);
        Canvas {
            xmin,
            ymin,
            scale: (SIZE - 2.0 * MARGIN) / span,
            body: String::new(),
        }
    }

    fn map(&self, p: &FPoint) -> (f64, f64) {
        (
            MARGIN + (p.x - self.xmin) * self.scale,
            SIZE - MARGIN - (p.y - self.ymin) * self.scale,
        )
    }

    pub fn polygon(&mut self, vertices: &[FPoint], fill: &str, stroke: &str) {
        let pts: Vec<String> = vertices
            .iter()
            .map(|v| {
                let (x, y) = self.map(v);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polygon points="{}" fill="{fill}" stroke="{stroke}" stroke-width="1"/>"#,
            pts.join(" ")
        );
    }

    pub fn line(&mut self, a: &FPoint, b: &FPoint, stroke: &str, width: f64) {
        let (x1, y1) = self.map(a);
        let (x2, y2) = self.map(b);
        let _ = writeln!(
            self.body,
            r#"<line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="{stroke}" stroke-width="{width}"/>"#
        );
    }

    pub fn dot(&mut self, p: &FPoint, r: f64, fill: &str) {
        let (x, y) = self.map(p);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{x:.3}" cy="{y:.3}" r="{r}" fill="{fill}"/>"#
        );
    }

    /// Circle of world radius `r`, outline only.
    pub fn ring(&mut self, c: &FPoint, r: f64, stroke: &str) {
        let (x, y) = self.map(c);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.3}" fill="none" stroke="{stroke}" stroke-width="1"/>"#,
            r * self.scale
        );
    }

    pub fn finish(self) -> String {
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

fn floats(points: &PointSet) -> Vec<FPoint> {
    points.iter().map(|p| p.to_f64()).collect()
}

fn dot_radius(n: usize) -> f64 {
    if n > 2000 {
        0.8
    } else if n > 200 {
        1.5
    } else {
        3.0
    }
}

pub fn render_points(points: &PointSet) -> String {
    let pts = floats(points);
    let mut c = Canvas::fit(&pts);
    let r = dot_radius(pts.len());
    for p in &pts {
        c.dot(p, r, "black");
    }
    c.finish()
}

pub fn render_graph(g: &PlaneGraph) -> String {
    let pts: Vec<FPoint> = g.vertices().iter().map(|p| p.to_f64()).collect();
    let mut c = Canvas::fit(&pts);
    for (u, v) in g.edges() {
        c.line(&pts[u], &pts[v], "#4060a0", 1.0);
    }
    for p in &pts {
        c.dot(p, 3.0, "black");
    }
    c.finish()
}

/// Region A shaded, the seed in red, and the given closure round on top.
pub fn render_region(seed: &PointSet, region: &RegionA, round: &PointSet) -> String {
    let seed_f = floats(seed);
    let mut c = Canvas::fit(&seed_f);
    c.polygon(&hull_f64(seed), "none", "#999999");
    c.polygon(&region.polygon_f64(), "#ffe0a0", "#c08000");
    let r = dot_radius(round.len());
    for p in floats(round) {
        c.dot(&p, r, "black");
    }
    for p in &seed_f {
        c.dot(p, 4.0, "red");
    }
    c.finish()
}

fn hull_f64(seed: &PointSet) -> Vec<FPoint> {
    crate::geometry::convex_hull(seed)
        .iter()
        .map(|p| p.to_f64())
        .collect()
}

/// Outer and inner squares, the corner disc of radius `D`, the wedge window
/// at the lower-left inner corner and the edge strip of half-width `D + b'`.
pub fn render_certificate(report: &CertificateReport) -> String {
    let p = &report.params;
    let outer = (p.big_a + p.a) / 2.0;
    let inner = (p.big_a - p.a) / 2.0;
    let square = |h: f64| {
        vec![
            FPoint::new(-h, -h),
            FPoint::new(h, -h),
            FPoint::new(h, h),
            FPoint::new(-h, h),
        ]
    };
    let frame = square(outer + p.eps);
    let mut c = Canvas::fit(&frame);
    c.polygon(&square(outer), "none", "black");
    c.polygon(&square(inner), "none", "#606060");
    let corner = FPoint::new(-inner, -inner);
    if report.d.is_finite() {
        let strip = report.d + report.b_prime;
        c.polygon(
            &[
                FPoint::new(-inner, -inner - strip),
                FPoint::new(inner, -inner - strip),
                FPoint::new(inner, -inner + strip),
                FPoint::new(-inner, -inner + strip),
            ],
            "#d0e0ff",
            "none",
        );
        c.ring(&corner, report.d, "#c00000");
    }
    if report.tan_xi.is_finite() {
        // Two wedge rays leaving the window ends at angle xi.
        let reach = 2.0 * inner;
        for x0 in [-inner, -inner + report.l] {
            let start = FPoint::new(x0, -inner);
            let end = FPoint::new(x0 + reach / report.tan_xi, -inner + reach);
            c.line(&start, &end, "#008000", 1.0);
        }
    }
    c.ring(&corner, report.target, "#808000");
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ExactPoint;

    #[test]
    fn deterministic_and_well_formed() {
        let set = PointSet::from_points(
            [(0, 0), (1, 0), (0, 1)].map(|(x, y)| ExactPoint::from_ints(x, y)),
        );
        let a = render_points(&set);
        assert_eq!(a, render_points(&set));
        assert!(a.starts_with("<svg"));
        assert!(a.trim_end().ends_with("</svg>"));
        assert_eq!(a.matches("<circle").count(), 3);
    }

    #[test]
    fn graph_draws_edges() {
        let g = PlaneGraph::new(
            vec![ExactPoint::from_ints(0, 0), ExactPoint::from_ints(2, 1)],
            [(0, 1)],
        )
        .unwrap();
        assert_eq!(render_graph(&g).matches("<line").count(), 1);
    }
}
