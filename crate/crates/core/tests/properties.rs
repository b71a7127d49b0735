mod common;

use dilagap::certificate::{check_certificate, CertificateParams};
use dilagap::cover::cover_radius;
use dilagap::geometry::{convex_hull, orientation, segment_intersection};
use dilagap::graph::{delaunay, dilation, is_triangulation, maximal_plane_graph, validate_plane};
use dilagap::{
    intersection_closure, ClosureMode, Error, ExactPoint, Orientation, PlaneGraph, PointSet,
    Rational, Segment,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn small_point() -> impl Strategy<Value = ExactPoint> {
    (-6i64..=6, -6i64..=6).prop_map(|(x, y)| ExactPoint::from_ints(x, y))
}

fn fine_point() -> impl Strategy<Value = ExactPoint> {
    (0i64..100_000, 0i64..100_000).prop_map(|(x, y)| ExactPoint::from_fractions(x, 1000, y, 1000))
}

fn point_set(max: usize) -> impl Strategy<Value = PointSet> {
    prop::collection::vec(small_point(), 1..=max).prop_map(PointSet::from_points)
}

fn r(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone)]
struct Affine {
    m: [i64; 4],
    t: (i64, i64),
}

impl Affine {
    fn apply(&self, p: &ExactPoint) -> ExactPoint {
        let [a, b, c, d] = self.m;
        let x = r(a) * &p.x + r(b) * &p.y + Rational::new(self.t.0.into(), 7.into());
        let y = r(c) * &p.x + r(d) * &p.y + Rational::new(self.t.1.into(), 3.into());
        ExactPoint::new(x, y)
    }

    fn apply_set(&self, s: &PointSet) -> PointSet {
        PointSet::from_points(s.iter().map(|p| self.apply(p)))
    }
}

fn affine() -> impl Strategy<Value = Affine> {
    (
        [-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3],
        (-20i64..=20, -20i64..=20),
    )
        .prop_filter("invertible", |(m, _)| m[0] * m[3] - m[1] * m[2] != 0)
        .prop_map(|(m, t)| Affine { m, t })
}

proptest! {
    #[test]
    fn segment_intersection_symmetric(a in small_point(), b in small_point(), c in small_point(), d in small_point()) {
        let (Some(s1), Some(s2)) = (Segment::new(a.clone(), b.clone()), Segment::new(c.clone(), d.clone())) else {
            return Ok(());
        };
        let x = segment_intersection(&s1, &s2);
        prop_assert_eq!(&x, &segment_intersection(&s2, &s1));
        let r1 = Segment::new(b.clone(), a.clone()).unwrap();
        prop_assert_eq!(&x, &segment_intersection(&r1, &s2));
        prop_assert_eq!(&x, &common::crossing(&a, &b, &c, &d, true));
        if let Some(p) = x {
            prop_assert!(s1.contains(&p) && s2.contains(&p));
        }
    }

    #[test]
    fn segment_intersection_affine_equivariant(
        a in small_point(), b in small_point(), c in small_point(), d in small_point(), f in affine()
    ) {
        let (Some(s1), Some(s2)) = (Segment::new(a.clone(), b.clone()), Segment::new(c.clone(), d.clone())) else {
            return Ok(());
        };
        let t1 = Segment::new(f.apply(&a), f.apply(&b)).unwrap();
        let t2 = Segment::new(f.apply(&c), f.apply(&d)).unwrap();
        prop_assert_eq!(
            segment_intersection(&s1, &s2).map(|p| f.apply(&p)),
            segment_intersection(&t1, &t2)
        );
    }

    #[test]
    fn hull_is_convex_and_encloses(pts in point_set(12), dx in -9i64..9, dy in -9i64..9) {
        let hull = convex_hull(&pts);
        prop_assert!(hull.iter().all(|v| pts.contains(v)));
        let h = hull.len();
        if h >= 3 {
            for i in 0..h {
                let (u, v, w) = (&hull[i], &hull[(i + 1) % h], &hull[(i + 2) % h]);
                prop_assert_eq!(orientation(u, v, w), Orientation::CounterClockwise);
                for p in pts.iter() {
                    prop_assert_ne!(orientation(u, v, p), Orientation::Clockwise);
                }
            }
        }
        let shift = |p: &ExactPoint| ExactPoint::new(&p.x + r(dx), &p.y + r(dy));
        let moved = PointSet::from_points(pts.iter().map(shift));
        let expected: Vec<ExactPoint> = hull.iter().map(shift).collect();
        prop_assert_eq!(convex_hull(&moved), expected);
    }

    #[test]
    fn hull_ignores_input_order(mut pts in prop::collection::vec(small_point(), 1..12), seed in any::<u64>()) {
        let a = convex_hull(&PointSet::from_points(pts.clone()));
        let k = (seed as usize) % pts.len();
        pts.rotate_left(k);
        pts.reverse();
        prop_assert_eq!(convex_hull(&PointSet::from_points(pts)), a);
    }

    #[test]
    fn closure_matches_brute_force(pts in point_set(8)) {
        for (mode, lines) in [(ClosureMode::Segments, false), (ClosureMode::Lines, true)] {
            prop_assert_eq!(intersection_closure(&pts, mode), common::brute_closure(&pts, lines));
        }
    }

    #[test]
    fn closure_monotone_and_segments_within_lines(p in point_set(6), q in point_set(3)) {
        let cp = intersection_closure(&p, ClosureMode::Segments);
        prop_assert!(p.is_subset(&cp));
        let union = p.union(&q);
        prop_assert!(cp.is_subset(&intersection_closure(&union, ClosureMode::Segments)));
        prop_assert!(cp.is_subset(&intersection_closure(&p, ClosureMode::Lines)));
    }

    #[test]
    fn closure_affine_equivariant(pts in point_set(7), f in affine()) {
        let lhs = f.apply_set(&intersection_closure(&pts, ClosureMode::Segments));
        prop_assert_eq!(lhs, intersection_closure(&f.apply_set(&pts), ClosureMode::Segments));
    }
}

fn delaunay_of(pts: Vec<ExactPoint>) -> Option<PlaneGraph> {
    delaunay(&PointSet::from_points(pts)).ok()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn delaunay_is_a_plane_triangulation(pts in prop::collection::vec(small_point(), 3..20)) {
        let Some(g) = delaunay_of(pts) else { return Ok(()) };
        prop_assert!(validate_plane(&g).is_empty());
        prop_assert!(is_triangulation(&g));
    }

    #[test]
    fn dilation_matches_floyd_warshall(pts in prop::collection::vec(fine_point(), 3..=12), drop in any::<u64>()) {
        let Some(g) = delaunay_of(pts) else { return Ok(()) };
        let d = dilation(&g).unwrap();
        prop_assert!(d.dilation >= 1.0);
        prop_assert!(rel(d.dilation, common::floyd_dilation(&g).unwrap()) < 1e-9);

        // A subgraph: drop edges by the bits of `drop`.
        let kept: Vec<(usize, usize)> = g
            .edges()
            .enumerate()
            .filter(|(i, _)| (drop >> (i % 64)) & 1 == 0)
            .map(|(_, e)| e)
            .collect();
        let sub = PlaneGraph::new(g.vertices().to_vec(), kept).unwrap();
        match (dilation(&sub), common::floyd_dilation(&sub)) {
            (Ok(ds), Some(fs)) => {
                prop_assert!(rel(ds.dilation, fs) < 1e-9);
                // Adding edges back never increases dilation.
                prop_assert!(d.dilation <= ds.dilation * (1.0 + 1e-12));
            }
            (Err(Error::DisconnectedGraph { .. }), None) => {}
            (other, fw) => prop_assert!(false, "{:?} vs {:?}", other, fw),
        }
    }

    #[test]
    fn dilation_similarity_invariant(
        pts in prop::collection::vec(fine_point(), 3..=12),
        num in 1i64..50, den in 1i64..50, tx in -100i64..100, ty in -100i64..100, rot in 0usize..4
    ) {
        let Some(g) = delaunay_of(pts) else { return Ok(()) };
        let s = Rational::new(num.into(), den.into());
        let map = |p: &ExactPoint| {
            let (x, y) = match rot {
                0 => (p.x.clone(), p.y.clone()),
                1 => (-p.y.clone(), p.x.clone()),
                2 => (-p.x.clone(), -p.y.clone()),
                _ => (p.y.clone(), -p.x.clone()),
            };
            ExactPoint::new(&s * x + r(tx), &s * y + r(ty))
        };
        let moved = PlaneGraph::new(g.vertices().iter().map(map).collect(), g.edges()).unwrap();
        let (a, b) = (dilation(&g).unwrap().dilation, dilation(&moved).unwrap().dilation);
        prop_assert!(rel(a, b) < 1e-9, "{} vs {}", a, b);
    }

    #[test]
    fn cover_radius_shrinks_as_cover_grows(
        cover in prop::collection::vec(small_point(), 1..8),
        extra in prop::collection::vec(small_point(), 1..8),
        targets in prop::collection::vec(small_point(), 1..12)
    ) {
        let q = PointSet::from_points(cover);
        let bigger = q.union(&PointSet::from_points(extra));
        let r1 = cover_radius(&q, &targets).unwrap().radius_squared.unwrap();
        let r2 = cover_radius(&bigger, &targets).unwrap().radius_squared.unwrap();
        prop_assert!(r2 <= r1);
        prop_assert_eq!(cover_radius(&q, q.as_slice()).unwrap().radius_achieved, 0.0);
    }
}

fn cert_params() -> impl Strategy<Value = CertificateParams> {
    (0.5f64..5.0, 2.0f64..40.0, 0.01f64..0.45, 1.0f64..1.001).prop_map(|(a, ratio, e, delta)| {
        CertificateParams::new(a, a * ratio, e * a, delta).unwrap()
    })
}

proptest! {
    #[test]
    fn certificate_is_homogeneous(p in cert_params(), s in 0.05f64..20.0) {
        let base = check_certificate(&p);
        let scaled = check_certificate(&p.scaled(s));
        prop_assume!(base.corner_margin.abs() > 1e-9 && base.edge_margin.abs() > 1e-9);
        prop_assert!((base.xi - scaled.xi).abs() < 1e-12);
        prop_assert_eq!(base.passed, scaled.passed);
        for (x, y) in [(base.l, scaled.l), (base.b, scaled.b), (base.d, scaled.d), (base.b_prime, scaled.b_prime), (base.edge_error, scaled.edge_error)] {
            if x.is_finite() && x != 0.0 {
                prop_assert!(rel(y, s * x) < 1e-9, "{} vs {}", y, s * x);
            }
        }
    }

    #[test]
    fn certificate_degrades_with_delta(p in cert_params(), bump in 0.0f64..0.01) {
        let lo = check_certificate(&p);
        let hi = check_certificate(&CertificateParams::new(p.a, p.big_a, p.eps, p.delta + bump).unwrap());
        prop_assert!(hi.b >= lo.b && hi.d >= lo.d && hi.b_prime >= lo.b_prime);
        prop_assert!(hi.edge_error >= lo.edge_error);
        prop_assert!(!hi.passed || lo.passed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn maximal_graph_of_fixed_point_has_dilation_one(pts in point_set(6)) {
        let budgets = dilagap::ClosureBudgets::new(80, 4, 256).unwrap();
        let stable = match dilagap::classify_stability(&pts, budgets) {
            dilagap::StabilityVerdict::Stable => pts,
            dilagap::StabilityVerdict::StabilizesAtRound { fixed_point, .. } => fixed_point,
            dilagap::StabilityVerdict::BudgetExceeded { .. } => return Ok(()),
        };
        prop_assert_eq!(intersection_closure(&stable, ClosureMode::Segments), stable.clone());
        let Ok(g) = maximal_plane_graph(&stable) else { return Ok(()) };
        prop_assert!(validate_plane(&g).is_empty());
        if convex_hull(&stable).len() >= 3 {
            prop_assert!(is_triangulation(&g));
        }
        prop_assert!((dilation(&g).unwrap().dilation - 1.0).abs() < 1e-12);
    }
}
