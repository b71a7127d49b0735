//! Numeric checker for the square-boundary contraction certificate.
//!
//! For a square boundary `B` of side `A + a` covered to within `eps`, and a
//! triangulation of dilation at most `delta` on the covering set, the
//! certificate asks whether the covering set also covers the concentric
//! boundary of side `A - a` to within `(A - a)/(A + a) * eps`. Every
//! quantity below is a closed-form worst case:
//!
//! * `l`: width of the window in which a wedge of connecting segments
//!   crosses the inner edge,
//! * `xi`: smallest angle those segments make with the edge,
//! * `b`: half-width of the ellipse around a segment's shortest path,
//! * `D`: distance within which a vertex approximates an inner corner,
//! * `b'`: half-width of the ellipse around the path between two
//!   corner-approximating vertices.
//!
//! `edge_error` composes these into a bound for an arbitrary point on an
//! inner edge; it is a conservative right-triangle estimate rather than a
//! closed form.

use std::f64::consts::{FRAC_PI_4, SQRT_2};

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{ExactPoint, Rational};
use crate::point_set::PointSet;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertificateParams {
    pub a: f64,
    #[serde(rename = "A")]
    pub big_a: f64,
    pub eps: f64,
    pub delta: f64,
}

impl CertificateParams {
    /// Requires `0 < a < A`, `eps > 0` and `delta >= 1`. The stricter
    /// `eps < a/2` is reported by [`check_certificate`] rather than rejected.
    pub fn new(a: f64, big_a: f64, eps: f64, delta: f64) -> Result<Self> {
        let p = CertificateParams {
            a,
            big_a,
            eps,
            delta,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        let all_finite = [self.a, self.big_a, self.eps, self.delta]
            .iter()
            .all(|v| v.is_finite());
        if !all_finite {
            return Err(Error::InvalidParams("parameters must be finite".into()));
        }
        if !(self.a > 0.0 && self.big_a > self.a) {
            return Err(Error::InvalidParams(format!(
                "need 0 < a < A, got a = {}, A = {}",
                self.a, self.big_a
            )));
        }
        if !(self.eps > 0.0) {
            return Err(Error::InvalidParams(format!(
                "need eps > 0, got {}",
                self.eps
            )));
        }
        if !(self.delta >= 1.0) {
            return Err(Error::InvalidDilation(self.delta));
        }
        Ok(())
    }

    /// `sqrt(delta^2 - 1)`, factored to avoid cancellation near 1.
    pub fn ellipse_factor(&self) -> f64 {
        ((self.delta - 1.0) * (self.delta + 1.0)).sqrt()
    }

    /// `(A - a)/(A + a) * eps`.
    pub fn target(&self) -> f64 {
        (self.big_a - self.a) / (self.big_a + self.a) * self.eps
    }

    pub fn scaled(&self, s: f64) -> Self {
        CertificateParams {
            a: self.a * s,
            big_a: self.big_a * s,
            eps: self.eps * s,
            delta: self.delta,
        }
    }
}

/// `l = 2 eps (a + 2 eps) / (A + a)`.
pub fn wedge_window_l(p: &CertificateParams) -> Result<f64> {
    p.validate()?;
    Ok(2.0 * p.eps * (p.a + 2.0 * p.eps) / (p.big_a + p.a))
}

/// `tan xi = (a - eps)(A + a - 2 eps) / (eps (A + 3a - 2 eps))`.
pub fn wedge_tangent(p: &CertificateParams) -> Result<f64> {
    p.validate()?;
    if !(p.eps < p.a) {
        return Err(Error::InvalidParams(format!(
            "wedge angle needs eps < a, got eps = {}, a = {}",
            p.eps, p.a
        )));
    }
    let (a, big_a, e) = (p.a, p.big_a, p.eps);
    Ok((a - e) * (big_a + a - 2.0 * e) / (e * (big_a + 3.0 * a - 2.0 * e)))
}

/// Smallest angle `xi` in `(0, pi/2)` between wedge segments and the edge.
pub fn wedge_angle(p: &CertificateParams) -> Result<f64> {
    Ok(wedge_tangent(p)?.atan())
}

/// `b` with `2b = (A + a + 2 eps) / sin(xi) * sqrt(delta^2 - 1)`.
pub fn ellipse_halfwidth_b(p: &CertificateParams) -> Result<f64> {
    let xi = wedge_angle(p)?;
    Ok((p.big_a + p.a + 2.0 * p.eps) / xi.sin() * p.ellipse_factor() / 2.0)
}

/// `D = (l + b / sin xi) * sqrt(2) / (1 - cot xi)`, the corner cover radius.
pub fn corner_error_d(p: &CertificateParams) -> Result<f64> {
    let tan_xi = wedge_tangent(p)?;
    let xi = tan_xi.atan();
    if !(xi > FRAC_PI_4) {
        return Err(Error::WedgeTooShallow { xi });
    }
    let l = wedge_window_l(p)?;
    let b = ellipse_halfwidth_b(p)?;
    Ok((l + b / xi.sin()) * SQRT_2 / (1.0 - 1.0 / tan_xi))
}

/// `b'` with `2b' = (A - a + 2D) * sqrt(delta^2 - 1)`.
pub fn edge_strip_bprime(p: &CertificateParams, d: f64) -> Result<f64> {
    p.validate()?;
    if !(d >= 0.0) {
        return Err(Error::InvalidParams(format!("need D >= 0, got {d}")));
    }
    Ok((p.big_a - p.a + 2.0 * d) * p.ellipse_factor() / 2.0)
}

/// Edge-point bound: the wedge (window `l`, angle at least `xi`, strip
/// half-width `b`) against the inner edge strip widened by `D + b'`.
pub fn edge_error(l: f64, tan_xi: f64, sin_xi: f64, b: f64, d: f64, b_prime: f64) -> f64 {
    let vertical = d + b_prime;
    (l + vertical / tan_xi + b / sin_xi).hypot(vertical)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateReport {
    pub params: CertificateParams,
    pub l: f64,
    pub xi: f64,
    pub tan_xi: f64,
    pub b: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub b_prime: f64,
    pub target: f64,
    pub corner_margin: f64,
    pub edge_error: f64,
    pub edge_margin: f64,
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Evaluates every intermediate and decides the certificate. Violated
/// preconditions become failure reasons; quantities that cannot be formed
/// are reported as infinite.
pub fn check_certificate(p: &CertificateParams) -> CertificateReport {
    let mut failures = Vec::new();
    let target = p.target();
    let l = 2.0 * p.eps * (p.a + 2.0 * p.eps) / (p.big_a + p.a);
    if !(p.eps < p.a / 2.0) {
        failures.push(format!(
            "precondition eps < a/2 fails: eps = {}, a/2 = {}",
            p.eps,
            p.a / 2.0
        ));
    }
    let (tan_xi, xi) = match wedge_tangent(p) {
        Ok(t) => (t, t.atan()),
        Err(_) => (f64::NAN, f64::NAN),
    };
    let b = if xi.is_finite() {
        (p.big_a + p.a + 2.0 * p.eps) / xi.sin() * p.ellipse_factor() / 2.0
    } else {
        f64::INFINITY
    };
    let d = if xi > FRAC_PI_4 {
        (l + b / xi.sin()) * SQRT_2 / (1.0 - 1.0 / tan_xi)
    } else {
        failures.push(format!("wedge angle xi = {xi} does not exceed pi/4"));
        f64::INFINITY
    };
    let b_prime = (p.big_a - p.a + 2.0 * d) * p.ellipse_factor() / 2.0;
    let edge = if d.is_finite() {
        edge_error(l, tan_xi, xi.sin(), b, d, b_prime)
    } else {
        f64::INFINITY
    };
    let corner_margin = target - d;
    let edge_margin = target - edge;
    if d.is_finite() && corner_margin < 0.0 {
        failures.push(format!("corner bound D = {d} exceeds target {target}"));
    }
    if edge.is_finite() && edge_margin < 0.0 {
        failures.push(format!("edge bound {edge} exceeds target {target}"));
    }
    CertificateReport {
        params: *p,
        l,
        xi,
        tan_xi,
        b,
        d,
        b_prime,
        target,
        corner_margin,
        edge_error: edge,
        edge_margin,
        passed: failures.is_empty(),
        failures,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareCover {
    pub points: PointSet,
    pub spacing: Rational,
    /// `perimeter / (2n)`: the farthest any boundary point is from the set.
    pub radius: Rational,
}

/// `n` points evenly spaced by arc length on the boundary of the
/// axis-aligned square of side `side` centred at the origin, corners
/// included.
pub fn square_cover_points(side: &Rational, n: usize) -> Result<SquareCover> {
    if n < 4 || !n.is_multiple_of(4) {
        return Err(Error::InvalidCount(n));
    }
    if !side.is_positive() {
        return Err(Error::InvalidParams(format!(
            "side must be positive, got {side}"
        )));
    }
    let per_edge = n / 4;
    let spacing = side / Rational::from_integer(BigInt::from(per_edge));
    let half = side / Rational::from_integer(BigInt::from(2));
    let lo = -half.clone();
    let mut pts = Vec::with_capacity(n);
    for i in 0..per_edge {
        let t = &lo + &spacing * Rational::from_integer(BigInt::from(i));
        let u = &half - &spacing * Rational::from_integer(BigInt::from(i));
        pts.push(ExactPoint::new(t.clone(), lo.clone()));
        pts.push(ExactPoint::new(half.clone(), t));
        pts.push(ExactPoint::new(u.clone(), half.clone()));
        pts.push(ExactPoint::new(lo.clone(), u));
    }
    let radius = &spacing / Rational::from_integer(BigInt::from(2));
    Ok(SquareCover {
        points: PointSet::from_points(pts),
        spacing,
        radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values from an independent 40-digit evaluation of the same
    // closed forms at a = 1, A = 15, eps = 0.16, delta = 1.0000047.
    const REF_L: f64 = 0.0264;
    const REF_TAN_XI: f64 = 4.656_108_597_285_068;
    const REF_XI: f64 = 1.359_238_463_776_112_2;
    const REF_B: f64 = 0.025_588_614_424_733_52;
    const REF_D: f64 = 0.094_683_547_927_706_46;
    const REF_B_PRIME: f64 = 0.021_751_913_422_848_33;
    const REF_EDGE: f64 = 0.139_913_337_576_231_98;

    fn reference() -> CertificateParams {
        CertificateParams::new(1.0, 15.0, 0.16, 1.000_004_7).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn intermediates_at_reference_point() {
        let p = reference();
        assert!(rel(wedge_window_l(&p).unwrap(), REF_L) < 1e-12);
        assert!(rel(wedge_tangent(&p).unwrap(), REF_TAN_XI) < 1e-12);
        assert!(rel(wedge_angle(&p).unwrap(), REF_XI) < 1e-12);
        assert!(rel(ellipse_halfwidth_b(&p).unwrap(), REF_B) < 1e-9);
        let d = corner_error_d(&p).unwrap();
        assert!(rel(d, REF_D) < 1e-9);
        assert!(rel(edge_strip_bprime(&p, d).unwrap(), REF_B_PRIME) < 1e-9);
    }

    #[test]
    fn reference_report() {
        let r = check_certificate(&reference());
        assert!((r.target - 0.14).abs() < 1e-15);
        assert!(r.corner_margin > 0.045 && r.corner_margin < 0.046);
        assert!(rel(r.edge_error, REF_EDGE) < 1e-9);
        assert!(r.passed, "{:?}", r.failures);
    }

    #[test]
    fn larger_delta_fails() {
        let r = check_certificate(&CertificateParams::new(1.0, 15.0, 0.16, 1.1).unwrap());
        assert!(!r.passed);
        assert!(r.d > r.target);
        assert!(rel(r.d, 7.092_906_614_751_785) < 1e-9);
    }

    #[test]
    fn eps_at_half_a_fails_precondition() {
        let r = check_certificate(&CertificateParams::new(1.0, 15.0, 0.5, 1.0000047).unwrap());
        assert!(!r.passed);
        assert!(r.failures[0].contains("eps < a/2"));
    }

    #[test]
    fn eps_beyond_a_is_reported_not_panicking() {
        let r = check_certificate(&CertificateParams::new(1.0, 15.0, 1.5, 1.0).unwrap());
        assert!(!r.passed);
        assert!(r.d.is_infinite());
        assert!(wedge_angle(&CertificateParams::new(1.0, 15.0, 1.5, 1.0).unwrap()).is_err());
    }

    #[test]
    fn invalid_params() {
        assert!(CertificateParams::new(2.0, 1.0, 0.1, 1.0).is_err());
        assert!(CertificateParams::new(0.0, 1.0, 0.1, 1.0).is_err());
        assert!(CertificateParams::new(1.0, 2.0, 0.0, 1.0).is_err());
        assert!(matches!(
            CertificateParams::new(1.0, 2.0, 0.1, 0.9),
            Err(Error::InvalidDilation(_))
        ));
        assert!(CertificateParams::new(1.0, f64::INFINITY, 0.1, 1.0).is_err());
        assert!(edge_strip_bprime(&reference(), -1.0).is_err());
    }

    #[test]
    fn shallow_wedge_is_error() {
        // eps close to a drives tan xi towards 0.
        let p = CertificateParams::new(1.0, 15.0, 0.9, 1.0).unwrap();
        assert!(matches!(
            corner_error_d(&p),
            Err(Error::WedgeTooShallow { .. })
        ));
        let t = wedge_tangent(&CertificateParams::new(1.0, 15.0, 0.999_999, 1.0).unwrap()).unwrap();
        assert!(t < 1e-5);
    }

    #[test]
    fn window_limit_for_tiny_eps() {
        let p = CertificateParams::new(1.0, 15.0, 1e-9, 1.0).unwrap();
        let l = wedge_window_l(&p).unwrap();
        assert!(rel(l, 2.0 * 1e-9 / 16.0) < 1e-8);
    }

    #[test]
    fn law_of_sines_form_agrees() {
        let p = reference();
        let xi = wedge_angle(&p).unwrap();
        let l = wedge_window_l(&p).unwrap();
        let b = ellipse_halfwidth_b(&p).unwrap();
        let d = corner_error_d(&p).unwrap();
        let lhs = d / xi.sin();
        let rhs = (l + b / xi.sin()) / (xi - FRAC_PI_4).sin();
        assert!(rel(lhs, rhs) < 1e-12);
    }

    #[test]
    fn delta_one_collapse() {
        let p = CertificateParams::new(1.0, 15.0, 0.16, 1.0).unwrap();
        let r = check_certificate(&p);
        assert_eq!(r.b, 0.0);
        assert_eq!(r.b_prime, 0.0);
        let expected = r.l * SQRT_2 / (1.0 - 1.0 / r.tan_xi);
        assert!(rel(r.d, expected) < 1e-15);
    }

    /// Supporting lines through the cover point `p` at height offset `eta`
    /// and the two far points, with the corner `v` at the origin.
    fn wedge_lines(p: &CertificateParams, eta: f64) -> ((f64, f64), (f64, f64)) {
        let (a, big_a, e) = (p.a, p.big_a, p.eps);
        let slope1 = (a - eta) / e;
        let denom = big_a + 3.0 * a + e - 3.0 * eta;
        let slope2 = (a - eta) * (big_a + a - e - eta) / (e * denom);
        let icpt2 = -2.0 * (a - eta) * (a - e - eta) / denom;
        ((slope1, 0.0), (slope2, icpt2))
    }

    #[test]
    fn parametric_lines_confirm_worst_cases() {
        let p = reference();
        let steps = 2000;
        let etas: Vec<f64> = (0..=steps)
            .map(|i| -p.eps + 2.0 * p.eps * i as f64 / steps as f64)
            .collect();
        let window = |eta: f64| {
            let ((s1, c1), (s2, c2)) = wedge_lines(&p, eta);
            (-c2 / s2 - (-c1 / s1)).abs()
        };
        let (argmax, lmax) =
            etas.iter()
                .map(|&e| (e, window(e)))
                .fold(
                    (0.0, f64::NEG_INFINITY),
                    |acc, x| if x.1 > acc.1 { x } else { acc },
                );
        assert_eq!(argmax, -p.eps);
        // The closed form is an upper bound on the parametric window.
        assert!(lmax <= wedge_window_l(&p).unwrap());

        let (argmin, smin) = etas.iter().map(|&e| (e, wedge_lines(&p, e).1 .0)).fold(
            (0.0, f64::INFINITY),
            |acc, x| if x.1 < acc.1 { x } else { acc },
        );
        assert_eq!(argmin, p.eps);
        assert!(rel(smin, wedge_tangent(&p).unwrap()) < 1e-12);
    }

    #[test]
    fn square_cover_examples() {
        let sc = square_cover_points(&Rational::from_integer(16.into()), 200).unwrap();
        assert_eq!(sc.points.len(), 200);
        assert_eq!(sc.spacing, Rational::new(8.into(), 25.into()));
        assert_eq!(sc.radius, Rational::new(4.into(), 25.into()));

        let corners = square_cover_points(&Rational::from_integer(4.into()), 4).unwrap();
        let expected = PointSet::from_points(
            [(-2, -2), (2, -2), (2, 2), (-2, 2)].map(|(x, y)| ExactPoint::from_ints(x, y)),
        );
        assert_eq!(corners.points, expected);
        assert_eq!(corners.radius, Rational::from_integer(2.into()));

        assert_eq!(
            square_cover_points(&Rational::from_integer(4.into()), 5),
            Err(Error::InvalidCount(5))
        );
        assert!(square_cover_points(&Rational::from_integer(4.into()), 0).is_err());
        assert!(square_cover_points(&Rational::from_integer(0.into()), 8).is_err());
    }
}
