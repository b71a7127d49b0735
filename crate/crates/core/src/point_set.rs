use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::geometry::{ExactPoint, Rational};

/// Duplicate-free set of exact points in lexicographic `(x, y)` order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PointSet {
    points: Vec<ExactPoint>,
}

impl PointSet {
    pub fn new() -> Self {
        PointSet::default()
    }

    pub fn from_points<I: IntoIterator<Item = ExactPoint>>(points: I) -> Self {
        let set: BTreeSet<ExactPoint> = points.into_iter().collect();
        PointSet {
            points: set.into_iter().collect(),
        }
    }

    pub(crate) fn from_sorted_set(set: BTreeSet<ExactPoint>) -> Self {
        PointSet {
            points: set.into_iter().collect(),
        }
    }

    /// Regular `n`-gon inscribed in the unit circle, first vertex at `(0, 1)`,
    /// coordinates rounded to the nearest multiple of `1/denominator`.
    ///
    /// Regular polygons with more than four sides have irrational vertices,
    /// so this is the standard rational stand-in.
    pub fn regular_polygon(n: usize, denominator: u64) -> Self {
        let den = BigInt::from(denominator);
        let round = |v: f64| {
            let scaled = (v * denominator as f64).round().to_i64().unwrap_or(0);
            Rational::new(BigInt::from(scaled), den.clone())
        };
        PointSet::from_points((0..n).map(|k| {
            let theta = PI / 2.0 + 2.0 * PI * k as f64 / n as f64;
            ExactPoint::new(round(theta.cos()), round(theta.sin()))
        }))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExactPoint> {
        self.points.iter()
    }

    pub fn as_slice(&self) -> &[ExactPoint] {
        &self.points
    }

    pub fn contains(&self, p: &ExactPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }

    /// Points of `self` not in `other`.
    pub fn difference(&self, other: &PointSet) -> PointSet {
        PointSet {
            points: self
                .points
                .iter()
                .filter(|p| !other.contains(p))
                .cloned()
                .collect(),
        }
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        PointSet::from_points(self.points.iter().chain(other.points.iter()).cloned())
    }

    pub fn max_coordinate_bits(&self) -> u64 {
        self.points
            .iter()
            .map(ExactPoint::coordinate_bits)
            .max()
            .unwrap_or(0)
    }

    pub fn into_vec(self) -> Vec<ExactPoint> {
        self.points
    }
}

impl FromIterator<ExactPoint> for PointSet {
    fn from_iter<I: IntoIterator<Item = ExactPoint>>(iter: I) -> Self {
        PointSet::from_points(iter)
    }
}

impl<'a> IntoIterator for &'a PointSet {
    type Item = &'a ExactPoint;
    type IntoIter = std::slice::Iter<'a, ExactPoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dedup_and_order() {
        let set = PointSet::from_points([
            ExactPoint::from_ints(1, 0),
            ExactPoint::from_ints(0, 5),
            ExactPoint::from_fractions(2, 2, 0, 1),
            ExactPoint::from_ints(0, -1),
        ]);
        assert_eq!(
            set.as_slice(),
            &[
                ExactPoint::from_ints(0, -1),
                ExactPoint::from_ints(0, 5),
                ExactPoint::from_ints(1, 0),
            ]
        );
        assert!(set.contains(&ExactPoint::from_fractions(3, 3, 0, 7)));
    }

    #[test]
    fn regular_pentagon_is_five_points() {
        let pent = PointSet::regular_polygon(5, 1_000_000);
        assert_eq!(pent.len(), 5);
        assert!(pent.contains(&ExactPoint::from_ints(0, 1)));
    }

    #[test]
    fn set_algebra() {
        let a = PointSet::from_points((0..4).map(|i| ExactPoint::from_ints(i, 0)));
        let b = PointSet::from_points((2..6).map(|i| ExactPoint::from_ints(i, 0)));
        assert_eq!(a.union(&b).len(), 6);
        assert_eq!(a.difference(&b).len(), 2);
        assert!(a.difference(&b).is_subset(&a));
        assert!(!a.is_subset(&b));
    }
}
