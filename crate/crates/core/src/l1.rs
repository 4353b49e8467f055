//! Real `L¹` space with exact rational coordinates.
//!
//! The segment `[x, y]` is the axis-parallel box spanned by `x` and `y`. Hulls
//! are products of coordinate intervals, and the half-space analogues are the
//! coordinate threshold sets `{ π_i ≤ α }` and `{ π_i ≥ α }`.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::euclidean::Point;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L1PointSet {
    dim: usize,
    points: Vec<Point>,
}

impl L1PointSet {
    pub fn new(dim: usize, points: Vec<Point>) -> Result<Self> {
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: p.len() });
            }
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::Duplicate(format!("point {}", i + 1)));
            }
        }
        Ok(Self { dim, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn check_dims(points: &[&[BigRational]]) -> Result<()> {
    let dim = points[0].len();
    match points.iter().find(|p| p.len() != dim) {
        Some(p) => Err(Error::DimensionMismatch { expected: dim, found: p.len() }),
        None => Ok(()),
    }
}

pub fn l1_norm(v: &[BigRational]) -> BigRational {
    v.iter().fold(BigRational::zero(), |acc, c| acc + c.abs())
}

pub fn l1_distance(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + (x - y).abs())
}

fn between(lo: &BigRational, hi: &BigRational, v: &BigRational) -> bool {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    lo <= v && v <= hi
}

/// `z ∈ [x, y]`: every coordinate of `z` lies between those of `x` and `y`.
pub fn l1_segment_contains(x: &[BigRational], y: &[BigRational], z: &[BigRational]) -> Result<bool> {
    check_dims(&[x, y, z])?;
    Ok((0..x.len()).all(|i| between(&x[i], &y[i], &z[i])))
}

/// The metric form of the same predicate: `‖x-z‖₁ + ‖z-y‖₁ = ‖x-y‖₁`.
pub fn l1_metric_segment_contains(
    x: &[BigRational],
    y: &[BigRational],
    z: &[BigRational],
) -> Result<bool> {
    check_dims(&[x, y, z])?;
    Ok(l1_distance(x, z) + l1_distance(z, y) == l1_distance(x, y))
}

/// Product of closed intervals `[lo_i, hi_i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxHull {
    pub intervals: Vec<(BigRational, BigRational)>,
}

/// `{ x | π_i(x) ≤ α }`, or `{ x | π_i(x) ≥ α }` when `upper` is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Threshold {
    pub coordinate: usize,
    pub alpha: BigRational,
    pub upper: bool,
}

impl Threshold {
    pub fn contains(&self, p: &[BigRational]) -> bool {
        if self.upper {
            p[self.coordinate] <= self.alpha
        } else {
            p[self.coordinate] >= self.alpha
        }
    }
}

impl BoxHull {
    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn contains(&self, p: &[BigRational]) -> Result<bool> {
        if p.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: p.len() });
        }
        Ok(self.intervals.iter().zip(p).all(|((lo, hi), v)| lo <= v && v <= hi))
    }

    /// The two tight thresholds per coordinate; their intersection is the box.
    pub fn thresholds(&self) -> Vec<Threshold> {
        self.intervals
            .iter()
            .enumerate()
            .flat_map(|(coordinate, (lo, hi))| {
                [
                    Threshold { coordinate, alpha: hi.clone(), upper: true },
                    Threshold { coordinate, alpha: lo.clone(), upper: false },
                ]
            })
            .collect()
    }
}

/// Coordinate-wise `[min, max]` of a nonempty set.
pub fn box_hull(set: &L1PointSet) -> Result<BoxHull> {
    let first = set.points.first().ok_or(Error::EmptySet)?;
    let mut intervals: Vec<(BigRational, BigRational)> =
        first.iter().map(|v| (v.clone(), v.clone())).collect();
    for p in &set.points[1..] {
        for ((lo, hi), v) in intervals.iter_mut().zip(p) {
            if v < lo {
                *lo = v.clone();
            }
            if v > hi {
                *hi = v.clone();
            }
        }
    }
    Ok(BoxHull { intervals })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L1Report {
    pub separating: bool,
    /// `(x, y, z)` indices with `z` in the box of `x` and `y`.
    pub violation: Option<(usize, usize, usize)>,
}

/// `(2,1)`-separation in `L¹`: no point lies in the box spanned by two others.
pub fn l1_check_21(set: &L1PointSet) -> Result<L1Report> {
    let pts = &set.points;
    let m = pts.len();
    for x in 0..m {
        for y in x + 1..m {
            for z in (0..m).filter(|&z| z != x && z != y) {
                if l1_segment_contains(&pts[x], &pts[y], &pts[z])? {
                    return Ok(L1Report { separating: false, violation: Some((x, y, z)) });
                }
            }
        }
    }
    Ok(L1Report { separating: true, violation: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::euclidean::to_rational;

    fn set(points: &[&[i64]]) -> L1PointSet {
        L1PointSet::new(points[0].len(), points.iter().map(|p| to_rational(p)).collect()).unwrap()
    }

    #[test]
    fn box_membership_matches_metric() {
        let (x, y) = (to_rational(&[0, 0]), to_rational(&[2, 3]));
        let inside = to_rational(&[1, 1]);
        assert!(l1_segment_contains(&x, &y, &inside).unwrap());
        assert!(l1_metric_segment_contains(&x, &y, &inside).unwrap());
        assert_eq!(l1_distance(&x, &inside) + l1_distance(&inside, &y), l1_norm(&to_rational(&[2, 3])));

        let outside = to_rational(&[3, 0]);
        assert!(!l1_segment_contains(&x, &y, &outside).unwrap());
        assert!(!l1_metric_segment_contains(&x, &y, &outside).unwrap());
        let lhs = l1_distance(&x, &outside) + l1_distance(&outside, &y);
        assert_eq!(lhs, BigRational::from_integer(7.into()));

        assert!(l1_segment_contains(&x, &y, &x).unwrap());
        assert!(l1_segment_contains(&x, &to_rational(&[1]), &x).is_err());
    }

    #[test]
    fn hulls() {
        let h = box_hull(&set(&[&[0, 0], &[2, 3]])).unwrap();
        assert_eq!(h.intervals, vec![
            (BigRational::zero(), BigRational::from_integer(2.into())),
            (BigRational::zero(), BigRational::from_integer(3.into())),
        ]);
        let single = box_hull(&set(&[&[4, -1]])).unwrap();
        assert!(single.intervals.iter().all(|(lo, hi)| lo == hi));
        let h = box_hull(&set(&[&[0, 1], &[1, 0], &[2, 2]])).unwrap();
        let two = BigRational::from_integer(2.into());
        assert_eq!(h.intervals, vec![(BigRational::zero(), two.clone()), (BigRational::zero(), two)]);
        assert_eq!(box_hull(&L1PointSet::new(2, vec![]).unwrap()), Err(Error::EmptySet));
    }

    #[test]
    fn thresholds_carve_out_the_box() {
        let h = box_hull(&set(&[&[0, 1], &[1, 0], &[2, 2]])).unwrap();
        let th = h.thresholds();
        assert_eq!(th.len(), 4);
        for a in -1..=3 {
            for b in -1..=3 {
                let p = to_rational(&[a, b]);
                assert_eq!(h.contains(&p).unwrap(), th.iter().all(|t| t.contains(&p)));
            }
        }
    }

    #[test]
    fn check_21() {
        let r = l1_check_21(&set(&[&[0, 0], &[2, 3], &[1, 1]])).unwrap();
        assert_eq!(r, L1Report { separating: false, violation: Some((0, 1, 2)) });
        assert!(l1_check_21(&set(&[&[0, 1], &[1, 0], &[2, 2]])).unwrap().separating);
        assert!(l1_check_21(&set(&[&[0, 0], &[5, 5]])).unwrap().separating);
    }
}
