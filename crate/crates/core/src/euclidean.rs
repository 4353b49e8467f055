//! Euclidean `ε-(2,1)`-separation through angles.
//!
//! A set is `ε-(2,1)`-separating exactly when every triple `x, y, z` has
//! angle `∠xzy < (1-ε)π`. At `ε = 1/2` this is the acute-set property and is
//! decided by the sign of `⟨x-z, y-z⟩`; at `ε = 0` the only failing triples
//! are those with `z` strictly inside `[x, y]`. Other values of `ε` fall back
//! to floating point with a tolerance.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::hamming::Word;
use crate::rational::{is_unit_interval, parse_rational};
use crate::separation::{separating_coordinates, Code};

pub type Point = Vec<BigRational>;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct EuclideanPointSet {
    dim: usize,
    points: Vec<Point>,
    tolerance: f64,
}

impl EuclideanPointSet {
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
        Ok(Self { dim, points, tolerance: DEFAULT_TOLERANCE })
    }

    pub fn from_integers(points: &[Vec<i64>]) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        Self::new(dim, points.iter().map(|p| to_rational(p)).collect())
    }

    /// Tolerance used by the floating-point path (`ε ∉ {0, 1/2}`).
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
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

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }
}

pub fn to_rational(p: &[i64]) -> Point {
    p.iter().map(|&v| BigRational::from_integer(v.into())).collect()
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// The angle at `apex` between the arms, held exactly as the inner product
/// of the arm vectors and the product of their squared norms, so that
/// `cos = dot / sqrt(norms)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleAngle {
    pub apex: usize,
    pub arms: (usize, usize),
    pub dot: BigRational,
    pub norms: BigRational,
}

impl TripleAngle {
    fn compute(x: &[BigRational], y: &[BigRational], z: &[BigRational]) -> Result<(BigRational, BigRational)> {
        if x.len() != z.len() || y.len() != z.len() {
            return Err(Error::DimensionMismatch { expected: z.len(), found: x.len().max(y.len()) });
        }
        let (a, b) = (sub(x, z), sub(y, z));
        let (na, nb) = (dot(&a, &a), dot(&b, &b));
        if na.is_zero() || nb.is_zero() || x == y {
            return Err(Error::Degenerate("coincident points".into()));
        }
        Ok((dot(&a, &b), na * nb))
    }

    pub fn cos(&self) -> f64 {
        let d = self.dot.to_f64().unwrap_or(f64::NAN);
        let n = self.norms.to_f64().unwrap_or(f64::NAN);
        (d / n.sqrt()).clamp(-1.0, 1.0)
    }

    /// Angle in radians.
    pub fn radians(&self) -> f64 {
        self.cos().acos()
    }

    /// Exact comparison of cosines.
    pub fn cmp_cos(&self, other: &TripleAngle) -> Ordering {
        cmp_cos(&self.dot, &self.norms, &other.dot, &other.norms)
    }

    /// `true` iff the angle is exactly `π` (apex strictly between the arms).
    pub fn is_straight(&self) -> bool {
        self.dot.is_negative() && &self.dot * &self.dot == self.norms
    }
}

fn cmp_cos(d1: &BigRational, n1: &BigRational, d2: &BigRational, n2: &BigRational) -> Ordering {
    let sign = |d: &BigRational| match d.cmp(&BigRational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    };
    let (s1, s2) = (sign(d1), sign(d2));
    if s1 != s2 {
        return s1.cmp(&s2);
    }
    // same sign: compare d1^2 / n1 against d2^2 / n2, flipped when negative
    let lhs = d1 * d1 * n2;
    let rhs = d2 * d2 * n1;
    if s1 >= 0 {
        lhs.cmp(&rhs)
    } else {
        rhs.cmp(&lhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleVerdict {
    Passes,
    Fails,
}

fn classify(angle: &TripleAngle, epsilon: &BigRational, tolerance: f64) -> AngleVerdict {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let passes = if epsilon.is_zero() {
        !angle.is_straight()
    } else if *epsilon == half {
        angle.dot.is_positive()
    } else {
        let eps = epsilon.to_f64().unwrap_or(f64::NAN);
        let threshold = ((1.0 - eps) * std::f64::consts::PI).cos();
        angle.cos() - threshold > tolerance
    };
    if passes {
        AngleVerdict::Passes
    } else {
        AngleVerdict::Fails
    }
}

/// Whether `∠xzy < (1-ε)π`. Exact for `ε ∈ {0, 1/2}`; otherwise the cosine is
/// compared in floating point and must clear the threshold by more than
/// `tolerance`.
pub fn angle_classification(
    x: &[BigRational],
    y: &[BigRational],
    z: &[BigRational],
    epsilon: &BigRational,
    tolerance: f64,
) -> Result<AngleVerdict> {
    check_epsilon(epsilon)?;
    let (dot, norms) = TripleAngle::compute(x, y, z)?;
    let angle = TripleAngle { apex: 2, arms: (0, 1), dot, norms };
    Ok(classify(&angle, epsilon, tolerance))
}

fn check_epsilon(epsilon: &BigRational) -> Result<()> {
    if is_unit_interval(epsilon) {
        Ok(())
    } else {
        Err(Error::InvalidParameter("epsilon must lie in [0, 1)".into()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AngleReport {
    pub separating: bool,
    /// The triple with the largest angle (first in apex-then-arms order on
    /// ties); `None` for fewer than three points.
    pub worst: Option<TripleAngle>,
}

/// Checks every triple of `set` against `∠xzy < (1-ε)π`.
pub fn is_eps_21_separating(set: &EuclideanPointSet, epsilon: &BigRational) -> Result<AngleReport> {
    check_epsilon(epsilon)?;
    let pts = &set.points;
    let mut worst: Option<TripleAngle> = None;
    for z in 0..pts.len() {
        for x in 0..pts.len() {
            for y in x + 1..pts.len() {
                if x == z || y == z {
                    continue;
                }
                let (dot, norms) = TripleAngle::compute(&pts[x], &pts[y], &pts[z])?;
                let angle = TripleAngle { apex: z, arms: (x, y), dot, norms };
                if worst.as_ref().is_none_or(|w| angle.cmp_cos(w) == Ordering::Less) {
                    worst = Some(angle);
                }
            }
        }
    }
    let separating = worst
        .as_ref()
        .is_none_or(|w| classify(w, epsilon, set.tolerance) == AngleVerdict::Passes);
    Ok(AngleReport { separating, worst })
}

/// Binary words as vertices of the unit cube.
pub fn embed_cube(code: &Code) -> Result<EuclideanPointSet> {
    let space = code.space();
    if space.q() != 2 {
        return Err(Error::NotBinary(space.q()));
    }
    let points = code
        .words()
        .iter()
        .map(|w| w.symbols().iter().map(|&s| BigRational::from_integer(s.into())).collect())
        .collect();
    EuclideanPointSet::new(space.n(), points)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BridgeAudit {
    /// `⟨x-z, y-z⟩` over the cube embedding.
    pub dot: i64,
    /// `|Λ({x,y}, {z})|`.
    pub count: usize,
    pub equal: bool,
}

/// Compares the cube inner product `⟨x-z, y-z⟩` with the number of
/// coordinates separating `{x, y}` from `{z}`.
pub fn bridge_check(x: &Word, y: &Word, z: &Word) -> Result<BridgeAudit> {
    let space = crate::hamming::HammingSpace::binary(z.len())?;
    if let Some(&s) = [x, y, z].iter().flat_map(|w| w.symbols()).max().filter(|&&s| s > 1) {
        return Err(Error::NotBinary(s + 1));
    }
    if x == y || x == z || y == z {
        return Err(Error::Degenerate("bridge words must be distinct".into()));
    }
    let count = separating_coordinates(space, &[x.clone(), y.clone()], std::slice::from_ref(z))?.len();
    let dot: i64 = x
        .symbols()
        .iter()
        .zip(y.symbols())
        .zip(z.symbols())
        .map(|((&a, &b), &c)| (a as i64 - c as i64) * (b as i64 - c as i64))
        .sum();
    Ok(BridgeAudit { dot, count, equal: dot == count as i64 })
}

fn sub_f(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot_f(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Maps `x, y, z` into `R^3` preserving distances: inputs already in `R^3`
/// are kept, others are written in an orthonormal frame of their plane.
fn into_three_space(x: &[f64], y: &[f64], z: &[f64]) -> [[f64; 3]; 3] {
    if x.len() == 3 {
        let c = |p: &[f64]| [p[0], p[1], p[2]];
        return [c(x), c(y), c(z)];
    }
    let a = sub_f(x, z);
    let b = sub_f(y, z);
    let na = dot_f(&a, &a).sqrt();
    let e1: Vec<f64> = a.iter().map(|v| v / na).collect();
    let proj = dot_f(&b, &e1);
    let rest: Vec<f64> = b.iter().zip(&e1).map(|(v, e)| v - proj * e).collect();
    let nr = dot_f(&rest, &rest).sqrt();
    let coords = |v: &[f64]| -> [f64; 3] {
        let c1 = dot_f(v, &e1);
        let c2 = if nr > 1e-12 * na { dot_f(v, &rest) / nr } else { 0.0 };
        [c1, c2, 0.0]
    };
    [coords(&a), coords(&b), [0.0; 3]]
}

/// Monte Carlo estimate of the fraction of unit directions `u` for which
/// `⟨u, z⟩` lies strictly outside the interval spanned by `⟨u, x⟩, ⟨u, y⟩`.
/// Directions are normalised isotropic Gaussian vectors from a ChaCha8
/// generator seeded with `seed`.
pub fn mc_separating_fraction(x: &[f64], y: &[f64], z: &[f64], samples: u64, seed: u64) -> Result<f64> {
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be >= 1".into()));
    }
    if x.len() != z.len() || y.len() != z.len() {
        return Err(Error::DimensionMismatch { expected: z.len(), found: x.len().max(y.len()) });
    }
    if x == y || x == z || y == z {
        return Err(Error::Degenerate("coincident points".into()));
    }
    let [x, y, z] = into_three_space(x, y, z);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut separated = 0u64;
    let mut drawn = 0u64;
    while drawn < samples {
        let u: [f64; 3] = [
            StandardNormal.sample(&mut rng),
            StandardNormal.sample(&mut rng),
            StandardNormal.sample(&mut rng),
        ];
        let norm = dot_f(&u, &u).sqrt();
        if norm == 0.0 {
            continue;
        }
        drawn += 1;
        let (px, py, pz) = (dot_f(&u, &x), dot_f(&u, &y), dot_f(&u, &z));
        if pz < px.min(py) || pz > px.max(py) {
            separated += 1;
        }
    }
    Ok(separated as f64 / samples as f64)
}

/// Parses a CSV point file: one point per line, entries are decimals or
/// `p/q`; the first point fixes the dimension.
pub fn parse_point_csv(text: &str) -> Result<(usize, Vec<Point>)> {
    let mut dim = None;
    let mut points = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let point = line
            .split(',')
            .map(|field| {
                parse_rational(field).ok_or_else(|| Error::Parse {
                    line: lineno + 1,
                    message: format!("invalid number `{}`", field.trim()),
                })
            })
            .collect::<Result<Point>>()?;
        let expected = *dim.get_or_insert(point.len());
        if point.len() != expected {
            return Err(Error::Parse {
                line: lineno + 1,
                message: format!("point has dimension {}, expected {expected}", point.len()),
            });
        }
        points.push(point);
    }
    Ok((dim.unwrap_or(0), points))
}
