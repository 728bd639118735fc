//! Axis-aligned cuboid regions, axis-division policies and the Fibonacci
//! direction sampler used to aim cameras from a region center.

use std::f64::consts::PI;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::GeometryError;

/// A 3-vector in meters (positions) or dimensionless (directions).
pub type Vec3 = [f64; 3];

pub(crate) fn dot(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub(crate) fn sub(a: Vec3, b: Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn norm(a: Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// One of the three coordinate axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X = 0,
    Y = 1,
    Z = 2,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Axis-aligned cuboid given by its two extreme corners.
///
/// Corners are stored directly (rather than center plus half extent) so that
/// midpoint splits are exactly representable and children tile the parent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Region {
    pub min: Vec3,
    pub max: Vec3,
}

impl Region {
    pub fn new(min: Vec3, max: Vec3) -> Result<Self, GeometryError> {
        let region = Region { min, max };
        region.validate()?;
        Ok(region)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        for axis in 0..3 {
            if !self.min[axis].is_finite() || !self.max[axis].is_finite() {
                return Err(GeometryError::NonFiniteCorner);
            }
            if self.min[axis] > self.max[axis] {
                return Err(GeometryError::InvertedCorners { axis });
            }
        }
        Ok(())
    }

    /// Componentwise midpoint; this is where the camera is placed.
    pub fn center(&self) -> Vec3 {
        [
            0.5 * (self.min[0] + self.max[0]),
            0.5 * (self.min[1] + self.max[1]),
            0.5 * (self.min[2] + self.max[2]),
        ]
    }

    /// Edge lengths `max - min`.
    pub fn lengths(&self) -> Vec3 {
        sub(self.max, self.min)
    }

    pub fn volume(&self) -> f64 {
        let l = self.lengths();
        l[0] * l[1] * l[2]
    }

    /// Closed containment test.
    pub fn contains(&self, p: Vec3) -> bool {
        (0..3).all(|a| p[a] >= self.min[a] && p[a] <= self.max[a])
    }

    /// Splits at the midpoint of `axis`, returning `(lower, upper)`.
    ///
    /// Fails when the midpoint is not strictly inside the edge, which covers
    /// both zero-length axes and edges already at floating point resolution.
    pub fn split(&self, axis: Axis) -> Result<(Region, Region), GeometryError> {
        let a = axis.index();
        let mid = 0.5 * (self.min[a] + self.max[a]);
        if !(mid > self.min[a] && mid < self.max[a]) {
            return Err(GeometryError::Unsplittable { axis: a });
        }
        let mut lower = *self;
        let mut upper = *self;
        lower.max[a] = mid;
        upper.min[a] = mid;
        Ok((lower, upper))
    }

    fn splittable(&self, axis: Axis) -> bool {
        let a = axis.index();
        let mid = 0.5 * (self.min[a] + self.max[a]);
        mid > self.min[a] && mid < self.max[a]
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]x[{}, {}]x[{}, {}]",
            self.min[0], self.max[0], self.min[1], self.max[1], self.min[2], self.max[2]
        )
    }
}

/// Unit view direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec3", into = "Vec3")]
pub struct Direction(Vec3);

impl Direction {
    pub const UP: Direction = Direction([0.0, 1.0, 0.0]);

    /// Accepts vectors whose norm is within `1e-6` of one. Vectors already
    /// unit to rounding are stored untouched, the rest are renormalized.
    pub fn new(v: Vec3) -> Result<Self, GeometryError> {
        let n = norm(v);
        if !n.is_finite() || (n - 1.0).abs() > 1e-6 {
            return Err(GeometryError::NotUnit { norm: n });
        }
        if (n - 1.0).abs() <= 1e-12 {
            return Ok(Direction(v));
        }
        Ok(Direction([v[0] / n, v[1] / n, v[2] / n]))
    }

    /// Normalizes an arbitrary non-zero vector.
    pub fn normalize(v: Vec3) -> Result<Self, GeometryError> {
        let n = norm(v);
        if !(n.is_finite() && n > 0.0) {
            return Err(GeometryError::NotUnit { norm: n });
        }
        Ok(Direction([v[0] / n, v[1] / n, v[2] / n]))
    }

    pub(crate) fn from_raw(v: Vec3) -> Self {
        Direction(v)
    }

    pub fn as_array(&self) -> Vec3 {
        self.0
    }
}

impl TryFrom<Vec3> for Direction {
    type Error = GeometryError;

    fn try_from(v: Vec3) -> Result<Self, Self::Error> {
        Direction::new(v)
    }
}

impl From<Direction> for Vec3 {
    fn from(d: Direction) -> Vec3 {
        d.0
    }
}

pub const DEFAULT_FOV_DEGREES: f64 = 60.0;

/// Camera placement handed to a scorer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CameraPose {
    pub position: Vec3,
    pub direction: Direction,
    pub fov_degrees: f64,
}

impl CameraPose {
    pub fn new(position: Vec3, direction: Direction) -> Self {
        CameraPose {
            position,
            direction,
            fov_degrees: DEFAULT_FOV_DEGREES,
        }
    }

    pub fn with_fov(mut self, fov_degrees: f64) -> Result<Self, GeometryError> {
        if !(fov_degrees > 0.0 && fov_degrees < 180.0) {
            return Err(GeometryError::InvalidFov(fov_degrees));
        }
        self.fov_degrees = fov_degrees;
        Ok(self)
    }
}

/// Rule for picking the axis along which a region is halved.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum DivisionPolicy {
    /// Sample the axis from a softmax over normalized edge lengths.
    #[default]
    Softmax,
    /// Always split the longest edge, ties resolved x before y before z.
    Argmax,
}

impl fmt::Display for DivisionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisionPolicy::Softmax => f.write_str("softmax"),
            DivisionPolicy::Argmax => f.write_str("argmax"),
        }
    }
}

impl std::str::FromStr for DivisionPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "softmax" => Ok(DivisionPolicy::Softmax),
            "argmax" => Ok(DivisionPolicy::Argmax),
            other => Err(format!("unknown division policy `{other}`")),
        }
    }
}

/// Softmax of the edge lengths scaled by their Euclidean norm.
///
/// `pi_i = exp(L_i / |L|) / sum_j exp(L_j / |L|)`. Zero-length axes still get
/// a positive weight here; [`divide`] excludes them afterwards.
pub fn softmax_axis_probs(lengths: Vec3) -> Result<Vec3, GeometryError> {
    let n = norm(lengths);
    if !(n > 0.0) || !n.is_finite() {
        return Err(GeometryError::NoDivisibleAxis);
    }
    let w = lengths.map(|l| (l / n).exp());
    let total: f64 = w.iter().sum();
    Ok(w.map(|x| x / total))
}

/// Chooses the split axis for `region` under `policy`.
///
/// Only axes that can actually be halved are candidates. For the softmax
/// policy the probabilities of the remaining axes are renormalized.
pub fn choose_axis<R: Rng + ?Sized>(
    region: &Region,
    policy: DivisionPolicy,
    rng: &mut R,
) -> Result<Axis, GeometryError> {
    let lengths = region.lengths();
    let candidates: Vec<Axis> = Axis::ALL
        .into_iter()
        .filter(|&a| lengths[a.index()] > 0.0 && region.splittable(a))
        .collect();
    if candidates.is_empty() {
        return Err(GeometryError::NoDivisibleAxis);
    }
    match policy {
        DivisionPolicy::Argmax => {
            let mut best = candidates[0];
            for &a in &candidates[1..] {
                if lengths[a.index()] > lengths[best.index()] {
                    best = a;
                }
            }
            Ok(best)
        }
        DivisionPolicy::Softmax => {
            let probs = softmax_axis_probs(lengths)?;
            let total: f64 = candidates.iter().map(|a| probs[a.index()]).sum();
            let mut u = rng.gen::<f64>() * total;
            for &a in &candidates {
                let p = probs[a.index()];
                if u < p {
                    return Ok(a);
                }
                u -= p;
            }
            // u landed on the rounding sliver at the top end
            Ok(*candidates.last().expect("non-empty"))
        }
    }
}

/// Halves `region` along the axis chosen by `policy`.
///
/// Returns `(lower, upper)` together with the axis; the lower half becomes
/// child `2i` and the upper half child `2i + 1`.
pub fn divide<R: Rng + ?Sized>(
    region: &Region,
    policy: DivisionPolicy,
    rng: &mut R,
) -> Result<(Region, Region, Axis), GeometryError> {
    let axis = choose_axis(region, policy, rng)?;
    let (lower, upper) = region.split(axis)?;
    Ok((lower, upper, axis))
}

/// Deterministic near-uniform directions on the unit sphere.
///
/// For `k = 0..n`: `y = 1 - 2k/(n-1)`, `r = sqrt(1 - y^2)`,
/// `theta = (1 + sqrt 5) * pi * k`, `x = r cos theta`, `z = r sin theta`.
/// Note the angle increment is `(1 + sqrt 5) pi`, not the textbook golden
/// angle `2 pi (2 - phi)`. A single direction is `(0, 1, 0)`.
pub fn fibonacci_directions(n_dir: usize) -> Result<Vec<Direction>, GeometryError> {
    match n_dir {
        0 => Err(GeometryError::TooFewDirections(0)),
        1 => Ok(vec![Direction::UP]),
        n => {
            let increment = (1.0 + 5f64.sqrt()) * PI;
            let last = (n - 1) as f64;
            Ok((0..n)
                .map(|k| {
                    let y = if k == 0 {
                        1.0
                    } else if k == n - 1 {
                        -1.0
                    } else {
                        1.0 - 2.0 * k as f64 / last
                    };
                    let r = (1.0 - y * y).max(0.0).sqrt();
                    let theta = increment * k as f64;
                    let (s, c) = theta.sin_cos();
                    // + 0.0 turns the poles' -0.0 into 0.0
                    Direction::from_raw([r * c + 0.0, y, r * s + 0.0])
                })
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cube(l: Vec3) -> Region {
        Region::new([0.0; 3], l).unwrap()
    }

    #[test]
    fn centers() {
        assert_eq!(cube([2.0, 2.0, 2.0]).center(), [1.0, 1.0, 1.0]);
        let flat = Region::new([5.0, 0.0, 0.0], [5.0, 2.0, 2.0]).unwrap();
        assert_eq!(flat.center()[0], 5.0);
        let line = Region::new([-10.0, 0.0, 0.0], [10.0, 0.0, 0.0]).unwrap();
        assert_eq!(line.center(), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn rejects_inverted_corners() {
        assert!(Region::new([1.0, 0.0, 0.0], [0.0, 1.0, 1.0]).is_err());
        assert!(Region::new([0.0, 0.0, f64::NAN], [1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn softmax_values() {
        let p = softmax_axis_probs([1.0, 1.0, 1.0]).unwrap();
        for v in p {
            assert!((v - 1.0 / 3.0).abs() < 1e-15);
        }
        // exp(0.6), exp(0.8), exp(0) normalized
        let p = softmax_axis_probs([3.0, 4.0, 0.0]).unwrap();
        let expect = [0.360_982_891, 0.440_905_498, 0.198_111_611];
        for i in 0..3 {
            assert!((p[i] - expect[i]).abs() < 1e-9, "{p:?}");
        }
        let p = softmax_axis_probs([2.0, 0.0, 0.0]).unwrap();
        let e = std::f64::consts::E;
        assert!((p[0] - e / (e + 2.0)).abs() < 1e-15);
        assert!((p[0] - 0.5761).abs() < 1e-4);
        assert!((p[1] - 0.2119).abs() < 1e-4);
        assert!(softmax_axis_probs([0.0; 3]).is_err());
    }

    #[test]
    fn zero_axes_are_never_divided() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let r = cube([2.0, 0.0, 0.0]);
        for _ in 0..200 {
            let (_, _, axis) = divide(&r, DivisionPolicy::Softmax, &mut rng).unwrap();
            assert_eq!(axis, Axis::X);
        }
        assert!(matches!(
            divide(&cube([0.0; 3]), DivisionPolicy::Argmax, &mut rng),
            Err(GeometryError::NoDivisibleAxis)
        ));
    }

    #[test]
    fn argmax_splits_longest_then_x() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let (lo, hi, axis) = divide(&cube([4.0, 2.0, 2.0]), DivisionPolicy::Argmax, &mut rng).unwrap();
        assert_eq!(axis, Axis::X);
        assert_eq!(lo, Region::new([0.0; 3], [2.0, 2.0, 2.0]).unwrap());
        assert_eq!(hi, Region::new([2.0, 0.0, 0.0], [4.0, 2.0, 2.0]).unwrap());
        let (_, _, axis) = divide(&cube([2.0, 2.0, 2.0]), DivisionPolicy::Argmax, &mut rng).unwrap();
        assert_eq!(axis, Axis::X);
        let (_, _, axis) = divide(&cube([1.0, 3.0, 3.0]), DivisionPolicy::Argmax, &mut rng).unwrap();
        assert_eq!(axis, Axis::Y);
    }

    #[test]
    fn softmax_frequencies_on_cube() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let r = cube([1.0, 1.0, 1.0]);
        let mut counts = [0usize; 3];
        let draws = 30_000;
        for _ in 0..draws {
            counts[choose_axis(&r, DivisionPolicy::Softmax, &mut rng).unwrap().index()] += 1;
        }
        for c in counts {
            let f = c as f64 / draws as f64;
            assert!((f - 1.0 / 3.0).abs() < 0.02, "{counts:?}");
        }
    }

    #[test]
    fn fibonacci_endpoints_and_spacing() {
        let dirs = fibonacci_directions(15).unwrap();
        assert_eq!(dirs.len(), 15);
        assert_eq!(dirs[0].as_array(), [0.0, 1.0, 0.0]);
        let last = dirs[14].as_array();
        assert_eq!(last[1], -1.0);
        assert!(last[0].abs() == 0.0 && last[2].abs() == 0.0);
        for (k, d) in dirs.iter().enumerate() {
            let v = d.as_array();
            assert!((norm(v) - 1.0).abs() < 1e-9);
            assert!((v[1] - (1.0 - k as f64 / 7.0)).abs() < 1e-12);
        }
        assert_eq!(fibonacci_directions(1).unwrap(), vec![Direction::UP]);
        assert!(fibonacci_directions(0).is_err());
        assert_eq!(fibonacci_directions(30).unwrap(), fibonacci_directions(30).unwrap());
    }

    #[test]
    fn direction_validation() {
        assert!(Direction::new([0.0, 0.0, 1.0]).is_ok());
        assert!(Direction::new([0.0, 0.0, 2.0]).is_err());
        let d = Direction::normalize([3.0, 0.0, 4.0]).unwrap();
        assert!((d.as_array()[0] - 0.6).abs() < 1e-15);
        let pose = CameraPose::new([0.0; 3], d);
        assert_eq!(pose.fov_degrees, 60.0);
        assert!(pose.with_fov(180.0).is_err());
    }
}
