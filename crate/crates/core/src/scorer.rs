//! Black-box pose scorers, the max-over-directions region reward and a
//! brute-force grid oracle for ground truth on synthetic scenes.

use std::path::Path;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, ScoreError};
use crate::geometry::{dot, fibonacci_directions, norm, sub, CameraPose, Direction, Region, Vec3};

/// Maps a batch of camera poses to scores in `[0, 1]`.
///
/// Implementations must return exactly one score per pose and be
/// deterministic for identical poses.
pub trait Scorer: Send + Sync {
    fn score_batch(&self, poses: &[CameraPose]) -> Result<Vec<f64>, ScoreError>;
}

impl<S: Scorer + ?Sized> Scorer for &S {
    fn score_batch(&self, poses: &[CameraPose]) -> Result<Vec<f64>, ScoreError> {
        (**self).score_batch(poses)
    }
}

impl<S: Scorer + ?Sized> Scorer for Box<S> {
    fn score_batch(&self, poses: &[CameraPose]) -> Result<Vec<f64>, ScoreError> {
        (**self).score_batch(poses)
    }
}

impl<S: Scorer + ?Sized> Scorer for std::sync::Arc<S> {
    fn score_batch(&self, poses: &[CameraPose]) -> Result<Vec<f64>, ScoreError> {
        (**self).score_batch(poses)
    }
}

/// Same score for every pose.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantScorer(pub f64);

impl Scorer for ConstantScorer {
    fn score_batch(&self, poses: &[CameraPose]) -> Result<Vec<f64>, ScoreError> {
        Ok(vec![self.0; poses.len()])
    }
}

/// Wraps a scorer and records the size of every batch it receives.
#[derive(Debug, Default)]
pub struct BatchRecorder<S> {
    inner: S,
    batches: Mutex<Vec<usize>>,
    poses: AtomicU64,
}

impl<S: Scorer> BatchRecorder<S> {
    pub fn new(inner: S) -> Self {
        BatchRecorder {
            inner,
            batches: Mutex::new(Vec::new()),
            poses: AtomicU64::new(0),
        }
    }

    pub fn batch_sizes(&self) -> Vec<usize> {
        self.batches.lock().expect("poisoned").clone()
    }

    pub fn total_poses(&self) -> u64 {
        self.poses.load(Ordering::Relaxed)
    }
}

impl<S: Scorer> Scorer for BatchRecorder<S> {
    fn score_batch(&self, poses: &[CameraPose]) -> Result<Vec<f64>, ScoreError> {
        self.batches.lock().expect("poisoned").push(poses.len());
        self.poses.fetch_add(poses.len() as u64, Ordering::Relaxed);
        self.inner.score_batch(poses)
    }
}

/// Gaussian attraction with an optional view-direction lobe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Hotspot {
    pub center: Vec3,
    pub sigma: f64,
    pub amplitude: f64,
    pub kappa: f64,
    /// When set, the lobe rewards looking along this axis instead of
    /// looking at the hotspot center.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preferred_axis: Option<Direction>,
}

impl Hotspot {
    /// `amplitude * exp(-|p - c|^2 / 2 sigma^2) * g(d)` with
    /// `g(d) = max(0, d . a)^kappa`, `a` the lobe axis, and `g = 1` at the
    /// center itself or when `kappa = 0`.
    pub fn score(&self, pose: &CameraPose) -> f64 {
        let offset = sub(self.center, pose.position);
        let dist2 = dot(offset, offset);
        let radial = (-dist2 / (2.0 * self.sigma * self.sigma)).exp();
        let lobe = if self.kappa == 0.0 || dist2 == 0.0 {
            1.0
        } else {
            let axis = match self.preferred_axis {
                Some(a) => a.as_array(),
                None => {
                    let n = norm(offset);
                    offset.map(|v| v / n)
                }
            };
            dot(pose.direction.as_array(), axis).max(0.0).powf(self.kappa)
        };
        self.amplitude * radial * lobe
    }
}

/// A synthetic scene: search bounds plus a set of hotspots.
///
/// JSON form: `{"bounds": {"min": [..], "max": [..]}, "hotspots": [{"center":
/// [..], "sigma": s, "amplitude": a, "kappa": k, "preferred_axis": [..]?}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntheticScene {
    pub bounds: Region,
    pub hotspots: Vec<Hotspot>,
}

impl SyntheticScene {
    pub fn new(bounds: Region, hotspots: Vec<Hotspot>) -> Result<Self, ConfigError> {
        let scene = SyntheticScene { bounds, hotspots };
        scene.validate()?;
        Ok(scene)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.bounds.validate()?;
        if self.hotspots.is_empty() {
            return Err(ConfigError::Scene("at least one hotspot required".into()));
        }
        for (k, h) in self.hotspots.iter().enumerate() {
            if !self.bounds.contains(h.center) {
                return Err(ConfigError::Scene(format!("hotspot {k} center outside bounds")));
            }
            if !(h.sigma > 0.0 && h.sigma.is_finite()) {
                return Err(ConfigError::Scene(format!("hotspot {k} sigma must be positive")));
            }
            if !(h.amplitude > 0.0 && h.amplitude <= 1.0) {
                return Err(ConfigError::Scene(format!("hotspot {k} amplitude must lie in (0, 1]")));
            }
            if !(h.kappa >= 0.0 && h.kappa.is_finite()) {
                return Err(ConfigError::Scene(format!("hotspot {k} kappa must be non-negative")));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let scene: SyntheticScene = serde_json::from_str(text).map_err(|source| ConfigError::Json {
            path: "<inline>".into(),
            source,
        })?;
        scene.validate()?;
        Ok(scene)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let display = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: display.clone(),
            source,
        })?;
        let scene: SyntheticScene =
            serde_json::from_str(&text).map_err(|source| ConfigError::Json { path: display, source })?;
        scene.validate()?;
        Ok(scene)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scene serializes")
    }

    /// Max over hotspots, clamped to `[0, 1]`.
    pub fn score(&self, pose: &CameraPose) -> f64 {
        self.hotspots
            .iter()
            .map(|h| h.score(pose))
            .fold(0.0f64, f64::max)
            .clamp(0.0, 1.0)
    }
}

/// Batches at least this long are scored on the rayon pool.
const PARALLEL_BATCH: usize = 256;

impl Scorer for SyntheticScene {
    fn score_batch(&self, poses: &[CameraPose]) -> Result<Vec<f64>, ScoreError> {
        if poses.len() >= PARALLEL_BATCH {
            return Ok(poses.par_iter().map(|p| self.score(p)).collect());
        }
        Ok(poses.iter().map(|p| self.score(p)).collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bump {
    pub center: f64,
    pub weight: f64,
    pub sigma: f64,
}

/// Direction-independent score on an interval of the x axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scene1D {
    pub a: f64,
    pub b: f64,
    pub bumps: Vec<Bump>,
}

impl Default for Scene1D {
    /// Three bumps on `[-10, 10]` at -6, -1 and 4 with weights 0.5, 0.7 and
    /// 1.0, all with width 0.8.
    fn default() -> Self {
        let bump = |center, weight| Bump { center, weight, sigma: 0.8 };
        Scene1D {
            a: -10.0,
            b: 10.0,
            bumps: vec![bump(-6.0, 0.5), bump(-1.0, 0.7), bump(4.0, 1.0)],
        }
    }
}

impl Scene1D {
    pub fn new(a: f64, b: f64, bumps: Vec<Bump>) -> Result<Self, ConfigError> {
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(ConfigError::Scene("1D interval needs a < b".into()));
        }
        if bumps.is_empty() || bumps.iter().any(|p| !(p.weight > 0.0 && p.sigma > 0.0)) {
            return Err(ConfigError::Scene("1D scene needs bumps with positive weight and width".into()));
        }
        Ok(Scene1D { a, b, bumps })
    }

    /// The degenerate cuboid `[a, b] x [0, 0] x [0, 0]`.
    pub fn region(&self) -> Region {
        Region {
            min: [self.a, 0.0, 0.0],
            max: [self.b, 0.0, 0.0],
        }
    }

    /// Sum of bumps divided by the largest weight, clamped to `[0, 1]`.
    pub fn score_at(&self, x: f64) -> Result<f64, ScoreError> {
        if !(x >= self.a && x <= self.b) {
            return Err(ScoreError::OutOfDomain([x, 0.0, 0.0]));
        }
        let max_w = self.bumps.iter().map(|p| p.weight).fold(0.0, f64::max);
        let sum: f64 = self
            .bumps
            .iter()
            .map(|p| p.weight * (-(x - p.center).powi(2) / (2.0 * p.sigma * p.sigma)).exp())
            .sum();
        Ok((sum / max_w).clamp(0.0, 1.0))
    }
}

impl Scorer for Scene1D {
    fn score_batch(&self, poses: &[CameraPose]) -> Result<Vec<f64>, ScoreError> {
        poses.iter().map(|p| self.score_at(p.position[0])).collect()
    }
}

/// Region reward: the best score over all sampled view directions from
/// `center`, evaluated as a single batch. Ties go to the lowest index.
///
/// Scores outside `[0, 1]` and batches of the wrong length are contract
/// violations and reported as errors.
pub fn region_reward<S: Scorer + ?Sized>(
    center: Vec3,
    directions: &[Direction],
    scorer: &S,
) -> Result<(f64, usize), ScoreError> {
    if directions.is_empty() {
        return Err(ScoreError::EmptyBatch);
    }
    let poses: Vec<CameraPose> = directions.iter().map(|&d| CameraPose::new(center, d)).collect();
    let scores = scorer.score_batch(&poses)?;
    if scores.len() != poses.len() {
        return Err(ScoreError::LengthMismatch {
            expected: poses.len(),
            got: scores.len(),
        });
    }
    let mut best = (f64::NEG_INFINITY, 0usize);
    for (index, &value) in scores.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) {
            return Err(ScoreError::OutOfRange { index, value });
        }
        if value > best.0 {
            best = (value, index);
        }
    }
    Ok(best)
}

/// Outcome of a brute-force grid search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleResult {
    pub best_score: f64,
    pub best_position: Vec3,
    pub best_direction: usize,
    /// Cells per axis of the grid that produced the best point.
    pub best_resolution: usize,
    /// Grid cell centered on `best_position`.
    pub best_cell: Region,
    /// Number of grid points evaluated.
    pub evaluated: usize,
}

fn axis_points(lo: f64, hi: f64, resolution: usize) -> Vec<f64> {
    if hi == lo {
        return vec![lo];
    }
    let step = (hi - lo) / resolution as f64;
    (0..resolution).map(|j| lo + (j as f64 + 0.5) * step).collect()
}

fn grid_cell(bounds: &Region, resolution: usize, index: [usize; 3]) -> Region {
    let mut cell = *bounds;
    for (i, &j) in index.iter().enumerate() {
        let (lo, hi) = (bounds.min[i], bounds.max[i]);
        if hi > lo {
            let step = (hi - lo) / resolution as f64;
            cell.min[i] = lo + j as f64 * step;
            cell.max[i] = lo + (j + 1) as f64 * step;
        }
    }
    cell
}

/// Exhaustive search over the cell centers of a uniform grid.
///
/// Every cell center of the `resolution`-per-axis grid over `bounds` is
/// scored with [`region_reward`]; zero-length axes contribute their single
/// coordinate. Cell centers of halved grids are not nested, so the grids
/// for `resolution / 2`, `resolution / 4`, ... (while the resolution stays
/// even) are searched as well, which makes the result non-decreasing when
/// the resolution doubles.
pub fn grid_oracle<S: Scorer + ?Sized>(
    scorer: &S,
    bounds: &Region,
    resolution: usize,
    n_dir: usize,
) -> Result<OracleResult, ScoreError> {
    if resolution < 2 {
        return Err(ScoreError::InvalidQuery(format!("grid resolution {resolution} below 2")));
    }
    let dirs = fibonacci_directions(n_dir).map_err(|e| ScoreError::InvalidQuery(e.to_string()))?;
    let mut levels = vec![resolution];
    let mut r = resolution;
    while r.is_multiple_of(2) && r / 2 >= 2 {
        r /= 2;
        levels.push(r);
    }
    let mut best: Option<OracleResult> = None;
    let mut evaluated = 0;
    // coarsest first so that exact ties keep the coarse-grid point
    for &res in levels.iter().rev() {
        let xs = axis_points(bounds.min[0], bounds.max[0], res);
        let ys = axis_points(bounds.min[1], bounds.max[1], res);
        let zs = axis_points(bounds.min[2], bounds.max[2], res);
        let total = xs.len() * ys.len() * zs.len();
        evaluated += total;
        let level_best = (0..total)
            .into_par_iter()
            .map(|k| {
                let (ix, rest) = (k / (ys.len() * zs.len()), k % (ys.len() * zs.len()));
                let (iy, iz) = (rest / zs.len(), rest % zs.len());
                let p = [xs[ix], ys[iy], zs[iz]];
                region_reward(p, &dirs, scorer).map(|(s, d)| (s, k, p, d, [ix, iy, iz]))
            })
            .try_reduce_with(|a, b| Ok(if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a }))
            .expect("grid is non-empty")?;
        let (score, _, position, direction, index) = level_best;
        if best.is_none_or(|b| score > b.best_score) {
            best = Some(OracleResult {
                best_score: score,
                best_position: position,
                best_direction: direction,
                best_resolution: res,
                best_cell: grid_cell(bounds, res, index),
                evaluated: 0,
            });
        }
    }
    let mut out = best.expect("at least one level");
    out.evaluated = evaluated;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::fibonacci_directions;

    fn hotspot(center: Vec3, sigma: f64, amplitude: f64, kappa: f64) -> Hotspot {
        Hotspot { center, sigma, amplitude, kappa, preferred_axis: None }
    }

    fn cube_scene(hotspots: Vec<Hotspot>) -> SyntheticScene {
        SyntheticScene::new(Region::new([0.0; 3], [8.0, 8.0, 8.0]).unwrap(), hotspots).unwrap()
    }

    #[test]
    fn score_at_center_ignores_direction() {
        let scene = cube_scene(vec![hotspot([2.0, 2.0, 2.0], 1.0, 1.0, 3.0)]);
        for d in fibonacci_directions(15).unwrap() {
            assert_eq!(scene.score(&CameraPose::new([2.0, 2.0, 2.0], d)), 1.0);
        }
    }

    #[test]
    fn isotropic_hotspot_is_direction_free() {
        let scene = cube_scene(vec![hotspot([2.0, 2.0, 2.0], 1.0, 0.9, 0.0)]);
        let dirs = fibonacci_directions(15).unwrap();
        let first = scene.score(&CameraPose::new([3.0, 1.0, 2.5], dirs[0]));
        for d in dirs {
            assert_eq!(scene.score(&CameraPose::new([3.0, 1.0, 2.5], d)), first);
        }
    }

    #[test]
    fn lobe_arithmetic() {
        let scene = cube_scene(vec![hotspot([2.0, 2.0, 2.0], 1.0, 0.8, 1.0)]);
        let toward = Direction::new([1.0, 0.0, 0.0]).unwrap();
        let s = scene.score(&CameraPose::new([1.0, 2.0, 2.0], toward));
        // 0.8 * exp(-0.5), mpmath: 0.485224527770106738883
        assert!((s - 0.485_224_527_770_106_7).abs() < 1e-15, "{s}");
        let away = Direction::new([-1.0, 0.0, 0.0]).unwrap();
        assert_eq!(scene.score(&CameraPose::new([1.0, 2.0, 2.0], away)), 0.0);
    }

    #[test]
    fn preferred_axis_replaces_center_lobe() {
        let mut h = hotspot([2.0, 2.0, 2.0], 1.0, 1.0, 2.0);
        h.preferred_axis = Some(Direction::new([0.0, 0.0, 1.0]).unwrap());
        let scene = cube_scene(vec![h]);
        let up_z = Direction::new([0.0, 0.0, 1.0]).unwrap();
        let toward = Direction::new([1.0, 0.0, 0.0]).unwrap();
        let p = [1.0, 2.0, 2.0];
        assert!((scene.score(&CameraPose::new(p, up_z)) - (-0.5f64).exp()).abs() < 1e-15);
        assert_eq!(scene.score(&CameraPose::new(p, toward)), 0.0);
    }

    #[test]
    fn region_reward_max_and_ties() {
        let dirs = fibonacci_directions(15).unwrap();
        assert_eq!(region_reward([0.0; 3], &dirs, &ConstantScorer(0.3)).unwrap(), (0.3, 0));

        struct Fixed(Vec<f64>);
        impl Scorer for Fixed {
            fn score_batch(&self, poses: &[CameraPose]) -> Result<Vec<f64>, ScoreError> {
                let _ = poses;
                Ok(self.0.clone())
            }
        }
        let three = fibonacci_directions(3).unwrap();
        assert_eq!(region_reward([0.0; 3], &three, &Fixed(vec![0.1, 0.9, 0.4])).unwrap(), (0.9, 1));
        assert_eq!(
            region_reward([0.0; 3], &three, &Fixed(vec![0.1, 1.2, 0.4])),
            Err(ScoreError::OutOfRange { index: 1, value: 1.2 })
        );
        assert_eq!(
            region_reward([0.0; 3], &three, &Fixed(vec![0.1, 0.2])),
            Err(ScoreError::LengthMismatch { expected: 3, got: 2 })
        );
        assert_eq!(region_reward([0.0; 3], &[], &ConstantScorer(0.1)), Err(ScoreError::EmptyBatch));
    }

    #[test]
    fn region_reward_uses_one_batch() {
        let rec = BatchRecorder::new(ConstantScorer(0.5));
        let dirs = fibonacci_directions(30).unwrap();
        region_reward([1.0; 3], &dirs, &rec).unwrap();
        assert_eq!(rec.batch_sizes(), vec![30]);
    }

    #[test]
    fn scene_1d_values() {
        let one = Scene1D::new(-10.0, 10.0, vec![Bump { center: 0.0, weight: 1.0, sigma: 1.0 }]).unwrap();
        assert_eq!(one.score_at(0.0).unwrap(), 1.0);
        let sym = Scene1D::new(
            -10.0,
            10.0,
            vec![
                Bump { center: -5.0, weight: 0.6, sigma: 1.0 },
                Bump { center: 5.0, weight: 0.6, sigma: 1.0 },
            ],
        )
        .unwrap();
        assert_eq!(sym.score_at(5.0).unwrap(), sym.score_at(-5.0).unwrap());
        assert!(one.score_at(10.5).is_err());
        assert!(Scene1D::new(1.0, 1.0, one.bumps.clone()).is_err());
    }

    #[test]
    fn default_1d_argmax_on_dense_grid() {
        let scene = Scene1D::default();
        let n = 200_001;
        let (mut best_x, mut best) = (0.0, -1.0);
        for k in 0..n {
            let x = -10.0 + 20.0 * k as f64 / (n - 1) as f64;
            let s = scene.score_at(x).unwrap();
            if s > best {
                best = s;
                best_x = x;
            }
        }
        assert!((best_x - 4.0).abs() < 1e-3, "{best_x}");
    }

    #[test]
    fn oracle_finds_symmetric_center() {
        let scene = cube_scene(vec![hotspot([4.0, 4.0, 4.0], 1.5, 1.0, 0.0)]);
        let res = grid_oracle(&scene, &scene.bounds, 16, 15).unwrap();
        for a in 0..3 {
            assert!((res.best_position[a] - 4.0).abs() <= 8.0 / 16.0);
        }
    }

    #[test]
    fn oracle_exact_hit_and_dominance() {
        // resolution 8 on [0, 8]: cell centers at 0.5, 1.5, ...
        let scene = cube_scene(vec![
            hotspot([1.5, 2.5, 3.5], 0.7, 0.9, 1.0),
            hotspot([6.5, 6.5, 0.5], 0.7, 0.5, 0.0),
        ]);
        let res = grid_oracle(&scene, &scene.bounds, 8, 15).unwrap();
        assert_eq!(res.best_score, 0.9);
        assert_eq!(res.best_position, [1.5, 2.5, 3.5]);
        assert_eq!(res.best_resolution, 8);
        assert_eq!(res.best_cell, Region::new([1.0, 2.0, 3.0], [2.0, 3.0, 4.0]).unwrap());
        let single = cube_scene(vec![hotspot([4.5, 4.5, 4.5], 1.0, 1.0, 2.0)]);
        assert_eq!(grid_oracle(&single, &single.bounds, 8, 15).unwrap().best_score, 1.0);
        assert!(grid_oracle(&single, &single.bounds, 1, 15).is_err());
    }

    #[test]
    fn oracle_nondecreasing_under_doubling() {
        let scene = cube_scene(vec![hotspot([3.1, 5.3, 2.2], 0.9, 0.95, 1.5), hotspot([6.0, 1.0, 7.0], 1.2, 0.7, 0.0)]);
        let mut prev = 0.0;
        for res in [2, 4, 8, 16, 32] {
            let b = grid_oracle(&scene, &scene.bounds, res, 15).unwrap().best_score;
            assert!(b >= prev, "res {res}: {b} < {prev}");
            prev = b;
        }
    }

    #[test]
    fn scene_json_rejects_unknown_fields() {
        let ok = r#"{"bounds":{"min":[0,0,0],"max":[4,4,4]},"hotspots":[{"center":[1,1,1],"sigma":1,"amplitude":0.5,"kappa":0}]}"#;
        assert!(SyntheticScene::from_json(ok).is_ok());
        let extra = ok.replace("\"kappa\":0", "\"kappa\":0,\"color\":1");
        assert!(SyntheticScene::from_json(&extra).is_err());
        let outside = ok.replace("[1,1,1]", "[9,1,1]");
        assert!(SyntheticScene::from_json(&outside).is_err());
        let empty = r#"{"bounds":{"min":[0,0,0],"max":[4,4,4]},"hotspots":[]}"#;
        assert!(SyntheticScene::from_json(empty).is_err());
    }
}
