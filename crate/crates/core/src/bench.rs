//! Random baseline, experiment matrix runner, ablations and CSV output.
//!
//! A bench run is the cross product of scenes, explorer variants and seeds.
//! Runs are independent and execute in parallel; results are merged back in
//! configuration order so the CSV output is byte-stable for a given config.

use std::io::Write;
use std::path::{Path, PathBuf};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, ExploreError, ParamError};
use crate::explorer::{self, ExplorationLog};
use crate::geometry::{fibonacci_directions, DivisionPolicy, Region};
use crate::scorer::{region_reward, Scorer, SyntheticScene};
use crate::tree::{stream_rng, DepthLimit, HooParams, Variant};

const RANDOM_STREAM: u64 = 3;

/// Uniform random placement baseline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomExplorerParams {
    pub horizon: usize,
    pub n_dir: usize,
    pub seed: u64,
    pub bounds: Region,
}

/// Draws camera positions uniformly in the bounds and scores each with the
/// same direction fan and max-over-directions reward as the tree explorer.
pub fn random_explore<S: Scorer + ?Sized>(
    params: RandomExplorerParams,
    scorer: &S,
) -> Result<ExplorationLog, ExploreError> {
    if params.horizon == 0 {
        return Err(ParamError::Horizon.into());
    }
    params.bounds.validate()?;
    let dirs = fibonacci_directions(params.n_dir)?;
    let mut rng = stream_rng(params.seed, RANDOM_STREAM);
    let lengths = params.bounds.lengths();
    let mut log = ExplorationLog { complete: true, ..Default::default() };
    for _ in 0..params.horizon {
        let p: [f64; 3] = std::array::from_fn(|a| params.bounds.min[a] + rng.gen::<f64>() * lengths[a]);
        match region_reward(p, &dirs, scorer) {
            Ok((reward, dir)) => {
                log.push(None, reward, p, dir);
            }
            Err(e) => {
                log.complete = false;
                log.error = Some(e.to_string());
                break;
            }
        }
    }
    Ok(log)
}

fn default_horizon() -> usize {
    500
}

fn default_n_dir() -> usize {
    15
}

/// Tree explorer entry of a bench config; every field except `kind` is
/// optional and defaults to the standard parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HooSpec {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default = "default_horizon")]
    pub horizon: usize,
    #[serde(default = "default_n_dir")]
    pub n_dir: usize,
    #[serde(default = "HooSpec::default_c")]
    pub c: f64,
    #[serde(default = "HooSpec::default_nu1")]
    pub nu1: f64,
    #[serde(default = "HooSpec::default_rho")]
    pub rho: f64,
    #[serde(default)]
    pub depth_limit: DepthLimit,
    #[serde(default)]
    pub policy: DivisionPolicy,
    #[serde(default)]
    pub variant: Variant,
}

impl HooSpec {
    fn default_c() -> f64 {
        HooParams::default().c
    }

    fn default_nu1() -> f64 {
        HooParams::default().nu1
    }

    fn default_rho() -> f64 {
        HooParams::default().rho
    }

    pub fn from_params(params: &HooParams) -> Self {
        HooSpec {
            name: None,
            horizon: params.horizon,
            n_dir: params.n_dir,
            c: params.c,
            nu1: params.nu1,
            rho: params.rho,
            depth_limit: params.depth_limit,
            policy: params.policy,
            variant: params.variant,
        }
    }

    pub fn params(&self, seed: u64) -> HooParams {
        HooParams {
            c: self.c,
            nu1: self.nu1,
            rho: self.rho,
            horizon: self.horizon,
            n_dir: self.n_dir,
            depth_limit: self.depth_limit,
            policy: self.policy,
            variant: self.variant,
            seed,
        }
    }
}

impl Default for HooSpec {
    fn default() -> Self {
        HooSpec::from_params(&HooParams::default())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSpec {
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default = "default_horizon")]
    pub horizon: usize,
    #[serde(default = "default_n_dir")]
    pub n_dir: usize,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec { name: None, horizon: default_horizon(), n_dir: default_n_dir() }
    }
}

/// One explorer variant of a bench matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ExplorerSpec {
    Hoo(HooSpec),
    Random(RandomSpec),
}

impl ExplorerSpec {
    /// Name used in the `variant` CSV column: the configured name, or a
    /// descriptor listing every parameter.
    pub fn label(&self) -> String {
        match self {
            ExplorerSpec::Hoo(h) => h.name.clone().unwrap_or_else(|| h.params(0).descriptor()),
            ExplorerSpec::Random(r) => r
                .name
                .clone()
                .unwrap_or_else(|| format!("random:N={}:ndir={}", r.horizon, r.n_dir)),
        }
    }

    pub fn horizon(&self) -> usize {
        match self {
            ExplorerSpec::Hoo(h) => h.horizon,
            ExplorerSpec::Random(r) => r.horizon,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        match self {
            ExplorerSpec::Hoo(h) => {
                let p = h.params(0);
                p.validate()?;
                p.max_depth().map(|_| ())
            }
            ExplorerSpec::Random(r) => {
                if r.horizon == 0 {
                    Err(ParamError::Horizon)
                } else if r.n_dir == 0 {
                    Err(ParamError::NDir)
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Runs this variant on one scene with one seed.
    pub fn run<S: Scorer + ?Sized>(&self, scorer: &S, bounds: Region, seed: u64) -> Result<ExplorationLog, ExploreError> {
        match self {
            ExplorerSpec::Hoo(h) => explorer::run(h.params(seed), scorer, bounds),
            ExplorerSpec::Random(r) => random_explore(
                RandomExplorerParams { horizon: r.horizon, n_dir: r.n_dir, seed, bounds },
                scorer,
            ),
        }
    }
}

/// Bench configuration file.
///
/// Scene paths are resolved relative to the directory holding the config.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub scenes: Vec<PathBuf>,
    pub variants: Vec<ExplorerSpec>,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.scenes.is_empty() {
            return Err(ConfigError::Bench("at least one scene required".into()));
        }
        if self.seeds.is_empty() {
            return Err(ConfigError::Bench("at least one seed required".into()));
        }
        if self.variants.is_empty() {
            return Err(ConfigError::Bench("at least one variant required".into()));
        }
        for v in &self.variants {
            v.validate()?;
        }
        Ok(())
    }

    /// Parses and validates a config, resolving relative scene paths
    /// against `base`.
    pub fn from_json(text: &str, base: &Path) -> Result<Self, ConfigError> {
        let mut cfg: BenchConfig = serde_json::from_str(text).map_err(|source| ConfigError::Json {
            path: base.display().to_string(),
            source,
        })?;
        for s in &mut cfg.scenes {
            if s.is_relative() {
                *s = base.join(&*s);
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        Self::from_json(&text, base)
    }

    /// Loads every scene, named after its file stem.
    pub fn load_scenes(&self) -> Result<Vec<NamedScene>, ConfigError> {
        self.scenes
            .iter()
            .map(|p| {
                let name = p
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| p.display().to_string());
                Ok(NamedScene { name, scene: SyntheticScene::load(p)? })
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NamedScene {
    pub name: String,
    pub scene: SyntheticScene,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RunStatus {
    Ok,
    Aborted,
}

impl RunStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RunStatus::Ok => "ok",
            RunStatus::Aborted => "aborted",
        }
    }
}

/// One (scene, variant, seed) cell of the matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub scene: String,
    pub variant: String,
    pub seed: u64,
    pub status: RunStatus,
    pub log: ExplorationLog,
}

impl RunResult {
    pub fn final_max(&self) -> f64 {
        self.log.final_max()
    }

    pub fn final_mean(&self) -> f64 {
        self.log.final_mean()
    }
}

/// Mean and population standard deviation over a group of runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummaryRow {
    pub scene: String,
    pub variant: String,
    pub runs: usize,
    pub final_max_mean: f64,
    pub final_max_std: f64,
    pub final_mean_mean: f64,
    pub final_mean_std: f64,
}

/// Label used in the summary for the aggregate over all scenes.
pub const ALL_SCENES: &str = "all";

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchResult {
    /// Runs in configuration order: scene, then variant, then seed.
    pub runs: Vec<RunResult>,
    pub summary: Vec<SummaryRow>,
}

pub(crate) fn mean_std(values: &[f64]) -> (f64, f64) {
    if values.is_empty() {
        return (0.0, 0.0);
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

impl BenchResult {
    pub fn runs_for<'a>(&'a self, scene: &'a str, variant: &'a str) -> impl Iterator<Item = &'a RunResult> + 'a {
        self.runs.iter().filter(move |r| r.scene == scene && r.variant == variant)
    }

    pub fn summary_for(&self, scene: &str, variant: &str) -> Option<&SummaryRow> {
        self.summary.iter().find(|s| s.scene == scene && s.variant == variant)
    }

    fn summarize(runs: &[RunResult], scenes: &[String], variants: &[String]) -> Vec<SummaryRow> {
        let row = |scene: &str, variant: &str, group: Vec<&RunResult>| {
            let maxes: Vec<f64> = group.iter().map(|r| r.final_max()).collect();
            let means: Vec<f64> = group.iter().map(|r| r.final_mean()).collect();
            let (max_m, max_s) = mean_std(&maxes);
            let (mean_m, mean_s) = mean_std(&means);
            SummaryRow {
                scene: scene.to_string(),
                variant: variant.to_string(),
                runs: group.len(),
                final_max_mean: max_m,
                final_max_std: max_s,
                final_mean_mean: mean_m,
                final_mean_std: mean_s,
            }
        };
        let ok = |r: &&RunResult| r.status == RunStatus::Ok;
        let mut out = Vec::new();
        for scene in scenes {
            for variant in variants {
                let group = runs.iter().filter(|r| &r.scene == scene && &r.variant == variant).filter(ok).collect();
                out.push(row(scene, variant, group));
            }
        }
        for variant in variants {
            let group = runs.iter().filter(|r| &r.variant == variant).filter(ok).collect();
            out.push(row(ALL_SCENES, variant, group));
        }
        out
    }

    /// Long-format CSV: one row per iteration of every run.
    ///
    /// Columns: `scene,variant,seed,iteration,reward,cum_max,cum_mean,status,
    /// depth,index,x,y,z,direction`. Floats use the shortest decimal that
    /// round-trips. `depth` and `index` are empty for the random explorer.
    /// A run aborted before its first iteration gets a single row with empty
    /// numeric fields.
    pub fn write_long_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(LONG_HEADER)?;
        for run in &self.runs {
            write_log_rows(&mut w, &run.scene, &run.variant, run.seed, run.status, &run.log)?;
        }
        w.flush()?;
        Ok(())
    }

    /// Summary CSV, per (scene, variant) over seeds, then per variant over
    /// all scenes and seeds. Aborted runs are left out of the statistics.
    pub fn write_summary_csv<W: Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(SUMMARY_HEADER)?;
        for s in &self.summary {
            w.write_record([
                s.scene.clone(),
                s.variant.clone(),
                s.runs.to_string(),
                s.final_max_mean.to_string(),
                s.final_max_std.to_string(),
                s.final_mean_mean.to_string(),
                s.final_mean_std.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Writes `long.csv` and `summary.csv` into `dir`.
    pub fn write_to_dir(&self, dir: impl AsRef<Path>) -> std::io::Result<(PathBuf, PathBuf)> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir)?;
        let long = dir.join("long.csv");
        let summary = dir.join("summary.csv");
        self.write_long_csv(std::fs::File::create(&long)?).map_err(std::io::Error::other)?;
        self.write_summary_csv(std::fs::File::create(&summary)?).map_err(std::io::Error::other)?;
        Ok((long, summary))
    }
}

pub const LONG_HEADER: [&str; 14] = [
    "scene", "variant", "seed", "iteration", "reward", "cum_max", "cum_mean", "status", "depth", "index", "x", "y",
    "z", "direction",
];

pub const SUMMARY_HEADER: [&str; 7] = [
    "scene",
    "variant",
    "runs",
    "final_max_mean",
    "final_max_std",
    "final_mean_mean",
    "final_mean_std",
];

/// Appends the rows of one log in the long CSV schema.
pub fn write_log_rows<W: Write>(
    w: &mut csv::Writer<W>,
    scene: &str,
    variant: &str,
    seed: u64,
    status: RunStatus,
    log: &ExplorationLog,
) -> Result<(), csv::Error> {
    let seed = seed.to_string();
    if log.is_empty() {
        let mut row = vec![scene.to_string(), variant.to_string(), seed];
        row.extend(std::iter::repeat_n(String::new(), 4));
        row.push(status.as_str().to_string());
        row.extend(std::iter::repeat_n(String::new(), 6));
        return w.write_record(&row);
    }
    for r in &log.records {
        let (depth, index) = match r.node {
            Some(n) => (n.depth.to_string(), n.index.to_string()),
            None => (String::new(), String::new()),
        };
        w.write_record([
            scene,
            variant,
            &seed,
            &r.iteration.to_string(),
            &r.reward.to_string(),
            &r.best_so_far.to_string(),
            &r.mean_so_far.to_string(),
            status.as_str(),
            &depth,
            &index,
            &r.position[0].to_string(),
            &r.position[1].to_string(),
            &r.position[2].to_string(),
            &r.best_direction.to_string(),
        ])?;
    }
    Ok(())
}

/// Runs every (scene, variant, seed) combination in parallel and merges
/// the results in configuration order. A run whose scorer fails is kept
/// with status `aborted` and its partial log; the others continue.
pub fn run_matrix(scenes: &[NamedScene], variants: &[ExplorerSpec], seeds: &[u64]) -> Result<BenchResult, ExploreError> {
    for v in variants {
        v.validate()?;
    }
    let cells: Vec<(usize, usize, u64)> = (0..scenes.len())
        .flat_map(|s| (0..variants.len()).flat_map(move |v| seeds.iter().map(move |&seed| (s, v, seed))))
        .collect();
    let labels: Vec<String> = variants.iter().map(ExplorerSpec::label).collect();
    let runs = cells
        .par_iter()
        .map(|&(s, v, seed)| {
            let scene = &scenes[s];
            let log = variants[v].run(&scene.scene, scene.scene.bounds, seed)?;
            let status = if log.complete { RunStatus::Ok } else { RunStatus::Aborted };
            if status == RunStatus::Aborted {
                log::warn!("{} / {} / seed {seed} aborted: {:?}", scene.name, labels[v], log.error);
            }
            Ok(RunResult { scene: scene.name.clone(), variant: labels[v].clone(), seed, status, log })
        })
        .collect::<Result<Vec<_>, ExploreError>>()?;
    let scene_names: Vec<String> = scenes.iter().map(|s| s.name.clone()).collect();
    let mut unique_labels: Vec<String> = Vec::new();
    for l in &labels {
        if !unique_labels.contains(l) {
            unique_labels.push(l.clone());
        }
    }
    let summary = BenchResult::summarize(&runs, &scene_names, &unique_labels);
    Ok(BenchResult { runs, summary })
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Explore(#[from] ExploreError),
    #[error("writing results: {0}")]
    Io(#[from] std::io::Error),
}

/// Loads the scenes named by `config`, runs the matrix and writes both CSV
/// files into `out_dir`.
pub fn run_bench(config: &BenchConfig, out_dir: impl AsRef<Path>) -> Result<BenchResult, BenchError> {
    config.validate()?;
    let scenes = config.load_scenes()?;
    let result = run_matrix(&scenes, &config.variants, &config.seeds)?;
    result.write_to_dir(out_dir)?;
    Ok(result)
}

/// Groups of the standard ablations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Ablation {
    /// Softmax against argmax division.
    Policy,
    /// No depth limit against the formula cap.
    DepthLimit,
    /// Horizon 500 and 1000 against nu1 in {0.5, 1, 2, 4, 8}.
    HorizonNu1,
    /// 15 against 30 directions.
    Directions,
}

impl Ablation {
    pub const ALL: [Ablation; 4] = [Ablation::Policy, Ablation::DepthLimit, Ablation::HorizonNu1, Ablation::Directions];

    pub fn variants(self) -> Vec<ExplorerSpec> {
        let base = HooSpec::default();
        let hoo = |f: &dyn Fn(&mut HooSpec)| {
            let mut s = base.clone();
            f(&mut s);
            ExplorerSpec::Hoo(s)
        };
        match self {
            Ablation::Policy => vec![
                hoo(&|s| s.policy = DivisionPolicy::Softmax),
                hoo(&|s| s.policy = DivisionPolicy::Argmax),
            ],
            Ablation::DepthLimit => vec![
                hoo(&|s| s.depth_limit = DepthLimit::Infinite),
                hoo(&|s| s.depth_limit = DepthLimit::Formula),
            ],
            Ablation::HorizonNu1 => [500, 1000]
                .into_iter()
                .flat_map(|n| {
                    [0.5, 1.0, 2.0, 4.0, 8.0].into_iter().map(move |v| (n, v))
                })
                .map(|(n, v)| hoo(&|s| {
                    s.horizon = n;
                    s.nu1 = v;
                }))
                .collect(),
            Ablation::Directions => vec![hoo(&|s| s.n_dir = 15), hoo(&|s| s.n_dir = 30)],
        }
    }
}

/// Runs the selected ablation groups. Variants shared between groups (the
/// default configuration appears in several) run once. Labels are the full
/// parameter descriptors.
pub fn ablation_suite(scenes: &[NamedScene], seeds: &[u64], groups: &[Ablation]) -> Result<BenchResult, ExploreError> {
    let mut variants: Vec<ExplorerSpec> = Vec::new();
    for g in groups {
        for v in g.variants() {
            if !variants.contains(&v) {
                variants.push(v);
            }
        }
    }
    run_matrix(scenes, &variants, seeds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scorer::{ConstantScorer, Hotspot};

    fn scene() -> NamedScene {
        let bounds = Region::new([0.0; 3], [10.0, 3.0, 10.0]).unwrap();
        let h = Hotspot { center: [6.0, 1.5, 3.0], sigma: 1.5, amplitude: 0.95, kappa: 1.0, preferred_axis: None };
        NamedScene { name: "toy".into(), scene: SyntheticScene::new(bounds, vec![h]).unwrap() }
    }

    #[test]
    fn random_on_point_bounds() {
        let p = [1.0, 2.0, 3.0];
        let bounds = Region::new(p, p).unwrap();
        let log = random_explore(RandomExplorerParams { horizon: 20, n_dir: 4, seed: 9, bounds }, &ConstantScorer(0.3))
            .unwrap();
        assert!(log.records.iter().all(|r| r.position == p));
        assert!(log.cumulative_mean().iter().all(|&m| (m - 0.3).abs() < 1e-15));
    }

    #[test]
    fn random_is_deterministic_per_seed() {
        let s = scene();
        let params = RandomExplorerParams { horizon: 50, n_dir: 15, seed: 4, bounds: s.scene.bounds };
        assert_eq!(random_explore(params, &s.scene).unwrap(), random_explore(params, &s.scene).unwrap());
        let other = RandomExplorerParams { seed: 5, ..params };
        assert_ne!(random_explore(params, &s.scene).unwrap(), random_explore(other, &s.scene).unwrap());
    }

    #[test]
    fn matrix_row_count_and_single_seed_std() {
        let variants = vec![
            ExplorerSpec::Hoo(HooSpec { horizon: 100, ..Default::default() }),
            ExplorerSpec::Random(RandomSpec { horizon: 100, ..Default::default() }),
        ];
        let res = run_matrix(&[scene()], &variants, &[0, 1, 2, 3, 4]).unwrap();
        let mut buf = Vec::new();
        res.write_long_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 1 + 1000);

        let single = run_matrix(&[scene()], &variants[..1], &[7]).unwrap();
        let row = single.summary_for("toy", &variants[0].label()).unwrap();
        assert_eq!((row.runs, row.final_max_std, row.final_mean_std), (1, 0.0, 0.0));
    }

    #[test]
    fn config_parsing() {
        let text = r#"{
            "scenes": ["suite/scene_00.json"],
            "seeds": [0, 1],
            "variants": [
                {"kind": "hoo", "name": "default"},
                {"kind": "hoo", "policy": "argmax", "depth_limit": "formula"},
                {"kind": "random", "horizon": 50}
            ]
        }"#;
        let cfg = BenchConfig::from_json(text, Path::new("/base")).unwrap();
        assert_eq!(cfg.scenes[0], PathBuf::from("/base/suite/scene_00.json"));
        assert_eq!(cfg.variants[0].label(), "default");
        match &cfg.variants[1] {
            ExplorerSpec::Hoo(h) => {
                assert_eq!(h.policy, DivisionPolicy::Argmax);
                assert_eq!(h.horizon, 500);
            }
            other => panic!("{other:?}"),
        }
        let unknown = text.replace("\"name\": \"default\"", "\"nmae\": \"default\"");
        assert!(BenchConfig::from_json(&unknown, Path::new("/")).is_err());
        let no_seeds = text.replace("[0, 1]", "[]");
        assert!(matches!(BenchConfig::from_json(&no_seeds, Path::new("/")), Err(ConfigError::Bench(_))));
    }

    #[test]
    fn ablation_variant_counts() {
        assert_eq!(Ablation::HorizonNu1.variants().len(), 10);
        let labels: std::collections::BTreeSet<String> =
            Ablation::ALL.iter().flat_map(|a| a.variants()).map(|v| v.label()).collect();
        // default config is shared by policy, depth and direction groups
        assert_eq!(labels.len(), 2 + 1 + 10 + 1 - 1);
    }

    #[test]
    fn mean_std_population() {
        assert_eq!(mean_std(&[0.5]), (0.5, 0.0));
        let (m, s) = mean_std(&[1.0, 3.0]);
        assert_eq!((m, s), (2.0, 1.0));
    }
}
