//! The standard synthetic scene suite.
//!
//! Ten seeded scenes with one to five hotspots each, shipped as JSON under
//! `scenes/suite/`. [`generate_standard_suite`] regenerates them
//! bit-for-bit; the `make_suite` example writes the files.

use std::path::{Path, PathBuf};

use rand::Rng;

use crate::error::ConfigError;
use crate::geometry::{Direction, Region};
use crate::scorer::{Hotspot, SyntheticScene};
use crate::tree::stream_rng;

pub const SUITE_SIZE: usize = 10;
pub const SUITE_SEED: u64 = 2024;

fn centimeters(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

/// Generates the ten standard scenes. Values are rounded to centimeters so
/// the JSON files stay readable and round-trip exactly.
pub fn generate_standard_suite() -> Vec<SyntheticScene> {
    (0..SUITE_SIZE).map(|k| generate_scene(k as u64)).collect()
}

fn generate_scene(k: u64) -> SyntheticScene {
    let mut rng = stream_rng(SUITE_SEED, 100 + k);
    let q = centimeters;
    let lx = q(rng.gen_range(12.0..30.0));
    let ly = q(rng.gen_range(3.0..6.0));
    let lz = q(rng.gen_range(12.0..30.0));
    let bounds = Region::new([0.0; 3], [lx, ly, lz]).expect("positive extents");
    let count = 1 + (k as usize % 5);
    let span = lx.max(lz);
    let hotspots = (0..count)
        .map(|h| {
            let center = [
                q(rng.gen_range(0.1 * lx..0.9 * lx)),
                q(rng.gen_range(0.2 * ly..0.8 * ly)),
                q(rng.gen_range(0.1 * lz..0.9 * lz)),
            ];
            let amplitude = if h == 0 {
                q(rng.gen_range(0.9..1.0))
            } else {
                q(rng.gen_range(0.4..0.85))
            };
            let sigma = q(rng.gen_range(0.06..0.14) * span);
            let kappa = q(rng.gen_range(0.0..2.5));
            // every third scene carries one fixed-axis lobe
            let preferred_axis = (k % 3 == 2 && h == count - 1).then(|| {
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                Direction::new([theta.cos(), 0.0, theta.sin()]).expect("unit")
            });
            Hotspot { center, sigma, amplitude, kappa, preferred_axis }
        })
        .collect();
    SyntheticScene::new(bounds, hotspots).expect("generated scene is valid")
}

/// File name of suite scene `k`.
pub fn scene_file_name(k: usize) -> String {
    format!("scene_{k:02}.json")
}

/// `crates/core/scenes/suite`, resolved at compile time.
pub fn default_suite_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenes").join("suite")
}

/// Paths of the shipped suite scenes in `dir`.
pub fn suite_paths(dir: impl AsRef<Path>) -> Vec<PathBuf> {
    (0..SUITE_SIZE).map(|k| dir.as_ref().join(scene_file_name(k))).collect()
}

/// Loads the shipped suite from `dir`.
pub fn load_suite(dir: impl AsRef<Path>) -> Result<Vec<SyntheticScene>, ConfigError> {
    suite_paths(dir).iter().map(SyntheticScene::load).collect()
}

/// Writes the generated suite into `dir`.
pub fn write_suite(dir: impl AsRef<Path>) -> Result<Vec<PathBuf>, ConfigError> {
    let dir = dir.as_ref();
    std::fs::create_dir_all(dir).map_err(|source| ConfigError::Io {
        path: dir.display().to_string(),
        source,
    })?;
    generate_standard_suite()
        .iter()
        .enumerate()
        .map(|(k, scene)| {
            let path = dir.join(scene_file_name(k));
            std::fs::write(&path, scene.to_json() + "\n").map_err(|source| ConfigError::Io {
                path: path.display().to_string(),
                source,
            })?;
            Ok(path)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_is_deterministic_and_varied() {
        let a = generate_standard_suite();
        assert_eq!(a, generate_standard_suite());
        let counts: Vec<usize> = a.iter().map(|s| s.hotspots.len()).collect();
        assert_eq!(*counts.iter().min().unwrap(), 1);
        assert_eq!(*counts.iter().max().unwrap(), 5);
    }

    #[test]
    fn shipped_files_match_generator() {
        let shipped = load_suite(default_suite_dir()).expect("run `cargo run --example make_suite`");
        assert_eq!(shipped, generate_standard_suite());
    }
}
