//! Brute-force ground truth against the tree explorer on every suite scene.
//!
//! ```bash
//! cargo run --release --example grid_oracle -- 32
//! ```

use hoo_explorer::suite::{default_suite_dir, load_suite};
use hoo_explorer::{grid_oracle, run, HooParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let resolution: usize = std::env::args().nth(1).map_or(Ok(64), |a| a.parse())?;
    println!("{:<6} {:>9} {:>10} {:>9} {:>7}", "scene", "oracle", "evaluated", "hoo", "ratio");
    for (k, scene) in load_suite(default_suite_dir())?.iter().enumerate() {
        let oracle = grid_oracle(scene, &scene.bounds, resolution, 15)?;
        let hoo = (0..5)
            .map(|seed| run(HooParams { horizon: 1000, nu1: 1.0, seed, ..Default::default() }, scene, scene.bounds))
            .collect::<Result<Vec<_>, _>>()?
            .iter()
            .map(|log| log.final_max())
            .fold(0.0, f64::max);
        println!(
            "{k:<6} {:>9.4} {:>10} {:>9.4} {:>7.3}",
            oracle.best_score,
            oracle.evaluated,
            hoo,
            hoo / oracle.best_score
        );
    }
    Ok(())
}
