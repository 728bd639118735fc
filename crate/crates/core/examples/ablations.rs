//! Division policy, depth cap, horizon x nu1 and direction-count ablations.
//!
//! ```bash
//! cargo run --release --example ablations
//! ```

use hoo_explorer::bench::{ablation_suite, Ablation, NamedScene, ALL_SCENES};
use hoo_explorer::suite::{default_suite_dir, load_suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scenes: Vec<NamedScene> = load_suite(default_suite_dir())?
        .into_iter()
        .enumerate()
        .map(|(k, scene)| NamedScene { name: format!("scene_{k:02}"), scene })
        .collect();
    let seeds = [0, 1, 2, 3, 4];
    for group in Ablation::ALL {
        let result = ablation_suite(&scenes, &seeds, &[group])?;
        println!("{group:?}");
        for row in result.summary.iter().filter(|r| r.scene == ALL_SCENES) {
            println!(
                "  {:<62} mean {:.4} ± {:.4}  max {:.4}",
                row.variant, row.final_mean_mean, row.final_mean_std, row.final_max_mean
            );
        }
    }
    Ok(())
}
