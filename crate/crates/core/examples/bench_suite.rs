//! Tree explorer against uniform random placement on the whole suite.
//!
//! Writes `long.csv` and `summary.csv` into the given directory
//! (default `bench_out`).
//!
//! ```bash
//! cargo run --release --example bench_suite -- /tmp/bench
//! ```

use hoo_explorer::bench::{run_matrix, ExplorerSpec, HooSpec, NamedScene, RandomSpec, ALL_SCENES};
use hoo_explorer::suite::{default_suite_dir, load_suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "bench_out".into());
    let scenes: Vec<NamedScene> = load_suite(default_suite_dir())?
        .into_iter()
        .enumerate()
        .map(|(k, scene)| NamedScene { name: format!("scene_{k:02}"), scene })
        .collect();
    let variants = [
        ExplorerSpec::Hoo(HooSpec { name: Some("hoo".into()), ..Default::default() }),
        ExplorerSpec::Random(RandomSpec { name: Some("random".into()), ..Default::default() }),
    ];
    let result = run_matrix(&scenes, &variants, &[0, 1, 2, 3, 4])?;

    println!("{:<10} {:>22} {:>22}", "scene", "hoo mean (max)", "random mean (max)");
    for scene in scenes.iter().map(|s| s.name.as_str()).chain([ALL_SCENES]) {
        let h = result.summary_for(scene, "hoo").unwrap();
        let r = result.summary_for(scene, "random").unwrap();
        println!(
            "{scene:<10} {:>6.3} ± {:.3} ({:.3}) {:>6.3} ± {:.3} ({:.3})",
            h.final_mean_mean, h.final_mean_std, h.final_max_mean, r.final_mean_mean, r.final_mean_std, r.final_max_mean
        );
    }
    let (long, summary) = result.write_to_dir(&out)?;
    println!("wrote {} and {}", long.display(), summary.display());
    Ok(())
}
