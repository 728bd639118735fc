//! Explores one scene of the shipped suite and reports the best camera spot.
//!
//! ```bash
//! cargo run --release --example explore_scene -- 3 1000
//! ```

use hoo_explorer::suite::{default_suite_dir, load_suite};
use hoo_explorer::{HooExplorer, HooParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let k: usize = args.next().map_or(Ok(0), |a| a.parse())?;
    let horizon: usize = args.next().map_or(Ok(500), |a| a.parse())?;
    let scene = load_suite(default_suite_dir())?.swap_remove(k);

    let params = HooParams { horizon, ..Default::default() };
    let mut explorer = HooExplorer::new(params, scene.bounds)?;
    explorer.run_to_horizon(&scene)?;

    let log = explorer.log();
    let best = log.best().expect("at least one iteration");
    let dir = explorer.directions()[best.best_direction].as_array();
    println!("scene {k}: {} hotspots in {}", scene.hotspots.len(), scene.bounds);
    println!("best score {:.4} at iteration {}", best.reward, best.iteration);
    println!("  position  [{:.3}, {:.3}, {:.3}]", best.position[0], best.position[1], best.position[2]);
    println!("  direction [{:.3}, {:.3}, {:.3}]", dir[0], dir[1], dir[2]);
    println!("cumulative mean {:.4}", log.final_mean());

    let tree = explorer.tree();
    let deepest = tree.deepest_member();
    println!(
        "tree: {} member nodes, deepest {} with {} visits, region {}",
        tree.member_count(),
        deepest.id,
        deepest.stats.visits,
        deepest.stats.region
    );
    for t in [10, 50, 100, horizon] {
        if let Some(r) = log.records.get(t - 1) {
            println!("  t={t:>5}  best {:.4}  mean {:.4}", r.best_so_far, r.mean_so_far);
        }
    }
    Ok(())
}
