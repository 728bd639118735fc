//! The three-bump 1D landscape: where does the tree spend its depth?
//!
//! Prints a histogram of member-node depth along x next to the score curve.
//!
//! ```bash
//! cargo run --release --example one_dimensional
//! ```

use hoo_explorer::scorer::Scene1D;
use hoo_explorer::{grid_oracle, HooExplorer, HooParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scene = Scene1D::default();
    let space = scene.region();
    let oracle = grid_oracle(&scene, &space, 64, 1)?;
    println!(
        "oracle argmax x = {} (cell [{}, {}]), score {:.4}",
        oracle.best_position[0], oracle.best_cell.min[0], oracle.best_cell.max[0], oracle.best_score
    );

    let params = HooParams { horizon: 1000, nu1: 4.0, n_dir: 1, ..Default::default() };
    let mut explorer = HooExplorer::new(params, space)?;
    explorer.run_to_horizon(&scene)?;
    let tree = explorer.tree();
    let leaf = tree.deepest_member();
    println!(
        "deepest leaf {} covers [{:.5}, {:.5}]",
        leaf.id, leaf.stats.region.min[0], leaf.stats.region.max[0]
    );

    let bins = 40;
    let width = (scene.b - scene.a) / bins as f64;
    let mut max_depth = vec![0u32; bins];
    let mut visits = vec![0u64; bins];
    for n in tree.nodes().filter(|n| n.member) {
        let x = n.stats.region.center()[0];
        let b = (((x - scene.a) / width) as usize).min(bins - 1);
        max_depth[b] = max_depth[b].max(n.id.depth);
        visits[b] += n.own_evals;
    }
    println!("{:>7}  {:>5}  {:>5}  {:>6}", "x", "score", "depth", "evals");
    for b in 0..bins {
        let x = scene.a + (b as f64 + 0.5) * width;
        let bar = "#".repeat(max_depth[b] as usize);
        println!("{x:>7.2}  {:>5.3}  {:>5}  {:>6}  {bar}", scene.score_at(x)?, max_depth[b], visits[b]);
    }
    Ok(())
}
