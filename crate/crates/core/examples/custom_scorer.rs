//! Plugging in your own scorer and driving the tree one step at a time.
//!
//! ```bash
//! cargo run --release --example custom_scorer
//! ```

use hoo_explorer::{CameraPose, HooExplorer, HooParams, Region, ScoreError, Scorer, Vec3};

fn dot3(a: Vec3, b: Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Likes being near a window at (9, 1.5, 0) and looking out through it.
struct WindowView;

impl Scorer for WindowView {
    fn score_batch(&self, poses: &[CameraPose]) -> Result<Vec<f64>, ScoreError> {
        let window = [9.0, 1.5, 0.0];
        Ok(poses
            .iter()
            .map(|p| {
                let to = [window[0] - p.position[0], window[1] - p.position[1], window[2] - p.position[2]];
                let dist = dot3(to, to).sqrt().max(1e-9);
                let facing = dot3(to, p.direction.as_array()) / dist;
                (0.5 + 0.5 * facing) * (-dist / 6.0).exp()
            })
            .collect())
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let room = Region::new([0.0, 0.0, 0.0], [10.0, 3.0, 8.0])?;
    let mut explorer = HooExplorer::new(HooParams { horizon: 300, ..Default::default() }, room)?;
    while !explorer.finished() {
        let rec = explorer.step(&WindowView)?;
        if rec.iteration % 50 == 0 {
            let node = rec.node.expect("tree explorer");
            println!(
                "t={:>3}  node {:<14} reward {:.3}  best {:.3}  at [{:.2}, {:.2}, {:.2}]",
                rec.iteration, node.to_string(), rec.reward, rec.best_so_far, rec.position[0], rec.position[1], rec.position[2]
            );
        }
    }
    let best = explorer.log().best().unwrap();
    let dir = explorer.directions()[best.best_direction].as_array();
    println!("best view looks along [{:.2}, {:.2}, {:.2}]", dir[0], dir[1], dir[2]);
    Ok(())
}
