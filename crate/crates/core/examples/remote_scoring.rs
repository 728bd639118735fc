//! Scores poses through the TCP wire protocol instead of in-process.
//!
//! Starts a loopback server for a suite scene, explores through a
//! `RemoteScorer`, and checks the result against a local run. Pass an
//! address to use an already running `hoo-explorer serve` instead.
//!
//! ```bash
//! cargo run --release --example remote_scoring
//! cargo run --release --example remote_scoring -- 127.0.0.1:7878
//! ```

use hoo_explorer::protocol::{RemoteScorer, ScoreServer};
use hoo_explorer::suite::{default_suite_dir, load_suite};
use hoo_explorer::{run, HooParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scene = load_suite(default_suite_dir())?.swap_remove(0);
    let params = HooParams { seed: 1, ..Default::default() };

    // the handle stops the server when dropped
    let (_server, addr) = match std::env::args().nth(1) {
        Some(addr) => (None, addr),
        None => {
            let server = ScoreServer::bind("127.0.0.1:0", scene.clone())?.spawn()?;
            let addr = server.addr().to_string();
            (Some(server), addr)
        }
    };
    let remote = RemoteScorer::connect(&addr)?;
    println!("scoring through {}", remote.peer());

    let start = std::time::Instant::now();
    let remote_log = run(params, &remote, scene.bounds)?;
    let elapsed = start.elapsed();
    let local_log = run(params, &scene, scene.bounds)?;

    let gap = local_log
        .records
        .iter()
        .zip(&remote_log.records)
        .map(|(a, b)| (a.reward - b.reward).abs())
        .fold(0.0, f64::max);
    println!(
        "{} requests of {} poses in {:.1?} ({:.0} us per round trip)",
        remote_log.len(),
        params.n_dir,
        elapsed,
        elapsed.as_secs_f64() * 1e6 / remote_log.len() as f64
    );
    println!("best remote {:.6}, local {:.6}", remote_log.final_max(), local_log.final_max());
    println!("largest per-iteration reward gap {gap:.2e} (scores travel as f32)");
    Ok(())
}
