//! Command-line entry point: `explore`, `bench`, `serve` and `oracle`.
//!
//! Exit status is 0 on success, 2 for invalid flags or configuration and 1
//! for failures while running. Log verbosity follows `RUST_LOG`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use hoo_explorer::bench::{self, Ablation, BenchConfig, NamedScene, RunStatus};
use hoo_explorer::protocol::{RemoteScorer, ScoreServer};
use hoo_explorer::scorer::{grid_oracle, Scorer, SyntheticScene};
use hoo_explorer::{fibonacci_directions, run, DepthLimit, DivisionPolicy, ExplorationLog, HooParams, ParamError, Variant};

#[derive(Parser)]
#[command(name = "hoo-explorer", version, about = "Optimistic tree search for high-scoring camera placements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the tree explorer on one scene and report the best spot.
    Explore(ExploreArgs),
    /// Run a bench matrix or ablation groups and write long and summary CSVs.
    Bench(BenchArgs),
    /// Serve a scene's scores over the binary protocol until interrupted.
    Serve(ServeArgs),
    /// Brute-force grid search for the best score of a scene.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ExploreArgs {
    /// Scene JSON; its bounds are the search space.
    #[arg(long)]
    scene: PathBuf,
    /// Score remotely through a server at HOST:PORT instead of locally.
    #[arg(long, value_name = "HOST:PORT")]
    remote: Option<String>,
    /// Number of iterations N.
    #[arg(long, default_value_t = 500)]
    iters: usize,
    /// Exploration constant c.
    #[arg(long, default_value_t = 0.2, allow_negative_numbers = true)]
    c: f64,
    /// Smoothness decay rho.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    rho: f64,
    /// Smoothness scale nu1.
    #[arg(long, default_value_t = 0.5, allow_negative_numbers = true)]
    v1: f64,
    /// Sampled view directions per region.
    #[arg(long, default_value_t = 15)]
    ndir: usize,
    /// Axis choice when halving a region: softmax or argmax.
    #[arg(long, default_value_t = DivisionPolicy::Softmax)]
    policy: DivisionPolicy,
    /// Confidence clock: truncated or vanilla.
    #[arg(long, default_value_t = Variant::Truncated)]
    variant: Variant,
    /// Tree depth cap: inf or formula.
    #[arg(long, default_value_t = DepthLimit::Infinite)]
    depth_limit: DepthLimit,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Per-iteration log format.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum AblationArg {
    Policy,
    DepthLimit,
    HorizonNu1,
    Directions,
    All,
}

#[derive(Args)]
struct BenchArgs {
    /// Bench config JSON listing scenes, variants and seeds.
    #[arg(long)]
    config: PathBuf,
    /// Run these ablation groups on the config's scenes and seeds instead of
    /// its variants. Repeatable.
    #[arg(long, value_enum)]
    ablation: Vec<AblationArg>,
    /// Output directory for long.csv and summary.csv. Defaults to the
    /// config's `output` entry, then `out`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ServeArgs {
    #[arg(long)]
    scene: PathBuf,
    /// 0 picks a free port; the bound address is printed.
    #[arg(long, default_value_t = 7878)]
    port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    host: String,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    scene: PathBuf,
    /// Grid cells per axis.
    #[arg(long, default_value_t = 64)]
    resolution: usize,
    #[arg(long, default_value_t = 15)]
    ndir: usize,
    /// Also write oracle.json into this directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Failure {
    Config(String),
    Runtime(String),
}

impl Failure {
    fn runtime(e: impl std::fmt::Display) -> Self {
        Failure::Runtime(e.to_string())
    }

    fn config(e: impl std::fmt::Display) -> Self {
        Failure::Config(e.to_string())
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Explore(a) => explore(a),
        Command::Bench(a) => bench(a),
        Command::Serve(a) => serve(a),
        Command::Oracle(a) => oracle(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn flag_error(e: ParamError) -> Failure {
    let flag = match e {
        ParamError::C(_) => "--c",
        ParamError::Nu1(_) => "--v1",
        ParamError::Rho(_) => "--rho",
        ParamError::Horizon => "--iters",
        ParamError::NDir => "--ndir",
        ParamError::DepthLimitUndefined => "--depth-limit",
        ParamError::Clock(_) => "--iters",
    };
    Failure::Config(format!("{flag}: {e}"))
}

fn create_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::runtime(format!("creating {}: {e}", dir.display())))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::runtime(format!("writing {}: {e}", path.display())))
}

fn stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn explore(a: ExploreArgs) -> Result<(), Failure> {
    let params = HooParams {
        c: a.c,
        nu1: a.v1,
        rho: a.rho,
        horizon: a.iters,
        n_dir: a.ndir,
        depth_limit: a.depth_limit,
        policy: a.policy,
        variant: a.variant,
        seed: a.seed,
    };
    params.validate().map_err(flag_error)?;
    params.max_depth().map_err(flag_error)?;
    let scene = SyntheticScene::load(&a.scene).map_err(Failure::config)?;
    let scorer: Box<dyn Scorer> = match &a.remote {
        Some(addr) => Box::new(RemoteScorer::connect(addr.as_str()).map_err(|e| Failure::runtime(format!("--remote {addr}: {e}")))?),
        None => Box::new(scene.clone()),
    };
    let log = run(params, &scorer, scene.bounds).map_err(Failure::runtime)?;

    create_dir(&a.out)?;
    let variant = params.descriptor();
    match a.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let status = if log.complete { RunStatus::Ok } else { RunStatus::Aborted };
            w.write_record(bench::LONG_HEADER).map_err(Failure::runtime)?;
            bench::write_log_rows(&mut w, &stem(&a.scene), &variant, a.seed, status, &log).map_err(Failure::runtime)?;
            let bytes = w.into_inner().map_err(Failure::runtime)?;
            write_file(&a.out.join("explore.csv"), &bytes)?;
        }
        Format::Json => {
            let doc = json!({ "scene": stem(&a.scene), "variant": variant, "seed": a.seed, "log": &log });
            write_file(&a.out.join("explore.json"), (serde_json::to_string_pretty(&doc).expect("log serializes") + "\n").as_bytes())?;
        }
    }
    let report = best_report(&log, a.ndir);
    write_file(&a.out.join("best.json"), (serde_json::to_string_pretty(&report).expect("report serializes") + "\n").as_bytes())?;
    if let Some(best) = log.best() {
        println!("best score     {}", best.reward);
        println!("best position  [{}, {}, {}]", best.position[0], best.position[1], best.position[2]);
        println!("best direction {}", best.best_direction);
        println!("iterations     {}", log.len());
    }
    match &log.error {
        Some(e) if !log.complete => Err(Failure::Runtime(format!("run aborted after {} iterations: {e}", log.len()))),
        _ => Ok(()),
    }
}

fn best_report(log: &ExplorationLog, n_dir: usize) -> serde_json::Value {
    let dirs = fibonacci_directions(n_dir).expect("n_dir validated");
    match log.best() {
        Some(b) => json!({
            "score": b.reward,
            "position": b.position,
            "direction_index": b.best_direction,
            "direction": dirs[b.best_direction].as_array(),
            "iteration": b.iteration,
            "iterations": log.len(),
            "complete": log.complete,
        }),
        None => json!({ "iterations": 0, "complete": log.complete, "error": log.error }),
    }
}

fn bench(a: BenchArgs) -> Result<(), Failure> {
    let config = BenchConfig::load(&a.config).map_err(Failure::config)?;
    let out = a.out.or_else(|| config.output.clone()).unwrap_or_else(|| PathBuf::from("out"));
    let result = if a.ablation.is_empty() {
        bench::run_bench(&config, &out).map_err(Failure::runtime)?
    } else {
        let mut groups = Vec::new();
        for g in &a.ablation {
            let add: &[Ablation] = match g {
                AblationArg::Policy => &[Ablation::Policy],
                AblationArg::DepthLimit => &[Ablation::DepthLimit],
                AblationArg::HorizonNu1 => &[Ablation::HorizonNu1],
                AblationArg::Directions => &[Ablation::Directions],
                AblationArg::All => &Ablation::ALL,
            };
            for x in add {
                if !groups.contains(x) {
                    groups.push(*x);
                }
            }
        }
        let scenes: Vec<NamedScene> = config.load_scenes().map_err(Failure::config)?;
        let result = bench::ablation_suite(&scenes, &config.seeds, &groups).map_err(Failure::runtime)?;
        result.write_to_dir(&out).map_err(Failure::runtime)?;
        result
    };
    let aborted = result.runs.iter().filter(|r| r.status == RunStatus::Aborted).count();
    for s in result.summary.iter().filter(|s| s.scene == bench::ALL_SCENES) {
        println!(
            "{}  final_max {:.4} ± {:.4}  final_mean {:.4} ± {:.4}",
            s.variant, s.final_max_mean, s.final_max_std, s.final_mean_mean, s.final_mean_std
        );
    }
    println!("{} runs, {aborted} aborted, written to {}", result.runs.len(), out.display());
    Ok(())
}

fn serve(a: ServeArgs) -> Result<(), Failure> {
    let scene = SyntheticScene::load(&a.scene).map_err(Failure::config)?;
    let server = ScoreServer::bind((a.host.as_str(), a.port), scene).map_err(|e| Failure::runtime(format!("binding {}:{}: {e}", a.host, a.port)))?;
    let addr = server.local_addr().map_err(Failure::runtime)?;
    println!("listening on {addr}");
    server.run().map_err(Failure::runtime)
}

fn oracle(a: OracleArgs) -> Result<(), Failure> {
    if a.resolution < 2 {
        return Err(Failure::Config(format!("--resolution must be at least 2, got {}", a.resolution)));
    }
    if a.ndir == 0 {
        return Err(flag_error(ParamError::NDir));
    }
    let scene = SyntheticScene::load(&a.scene).map_err(Failure::config)?;
    let r = grid_oracle(&scene, &scene.bounds, a.resolution, a.ndir).map_err(Failure::runtime)?;
    println!("best score     {}", r.best_score);
    println!("best position  [{}, {}, {}]", r.best_position[0], r.best_position[1], r.best_position[2]);
    println!("best direction {}", r.best_direction);
    println!("evaluated      {}", r.evaluated);
    if let Some(out) = &a.out {
        create_dir(out)?;
        let doc = json!({
            "scene": stem(&a.scene),
            "resolution": a.resolution,
            "n_dir": a.ndir,
            "score": r.best_score,
            "position": r.best_position,
            "direction_index": r.best_direction,
            "cell": { "min": r.best_cell.min, "max": r.best_cell.max },
            "evaluated": r.evaluated,
        });
        write_file(&out.join("oracle.json"), (serde_json::to_string_pretty(&doc).expect("serializes") + "\n").as_bytes())?;
    }
    Ok(())
}
