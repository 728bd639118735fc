//! Drives the tree: select, expand, evaluate the region center over the
//! sampled directions, back the reward up, and log the iteration.

use serde::Serialize;

use crate::error::{ExploreError, ScoreError};
use crate::geometry::{fibonacci_directions, Direction, Region, Vec3};
use crate::scorer::{region_reward, Scorer};
use crate::tree::{HooParams, HooTree, IterateError, NodeId, TreeError};

/// One row of an exploration log.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IterationRecord {
    /// 1-based iteration number.
    pub iteration: u64,
    /// Evaluated tree node; `None` for explorers without a tree.
    pub node: Option<NodeId>,
    pub reward: f64,
    pub best_so_far: f64,
    pub mean_so_far: f64,
    pub position: Vec3,
    pub best_direction: usize,
}

/// Per-iteration history of a run. `complete` is false when the run was cut
/// short by a scorer failure, whose message is kept in `error`.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct ExplorationLog {
    pub records: Vec<IterationRecord>,
    pub complete: bool,
    pub error: Option<String>,
}

impl ExplorationLog {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Appends a reward, filling in the running best and mean.
    pub fn push(&mut self, node: Option<NodeId>, reward: f64, position: Vec3, best_direction: usize) -> IterationRecord {
        let n = self.records.len() as u64 + 1;
        let (best, mean) = match self.records.last() {
            Some(prev) => (
                prev.best_so_far.max(reward),
                prev.mean_so_far + (reward - prev.mean_so_far) / n as f64,
            ),
            None => (reward, reward),
        };
        let rec = IterationRecord {
            iteration: n,
            node,
            reward,
            best_so_far: best,
            mean_so_far: mean,
            position,
            best_direction,
        };
        self.records.push(rec);
        rec
    }

    /// Record with the highest reward; the earliest wins ties.
    pub fn best(&self) -> Option<&IterationRecord> {
        self.records
            .iter()
            .reduce(|a, b| if b.reward > a.reward { b } else { a })
    }

    pub fn final_max(&self) -> f64 {
        self.records.last().map_or(0.0, |r| r.best_so_far)
    }

    pub fn final_mean(&self) -> f64 {
        self.records.last().map_or(0.0, |r| r.mean_so_far)
    }

    pub fn cumulative_max(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.best_so_far).collect()
    }

    pub fn cumulative_mean(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.mean_so_far).collect()
    }

    fn abort(&mut self, err: &ScoreError) {
        self.complete = false;
        self.error = Some(err.to_string());
    }
}

/// Incremental HOO explorer that keeps its tree inspectable between steps.
#[derive(Debug, Clone)]
pub struct HooExplorer {
    tree: HooTree,
    directions: Vec<Direction>,
    log: ExplorationLog,
}

impl HooExplorer {
    pub fn new(params: HooParams, space: Region) -> Result<Self, ExploreError> {
        let tree = HooTree::new(params, space).map_err(tree_error)?;
        let directions = fibonacci_directions(params.n_dir)?;
        Ok(HooExplorer {
            tree,
            directions,
            log: ExplorationLog { complete: true, ..Default::default() },
        })
    }

    pub fn tree(&self) -> &HooTree {
        &self.tree
    }

    pub fn log(&self) -> &ExplorationLog {
        &self.log
    }

    pub fn into_log(self) -> ExplorationLog {
        self.log
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    /// Whether the horizon has been reached.
    pub fn finished(&self) -> bool {
        self.log.len() >= self.tree.params().horizon
    }

    /// Runs one iteration. On scorer failure the log is marked incomplete
    /// and the error returned; the tree is left without that backup.
    pub fn step<S: Scorer + ?Sized>(&mut self, scorer: &S) -> Result<IterationRecord, ExploreError> {
        let dirs = &self.directions;
        let mut picked = None;
        let outcome = self.tree.iterate_with(|region: &Region| {
            let center = region.center();
            let (reward, dir) = region_reward(center, dirs, scorer)?;
            picked = Some((center, dir));
            Ok::<_, ScoreError>(reward)
        });
        match outcome {
            Ok((node, _, reward)) => {
                let (center, dir) = picked.expect("evaluated");
                Ok(self.log.push(Some(node), reward, center, dir))
            }
            Err(IterateError::Evaluate(e)) => {
                self.log.abort(&e);
                Err(e.into())
            }
            Err(IterateError::Tree(e)) => Err(tree_error(e)),
        }
    }

    /// Steps until the horizon or the first scorer failure.
    pub fn run_to_horizon<S: Scorer + ?Sized>(&mut self, scorer: &S) -> Result<(), ExploreError> {
        while !self.finished() {
            self.step(scorer)?;
        }
        Ok(())
    }
}

fn tree_error(e: TreeError) -> ExploreError {
    match e {
        TreeError::Params(p) => ExploreError::Params(p),
        TreeError::Geometry(g) => ExploreError::Geometry(g),
        other => ExploreError::Tree(other),
    }
}

/// Runs `params.horizon` iterations over `space`.
///
/// Invalid parameters are reported as errors; a scorer failure part-way
/// through yields the partial log with `complete = false`.
pub fn run<S: Scorer + ?Sized>(params: HooParams, scorer: &S, space: Region) -> Result<ExplorationLog, ExploreError> {
    let mut explorer = HooExplorer::new(params, space)?;
    match explorer.run_to_horizon(scorer) {
        Ok(()) | Err(ExploreError::Score(_)) => Ok(explorer.into_log()),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scorer::ConstantScorer;
    use std::sync::atomic::{AtomicUsize, Ordering};

    fn space() -> Region {
        Region::new([0.0; 3], [4.0, 2.0, 2.0]).unwrap()
    }

    #[test]
    fn one_iteration_hits_depth_one() {
        let log = run(HooParams { horizon: 1, ..Default::default() }, &ConstantScorer(0.4), space()).unwrap();
        assert_eq!(log.len(), 1);
        assert!(log.complete);
        assert_eq!(log.records[0].node.unwrap().depth, 1);
        assert_eq!(log.records[0].reward, 0.4);
    }

    #[test]
    fn log_running_statistics() {
        let mut log = ExplorationLog::default();
        for r in [0.2, 0.6, 0.1] {
            log.push(None, r, [0.0; 3], 0);
        }
        assert_eq!(log.cumulative_max(), vec![0.2, 0.6, 0.6]);
        let m = log.cumulative_mean();
        assert!((m[2] - 0.3).abs() < 1e-15);
        assert_eq!(log.best().unwrap().iteration, 2);
    }

    struct FailAfter(usize, AtomicUsize);
    impl Scorer for FailAfter {
        fn score_batch(&self, poses: &[crate::geometry::CameraPose]) -> Result<Vec<f64>, ScoreError> {
            if self.1.fetch_add(1, Ordering::SeqCst) >= self.0 {
                return Err(ScoreError::Transport("connection reset".into()));
            }
            Ok(vec![0.5; poses.len()])
        }
    }

    #[test]
    fn scorer_failure_yields_partial_log() {
        let log = run(HooParams { horizon: 20, ..Default::default() }, &FailAfter(7, AtomicUsize::new(0)), space()).unwrap();
        assert_eq!(log.len(), 7);
        assert!(!log.complete);
        assert!(log.error.as_deref().unwrap().contains("connection reset"));
    }

    #[test]
    fn invalid_params_are_errors() {
        assert!(run(HooParams { horizon: 0, ..Default::default() }, &ConstantScorer(0.4), space()).is_err());
    }
}
