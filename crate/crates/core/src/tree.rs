//! The optimistic binary partition tree: selection, expansion and backup.
//!
//! Every node owns a cuboid region. Membership in the tree is tracked
//! separately from node storage: when a leaf is expanded its two children
//! are materialized with `T = 0` and `U = B = +inf` but only join the tree
//! once selection reaches them.
//!
//! Two confidence clocks are supported. The truncated variant uses the
//! horizon `N` in the exploration bonus, so a node's U-value only changes
//! when the node itself is visited and a backup touches exactly one path.
//! The vanilla variant uses the current iteration `n`, which forces every
//! visited node to be refreshed after each evaluation.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, ParamError};
use crate::geometry::{divide, Axis, DivisionPolicy, Region};

/// Deepest node the tree will ever create. Node indices are `u128`, so a
/// node at this depth still has a representable index.
pub const MAX_DEPTH: u32 = 127;

/// `(depth, index)` address of a node; children of `(d, i)` are
/// `(d + 1, 2i)` and `(d + 1, 2i + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NodeId {
    pub depth: u32,
    pub index: u128,
}

impl NodeId {
    pub const ROOT: NodeId = NodeId { depth: 0, index: 0 };

    pub fn new(depth: u32, index: u128) -> Self {
        debug_assert!(depth > 127 || index >> depth == 0);
        NodeId { depth, index }
    }

    pub fn children(self) -> (NodeId, NodeId) {
        (
            NodeId::new(self.depth + 1, self.index << 1),
            NodeId::new(self.depth + 1, (self.index << 1) | 1),
        )
    }

    pub fn parent(self) -> Option<NodeId> {
        (self.depth > 0).then(|| NodeId::new(self.depth - 1, self.index >> 1))
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.depth, self.index)
    }
}

/// Which iteration count feeds the confidence radius.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `sqrt(2 ln N / T)` with the fixed horizon `N`.
    #[default]
    Truncated,
    /// `sqrt(2 ln n / T)` with the current iteration `n`.
    Vanilla,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Truncated => f.write_str("truncated"),
            Variant::Vanilla => f.write_str("vanilla"),
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "truncated" => Ok(Variant::Truncated),
            "vanilla" => Ok(Variant::Vanilla),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum DepthLimit {
    #[default]
    #[serde(alias = "inf")]
    Infinite,
    /// `ceil((ln N + ln nu1) / -ln rho)`, see [`depth_limit`].
    Formula,
}

impl fmt::Display for DepthLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DepthLimit::Infinite => f.write_str("inf"),
            DepthLimit::Formula => f.write_str("formula"),
        }
    }
}

impl std::str::FromStr for DepthLimit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "inf" | "infinite" => Ok(DepthLimit::Infinite),
            "formula" => Ok(DepthLimit::Formula),
            other => Err(format!("unknown depth limit `{other}`")),
        }
    }
}

/// Explorer hyperparameters. `Default` gives c = 0.2, nu1 = 0.5, rho = 0.5,
/// N = 500, 15 directions, no depth limit, softmax division, truncated HOO.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HooParams {
    pub c: f64,
    pub nu1: f64,
    pub rho: f64,
    pub horizon: usize,
    pub n_dir: usize,
    pub depth_limit: DepthLimit,
    pub policy: DivisionPolicy,
    pub variant: Variant,
    pub seed: u64,
}

impl Default for HooParams {
    fn default() -> Self {
        HooParams {
            c: 0.2,
            nu1: 0.5,
            rho: 0.5,
            horizon: 500,
            n_dir: 15,
            depth_limit: DepthLimit::Infinite,
            policy: DivisionPolicy::Softmax,
            variant: Variant::Truncated,
            seed: 0,
        }
    }
}

impl HooParams {
    pub fn validate(&self) -> Result<(), ParamError> {
        if !(self.c > 0.0 && self.c.is_finite()) {
            return Err(ParamError::C(self.c));
        }
        if !(self.nu1 > 0.0 && self.nu1.is_finite()) {
            return Err(ParamError::Nu1(self.nu1));
        }
        if !(self.rho > 0.0 && self.rho <= 1.0) {
            return Err(ParamError::Rho(self.rho));
        }
        if self.horizon == 0 {
            return Err(ParamError::Horizon);
        }
        if self.n_dir == 0 {
            return Err(ParamError::NDir);
        }
        Ok(())
    }

    /// Maximum node depth implied by the depth-limit mode.
    pub fn max_depth(&self) -> Result<u32, ParamError> {
        match self.depth_limit {
            DepthLimit::Infinite => Ok(MAX_DEPTH),
            DepthLimit::Formula => {
                depth_limit(self.horizon as u64, self.nu1, self.rho).map(|d| d.min(MAX_DEPTH))
            }
        }
    }

    /// Short human-readable descriptor used to label variants in CSV output.
    pub fn descriptor(&self) -> String {
        format!(
            "hoo:{}:{}:depth={}:N={}:c={}:v1={}:rho={}:ndir={}",
            self.variant,
            self.policy,
            self.depth_limit,
            self.horizon,
            self.c,
            self.nu1,
            self.rho,
            self.n_dir
        )
    }
}

/// Depth cap `ceil((ln N + ln nu1) / -ln rho)`, floored at zero.
pub fn depth_limit(horizon: u64, nu1: f64, rho: f64) -> Result<u32, ParamError> {
    if horizon == 0 {
        return Err(ParamError::Horizon);
    }
    if !(nu1 > 0.0) {
        return Err(ParamError::Nu1(nu1));
    }
    if rho == 1.0 {
        return Err(ParamError::DepthLimitUndefined);
    }
    if !(rho > 0.0 && rho < 1.0) {
        return Err(ParamError::Rho(rho));
    }
    let raw = ((horizon as f64).ln() + nu1.ln()) / -rho.ln();
    // ln 2 / ln 2 and friends must not round up past an exact integer
    let snapped = if (raw - raw.round()).abs() < 1e-12 {
        raw.round()
    } else {
        raw.ceil()
    };
    Ok(snapped.max(0.0).min(u32::MAX as f64) as u32)
}

/// Per-node bandit statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeStats {
    /// Number of evaluations at or below this node.
    pub visits: u64,
    pub mean_reward: f64,
    pub u_value: f64,
    pub b_value: f64,
    pub region: Region,
}

impl NodeStats {
    fn fresh(region: Region) -> Self {
        NodeStats {
            visits: 0,
            mean_reward: 0.0,
            u_value: f64::INFINITY,
            b_value: f64::INFINITY,
            region,
        }
    }
}

/// Optimistic upper confidence value of a node.
///
/// `mu + c * sqrt(2 ln(clock) / T) + nu1 * rho^depth`, or `+inf` when the
/// node has never been visited.
pub fn u_value(stats: &NodeStats, params: &HooParams, depth: u32, clock: u64) -> Result<f64, ParamError> {
    if clock < 1 {
        return Err(ParamError::Clock(clock));
    }
    if stats.visits == 0 {
        return Ok(f64::INFINITY);
    }
    let bonus = params.c * (2.0 * (clock as f64).ln() / stats.visits as f64).sqrt();
    Ok(stats.mean_reward + bonus + params.nu1 * params.rho.powi(depth as i32))
}

#[derive(Debug, Clone, PartialEq)]
struct Node {
    id: NodeId,
    stats: NodeStats,
    parent: Option<usize>,
    children: Option<[usize; 2]>,
    split_axis: Option<Axis>,
    member: bool,
    /// Evaluations performed at this very node.
    own_evals: u64,
    own_reward_sum: f64,
}

/// Read-only view of one stored node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeView {
    pub id: NodeId,
    pub stats: NodeStats,
    pub member: bool,
    pub children: Option<(NodeId, NodeId)>,
    pub split_axis: Option<Axis>,
    pub own_evals: u64,
    pub own_reward_sum: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TreeError {
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("backup path is empty")]
    EmptyPath,
    #[error("backup path is not a root-to-node chain")]
    BrokenPath,
    #[error("reward {0} outside [0, 1]")]
    RewardRange(f64),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A violated structural invariant found by [`HooTree::audit`].
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("node {node}: {what}")]
pub struct AuditViolation {
    pub node: NodeId,
    pub what: String,
}

// Stream ids inside the seeded ChaCha generator. Each consumer draws from its
// own stream so e.g. switching division policy never shifts tie-breaking.
const TIE_STREAM: u64 = 1;
const SPLIT_STREAM: u64 = 2;

pub(crate) fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Binary partition tree over a cuboid search space.
#[derive(Debug, Clone)]
pub struct HooTree {
    params: HooParams,
    max_depth: u32,
    nodes: Vec<Node>,
    lookup: HashMap<NodeId, usize>,
    members: usize,
    iteration: u64,
    mutations: u64,
    tie_rng: ChaCha8Rng,
    split_rng: ChaCha8Rng,
}

impl HooTree {
    /// Creates the tree with the root as sole member and its two children
    /// materialized at `B = +inf`.
    pub fn new(params: HooParams, space: Region) -> Result<Self, TreeError> {
        params.validate()?;
        space.validate()?;
        let max_depth = params.max_depth()?;
        let mut tree = HooTree {
            params,
            max_depth,
            nodes: Vec::new(),
            lookup: HashMap::new(),
            members: 0,
            iteration: 0,
            mutations: 0,
            tie_rng: stream_rng(params.seed, TIE_STREAM),
            split_rng: stream_rng(params.seed, SPLIT_STREAM),
        };
        let root = tree.push(NodeId::ROOT, NodeStats::fresh(space), None);
        tree.nodes[root].member = true;
        tree.members = 1;
        tree.divide_node(root)?;
        Ok(tree)
    }

    pub fn params(&self) -> &HooParams {
        &self.params
    }

    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    /// Completed iterations.
    pub fn iteration(&self) -> u64 {
        self.iteration
    }

    /// Number of nodes in the tree proper.
    pub fn member_count(&self) -> usize {
        self.members
    }

    /// Number of materialized nodes, members or not.
    pub fn stored_count(&self) -> usize {
        self.nodes.len()
    }

    /// Running total of node records written by expansion and backup.
    pub fn mutation_count(&self) -> u64 {
        self.mutations
    }

    pub fn root_region(&self) -> Region {
        self.nodes[0].stats.region
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.lookup.get(&id).is_some_and(|&i| self.nodes[i].member)
    }

    pub fn stats(&self, id: NodeId) -> Option<&NodeStats> {
        self.lookup.get(&id).map(|&i| &self.nodes[i].stats)
    }

    pub fn node(&self, id: NodeId) -> Option<NodeView> {
        self.lookup.get(&id).map(|&i| self.view(i))
    }

    /// All stored nodes in creation order.
    pub fn nodes(&self) -> impl Iterator<Item = NodeView> + '_ {
        (0..self.nodes.len()).map(|i| self.view(i))
    }

    /// Tree members sorted by id.
    pub fn members(&self) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = self.nodes.iter().filter(|n| n.member).map(|n| n.id).collect();
        ids.sort();
        ids
    }

    fn view(&self, i: usize) -> NodeView {
        let n = &self.nodes[i];
        NodeView {
            id: n.id,
            stats: n.stats,
            member: n.member,
            children: n.children.map(|[a, b]| (self.nodes[a].id, self.nodes[b].id)),
            split_axis: n.split_axis,
            own_evals: n.own_evals,
            own_reward_sum: n.own_reward_sum,
        }
    }

    fn push(&mut self, id: NodeId, stats: NodeStats, parent: Option<usize>) -> usize {
        let idx = self.nodes.len();
        self.nodes.push(Node {
            id,
            stats,
            parent,
            children: None,
            split_axis: None,
            member: false,
            own_evals: 0,
            own_reward_sum: 0.0,
        });
        self.lookup.insert(id, idx);
        idx
    }

    fn index_of(&self, id: NodeId) -> Result<usize, TreeError> {
        self.lookup.get(&id).copied().ok_or(TreeError::UnknownNode(id))
    }

    fn divide_node(&mut self, idx: usize) -> Result<(usize, usize), TreeError> {
        let (region, id) = (self.nodes[idx].stats.region, self.nodes[idx].id);
        let (lower, upper, axis) = divide(&region, self.params.policy, &mut self.split_rng)?;
        let (lo_id, hi_id) = id.children();
        let lo = self.push(lo_id, NodeStats::fresh(lower), Some(idx));
        let hi = self.push(hi_id, NodeStats::fresh(upper), Some(idx));
        self.nodes[idx].children = Some([lo, hi]);
        self.nodes[idx].split_axis = Some(axis);
        Ok((lo, hi))
    }

    /// Walks from the root towards the child with the larger B-value until it
    /// reaches a node outside the tree, a node at the depth cap, or a member
    /// that could not be divided. Equal B-values, including two infinities,
    /// are broken by a fair coin from the tie stream.
    ///
    /// Returns the root-to-leaf path (inclusive) and the leaf.
    pub fn select_path(&mut self) -> (Vec<NodeId>, NodeId) {
        let path = self.select_indices();
        let ids: Vec<NodeId> = path.iter().map(|&i| self.nodes[i].id).collect();
        let leaf = *ids.last().expect("path contains the root");
        (ids, leaf)
    }

    fn select_indices(&mut self) -> Vec<usize> {
        let mut path = vec![0usize];
        let mut cur = 0usize;
        loop {
            let node = &self.nodes[cur];
            if !node.member || node.id.depth >= self.max_depth {
                break;
            }
            let Some([a, b]) = node.children else { break };
            let (ba, bb) = (self.nodes[a].stats.b_value, self.nodes[b].stats.b_value);
            cur = match ba.partial_cmp(&bb) {
                Some(std::cmp::Ordering::Greater) => a,
                Some(std::cmp::Ordering::Less) => b,
                _ if self.tie_rng.gen::<bool>() => b,
                _ => a,
            };
            path.push(cur);
        }
        path
    }

    /// Adds `leaf` to the tree and, below the depth cap, halves its region.
    ///
    /// Returns the freshly created children. Leaves at the depth cap, leaves
    /// that are already divided and regions too thin to halve are not
    /// expanded; selection will evaluate them again in place.
    pub fn expand(&mut self, leaf: NodeId) -> Result<Option<(NodeId, NodeId)>, TreeError> {
        let idx = self.index_of(leaf)?;
        self.expand_index(idx)
            .map(|c| c.map(|(a, b)| (self.nodes[a].id, self.nodes[b].id)))
    }

    fn expand_index(&mut self, idx: usize) -> Result<Option<(usize, usize)>, TreeError> {
        if !self.nodes[idx].member {
            self.nodes[idx].member = true;
            self.members += 1;
        }
        let node = &self.nodes[idx];
        if node.children.is_some() || node.id.depth >= self.max_depth {
            return Ok(None);
        }
        match self.divide_node(idx) {
            Ok(pair) => {
                self.mutations += 2;
                Ok(Some(pair))
            }
            Err(TreeError::Geometry(GeometryError::NoDivisibleAxis)) => {
                log::debug!("region of {} is at float resolution, not dividing", leaf_id(&self.nodes[idx]));
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    /// Propagates `reward` from the last node of `path` back to the root.
    ///
    /// Each node on the path gains one visit and folds `reward` into its
    /// running mean; U-values are refreshed and B-values recomputed as
    /// `min(U, max(B_left, B_right))`, unexpanded children counting as
    /// `+inf`. Counts as one completed iteration.
    pub fn backup(&mut self, path: &[NodeId], reward: f64) -> Result<(), TreeError> {
        if path.is_empty() {
            return Err(TreeError::EmptyPath);
        }
        if path[0] != NodeId::ROOT {
            return Err(TreeError::BrokenPath);
        }
        let mut indices = Vec::with_capacity(path.len());
        for (k, &id) in path.iter().enumerate() {
            let idx = self.index_of(id)?;
            if k > 0 && self.nodes[idx].parent != Some(indices[k - 1]) {
                return Err(TreeError::BrokenPath);
            }
            indices.push(idx);
        }
        self.backup_indices(&indices, reward)
    }

    fn backup_indices(&mut self, path: &[usize], reward: f64) -> Result<(), TreeError> {
        if !(0.0..=1.0).contains(&reward) {
            return Err(TreeError::RewardRange(reward));
        }
        self.iteration += 1;
        let clock = self.clock();
        let leaf = *path.last().expect("non-empty path");
        self.nodes[leaf].own_evals += 1;
        self.nodes[leaf].own_reward_sum += reward;
        for &idx in path.iter().rev() {
            let depth = self.nodes[idx].id.depth;
            let stats = &mut self.nodes[idx].stats;
            stats.visits += 1;
            let t = stats.visits as f64;
            stats.mean_reward = (1.0 - 1.0 / t) * stats.mean_reward + reward / t;
            stats.u_value = u_value(stats, &self.params, depth, clock)?;
            self.refresh_b(idx);
        }
        self.mutations += path.len() as u64;
        if self.params.variant == Variant::Vanilla {
            self.refresh_all(clock)?;
        }
        Ok(())
    }

    fn clock(&self) -> u64 {
        match self.params.variant {
            Variant::Truncated => self.params.horizon as u64,
            Variant::Vanilla => self.iteration.max(1),
        }
    }

    fn refresh_b(&mut self, idx: usize) {
        let child_max = match self.nodes[idx].children {
            Some([a, b]) => self.nodes[a].stats.b_value.max(self.nodes[b].stats.b_value),
            None => f64::INFINITY,
        };
        let stats = &mut self.nodes[idx].stats;
        stats.b_value = stats.u_value.min(child_max);
    }

    /// Recomputes every visited node under the current clock. Children are
    /// always stored after their parent, so reverse storage order is
    /// bottom-up.
    fn refresh_all(&mut self, clock: u64) -> Result<(), TreeError> {
        let mut touched = 0u64;
        for idx in (0..self.nodes.len()).rev() {
            if self.nodes[idx].stats.visits == 0 {
                continue;
            }
            let depth = self.nodes[idx].id.depth;
            self.nodes[idx].stats.u_value = u_value(&self.nodes[idx].stats, &self.params, depth, clock)?;
            self.refresh_b(idx);
            touched += 1;
        }
        self.mutations += touched;
        Ok(())
    }

    /// One selection, expansion and backup with an externally computed
    /// reward. Returns the evaluated node and the path taken.
    pub fn iterate_with<F, E>(&mut self, evaluate: F) -> Result<(NodeId, Vec<NodeId>, f64), IterateError<E>>
    where
        F: FnOnce(&Region) -> Result<f64, E>,
    {
        let path = self.select_indices();
        let leaf = *path.last().expect("non-empty");
        self.expand_index(leaf).map_err(IterateError::Tree)?;
        let region = self.nodes[leaf].stats.region;
        let reward = evaluate(&region).map_err(IterateError::Evaluate)?;
        self.backup_indices(&path, reward).map_err(IterateError::Tree)?;
        let ids = path.iter().map(|&i| self.nodes[i].id).collect();
        Ok((self.nodes[leaf].id, ids, reward))
    }

    /// Deepest tree member; ties go to the most visited, then the lowest id.
    pub fn deepest_member(&self) -> NodeView {
        let best = self
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, n)| n.member)
            .max_by(|(_, x), (_, y)| {
                x.id.depth
                    .cmp(&y.id.depth)
                    .then(x.stats.visits.cmp(&y.stats.visits))
                    .then(y.id.index.cmp(&x.id.index))
            })
            .map(|(i, _)| i)
            .expect("root is a member");
        self.view(best)
    }

    /// Full structural audit: partition of every divided region, visit
    /// accounting, mean consistency, `B <= U`, infinite values on unvisited
    /// nodes and the depth cap.
    pub fn audit(&self) -> Result<(), AuditViolation> {
        let fail = |node: &Node, what: String| Err(AuditViolation { node: node.id, what });
        for node in &self.nodes {
            let s = &node.stats;
            if node.member && node.id.depth > self.max_depth {
                return fail(node, format!("member deeper than cap {}", self.max_depth));
            }
            if s.visits == 0 {
                if s.u_value != f64::INFINITY || s.b_value != f64::INFINITY {
                    return fail(node, "unvisited node with finite U or B".into());
                }
                continue;
            }
            if s.b_value > s.u_value {
                return fail(node, format!("B {} exceeds U {}", s.b_value, s.u_value));
            }
            let Some([a, b]) = node.children else { continue };
            let (l, r) = (&self.nodes[a], &self.nodes[b]);
            check_partition(&s.region, &l.stats.region, &r.stats.region, node.split_axis)
                .or_else(|what| fail(node, what))?;
            if node.id.depth > 0 && node.id.depth < self.max_depth && node.own_evals != 1 {
                return fail(node, format!("divided node evaluated {} times", node.own_evals));
            }
            let expected = l.stats.visits + r.stats.visits + node.own_evals;
            if s.visits != expected {
                return fail(node, format!("T = {} but children and own evals give {expected}", s.visits));
            }
            let total = s.visits as f64 * s.mean_reward;
            let parts = node.own_reward_sum
                + l.stats.visits as f64 * l.stats.mean_reward
                + r.stats.visits as f64 * r.stats.mean_reward;
            if (total - parts).abs() > 1e-9 {
                return fail(node, format!("T*mu = {total} but parts sum to {parts}"));
            }
        }
        Ok(())
    }
}

fn leaf_id(n: &Node) -> NodeId {
    n.id
}

fn check_partition(parent: &Region, lo: &Region, hi: &Region, axis: Option<Axis>) -> Result<(), String> {
    let a = axis.ok_or("divided node without split axis")?.index();
    for k in 0..3 {
        if k == a {
            if lo.min[k] != parent.min[k] || hi.max[k] != parent.max[k] || lo.max[k] != hi.min[k] {
                return Err(format!("children do not tile axis {k}"));
            }
            if !(lo.max[k] > parent.min[k] && lo.max[k] < parent.max[k]) {
                return Err(format!("split plane outside the parent on axis {k}"));
            }
        } else if lo.min[k] != parent.min[k]
            || lo.max[k] != parent.max[k]
            || hi.min[k] != parent.min[k]
            || hi.max[k] != parent.max[k]
        {
            return Err(format!("children change unsplit axis {k}"));
        }
    }
    let pv = parent.volume();
    let cv = lo.volume() + hi.volume();
    if (pv - cv).abs() > 1e-9 * pv.abs().max(f64::MIN_POSITIVE) {
        return Err(format!("child volumes {cv} differ from parent {pv}"));
    }
    Ok(())
}

#[derive(Debug, thiserror::Error)]
pub enum IterateError<E> {
    #[error(transparent)]
    Tree(TreeError),
    #[error("evaluation failed")]
    Evaluate(E),
}
