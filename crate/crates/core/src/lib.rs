//! Hierarchical optimistic optimization over 3D cuboid search spaces.
//!
//! The explorer looks for the camera placement that a black-box scorer
//! rates highest. It partitions an axis-aligned search box into a binary
//! tree of cuboids, always descending towards the child with the larger
//! optimistic bound, places a camera at the center of the region it reaches
//! and scores a fixed fan of view directions in one batch.
//!
//! Modules:
//!
//! - [`geometry`]: regions, division policies, Fibonacci directions
//! - [`tree`]: the partition tree with truncated and vanilla confidence clocks
//! - [`explorer`]: the iteration driver and exploration logs
//! - [`scorer`]: scorer trait, synthetic scenes, region reward, grid oracle
//! - [`protocol`] and [`tiling`]: the batched remote scoring wire format
//! - [`bench`] and [`suite`]: random baseline, experiment runner, CSV output

pub mod bench;
pub mod error;
pub mod explorer;
pub mod geometry;
pub mod protocol;
pub mod scorer;
pub mod suite;
pub mod tiling;
pub mod tree;

pub use error::{ConfigError, ExploreError, GeometryError, ParamError, ScoreError};
pub use explorer::{run, ExplorationLog, HooExplorer, IterationRecord};
pub use geometry::{fibonacci_directions, CameraPose, Direction, DivisionPolicy, Region, Vec3};
pub use scorer::{grid_oracle, region_reward, Scorer, SyntheticScene};
pub use tree::{depth_limit, DepthLimit, HooParams, HooTree, NodeId, NodeStats, Variant};
