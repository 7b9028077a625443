//! Particle swarm path planning for a disc robot among static convex
//! obstacles.
//!
//! - [`geometry`]: points, circles, convex polygons, inflation, collision tests.
//! - [`pso`]: seedable particle swarm optimizer.
//! - [`planner`]: workspace model, grid-line waypoint search and path objectives.
//! - [`oracle`]: visibility-graph shortest path, for grading planner output.
//! - [`envio`]: JSON environment files and the bundled scenarios.
//! - [`cli`]: the `pso-planner` command-line front end.

pub mod cli;
pub mod envio;
pub mod geometry;
pub mod oracle;
pub mod planner;
pub mod pso;

pub use geometry::{distance, Circle, ConvexPolygon, Obstacle, Point2};
pub use planner::{plan, Bounds, Path, PlanResult, PlannerConfig, Workspace};
pub use pso::{optimize, PsoConfig, SearchDomain};
