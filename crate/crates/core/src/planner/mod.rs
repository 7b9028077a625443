//! Grid-line path planner.
//!
//! The start-goal span is cut by `n` lines perpendicular to the sweep axis.
//! Waypoints are chosen one line at a time: a one-dimensional swarm searches
//! line `i` for the point minimizing `d(wp_{i-1}, c) + d(c, GP)` with
//! `wp_{i-1}` already fixed, so each pick stays close to both its
//! predecessor and the goal.

mod grid;
mod objective;
mod workspace;

pub use grid::{build_grid, build_grid_on_axis, AxisChoice, GridModel, SweepAxis};
pub use objective::{
    path_length, penalty_for, waypoint_fitness, whole_path_objective, PenaltyMode, WaypointObjective,
};
pub use workspace::{Bounds, CollisionModel, Workspace, WorkspaceError};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{distance, Point2};
use crate::pso::{optimize_with_rng, PsoConfig, PsoError, SearchDomain};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error("start and goal coincide")]
    CoincidentEndpoints,
    #[error("at least one waypoint is required")]
    NoWaypoints,
    #[error("start and goal share the {0:?} coordinate, so grid lines would coincide")]
    FlatSweep(SweepAxis),
    #[error("a path needs at least two points")]
    ShortPath,
    #[error(transparent)]
    Pso(#[from] PsoError),
}

/// Ordered polyline `[SP, wp_1, ..., wp_n, GP]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    waypoints: Vec<Point2>,
}

impl Path {
    pub fn new(waypoints: Vec<Point2>) -> Result<Self, PlanError> {
        if waypoints.len() < 2 {
            return Err(PlanError::ShortPath);
        }
        Ok(Self { waypoints })
    }

    pub fn waypoints(&self) -> &[Point2] {
        &self.waypoints
    }

    pub fn start(&self) -> Point2 {
        self.waypoints[0]
    }

    pub fn goal(&self) -> Point2 {
        self.waypoints[self.waypoints.len() - 1]
    }

    pub fn length(&self) -> f64 {
        path_length(self)
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        self.waypoints.windows(2).map(|w| (w[0], w[1]))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlannerConfig {
    /// Number of interior waypoints `n`.
    pub waypoints: usize,
    /// Require every connecting segment to be collision-free, not just the
    /// waypoints.
    pub strict_segments: bool,
    pub penalty_mode: PenaltyMode,
    pub axis: AxisChoice,
    pub pso: PsoConfig,
}

impl Default for PlannerConfig {
    fn default() -> Self {
        Self {
            waypoints: 100,
            strict_segments: true,
            penalty_mode: PenaltyMode::Soft,
            axis: AxisChoice::Dominant,
            pso: PsoConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanResult {
    pub path: Path,
    pub total_length: f64,
    pub per_waypoint_fitness: Vec<f64>,
    pub iterations_per_waypoint: Vec<usize>,
    /// Global-best trace of each waypoint's swarm, one entry per iteration.
    pub fitness_history: Vec<Vec<f64>>,
    pub whole_path_objective: f64,
    pub feasible: bool,
    pub seed: u64,
}

/// Plans a path on `workspace`. Never fails on blocked geometry; a path that
/// touches an inflated obstacle comes back with `feasible == false`.
pub fn plan(workspace: &Workspace, config: &PlannerConfig) -> Result<PlanResult, PlanError> {
    config.pso.validate()?;
    let start = workspace.start();
    let goal = workspace.goal();
    let grid = build_grid_on_axis(start, goal, config.waypoints, workspace.bounds(), config.axis)?;
    let objective = WaypointObjective::new(workspace, config.penalty_mode, config.strict_segments);
    let domain = SearchDomain::interval(grid.free_range.0, grid.free_range.1)?;

    let n = grid.n;
    let mut waypoints = Vec::with_capacity(n + 2);
    waypoints.push(start);
    let mut per_waypoint_fitness = Vec::with_capacity(n);
    let mut iterations_per_waypoint = Vec::with_capacity(n);
    let mut fitness_history = Vec::with_capacity(n);

    for line in 0..n {
        let previous = *waypoints.last().expect("start is present");
        let last = line + 1 == n;
        let fitness = |x: &[f64]| objective.evaluate(grid.point_on_line(line, x[0]), previous, last);
        let mut rng = ChaCha8Rng::seed_from_u64(config.pso.rng_seed);
        rng.set_stream(line as u64);
        let outcome = optimize_with_rng(&config.pso, &domain, fitness, &mut rng)?;
        waypoints.push(grid.point_on_line(line, outcome.position[0]));
        per_waypoint_fitness.push(outcome.fitness);
        iterations_per_waypoint.push(outcome.iterations);
        fitness_history.push(outcome.history);
    }
    waypoints.push(goal);

    let path = Path::new(waypoints)?;
    let feasible = check_feasible(workspace, &path, config.strict_segments);
    Ok(PlanResult {
        total_length: path_length(&path),
        whole_path_objective: whole_path_objective(&path, goal),
        path,
        per_waypoint_fitness,
        iterations_per_waypoint,
        fitness_history,
        feasible,
        seed: config.pso.rng_seed,
    })
}

/// True iff no waypoint (and, when `strict_segments`, no segment) touches an
/// inflated obstacle.
pub fn check_feasible(workspace: &Workspace, path: &Path, strict_segments: bool) -> bool {
    let model = workspace.collision_model();
    let points_clear = path.waypoints().iter().all(|p| !model.point_blocked(*p));
    points_clear && (!strict_segments || path.segments().all(|(a, b)| !model.segment_blocked(a, b)))
}

/// Perpendicular distance from `p` to the infinite line through `a` and `b`.
pub fn offset_from_line(p: Point2, a: Point2, b: Point2) -> f64 {
    crate::geometry::cross(a, b, p).abs() / distance(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Circle, ConvexPolygon, Obstacle};

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn empty_line() -> Workspace {
        Workspace::new(Bounds::new(-2., -5., 12., 5.), vec![], p(0., 0.), p(10., 0.), 0.1, 0.2).unwrap()
    }

    fn quick(n: usize, seed: u64) -> PlannerConfig {
        PlannerConfig {
            waypoints: n,
            pso: PsoConfig { swarm_size: 60, max_iterations: 60, rng_seed: seed, ..PsoConfig::default() },
            ..PlannerConfig::default()
        }
    }

    #[test]
    fn straight_line_in_empty_space() {
        let ws = empty_line();
        let cfg = PlannerConfig { waypoints: 10, ..PlannerConfig::default() };
        let r = plan(&ws, &cfg).unwrap();
        assert!(r.feasible);
        assert_eq!(r.path.waypoints().len(), 12);
        assert_eq!(r.path.start(), ws.start());
        assert_eq!(r.path.goal(), ws.goal());
        assert!(r.total_length <= 10.05, "{}", r.total_length);
        assert!(r.total_length >= 10.0);
        for (i, w) in r.path.waypoints()[1..11].iter().enumerate() {
            assert_eq!(w.x, (i + 1) as f64 * 10.0 / 11.0);
            assert!(w.y.abs() < 0.05 * 10.0);
        }
    }

    #[test]
    fn single_waypoint_midline() {
        let ws = Workspace::new(Bounds::new(-1., -3., 3., 3.), vec![], p(0., 0.), p(2., 0.), 0.0, 0.0).unwrap();
        let r = plan(&ws, &PlannerConfig { waypoints: 1, ..PlannerConfig::default() }).unwrap();
        let w = r.path.waypoints();
        assert_eq!(w.len(), 3);
        assert_eq!(w[1].x, 1.0);
        assert!(w[1].y.abs() < 1e-3, "{:?}", w[1]);
    }

    #[test]
    fn detours_around_disc() {
        let disc: Obstacle = Circle::new(p(5., 0.3), 1.0).unwrap().into();
        let ws = Workspace::new(Bounds::new(-1., -5., 11., 5.), vec![disc], p(0., 0.), p(10., 0.), 0.1, 0.1)
            .unwrap();
        let r = plan(&ws, &quick(40, 3)).unwrap();
        assert!(r.feasible);
        assert!(r.total_length > 10.0);
        assert!(check_feasible(&ws, &r.path, true));
    }

    #[test]
    fn point_only_mode_can_cut_corners() {
        // the single grid line x = 5 is clear, but the straight legs are not
        let block: Obstacle = ConvexPolygon::new(vec![p(2., -1.), p(4., -1.), p(4., 1.), p(2., 1.)])
            .unwrap()
            .into();
        let ws = Workspace::new(Bounds::new(-1., -5., 11., 5.), vec![block], p(0., 0.), p(10., 0.), 0.0, 0.0)
            .unwrap();
        let lax = PlannerConfig { waypoints: 1, strict_segments: false, ..quick(1, 0) };
        let r = plan(&ws, &lax).unwrap();
        assert!(r.feasible);
        assert!(r.path.waypoints()[1].y.abs() < 1e-3);
        assert!(!check_feasible(&ws, &r.path, true));

        let strict = PlannerConfig { strict_segments: true, ..lax };
        let r = plan(&ws, &strict).unwrap();
        assert!(r.feasible);
        assert!(r.path.waypoints()[1].y.abs() > 2.5);
    }

    #[test]
    fn blocked_line_reports_infeasible() {
        // a wall spanning the full free range
        let wall: Obstacle = ConvexPolygon::new(vec![p(4., -6.), p(6., -6.), p(6., 6.), p(4., 6.)])
            .unwrap()
            .into();
        let ws = Workspace::new(Bounds::new(-1., -5., 11., 5.), vec![wall], p(0., 0.), p(10., 0.), 0.0, 0.0)
            .unwrap();
        let r = plan(&ws, &quick(9, 1)).unwrap();
        assert!(!r.feasible);
        assert!(r.per_waypoint_fitness.iter().any(|f| *f >= penalty_for(&ws)));

        let hard = PlannerConfig { penalty_mode: PenaltyMode::Hard, ..quick(9, 1) };
        let r = plan(&ws, &hard).unwrap();
        assert!(!r.feasible);
        assert!(r.per_waypoint_fitness.iter().any(|f| f.is_infinite()));
        assert_eq!(r.path.waypoints().len(), 11);
    }

    #[test]
    fn rejects_invalid_config() {
        let ws = empty_line();
        let bad = PlannerConfig { waypoints: 0, ..PlannerConfig::default() };
        assert_eq!(plan(&ws, &bad).unwrap_err(), PlanError::NoWaypoints);
        let bad = PlannerConfig { pso: PsoConfig { swarm_size: 0, ..PsoConfig::default() }, ..PlannerConfig::default() };
        assert!(matches!(plan(&ws, &bad), Err(PlanError::Pso(_))));
    }

    #[test]
    fn identical_inputs_identical_result() {
        let ws = empty_line();
        let a = plan(&ws, &quick(8, 11)).unwrap();
        let b = plan(&ws, &quick(8, 11)).unwrap();
        assert_eq!(a, b);
        let c = plan(&ws, &quick(8, 12)).unwrap();
        assert_ne!(a.path, c.path);
    }

    #[test]
    fn forced_axis() {
        let ws = Workspace::new(Bounds::new(-1., -1., 11., 11.), vec![], p(0., 0.), p(10., 4.), 0.0, 0.0).unwrap();
        let cfg = PlannerConfig { axis: AxisChoice::Y, ..quick(5, 2) };
        let r = plan(&ws, &cfg).unwrap();
        for (i, w) in r.path.waypoints()[1..6].iter().enumerate() {
            assert_eq!(w.y, (i + 1) as f64 * 4.0 / 6.0);
        }
    }

    #[test]
    fn offset_helper() {
        assert_eq!(offset_from_line(p(3., 2.), p(0., 0.), p(10., 0.)), 2.0);
    }
}
