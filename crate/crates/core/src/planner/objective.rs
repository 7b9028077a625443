use serde::{Deserialize, Serialize};

use super::{CollisionModel, Path, Workspace};
use crate::geometry::{distance, Point2};

/// Treatment of candidates that collide with an inflated obstacle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PenaltyMode {
    /// Feasible value plus a large constant.
    #[default]
    Soft,
    /// `+inf`.
    Hard,
}

/// Penalty constant for a workspace: ten diagonals.
pub fn penalty_for(workspace: &Workspace) -> f64 {
    10.0 * workspace.bounds().diagonal()
}

/// Per-waypoint fitness: `d(previous, c) + d(c, goal)`, penalized when the
/// candidate is blocked. With `check_segments` the leg from `previous`
/// (and, for the last line, the leg on to the goal) must be clear too.
#[derive(Debug, Clone)]
pub struct WaypointObjective<'a> {
    collisions: CollisionModel<'a>,
    goal: Point2,
    penalty: f64,
    mode: PenaltyMode,
    check_segments: bool,
}

impl<'a> WaypointObjective<'a> {
    pub fn new(workspace: &'a Workspace, mode: PenaltyMode, check_segments: bool) -> Self {
        Self {
            collisions: workspace.collision_model(),
            goal: workspace.goal(),
            penalty: penalty_for(workspace),
            mode,
            check_segments,
        }
    }

    pub fn is_blocked(&self, candidate: Point2, previous: Point2, last: bool) -> bool {
        if self.collisions.point_blocked(candidate) {
            return true;
        }
        self.check_segments
            && (self.collisions.segment_blocked(previous, candidate)
                || (last && self.collisions.segment_blocked(candidate, self.goal)))
    }

    pub fn evaluate(&self, candidate: Point2, previous: Point2, last: bool) -> f64 {
        let value = distance(previous, candidate) + distance(candidate, self.goal);
        if !self.is_blocked(candidate, previous, last) {
            return value;
        }
        match self.mode {
            PenaltyMode::Soft => value + self.penalty,
            PenaltyMode::Hard => f64::INFINITY,
        }
    }

    pub fn penalty(&self) -> f64 {
        self.penalty
    }
}

/// Point-only soft-penalty waypoint fitness against `workspace`'s inflated
/// obstacles.
pub fn waypoint_fitness(candidate: Point2, previous: Point2, goal: Point2, workspace: &Workspace) -> f64 {
    let value = distance(previous, candidate) + distance(candidate, goal);
    if workspace.collision_model().point_blocked(candidate) {
        value + penalty_for(workspace)
    } else {
        value
    }
}

pub fn path_length(path: &Path) -> f64 {
    path.waypoints().windows(2).map(|w| distance(w[0], w[1])).sum()
}

/// Aggregate objective over the interior waypoints `wp_1..wp_n`:
/// `sum d(wp_{i-1}, wp_i) + sqrt(sum |wp_i - goal|^2)`, with `wp_0` the start.
pub fn whole_path_objective(path: &Path, goal: Point2) -> f64 {
    let pts = path.waypoints();
    let interior = &pts[1..pts.len() - 1];
    let continuity: f64 = pts[..pts.len() - 1].windows(2).map(|w| distance(w[0], w[1])).sum();
    let goal_term: f64 = interior
        .iter()
        .map(|p| (p.x - goal.x).powi(2) + (p.y - goal.y).powi(2))
        .sum::<f64>()
        .sqrt();
    continuity + goal_term
}
