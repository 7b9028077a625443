use serde::{Deserialize, Serialize};

use super::{Bounds, PlanError};
use crate::geometry::{distance, Point2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepAxis {
    X,
    Y,
}

/// How the sweep axis is picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisChoice {
    /// The axis along which goal and start differ most.
    #[default]
    Dominant,
    X,
    Y,
}

/// `n` lines perpendicular to the sweep axis, evenly dividing start to goal
/// into `n + 1` parts. Waypoint `i` is searched along line `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridModel {
    pub n: usize,
    /// Spacing along the start-goal segment, `d(SP, GP) / (n + 1)`.
    pub spacing: f64,
    pub sweep_axis: SweepAxis,
    /// Fixed sweep coordinate of each line, from the start side.
    pub line_coordinates: Vec<f64>,
    /// Searchable range of the free coordinate on every line.
    pub free_range: (f64, f64),
}

impl GridModel {
    pub fn point_on_line(&self, line: usize, free: f64) -> Point2 {
        let fixed = self.line_coordinates[line];
        match self.sweep_axis {
            SweepAxis::X => Point2::new(fixed, free),
            SweepAxis::Y => Point2::new(free, fixed),
        }
    }

    /// The free coordinate of `p` for this grid.
    pub fn free_coordinate(&self, p: Point2) -> f64 {
        match self.sweep_axis {
            SweepAxis::X => p.y,
            SweepAxis::Y => p.x,
        }
    }
}

pub fn build_grid(start: Point2, goal: Point2, n: usize, bounds: Bounds) -> Result<GridModel, PlanError> {
    build_grid_on_axis(start, goal, n, bounds, AxisChoice::Dominant)
}

pub fn build_grid_on_axis(
    start: Point2,
    goal: Point2,
    n: usize,
    bounds: Bounds,
    axis: AxisChoice,
) -> Result<GridModel, PlanError> {
    if start == goal {
        return Err(PlanError::CoincidentEndpoints);
    }
    if n == 0 {
        return Err(PlanError::NoWaypoints);
    }
    let dx = goal.x - start.x;
    let dy = goal.y - start.y;
    let sweep_axis = match axis {
        AxisChoice::X => SweepAxis::X,
        AxisChoice::Y => SweepAxis::Y,
        AxisChoice::Dominant if dx.abs() >= dy.abs() => SweepAxis::X,
        AxisChoice::Dominant => SweepAxis::Y,
    };
    let (origin, delta, free_range) = match sweep_axis {
        SweepAxis::X => (start.x, dx, (bounds.min.y, bounds.max.y)),
        SweepAxis::Y => (start.y, dy, (bounds.min.x, bounds.max.x)),
    };
    if delta == 0.0 {
        return Err(PlanError::FlatSweep(sweep_axis));
    }
    let parts = (n + 1) as f64;
    let line_coordinates = (1..=n).map(|i| origin + i as f64 * delta / parts).collect();
    Ok(GridModel {
        n,
        spacing: distance(start, goal) / parts,
        sweep_axis,
        line_coordinates,
        free_range,
    })
}
