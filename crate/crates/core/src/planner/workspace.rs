use thiserror::Error;

use crate::geometry::{Aabb, Obstacle, Point2};

/// A workspace invariant that does not hold, tagged with the offending field.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{field}: {message}")]
pub struct WorkspaceError {
    pub field: String,
    pub message: String,
}

impl WorkspaceError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        Self { field: field.into(), message: message.into() }
    }
}

/// Axis-aligned rectangle the robot is confined to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub min: Point2,
    pub max: Point2,
}

impl Bounds {
    pub fn new(xmin: f64, ymin: f64, xmax: f64, ymax: f64) -> Self {
        Self { min: Point2::new(xmin, ymin), max: Point2::new(xmax, ymax) }
    }

    pub fn contains(&self, p: Point2) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn diagonal(&self) -> f64 {
        crate::geometry::distance(self.min, self.max)
    }
}

/// Static planning problem for a disc robot. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Workspace {
    bounds: Bounds,
    obstacles: Vec<Obstacle>,
    start: Point2,
    goal: Point2,
    robot_radius: f64,
    safety_margin: f64,
    inflated: Vec<Obstacle>,
}

impl Workspace {
    pub fn new(
        bounds: Bounds,
        obstacles: Vec<Obstacle>,
        start: Point2,
        goal: Point2,
        robot_radius: f64,
        safety_margin: f64,
    ) -> Result<Self, WorkspaceError> {
        if !bounds.min.is_finite() || !bounds.max.is_finite() {
            return Err(WorkspaceError::new("bounds", "coordinates must be finite"));
        }
        if !(bounds.min.x < bounds.max.x) {
            return Err(WorkspaceError::new("bounds.xmax", "must exceed xmin"));
        }
        if !(bounds.min.y < bounds.max.y) {
            return Err(WorkspaceError::new("bounds.ymax", "must exceed ymin"));
        }
        if !(robot_radius >= 0.0 && robot_radius.is_finite()) {
            return Err(WorkspaceError::new("robot_radius", "must be finite and non-negative"));
        }
        if !(safety_margin >= 0.0 && safety_margin.is_finite()) {
            return Err(WorkspaceError::new("safety_margin", "must be finite and non-negative"));
        }
        for (name, p) in [("start", start), ("goal", goal)] {
            if !p.is_finite() {
                return Err(WorkspaceError::new(name, "coordinates must be finite"));
            }
            if !bounds.contains(p) {
                return Err(WorkspaceError::new(name, "lies outside the bounds"));
            }
        }
        if start == goal {
            return Err(WorkspaceError::new("goal", "coincides with start"));
        }
        let clearance = robot_radius + safety_margin;
        let inflated: Vec<Obstacle> = if clearance > 0.0 {
            obstacles
                .iter()
                .map(|o| o.inflate(clearance).expect("clearance is positive"))
                .collect()
        } else {
            obstacles.clone()
        };
        for (i, o) in inflated.iter().enumerate() {
            if o.contains_point(start) {
                return Err(WorkspaceError::new(
                    "start",
                    format!("lies inside inflated obstacle {i}"),
                ));
            }
            if o.contains_point(goal) {
                return Err(WorkspaceError::new(
                    "goal",
                    format!("lies inside inflated obstacle {i}"),
                ));
            }
        }
        Ok(Self { bounds, obstacles, start, goal, robot_radius, safety_margin, inflated })
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// Obstacles as given, before inflation.
    pub fn obstacles(&self) -> &[Obstacle] {
        &self.obstacles
    }

    /// Obstacles grown by `robot_radius + safety_margin`; the robot is a
    /// point against these.
    pub fn inflated_obstacles(&self) -> &[Obstacle] {
        &self.inflated
    }

    pub fn start(&self) -> Point2 {
        self.start
    }

    pub fn goal(&self) -> Point2 {
        self.goal
    }

    pub fn robot_radius(&self) -> f64 {
        self.robot_radius
    }

    pub fn safety_margin(&self) -> f64 {
        self.safety_margin
    }

    pub fn clearance(&self) -> f64 {
        self.robot_radius + self.safety_margin
    }

    pub fn collision_model(&self) -> CollisionModel<'_> {
        CollisionModel::new(&self.inflated)
    }
}

/// Inflated obstacles with bounding boxes for quick rejection.
#[derive(Debug, Clone)]
pub struct CollisionModel<'a> {
    obstacles: &'a [Obstacle],
    boxes: Vec<Aabb>,
}

impl<'a> CollisionModel<'a> {
    pub fn new(obstacles: &'a [Obstacle]) -> Self {
        Self { obstacles, boxes: obstacles.iter().map(Obstacle::aabb).collect() }
    }

    pub fn point_blocked(&self, p: Point2) -> bool {
        let eps = crate::geometry::GEOM_EPS;
        self.obstacles
            .iter()
            .zip(&self.boxes)
            .any(|(o, b)| b.contains(p, eps) && o.contains_point(p))
    }

    pub fn segment_blocked(&self, a: Point2, b: Point2) -> bool {
        let eps = crate::geometry::GEOM_EPS;
        self.obstacles
            .iter()
            .zip(&self.boxes)
            .any(|(o, bx)| bx.overlaps_segment(a, b, eps) && o.segment_intersects(a, b))
    }
}
