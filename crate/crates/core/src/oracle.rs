//! Reference shortest path over the visibility graph of the inflated
//! obstacles.
//!
//! Nodes are the start, the goal and every inflated polygon vertex; circles
//! are replaced by circumscribed regular polygons with [`CIRCLE_SIDES`]
//! sides. Two nodes are joined when the segment between them does not pass
//! through any obstacle interior, so paths may run along edges and touch
//! vertices.

use petgraph::algo::astar;
use petgraph::graph::{NodeIndex, UnGraph};
use thiserror::Error;

use crate::geometry::{distance, Obstacle, Point2, GEOM_EPS};
use crate::planner::Workspace;

pub const CIRCLE_SIDES: usize = 32;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("goal is not reachable from start")]
    Unreachable,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OraclePath {
    pub points: Vec<Point2>,
    pub length: f64,
}

#[derive(Debug, Clone)]
pub struct VisibilityGraph {
    pub nodes: Vec<Point2>,
    pub graph: UnGraph<Point2, f64>,
    /// Polygonal stand-ins for the inflated obstacles.
    pub obstacles: Vec<Obstacle>,
}

impl VisibilityGraph {
    /// Node 0 is the start, node 1 the goal.
    pub fn build(workspace: &Workspace) -> Self {
        let obstacles: Vec<Obstacle> = workspace
            .inflated_obstacles()
            .iter()
            .map(|o| match o {
                Obstacle::Circle(c) => c.circumscribed_polygon(CIRCLE_SIDES).into(),
                Obstacle::Polygon(_) => o.clone(),
            })
            .collect();
        let boxes: Vec<_> = obstacles.iter().map(Obstacle::aabb).collect();

        let mut nodes = vec![workspace.start(), workspace.goal()];
        for o in &obstacles {
            if let Obstacle::Polygon(poly) = o {
                nodes.extend(
                    poly.vertices()
                        .iter()
                        .filter(|v| !obstacles.iter().any(|other| other.point_in_interior(**v, GEOM_EPS))),
                );
            }
        }

        let visible = |a: Point2, b: Point2| {
            !obstacles
                .iter()
                .zip(&boxes)
                .any(|(o, bx)| bx.overlaps_segment(a, b, GEOM_EPS) && o.segment_crosses_interior(a, b, GEOM_EPS))
        };

        let mut graph = UnGraph::with_capacity(nodes.len(), nodes.len() * 4);
        let idx: Vec<NodeIndex> = nodes.iter().map(|p| graph.add_node(*p)).collect();
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                let w = distance(nodes[i], nodes[j]);
                if w > 0.0 && visible(nodes[i], nodes[j]) {
                    graph.add_edge(idx[i], idx[j], w);
                }
            }
        }
        Self { nodes, graph, obstacles }
    }

    pub fn shortest_path(&self) -> Result<OraclePath, OracleError> {
        let start = NodeIndex::new(0);
        let goal = NodeIndex::new(1);
        let (length, route) = astar(&self.graph, start, |n| n == goal, |e| *e.weight(), |_| 0.0)
            .ok_or(OracleError::Unreachable)?;
        Ok(OraclePath { points: route.into_iter().map(|n| self.graph[n]).collect(), length })
    }
}

pub fn shortest_path(workspace: &Workspace) -> Result<OraclePath, OracleError> {
    VisibilityGraph::build(workspace).shortest_path()
}
