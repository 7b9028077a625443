//! Environment documents: a strict JSON schema for workspaces, plus four
//! bundled scenarios.
//!
//! ```json
//! {"schema_version":1,
//!  "bounds":{"xmin":-1,"ymin":-1,"xmax":11,"ymax":11},
//!  "start":[0,0],"goal":[10,10],
//!  "robot_radius":0.1,"safety_margin":0.2,
//!  "obstacles":[{"kind":"circle","center":[5,5],"radius":1},
//!               {"kind":"polygon","vertices":[[2,2],[3,2],[3,3]]}]}
//! ```
//!
//! Unknown fields are rejected. Polygon vertices may be listed in either
//! winding and are stored counter-clockwise.
//!
//! The bundled scenarios are hand-made layouts. In each one the straight
//! start-goal line is blocked.

use std::path::Path as FsPath;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Circle, ConvexPolygon, GeometryError, Obstacle, Point2};
use crate::planner::{Bounds, Workspace};

pub const SCHEMA_VERSION: u32 = 1;

const BUNDLED: [&str; 4] = [
    include_str!("../scenarios/env1.json"),
    include_str!("../scenarios/env2.json"),
    include_str!("../scenarios/env3.json"),
    include_str!("../scenarios/env4.json"),
];

#[derive(Debug, Error)]
pub enum EnvError {
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },
    #[error("schema_version: expected {expected}, found {found}")]
    SchemaVersion { expected: u32, found: String },
    #[error("invalid environment at {field}: {message}")]
    Invariant { field: String, message: String },
    #[error("no bundled environment {0}; choose 1 to 4")]
    UnknownBundled(u32),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl EnvError {
    /// Field path the error refers to, when there is one.
    pub fn field(&self) -> Option<&str> {
        match self {
            EnvError::Parse { path, .. } => Some(path),
            EnvError::SchemaVersion { .. } => Some("schema_version"),
            EnvError::Invariant { field, .. } => Some(field),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundsDoc {
    pub xmin: f64,
    pub ymin: f64,
    pub xmax: f64,
    pub ymax: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum ObstacleDoc {
    Circle { center: [f64; 2], radius: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentFile {
    pub schema_version: u32,
    pub bounds: BoundsDoc,
    pub start: [f64; 2],
    pub goal: [f64; 2],
    pub robot_radius: f64,
    pub safety_margin: f64,
    pub obstacles: Vec<ObstacleDoc>,
}

impl EnvironmentFile {
    pub fn from_workspace(ws: &Workspace) -> Self {
        let b = ws.bounds();
        Self {
            schema_version: SCHEMA_VERSION,
            bounds: BoundsDoc { xmin: b.min.x, ymin: b.min.y, xmax: b.max.x, ymax: b.max.y },
            start: ws.start().into(),
            goal: ws.goal().into(),
            robot_radius: ws.robot_radius(),
            safety_margin: ws.safety_margin(),
            obstacles: ws
                .obstacles()
                .iter()
                .map(|o| match o {
                    Obstacle::Circle(c) => ObstacleDoc::Circle { center: c.center().into(), radius: c.radius() },
                    Obstacle::Polygon(p) => ObstacleDoc::Polygon {
                        vertices: p.vertices().iter().map(|v| (*v).into()).collect(),
                    },
                })
                .collect(),
        }
    }

    pub fn to_workspace(&self) -> Result<Workspace, EnvError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(EnvError::SchemaVersion {
                expected: SCHEMA_VERSION,
                found: self.schema_version.to_string(),
            });
        }
        let obstacles = self
            .obstacles
            .iter()
            .enumerate()
            .map(|(i, doc)| build_obstacle(i, doc))
            .collect::<Result<Vec<_>, _>>()?;
        let b = &self.bounds;
        Workspace::new(
            Bounds::new(b.xmin, b.ymin, b.xmax, b.ymax),
            obstacles,
            self.start.into(),
            self.goal.into(),
            self.robot_radius,
            self.safety_margin,
        )
        .map_err(|e| EnvError::Invariant { field: e.field, message: e.message })
    }
}

fn build_obstacle(i: usize, doc: &ObstacleDoc) -> Result<Obstacle, EnvError> {
    let invalid = |sub: &str, e: GeometryError| EnvError::Invariant {
        field: format!("obstacles[{i}].{sub}"),
        message: e.to_string(),
    };
    match doc {
        ObstacleDoc::Circle { center, radius } => {
            let center = Point2::from(*center);
            if !center.is_finite() {
                return Err(invalid("center", GeometryError::NonFinite));
            }
            Circle::new(center, *radius).map(Obstacle::from).map_err(|e| invalid("radius", e))
        }
        ObstacleDoc::Polygon { vertices } => {
            let verts = vertices.iter().map(|v| Point2::from(*v)).collect();
            ConvexPolygon::from_any_winding(verts)
                .map(Obstacle::from)
                .map_err(|e| invalid("vertices", e))
        }
    }
}

/// Parses and validates an environment document.
pub fn load_environment(document: &str) -> Result<Workspace, EnvError> {
    let value: serde_json::Value = serde_json::from_str(document)
        .map_err(|e| EnvError::Parse { path: ".".into(), message: e.to_string() })?;
    match value.get("schema_version") {
        Some(v) if v.as_u64() == Some(SCHEMA_VERSION as u64) => {}
        Some(v) => {
            return Err(EnvError::SchemaVersion { expected: SCHEMA_VERSION, found: v.to_string() })
        }
        None => {
            return Err(EnvError::Parse { path: "schema_version".into(), message: "missing field".into() })
        }
    }
    let file: EnvironmentFile = serde_path_to_error::deserialize(&value).map_err(|e| {
        let path = e.path().to_string();
        refine_obstacle_error(&value, &path).unwrap_or(EnvError::Parse { path, message: e.inner().to_string() })
    })?;
    file.to_workspace()
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct CircleFields {
    kind: String,
    center: [f64; 2],
    radius: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
#[allow(dead_code)]
struct PolygonFields {
    kind: String,
    vertices: Vec<[f64; 2]>,
}

// Internally tagged enums buffer their content, which hides the path below
// `obstacles[i]`. Re-parse that element against the variant's fields.
fn refine_obstacle_error(value: &serde_json::Value, path: &str) -> Option<EnvError> {
    let index: usize = path.strip_prefix("obstacles[")?.strip_suffix(']')?.parse().ok()?;
    let element = value.get("obstacles")?.get(index)?;
    let result = match element.get("kind")?.as_str()? {
        "circle" => serde_path_to_error::deserialize::<_, CircleFields>(element).map(|_| ()),
        "polygon" => serde_path_to_error::deserialize::<_, PolygonFields>(element).map(|_| ()),
        _ => return None,
    };
    let e = result.err()?;
    let inner = e.path().to_string();
    let path = if inner == "." { path.to_string() } else { format!("{path}.{inner}") };
    Some(EnvError::Parse { path, message: e.inner().to_string() })
}

pub fn load_environment_file(path: &FsPath) -> Result<Workspace, EnvError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| EnvError::Io { path: path.display().to_string(), source })?;
    load_environment(&text)
}

pub fn serialize_environment(ws: &Workspace) -> String {
    serde_json::to_string_pretty(&EnvironmentFile::from_workspace(ws)).expect("plain data serializes")
}

/// Bundled scenario `id` in `1..=4`.
pub fn bundled_environment(id: u32) -> Result<Workspace, EnvError> {
    let doc = (id as usize)
        .checked_sub(1)
        .and_then(|i| BUNDLED.get(i))
        .ok_or(EnvError::UnknownBundled(id))?;
    load_environment(doc)
}

/// Raw JSON text of bundled scenario `id`.
pub fn bundled_document(id: u32) -> Option<&'static str> {
    (id as usize).checked_sub(1).and_then(|i| BUNDLED.get(i)).copied()
}
