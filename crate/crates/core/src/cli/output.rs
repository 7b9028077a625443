//! CSV and SVG writers for planned paths.

use std::fmt::Write as _;

use crate::geometry::{Obstacle, Point2};
use crate::planner::{Path, Workspace};

/// `x,y` header, then one row per waypoint. Values use the shortest
/// representation that reads back to the same `f64`.
pub fn path_to_csv(path: &Path) -> String {
    let mut out = String::from("x,y\n");
    for p in path.waypoints() {
        writeln!(out, "{},{}", p.x, p.y).unwrap();
    }
    out
}

pub fn path_from_csv(text: &str) -> Result<Vec<Point2>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some("x,y") => {}
        other => return Err(format!("expected header `x,y`, found {other:?}")),
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, line)| {
            let (x, y) = line.split_once(',').ok_or_else(|| format!("row {}: missing comma", i + 1))?;
            let parse = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("row {}: {e}", i + 1));
            Ok(Point2::new(parse(x)?, parse(y)?))
        })
        .collect()
}

const CANVAS: f64 = 800.0;
const PAD: f64 = 20.0;

struct Frame {
    min: Point2,
    max: Point2,
    scale: f64,
}

impl Frame {
    fn new(ws: &Workspace) -> Self {
        let b = ws.bounds();
        let span = (b.max.x - b.min.x).max(b.max.y - b.min.y);
        Self { min: b.min, max: b.max, scale: (CANVAS - 2.0 * PAD) / span }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (PAD + (p.x - self.min.x) * self.scale, PAD + (self.max.y - p.y) * self.scale)
    }

    fn size(&self) -> (f64, f64) {
        (
            2.0 * PAD + (self.max.x - self.min.x) * self.scale,
            2.0 * PAD + (self.max.y - self.min.y) * self.scale,
        )
    }

    fn points(&self, pts: &[Point2]) -> String {
        pts.iter()
            .map(|p| {
                let (x, y) = self.map(*p);
                format!("{x:.3},{y:.3}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn shape(&self, o: &Obstacle, style: &str) -> String {
        match o {
            Obstacle::Circle(c) => {
                let (x, y) = self.map(c.center());
                format!(r#"<circle cx="{x:.3}" cy="{y:.3}" r="{:.3}" {style}/>"#, c.radius() * self.scale)
            }
            Obstacle::Polygon(p) => format!(r#"<polygon points="{}" {style}/>"#, self.points(p.vertices())),
        }
    }
}

/// SVG 1.1 drawing of the workspace: bounds, filled raw obstacles, dashed
/// inflated outlines, the planned path and, optionally, a reference path.
pub fn render_svg(ws: &Workspace, path: &Path, reference: Option<&[Point2]>) -> String {
    let f = Frame::new(ws);
    let (w, h) = f.size();
    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.3} {h:.3}">"#
    )
    .unwrap();
    let (x0, y0) = f.map(Point2::new(f.min.x, f.max.y));
    writeln!(
        out,
        r#"<rect x="{x0:.3}" y="{y0:.3}" width="{:.3}" height="{:.3}" fill="white" stroke="black" stroke-width="1"/>"#,
        (f.max.x - f.min.x) * f.scale,
        (f.max.y - f.min.y) * f.scale
    )
    .unwrap();
    writeln!(out, r#"<g id="inflated">"#).unwrap();
    for o in ws.inflated_obstacles() {
        writeln!(out, "{}", f.shape(o, r##"fill="none" stroke="#555555" stroke-width="1" stroke-dasharray="4 3""##))
            .unwrap();
    }
    writeln!(out, "</g>").unwrap();
    writeln!(out, r#"<g id="obstacles">"#).unwrap();
    for o in ws.obstacles() {
        writeln!(out, "{}", f.shape(o, r##"fill="#333333" stroke="none""##)).unwrap();
    }
    writeln!(out, "</g>").unwrap();
    if let Some(refpath) = reference {
        writeln!(
            out,
            r##"<polyline id="reference" points="{}" fill="none" stroke="#1f5fbf" stroke-width="1.5" stroke-dasharray="6 4"/>"##,
            f.points(refpath)
        )
        .unwrap();
    }
    writeln!(
        out,
        r##"<polyline id="path" points="{}" fill="none" stroke="#d62728" stroke-width="2"/>"##,
        f.points(path.waypoints())
    )
    .unwrap();
    for (id, p, colour) in [("start", ws.start(), "#2ca02c"), ("goal", ws.goal(), "#1f77b4")] {
        let (x, y) = f.map(p);
        writeln!(out, r#"<circle id="{id}" cx="{x:.3}" cy="{y:.3}" r="5" fill="{colour}"/>"#).unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}
