//! Exact 2D primitives used for feasibility checks: distances, containment,
//! obstacle inflation and segment/obstacle intersection.
//!
//! All shapes are closed sets. A point on an obstacle boundary is inside it.
//! Sidedness tests accept a slack of [`GEOM_EPS`] meters.

use std::f64::consts::PI;

use thiserror::Error;

/// Default sidedness tolerance in meters.
pub const GEOM_EPS: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("coordinate is not finite")]
    NonFinite,
    #[error("circle radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon repeats vertex {0}")]
    RepeatedVertex(usize),
    #[error("polygon is not strictly convex at vertex {0}")]
    NotStrictlyConvex(usize),
    #[error("inflation margin must be positive, got {0}")]
    NonPositiveMargin(f64),
}

/// A position in the plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }

    fn add_scaled(self, d: Point2, t: f64) -> Point2 {
        Point2::new(self.x + d.x * t, self.y + d.y * t)
    }

    fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }
}

impl From<[f64; 2]> for Point2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Point2::new(x, y)
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

/// Euclidean distance between two points.
pub fn distance(a: Point2, b: Point2) -> f64 {
    a.sub(b).norm()
}

/// z-component of `(b - a) x (c - a)`; positive when `c` is left of `a -> b`.
pub fn cross(a: Point2, b: Point2, c: Point2) -> f64 {
    let u = b.sub(a);
    let v = c.sub(a);
    u.x * v.y - u.y * v.x
}

/// Distance from `p` to the closed segment `ab`.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let d = b.sub(a);
    let len2 = d.dot(d);
    if len2 == 0.0 {
        return distance(p, a);
    }
    let t = (p.sub(a).dot(d) / len2).clamp(0.0, 1.0);
    distance(p, a.add_scaled(d, t))
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub min: Point2,
    pub max: Point2,
}

impl Aabb {
    pub fn contains(&self, p: Point2, eps: f64) -> bool {
        p.x >= self.min.x - eps
            && p.x <= self.max.x + eps
            && p.y >= self.min.y - eps
            && p.y <= self.max.y + eps
    }

    pub fn overlaps_segment(&self, a: Point2, b: Point2, eps: f64) -> bool {
        a.x.max(b.x) >= self.min.x - eps
            && a.x.min(b.x) <= self.max.x + eps
            && a.y.max(b.y) >= self.min.y - eps
            && a.y.min(b.y) <= self.max.y + eps
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    center: Point2,
    radius: f64,
}

impl Circle {
    pub fn new(center: Point2, radius: f64) -> Result<Self, GeometryError> {
        if !center.is_finite() || !radius.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if radius <= 0.0 {
            return Err(GeometryError::NonPositiveRadius(radius));
        }
        Ok(Self { center, radius })
    }

    pub fn center(&self) -> Point2 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Regular polygon with `sides` vertices whose edges are tangent to this
    /// circle, so it contains the whole disc.
    pub fn circumscribed_polygon(&self, sides: usize) -> ConvexPolygon {
        let sides = sides.max(3);
        let r = self.radius / (PI / sides as f64).cos();
        let vertices = (0..sides)
            .map(|k| {
                let a = 2.0 * PI * k as f64 / sides as f64;
                Point2::new(self.center.x + r * a.cos(), self.center.y + r * a.sin())
            })
            .collect();
        ConvexPolygon::new(vertices).expect("regular polygon is strictly convex")
    }
}

/// Outward-facing supporting line of one polygon edge: inside is `normal . p <= offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct HalfPlane {
    normal: Point2,
    offset: f64,
}

impl HalfPlane {
    fn signed_distance(&self, p: Point2) -> f64 {
        self.normal.dot(p) - self.offset
    }
}

/// Strictly convex polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
    edges: Vec<HalfPlane>,
}

impl ConvexPolygon {
    /// Builds a polygon from counter-clockwise vertices.
    pub fn new(vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices(n));
        }
        if vertices.iter().any(|v| !v.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        for i in 0..n {
            if vertices[..i].contains(&vertices[i]) {
                return Err(GeometryError::RepeatedVertex(i));
            }
        }
        // every turn strictly left and total turning exactly one revolution
        let mut turning = 0.0;
        for i in 0..n {
            let prev = vertices[(i + n - 1) % n];
            let cur = vertices[i];
            let next = vertices[(i + 1) % n];
            let e1 = cur.sub(prev);
            let e2 = next.sub(cur);
            let c = e1.x * e2.y - e1.y * e2.x;
            if c <= 1e-12 * e1.norm() * e2.norm() {
                return Err(GeometryError::NotStrictlyConvex(i));
            }
            turning += c.atan2(e1.dot(e2));
        }
        if (turning - 2.0 * PI).abs() > 1e-6 {
            return Err(GeometryError::NotStrictlyConvex(0));
        }
        let edges = (0..n)
            .map(|i| {
                let a = vertices[i];
                let b = vertices[(i + 1) % n];
                let d = b.sub(a);
                let len = d.norm();
                let normal = Point2::new(d.y / len, -d.x / len);
                HalfPlane { normal, offset: normal.dot(a) }
            })
            .collect();
        Ok(Self { vertices, edges })
    }

    /// Builds a polygon from vertices in either winding, reversing clockwise input.
    pub fn from_any_winding(mut vertices: Vec<Point2>) -> Result<Self, GeometryError> {
        if signed_area(&vertices) < 0.0 {
            vertices.reverse();
        }
        Self::new(vertices)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    /// Point location by binary search over the triangle fan at vertex 0.
    pub fn contains_point_eps(&self, p: Point2, eps: f64) -> bool {
        let v = &self.vertices;
        let n = v.len();
        if self.edges[0].signed_distance(p) > eps || self.edges[n - 1].signed_distance(p) > eps {
            return false;
        }
        // largest k in [1, n-2] with p left of or on the ray v0 -> vk
        let (mut lo, mut hi) = (1, n - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if cross(v[0], v[mid], p) >= 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        self.edges[lo].signed_distance(p) <= eps
    }

    /// Cyrus-Beck clip of segment `ab` against the polygon grown by `slack`
    /// (shrunk when negative). Returns the parameter interval inside, if any.
    fn clip_segment(&self, a: Point2, b: Point2, slack: f64) -> Option<(f64, f64)> {
        let d = b.sub(a);
        let (mut t0, mut t1) = (0.0_f64, 1.0_f64);
        for h in &self.edges {
            let num = h.signed_distance(a) - slack;
            let den = h.normal.dot(d);
            if den == 0.0 {
                if num > 0.0 {
                    return None;
                }
                continue;
            }
            let t = -num / den;
            if den > 0.0 {
                t1 = t1.min(t);
            } else {
                t0 = t0.max(t);
            }
            if t0 > t1 {
                return None;
            }
        }
        Some((t0, t1))
    }

    fn inflate(&self, margin: f64) -> ConvexPolygon {
        let n = self.vertices.len();
        // each vertex moves to the meet of its two offset edge lines
        let vertices = (0..n)
            .map(|i| {
                let n1 = self.edges[(i + n - 1) % n].normal;
                let n2 = self.edges[i].normal;
                let k = margin / (1.0 + n1.dot(n2));
                Point2::new(
                    self.vertices[i].x + k * (n1.x + n2.x),
                    self.vertices[i].y + k * (n1.y + n2.y),
                )
            })
            .collect();
        ConvexPolygon::new(vertices).expect("offset of a convex polygon stays convex")
    }
}

/// Shoelace signed area; positive for counter-clockwise rings.
pub fn signed_area(vertices: &[Point2]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            a.x * b.y - b.x * a.y
        })
        .sum::<f64>()
        / 2.0
}

#[derive(Debug, Clone, PartialEq)]
pub enum Obstacle {
    Circle(Circle),
    Polygon(ConvexPolygon),
}

impl Obstacle {
    pub fn contains_point(&self, p: Point2) -> bool {
        self.contains_point_eps(p, GEOM_EPS)
    }

    pub fn contains_point_eps(&self, p: Point2, eps: f64) -> bool {
        match self {
            Obstacle::Circle(c) => distance(c.center, p) <= c.radius + eps,
            Obstacle::Polygon(poly) => poly.contains_point_eps(p, eps),
        }
    }

    /// True iff the closed segment `ab` meets the closed obstacle.
    pub fn segment_intersects(&self, a: Point2, b: Point2) -> bool {
        self.segment_intersects_eps(a, b, GEOM_EPS)
    }

    pub fn segment_intersects_eps(&self, a: Point2, b: Point2, eps: f64) -> bool {
        if a == b {
            return self.contains_point_eps(a, eps);
        }
        match self {
            Obstacle::Circle(c) => point_segment_distance(c.center, a, b) <= c.radius + eps,
            Obstacle::Polygon(poly) => poly.clip_segment(a, b, eps).is_some(),
        }
    }

    /// True iff segment `ab` passes deeper than `eps` into the obstacle.
    /// Grazing a vertex or running along an edge does not count.
    pub fn segment_crosses_interior(&self, a: Point2, b: Point2, eps: f64) -> bool {
        match self {
            Obstacle::Circle(c) => point_segment_distance(c.center, a, b) < c.radius - eps,
            Obstacle::Polygon(poly) => poly.clip_segment(a, b, -eps).is_some(),
        }
    }

    pub fn point_in_interior(&self, p: Point2, eps: f64) -> bool {
        self.segment_crosses_interior(p, p, eps)
    }

    /// Grows the obstacle by `margin` in every direction. Polygons keep
    /// sharp corners, so the result contains the exact disc-swept region.
    pub fn inflate(&self, margin: f64) -> Result<Obstacle, GeometryError> {
        if !(margin > 0.0) || !margin.is_finite() {
            return Err(GeometryError::NonPositiveMargin(margin));
        }
        Ok(match self {
            Obstacle::Circle(c) => Obstacle::Circle(Circle::new(c.center, c.radius + margin)?),
            Obstacle::Polygon(poly) => Obstacle::Polygon(poly.inflate(margin)),
        })
    }

    pub fn aabb(&self) -> Aabb {
        match self {
            Obstacle::Circle(c) => Aabb {
                min: Point2::new(c.center.x - c.radius, c.center.y - c.radius),
                max: Point2::new(c.center.x + c.radius, c.center.y + c.radius),
            },
            Obstacle::Polygon(poly) => {
                let mut min = poly.vertices[0];
                let mut max = poly.vertices[0];
                for v in &poly.vertices[1..] {
                    min = Point2::new(min.x.min(v.x), min.y.min(v.y));
                    max = Point2::new(max.x.max(v.x), max.y.max(v.y));
                }
                Aabb { min, max }
            }
        }
    }
}

impl From<Circle> for Obstacle {
    fn from(c: Circle) -> Self {
        Obstacle::Circle(c)
    }
}

impl From<ConvexPolygon> for Obstacle {
    fn from(p: ConvexPolygon) -> Self {
        Obstacle::Polygon(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    fn unit_square() -> Obstacle {
        ConvexPolygon::new(vec![p(0., 0.), p(1., 0.), p(1., 1.), p(0., 1.)])
            .unwrap()
            .into()
    }

    fn unit_circle() -> Obstacle {
        Circle::new(p(0., 0.), 1.0).unwrap().into()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(p(0., 0.), p(3., 4.)), 5.0);
        assert_eq!(distance(p(2., 7.), p(2., 7.)), 0.0);
        // sqrt(3.5^2 + 9^2) = sqrt(93.25)
        assert_relative_eq!(distance(p(0., 0.), p(3.5, 9.)), 93.25_f64.sqrt());
        assert_relative_eq!(distance(p(0., 0.), p(3.5, 9.)), 9.656603, epsilon = 1e-6);
    }

    #[test]
    fn contains_point_examples() {
        assert!(unit_square().contains_point(p(0.5, 0.5)));
        assert!(!unit_square().contains_point(p(2.0, 0.0)));
        assert!(unit_circle().contains_point(p(1.0, 0.0)));
        // boundary and corners of the square are inside
        assert!(unit_square().contains_point(p(1.0, 0.3)));
        assert!(unit_square().contains_point(p(0.0, 0.0)));
        assert!(!unit_square().contains_point(p(1.0 + 1e-6, 0.3)));
    }

    #[test]
    fn segment_examples() {
        assert!(unit_square().segment_intersects(p(-1., 0.5), p(2., 0.5)));
        assert!(!unit_square().segment_intersects(p(-1., -1.), p(-1., 2.)));
        let c: Obstacle = Circle::new(p(5., 5.), 1.0).unwrap().into();
        assert!(c.segment_intersects(p(0., 0.), p(10., 10.)));
        assert!(!c.segment_intersects(p(0., 0.), p(10., 0.)));
        // touching a corner is a collision for the closed test only
        assert!(unit_square().segment_intersects(p(0., 2.), p(2., 0.)));
        assert!(!unit_square().segment_crosses_interior(p(0., 2.), p(2., 0.), GEOM_EPS));
        // running along an edge
        assert!(!unit_square().segment_crosses_interior(p(0., 0.), p(1., 0.), GEOM_EPS));
        assert!(unit_square().segment_crosses_interior(p(0., 0.), p(1., 1.), GEOM_EPS));
    }

    #[test]
    fn segment_fully_inside() {
        assert!(unit_square().segment_intersects(p(0.2, 0.2), p(0.8, 0.7)));
        assert!(unit_circle().segment_intersects(p(0.1, 0.0), p(-0.1, 0.2)));
    }

    #[test]
    fn inflate_examples() {
        let c = unit_circle().inflate(0.5).unwrap();
        assert_eq!(c, Circle::new(p(0., 0.), 1.5).unwrap().into());

        let Obstacle::Polygon(sq) = unit_square().inflate(0.1).unwrap() else {
            panic!("square inflates to a polygon");
        };
        let expected = [p(-0.1, -0.1), p(1.1, -0.1), p(1.1, 1.1), p(-0.1, 1.1)];
        for (v, e) in sq.vertices().iter().zip(expected) {
            assert_relative_eq!(v.x, e.x, epsilon = 1e-12);
            assert_relative_eq!(v.y, e.y, epsilon = 1e-12);
        }
    }

    #[test]
    fn inflate_rejects_bad_margin() {
        assert_eq!(unit_circle().inflate(0.0), Err(GeometryError::NonPositiveMargin(0.0)));
        assert!(unit_square().inflate(-1.0).is_err());
        assert!(unit_square().inflate(f64::NAN).is_err());
    }

    #[test]
    fn polygon_validation() {
        assert_eq!(
            ConvexPolygon::new(vec![p(0., 0.), p(1., 0.)]).unwrap_err(),
            GeometryError::TooFewVertices(2)
        );
        // clockwise
        assert!(ConvexPolygon::new(vec![p(0., 0.), p(0., 1.), p(1., 1.), p(1., 0.)]).is_err());
        // collinear triple
        assert!(matches!(
            ConvexPolygon::new(vec![p(0., 0.), p(1., 0.), p(2., 0.), p(1., 1.)]),
            Err(GeometryError::NotStrictlyConvex(1))
        ));
        assert_eq!(
            ConvexPolygon::new(vec![p(0., 0.), p(1., 0.), p(0., 0.), p(1., 1.)]).unwrap_err(),
            GeometryError::RepeatedVertex(2)
        );
        // reflex vertex
        assert!(ConvexPolygon::new(vec![p(0., 0.), p(2., 0.), p(1., 0.5), p(2., 2.), p(0., 2.)])
            .is_err());
        // pentagram: all left turns but winds twice
        let star: Vec<Point2> = (0..5)
            .map(|k| {
                let a = 2.0 * PI * (2 * k) as f64 / 5.0;
                p(a.cos(), a.sin())
            })
            .collect();
        assert!(ConvexPolygon::new(star).is_err());
        assert_eq!(Circle::new(p(0., 0.), 0.0), Err(GeometryError::NonPositiveRadius(0.0)));
        assert_eq!(Circle::new(p(f64::NAN, 0.), 1.0), Err(GeometryError::NonFinite));
    }

    #[test]
    fn any_winding_reverses_clockwise() {
        let cw = vec![p(0., 0.), p(0., 1.), p(1., 1.), p(1., 0.)];
        let poly = ConvexPolygon::from_any_winding(cw).unwrap();
        assert!(signed_area(poly.vertices()) > 0.0);
        assert_eq!(poly.vertices()[0], p(1., 0.));
    }

    #[test]
    fn circumscribed_polygon_contains_circle() {
        let c = Circle::new(p(1., 2.), 0.7).unwrap();
        let poly: Obstacle = c.circumscribed_polygon(32).into();
        for k in 0..360 {
            let a = (k as f64).to_radians();
            assert!(poly.contains_point(p(1. + 0.7 * a.cos(), 2. + 0.7 * a.sin())));
        }
    }

    fn arb_point() -> impl Strategy<Value = Point2> {
        (-50.0..50.0f64, -50.0..50.0f64).prop_map(|(x, y)| p(x, y))
    }

    fn arb_polygon() -> impl Strategy<Value = ConvexPolygon> {
        // random angles on a jittered ellipse give a strictly convex ring
        (
            -5.0..5.0f64,
            -5.0..5.0f64,
            0.5..4.0f64,
            0.5..4.0f64,
            prop::collection::btree_set(0u32..360, 3..10),
        )
            .prop_filter_map("degenerate ring", |(cx, cy, rx, ry, angles)| {
                let verts = angles
                    .into_iter()
                    .map(|deg| {
                        let a = (deg as f64).to_radians();
                        p(cx + rx * a.cos(), cy + ry * a.sin())
                    })
                    .collect();
                ConvexPolygon::new(verts).ok()
            })
    }

    fn arb_obstacle() -> impl Strategy<Value = Obstacle> {
        prop_oneof![
            arb_polygon().prop_map(Obstacle::from),
            (arb_point(), 0.1..5.0f64).prop_map(|(c, r)| Circle::new(c, r).unwrap().into()),
        ]
    }

    proptest! {
        #[test]
        fn distance_metric_axioms(a in arb_point(), b in arb_point(), c in arb_point()) {
            prop_assert_eq!(distance(a, b), distance(b, a));
            prop_assert!(distance(a, b) >= 0.0);
            prop_assert!(distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12);
        }

        #[test]
        fn inflate_is_superset(o in arb_obstacle(), q in arb_point(), m in 0.001..3.0f64) {
            let big = o.inflate(m).unwrap();
            if o.contains_point(q) {
                prop_assert!(big.contains_point(q));
            }
        }

        #[test]
        fn inflated_polygon_covers_swept_disc(poly in arb_polygon(), m in 0.01..2.0f64, k in 0u32..360) {
            // every vertex pushed out by m in any direction stays inside
            let big = Obstacle::from(poly.clone()).inflate(m).unwrap();
            let a = (k as f64).to_radians();
            for v in poly.vertices() {
                prop_assert!(big.contains_point(p(v.x + m * a.cos(), v.y + m * a.sin())));
            }
        }

        #[test]
        fn degenerate_segment_is_point_test(o in arb_obstacle(), a in arb_point()) {
            prop_assert_eq!(o.segment_intersects(a, a), o.contains_point(a));
        }

        #[test]
        fn segment_test_is_symmetric(o in arb_obstacle(), a in arb_point(), b in arb_point()) {
            prop_assert_eq!(o.segment_intersects(a, b), o.segment_intersects(b, a));
        }

        #[test]
        fn segment_hits_when_endpoint_inside(o in arb_obstacle(), a in arb_point(), b in arb_point()) {
            if o.contains_point(a) || o.contains_point(b) {
                prop_assert!(o.segment_intersects(a, b));
            }
        }

        #[test]
        fn segment_miss_agrees_with_sampling(o in arb_obstacle(), a in arb_point(), b in arb_point()) {
            if !o.segment_intersects(a, b) {
                for i in 0..=200 {
                    let t = i as f64 / 200.0;
                    let q = p(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y));
                    prop_assert!(!o.contains_point(q));
                }
            }
        }
    }
}
