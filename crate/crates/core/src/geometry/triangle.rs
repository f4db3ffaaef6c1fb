use serde::{Deserialize, Serialize};

use super::predicates::{self, CirclePosition};
use super::Point;
use crate::error::{Error, Result};

/// Relative area threshold below which a triangle counts as degenerate.
pub const DEGENERATE_AREA_REL_TOL: f64 = 1e-14;

/// A non-degenerate triangle, normalized to counterclockwise orientation,
/// with cached side lengths and circumcircle.
///
/// `side_lengths()[i]` is the length of the side opposite `vertices()[i]`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Triangle {
    vertices: [Point; 3],
    side_lengths: [f64; 3],
    circumcenter: Point,
    circumradius: f64,
}

impl Triangle {
    /// Builds a triangle from three vertices, swapping two of them if needed
    /// so the stored orientation is counterclockwise.
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        let scale = predicates::length_scale(a, b, c);
        let tolerance = DEGENERATE_AREA_REL_TOL * scale * scale;
        let orient = predicates::orient2d(a, b, c);
        let area = 0.5 * orient.abs();
        if area <= tolerance {
            return Err(Error::DegenerateTriangle { area, tolerance });
        }
        let vertices = if orient > 0.0 { [a, b, c] } else { [a, c, b] };
        let side_lengths = [
            vertices[1].dist(vertices[2]),
            vertices[2].dist(vertices[0]),
            vertices[0].dist(vertices[1]),
        ];
        let (circumcenter, circumradius) = circumcircle_of(vertices[0], vertices[1], vertices[2]);
        Ok(Triangle {
            vertices,
            side_lengths,
            circumcenter,
            circumradius,
        })
    }

    pub fn vertices(&self) -> [Point; 3] {
        self.vertices
    }

    pub fn side_lengths(&self) -> [f64; 3] {
        self.side_lengths
    }

    pub fn circumcenter(&self) -> Point {
        self.circumcenter
    }

    pub fn circumradius(&self) -> f64 {
        self.circumradius
    }

    pub fn area(&self) -> f64 {
        0.5 * predicates::orient2d(self.vertices[0], self.vertices[1], self.vertices[2])
    }

    pub fn centroid(&self) -> Point {
        let [a, b, c] = self.vertices;
        Point::new(
            (a.x() + b.x() + c.x()) / 3.0,
            (a.y() + b.y() + c.y()) / 3.0,
        )
    }

    /// Longest side, the length scale for tolerance bands.
    pub fn length_scale(&self) -> f64 {
        predicates::length_scale(self.vertices[0], self.vertices[1], self.vertices[2])
    }

    /// Whether the circumcenter lies in the closed triangle (acute or right),
    /// within the orientation tolerance band.
    pub fn contains_circumcenter(&self) -> bool {
        let scale = self.length_scale();
        let tol = predicates::ORIENT_REL_TOL * scale * scale;
        let [a, b, c] = self.vertices;
        let o = self.circumcenter;
        predicates::orient2d(a, b, o) >= -tol
            && predicates::orient2d(b, c, o) >= -tol
            && predicates::orient2d(c, a, o) >= -tol
    }

    /// Whether some angle strictly exceeds a right angle.
    pub fn is_obtuse(&self) -> bool {
        let [l0, l1, l2] = self.side_lengths;
        let scale = self.length_scale();
        let tol = 1e-12 * scale * scale;
        let mut sq = [l0 * l0, l1 * l1, l2 * l2];
        sq.sort_by(|a, b| a.partial_cmp(b).unwrap());
        sq[2] - sq[0] - sq[1] > tol
    }

    /// Tri-state position of `p` relative to the circumcircle.
    pub fn in_circumcircle(&self, p: Point) -> CirclePosition {
        predicates::in_circle_position(self.vertices[0], self.vertices[1], self.vertices[2], p)
    }
}

/// Circumcircle of the (already validated) triple `(a, b, c)`.
///
/// Translates to `a` before solving so the arithmetic sees coordinates of
/// the size of the triangle, not of its position.
pub fn circumcircle_of(a: Point, b: Point, c: Point) -> (Point, f64) {
    let bx = b.x() - a.x();
    let by = b.y() - a.y();
    let cx = c.x() - a.x();
    let cy = c.y() - a.y();
    let d = 2.0 * (bx * cy - by * cx);
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    let center = Point::new(a.x() + ux, a.y() + uy);
    let radius = (ux * ux + uy * uy).sqrt();
    (center, radius)
}

/// The circumcircle as a standalone operation.
pub fn circumcircle(t: &Triangle) -> (Point, f64) {
    (t.circumcenter(), t.circumradius())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_collinear() {
        let r = Triangle::new(
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(2.0, 0.0),
        );
        assert!(matches!(r, Err(Error::DegenerateTriangle { .. })));
    }

    #[test]
    fn normalizes_to_ccw() {
        let t = Triangle::new(
            Point::new(0.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 0.0),
        )
        .unwrap();
        assert!(t.area() > 0.0);
    }

    #[test]
    fn equilateral_on_unit_circle() {
        let v = |k: f64| {
            let th = std::f64::consts::FRAC_PI_2 + k * 2.0 * std::f64::consts::FRAC_PI_3;
            Point::new(th.cos(), th.sin())
        };
        let t = Triangle::new(v(0.0), v(1.0), v(2.0)).unwrap();
        assert!(t.circumcenter().norm() < 1e-12);
        assert!((t.circumradius() - 1.0).abs() < 1e-12);
        assert!(t.contains_circumcenter());
        assert!(!t.is_obtuse());
    }

    #[test]
    fn right_triangle_circumcenter_is_hypotenuse_midpoint() {
        let t = Triangle::new(
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(0.0, 2.0),
        )
        .unwrap();
        assert!(t.circumcenter().dist(Point::new(1.0, 1.0)) < 1e-12);
        assert!((t.circumradius() - std::f64::consts::SQRT_2).abs() < 1e-12);
        // Right triangles keep the circumcenter on the closed boundary.
        assert!(t.contains_circumcenter());
        assert!(!t.is_obtuse());
    }

    #[test]
    fn side_lengths_oppose_vertices() {
        let t = Triangle::new(
            Point::new(0.0, 0.0),
            Point::new(4.0, 0.0),
            Point::new(0.0, 3.0),
        )
        .unwrap();
        let [a, b, c] = t.vertices();
        let [l0, l1, l2] = t.side_lengths();
        assert!((l0 - b.dist(c)).abs() < 1e-15 * t.length_scale());
        assert!((l1 - c.dist(a)).abs() < 1e-15 * t.length_scale());
        assert!((l2 - a.dist(b)).abs() < 1e-15 * t.length_scale());
    }

    #[test]
    fn obtuse_detection() {
        let t = Triangle::new(
            Point::new(0.0, 0.0),
            Point::new(4.0, 0.0),
            Point::new(2.0, 0.5),
        )
        .unwrap();
        assert!(t.is_obtuse());
        assert!(!t.contains_circumcenter());
    }

    #[test]
    fn circumcircle_positions() {
        let t = Triangle::new(
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.3, 0.9),
        )
        .unwrap();
        assert_eq!(t.in_circumcircle(t.circumcenter()), CirclePosition::Inside);
        for v in t.vertices() {
            assert_eq!(t.in_circumcircle(v), CirclePosition::On);
        }
        let c = t.circumcenter();
        let far = Point::new(c.x() + 2.0 * t.circumradius(), c.y());
        assert_eq!(t.in_circumcircle(far), CirclePosition::Outside);
    }
}
