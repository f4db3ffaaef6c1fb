//! Floating-point geometric predicates with explicit tolerance bands.
//!
//! All inputs at desk scale are either lattice points (exactly representable
//! integers scaled by eps) or random points of magnitude ~1, so plain f64
//! evaluation with the documented bands is adequate; the brute-force
//! invariant tests confirm this on every run.

use super::Point;

/// Relative tolerance on the orientation determinant (dimension length²).
pub const ORIENT_REL_TOL: f64 = 1e-14;

/// Relative tolerance band of the in-circle determinant (dimension length⁴).
pub const IN_CIRCLE_REL_TOL: f64 = 1e-10;

/// Twice the signed area of the triangle `(a, b, c)`.
///
/// Positive when the triple turns counterclockwise.
pub fn orient2d(a: Point, b: Point, c: Point) -> f64 {
    (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x())
}

/// In-circle determinant for counterclockwise `(a, b, c)`.
///
/// Positive when `p` lies strictly inside the circumcircle.
pub fn in_circle_det(a: Point, b: Point, c: Point, p: Point) -> f64 {
    let ax = a.x() - p.x();
    let ay = a.y() - p.y();
    let bx = b.x() - p.x();
    let by = b.y() - p.y();
    let cx = c.x() - p.x();
    let cy = c.y() - p.y();
    let a2 = ax * ax + ay * ay;
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    ax * (by * c2 - b2 * cy) - ay * (bx * c2 - b2 * cx) + a2 * (bx * cy - by * cx)
}

/// Longest side of the triangle, used as the length scale of its tolerance
/// bands (translation-invariant, unlike raw coordinate magnitudes).
pub fn length_scale(a: Point, b: Point, c: Point) -> f64 {
    a.dist(b).max(b.dist(c)).max(c.dist(a)).max(f64::MIN_POSITIVE)
}

/// Classification of a point against a circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CirclePosition {
    Inside,
    On,
    Outside,
}

/// Tri-state in-circle test with the band `IN_CIRCLE_REL_TOL · scale⁴`.
pub fn in_circle_position(a: Point, b: Point, c: Point, p: Point) -> CirclePosition {
    let scale = length_scale(a, b, c);
    let band = IN_CIRCLE_REL_TOL * scale.powi(4);
    let det = in_circle_det(a, b, c, p);
    if det > band {
        CirclePosition::Inside
    } else if det < -band {
        CirclePosition::Outside
    } else {
        CirclePosition::On
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_sign() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(1.0, 0.0);
        let c = Point::new(0.0, 1.0);
        assert!(orient2d(a, b, c) > 0.0);
        assert!(orient2d(a, c, b) < 0.0);
        assert_eq!(orient2d(a, b, Point::new(2.0, 0.0)), 0.0);
    }

    #[test]
    fn in_circle_sign() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(1.0, 0.0);
        let c = Point::new(0.0, 1.0);
        // Circumcircle has center (1/2, 1/2), radius √2/2.
        assert!(in_circle_det(a, b, c, Point::new(0.5, 0.5)) > 0.0);
        assert!(in_circle_det(a, b, c, Point::new(2.0, 2.0)) < 0.0);
        // The fourth corner of the square is exactly co-circular.
        assert_eq!(
            in_circle_position(a, b, c, Point::new(1.0, 1.0)),
            CirclePosition::On
        );
    }
}
