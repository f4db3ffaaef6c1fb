use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of the plane with finite coordinates.
///
/// Constructors reject NaN and infinities, so downstream geometry never has
/// to re-check. Serialized as a two-element array `[x, y]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    x: f64,
    y: f64,
}

impl Point {
    /// Builds a point, panicking on non-finite coordinates.
    ///
    /// Use [`Point::try_new`] when the coordinates come from untrusted input.
    pub fn new(x: f64, y: f64) -> Self {
        assert!(
            x.is_finite() && y.is_finite(),
            "non-finite point coordinates ({x}, {y})"
        );
        Point { x, y }
    }

    /// Fallible constructor for parsed input.
    pub fn try_new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() {
            return Err(Error::NonFiniteCoordinate(x));
        }
        if !y.is_finite() {
            return Err(Error::NonFiniteCoordinate(y));
        }
        Ok(Point { x, y })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn dist(&self, other: Point) -> f64 {
        self.dist2(other).sqrt()
    }

    /// Squared distance; avoids the square root in comparisons.
    pub fn dist2(&self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn midpoint(&self, other: Point) -> Point {
        Point {
            x: 0.5 * (self.x + other.x),
            y: 0.5 * (self.y + other.y),
        }
    }

    /// Distance from the origin.
    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

impl TryFrom<[f64; 2]> for Point {
    type Error = Error;

    fn try_from(v: [f64; 2]) -> Result<Self> {
        Point::try_new(v[0], v[1])
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> [f64; 2] {
        [p.x, p.y]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        assert!(Point::try_new(f64::NAN, 0.0).is_err());
        assert!(Point::try_new(0.0, f64::INFINITY).is_err());
        assert!(Point::try_new(1.5, -2.5).is_ok());
    }

    #[test]
    fn serializes_as_pair() {
        let p = Point::new(1.0, -2.0);
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1.0,-2.0]");
        let q: Point = serde_json::from_str("[3.0,4.0]").unwrap();
        assert_eq!(q, Point::new(3.0, 4.0));
        assert!(serde_json::from_str::<Point>("[3.0,null]").is_err());
    }
}
