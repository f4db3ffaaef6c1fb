//! Hexagonal tilings: the triangular lattice of cell centers and the
//! honeycomb lattice of cell vertices.
//!
//! Cells are pointy-top regular hexagons of side (= circumradius) `side`;
//! adjacent centers are `side·√3` apart, spanned by the basis
//! `a1 = (√3, 0)·side` and `a2 = (√3/2, 3/2)·side`.

use super::Point;
use crate::error::{Error, Result};

/// An axis-aligned rectangle used as clipping region.
#[derive(Clone, Copy, Debug)]
pub struct Rect {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Rect {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        if !(xmin < xmax && ymin < ymax)
            || !(xmin.is_finite() && xmax.is_finite() && ymin.is_finite() && ymax.is_finite())
        {
            return Err(Error::InvalidParameters(format!(
                "empty bounding box [{xmin}, {xmax}] x [{ymin}, {ymax}]"
            )));
        }
        Ok(Rect {
            xmin,
            xmax,
            ymin,
            ymax,
        })
    }

    /// Square box centered at the origin with half-width `r`.
    pub fn centered_square(r: f64) -> Result<Self> {
        Rect::new(-r, r, -r, r)
    }

    pub fn contains(&self, p: Point) -> bool {
        self.xmin <= p.x() && p.x() <= self.xmax && self.ymin <= p.y() && p.y() <= self.ymax
    }

    pub fn area(&self) -> f64 {
        (self.xmax - self.xmin) * (self.ymax - self.ymin)
    }
}

/// A hexagonal tiling clipped to a bounding rectangle.
#[derive(Clone, Debug)]
pub struct HexTiling {
    side: f64,
    centers: Vec<Point>,
    vertices: Vec<Point>,
}

impl HexTiling {
    pub fn side(&self) -> f64 {
        self.side
    }

    pub fn centers(&self) -> &[Point] {
        &self.centers
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }
}

/// The center lattice basis for hexagons of side `side`.
pub fn center_basis(side: f64) -> ([f64; 2], [f64; 2]) {
    let s3 = 3.0_f64.sqrt();
    ([s3 * side, 0.0], [s3 * side / 2.0, 1.5 * side])
}

/// Center of the hexagon with lattice coordinates `(i, j)`.
pub fn center_at(side: f64, i: i64, j: i64) -> Point {
    let (a1, a2) = center_basis(side);
    Point::new(
        i as f64 * a1[0] + j as f64 * a2[0],
        i as f64 * a1[1] + j as f64 * a2[1],
    )
}

/// The six vertices of the hexagon centered at `c`.
pub fn hexagon_vertices(c: Point, side: f64) -> [Point; 6] {
    std::array::from_fn(|k| {
        let th = std::f64::consts::FRAC_PI_6 + k as f64 * std::f64::consts::FRAC_PI_3;
        Point::new(c.x() + side * th.cos(), c.y() + side * th.sin())
    })
}

/// Builds the tiling of hexagons with side `side` clipped to `bbox`:
/// centers on the triangular lattice, vertices on the honeycomb lattice.
///
/// Vertices are emitted only for hexagons whose center is kept, so every
/// kept vertex has its nearest center at distance exactly `side`.
pub fn hex_tiling(side: f64, bbox: Rect) -> Result<HexTiling> {
    if !(side.is_finite() && side > 0.0) {
        return Err(Error::InvalidParameters(format!(
            "hexagon side must be positive, got {side}"
        )));
    }
    let (imin, imax, jmin, jmax) = lattice_index_bounds(side, &bbox);
    let mut centers = Vec::new();
    let mut vertices = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let quantum = side * 1e-6;
    for j in jmin..=jmax {
        for i in imin..=imax {
            let c = center_at(side, i, j);
            if !bbox.contains(c) {
                continue;
            }
            centers.push(c);
            for v in hexagon_vertices(c, side) {
                if !bbox.contains(v) {
                    continue;
                }
                // Vertices are shared by three hexagons; deduplicate on a
                // grid much finer than the lattice but coarser than noise.
                let key = (
                    (v.x() / quantum).round() as i64,
                    (v.y() / quantum).round() as i64,
                );
                if seen.insert(key) {
                    vertices.push(v);
                }
            }
        }
    }
    Ok(HexTiling {
        side,
        centers,
        vertices,
    })
}

/// Index rectangle guaranteed to cover the bbox with a one-cell margin.
fn lattice_index_bounds(side: f64, bbox: &Rect) -> (i64, i64, i64, i64) {
    let (a1, a2) = center_basis(side);
    // j follows y alone; i then spans the sheared x-range.
    let jmin = (bbox.ymin / a2[1]).floor() as i64 - 2;
    let jmax = (bbox.ymax / a2[1]).ceil() as i64 + 2;
    let shear_lo = (jmin as f64 * a2[0]).min(jmax as f64 * a2[0]);
    let shear_hi = (jmin as f64 * a2[0]).max(jmax as f64 * a2[0]);
    let imin = ((bbox.xmin - shear_hi) / a1[0]).floor() as i64 - 2;
    let imax = ((bbox.xmax - shear_lo) / a1[0]).ceil() as i64 + 2;
    (imin, imax, jmin, jmax)
}

/// Distance from `x` to the nearest point of the full (unclipped) center
/// lattice, found by rounding in lattice coordinates and checking a 3×3
/// candidate block.
pub fn nearest_center_distance(side: f64, x: Point) -> f64 {
    nearest_center(side, x).1
}

/// Nearest unclipped center and its distance.
pub fn nearest_center(side: f64, x: Point) -> (Point, f64) {
    let (a1, a2) = center_basis(side);
    // Invert [a1 a2]: lattice coordinates of x.
    let det = a1[0] * a2[1] - a1[1] * a2[0];
    let li = (x.x() * a2[1] - x.y() * a2[0]) / det;
    let lj = (-x.x() * a1[1] + x.y() * a1[0]) / det;
    let i0 = li.round() as i64;
    let j0 = lj.round() as i64;
    let mut best = (center_at(side, i0, j0), f64::INFINITY);
    for di in -1..=1 {
        for dj in -1..=1 {
            let c = center_at(side, i0 + di, j0 + dj);
            let d = c.dist(x);
            if d < best.1 {
                best = (c, d);
            }
        }
    }
    best
}
