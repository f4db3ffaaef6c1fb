//! Finite unions of closed eps-grid squares and their discrete boundaries.
//!
//! Cell `(i, j)` is the closed square `eps·[i−1, i] × [j−1, j]`. Membership
//! questions are settled in exact integer (or rational) arithmetic on cell
//! indices, so points sitting on cell edges never flip sides due to
//! floating-point noise.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{DelaunayMesh, Point};
use crate::error::{Error, Result};

/// Where a point sits relative to the union of cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionPosition {
    /// In the topological interior.
    Interior,
    /// On the boundary of the union.
    Boundary,
    /// In the open complement.
    Exterior,
}

/// A nonempty finite union of closed eps-squares.
///
/// Configurations where two cells (or two holes) meet only at a corner are
/// rejected, so the boundary is always a disjoint union of simple loops.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "LatticeJson", into = "LatticeJson")]
pub struct LatticeDomain {
    eps: f64,
    cells: BTreeSet<(i64, i64)>,
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    eps: f64,
    cells: Vec<[i64; 2]>,
}

impl From<LatticeDomain> for LatticeJson {
    fn from(q: LatticeDomain) -> Self {
        LatticeJson {
            eps: q.eps,
            cells: q.cells.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }
}

impl TryFrom<LatticeJson> for LatticeDomain {
    type Error = Error;

    fn try_from(raw: LatticeJson) -> Result<Self> {
        LatticeDomain::new(raw.eps, raw.cells.iter().map(|c| (c[0], c[1])))
    }
}

impl LatticeDomain {
    pub fn new(eps: f64, cells: impl IntoIterator<Item = (i64, i64)>) -> Result<Self> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "grid spacing must be positive, got {eps}"
            )));
        }
        let cells: BTreeSet<(i64, i64)> = cells.into_iter().collect();
        if cells.is_empty() {
            return Err(Error::EmptyLattice);
        }
        let domain = LatticeDomain { eps, cells };
        domain.reject_corner_touching()?;
        Ok(domain)
    }

    /// Scans every 2×2 block near a present cell for the two checkerboard
    /// patterns: present cells touching at a corner, or two holes pinching
    /// the boundary at a corner.
    fn reject_corner_touching(&self) -> Result<()> {
        let mut anchors = BTreeSet::new();
        for &(i, j) in &self.cells {
            for di in -1..=0 {
                for dj in -1..=0 {
                    anchors.insert((i + di, j + dj));
                }
            }
        }
        for (i, j) in anchors {
            let a = self.contains_cell(i, j);
            let b = self.contains_cell(i + 1, j);
            let c = self.contains_cell(i, j + 1);
            let d = self.contains_cell(i + 1, j + 1);
            if a && d && !b && !c {
                return Err(Error::CornerTouchingCells((i, j), (i + 1, j + 1)));
            }
            if b && c && !a && !d {
                return Err(Error::CornerTouchingCells((i + 1, j), (i, j + 1)));
            }
        }
        Ok(())
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn cells(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.cells.iter().copied()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn contains_cell(&self, i: i64, j: i64) -> bool {
        self.cells.contains(&(i, j))
    }

    pub fn area(&self) -> f64 {
        self.cells.len() as f64 * self.eps * self.eps
    }

    /// Outer bounding box in real coordinates.
    pub fn bounds(&self) -> (Point, Point) {
        let imin = self.cells.iter().map(|c| c.0).min().unwrap();
        let imax = self.cells.iter().map(|c| c.0).max().unwrap();
        let jmin = self.cells.iter().map(|c| c.1).min().unwrap();
        let jmax = self.cells.iter().map(|c| c.1).max().unwrap();
        (
            Point::new((imin - 1) as f64 * self.eps, (jmin - 1) as f64 * self.eps),
            Point::new(imax as f64 * self.eps, jmax as f64 * self.eps),
        )
    }

    /// Lattice points of the discrete boundary, in index units.
    ///
    /// Implemented through boundary edges: an edge of the grid belongs to
    /// the boundary exactly when the two cells sharing it disagree on
    /// membership, and boundary points are the endpoints of such edges.
    pub fn discrete_boundary_indices(&self) -> Vec<(i64, i64)> {
        let mut points = BTreeSet::new();
        for &((a, b), (c, d)) in &self.boundary_edges() {
            points.insert((a, b));
            points.insert((c, d));
        }
        points.into_iter().collect()
    }

    /// Boundary grid edges as index-unit endpoint pairs.
    pub fn boundary_edges(&self) -> Vec<((i64, i64), (i64, i64))> {
        let mut edges = Vec::new();
        for &(i, j) in &self.cells {
            if !self.contains_cell(i - 1, j) {
                edges.push(((i - 1, j - 1), (i - 1, j)));
            }
            if !self.contains_cell(i + 1, j) {
                edges.push(((i, j - 1), (i, j)));
            }
            if !self.contains_cell(i, j - 1) {
                edges.push(((i - 1, j - 1), (i, j - 1)));
            }
            if !self.contains_cell(i, j + 1) {
                edges.push(((i - 1, j), (i, j)));
            }
        }
        edges
    }

    /// Boundary segments in real coordinates.
    pub fn boundary_segments(&self) -> Vec<(Point, Point)> {
        self.boundary_edges()
            .iter()
            .map(|&((a, b), (c, d))| (self.lattice_point(a, b), self.lattice_point(c, d)))
            .collect()
    }

    pub fn lattice_point(&self, i: i64, j: i64) -> Point {
        Point::new(i as f64 * self.eps, j as f64 * self.eps)
    }

    /// Whether `p` lies in the closed union, judged on candidate cells with
    /// a 1e-9·eps slack against float noise on edges.
    pub fn contains_point(&self, p: Point) -> bool {
        let tx = p.x() / self.eps;
        let ty = p.y() / self.eps;
        let (ilo, ihi) = candidate_range(tx);
        let (jlo, jhi) = candidate_range(ty);
        for i in ilo..=ihi {
            for j in jlo..=jhi {
                if self.contains_cell(i, j) {
                    return true;
                }
            }
        }
        false
    }

    /// Exact position of the rational point `(nx/den, ny/den)` given in
    /// index units (real point = eps · (nx/den, ny/den)), `den > 0`.
    pub fn position_rational(&self, nx: i128, ny: i128, den: i128) -> RegionPosition {
        assert!(den > 0, "denominator must be positive");
        let imin = ceil_div(nx, den);
        let imax = floor_div(nx, den) + 1;
        let jmin = ceil_div(ny, den);
        let jmax = floor_div(ny, den) + 1;
        let mut inside = 0usize;
        let mut total = 0usize;
        for i in imin..=imax {
            for j in jmin..=jmax {
                total += 1;
                if self.contains_cell(i as i64, j as i64) {
                    inside += 1;
                }
            }
        }
        if inside == total {
            RegionPosition::Interior
        } else if inside == 0 {
            RegionPosition::Exterior
        } else {
            RegionPosition::Boundary
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("lattice serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

fn candidate_range(t: f64) -> (i64, i64) {
    let lo = (t - 1e-9).ceil() as i64;
    let hi = (t + 1e-9).floor() as i64 + 1;
    (lo, hi)
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if a % b != 0 && (a < 0) != (b < 0) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    floor_div(a + b - 1, b)
}

/// The lattice points on the topological boundary, in real coordinates.
pub fn discrete_boundary(q: &LatticeDomain) -> Vec<Point> {
    q.discrete_boundary_indices()
        .into_iter()
        .map(|(i, j)| q.lattice_point(i, j))
        .collect()
}

/// Splits the triangles of a mesh built on `discrete_boundary(q)` into those
/// covering the domain and those covering the complement.
///
/// Classification is by exact rational membership of the centroid; a
/// verification pass then confirms that no triangle edge crosses the domain
/// boundary transversally and that edge midpoints agree with the verdict.
pub fn classify_triangles(
    mesh: &DelaunayMesh,
    q: &LatticeDomain,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let idx = mesh_site_indices(mesh, q)?;
    let mut interior = Vec::new();
    let mut exterior = Vec::new();
    for (t, tri) in mesh.triangles().iter().enumerate() {
        let a = idx[tri[0]];
        let b = idx[tri[1]];
        let c = idx[tri[2]];
        let sx = (a.0 + b.0 + c.0) as i128;
        let sy = (a.1 + b.1 + c.1) as i128;
        match q.position_rational(sx, sy, 3) {
            RegionPosition::Interior => interior.push(t),
            RegionPosition::Exterior => exterior.push(t),
            RegionPosition::Boundary => {
                return Err(Error::ClassificationConflict(format!(
                    "triangle {t} has its centroid on the domain boundary"
                )))
            }
        }
    }
    verify_no_transversal_crossing(mesh, q, &idx)?;
    verify_midpoints(mesh, q, &idx, &interior, &exterior)?;
    Ok((interior, exterior))
}

/// Recovers exact integer lattice indices of the mesh sites.
pub(crate) fn mesh_site_indices(mesh: &DelaunayMesh, q: &LatticeDomain) -> Result<Vec<(i64, i64)>> {
    let eps = q.eps();
    mesh.sites()
        .iter()
        .map(|p| {
            let i = (p.x() / eps).round();
            let j = (p.y() / eps).round();
            let tol = 1e-9 * eps * (1.0 + i.abs().max(j.abs()));
            if (p.x() - i * eps).abs() > tol || (p.y() - j * eps).abs() > tol {
                return Err(Error::InvalidParameters(format!(
                    "mesh site ({}, {}) is not an eps-lattice point",
                    p.x(),
                    p.y()
                )));
            }
            Ok((i as i64, j as i64))
        })
        .collect()
}

fn orient_i128(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> i128 {
    let (ax, ay) = (a.0 as i128, a.1 as i128);
    let (bx, by) = (b.0 as i128, b.1 as i128);
    let (cx, cy) = (c.0 as i128, c.1 as i128);
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

fn verify_no_transversal_crossing(
    mesh: &DelaunayMesh,
    q: &LatticeDomain,
    idx: &[(i64, i64)],
) -> Result<()> {
    let boundary = q.boundary_edges();
    let mut edges = BTreeSet::new();
    for tri in mesh.triangles() {
        for k in 0..3 {
            let a = tri[k];
            let b = tri[(k + 1) % 3];
            edges.insert((a.min(b), a.max(b)));
        }
    }
    for (a, b) in edges {
        let pa = idx[a];
        let pb = idx[b];
        for &(pc, pd) in &boundary {
            let o1 = orient_i128(pa, pb, pc);
            let o2 = orient_i128(pa, pb, pd);
            let o3 = orient_i128(pc, pd, pa);
            let o4 = orient_i128(pc, pd, pb);
            if ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0))
                && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))
            {
                return Err(Error::ClassificationConflict(format!(
                    "mesh edge {pa:?}-{pb:?} crosses boundary edge {pc:?}-{pd:?}"
                )));
            }
        }
    }
    Ok(())
}

fn verify_midpoints(
    mesh: &DelaunayMesh,
    q: &LatticeDomain,
    idx: &[(i64, i64)],
    interior: &[usize],
    exterior: &[usize],
) -> Result<()> {
    let check = |tris: &[usize], forbidden: RegionPosition| -> Result<()> {
        for &t in tris {
            let tri = mesh.triangles()[t];
            for k in 0..3 {
                let a = idx[tri[k]];
                let b = idx[tri[(k + 1) % 3]];
                let mx = (a.0 + b.0) as i128;
                let my = (a.1 + b.1) as i128;
                if q.position_rational(mx, my, 2) == forbidden {
                    return Err(Error::ClassificationConflict(format!(
                        "edge midpoint of triangle {t} lies on the wrong side"
                    )));
                }
            }
        }
        Ok(())
    };
    check(interior, RegionPosition::Exterior)?;
    check(exterior, RegionPosition::Interior)
}

/// Exact position of an integer triangle's circumcenter relative to `q`.
pub fn circumcenter_position(q: &LatticeDomain, tri: [(i64, i64); 3]) -> RegionPosition {
    let [a, b, c] = tri;
    let bx = (b.0 - a.0) as i128;
    let by = (b.1 - a.1) as i128;
    let cx = (c.0 - a.0) as i128;
    let cy = (c.1 - a.1) as i128;
    let mut den = 2 * (bx * cy - by * cx);
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let mut ux = cy * b2 - by * c2;
    let mut uy = bx * c2 - cx * b2;
    if den < 0 {
        den = -den;
        ux = -ux;
        uy = -uy;
    }
    let nx = a.0 as i128 * den + ux;
    let ny = a.1 as i128 * den + uy;
    q.position_rational(nx, ny, den)
}
