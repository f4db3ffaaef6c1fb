//! Incremental Bowyer–Watson triangulation with a finite super-triangle.
//!
//! Inserting a site digs the connected cavity of triangles whose open
//! circumdisk contains it, then fans the site to the cavity boundary.
//! Two post-passes run before the super-triangle is stripped:
//!
//! 1. a Lawson pass flips any edge that strictly violates the empty-circle
//!    property (repairs the rare tolerance-band misjudgement);
//! 2. a canonicalization pass resolves co-circular quadrilaterals by always
//!    choosing the diagonal with the lexicographically smallest vertex-index
//!    pair, which makes the triangulation of lattice inputs deterministic.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::predicates::{self, in_circle_det, orient2d};
use super::Point;
use crate::error::{Error, Result};

/// A triangulation of a finite site set.
///
/// Triangle vertex triples are counterclockwise and rotated so the smallest
/// index comes first; the list is sorted, so equal inputs give equal meshes.
/// `adjacency()[t][k]` is the triangle sharing the edge opposite vertex `k`
/// of triangle `t`, when there is one.
#[derive(Clone, Debug)]
pub struct DelaunayMesh {
    sites: Vec<Point>,
    triangles: Vec<[usize; 3]>,
    adjacency: Vec<[Option<usize>; 3]>,
}

#[derive(Serialize, Deserialize)]
struct MeshJson {
    sites: Vec<Point>,
    triangles: Vec<[usize; 3]>,
}

impl DelaunayMesh {
    /// Rebuilds a mesh from raw parts, deriving the adjacency map.
    ///
    /// Accepts triangle-free meshes (needed for the two-site Voronoi special
    /// case); otherwise every triple must be non-degenerate and every edge
    /// shared by at most two triangles.
    pub fn from_parts(sites: Vec<Point>, triangles: Vec<[usize; 3]>) -> Result<Self> {
        let mut normalized = Vec::with_capacity(triangles.len());
        for tri in &triangles {
            let [a, b, c] = *tri;
            if a >= sites.len() || b >= sites.len() || c >= sites.len() {
                return Err(Error::BrokenTopology(format!(
                    "triangle {tri:?} references a missing site"
                )));
            }
            let ccw = if orient2d(sites[a], sites[b], sites[c]) > 0.0 {
                [a, b, c]
            } else {
                [a, c, b]
            };
            if orient2d(sites[ccw[0]], sites[ccw[1]], sites[ccw[2]]) <= 0.0 {
                return Err(Error::BrokenTopology(format!("degenerate triangle {tri:?}")));
            }
            normalized.push(rotate_min_first(ccw));
        }
        normalized.sort_unstable();
        let adjacency = build_adjacency(&normalized)?;
        Ok(DelaunayMesh {
            sites,
            triangles: normalized,
            adjacency,
        })
    }

    pub fn sites(&self) -> &[Point] {
        &self.sites
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn adjacency(&self) -> &[[Option<usize>; 3]] {
        &self.adjacency
    }

    pub fn triangle_points(&self, t: usize) -> [Point; 3] {
        let [a, b, c] = self.triangles[t];
        [self.sites[a], self.sites[b], self.sites[c]]
    }

    /// Counts (triangle, site) pairs where the site lies strictly inside the
    /// triangle's circumcircle: the brute-force empty-circle certificate.
    pub fn empty_circle_violations(&self) -> usize {
        let mut violations = 0;
        for tri in &self.triangles {
            let [a, b, c] = [self.sites[tri[0]], self.sites[tri[1]], self.sites[tri[2]]];
            let band = predicates::IN_CIRCLE_REL_TOL * predicates::length_scale(a, b, c).powi(4);
            for (s, &p) in self.sites.iter().enumerate() {
                if tri.contains(&s) {
                    continue;
                }
                if in_circle_det(a, b, c, p) > band {
                    violations += 1;
                }
            }
        }
        violations
    }

    /// Sum of the (positive) triangle areas.
    pub fn triangle_area_sum(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| 0.5 * orient2d(self.sites[t[0]], self.sites[t[1]], self.sites[t[2]]).abs())
            .sum()
    }

    /// Area of the convex hull of the sites (monotone chain + shoelace).
    pub fn hull_area(&self) -> f64 {
        convex_hull_area(&self.sites)
    }

    /// Whether `(a, b)` is an edge of some triangle.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.triangles
            .iter()
            .any(|t| t.contains(&a) && t.contains(&b))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MeshJson {
            sites: self.sites.clone(),
            triangles: self.triangles.clone(),
        })
        .expect("mesh serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MeshJson = serde_json::from_str(text)?;
        Self::from_parts(raw.sites, raw.triangles)
    }
}

/// Delaunay-triangulates at least three non-collinear, pairwise distinct
/// sites.
pub fn delaunay_triangulate(sites: &[Point]) -> Result<DelaunayMesh> {
    if sites.len() < 3 {
        return Err(Error::CollinearInput);
    }
    check_duplicates(sites)?;
    check_not_collinear(sites)?;

    let mut builder = Builder::new(sites);
    for i in 0..sites.len() {
        builder.insert(i)?;
    }
    builder.lawson_pass();
    builder.canonical_pass();
    builder.finish(sites.len())
}

fn check_duplicates(sites: &[Point]) -> Result<()> {
    let mut order: Vec<usize> = (0..sites.len()).collect();
    order.sort_by(|&i, &j| {
        (sites[i].x(), sites[i].y())
            .partial_cmp(&(sites[j].x(), sites[j].y()))
            .unwrap()
    });
    for w in order.windows(2) {
        if sites[w[0]] == sites[w[1]] {
            return Err(Error::DuplicateSites(w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    Ok(())
}

fn check_not_collinear(sites: &[Point]) -> Result<()> {
    let (lo, hi) = bounding_box(sites);
    let scale = (hi.x() - lo.x()).max(hi.y() - lo.y()).max(1e-300);
    let tol = predicates::ORIENT_REL_TOL * scale * scale;
    let a = sites[0];
    let b = sites[1];
    if sites[2..].iter().any(|&c| orient2d(a, b, c).abs() > tol) {
        Ok(())
    } else {
        Err(Error::CollinearInput)
    }
}

fn bounding_box(sites: &[Point]) -> (Point, Point) {
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in sites {
        lo.0 = lo.0.min(p.x());
        lo.1 = lo.1.min(p.y());
        hi.0 = hi.0.max(p.x());
        hi.1 = hi.1.max(p.y());
    }
    (Point::new(lo.0, lo.1), Point::new(hi.0, hi.1))
}

/// Area of the convex hull of a point set.
pub fn convex_hull_area(points: &[Point]) -> f64 {
    let hull = convex_hull(points);
    let mut twice = 0.0;
    for i in 0..hull.len() {
        let p = hull[i];
        let q = hull[(i + 1) % hull.len()];
        twice += p.x() * q.y() - q.x() * p.y();
    }
    0.5 * twice.abs()
}

/// Convex hull in counterclockwise order (Andrew's monotone chain).
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| (a.x(), a.y()).partial_cmp(&(b.x(), b.y())).unwrap());
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient2d(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient2d(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

struct Builder {
    pts: Vec<Point>,
    tris: Vec<[usize; 3]>,
    nbrs: Vec<[Option<usize>; 3]>,
    alive: Vec<bool>,
    hint: usize,
    stamp: Vec<u32>,
    epoch: u32,
}

impl Builder {
    fn new(sites: &[Point]) -> Self {
        let (lo, hi) = bounding_box(sites);
        let center = lo.midpoint(hi);
        let diam = (hi.x() - lo.x()).max(hi.y() - lo.y()).max(1.0);
        let r = 256.0 * diam;
        let mut pts = sites.to_vec();
        for k in 0..3 {
            let th = std::f64::consts::FRAC_PI_2 + k as f64 * 2.0 * std::f64::consts::FRAC_PI_3;
            pts.push(Point::new(
                center.x() + r * th.cos(),
                center.y() + r * th.sin(),
            ));
        }
        let n = sites.len();
        Builder {
            pts,
            tris: vec![[n, n + 1, n + 2]],
            nbrs: vec![[None; 3]],
            alive: vec![true],
            hint: 0,
            stamp: vec![0],
            epoch: 0,
        }
    }

    fn orient_tol(&self, t: usize) -> f64 {
        let [a, b, c] = self.tris[t];
        let scale = predicates::length_scale(self.pts[a], self.pts[b], self.pts[c]);
        predicates::ORIENT_REL_TOL * scale * scale
    }

    fn circle_band(&self, t: usize) -> f64 {
        let [a, b, c] = self.tris[t];
        let scale = predicates::length_scale(self.pts[a], self.pts[b], self.pts[c]);
        predicates::IN_CIRCLE_REL_TOL * scale.powi(4)
    }

    fn circle_det(&self, t: usize, p: Point) -> f64 {
        let [a, b, c] = self.tris[t];
        in_circle_det(self.pts[a], self.pts[b], self.pts[c], p)
    }

    /// Signed position of `p` against edge `k` (the edge opposite vertex `k`).
    fn edge_orient(&self, t: usize, k: usize, p: Point) -> f64 {
        let [a, b, c] = self.tris[t];
        let v = [a, b, c];
        orient2d(self.pts[v[(k + 1) % 3]], self.pts[v[(k + 2) % 3]], p)
    }

    /// Walks from the hint to a triangle containing `p` (within tolerance).
    fn locate(&self, p: Point) -> Result<usize> {
        let mut t = if self.alive[self.hint] {
            self.hint
        } else {
            self.first_alive()?
        };
        let cap = 4 * self.tris.len() + 16;
        for _ in 0..cap {
            let tol = self.orient_tol(t);
            let mut worst: Option<(usize, f64)> = None;
            for k in 0..3 {
                let o = self.edge_orient(t, k, p);
                if o < -tol && worst.map_or(true, |(_, w)| o < w) {
                    worst = Some((k, o));
                }
            }
            match worst {
                None => return Ok(t),
                Some((k, _)) => match self.nbrs[t][k] {
                    Some(n) => t = n,
                    None => break,
                },
            }
        }
        // The walk got stuck (tolerance ping-pong); scan instead.
        for (t, alive) in self.alive.iter().enumerate() {
            if !alive {
                continue;
            }
            let tol = self.orient_tol(t);
            if (0..3).all(|k| self.edge_orient(t, k, p) >= -tol) {
                return Ok(t);
            }
        }
        Err(Error::BrokenTopology("no triangle contains the new site".into()))
    }

    fn first_alive(&self) -> Result<usize> {
        self.alive
            .iter()
            .position(|&a| a)
            .ok_or_else(|| Error::BrokenTopology("no alive triangle".into()))
    }

    fn insert(&mut self, site: usize) -> Result<()> {
        let p = self.pts[site];
        let start = self.locate(p)?;

        // Seed the cavity with the containing triangle, plus the neighbor
        // across any edge the site lies on: leaving that neighbor out would
        // fan a zero-area triangle along the edge.
        let mut cavity = vec![start];
        self.epoch += 1;
        self.stamp[start] = self.epoch;
        let tol = self.orient_tol(start);
        for k in 0..3 {
            if self.edge_orient(start, k, p).abs() <= tol {
                if let Some(n) = self.nbrs[start][k] {
                    if self.stamp[n] != self.epoch {
                        self.stamp[n] = self.epoch;
                        cavity.push(n);
                    }
                }
            }
        }

        // Grow: any neighbor whose open circumdisk contains the site.
        let mut head = 0;
        while head < cavity.len() {
            let t = cavity[head];
            head += 1;
            for k in 0..3 {
                if let Some(n) = self.nbrs[t][k] {
                    if self.stamp[n] != self.epoch && self.circle_det(n, p) > self.circle_band(n) {
                        self.stamp[n] = self.epoch;
                        cavity.push(n);
                    }
                }
            }
        }

        // Collect boundary edges; expand the cavity if a fan triangle would
        // collapse (site numerically on the cavity boundary).
        let boundary = loop {
            let mut boundary: Vec<(usize, usize, Option<usize>)> = Vec::new();
            let mut expand: Option<usize> = None;
            'outer: for &t in &cavity {
                let [a, b, c] = self.tris[t];
                let v = [a, b, c];
                for k in 0..3 {
                    let n = self.nbrs[t][k];
                    if let Some(n) = n {
                        if self.stamp[n] == self.epoch {
                            continue;
                        }
                    }
                    let ea = v[(k + 1) % 3];
                    let eb = v[(k + 2) % 3];
                    let o = orient2d(self.pts[ea], self.pts[eb], p);
                    let scale = predicates::length_scale(self.pts[ea], self.pts[eb], p);
                    if o <= predicates::ORIENT_REL_TOL * scale * scale {
                        match n {
                            Some(n) => {
                                self.stamp[n] = self.epoch;
                                expand = Some(n);
                                break 'outer;
                            }
                            None => {
                                return Err(Error::BrokenTopology(
                                    "site on the super-triangle boundary".into(),
                                ))
                            }
                        }
                    }
                    boundary.push((ea, eb, n));
                }
            }
            match expand {
                Some(n) => cavity.push(n),
                None => break boundary,
            }
        };

        for &t in &cavity {
            self.alive[t] = false;
        }

        // Fan the site to the boundary loop and stitch the adjacency.
        let mut by_start: HashMap<usize, usize> = HashMap::new();
        let mut by_end: HashMap<usize, usize> = HashMap::new();
        let first_new = self.tris.len();
        for (i, &(a, b, outside)) in boundary.iter().enumerate() {
            let idx = first_new + i;
            self.tris.push([site, a, b]);
            self.nbrs.push([outside, None, None]);
            self.alive.push(true);
            self.stamp.push(0);
            if by_start.insert(a, idx).is_some() || by_end.insert(b, idx).is_some() {
                return Err(Error::BrokenTopology("cavity boundary is not a loop".into()));
            }
            if let Some(o) = outside {
                let w = self.tris[o];
                for k in 0..3 {
                    let ea = w[(k + 1) % 3];
                    let eb = w[(k + 2) % 3];
                    if (ea == b && eb == a) || (ea == a && eb == b) {
                        self.nbrs[o][k] = Some(idx);
                    }
                }
            }
        }
        for (i, &(a, b, _)) in boundary.iter().enumerate() {
            let idx = first_new + i;
            self.nbrs[idx][1] = by_start.get(&b).copied();
            self.nbrs[idx][2] = by_end.get(&a).copied();
            if self.nbrs[idx][1].is_none() || self.nbrs[idx][2].is_none() {
                return Err(Error::BrokenTopology("cavity boundary is not closed".into()));
            }
        }
        self.hint = first_new;
        Ok(())
    }

    /// Apex of `nbrs[t][k]` opposite the shared edge, with its slot.
    fn apex_across(&self, t: usize, k: usize) -> Option<(usize, usize, usize)> {
        let n = self.nbrs[t][k]?;
        let [a, b, c] = self.tris[t];
        let v = [a, b, c];
        let ea = v[(k + 1) % 3];
        let eb = v[(k + 2) % 3];
        let w = self.tris[n];
        for s in 0..3 {
            if w[s] != ea && w[s] != eb {
                return Some((n, s, w[s]));
            }
        }
        None
    }

    /// Flips the edge opposite vertex `k` of triangle `t`, provided the
    /// surrounding quadrilateral is strictly convex. Returns success.
    fn flip(&mut self, t: usize, k: usize) -> bool {
        let Some((n, s, d)) = self.apex_across(t, k) else {
            return false;
        };
        let w = self.tris[t][k];
        let [a, b, c] = self.tris[t];
        let v = [a, b, c];
        let u = v[(k + 1) % 3];
        let vv = v[(k + 2) % 3];
        // Quad w → u → d → vv must be convex for the flip to be valid.
        let o1 = orient2d(self.pts[w], self.pts[u], self.pts[d]);
        let o2 = orient2d(self.pts[w], self.pts[d], self.pts[vv]);
        let scale = predicates::length_scale(self.pts[u], self.pts[vv], self.pts[w])
            .max(self.pts[d].dist(self.pts[w]));
        let tol = predicates::ORIENT_REL_TOL * scale * scale;
        if o1 <= tol || o2 <= tol {
            return false;
        }

        // Outer neighbors before the flip.
        let across_vw = self.neighbor_slot(t, k, 1); // across (vv, w), opposite u
        let across_wu = self.neighbor_slot(t, k, 2); // across (w, u), opposite vv
        let across_ud = self.nbr_of(n, s, 1); // in n: across edge following apex
        let across_dv = self.nbr_of(n, s, 2);

        self.tris[t] = [w, u, d];
        self.tris[n] = [w, d, vv];
        self.nbrs[t] = [across_ud, Some(n), across_wu];
        self.nbrs[n] = [across_dv, across_vw, Some(t)];
        if let Some(x) = across_ud {
            self.repoint(x, n, t);
        }
        if let Some(x) = across_vw {
            self.repoint(x, t, n);
        }
        true
    }

    /// Neighbor of `t` opposite vertex `(k + offset) % 3`.
    fn neighbor_slot(&self, t: usize, k: usize, offset: usize) -> Option<usize> {
        self.nbrs[t][(k + offset) % 3]
    }

    fn nbr_of(&self, n: usize, s: usize, offset: usize) -> Option<usize> {
        self.nbrs[n][(s + offset) % 3]
    }

    /// Redirects whichever slot of `x` pointed at `from` to point at `to`.
    fn repoint(&mut self, x: usize, from: usize, to: usize) {
        for k in 0..3 {
            if self.nbrs[x][k] == Some(from) {
                self.nbrs[x][k] = Some(to);
                return;
            }
        }
    }

    /// Flips every edge whose opposite apex strictly invades the
    /// circumcircle, until none remains.
    fn lawson_pass(&mut self) {
        let cap = 32 * self.tris.len() + 1024;
        for _ in 0..cap {
            let mut flipped = false;
            for t in 0..self.tris.len() {
                if !self.alive[t] {
                    continue;
                }
                for k in 0..3 {
                    let Some((_, _, d)) = self.apex_across(t, k) else {
                        continue;
                    };
                    if self.circle_det(t, self.pts[d]) > self.circle_band(t) && self.flip(t, k) {
                        flipped = true;
                        break;
                    }
                }
            }
            if !flipped {
                return;
            }
        }
    }

    /// Rewrites co-circular quadrilaterals onto their canonical diagonal:
    /// the one with the lexicographically smallest sorted index pair. Each
    /// flip strictly decreases that pair, so the pass terminates.
    fn canonical_pass(&mut self) {
        let real = self.pts.len() - 3;
        let cap = 32 * self.tris.len() + 1024;
        for _ in 0..cap {
            let mut flipped = false;
            for t in 0..self.tris.len() {
                if !self.alive[t] {
                    continue;
                }
                for k in 0..3 {
                    let Some((_, _, d)) = self.apex_across(t, k) else {
                        continue;
                    };
                    let [a, b, c] = self.tris[t];
                    let v = [a, b, c];
                    let w = v[k];
                    let u = v[(k + 1) % 3];
                    let vv = v[(k + 2) % 3];
                    if w >= real || u >= real || vv >= real || d >= real {
                        continue;
                    }
                    let det = self.circle_det(t, self.pts[d]);
                    if det.abs() > self.circle_band(t) {
                        continue;
                    }
                    let current = (u.min(vv), u.max(vv));
                    let candidate = (w.min(d), w.max(d));
                    if candidate < current && self.flip(t, k) {
                        flipped = true;
                        break;
                    }
                }
            }
            if !flipped {
                return;
            }
        }
    }

    fn finish(self, real: usize) -> Result<DelaunayMesh> {
        let mut triangles = Vec::new();
        for (t, tri) in self.tris.iter().enumerate() {
            if self.alive[t] && tri.iter().all(|&v| v < real) {
                triangles.push(*tri);
            }
        }
        if triangles.is_empty() {
            return Err(Error::BrokenTopology("triangulation vanished".into()));
        }
        DelaunayMesh::from_parts(self.pts[..real].to_vec(), triangles)
    }
}

fn rotate_min_first(t: [usize; 3]) -> [usize; 3] {
    let k = (0..3).min_by_key(|&k| t[k]).unwrap();
    [t[k], t[(k + 1) % 3], t[(k + 2) % 3]]
}

fn build_adjacency(triangles: &[[usize; 3]]) -> Result<Vec<[Option<usize>; 3]>> {
    let mut edge_owner: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut adjacency = vec![[None; 3]; triangles.len()];
    for (t, tri) in triangles.iter().enumerate() {
        for k in 0..3 {
            let a = tri[(k + 1) % 3];
            let b = tri[(k + 2) % 3];
            let key = (a.min(b), a.max(b));
            match edge_owner.get(&key) {
                None => {
                    edge_owner.insert(key, (t, k));
                }
                Some(&(other, ok)) => {
                    if adjacency[other][ok].is_some() {
                        return Err(Error::BrokenTopology(format!(
                            "edge {key:?} shared by more than two triangles"
                        )));
                    }
                    adjacency[t][k] = Some(other);
                    adjacency[other][ok] = Some(t);
                }
            }
        }
    }
    Ok(adjacency)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_too_few_or_collinear_or_duplicate() {
        let p = |x, y| Point::new(x, y);
        assert!(matches!(
            delaunay_triangulate(&[p(0.0, 0.0), p(1.0, 0.0)]),
            Err(Error::CollinearInput)
        ));
        assert!(matches!(
            delaunay_triangulate(&[p(0.0, 0.0), p(1.0, 0.0), p(2.0, 0.0), p(3.0, 0.0)]),
            Err(Error::CollinearInput)
        ));
        assert!(matches!(
            delaunay_triangulate(&[p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(1.0, 0.0)]),
            Err(Error::DuplicateSites(1, 3))
        ));
    }

    #[test]
    fn unit_square_splits_on_canonical_diagonal() {
        let sites = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ];
        let mesh = delaunay_triangulate(&sites).unwrap();
        assert_eq!(mesh.triangles().len(), 2);
        assert!((mesh.triangle_area_sum() - 1.0).abs() < 1e-12);
        // Canonical diagonal is (0, 2), the lexicographically smallest pair.
        assert!(mesh.has_edge(0, 2));
        assert!(!mesh.has_edge(1, 3));
        assert_eq!(mesh.empty_circle_violations(), 0);
    }

    #[test]
    fn square_with_center() {
        let sites = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
            Point::new(0.5, 0.5),
        ];
        let mesh = delaunay_triangulate(&sites).unwrap();
        assert_eq!(mesh.triangles().len(), 4);
        assert!((mesh.triangle_area_sum() - 1.0).abs() < 1e-12);
        assert_eq!(mesh.empty_circle_violations(), 0);
    }

    #[test]
    fn collinear_point_on_existing_edge() {
        // (1, 0) lands exactly on the edge between (0,0) and (2,0) when
        // inserted last.
        let sites = vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(1.0, 2.0),
            Point::new(1.0, 0.0),
        ];
        let mesh = delaunay_triangulate(&sites).unwrap();
        assert_eq!(mesh.triangles().len(), 2);
        assert!((mesh.triangle_area_sum() - mesh.hull_area()).abs() < 1e-12);
        assert_eq!(mesh.empty_circle_violations(), 0);
    }

    #[test]
    fn mesh_json_round_trip() {
        let sites = vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ];
        let mesh = delaunay_triangulate(&sites).unwrap();
        let text = mesh.to_json();
        assert!(text.contains("\"sites\""));
        let back = DelaunayMesh::from_json(&text).unwrap();
        assert_eq!(back.triangles(), mesh.triangles());
    }

    #[test]
    fn deterministic_on_lattice_block() {
        let mut sites = Vec::new();
        for i in 0..5 {
            for j in 0..4 {
                sites.push(Point::new(i as f64, j as f64));
            }
        }
        let a = delaunay_triangulate(&sites).unwrap();
        let b = delaunay_triangulate(&sites).unwrap();
        assert_eq!(a.triangles(), b.triangles());
        assert_eq!(a.empty_circle_violations(), 0);
        assert!((a.triangle_area_sum() - 12.0).abs() < 1e-9);
    }
}
