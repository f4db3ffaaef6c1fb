//! Voronoi diagram as the dual of a Delaunay mesh.
//!
//! A cell's vertices are the circumcenters of the triangles incident to its
//! site, walked counterclockwise around the site. Interior sites give closed
//! convex loops; hull sites give open chains flagged unbounded.

use super::triangle::circumcircle_of;
use super::{DelaunayMesh, Point};

/// One Voronoi cell: the locus of points nearer to `site` than to any other
/// site of the mesh.
#[derive(Clone, Debug)]
pub struct VoronoiCell {
    pub site: usize,
    /// Circumcenters in counterclockwise order around the site. A closed
    /// loop for bounded cells; for unbounded cells, the open chain between
    /// the two hull directions (a bisector segment in the two-site case).
    pub vertices: Vec<Point>,
    pub bounded: bool,
}

/// Dual of the mesh, one cell per site.
pub fn voronoi_dual(mesh: &DelaunayMesh) -> Vec<VoronoiCell> {
    if mesh.sites().len() == 2 && mesh.triangles().is_empty() {
        return two_site_cells(mesh.sites()[0], mesh.sites()[1]);
    }

    let centers: Vec<Point> = mesh
        .triangles()
        .iter()
        .map(|t| circumcircle_of(mesh.sites()[t[0]], mesh.sites()[t[1]], mesh.sites()[t[2]]).0)
        .collect();

    // Incidence: one (triangle, slot-of-site) entry per site.
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); mesh.sites().len()];
    for (t, tri) in mesh.triangles().iter().enumerate() {
        for (k, &v) in tri.iter().enumerate() {
            incident[v].push((t, k));
        }
    }

    let mut cells = Vec::with_capacity(mesh.sites().len());
    for (site, inc) in incident.iter().enumerate() {
        if inc.is_empty() {
            // A site the triangulation never used (cannot happen for meshes
            // built here, but from_parts accepts them).
            cells.push(VoronoiCell {
                site,
                vertices: Vec::new(),
                bounded: false,
            });
            continue;
        }
        let (chain, closed) = walk_around(mesh, inc[0]);
        cells.push(VoronoiCell {
            site,
            vertices: chain.iter().map(|&(t, _)| centers[t]).collect(),
            bounded: closed,
        });
    }
    cells
}

/// Orders the triangles incident to a site by walking the fan. Returns the
/// chain in counterclockwise order and whether it closed into a loop.
fn walk_around(mesh: &DelaunayMesh, start: (usize, usize)) -> (Vec<(usize, usize)>, bool) {
    // Counterclockwise neighbor: across the edge opposite the vertex that
    // follows the site in its triangle.
    let next_ccw = |(t, k): (usize, usize)| -> Option<(usize, usize)> {
        let n = mesh.adjacency()[t][(k + 1) % 3]?;
        let site = mesh.triangles()[t][k];
        let slot = mesh.triangles()[n].iter().position(|&v| v == site)?;
        Some((n, slot))
    };
    let next_cw = |(t, k): (usize, usize)| -> Option<(usize, usize)> {
        let n = mesh.adjacency()[t][(k + 2) % 3]?;
        let site = mesh.triangles()[t][k];
        let slot = mesh.triangles()[n].iter().position(|&v| v == site)?;
        Some((n, slot))
    };

    let mut chain = vec![start];
    let mut cur = start;
    loop {
        match next_ccw(cur) {
            Some(n) if n == start => return (chain, true),
            Some(n) => {
                chain.push(n);
                cur = n;
            }
            None => break,
        }
    }
    // Hit the hull: extend clockwise from the start to capture the rest.
    let mut cur = start;
    while let Some(n) = next_cw(cur) {
        chain.insert(0, n);
        cur = n;
    }
    (chain, false)
}

/// Two sites have no triangulation; their diagram is the bisector line
/// splitting the plane into two half-planes. Each cell carries a long
/// segment of the bisector, oriented to keep its site on the left.
fn two_site_cells(a: Point, b: Point) -> Vec<VoronoiCell> {
    let m = a.midpoint(b);
    let ux = b.x() - a.x();
    let uy = b.y() - a.y();
    let len = (ux * ux + uy * uy).sqrt().max(f64::MIN_POSITIVE);
    let (px, py) = (-uy / len, ux / len);
    let reach = 4.0 * len.max(1.0);
    let lo = Point::new(m.x() - reach * px, m.y() - reach * py);
    let hi = Point::new(m.x() + reach * px, m.y() + reach * py);
    vec![
        VoronoiCell {
            site: 0,
            vertices: vec![lo, hi],
            bounded: false,
        },
        VoronoiCell {
            site: 1,
            vertices: vec![hi, lo],
            bounded: false,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::super::delaunay_triangulate;
    use super::super::predicates::orient2d;
    use super::*;

    #[test]
    fn two_sites_give_two_unbounded_half_planes() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(2.0, 0.0);
        let mesh = DelaunayMesh::from_parts(vec![a, b], vec![]).unwrap();
        let cells = voronoi_dual(&mesh);
        assert_eq!(cells.len(), 2);
        assert!(cells.iter().all(|c| !c.bounded));
        // The bisector is the vertical line x = 1.
        for c in &cells {
            for v in &c.vertices {
                assert!((v.x() - 1.0).abs() < 1e-12);
            }
        }
        // Each site lies left of its own directed bisector segment.
        for (c, site) in cells.iter().zip([a, b]) {
            assert!(orient2d(c.vertices[0], c.vertices[1], site) > 0.0);
        }
    }

    #[test]
    fn interior_site_gets_closed_convex_cell() {
        let mut sites = vec![Point::new(0.0, 0.0)];
        for k in 0..6 {
            let th = k as f64 * std::f64::consts::FRAC_PI_3;
            sites.push(Point::new(th.cos(), th.sin()));
        }
        let mesh = delaunay_triangulate(&sites).unwrap();
        let cells = voronoi_dual(&mesh);
        let center = &cells[0];
        assert!(center.bounded);
        assert_eq!(center.vertices.len(), 6);
        let n = center.vertices.len();
        for i in 0..n {
            let p = center.vertices[i];
            let q = center.vertices[(i + 1) % n];
            let r = center.vertices[(i + 2) % n];
            assert!(orient2d(p, q, r) > -1e-12);
        }
        // Hull sites are unbounded.
        assert!(cells[1..].iter().all(|c| !c.bounded));
    }
}
