//! Planar geometry at desk scale: predicates, Delaunay/Voronoi, lattice
//! domains and hexagonal tilings.

mod delaunay;
mod hex;
mod lattice;
mod point;
pub mod predicates;
mod triangle;
mod voronoi;

pub use delaunay::{convex_hull, convex_hull_area, delaunay_triangulate, DelaunayMesh};
pub use hex::{
    center_at, center_basis, hex_tiling, hexagon_vertices, nearest_center,
    nearest_center_distance, HexTiling, Rect,
};
pub use lattice::{
    circumcenter_position, classify_triangles, discrete_boundary, LatticeDomain, RegionPosition,
};
pub(crate) use lattice::mesh_site_indices;
pub use point::Point;
pub use predicates::CirclePosition;
pub use triangle::{circumcircle, circumcircle_of, Triangle, DEGENERATE_AREA_REL_TOL};
pub use voronoi::{voronoi_dual, VoronoiCell};

/// Tri-state in-circle test against a triangle's circumcircle.
pub fn in_circumcircle(t: &Triangle, p: Point) -> CirclePosition {
    t.in_circumcircle(p)
}
