//! Numerical laboratory for mean-to-max efficiency functionals on planar
//! domains: exact triangle-distance energies, Delaunay/Voronoi geometry,
//! distance fields, and a p-Laplacian torsion solver.

pub mod distance;
pub mod domains;
pub mod energy;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod sampling;
pub mod suite;
pub mod text;
pub mod torsion;

pub use error::{Error, Result};
pub use geometry::Point;
