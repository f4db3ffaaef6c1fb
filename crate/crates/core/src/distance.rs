//! Distance fields and the mean-to-max efficiency of the distance function.
//!
//! `phi_infinity` measures `mean(d) / max(d)` for the distance to the true
//! boundary; `phi_d_infinity` evaluates the same quotient for the distance to
//! the discrete boundary of a lattice domain exactly, through a Delaunay
//! triangulation of the discrete boundary points; `honeycomb_phi_infinity`
//! drives the perforated-disc construction whose efficiency approaches
//! `1/3 + ln(3)/4`.

use serde::{Deserialize, Serialize};

use crate::domains::{DomainDescriptor, HexRemoval, Perforation};
use crate::energy::{self, EnergyMethod};
use crate::error::{Error, Result};
use crate::geometry::{
    classify_triangles, delaunay_triangulate, discrete_boundary, DelaunayMesh, LatticeDomain,
    Point, Triangle,
};
use crate::grid::ScalarField;
use crate::sampling;

/// How an efficiency quotient was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EfficiencyMethod {
    /// Both mean and max from closed forms.
    Analytic,
    /// Grid quadrature for the mean; the max is analytic where available.
    Grid,
    /// Exact triangle-by-triangle evaluation on a Delaunay mesh.
    DelaunayExact,
}

impl std::fmt::Display for EfficiencyMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EfficiencyMethod::Analytic => write!(f, "analytic"),
            EfficiencyMethod::Grid => write!(f, "grid"),
            EfficiencyMethod::DelaunayExact => write!(f, "delaunay_exact"),
        }
    }
}

/// Mean, max and quotient of a distance function over a domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyReport {
    pub mean: f64,
    pub max: f64,
    pub ratio: f64,
    pub method: EfficiencyMethod,
    /// Grid spacing when a grid was involved, `None` for exact evaluations.
    pub resolution: Option<f64>,
}

impl EfficiencyReport {
    pub fn new(mean: f64, max: f64, method: EfficiencyMethod, resolution: Option<f64>) -> Self {
        EfficiencyReport {
            mean,
            max,
            ratio: mean / max,
            method,
            resolution,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Distance from `p` to the closed segment `[a, b]`.
pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    let ab = Point::new(b.x() - a.x(), b.y() - a.y());
    let ap = Point::new(p.x() - a.x(), p.y() - a.y());
    let len2 = ab.x() * ab.x() + ab.y() * ab.y();
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = ((ap.x() * ab.x() + ap.y() * ab.y()) / len2).clamp(0.0, 1.0);
    let foot = Point::new(a.x() + t * ab.x(), a.y() + t * ab.y());
    p.dist(foot)
}

/// Distance from `p` to the boundary of the lattice domain (the true
/// polygonal boundary, as a union of segments).
pub fn lattice_boundary_distance(q: &LatticeDomain, p: Point) -> f64 {
    q.boundary_segments()
        .into_iter()
        .map(|(a, b)| point_segment_distance(p, a, b))
        .fold(f64::INFINITY, f64::min)
}

/// Distance from `p` to the discrete boundary (boundary lattice points).
pub fn discrete_boundary_distance(q: &LatticeDomain, p: Point) -> f64 {
    discrete_boundary(q)
        .into_iter()
        .map(|b| p.dist(b))
        .fold(f64::INFINITY, f64::min)
}

/// Pointwise-exact distance to the boundary, sampled at the cell centers of
/// a rasterization at spacing `h`. Outside cells hold zero.
pub fn distance_field(domain: &DomainDescriptor, h: f64) -> Result<ScalarField> {
    let mask = domain.rasterize(h)?;
    let dist: Box<dyn Fn(Point) -> f64 + Sync> = match domain {
        DomainDescriptor::Disc { r } => {
            let r = *r;
            Box::new(move |p| r - p.norm())
        }
        DomainDescriptor::Rectangle { a, b } => {
            let (a, b) = (*a, *b);
            Box::new(move |p| p.x().min(a - p.x()).min(p.y()).min(b - p.y()))
        }
        DomainDescriptor::IntervalUnion1d { .. } => {
            return Err(Error::InvalidParameters(
                "a 1-D domain has no planar distance field".into(),
            ))
        }
        DomainDescriptor::DiscUnion { discs } => {
            let discs = discs.clone();
            Box::new(move |p| {
                discs
                    .iter()
                    .map(|d| d.r - p.dist(d.center))
                    .fold(f64::NEG_INFINITY, f64::max)
            })
        }
        DomainDescriptor::HoneycombPerforated { r, eps, variant } => {
            let perforation = Perforation::new(*r, *eps, *variant)?;
            let r = *r;
            Box::new(move |p| {
                let rim = r - p.norm();
                match perforation.nearest_site_distance(p) {
                    Some(s) => rim.min(s),
                    None => rim,
                }
            })
        }
        DomainDescriptor::Lattice(q) => {
            let segments = q.boundary_segments();
            Box::new(move |p| {
                segments
                    .iter()
                    .map(|&(a, b)| point_segment_distance(p, a, b))
                    .fold(f64::INFINITY, f64::min)
            })
        }
    };
    Ok(ScalarField::sample(mask, |p| dist(p)))
}

/// Mean-to-max quotient of the boundary distance. The mean comes from the
/// rasterized field; the max is taken from a closed form when the domain has
/// one, otherwise from the grid. Interval unions are evaluated by their
/// closed form (the distance integrates to r^2 per interval of radius r) and
/// ignore `h`.
pub fn phi_infinity(domain: &DomainDescriptor, h: f64) -> Result<EfficiencyReport> {
    if let DomainDescriptor::IntervalUnion1d { radii } = domain {
        let max = radii.iter().copied().fold(0.0f64, f64::max);
        let mean = radii.iter().map(|r| r * r).sum::<f64>()
            / radii.iter().map(|r| 2.0 * r).sum::<f64>();
        return Ok(EfficiencyReport::new(
            mean,
            max,
            EfficiencyMethod::Analytic,
            None,
        ));
    }
    let field = distance_field(domain, h)?;
    let mean = field.mean()?;
    let (max, method) = match domain.analytic_max_distance() {
        Some(m) => (m, EfficiencyMethod::Analytic),
        None => (field.max()?, EfficiencyMethod::Grid),
    };
    Ok(EfficiencyReport::new(mean, max, method, Some(h)))
}

/// Everything the exact discrete-boundary evaluation produces.
#[derive(Debug, Clone)]
pub struct DelaunayAnalysis {
    pub report: EfficiencyReport,
    pub mesh: DelaunayMesh,
    pub interior: Vec<usize>,
    pub exterior: Vec<usize>,
    pub lec_center: Point,
    pub lec_radius: f64,
    pub closed_form_triangles: usize,
    pub quadrature_triangles: usize,
    /// Triangles where a non-vertex boundary point can undercut the vertex
    /// distance, integrated with the full min-over-sites integrand.
    pub corrected_triangles: usize,
}

/// Mean-to-max quotient of the distance to the discrete boundary, through a
/// Delaunay triangulation of the discrete boundary points.
///
/// Triangle classification and the max (the largest interior circumradius)
/// are exact. The mean integrates `d(., boundary points)` triangle by
/// triangle: when no foreign boundary point comes within the circumradius of
/// a triangle, the distance restricted to it provably equals the distance to
/// the triangle's own vertices and the closed form applies; otherwise the
/// true minimum over the nearby points is integrated by adaptive quadrature.
/// The popular shortcut of always integrating the vertex distance
/// overestimates the mean: a point of a triangle can be nearer to a boundary
/// point just outside the (empty) circumcircle than to all three vertices.
pub fn phi_d_infinity(q: &LatticeDomain) -> Result<EfficiencyReport> {
    Ok(analyze_lattice(q)?.report)
}

/// Largest circle inside the domain avoiding all discrete boundary points:
/// `(center, radius)`. Among ties the lexicographically smallest center wins.
pub fn largest_empty_circle(q: &LatticeDomain) -> Result<(Point, f64)> {
    let analysis = analyze_lattice(q)?;
    Ok((analysis.lec_center, analysis.lec_radius))
}

/// The full exact evaluation; see [`phi_d_infinity`].
pub fn analyze_lattice(q: &LatticeDomain) -> Result<DelaunayAnalysis> {
    let unit = unit_spacing_clone(q);
    let sites = discrete_boundary(&unit);
    if sites.len() < 3 {
        return Err(Error::DegenerateBoundary);
    }
    let mesh = delaunay_triangulate(&sites)?;
    let (interior, exterior) = classify_triangles(&mesh, &unit)?;
    if interior.is_empty() {
        return Err(Error::DegenerateBoundary);
    }

    let area_sum: f64 = interior
        .iter()
        .map(|&t| triangle_of(&mesh, t).area())
        .sum();
    let cells = unit.cell_count() as f64;
    if (area_sum - cells).abs() > 1e-9 * cells.max(1.0) {
        return Err(Error::ClassificationConflict(format!(
            "interior triangles cover area {area_sum}, expected {cells}"
        )));
    }

    let mut integral = 0.0;
    let mut closed = 0usize;
    let mut quad = 0usize;
    let mut corrected = 0usize;
    let mut best: Option<(f64, Point)> = None;
    for &t in &interior {
        let tri = triangle_of(&mesh, t);
        let intruders = intruding_sites(&tri, &sites);
        if intruders.is_empty() {
            let report = energy::energy(&tri)?;
            integral += report.vertex_integral;
            match report.method {
                EnergyMethod::ClosedForm => closed += 1,
                EnergyMethod::Quadrature => quad += 1,
            }
        } else {
            integral += true_distance_integral(&tri, &intruders)?;
            corrected += 1;
        }
        let (c, r) = (tri.circumcenter(), tri.circumradius());
        best = Some(match best {
            None => (r, c),
            Some((br, bc)) => {
                if r > br + LEC_TIE_TOL {
                    (r, c)
                } else if r > br - LEC_TIE_TOL && lex_less(c, bc) {
                    (br.max(r), c)
                } else {
                    (br, bc)
                }
            }
        });
    }
    let (lec_radius_unit, lec_center_unit) = best.expect("nonempty interior");

    let eps = q.eps();
    let mean_unit = integral / cells;
    let report = EfficiencyReport::new(
        mean_unit * eps,
        lec_radius_unit * eps,
        EfficiencyMethod::DelaunayExact,
        None,
    );
    Ok(DelaunayAnalysis {
        report,
        mesh,
        interior,
        exterior,
        lec_center: Point::new(lec_center_unit.x() * eps, lec_center_unit.y() * eps),
        lec_radius: lec_radius_unit * eps,
        closed_form_triangles: closed,
        quadrature_triangles: quad,
        corrected_triangles: corrected,
    })
}

/// Boundary points other than the vertices that come within the circumradius
/// of the triangle. Only such points can be nearest to some point of the
/// triangle, since the vertex distance never exceeds the circumradius there.
fn intruding_sites(tri: &Triangle, sites: &[Point]) -> Vec<Point> {
    let [a, b, c] = tri.vertices();
    let reach = tri.circumradius() * (1.0 + 1e-12) + 1e-12;
    sites
        .iter()
        .copied()
        .filter(|&s| s != a && s != b && s != c)
        .filter(|&s| {
            point_segment_distance(s, a, b)
                .min(point_segment_distance(s, b, c))
                .min(point_segment_distance(s, c, a))
                <= reach
        })
        .collect()
}

/// Integral over the triangle of the distance to its vertices and the given
/// nearby boundary points.
fn true_distance_integral(tri: &Triangle, intruders: &[Point]) -> Result<f64> {
    let [a, b, c] = tri.vertices();
    energy::integrate_triangle(
        a,
        b,
        c,
        |p| {
            let vertex = p.dist(a).min(p.dist(b)).min(p.dist(c));
            intruders
                .iter()
                .map(|&s| p.dist(s))
                .fold(vertex, f64::min)
        },
        energy::ENERGY_QUAD_TOL,
    )
}

const LEC_TIE_TOL: f64 = 1e-9;

fn lex_less(a: Point, b: Point) -> bool {
    (a.x(), a.y()) < (b.x(), b.y())
}

fn triangle_of(mesh: &DelaunayMesh, t: usize) -> Triangle {
    let [a, b, c] = mesh.triangle_points(t);
    Triangle::new(a, b, c).expect("mesh triangles are nondegenerate")
}

fn unit_spacing_clone(q: &LatticeDomain) -> LatticeDomain {
    LatticeDomain::new(1.0, q.cells()).expect("cells were already validated")
}

/// Grid cross-check of [`phi_d_infinity`]: the distance to the discrete
/// boundary sampled at cell centers of spacing `h`.
pub fn phi_d_infinity_grid(q: &LatticeDomain, h: f64) -> Result<EfficiencyReport> {
    let descriptor = DomainDescriptor::lattice(q.clone());
    let mask = descriptor.rasterize(h)?;
    let points = discrete_boundary(q);
    let field = ScalarField::sample(mask, |p| {
        points
            .iter()
            .map(|&b| p.dist(b))
            .fold(f64::INFINITY, f64::min)
    });
    let mean = field.mean()?;
    let max = field.max()?;
    Ok(EfficiencyReport::new(
        mean,
        max,
        EfficiencyMethod::Grid,
        Some(h),
    ))
}

/// Outcome of sampling whether the nearest discrete boundary point of a
/// sampled location is a vertex of the Delaunay triangle containing it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexCheck {
    pub samples: usize,
    pub ok: bool,
    /// Sample point and its true nearest boundary point, in real coordinates.
    pub counterexample: Option<(Point, Point)>,
}

struct VertexFailure {
    point: Point,
    nearest: Point,
}

/// Samples `samples` points over the interior triangles and verifies that
/// the nearest discrete boundary point is always one of the three triangle
/// vertices. This is the property that licenses triangle-wise closed-form
/// integration of the distance.
pub fn nearest_is_vertex_check(q: &LatticeDomain, samples: usize) -> Result<VertexCheck> {
    let unit = unit_spacing_clone(q);
    let sites = discrete_boundary(&unit);
    if sites.len() < 3 {
        return Err(Error::DegenerateBoundary);
    }
    let mesh = delaunay_triangulate(&sites)?;
    let (interior, _) = classify_triangles(&mesh, &unit)?;
    if interior.is_empty() {
        return Err(Error::DegenerateBoundary);
    }
    let eps = q.eps();
    match sample_nearest_vertex(&mesh, &interior, &sites, samples, 0x5eed) {
        None => Ok(VertexCheck {
            samples,
            ok: true,
            counterexample: None,
        }),
        Some(f) => Ok(VertexCheck {
            samples,
            ok: false,
            counterexample: Some((
                Point::new(f.point.x() * eps, f.point.y() * eps),
                Point::new(f.nearest.x() * eps, f.nearest.y() * eps),
            )),
        }),
    }
}

fn sample_nearest_vertex(
    mesh: &DelaunayMesh,
    interior: &[usize],
    sites: &[Point],
    samples: usize,
    seed: u64,
) -> Option<VertexFailure> {
    let mut rng = sampling::rng(seed);
    let areas: Vec<f64> = interior
        .iter()
        .map(|&t| triangle_of(mesh, t).area())
        .collect();
    let total: f64 = areas.iter().sum();
    for k in 0..samples {
        // Deterministic sweep over triangles proportional to area.
        let mut target = (k as f64 + 0.5) / samples as f64 * total;
        let mut chosen = interior[interior.len() - 1];
        for (&t, &a) in interior.iter().zip(&areas) {
            if target <= a {
                chosen = t;
                break;
            }
            target -= a;
        }
        let [a, b, c] = mesh.triangle_points(chosen);
        let p = sampling::point_in_triangle(&mut rng, [a, b, c]);
        let vertex_best = p.dist(a).min(p.dist(b)).min(p.dist(c));
        let mut global_best = f64::INFINITY;
        let mut global_site = sites[0];
        for &s in sites {
            let d = p.dist(s);
            if d < global_best {
                global_best = d;
                global_site = s;
            }
        }
        if global_best < vertex_best - 1e-10 {
            return Some(VertexFailure {
                point: p,
                nearest: global_site,
            });
        }
    }
    None
}

/// Mean over a unit-circumradius regular hexagon of the distance to its
/// center, in closed form: integrating `sec^3` over the half-angle of each
/// of the six sectors gives `1/3 + ln(3)/4`.
pub fn hexagon_mean_abs_closed() -> f64 {
    let tau = std::f64::consts::FRAC_PI_6;
    let sec = 1.0 / tau.cos();
    let tan = tau.tan();
    0.5 * (sec * tan + (sec + tan).ln())
}

/// The same mean by adaptive quadrature over the six triangles.
pub fn hexagon_mean_abs_quadrature(tol: f64) -> Result<f64> {
    let center = Point::new(0.0, 0.0);
    let vertex = |k: i64| {
        let angle = std::f64::consts::FRAC_PI_6 + k as f64 * std::f64::consts::FRAC_PI_3;
        Point::new(angle.cos(), angle.sin())
    };
    let mut integral = 0.0;
    for k in 0..6 {
        integral += energy::integrate_triangle(center, vertex(k), vertex(k + 1), |p| p.norm(), tol)?;
    }
    let area = 6.0 * (3f64.sqrt() / 4.0);
    Ok(integral / area)
}

/// Efficiency of the perforated disc: radius `r`, hexagon side `eps`,
/// removed points per `variant`, distance field sampled at spacing `h`.
///
/// The max is pinned to its exact value `eps`: the farthest points from the
/// removed set sit at distance `eps` from it, and grid maxima pick up rim
/// artifacts instead. Requires `h <= eps / 8`.
pub fn honeycomb_phi_infinity(
    r: f64,
    eps: f64,
    variant: HexRemoval,
    h: f64,
) -> Result<EfficiencyReport> {
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidParameters(format!(
            "grid spacing must be positive, got {h}"
        )));
    }
    if h > eps / 8.0 {
        return Err(Error::ResolutionTooCoarse {
            h,
            feature: eps / 8.0,
        });
    }
    let domain = DomainDescriptor::honeycomb_perforated(r, eps, variant)?;
    let field = distance_field(&domain, h)?;
    let mean = field.mean()?;
    Ok(EfficiencyReport::new(
        mean,
        eps,
        EfficiencyMethod::Grid,
        Some(h),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::energy::equilateral_energy;
    use std::collections::BTreeSet;
    use std::f64::consts::PI;

    fn lattice(eps: f64, cells: &[(i64, i64)]) -> LatticeDomain {
        LatticeDomain::new(eps, cells.iter().copied()).unwrap()
    }

    const RIGHT_ISOSCELES_ENERGY: f64 = 0.5410750800467435;

    #[test]
    fn segment_distance_cases() {
        let a = Point::new(0.0, 0.0);
        let b = Point::new(2.0, 0.0);
        assert!((point_segment_distance(Point::new(1.0, 1.0), a, b) - 1.0).abs() < 1e-15);
        assert!((point_segment_distance(Point::new(-1.0, 0.0), a, b) - 1.0).abs() < 1e-15);
        assert!((point_segment_distance(Point::new(3.0, 4.0), a, b) - hypot(1.0, 4.0)).abs() < 1e-15);
        assert!((point_segment_distance(Point::new(0.5, 0.0), a, a) - 0.5).abs() < 1e-15);
    }

    fn hypot(x: f64, y: f64) -> f64 {
        (x * x + y * y).sqrt()
    }

    #[test]
    fn disc_efficiency_approaches_one_third() {
        let d = DomainDescriptor::disc(1.0).unwrap();
        let h = 1.0 / 128.0;
        let report = phi_infinity(&d, h).unwrap();
        assert_eq!(report.method, EfficiencyMethod::Analytic);
        assert_eq!(report.max, 1.0);
        assert!(
            (report.ratio - 1.0 / 3.0).abs() < 2.0 * h,
            "ratio {}",
            report.ratio
        );
    }

    #[test]
    fn square_efficiency_approaches_one_third() {
        let d = DomainDescriptor::rectangle(1.0, 1.0).unwrap();
        let h = 1.0 / 128.0;
        let report = phi_infinity(&d, h).unwrap();
        assert!((report.max - 0.5).abs() < 1e-15);
        assert!(
            (report.ratio - 1.0 / 3.0).abs() < 2.0 * h,
            "ratio {}",
            report.ratio
        );
    }

    #[test]
    fn thin_rectangle_efficiency() {
        let (a, b) = (0.01, 1.0);
        let d = DomainDescriptor::rectangle(a, b).unwrap();
        let h = a / 8.0;
        let report = phi_infinity(&d, h).unwrap();
        let expected = 0.5 - a / (6.0 * b);
        assert!(
            (report.ratio - expected).abs() < 2.0 * h,
            "ratio {} expected {}",
            report.ratio,
            expected
        );
    }

    #[test]
    fn disc_union_field_is_per_disc() {
        let d = DomainDescriptor::disc_union_demo(2, 0.5).unwrap();
        let field = distance_field(&d, 0.01).unwrap();
        let report = phi_infinity(&d, 0.01).unwrap();
        assert_eq!(report.max, 1.0);
        assert!(report.ratio > 0.2 && report.ratio < 0.45, "{}", report.ratio);
        // Every sampled value stays below the radius of its disc.
        let grid = field.grid().clone();
        for (i, j, _) in grid.inside_cells() {
            assert!(field.value(i, j) <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn domino_matches_right_isosceles_energy() {
        let q = lattice(0.25, &[(1, 1), (2, 1)]);
        let report = phi_d_infinity(&q).unwrap();
        assert_eq!(report.method, EfficiencyMethod::DelaunayExact);
        assert_eq!(report.resolution, None);
        let max = 0.25 * std::f64::consts::FRAC_1_SQRT_2;
        assert!((report.max - max).abs() < 1e-12, "max {}", report.max);
        assert!(
            (report.ratio - RIGHT_ISOSCELES_ENERGY).abs() < 1e-9,
            "ratio {}",
            report.ratio
        );
    }

    #[test]
    fn domino_largest_empty_circle() {
        let q = lattice(0.5, &[(1, 1), (2, 1)]);
        let (center, radius) = largest_empty_circle(&q).unwrap();
        assert!((radius - 0.5 * std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        // Four ties at the two cell centers; the lexicographically smallest
        // circumcenter is the lower-left one.
        assert!((center.x() - 0.25).abs() < 1e-12, "center {:?}", center);
        assert!((center.y() - 0.25).abs() < 1e-12, "center {:?}", center);
    }

    #[test]
    fn square_2x2_largest_empty_circle() {
        let q = lattice(0.5, &[(1, 1), (2, 1), (1, 2), (2, 2)]);
        let (center, radius) = largest_empty_circle(&q).unwrap();
        assert!((radius - 0.5).abs() < 1e-12, "radius {}", radius);
        assert!((center.x() - 0.5).abs() < 1e-12 && (center.y() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn phi_d_is_scale_invariant() {
        let cells = [(1, 1), (2, 1), (2, 2), (3, 1)];
        let r1 = phi_d_infinity(&lattice(1.0, &cells)).unwrap();
        let r2 = phi_d_infinity(&lattice(0.125, &cells)).unwrap();
        assert!((r1.ratio - r2.ratio).abs() < 1e-12);
        assert!((r1.mean - 8.0 * r2.mean).abs() < 1e-12);
        assert!((r1.max - 8.0 * r2.max).abs() < 1e-12);
    }

    #[test]
    fn random_polyominoes_stay_below_the_bound() {
        let mut rng = sampling::rng(5);
        let bound = equilateral_energy() + 1e-9;
        for _ in 0..12 {
            let q = sampling::random_polyomino(&mut rng, 0.5, 14);
            let report = phi_d_infinity(&q).unwrap();
            assert!(
                report.ratio <= bound,
                "ratio {} exceeds the hexagonal bound",
                report.ratio
            );
            assert!(report.ratio > 0.3, "suspiciously low ratio {}", report.ratio);
        }
    }

    #[test]
    fn grid_cross_check_agrees_with_exact() {
        let mut rng = sampling::rng(9);
        for _ in 0..4 {
            let q = sampling::random_polyomino(&mut rng, 1.0, 10);
            let exact = phi_d_infinity(&q).unwrap();
            let grid = phi_d_infinity_grid(&q, 1.0 / 8.0).unwrap();
            let rel = (exact.ratio - grid.ratio).abs() / exact.ratio;
            assert!(rel < 0.2, "exact {} grid {}", exact.ratio, grid.ratio);
        }
    }

    #[test]
    fn nearest_vertex_check_passes_on_small_shapes() {
        for cells in [
            vec![(1i64, 1i64), (2, 1)],
            vec![(1, 1), (2, 1), (1, 2), (2, 2)],
            vec![(1, 1), (2, 1), (3, 1), (3, 2), (3, 3)],
        ] {
            let q = lattice(0.5, &cells);
            let check = nearest_is_vertex_check(&q, 200).unwrap();
            assert!(check.ok, "counterexample {:?}", check.counterexample);
        }
    }

    #[test]
    fn vertex_property_fails_on_larger_squares() {
        // In a 4x4-cell square, points near the rim of the central
        // co-circular quad are closer to a mid-edge boundary point than to
        // any vertex of their triangle, so the vertex shortcut overestimates.
        let cells: Vec<(i64, i64)> = (1..=4)
            .flat_map(|i| (1..=4).map(move |j| (i, j)))
            .collect();
        let q = lattice(1.0, &cells);
        let check = nearest_is_vertex_check(&q, 10_000).unwrap();
        assert!(!check.ok, "expected a counterexample on the 4x4 square");

        let analysis = analyze_lattice(&q).unwrap();
        assert!(analysis.corrected_triangles > 0);
        let vertex_sum: f64 = analysis
            .interior
            .iter()
            .map(|&t| {
                energy::energy(&triangle_of(&analysis.mesh, t))
                    .unwrap()
                    .vertex_integral
            })
            .sum();
        let true_mean = analysis.report.mean;
        assert!(
            vertex_sum / 16.0 > true_mean + 1e-4,
            "vertex sum {} should exceed the true mean {}",
            vertex_sum / 16.0,
            true_mean
        );

        let grid = phi_d_infinity_grid(&q, 1.0 / 16.0).unwrap();
        let rel = (analysis.report.ratio - grid.ratio).abs() / grid.ratio;
        assert!(
            rel < 0.05,
            "exact {} vs grid {}",
            analysis.report.ratio,
            grid.ratio
        );
    }

    #[test]
    fn squeeze_inequalities_hold_on_samples() {
        let mut rng = sampling::rng(23);
        for _ in 0..6 {
            let eps = 0.5;
            let q = sampling::random_polyomino(&mut rng, eps, 12);
            let (lo, hi) = q.bounds();
            let mut tested = 0;
            while tested < 40 {
                use rand::Rng;
                let p = Point::new(
                    rng.gen_range(lo.x()..hi.x()),
                    rng.gen_range(lo.y()..hi.y()),
                );
                if !q.contains_point(p) {
                    continue;
                }
                tested += 1;
                let d_true = lattice_boundary_distance(&q, p);
                let d_disc = discrete_boundary_distance(&q, p);
                assert!(d_true <= d_disc + 1e-12);
                assert!(d_disc * d_disc <= d_true * d_true + eps * eps / 2.0 + 1e-12);
            }
        }
    }

    #[test]
    fn lattice_field_is_lipschitz() {
        let q = lattice(0.5, &[(1, 1), (2, 1), (2, 2), (3, 2), (3, 1)]);
        let d = DomainDescriptor::lattice(q);
        let h = 0.05;
        let field = distance_field(&d, h).unwrap();
        let grid = field.grid().clone();
        for (i, j, _) in grid.inside_cells() {
            for (ni, nj) in [(i + 1, j), (i, j + 1)] {
                if ni < grid.nx() && nj < grid.ny() && grid.is_inside(ni, nj) {
                    let diff = (field.value(i, j) - field.value(ni, nj)).abs();
                    assert!(diff <= h + 1e-12, "jump {} at ({i},{j})", diff);
                }
            }
        }
    }

    #[test]
    fn hexagon_mean_closed_form_is_the_constant() {
        assert!((hexagon_mean_abs_closed() - equilateral_energy()).abs() < 1e-14);
        assert!((hexagon_mean_abs_closed() - (1.0 / 3.0 + 3f64.ln() / 4.0)).abs() < 1e-15);
    }

    #[test]
    fn hexagon_mean_quadrature_matches() {
        let quad = hexagon_mean_abs_quadrature(1e-7).unwrap();
        assert!(
            (quad - hexagon_mean_abs_closed()).abs() < 1e-6,
            "quadrature {}",
            quad
        );
    }

    #[test]
    fn honeycomb_requires_fine_grids() {
        match honeycomb_phi_infinity(1.0, 0.2, HexRemoval::Centers, 0.05) {
            Err(Error::ResolutionTooCoarse { .. }) => {}
            other => panic!("expected ResolutionTooCoarse, got {:?}", other),
        }
    }

    #[test]
    fn honeycomb_small_case_is_sane() {
        let eps = 0.2;
        let centers =
            honeycomb_phi_infinity(1.0, eps, HexRemoval::Centers, eps / 16.0).unwrap();
        assert_eq!(centers.max, eps);
        assert!(
            centers.ratio > 0.35 && centers.ratio < 0.68,
            "centers ratio {}",
            centers.ratio
        );
        let vertices =
            honeycomb_phi_infinity(1.0, eps, HexRemoval::Vertices, eps / 16.0).unwrap();
        assert!(
            vertices.ratio < centers.ratio,
            "vertices {} centers {}",
            vertices.ratio,
            centers.ratio
        );
    }

    #[test]
    fn report_json_shape() {
        let report = EfficiencyReport::new(
            1.0 / 3.0,
            1.0,
            EfficiencyMethod::DelaunayExact,
            None,
        );
        let text = report.to_json().unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["mean", "max", "ratio", "method", "resolution"] {
            assert!(value.get(key).is_some(), "missing {key}");
        }
        assert_eq!(value["method"], "delaunay_exact");
        assert!(value["resolution"].is_null());
        let back = EfficiencyReport::from_json(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn interior_triangles_tile_the_domain() {
        let mut rng = sampling::rng(31);
        for _ in 0..6 {
            let q = sampling::random_polyomino(&mut rng, 1.0, 16);
            let analysis = analyze_lattice(&q).unwrap();
            let total: f64 = analysis
                .interior
                .iter()
                .map(|&t| triangle_of(&analysis.mesh, t).area())
                .sum();
            assert!((total - q.cell_count() as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn disc_union_mean_is_area_weighted() {
        // mean(d) over a union of discs is the area-weighted mean of r_k / 3.
        let d = DomainDescriptor::disc_union_demo(2, 0.5).unwrap();
        let report = phi_infinity(&d, 0.005).unwrap();
        let (a1, a2) = (PI, PI * 0.5);
        let expected = (a1 * (1.0 / 3.0) + a2 * (0.5f64.sqrt() / 3.0)) / (a1 + a2);
        assert!(
            (report.mean - expected).abs() < 0.01,
            "mean {} expected {}",
            report.mean,
            expected
        );
    }

    #[test]
    fn interval_union_ratio_is_analytic() {
        let one = DomainDescriptor::interval_union(vec![0.7]).unwrap();
        let report = phi_infinity(&one, 0.1).unwrap();
        assert!((report.ratio - 0.5).abs() < 1e-15);
        assert_eq!(report.method, EfficiencyMethod::Analytic);
        assert!(report.resolution.is_none());
        let two = DomainDescriptor::interval_union(vec![1.0, 0.5]).unwrap();
        let report = phi_infinity(&two, 0.1).unwrap();
        assert!((report.ratio - 1.25 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_lattices_are_rejected() {
        let err = LatticeDomain::new(1.0, BTreeSet::new()).unwrap_err();
        assert!(matches!(err, Error::EmptyLattice));
    }
}
