//! Domain descriptors: the planar (and 1-D) regions on which distance
//! fields and torsion problems are posed.
//!
//! A [`DomainDescriptor`] is a declarative, serializable description of a
//! domain. Geometry queries (`contains`, `area`, rasterization, lattice
//! approximation) are derived from it so that every consumer sees the same
//! region.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{LatticeDomain, Point};
use crate::grid::GridMask;

/// A closed disc given by its center and radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disc {
    pub center: Point,
    pub r: f64,
}

/// Which points of a hexagonal tiling are removed from the perforated disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HexRemoval {
    Centers,
    Vertices,
}

impl std::fmt::Display for HexRemoval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HexRemoval::Centers => write!(f, "centers"),
            HexRemoval::Vertices => write!(f, "vertices"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case")]
pub enum DomainDescriptor {
    /// Open disc of radius `r` centered at the origin.
    Disc { r: f64 },
    /// Open rectangle `(0, a) x (0, b)`.
    Rectangle { a: f64, b: f64 },
    /// Disjoint union of open intervals, described by their radii.
    #[serde(rename = "interval_union_1d")]
    IntervalUnion1d { radii: Vec<f64> },
    /// Disjoint union of open discs.
    DiscUnion { discs: Vec<Disc> },
    /// Disc of radius `r` with a hexagonal-tiling point set of pitch `eps`
    /// removed (centers or vertices of hexagons with side `eps`).
    HoneycombPerforated {
        r: f64,
        eps: f64,
        variant: HexRemoval,
    },
    /// Union of grid cells on an `eps`-lattice.
    Lattice(LatticeDomain),
}

fn require_positive(value: f64, what: &str) -> Result<f64> {
    if !value.is_finite() || value <= 0.0 {
        return Err(Error::InvalidParameters(format!(
            "{what} must be positive and finite, got {value}"
        )));
    }
    Ok(value)
}

impl DomainDescriptor {
    pub fn disc(r: f64) -> Result<Self> {
        require_positive(r, "disc radius")?;
        Ok(DomainDescriptor::Disc { r })
    }

    pub fn rectangle(a: f64, b: f64) -> Result<Self> {
        require_positive(a, "rectangle side a")?;
        require_positive(b, "rectangle side b")?;
        Ok(DomainDescriptor::Rectangle { a, b })
    }

    pub fn interval_union(radii: Vec<f64>) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::EmptyList);
        }
        for &r in &radii {
            require_positive(r, "interval radius")?;
        }
        Ok(DomainDescriptor::IntervalUnion1d { radii })
    }

    /// Union of open discs; the discs must be pairwise disjoint (closures may
    /// touch at most in a single point is still rejected: strict separation).
    pub fn disc_union(discs: Vec<Disc>) -> Result<Self> {
        if discs.is_empty() {
            return Err(Error::EmptyList);
        }
        for d in &discs {
            require_positive(d.r, "disc radius")?;
        }
        for (k, d) in discs.iter().enumerate() {
            for e in discs.iter().skip(k + 1) {
                let gap = d.center.dist(e.center) - d.r - e.r;
                if gap <= 0.0 {
                    return Err(Error::InvalidParameters(format!(
                        "discs {k} and later overlap or touch (gap {gap})"
                    )));
                }
            }
        }
        Ok(DomainDescriptor::DiscUnion { discs })
    }

    /// `n` disjoint discs on the x-axis with radii `1, 1/sqrt(2), ..., 1/sqrt(n)`,
    /// consecutive centers separated by `spacing` beyond the touching distance.
    pub fn disc_union_demo(n: usize, spacing: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyList);
        }
        require_positive(spacing, "spacing")?;
        let radii: Vec<f64> = (1..=n).map(|k| 1.0 / (k as f64).sqrt()).collect();
        let mut discs = Vec::with_capacity(n);
        let mut x = 0.0;
        for (k, &r) in radii.iter().enumerate() {
            if k > 0 {
                x += radii[k - 1] + r + spacing;
            }
            discs.push(Disc {
                center: Point::new(x, 0.0),
                r,
            });
        }
        Self::disc_union(discs)
    }

    pub fn honeycomb_perforated(r: f64, eps: f64, variant: HexRemoval) -> Result<Self> {
        require_positive(r, "disc radius")?;
        require_positive(eps, "hexagon side")?;
        if eps >= r {
            return Err(Error::InvalidParameters(format!(
                "hexagon side {eps} must be smaller than the disc radius {r}"
            )));
        }
        Ok(DomainDescriptor::HoneycombPerforated { r, eps, variant })
    }

    pub fn lattice(q: LatticeDomain) -> Self {
        DomainDescriptor::Lattice(q)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn is_one_dimensional(&self) -> bool {
        matches!(self, DomainDescriptor::IntervalUnion1d { .. })
    }

    /// Lebesgue measure: area for planar kinds, total length for the 1-D kind.
    /// Removed points of the perforated disc are null sets.
    pub fn area(&self) -> f64 {
        match self {
            DomainDescriptor::Disc { r } => std::f64::consts::PI * r * r,
            DomainDescriptor::Rectangle { a, b } => a * b,
            DomainDescriptor::IntervalUnion1d { radii } => 2.0 * radii.iter().sum::<f64>(),
            DomainDescriptor::DiscUnion { discs } => discs
                .iter()
                .map(|d| std::f64::consts::PI * d.r * d.r)
                .sum(),
            DomainDescriptor::HoneycombPerforated { r, .. } => std::f64::consts::PI * r * r,
            DomainDescriptor::Lattice(q) => q.area(),
        }
    }

    /// Exact value of `sup d(x, boundary)` where it has a closed form.
    pub fn analytic_max_distance(&self) -> Option<f64> {
        match self {
            DomainDescriptor::Disc { r } => Some(*r),
            DomainDescriptor::Rectangle { a, b } => Some(0.5 * a.min(*b)),
            DomainDescriptor::IntervalUnion1d { radii } => {
                radii.iter().copied().reduce(f64::max)
            }
            DomainDescriptor::DiscUnion { discs } => {
                discs.iter().map(|d| d.r).reduce(f64::max)
            }
            // Points farthest from the removed set together with the outer
            // circle sit at hexagon vertices (centers variant) or hexagon
            // centers (vertices variant); both lie at distance eps.
            DomainDescriptor::HoneycombPerforated { eps, .. } => Some(*eps),
            DomainDescriptor::Lattice(_) => None,
        }
    }

    /// Open-set membership. The removed points of the perforated disc form a
    /// null set and are reported as inside; distance fields treat them as
    /// boundary. The 1-D kind has no planar membership and returns false.
    pub fn contains(&self, p: Point) -> bool {
        match self {
            DomainDescriptor::Disc { r } => p.norm() < *r,
            DomainDescriptor::Rectangle { a, b } => {
                p.x() > 0.0 && p.x() < *a && p.y() > 0.0 && p.y() < *b
            }
            DomainDescriptor::IntervalUnion1d { .. } => false,
            DomainDescriptor::DiscUnion { discs } => {
                discs.iter().any(|d| p.dist(d.center) < d.r)
            }
            DomainDescriptor::HoneycombPerforated { r, .. } => p.norm() < *r,
            DomainDescriptor::Lattice(q) => q.contains_point(p),
        }
    }

    /// Axis-aligned bounding box `(lower, upper)`; `None` for the 1-D kind.
    pub fn bounding_box(&self) -> Option<(Point, Point)> {
        match self {
            DomainDescriptor::Disc { r } | DomainDescriptor::HoneycombPerforated { r, .. } => {
                Some((Point::new(-r, -r), Point::new(*r, *r)))
            }
            DomainDescriptor::Rectangle { a, b } => {
                Some((Point::new(0.0, 0.0), Point::new(*a, *b)))
            }
            DomainDescriptor::IntervalUnion1d { .. } => None,
            DomainDescriptor::DiscUnion { discs } => {
                let (mut x0, mut y0) = (f64::INFINITY, f64::INFINITY);
                let (mut x1, mut y1) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
                for d in discs {
                    x0 = x0.min(d.center.x() - d.r);
                    y0 = y0.min(d.center.y() - d.r);
                    x1 = x1.max(d.center.x() + d.r);
                    y1 = y1.max(d.center.y() + d.r);
                }
                Some((Point::new(x0, y0), Point::new(x1, y1)))
            }
            DomainDescriptor::Lattice(q) => Some(q.bounds()),
        }
    }

    /// Cell-centered rasterization at spacing `h`: a cell is marked inside
    /// when its center lies in the open domain.
    pub fn rasterize(&self, h: f64) -> Result<GridMask> {
        require_positive(h, "grid spacing")?;
        let (lo, hi) = self.bounding_box().ok_or_else(|| {
            Error::InvalidParameters("a 1-D domain cannot be rasterized on a planar grid".into())
        })?;
        let nx = ((hi.x() - lo.x()) / h).ceil().max(1.0) as usize;
        let ny = ((hi.y() - lo.y()) / h).ceil().max(1.0) as usize;
        let mask = GridMask::from_predicate(lo, h, nx, ny, |p| self.contains(p))?;
        if mask.inside_count() == 0 {
            return Err(Error::EmptyDomain);
        }
        Ok(mask)
    }

    /// The inner lattice approximation: all `eps`-cells whose closure lies in
    /// the open domain, checked exactly per kind.
    pub fn approximate_lattice(&self, eps: f64) -> Result<LatticeDomain> {
        require_positive(eps, "lattice spacing")?;
        let cells: BTreeSet<(i64, i64)> = match self {
            DomainDescriptor::Disc { r } => {
                let single = Disc {
                    center: Point::new(0.0, 0.0),
                    r: *r,
                };
                cells_in_disc(&single, eps)
            }
            DomainDescriptor::Rectangle { a, b } => cells_in_rectangle(*a, *b, eps),
            DomainDescriptor::IntervalUnion1d { .. } => {
                return Err(Error::InvalidParameters(
                    "a 1-D domain has no planar lattice approximation".into(),
                ))
            }
            DomainDescriptor::DiscUnion { discs } => {
                let mut all = BTreeSet::new();
                for d in discs {
                    all.extend(cells_in_disc(d, eps));
                }
                all
            }
            DomainDescriptor::HoneycombPerforated {
                r,
                eps: side,
                variant,
            } => {
                let perforation = Perforation::new(*r, *side, *variant)?;
                let single = Disc {
                    center: Point::new(0.0, 0.0),
                    r: *r,
                };
                cells_in_disc(&single, eps)
                    .into_iter()
                    .filter(|&(i, j)| !perforation.any_site_in_closed_cell(i, j, eps))
                    .collect()
            }
            DomainDescriptor::Lattice(q) => {
                if (eps / q.eps() - 1.0).abs() > 1e-12 {
                    return Err(Error::InvalidParameters(format!(
                        "lattice domain has spacing {}, cannot re-approximate at {eps}",
                        q.eps()
                    )));
                }
                q.cells()
                    .filter(|&(i, j)| {
                        let mut interior = true;
                        for di in -1..=1i64 {
                            for dj in -1..=1i64 {
                                if !q.contains_cell(i + di, j + dj) {
                                    interior = false;
                                }
                            }
                        }
                        interior
                    })
                    .collect()
            }
        };
        let cells = repair_corner_touching(cells);
        if cells.is_empty() {
            return Err(Error::EmptyResult(eps));
        }
        LatticeDomain::new(eps, cells)
    }
}

/// Deletes cells until no two present cells meet only at a corner and no two
/// holes pinch the boundary at a corner. Clipping a domain against both its
/// outline and a perforation can leave such checkerboard blocks; of each
/// offending diagonal pair the cell farther from the origin goes.
fn repair_corner_touching(mut cells: BTreeSet<(i64, i64)>) -> BTreeSet<(i64, i64)> {
    loop {
        let mut drop = None;
        'scan: for &(i, j) in &cells {
            for (ai, aj) in [(i - 1, j - 1), (i - 1, j), (i, j - 1), (i, j)] {
                let a = cells.contains(&(ai, aj));
                let b = cells.contains(&(ai + 1, aj));
                let c = cells.contains(&(ai, aj + 1));
                let d = cells.contains(&(ai + 1, aj + 1));
                let pair = if a && d && !b && !c {
                    Some(((ai, aj), (ai + 1, aj + 1)))
                } else if b && c && !a && !d {
                    Some(((ai + 1, aj), (ai, aj + 1)))
                } else {
                    None
                };
                if let Some((p, q)) = pair {
                    drop = Some(farther_cell(p, q));
                    break 'scan;
                }
            }
        }
        match drop {
            Some(cell) => {
                cells.remove(&cell);
            }
            None => return cells,
        }
    }
}

/// The cell whose center lies farther from the origin, ties by index order.
fn farther_cell(p: (i64, i64), q: (i64, i64)) -> (i64, i64) {
    let norm2 = |(i, j): (i64, i64)| (2 * i - 1).pow(2) + (2 * j - 1).pow(2);
    match norm2(p).cmp(&norm2(q)) {
        std::cmp::Ordering::Greater => p,
        std::cmp::Ordering::Less => q,
        std::cmp::Ordering::Equal => p.max(q),
    }
}

/// Closed cell `(i, j)` spans `eps*[i-1, i] x [j-1, j]`; its corners.
fn cell_corners(i: i64, j: i64, eps: f64) -> [Point; 4] {
    let x0 = (i - 1) as f64 * eps;
    let x1 = i as f64 * eps;
    let y0 = (j - 1) as f64 * eps;
    let y1 = j as f64 * eps;
    [
        Point::new(x0, y0),
        Point::new(x1, y0),
        Point::new(x0, y1),
        Point::new(x1, y1),
    ]
}

fn cell_center(i: i64, j: i64, eps: f64) -> Point {
    Point::new((i as f64 - 0.5) * eps, (j as f64 - 0.5) * eps)
}

/// Cells whose closure lies strictly inside one disc. The disc is convex, so
/// strict containment of the four corners (the center is checked as well)
/// certifies the whole closed cell.
fn cells_in_disc(d: &Disc, eps: f64) -> BTreeSet<(i64, i64)> {
    let mut cells = BTreeSet::new();
    let ilo = ((d.center.x() - d.r) / eps).floor() as i64;
    let ihi = ((d.center.x() + d.r) / eps).ceil() as i64 + 1;
    let jlo = ((d.center.y() - d.r) / eps).floor() as i64;
    let jhi = ((d.center.y() + d.r) / eps).ceil() as i64 + 1;
    for i in ilo..=ihi {
        for j in jlo..=jhi {
            let corners_inside = cell_corners(i, j, eps)
                .iter()
                .all(|&c| c.dist(d.center) < d.r);
            if corners_inside && cell_center(i, j, eps).dist(d.center) < d.r {
                cells.insert((i, j));
            }
        }
    }
    cells
}

fn cells_in_rectangle(a: f64, b: f64, eps: f64) -> BTreeSet<(i64, i64)> {
    let inside = |p: Point| p.x() > 0.0 && p.x() < a && p.y() > 0.0 && p.y() < b;
    let mut cells = BTreeSet::new();
    let ihi = (a / eps).ceil() as i64 + 1;
    let jhi = (b / eps).ceil() as i64 + 1;
    for i in 0..=ihi {
        for j in 0..=jhi {
            if cell_corners(i, j, eps).iter().all(|&c| inside(c)) {
                cells.insert((i, j));
            }
        }
    }
    cells
}

/// The removed point set of the perforated disc: a triangular lattice of
/// hexagon centers with pitch `sqrt(3) * eps` (`Centers` variant) or the two
/// interleaved sublattices of hexagon vertices (`Vertices` variant), keeping
/// every lattice point strictly inside the disc.
#[derive(Debug, Clone, Copy)]
pub struct Perforation {
    r: f64,
    eps: f64,
    variant: HexRemoval,
}

impl Perforation {
    pub fn new(r: f64, eps: f64, variant: HexRemoval) -> Result<Self> {
        require_positive(r, "disc radius")?;
        require_positive(eps, "hexagon side")?;
        if eps >= r {
            return Err(Error::InvalidParameters(format!(
                "hexagon side {eps} must be smaller than the disc radius {r}"
            )));
        }
        Ok(Perforation { r, eps, variant })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn variant(&self) -> HexRemoval {
        self.variant
    }

    /// Pitch of the center lattice (distance between adjacent hexagon centers).
    pub fn pitch(&self) -> f64 {
        3f64.sqrt() * self.eps
    }

    fn base_site(&self, m: i64, n: i64) -> Point {
        let s = self.eps;
        Point::new(3f64.sqrt() * s * (m as f64 + n as f64 / 2.0), 1.5 * s * n as f64)
    }

    fn offsets(&self) -> Vec<Point> {
        let s = self.eps;
        match self.variant {
            HexRemoval::Centers => vec![Point::new(0.0, 0.0)],
            HexRemoval::Vertices => vec![
                Point::new(0.0, s),
                Point::new(3f64.sqrt() / 2.0 * s, 0.5 * s),
            ],
        }
    }

    fn keeps(&self, site: Point) -> bool {
        site.norm() < self.r
    }

    /// Lattice coordinates `(m, n)` of the base point closest to `p`.
    fn lattice_coords(&self, p: Point) -> (i64, i64) {
        let s = self.eps;
        let n = p.y() / (1.5 * s);
        let m = p.x() / (3f64.sqrt() * s) - n / 2.0;
        (m.round() as i64, n.round() as i64)
    }

    /// All removed sites.
    pub fn sites(&self) -> Vec<Point> {
        let mut out = Vec::new();
        let n_span = (self.r / (1.5 * self.eps)).ceil() as i64 + 2;
        let m_span = (self.r / (3f64.sqrt() * self.eps)).ceil() as i64 + 2;
        for n in -n_span..=n_span {
            for m in (-m_span - n_span)..=(m_span + n_span) {
                let base = self.base_site(m, n);
                for off in self.offsets() {
                    let site = Point::new(base.x() + off.x(), base.y() + off.y());
                    if self.keeps(site) {
                        out.push(site);
                    }
                }
            }
        }
        out
    }

    /// Distance from `p` to the nearest removed site; `None` when the removal
    /// set is empty. Searches outward ring by ring from the lattice cell of
    /// `p` and stops once farther rings cannot improve the current best.
    pub fn nearest_site_distance(&self, p: Point) -> Option<f64> {
        let (m0, n0) = self.lattice_coords(p);
        let offsets = self.offsets();
        let mut best = f64::INFINITY;
        // Any lattice point on ring k lies at least 0.866 * eps * k from the
        // base point of the ring center; subtract slack for the rounding
        // error and the sublattice offsets (both below 2 * eps).
        let ring_floor = |k: i64| 3f64.sqrt() / 2.0 * self.eps * (k as f64 - 3.0);
        let hard_cap = (2.0 * self.r / (3f64.sqrt() / 2.0 * self.eps)).ceil() as i64 + 5;
        for k in 0..=hard_cap {
            if best.is_finite() && ring_floor(k) > best {
                break;
            }
            for (m, n) in chebyshev_ring(m0, n0, k) {
                let base = self.base_site(m, n);
                for off in &offsets {
                    let site = Point::new(base.x() + off.x(), base.y() + off.y());
                    if self.keeps(site) {
                        best = best.min(p.dist(site));
                    }
                }
            }
        }
        best.is_finite().then_some(best)
    }

    /// True when a removed site lies in the closed `eps_cell`-cell `(i, j)`.
    pub fn any_site_in_closed_cell(&self, i: i64, j: i64, eps_cell: f64) -> bool {
        let x0 = (i - 1) as f64 * eps_cell;
        let x1 = i as f64 * eps_cell;
        let y0 = (j - 1) as f64 * eps_cell;
        let y1 = j as f64 * eps_cell;
        let center = Point::new(0.5 * (x0 + x1), 0.5 * (y0 + y1));
        let (m0, n0) = self.lattice_coords(center);
        let span = (eps_cell / self.eps).ceil() as i64 + 2;
        for m in (m0 - span)..=(m0 + span) {
            for n in (n0 - span)..=(n0 + span) {
                let base = self.base_site(m, n);
                for off in self.offsets() {
                    let site = Point::new(base.x() + off.x(), base.y() + off.y());
                    if self.keeps(site)
                        && site.x() >= x0
                        && site.x() <= x1
                        && site.y() >= y0
                        && site.y() <= y1
                    {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// Lattice index pairs at Chebyshev distance exactly `k` from `(m0, n0)`.
fn chebyshev_ring(m0: i64, n0: i64, k: i64) -> Vec<(i64, i64)> {
    if k == 0 {
        return vec![(m0, n0)];
    }
    let mut out = Vec::with_capacity((8 * k) as usize);
    for d in -k..=k {
        out.push((m0 + d, n0 - k));
        out.push((m0 + d, n0 + k));
    }
    for d in (-k + 1)..k {
        out.push((m0 - k, n0 + d));
        out.push((m0 + k, n0 + d));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn disc_rasterization_area() {
        let d = DomainDescriptor::disc(1.0).unwrap();
        let mask = d.rasterize(1.0 / 256.0).unwrap();
        let rel = (mask.masked_area() - PI).abs() / PI;
        assert!(rel < 0.01, "area {} vs pi, rel {}", mask.masked_area(), rel);
    }

    #[test]
    fn disc_lattice_cells_sit_inside() {
        let d = DomainDescriptor::disc(1.0).unwrap();
        let q = d.approximate_lattice(0.5).unwrap();
        for (i, j) in q.cells() {
            for c in cell_corners(i, j, 0.5) {
                assert!(c.norm() <= 1.0, "corner {:?} escapes the disc", c);
            }
        }
        assert!(q.cell_count() >= 4);
    }

    #[test]
    fn disc_lattice_area_increases_toward_disc_area() {
        let d = DomainDescriptor::disc(1.0).unwrap();
        let mut last = 0.0;
        for eps in [0.2, 0.1, 0.05] {
            let q = d.approximate_lattice(eps).unwrap();
            assert!(q.area() > last);
            assert!(q.area() < PI);
            last = q.area();
        }
        assert!(PI - last < 0.6, "area gap {} too large at eps 0.05", PI - last);
    }

    #[test]
    fn aligned_rectangle_drops_one_boundary_layer() {
        let d = DomainDescriptor::rectangle(1.0, 1.0).unwrap();
        let q = d.approximate_lattice(0.25).unwrap();
        assert_eq!(q.cell_count(), 4);
        let (lo, hi) = q.bounds();
        assert!((lo.x() - 0.25).abs() < 1e-12 && (hi.x() - 0.75).abs() < 1e-12);
        assert!((lo.y() - 0.25).abs() < 1e-12 && (hi.y() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn rectangle_too_coarse_is_rejected() {
        let d = DomainDescriptor::rectangle(1.0, 0.5).unwrap();
        // Two rows of height 0.25 both touch the horizontal boundary.
        match d.approximate_lattice(0.25) {
            Err(Error::EmptyResult(_)) => {}
            other => panic!("expected EmptyResult, got {:?}", other),
        }
    }

    #[test]
    fn disc_union_demo_shape() {
        let d = DomainDescriptor::disc_union_demo(3, 0.1).unwrap();
        let expected = PI * (1.0 + 0.5 + 1.0 / 3.0);
        assert!((d.area() - expected).abs() < 1e-12);
        assert_eq!(d.analytic_max_distance(), Some(1.0));
        let q = d.approximate_lattice(0.1).unwrap();
        // Every cell belongs to exactly one disc.
        if let DomainDescriptor::DiscUnion { discs } = &d {
            for (i, j) in q.cells() {
                let hits = discs
                    .iter()
                    .filter(|disc| {
                        cell_corners(i, j, 0.1)
                            .iter()
                            .all(|&c| c.dist(disc.center) < disc.r)
                    })
                    .count();
                assert_eq!(hits, 1, "cell ({i},{j})");
            }
        } else {
            panic!("expected a disc union");
        }
    }

    #[test]
    fn overlapping_discs_are_rejected() {
        let discs = vec![
            Disc {
                center: Point::new(0.0, 0.0),
                r: 1.0,
            },
            Disc {
                center: Point::new(1.5, 0.0),
                r: 1.0,
            },
        ];
        assert!(DomainDescriptor::disc_union(discs).is_err());
    }

    #[test]
    fn honeycomb_site_count_matches_lattice_density() {
        let p = Perforation::new(1.0, 0.1, HexRemoval::Centers).unwrap();
        let sites = p.sites();
        let per_site_area = 3f64.sqrt() / 2.0 * p.pitch() * p.pitch();
        let expected = PI / per_site_area;
        let rel = (sites.len() as f64 - expected).abs() / expected;
        assert!(rel < 0.15, "count {} vs {}, rel {}", sites.len(), expected, rel);
        for s in &sites {
            assert!(s.norm() < 1.0);
        }
    }

    #[test]
    fn vertices_variant_has_twice_the_density() {
        let c = Perforation::new(1.0, 0.02, HexRemoval::Centers).unwrap();
        let v = Perforation::new(1.0, 0.02, HexRemoval::Vertices).unwrap();
        let ratio = v.sites().len() as f64 / c.sites().len() as f64;
        assert!((ratio - 2.0).abs() < 0.1, "ratio {}", ratio);
    }

    #[test]
    fn nearest_site_distance_matches_brute_force() {
        let p = Perforation::new(1.0, 0.2, HexRemoval::Centers).unwrap();
        let sites = p.sites();
        let mut rng_points = Vec::new();
        for k in 0..40 {
            let a = k as f64 * 0.61;
            let r = 0.98 * (k as f64 / 40.0).sqrt();
            rng_points.push(Point::new(r * a.cos(), r * a.sin()));
        }
        for q in rng_points {
            let brute = sites
                .iter()
                .map(|s| q.dist(*s))
                .fold(f64::INFINITY, f64::min);
            let fast = p.nearest_site_distance(q).unwrap();
            assert!(
                (brute - fast).abs() < 1e-12,
                "at {:?}: brute {} fast {}",
                q,
                brute,
                fast
            );
        }
    }

    #[test]
    fn honeycomb_lattice_avoids_removed_sites() {
        let d = DomainDescriptor::honeycomb_perforated(1.0, 0.15, HexRemoval::Centers).unwrap();
        let q = d.approximate_lattice(0.05).unwrap();
        let p = Perforation::new(1.0, 0.15, HexRemoval::Centers).unwrap();
        for (i, j) in q.cells() {
            assert!(!p.any_site_in_closed_cell(i, j, 0.05));
            for c in cell_corners(i, j, 0.05) {
                assert!(c.norm() <= 1.0);
            }
        }
        // The approximation must actually lose the cells around each site.
        let plain = DomainDescriptor::disc(1.0)
            .unwrap()
            .approximate_lattice(0.05)
            .unwrap();
        assert!(q.cell_count() < plain.cell_count());
    }

    #[test]
    fn lattice_kind_erodes_one_ring() {
        let square: BTreeSet<(i64, i64)> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .collect();
        let q = LatticeDomain::new(0.5, square).unwrap();
        let d = DomainDescriptor::lattice(q);
        let inner = d.approximate_lattice(0.5).unwrap();
        assert_eq!(inner.cell_count(), 4);
        assert!(d.approximate_lattice(0.3).is_err());
    }

    #[test]
    fn json_round_trip_kind_names() {
        let d = DomainDescriptor::honeycomb_perforated(1.0, 0.1, HexRemoval::Centers).unwrap();
        let text = d.to_json().unwrap();
        assert!(text.contains("\"kind\""));
        assert!(text.contains("honeycomb_perforated"));
        assert!(text.contains("\"params\""));
        let back = DomainDescriptor::from_json(&text).unwrap();
        assert_eq!(d, back);

        let one_d = DomainDescriptor::interval_union(vec![1.0, 0.5]).unwrap();
        let text = one_d.to_json().unwrap();
        assert!(text.contains("interval_union_1d"));
        assert_eq!(DomainDescriptor::from_json(&text).unwrap(), one_d);
    }

    #[test]
    fn one_dimensional_kind_rejects_planar_queries() {
        let d = DomainDescriptor::interval_union(vec![1.0]).unwrap();
        assert!(d.rasterize(0.01).is_err());
        assert!(d.approximate_lattice(0.1).is_err());
        assert_eq!(d.analytic_max_distance(), Some(1.0));
        assert!((d.area() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn bad_parameters_are_rejected() {
        assert!(DomainDescriptor::disc(0.0).is_err());
        assert!(DomainDescriptor::rectangle(-1.0, 2.0).is_err());
        assert!(DomainDescriptor::interval_union(vec![]).is_err());
        assert!(DomainDescriptor::honeycomb_perforated(1.0, 2.0, HexRemoval::Centers).is_err());
        assert!(DomainDescriptor::disc(1.0).unwrap().rasterize(-0.5).is_err());
    }
}
