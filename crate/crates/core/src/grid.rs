//! Cell-centered rectangular grids: a boolean inside-domain mask plus scalar
//! fields living on it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;

/// A rectangular grid of cells of side `spacing` anchored at `origin`; the
/// sample point of cell (i, j) is its center. `inside` flags the cells whose
/// centers lie in the open domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMask {
    origin: Point,
    spacing: f64,
    nx: usize,
    ny: usize,
    inside: Vec<bool>,
}

impl GridMask {
    pub fn new(origin: Point, spacing: f64, nx: usize, ny: usize, inside: Vec<bool>) -> Result<Self> {
        if !(spacing.is_finite() && spacing > 0.0) || nx == 0 || ny == 0 {
            return Err(Error::InvalidParameters(format!(
                "grid needs positive spacing and extents, got h={spacing}, {nx}x{ny}"
            )));
        }
        if inside.len() != nx * ny {
            return Err(Error::InvalidParameters(format!(
                "mask length {} does not match {nx}x{ny}",
                inside.len()
            )));
        }
        Ok(GridMask {
            origin,
            spacing,
            nx,
            ny,
            inside,
        })
    }

    /// Builds the mask by sampling a membership predicate at cell centers.
    pub fn from_predicate(
        origin: Point,
        spacing: f64,
        nx: usize,
        ny: usize,
        mut contains: impl FnMut(Point) -> bool,
    ) -> Result<Self> {
        let mut inside = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let p = Point::new(
                    origin.x() + (i as f64 + 0.5) * spacing,
                    origin.y() + (j as f64 + 0.5) * spacing,
                );
                inside.push(contains(p));
            }
        }
        GridMask::new(origin, spacing, nx, ny, inside)
    }

    pub fn origin(&self) -> Point {
        self.origin
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        !self.inside.iter().any(|&b| b)
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.nx && j < self.ny);
        j * self.nx + i
    }

    pub fn is_inside(&self, i: usize, j: usize) -> bool {
        self.inside[self.index(i, j)]
    }

    pub fn mask(&self) -> &[bool] {
        &self.inside
    }

    pub fn center(&self, i: usize, j: usize) -> Point {
        Point::new(
            self.origin.x() + (i as f64 + 0.5) * self.spacing,
            self.origin.y() + (j as f64 + 0.5) * self.spacing,
        )
    }

    pub fn inside_count(&self) -> usize {
        self.inside.iter().filter(|&&b| b).count()
    }

    /// Area covered by the masked cells.
    pub fn masked_area(&self) -> f64 {
        self.inside_count() as f64 * self.spacing * self.spacing
    }

    /// Iterates over `(i, j, center)` of masked cells.
    pub fn inside_cells(&self) -> impl Iterator<Item = (usize, usize, Point)> + '_ {
        (0..self.ny).flat_map(move |j| {
            (0..self.nx).filter_map(move |i| {
                if self.is_inside(i, j) {
                    Some((i, j, self.center(i, j)))
                } else {
                    None
                }
            })
        })
    }
}

/// A scalar field sampled at the cell centers of a [`GridMask`]; values off
/// the mask are zero by convention.
///
/// Serializes as `{"origin", "spacing", "values", "mask"}` with row-major
/// 2-D arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ScalarFieldJson", into = "ScalarFieldJson")]
pub struct ScalarField {
    grid: GridMask,
    values: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct ScalarFieldJson {
    origin: Point,
    spacing: f64,
    values: Vec<Vec<f64>>,
    mask: Vec<Vec<bool>>,
}

impl From<ScalarField> for ScalarFieldJson {
    fn from(f: ScalarField) -> Self {
        let (nx, ny) = (f.grid.nx(), f.grid.ny());
        let rows = |j: usize| f.values[j * nx..(j + 1) * nx].to_vec();
        let mask_rows = |j: usize| f.grid.mask()[j * nx..(j + 1) * nx].to_vec();
        ScalarFieldJson {
            origin: f.grid.origin(),
            spacing: f.grid.spacing(),
            values: (0..ny).map(rows).collect(),
            mask: (0..ny).map(mask_rows).collect(),
        }
    }
}

impl TryFrom<ScalarFieldJson> for ScalarField {
    type Error = Error;

    fn try_from(j: ScalarFieldJson) -> Result<Self> {
        let ny = j.values.len();
        let nx = j.values.first().map_or(0, Vec::len);
        let rectangular = j.values.iter().all(|r| r.len() == nx)
            && j.mask.len() == ny
            && j.mask.iter().all(|r| r.len() == nx);
        if !rectangular {
            return Err(Error::InvalidParameters(
                "field rows must form matching rectangles".to_string(),
            ));
        }
        let grid = GridMask::new(j.origin, j.spacing, nx, ny, j.mask.concat())?;
        ScalarField::new(grid, j.values.concat())
    }
}

impl ScalarField {
    pub fn new(grid: GridMask, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParameters(format!(
                "field length {} does not match grid {}x{}",
                values.len(),
                grid.nx(),
                grid.ny()
            )));
        }
        Ok(ScalarField { grid, values })
    }

    /// Evaluates `f` at every masked center (row-parallel), zero elsewhere.
    pub fn sample(grid: GridMask, f: impl Fn(Point) -> f64 + Sync) -> Self {
        use rayon::prelude::*;
        let nx = grid.nx();
        let mut values = vec![0.0; grid.len()];
        values
            .par_chunks_mut(nx)
            .enumerate()
            .for_each(|(j, row)| {
                for (i, slot) in row.iter_mut().enumerate() {
                    if grid.is_inside(i, j) {
                        *slot = f(grid.center(i, j));
                    }
                }
            });
        ScalarField { grid, values }
    }

    pub fn grid(&self) -> &GridMask {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    /// Mean over the masked cells (midpoint rule).
    pub fn mean(&self) -> Result<f64> {
        let mut sum = 0.0;
        let mut count = 0usize;
        for (k, &inside) in self.grid.mask().iter().enumerate() {
            if inside {
                sum += self.values[k];
                count += 1;
            }
        }
        if count == 0 {
            return Err(Error::EmptyDomain);
        }
        Ok(sum / count as f64)
    }

    /// Maximum over the masked cells.
    pub fn max(&self) -> Result<f64> {
        self.grid
            .mask()
            .iter()
            .zip(&self.values)
            .filter(|(&inside, _)| inside)
            .map(|(_, &v)| v)
            .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.max(v))))
            .ok_or(Error::EmptyDomain)
    }

    /// Mean of |v|^p over the masked cells.
    pub fn power_mean(&self, p: f64) -> Result<f64> {
        let mut sum = 0.0;
        let mut count = 0usize;
        for (k, &inside) in self.grid.mask().iter().enumerate() {
            if inside {
                sum += self.values[k].abs().powf(p);
                count += 1;
            }
        }
        if count == 0 {
            return Err(Error::EmptyDomain);
        }
        Ok(sum / count as f64)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("scalar field serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_grid() -> GridMask {
        GridMask::from_predicate(Point::new(0.0, 0.0), 0.5, 4, 2, |p| p.x() < 1.0).unwrap()
    }

    #[test]
    fn centers_and_mask() {
        let g = small_grid();
        assert_eq!(g.center(0, 0), Point::new(0.25, 0.25));
        assert_eq!(g.center(3, 1), Point::new(1.75, 0.75));
        assert!(g.is_inside(0, 0) && g.is_inside(1, 1));
        assert!(!g.is_inside(2, 0) && !g.is_inside(3, 1));
        assert_eq!(g.inside_count(), 4);
        assert!((g.masked_area() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn field_statistics() {
        let g = small_grid();
        let f = ScalarField::sample(g, |p| p.x() + p.y());
        assert!((f.mean().unwrap() - 1.0).abs() < 1e-15);
        assert!((f.max().unwrap() - 1.5).abs() < 1e-15);
        assert!(f.power_mean(2.0).unwrap() >= f.mean().unwrap().powi(2));
        assert_eq!(f.value(2, 0), 0.0);
    }

    #[test]
    fn rejects_mismatched_lengths() {
        let g = small_grid();
        assert!(ScalarField::new(g, vec![0.0; 3]).is_err());
        assert!(GridMask::new(Point::new(0.0, 0.0), 0.0, 2, 2, vec![true; 4]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = ScalarField::sample(small_grid(), |p| p.x());
        let text = f.to_json();
        for key in ["\"origin\"", "\"spacing\"", "\"values\"", "\"mask\""] {
            assert!(text.contains(key), "missing {key} in {text}");
        }
        let back = ScalarField::from_json(&text).unwrap();
        assert_eq!(f, back);
    }
}
