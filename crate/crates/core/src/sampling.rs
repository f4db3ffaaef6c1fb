//! Seeded random generators shared by the verification suite and the
//! property tests. Everything is driven by an explicit `ChaCha8Rng`, so a
//! fixed seed reproduces every decision.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{LatticeDomain, Point, Triangle};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform_point(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Point {
    Point::new(rng.gen_range(lo..hi), rng.gen_range(lo..hi))
}

/// A triangle with vertices uniform in the unit square, rejecting slivers so
/// tolerance bands stay far from the decision boundaries.
pub fn random_triangle(rng: &mut ChaCha8Rng) -> Triangle {
    loop {
        let a = uniform_point(rng, 0.0, 1.0);
        let b = uniform_point(rng, 0.0, 1.0);
        let c = uniform_point(rng, 0.0, 1.0);
        if let Ok(t) = Triangle::new(a, b, c) {
            if t.area() > 1e-4 {
                return t;
            }
        }
    }
}

pub fn random_acute_triangle(rng: &mut ChaCha8Rng) -> Triangle {
    loop {
        let t = random_triangle(rng);
        if !t.is_obtuse() && t.contains_circumcenter() {
            return t;
        }
    }
}

pub fn random_obtuse_triangle(rng: &mut ChaCha8Rng) -> Triangle {
    loop {
        let t = random_triangle(rng);
        if t.is_obtuse() {
            return t;
        }
    }
}

/// An equilateral triangle inscribed in the unit circle with every
/// coordinate jittered by at most `jitter`.
pub fn near_equilateral_triangle(rng: &mut ChaCha8Rng, jitter: f64) -> Triangle {
    let v: Vec<Point> = (0..3)
        .map(|k| {
            let th = std::f64::consts::FRAC_PI_2 + k as f64 * 2.0 * std::f64::consts::FRAC_PI_3;
            Point::new(
                th.cos() + rng.gen_range(-jitter..jitter),
                th.sin() + rng.gen_range(-jitter..jitter),
            )
        })
        .collect();
    Triangle::new(v[0], v[1], v[2]).expect("jittered equilateral cannot degenerate")
}

/// Grows a random polyomino of roughly `target` cells by attaching cells to
/// random faces, skipping any attachment that a `LatticeDomain` would
/// reject (corner contacts between cells or holes).
pub fn random_polyomino(rng: &mut ChaCha8Rng, eps: f64, target: usize) -> LatticeDomain {
    let mut cells = vec![(0i64, 0i64)];
    let mut attempts = 0;
    while cells.len() < target && attempts < 200 * target {
        attempts += 1;
        let &(i, j) = &cells[rng.gen_range(0..cells.len())];
        let (di, dj) = [(1, 0), (-1, 0), (0, 1), (0, -1)][rng.gen_range(0..4)];
        let cand = (i + di, j + dj);
        if cells.contains(&cand) {
            continue;
        }
        cells.push(cand);
        if LatticeDomain::new(eps, cells.iter().copied()).is_err() {
            cells.pop();
        }
    }
    LatticeDomain::new(eps, cells).expect("grown polyomino is valid by construction")
}

/// A random subset of the integer lattice `[0, extent]²` with at least
/// three non-collinear members.
pub fn random_lattice_subset(rng: &mut ChaCha8Rng, extent: i64, count: usize) -> Vec<(i64, i64)> {
    loop {
        let mut set = std::collections::BTreeSet::new();
        while set.len() < count {
            set.insert((rng.gen_range(0..=extent), rng.gen_range(0..=extent)));
        }
        let pts: Vec<(i64, i64)> = set.into_iter().collect();
        let (a, b) = (pts[0], pts[1]);
        let non_collinear = pts[2..]
            .iter()
            .any(|&c| (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0) != 0);
        if non_collinear {
            return pts;
        }
    }
}

/// Uniform sample inside a triangle (square-root warp of the unit square).
pub fn point_in_triangle(rng: &mut ChaCha8Rng, v: [Point; 3]) -> Point {
    let r1: f64 = rng.gen_range(0.0..1.0);
    let r2: f64 = rng.gen_range(0.0..1.0);
    let s = r1.sqrt();
    let (w0, w1, w2) = (1.0 - s, s * (1.0 - r2), s * r2);
    Point::new(
        w0 * v[0].x() + w1 * v[1].x() + w2 * v[2].x(),
        w0 * v[0].y() + w1 * v[1].y() + w2 * v[2].y(),
    )
}
