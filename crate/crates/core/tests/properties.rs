//! Randomized structural properties of the geometry, energy, distance and
//! torsion layers.

use proptest::prelude::*;

use torsimax_core::distance::{phi_d_infinity, point_segment_distance};
use torsimax_core::energy::{self, equilateral_energy};
use torsimax_core::geometry::{convex_hull_area, delaunay_triangulate, Point, Triangle};
use torsimax_core::sampling;
use torsimax_core::torsion::{jensen_gap, phi_p_1d};

fn triangle_strategy() -> impl Strategy<Value = Triangle> {
    let coord = -3.0f64..3.0;
    [
        coord.clone(),
        coord.clone(),
        coord.clone(),
        coord.clone(),
        coord.clone(),
        coord,
    ]
    .prop_filter_map("nondegenerate triangle", |[ax, ay, bx, by, cx, cy]| {
        let t = Triangle::new(
            Point::new(ax, ay),
            Point::new(bx, by),
            Point::new(cx, cy),
        )
        .ok()?;
        (t.area() > 0.05 * t.length_scale().powi(2)).then_some(t)
    })
}

fn transform(t: &Triangle, angle: f64, scale: f64, shift: (f64, f64)) -> Triangle {
    let (s, c) = angle.sin_cos();
    let map = |p: Point| {
        Point::new(
            scale * (c * p.x() - s * p.y()) + shift.0,
            scale * (s * p.x() + c * p.y()) + shift.1,
        )
    };
    let v = t.vertices();
    Triangle::new(map(v[0]), map(v[1]), map(v[2])).expect("similarity keeps triangles")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn energy_is_similarity_invariant(
        t in triangle_strategy(),
        angle in 0.0f64..std::f64::consts::TAU,
        scale in 0.2f64..5.0,
        dx in -4.0f64..4.0,
        dy in -4.0f64..4.0,
    ) {
        let mapped = transform(&t, angle, scale, (dx, dy));
        let a = energy::energy(&t).unwrap();
        let b = energy::energy(&mapped).unwrap();
        let tol = if a.method == energy::EnergyMethod::ClosedForm
            && b.method == energy::EnergyMethod::ClosedForm
        {
            1e-12
        } else {
            1e-6
        };
        prop_assert!(
            (a.energy - b.energy).abs() <= tol * a.energy.abs().max(1e-3),
            "{} vs {} under angle {angle}, scale {scale}",
            a.energy,
            b.energy
        );
    }

    #[test]
    fn energy_never_beats_the_equilateral(t in triangle_strategy()) {
        let report = energy::energy(&t).unwrap();
        prop_assert!(report.energy <= equilateral_energy() + 1e-9);
        prop_assert!(report.energy > 0.0);
    }

    #[test]
    fn delaunay_is_empty_circle_and_covers_the_hull(
        raw in prop::collection::vec((-40i32..40, -40i32..40), 6..40),
    ) {
        let mut cells: Vec<(i32, i32)> = raw;
        cells.sort_unstable();
        cells.dedup();
        prop_assume!(cells.len() >= 4);
        let sites: Vec<Point> = cells
            .iter()
            .map(|&(i, j)| Point::new(i as f64 / 4.0, j as f64 / 4.0))
            .collect();
        let hull = convex_hull_area(&sites);
        prop_assume!(hull > 1e-9);
        let mesh = delaunay_triangulate(&sites).unwrap();
        prop_assert_eq!(mesh.empty_circle_violations(), 0);
        prop_assert!((mesh.triangle_area_sum() - hull).abs() <= 1e-9 * hull.max(1.0));
    }

    #[test]
    fn segment_distance_is_a_metric_to_the_segment(
        px in -5.0f64..5.0, py in -5.0f64..5.0,
        ax in -5.0f64..5.0, ay in -5.0f64..5.0,
        bx in -5.0f64..5.0, by in -5.0f64..5.0,
        lambda in 0.0f64..1.0,
    ) {
        let p = Point::new(px, py);
        let a = Point::new(ax, ay);
        let b = Point::new(bx, by);
        let d = point_segment_distance(p, a, b);
        prop_assert!((d - point_segment_distance(p, b, a)).abs() <= 1e-12);
        prop_assert!(d <= p.dist(a) + 1e-12);
        prop_assert!(d <= p.dist(b) + 1e-12);
        let on_segment = Point::new(
            a.x() + lambda * (b.x() - a.x()),
            a.y() + lambda * (b.y() - a.y()),
        );
        prop_assert!(d <= p.dist(on_segment) + 1e-12);
        prop_assert!(point_segment_distance(on_segment, a, b) <= 1e-9);
    }

    #[test]
    fn jensen_never_reverses(
        values in prop::collection::vec(0.0f64..50.0, 1..25),
        p in 2.0f64..6.0,
    ) {
        let (lhs, rhs) = jensen_gap(&values, p).unwrap();
        prop_assert!(lhs >= rhs - 1e-9 * lhs.abs().max(1.0));
    }

    #[test]
    fn one_dimensional_efficiency_stays_in_range(
        radii in prop::collection::vec(0.05f64..4.0, 1..8),
        p in 1.1f64..8.0,
    ) {
        let phi = phi_p_1d(&radii, p).unwrap();
        prop_assert!(phi > 0.0 && phi <= 1.0);
        let pp = p / (p - 1.0);
        let single = pp / (pp + 1.0);
        prop_assert!(phi <= single + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn polyomino_efficiency_respects_the_bound(seed in 0u64..1000, cells in 4usize..24) {
        let mut rng = sampling::rng(seed);
        let q = sampling::random_polyomino(&mut rng, 1.0, cells);
        let report = phi_d_infinity(&q).unwrap();
        prop_assert!(report.ratio <= equilateral_energy() + 1e-9);
        prop_assert!(report.ratio > 0.0);
    }
}
