//! The verification suite: fourteen numbered criteria covering the triangle
//! energy, the Delaunay evaluation of the discrete efficiency, honeycomb
//! convergence and the torsion solver. Each criterion runs standalone and
//! reports a pass/fail verdict with the measured values and the tolerance it
//! was held to.

use rand::Rng;

use crate::distance::{
    self, hexagon_mean_abs_closed, hexagon_mean_abs_quadrature, honeycomb_phi_infinity,
    phi_d_infinity_grid, phi_infinity,
};
use crate::domains::{DomainDescriptor, HexRemoval};
use crate::energy::{
    self, equilateral_energy, golden_section_max, profile_f, profile_l_derivative,
    vertex_distance_integral_closed, vertex_distance_integral_quadrature,
};
use crate::error::Result;
use crate::geometry::predicates::orient2d;
use crate::geometry::{
    classify_triangles, delaunay_triangulate, discrete_boundary, mesh_site_indices, LatticeDomain,
    Point, RegionPosition,
};
use crate::grid::GridMask;
use crate::sampling;
use crate::text::sig12;
use crate::torsion::{
    discrete_energy, discrete_energy_gradient, f_p, jensen_gap, perforated_sweep, phi_p,
    phi_p_1d, phi_p_1d_grid, psi_p, solve_torsion, torsion_ball_analytic, torsion_identity_gap,
    SolverConfig,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Downscale grids and sample counts; PDE tolerances widen to 5%.
    pub fast: bool,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            fast: false,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub name: &'static str,
    pub passed: bool,
    pub details: String,
}

impl CriterionResult {
    fn new(name: &'static str, passed: bool, details: String) -> Self {
        CriterionResult {
            name,
            passed,
            details,
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} {}: {}",
            if self.passed { "pass" } else { "FAIL" },
            self.name,
            self.details
        )
    }
}

/// The adopted value of the honeycomb constant, printed by `verify`.
pub fn constant_note() -> String {
    format!(
        "note: the honeycomb constant is evaluated symbolically as 1/3 + ln(3)/4 = {}; \
         the truncated decimal 0.6079441542 that appears in some statements of the bound \
         expands the same expression inaccurately, so the symbolic value governs every \
         tolerance here.",
        sig12(equilateral_energy())
    )
}

/// Runs every criterion in order.
pub fn run_all(config: &SuiteConfig) -> Vec<CriterionResult> {
    vec![
        criterion_01(config),
        criterion_02(config),
        criterion_03(config),
        criterion_04(config),
        criterion_05(config),
        criterion_06(config),
        criterion_07(config),
        criterion_08(config),
        criterion_09(config),
        criterion_10(config),
        criterion_11(config),
        criterion_12(config),
        criterion_13(config),
        criterion_14(config),
    ]
}

fn fail(name: &'static str, err: impl std::fmt::Display) -> CriterionResult {
    CriterionResult::new(name, false, format!("error: {err}"))
}

/// Mean |x| over the regular hexagon of circumradius 1 equals 1/3 + ln(3)/4,
/// to 1e-12 by the six-triangle closed form and 1e-6 by quadrature.
pub fn criterion_01(_config: &SuiteConfig) -> CriterionResult {
    const NAME: &str = "01 honeycomb constant";
    let target = equilateral_energy();
    let closed = hexagon_mean_abs_closed();
    let quad = match hexagon_mean_abs_quadrature(1e-8) {
        Ok(q) => q,
        Err(e) => return fail(NAME, e),
    };
    let closed_err = (closed - target).abs();
    let quad_err = (quad - target).abs();
    CriterionResult::new(
        NAME,
        closed_err <= 1e-12 && quad_err <= 1e-6,
        format!(
            "closed={} (|err|={} <= 1e-12), quadrature={} (|err|={} <= 1e-6), target={}",
            sig12(closed),
            sig12(closed_err),
            sig12(quad),
            sig12(quad_err),
            sig12(target)
        ),
    )
}

/// Energy of 10^4 random triangles never exceeds the equilateral value; a
/// near-equilateral batch gets within 1e-3 of it.
pub fn criterion_02(config: &SuiteConfig) -> CriterionResult {
    const NAME: &str = "02 equilateral maximality";
    let samples = if config.fast { 2_000 } else { 10_000 };
    let bound = equilateral_energy() + 1e-9;
    let mut rng = sampling::rng(config.seed ^ 0x02);
    let mut max_energy = f64::NEG_INFINITY;
    for _ in 0..samples {
        let t = sampling::random_triangle(&mut rng);
        match energy::energy(&t) {
            Ok(report) => max_energy = max_energy.max(report.energy),
            Err(e) => return fail(NAME, e),
        }
    }
    let mut near_max = f64::NEG_INFINITY;
    for _ in 0..200 {
        let t = sampling::near_equilateral_triangle(&mut rng, 1e-2);
        match energy::energy(&t) {
            Ok(report) => near_max = near_max.max(report.energy),
            Err(e) => return fail(NAME, e),
        }
    }
    let near_floor = 0.6079 - 1e-3;
    CriterionResult::new(
        NAME,
        max_energy <= bound && near_max >= near_floor,
        format!(
            "max over {} random={} <= {}, near-equilateral max={} >= {}",
            samples,
            sig12(max_energy),
            sig12(bound),
            sig12(near_max),
            sig12(near_floor)
        ),
    )
}

/// Closed form and quadrature agree to relative 1e-6 on 100 acute triangles.
pub fn criterion_03(config: &SuiteConfig) -> CriterionResult {
    const NAME: &str = "03 closed form vs quadrature";
    let samples = if config.fast { 30 } else { 100 };
    let mut rng = sampling::rng(config.seed ^ 0x03);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let t = sampling::random_acute_triangle(&mut rng);
        let pair = vertex_distance_integral_closed(&t).and_then(|closed| {
            // The crease of the integrand defeats the error estimator on a
            // small fraction of cells, so the requested tolerance carries a
            // wide safety factor against the 1e-6 gate.
            vertex_distance_integral_quadrature(&t, 1e-9).map(|quad| (closed, quad))
        });
        match pair {
            Ok((closed, quad)) => worst = worst.max((closed - quad).abs() / closed),
            Err(e) => return fail(NAME, e),
        }
    }
    CriterionResult::new(
        NAME,
        worst < 1e-6,
        format!(
            "worst relative gap over {samples} acute triangles = {} < 1e-6",
            sig12(worst)
        ),
    )
}

/// Discrete efficiency of random polyominoes stays below the equilateral
/// energy, and the Delaunay evaluation agrees with grid quadrature.
pub fn criterion_04(config: &SuiteConfig) -> CriterionResult {
    const NAME: &str = "04 discrete efficiency bound";
    let samples = if config.fast { 12 } else { 50 };
    let bound = equilateral_energy() + 1e-9;
    let h = 0.125;
    let rel_tol = 3.0 * h;
    let mut rng = sampling::rng(config.seed ^ 0x04);
    let mut max_ratio = f64::NEG_INFINITY;
    let mut worst_rel = 0.0f64;
    for k in 0..samples {
        let cells = rng.gen_range(6..=40);
        let q = sampling::random_polyomino(&mut rng, 1.0, cells);
        let outcome = distance::phi_d_infinity(&q)
            .and_then(|exact| phi_d_infinity_grid(&q, h).map(|grid| (exact, grid)));
        match outcome {
            Ok((exact, grid)) => {
                max_ratio = max_ratio.max(exact.ratio);
                worst_rel = worst_rel.max((exact.ratio - grid.ratio).abs() / exact.ratio);
            }
            Err(e) => return fail(NAME, format!("polyomino {k}: {e}")),
        }
    }
    CriterionResult::new(
        NAME,
        max_ratio <= bound && worst_rel <= rel_tol,
        format!(
            "max ratio over {} polyominoes = {} <= {}, worst exact/grid gap = {} <= {}",
            samples,
            sig12(max_ratio),
            sig12(bound),
            sig12(worst_rel),
            sig12(rel_tol)
        ),
    )
}

fn proper_crossing(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = orient2d(c, d, a);
    let d2 = orient2d(c, d, b);
    let d3 = orient2d(a, b, c);
    let d4 = orient2d(a, b, d);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

fn mesh_edges(triangles: &[[usize; 3]]) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = triangles
        .iter()
        .flat_map(|t| [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])])
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    edges
}

/// On random lattice point sets and polyomino boundaries: unit-distance
/// pairs are always Delaunay edges, no two Delaunay edges cross, and no
/// interior triangle's circumcenter escapes the domain.
pub fn criterion_05(config: &SuiteConfig) -> CriterionResult {
    const NAME: &str = "05 delaunay lemmas";
    let per_kind = if config.fast { 12 } else { 50 };
    let mut rng = sampling::rng(config.seed ^ 0x05);
    let mut runs = 0usize;
    let mut unit_edge_misses = 0usize;
    let mut crossings = 0usize;
    let mut escaped_circumcenters = 0usize;

    let mut check_sites = |sites: &[Point],
                           domain: Option<&LatticeDomain>,
                           unit: f64|
     -> Result<()> {
        let mesh = delaunay_triangulate(sites)?;
        for a in 0..sites.len() {
            for b in a + 1..sites.len() {
                if (sites[a].dist(sites[b]) - unit).abs() <= 1e-9 && !mesh.has_edge(a, b) {
                    unit_edge_misses += 1;
                }
            }
        }
        let edges = mesh_edges(mesh.triangles());
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                if proper_crossing(sites[a], sites[b], sites[c], sites[d]) {
                    crossings += 1;
                }
            }
        }
        if let Some(q) = domain {
            let idx = mesh_site_indices(&mesh, q)?;
            let (interior, _) = classify_triangles(&mesh, q)?;
            for &t in &interior {
                let tri = mesh.triangles()[t];
                let cells = [idx[tri[0]], idx[tri[1]], idx[tri[2]]];
                if crate::geometry::circumcenter_position(q, cells) == RegionPosition::Exterior {
                    escaped_circumcenters += 1;
                }
            }
        }
        Ok(())
    };

    for k in 0..per_kind {
        let count = rng.gen_range(8..=24);
        let cells = sampling::random_lattice_subset(&mut rng, 6, count);
        let sites: Vec<Point> = cells
            .iter()
            .map(|&(i, j)| Point::new(i as f64, j as f64))
            .collect();
        if let Err(e) = check_sites(&sites, None, 1.0) {
            return fail(NAME, format!("point set {k}: {e}"));
        }
        runs += 1;
    }
    for k in 0..per_kind {
        let cells = rng.gen_range(5..=30);
        let q = sampling::random_polyomino(&mut rng, 1.0, cells);
        let sites = discrete_boundary(&q);
        if let Err(e) = check_sites(&sites, Some(&q), q.eps()) {
            return fail(NAME, format!("polyomino {k}: {e}"));
        }
        runs += 1;
    }
    CriterionResult::new(
        NAME,
        unit_edge_misses == 0 && crossings == 0 && escaped_circumcenters == 0,
        format!(
            "{runs} runs: {unit_edge_misses} missing unit edges, {crossings} edge crossings, \
             {escaped_circumcenters} circumcenters outside the domain (all must be 0)"
        ),
    )
}

/// The honeycomb-perforated unit disc approaches the constant as the lattice
/// spacing shrinks, monotonically over eps in {0.2, 0.1, 0.05}.
pub fn criterion_06(config: &SuiteConfig) -> CriterionResult {
    const NAME: &str = "06 honeycomb convergence";
    let target = equilateral_energy();
    let divisions = if config.fast { 8.0 } else { 16.0 };
    let spacings = [0.2, 0.1, 0.05];
    let mut ratios = Vec::new();
    for &eps in &spacings {
        match honeycomb_phi_infinity(1.0, eps, HexRemoval::Centers, eps / divisions) {
            Ok(report) => ratios.push(report.ratio),
            Err(e) => return fail(NAME, e),
        }
    }
    let increasing = ratios.windows(2).all(|w| w[1] > w[0]);
    let final_gap = (ratios[2] - target).abs();
    CriterionResult::new(
        NAME,
        increasing && final_gap <= 0.02,
        format!(
            "ratios at eps 0.2/0.1/0.05 = {}, {}, {} (strictly increasing: {}), \
             |ratio(0.05) - {}| = {} <= 0.02",
            sig12(ratios[0]),
            sig12(ratios[1]),
            sig12(ratios[2]),
            increasing,
            sig12(target),
            sig12(final_gap)
        ),
    )
}

fn disc_mask(h: f64) -> Result<GridMask> {
    DomainDescriptor::disc(1.0)?.rasterize(h)
}

/// Solver and distance efficiencies of round and thin domains match their
/// closed forms.
pub fn criterion_07(config: &SuiteConfig) -> CriterionResult {
    const NAME: &str = "07 ball efficiency";
    let h = if config.fast { 1.0 / 128.0 } else { 1.0 / 256.0 };
    let pde_rel = if config.fast { 0.05 } else { 0.02 };
    let run = || -> Result<(f64, f64, f64)> {
        let mask = disc_mask(h)?;
        let field = solve_torsion(&mask, &SolverConfig::new(2.0, h)?)?;
        let phi2 = phi_p(&field)?;
        let phi_inf = phi_infinity(&DomainDescriptor::disc(1.0)?, h)?.ratio;
        let thin = phi_infinity(&DomainDescriptor::rectangle(0.01, 1.0)?, 0.01 / 8.0)?.ratio;
        Ok((phi2, phi_inf, thin))
    };
    let (phi2, phi_inf, thin) = match run() {
        Ok(v) => v,
        Err(e) => return fail(NAME, e),
    };
    let phi2_err = (phi2 - 0.5).abs() / 0.5;
    let inf_err = (phi_inf - 1.0 / 3.0).abs();
    let thin_err = (thin - 0.5).abs() / 0.5;
    CriterionResult::new(
        NAME,
        phi2_err <= pde_rel && inf_err <= 2.0 * h && thin_err <= 0.02,
        format!(
            "phi_2(disc)={} (rel err {} <= {}), phi_inf(disc)={} (|err| {} <= 2h={}), \
             thin rectangle phi_inf={} (rel err {} <= 0.02)",
            sig12(phi2),
            sig12(phi2_err),
            sig12(pde_rel),
            sig12(phi_inf),
            sig12(inf_err),
            sig12(2.0 * h),
            sig12(thin),
            sig12(thin_err)
        ),
    )
}

/// The solved field matches the explicit ball torsion function pointwise,
/// and the energy identity holds at the minimizer.
pub fn criterion_08(config: &SuiteConfig) -> CriterionResult {
    const NAME: &str = "08 torsion oracle";
    let h = if config.fast { 1.0 / 128.0 } else { 1.0 / 256.0 };
    let sup_rel = if config.fast { 0.05 } else { 0.03 };
    let mut details = Vec::new();
    let mut passed = true;
    for &p in &[2.0, 6.0] {
        let run = || -> Result<(f64, f64, f64)> {
            let mask = disc_mask(h)?;
            let config = SolverConfig::new(p, h)?;
            let field = solve_torsion(&mask, &config)?;
            let scale = torsion_ball_analytic(1.0, 2, p, 0.0)?;
            let mut sup = 0.0f64;
            for (i, j, x) in mask.inside_cells() {
                let exact = torsion_ball_analytic(1.0, 2, p, x.norm())?;
                sup = sup.max((field.field().value(i, j) - exact).abs());
            }
            let gap = torsion_identity_gap(&field)?;
            Ok((sup / scale, gap, config.tolerance))
        };
        match run() {
            Ok((sup, gap, tolerance)) => {
                let ok = sup <= sup_rel && gap <= 10.0 * tolerance;
                passed &= ok;
                details.push(format!(
                    "p={p}: sup rel err {} <= {}, identity gap {} <= {}",
                    sig12(sup),
                    sig12(sup_rel),
                    sig12(gap),
                    sig12(10.0 * tolerance)
                ));
            }
            Err(e) => return fail(NAME, format!("p={p}: {e}")),
        }
    }
    CriterionResult::new(NAME, passed, details.join("; "))
}

/// The one-dimensional closed form, exactly and against a grid solve.
pub fn criterion_09(_config: &SuiteConfig) -> CriterionResult {
    const NAME: &str = "09 one-dimensional formula";
    let mut worst_exact = 0.0f64;
    for &p in &[1.5, 2.0, 3.0, 6.0] {
        let pp = p / (p - 1.0);
        match phi_p_1d(&[0.8, 0.8, 0.8], p) {
            Ok(v) => worst_exact = worst_exact.max((v - pp / (pp + 1.0)).abs()),
            Err(e) => return fail(NAME, e),
        }
    }
    let outcome = phi_p_1d(&[1.0, 0.5], 2.0)
        .and_then(|exact| phi_p_1d_grid(&[1.0, 0.5], 2.0, 1e-3).map(|grid| (exact, grid)));
    let (exact, grid) = match outcome {
        Ok(v) => v,
        Err(e) => return fail(NAME, e),
    };
    let grid_rel = (grid - exact).abs() / exact;
    CriterionResult::new(
        NAME,
        worst_exact <= 1e-14 && grid_rel <= 0.01,
        format!(
            "equal-radii worst |err| = {} <= 1e-14; grid {} vs exact {} (rel {} <= 0.01)",
            sig12(worst_exact),
            sig12(grid),
            sig12(exact),
            sig12(grid_rel)
        ),
    )
}

/// The isosceles energy profile peaks at the equilateral parameter, and the
/// stationarity profile changes sign exactly once.
pub fn criterion_10(_config: &SuiteConfig) -> CriterionResult {
    const NAME: &str = "10 profile lemmas";
    let (argmax, _) = golden_section_max(
        |x| profile_f(x).unwrap_or(f64::NEG_INFINITY),
        1e-6,
        std::f64::consts::SQRT_2 - 1e-6,
        1e-9,
    );
    let argmax_err = (argmax - 1.0).abs();
    let samples = 10_000;
    let mut sign_changes = 0;
    let mut last = 0.0f64;
    for k in 0..samples {
        let t = (k as f64 + 0.5) / samples as f64 * std::f64::consts::FRAC_PI_2;
        let v = match profile_l_derivative(t) {
            Ok(v) => v,
            Err(e) => return fail(NAME, e),
        };
        if v != 0.0 {
            if last != 0.0 && v.signum() != last.signum() {
                sign_changes += 1;
            }
            last = v;
        }
    }
    CriterionResult::new(
        NAME,
        argmax_err <= 1e-6 && sign_changes == 1,
        format!(
            "argmax of f = {} (|err| {} <= 1e-6), sign changes of L' over {} samples = \
             {} (must be 1)",
            sig12(argmax),
            sig12(argmax_err),
            samples,
            sign_changes
        ),
    )
}

/// The sharpened Jensen inequality on random nonnegative vectors, with
/// equality at p = 2.
pub fn criterion_11(config: &SuiteConfig) -> CriterionResult {
    const NAME: &str = "11 jensen inequality";
    let vectors = if config.fast { 300 } else { 1_000 };
    let mut rng = sampling::rng(config.seed ^ 0x11);
    let mut violations = 0usize;
    let mut worst_equality = 0.0f64;
    for _ in 0..vectors {
        let n = rng.gen_range(2..=30);
        let values: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..10.0)).collect();
        for &p in &[2.0, 3.0, 5.0] {
            let (lhs, rhs) = match jensen_gap(&values, p) {
                Ok(v) => v,
                Err(e) => return fail(NAME, e),
            };
            if lhs < rhs - 1e-9 * lhs.abs().max(1.0) {
                violations += 1;
            }
            if p == 2.0 {
                worst_equality = worst_equality.max((lhs - rhs).abs() / lhs.abs().max(1.0));
            }
        }
    }
    CriterionResult::new(
        NAME,
        violations == 0 && worst_equality <= 1e-12,
        format!(
            "{} vectors x p in {{2, 3, 5}}: {} violations (must be 0), worst p=2 equality \
             gap = {} <= 1e-12",
            vectors,
            violations,
            sig12(worst_equality)
        ),
    )
}

/// Relative efficiency dominates efficiency; F_6 of the disc sits below 1;
/// the perforated phi_6 stays moderate (softly, with a warning).
pub fn criterion_12(config: &SuiteConfig) -> CriterionResult {
    const NAME: &str = "12 super-dimensional behavior";
    let h = if config.fast { 1.0 / 64.0 } else { 1.0 / 128.0 };
    let run = || -> Result<(f64, f64)> {
        let mask = disc_mask(h)?;
        let mut worst_domination = f64::NEG_INFINITY;
        let mut f6 = f64::NAN;
        for &p in &[2.0, 6.0] {
            let field = solve_torsion(&mask, &SolverConfig::new(p, h)?)?;
            worst_domination = worst_domination.max(phi_p(&field)? - psi_p(&field)?);
            if p == 6.0 {
                f6 = f_p(&field, std::f64::consts::PI)?;
            }
        }
        Ok((worst_domination, f6))
    };
    let (worst_domination, f6) = match run() {
        Ok(v) => v,
        Err(e) => return fail(NAME, e),
    };
    let sweep_spacings: &[f64] = if config.fast { &[0.4] } else { &[0.4, 0.3] };
    let sweep = match perforated_sweep(sweep_spacings, 6.0, 1.0 / 128.0) {
        Ok(s) => s,
        Err(e) => return fail(NAME, e),
    };
    let sweep_max = sweep.iter().map(|&(_, phi)| phi).fold(f64::NEG_INFINITY, f64::max);
    let soft_note = if sweep_max <= 0.95 {
        format!("perforated phi_6 max = {} <= 0.95", sig12(sweep_max))
    } else {
        format!(
            "warning: perforated phi_6 max = {} exceeds the recorded 0.95 (soft)",
            sig12(sweep_max)
        )
    };
    CriterionResult::new(
        NAME,
        worst_domination <= 1e-12 && f6 < 1.0,
        format!(
            "max(phi_p - psi_p) = {} <= 0, F_6(disc) = {} < 1; {}",
            sig12(worst_domination),
            sig12(f6),
            soft_note
        ),
    )
}

/// Shrinking capacity-scaled holes raise the efficiency of the perforated
/// disc monotonically.
pub fn criterion_13(config: &SuiteConfig) -> CriterionResult {
    const NAME: &str = "13 homogenization trend";
    let h = if config.fast { 1.0 / 256.0 } else { 1.0 / 512.0 };
    let sweep = match perforated_sweep(&[0.4, 0.3, 0.2], 2.0, h) {
        Ok(s) => s,
        Err(e) => return fail(NAME, e),
    };
    let increasing = sweep.windows(2).all(|w| w[1].1 > w[0].1);
    let shown: Vec<String> = sweep
        .iter()
        .map(|&(s, phi)| format!("phi_2(s={s}) = {}", sig12(phi)))
        .collect();
    CriterionResult::new(
        NAME,
        increasing,
        format!(
            "{} (strictly increasing as holes shrink: {increasing})",
            shown.join(", ")
        ),
    )
}

/// The analytic energy gradient against central finite differences on
/// random 8x8 masks.
pub fn criterion_14(config: &SuiteConfig) -> CriterionResult {
    const NAME: &str = "14 gradient correctness";
    let mut rng = sampling::rng(config.seed ^ 0x14);
    let mut worst = 0.0f64;
    for &p in &[1.5, 2.0, 4.0] {
        for _ in 0..3 {
            let mask = match GridMask::from_predicate(Point::new(0.0, 0.0), 0.125, 8, 8, |_| {
                rng.gen_bool(0.65)
            }) {
                Ok(m) if m.inside_count() > 0 => m,
                _ => continue,
            };
            let u: Vec<f64> = (0..mask.len())
                .map(|idx| {
                    if mask.mask()[idx] {
                        rng.gen_range(-0.5..0.5)
                    } else {
                        0.0
                    }
                })
                .collect();
            let grad = match discrete_energy_gradient(&mask, p, &u) {
                Ok(g) => g,
                Err(e) => return fail(NAME, e),
            };
            let scale = grad.iter().map(|g| g.abs()).fold(0.0f64, f64::max);
            let fd_h = 1e-6;
            for idx in 0..mask.len() {
                if !mask.mask()[idx] {
                    continue;
                }
                let mut up = u.clone();
                let mut um = u.clone();
                up[idx] += fd_h;
                um[idx] -= fd_h;
                let fd = match discrete_energy(&mask, p, &up)
                    .and_then(|e_up| discrete_energy(&mask, p, &um).map(|e_um| (e_up, e_um)))
                {
                    Ok((e_up, e_um)) => (e_up - e_um) / (2.0 * fd_h),
                    Err(e) => return fail(NAME, e),
                };
                worst = worst.max((fd - grad[idx]).abs() / scale.max(1e-12));
            }
        }
    }
    CriterionResult::new(
        NAME,
        worst < 1e-5,
        format!("worst relative gradient deviation = {} < 1e-5", sig12(worst)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suite_is_deterministic_and_named() {
        let config = SuiteConfig {
            fast: true,
            seed: 0,
        };
        let a = criterion_09(&config);
        let b = criterion_09(&config);
        assert_eq!(a.details, b.details);
        assert!(a.name.starts_with("09"));
        assert!(a.line().starts_with("pass") || a.line().starts_with("FAIL"));
    }

    #[test]
    fn constant_note_quotes_the_symbolic_value() {
        let note = constant_note();
        assert!(note.contains("1/3 + ln(3)/4"));
        assert!(note.contains(&sig12(equilateral_energy())));
    }
}
