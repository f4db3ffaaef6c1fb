//! The p-torsion problem on masked grids and its shape functionals.
//!
//! `solve_torsion` minimizes the strictly convex energy
//! `F_p(u) = (1/p) \int |grad u|^p - \int u` over grid functions vanishing
//! off the mask, which discretizes `-div(|grad w|^{p-2} grad w) = 1` with
//! zero boundary values. On top of the solution the module evaluates the
//! efficiency `Phi_p`, its relative `Psi_p`, the torsional rigidity `T_p`,
//! the Rayleigh upper bound for `lambda_p`, and the scale-invariant
//! combination `F_p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{GridMask, ScalarField};
use crate::Point;

/// Regularization of `|grad u|` at zero: `delta = 1e-8 * scale`.
pub const DELTA_FACTOR: f64 = 1e-8;

const ARMIJO_SLOPE: f64 = 1e-4;
const ARMIJO_SHRINK: f64 = 0.5;
const STREAK_LENGTH: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepRule {
    Fixed,
    Backtracking,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Exponent of the p-Laplacian, must exceed 1.
    pub p: f64,
    /// Grid spacing; must match the mask handed to the solver.
    pub h: f64,
    pub max_iterations: usize,
    /// Relative energy decrease below which an iteration counts as stalled;
    /// ten consecutive stalled iterations stop the solver.
    pub tolerance: f64,
    pub step_rule: StepRule,
}

impl SolverConfig {
    pub fn new(p: f64, h: f64) -> Result<Self> {
        let config = SolverConfig {
            p,
            h,
            max_iterations: 50_000,
            tolerance: 1e-10,
            step_rule: StepRule::Backtracking,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.p.is_finite() && self.p > 1.0) {
            return Err(Error::InvalidP(self.p));
        }
        if !(self.h.is_finite() && self.h > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "grid spacing must be positive, got {}",
                self.h
            )));
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }
}

/// A converged discrete p-torsion function.
#[derive(Debug, Clone)]
pub struct TorsionField {
    field: ScalarField,
    p: f64,
    energy_value: f64,
    iterations: usize,
    residual: f64,
    energy_trace: Vec<f64>,
}

impl TorsionField {
    pub fn field(&self) -> &ScalarField {
        &self.field
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Final value of the discrete energy functional.
    pub fn energy_value(&self) -> f64 {
        self.energy_value
    }

    pub fn iterations(&self) -> usize {
        self.iterations
    }

    /// Sup norm of the discrete Euler-Lagrange residual
    /// `-div(|grad w|^{p-2} grad w) - 1` over inside cells.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// Energies recorded after each accepted iteration of the finest stage.
    pub fn energy_trace(&self) -> &[f64] {
        &self.energy_trace
    }

    pub fn to_json(&self) -> Result<String> {
        let mut value = serde_json::to_value(&self.field)?;
        let map = value
            .as_object_mut()
            .expect("scalar field serializes to an object");
        map.insert("p".into(), serde_json::json!(self.p));
        map.insert("energy".into(), serde_json::json!(self.energy_value));
        map.insert("iterations".into(), serde_json::json!(self.iterations));
        Ok(serde_json::to_string_pretty(&value)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(text)?;
        let p = value
            .get("p")
            .and_then(|v| v.as_f64())
            .ok_or_else(|| Error::Json("missing numeric field `p`".into()))?;
        let energy_value = value
            .get("energy")
            .and_then(|v| v.as_f64())
            .ok_or_else(|| Error::Json("missing numeric field `energy`".into()))?;
        let iterations = value
            .get("iterations")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Json("missing integer field `iterations`".into()))?;
        let field: ScalarField = serde_json::from_value(value)?;
        Ok(TorsionField {
            field,
            p,
            energy_value,
            iterations: iterations as usize,
            residual: f64::NAN,
            energy_trace: Vec::new(),
        })
    }
}

/// `x^(p/2)` for `x >= 0` with fast paths for the common exponents.
fn half_pow(x: f64, p: f64) -> f64 {
    if p == 2.0 {
        x
    } else if p == 4.0 {
        x * x
    } else if p == 6.0 {
        x * x * x
    } else {
        x.powf(0.5 * p)
    }
}

/// `x^((p-2)/2)` for `x >= 0`: the gradient weight.
fn weight_pow(x: f64, p: f64) -> f64 {
    if p == 2.0 {
        1.0
    } else if p == 4.0 {
        x
    } else if p == 6.0 {
        x * x
    } else {
        x.powf(0.5 * (p - 2.0))
    }
}

/// The masked finite-difference discretization. Values live at cell centers,
/// both backward differences of a cell are collocated at its lower-left
/// corner, and off-mask values are zero.
struct Discretization {
    nx: usize,
    ny: usize,
    h: f64,
    p: f64,
    delta2: f64,
    inside: Vec<bool>,
}

impl Discretization {
    fn new(mask: &GridMask, p: f64) -> Self {
        let h = mask.spacing();
        // Gradient scale of the solution is of order diam/…; the torsion
        // function has |grad w| = O(diam^{1/(p-1)}), but only the order of
        // magnitude matters for the regularizer.
        let extent = (mask.nx().max(mask.ny()) as f64) * h;
        let delta = DELTA_FACTOR * extent.max(1e-300);
        Discretization {
            nx: mask.nx(),
            ny: mask.ny(),
            h,
            p,
            delta2: delta * delta,
            inside: (0..mask.ny())
                .flat_map(|j| (0..mask.nx()).map(move |i| mask.is_inside(i, j)))
                .collect::<Vec<bool>>(),
        }
    }

    fn len(&self) -> usize {
        self.nx * self.ny
    }

    fn is_inside(&self, i: isize, j: isize) -> bool {
        i >= 0
            && j >= 0
            && (i as usize) < self.nx
            && (j as usize) < self.ny
            && self.inside[j as usize * self.nx + i as usize]
    }

    fn at(&self, u: &[f64], i: isize, j: isize) -> f64 {
        if self.is_inside(i, j) {
            u[j as usize * self.nx + i as usize]
        } else {
            0.0
        }
    }

    /// Discrete energy `F_p(u)`.
    fn energy(&self, u: &[f64]) -> f64 {
        let mut bulk = 0.0;
        let base = half_pow(self.delta2, self.p);
        for j in 0..=self.ny as isize {
            for i in 0..=self.nx as isize {
                let center = self.at(u, i, j);
                let gx = (center - self.at(u, i - 1, j)) / self.h;
                let gy = (center - self.at(u, i, j - 1)) / self.h;
                let g2 = gx * gx + gy * gy;
                if g2 > 0.0 || self.is_inside(i, j) {
                    bulk += half_pow(g2 + self.delta2, self.p) - base;
                }
            }
        }
        let mut source = 0.0;
        for (idx, &m) in self.inside.iter().enumerate() {
            if m {
                source += u[idx];
            }
        }
        self.h * self.h * (bulk / self.p - source)
    }

    /// Analytic gradient of the energy with respect to inside values;
    /// off-mask entries stay zero. Returns the squared Euclidean norm.
    fn gradient(&self, u: &[f64], grad: &mut [f64], nodes: &mut NodeBuffers) -> f64 {
        let snx = self.nx + 2;
        for j in 0..=self.ny as isize + 1 {
            for i in 0..=self.nx as isize + 1 {
                let n = j as usize * snx + i as usize;
                let center = self.at(u, i, j);
                let gx = (center - self.at(u, i - 1, j)) / self.h;
                let gy = (center - self.at(u, i, j - 1)) / self.h;
                nodes.gx[n] = gx;
                nodes.gy[n] = gy;
                nodes.w[n] = weight_pow(gx * gx + gy * gy + self.delta2, self.p);
            }
        }
        let mut norm2 = 0.0;
        let h2 = self.h * self.h;
        for j in 0..self.ny {
            for i in 0..self.nx {
                let idx = j * self.nx + i;
                if !self.inside[idx] {
                    grad[idx] = 0.0;
                    continue;
                }
                let n = j * snx + i;
                let ne = j * snx + i + 1;
                let nn = (j + 1) * snx + i;
                let div = nodes.w[n] * (nodes.gx[n] + nodes.gy[n])
                    - nodes.w[ne] * nodes.gx[ne]
                    - nodes.w[nn] * nodes.gy[nn];
                let g = self.h * div - h2;
                grad[idx] = g;
                norm2 += g * g;
            }
        }
        norm2
    }

    /// `h^2 * sum(u)` over inside cells.
    fn source_sum(&self, u: &[f64]) -> f64 {
        let mut s = 0.0;
        for (idx, &m) in self.inside.iter().enumerate() {
            if m {
                s += u[idx];
            }
        }
        s * self.h * self.h
    }

    /// `h^2 * sum |grad u|^p` without the regularizer.
    fn dirichlet_sum(&self, u: &[f64]) -> f64 {
        let mut d = 0.0;
        for j in 0..=self.ny as isize {
            for i in 0..=self.nx as isize {
                let center = self.at(u, i, j);
                let gx = (center - self.at(u, i - 1, j)) / self.h;
                let gy = (center - self.at(u, i, j - 1)) / self.h;
                d += half_pow(gx * gx + gy * gy, self.p);
            }
        }
        d * self.h * self.h
    }

    /// Sup norm of `-div(|grad u|^{p-2} grad u) - 1` over inside cells.
    fn residual_inf(&self, u: &[f64], nodes: &mut NodeBuffers) -> f64 {
        let mut grad = vec![0.0; self.len()];
        self.gradient(u, &mut grad, nodes);
        let h2 = self.h * self.h;
        grad.iter()
            .map(|g| (g / h2).abs())
            .fold(0.0f64, f64::max)
    }
}

struct NodeBuffers {
    gx: Vec<f64>,
    gy: Vec<f64>,
    w: Vec<f64>,
}

impl NodeBuffers {
    fn new(nx: usize, ny: usize) -> Self {
        let len = (nx + 2) * (ny + 2);
        NodeBuffers {
            gx: vec![0.0; len],
            gy: vec![0.0; len],
            w: vec![0.0; len],
        }
    }
}

/// Solves the p-torsion problem on the mask.
///
/// `p = 2` uses conjugate gradients on the five-point Laplacian; other
/// exponents run gradient descent with an Armijo line search, warm-started
/// from a solve on a coarsened mask and periodically rescaled along the ray
/// `u -> lambda u` (the exact line minimum, which also enforces the torsion
/// identity `int |grad w|^p = int w` at the end).
pub fn solve_torsion(mask: &GridMask, config: &SolverConfig) -> Result<TorsionField> {
    config.validate()?;
    if (config.h / mask.spacing() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameters(format!(
            "config spacing {} does not match the mask spacing {}",
            config.h,
            mask.spacing()
        )));
    }
    if mask.inside_count() == 0 {
        return Err(Error::EmptyDomain);
    }

    let disc = Discretization::new(mask, config.p);
    let outcome = if config.p == 2.0 {
        solve_p2_cg(&disc, config)?
    } else {
        let init = cascade_initial(mask, config);
        solve_descent(&disc, config, init)?
    };

    let mut nodes = NodeBuffers::new(disc.nx, disc.ny);
    let residual = disc.residual_inf(&outcome.u, &mut nodes);
    let field = ScalarField::new(mask.clone(), outcome.u)?;
    Ok(TorsionField {
        field,
        p: config.p,
        energy_value: outcome.energy,
        iterations: outcome.iterations,
        residual,
        energy_trace: outcome.trace,
    })
}

struct SolveOutcome {
    u: Vec<f64>,
    energy: f64,
    iterations: usize,
    trace: Vec<f64>,
}

/// Conjugate gradients for `-Delta_h u = 1` restricted to inside cells.
fn solve_p2_cg(disc: &Discretization, config: &SolverConfig) -> Result<SolveOutcome> {
    let n = disc.len();
    let h2 = disc.h * disc.h;
    let apply = |u: &[f64], out: &mut [f64]| {
        for j in 0..disc.ny as isize {
            for i in 0..disc.nx as isize {
                let idx = j as usize * disc.nx + i as usize;
                if !disc.inside[idx] {
                    out[idx] = 0.0;
                    continue;
                }
                out[idx] = (4.0 * u[idx]
                    - disc.at(u, i - 1, j)
                    - disc.at(u, i + 1, j)
                    - disc.at(u, i, j - 1)
                    - disc.at(u, i, j + 1))
                    / h2;
            }
        }
    };
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();

    let mut u = vec![0.0; n];
    let mut r = vec![0.0; n];
    for (idx, &m) in disc.inside.iter().enumerate() {
        if m {
            r[idx] = 1.0;
        }
    }
    let b_norm2 = dot(&r, &r);
    let mut d = r.clone();
    let mut q = vec![0.0; n];
    let mut rho = b_norm2;
    let tol2 = (config.tolerance.min(1e-10)).powi(2) * b_norm2;
    let mut iterations = 0;
    while rho > tol2 {
        if iterations >= config.max_iterations {
            return Err(Error::NotConverged(config.max_iterations));
        }
        apply(&d, &mut q);
        let alpha = rho / dot(&d, &q);
        for idx in 0..n {
            u[idx] += alpha * d[idx];
            r[idx] -= alpha * q[idx];
        }
        let rho_next = dot(&r, &r);
        let beta = rho_next / rho;
        for idx in 0..n {
            d[idx] = r[idx] + beta * d[idx];
        }
        rho = rho_next;
        iterations += 1;
    }
    let energy = disc.energy(&u);
    Ok(SolveOutcome {
        u,
        energy,
        iterations,
        trace: vec![energy],
    })
}

/// Warm start: solve on a mask coarsened by factor two (conservatively, a
/// coarse cell is inside only when all its fine cells are) and inject.
fn cascade_initial(mask: &GridMask, config: &SolverConfig) -> Vec<f64> {
    let n = mask.len();
    if mask.nx().min(mask.ny()) <= 12 {
        return vec![0.0; n];
    }
    let cnx = mask.nx().div_ceil(2);
    let cny = mask.ny().div_ceil(2);
    let coarse_inside = |ci: usize, cj: usize| {
        for dj in 0..2 {
            for di in 0..2 {
                let (i, j) = (2 * ci + di, 2 * cj + dj);
                if i >= mask.nx() || j >= mask.ny() || !mask.is_inside(i, j) {
                    return false;
                }
            }
        }
        true
    };
    let inside: Vec<bool> = (0..cny)
        .flat_map(|cj| (0..cnx).map(move |ci| coarse_inside(ci, cj)))
        .collect();
    let coarse = match GridMask::new(mask.origin(), 2.0 * mask.spacing(), cnx, cny, inside) {
        Ok(c) if c.inside_count() > 0 => c,
        _ => return vec![0.0; n],
    };
    let coarse_config = SolverConfig {
        h: 2.0 * config.h,
        max_iterations: config.max_iterations,
        tolerance: config.tolerance * 4.0,
        ..*config
    };
    let coarse_disc = Discretization::new(&coarse, config.p);
    let init = cascade_initial(&coarse, &coarse_config);
    let Ok(outcome) = solve_descent(&coarse_disc, &coarse_config, init) else {
        return vec![0.0; n];
    };
    let mut fine = vec![0.0; n];
    for j in 0..mask.ny() {
        for i in 0..mask.nx() {
            if mask.is_inside(i, j) {
                fine[j * mask.nx() + i] = outcome.u[(j / 2) * cnx + i / 2];
            }
        }
    }
    fine
}

fn solve_descent(
    disc: &Discretization,
    config: &SolverConfig,
    init: Vec<f64>,
) -> Result<SolveOutcome> {
    let n = disc.len();
    let mut u = init;
    debug_assert_eq!(u.len(), n);
    let mut nodes = NodeBuffers::new(disc.nx, disc.ny);
    let mut grad = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut energy = disc.energy(&u);
    let mut trace = vec![energy];
    let mut step = disc.h * disc.h;
    let mut streak = 0;
    // The energy Hessian is bounded by about 8 (p - 1) max|grad|^{p-2}
    // independently of h, so a mesh-independent step is stable.
    let fixed_step = 0.1 / (config.p - 1.0).max(1.0);

    for iteration in 0..config.max_iterations {
        if iteration % 10 == 0 {
            if let Some(rescaled) = ray_rescale(disc, &u) {
                if rescaled < energy - f64::EPSILON * energy.abs() {
                    apply_ray_rescale(disc, &mut u);
                    energy = rescaled;
                }
            }
        }
        let norm2 = disc.gradient(&u, &mut grad, &mut nodes);
        if norm2 == 0.0 {
            return Ok(SolveOutcome {
                u,
                energy,
                iterations: iteration,
                trace,
            });
        }
        let new_energy = match config.step_rule {
            StepRule::Fixed => {
                for idx in 0..n {
                    trial[idx] = u[idx] - fixed_step * grad[idx];
                }
                disc.energy(&trial)
            }
            StepRule::Backtracking => {
                let mut alpha = step * 2.0;
                let mut accepted = None;
                for _ in 0..60 {
                    for idx in 0..n {
                        trial[idx] = u[idx] - alpha * grad[idx];
                    }
                    let e = disc.energy(&trial);
                    if e <= energy - ARMIJO_SLOPE * alpha * norm2 {
                        accepted = Some(e);
                        break;
                    }
                    alpha *= ARMIJO_SHRINK;
                }
                step = alpha;
                match accepted {
                    Some(e) => e,
                    None => energy,
                }
            }
        };
        if new_energy <= energy {
            std::mem::swap(&mut u, &mut trial);
            let decrease = energy - new_energy;
            energy = new_energy;
            trace.push(energy);
            if decrease <= config.tolerance * energy.abs().max(f64::MIN_POSITIVE) {
                streak += 1;
            } else {
                streak = 0;
            }
        } else {
            streak += 1;
        }
        if streak >= STREAK_LENGTH {
            finalize(disc, &mut u);
            let energy = disc.energy(&u);
            trace.push(energy);
            return Ok(SolveOutcome {
                u,
                energy,
                iterations: iteration + 1,
                trace,
            });
        }
    }
    Err(Error::NotConverged(config.max_iterations))
}

/// Energy after the optimal ray rescale `u -> lambda u`, if defined.
fn ray_rescale(disc: &Discretization, u: &[f64]) -> Option<f64> {
    let (lambda, _) = ray_lambda(disc, u)?;
    let mut scaled = u.to_vec();
    for v in &mut scaled {
        *v *= lambda;
    }
    Some(disc.energy(&scaled))
}

fn apply_ray_rescale(disc: &Discretization, u: &mut [f64]) {
    if let Some((lambda, _)) = ray_lambda(disc, u) {
        for v in u.iter_mut() {
            *v *= lambda;
        }
    }
}

fn ray_lambda(disc: &Discretization, u: &[f64]) -> Option<(f64, f64)> {
    let s = disc.source_sum(u);
    let d = disc.dirichlet_sum(u);
    if s <= 0.0 || d <= 0.0 {
        return None;
    }
    let lambda = (s / d).powf(1.0 / (disc.p - 1.0));
    lambda.is_finite().then_some((lambda, s))
}

/// Final ray rescale so that the torsion identity holds to rounding.
fn finalize(disc: &Discretization, u: &mut [f64]) {
    apply_ray_rescale(disc, u);
}

/// Discrete energy `F_p(u)` of an arbitrary grid function on the mask
/// (off-mask entries of `u` are ignored and treated as zero).
pub fn discrete_energy(mask: &GridMask, p: f64, u: &[f64]) -> Result<f64> {
    let disc = checked_discretization(mask, p, u)?;
    Ok(disc.energy(u))
}

/// Analytic gradient of [`discrete_energy`] with respect to the inside
/// values; off-mask entries of the result are zero.
pub fn discrete_energy_gradient(mask: &GridMask, p: f64, u: &[f64]) -> Result<Vec<f64>> {
    let disc = checked_discretization(mask, p, u)?;
    let mut grad = vec![0.0; disc.len()];
    let mut nodes = NodeBuffers::new(disc.nx, disc.ny);
    disc.gradient(u, &mut grad, &mut nodes);
    Ok(grad)
}

fn checked_discretization(mask: &GridMask, p: f64, u: &[f64]) -> Result<Discretization> {
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::InvalidP(p));
    }
    if u.len() != mask.len() {
        return Err(Error::InvalidParameters(format!(
            "vector length {} does not match the {}x{} grid",
            u.len(),
            mask.nx(),
            mask.ny()
        )));
    }
    Ok(Discretization::new(mask, p))
}

/// Relative gap `|int |grad w|^p - int w| / int w` of the torsion identity
/// on a solved field; zero for the exact minimizer.
pub fn torsion_identity_gap(field: &TorsionField) -> Result<f64> {
    let disc = Discretization::new(field.field.grid(), field.p);
    let d = disc.dirichlet_sum(field.field.values());
    let s = disc.source_sum(field.field.values());
    if s <= 0.0 {
        return Err(Error::ZeroField);
    }
    Ok((d - s).abs() / s)
}

/// The explicit torsion function of a ball: value at distance `dist` from
/// the center of a ball of radius `r` in dimension `n`.
pub fn torsion_ball_analytic(r: f64, n: u32, p: f64, dist: f64) -> Result<f64> {
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::InvalidP(p));
    }
    if !(r.is_finite() && r > 0.0) || n == 0 {
        return Err(Error::InvalidParameters(format!(
            "ball radius {r} and dimension {n} must be positive"
        )));
    }
    if !(dist.is_finite() && dist >= 0.0) || dist > r {
        return Err(Error::OutsideBall {
            dist,
            radius: r,
        });
    }
    let pp = p / (p - 1.0);
    let nf = n as f64;
    Ok((r.powf(pp) - dist.powf(pp)) / (pp * nf.powf(pp / p)))
}

fn positive_stats(field: &TorsionField) -> Result<(f64, f64)> {
    let mean = field.field.mean()?;
    let max = field.field.max()?;
    if max <= 0.0 {
        return Err(Error::ZeroField);
    }
    Ok((mean, max))
}

/// Efficiency `Phi_p = mean(w) / max(w)`.
pub fn phi_p(field: &TorsionField) -> Result<f64> {
    let (mean, max) = positive_stats(field)?;
    Ok(mean / max)
}

/// Relative efficiency `Psi_p = mean(w) / mean(w^p)^{1/p}`, always at least
/// `Phi_p`.
pub fn psi_p(field: &TorsionField) -> Result<f64> {
    let (mean, _) = positive_stats(field)?;
    let pm = field.field.power_mean(field.p)?.powf(1.0 / field.p);
    if pm <= 0.0 {
        return Err(Error::ZeroField);
    }
    Ok(mean / pm)
}

/// `Phi_p` of a disjoint union of intervals with the given radii, exactly:
/// `(p'/(p'+1)) * sum(r^(p'+1)) / (max(r)^{p'} * sum(r))`.
pub fn phi_p_1d(radii: &[f64], p: f64) -> Result<f64> {
    if radii.is_empty() {
        return Err(Error::EmptyList);
    }
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::InvalidP(p));
    }
    for &r in radii {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "interval radius must be positive, got {r}"
            )));
        }
    }
    let pp = p / (p - 1.0);
    let max_r = radii.iter().copied().fold(0.0f64, f64::max);
    let num: f64 = radii.iter().map(|r| r.powf(pp + 1.0)).sum();
    let den = max_r.powf(pp) * radii.iter().sum::<f64>();
    Ok(pp / (pp + 1.0) * num / den)
}

/// Grid cross-check of [`phi_p_1d`]: each interval is solved on a 1-D grid
/// of spacing about `h` and the union statistics are assembled.
pub fn phi_p_1d_grid(radii: &[f64], p: f64, h: f64) -> Result<f64> {
    if radii.is_empty() {
        return Err(Error::EmptyList);
    }
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::InvalidP(p));
    }
    if !(h.is_finite() && h > 0.0) {
        return Err(Error::InvalidParameters(format!(
            "grid spacing must be positive, got {h}"
        )));
    }
    let mut total_len = 0.0;
    let mut total_int = 0.0;
    let mut max = 0.0f64;
    for &r in radii {
        if !(r > 0.0) {
            return Err(Error::InvalidParameters(format!(
                "interval radius must be positive, got {r}"
            )));
        }
        let n = ((2.0 * r / h).ceil() as usize).max(4);
        let hh = 2.0 * r / n as f64;
        let u = solve_torsion_1d(n, hh, p)?;
        total_len += 2.0 * r;
        total_int += hh * u.iter().sum::<f64>();
        max = max.max(u.iter().copied().fold(0.0, f64::max));
    }
    if max <= 0.0 {
        return Err(Error::ZeroField);
    }
    Ok(total_int / total_len / max)
}

/// One-dimensional torsion solve on `n` cells of width `h` with zero
/// boundary values; exact tridiagonal solve for `p = 2`, damped descent with
/// ray rescaling otherwise.
fn solve_torsion_1d(n: usize, h: f64, p: f64) -> Result<Vec<f64>> {
    if p == 2.0 {
        // Thomas algorithm for (2u_i - u_{i-1} - u_{i+1})/h^2 = 1.
        let mut diag = vec![2.0; n];
        let mut rhs = vec![h * h; n];
        for i in 1..n {
            let w = 1.0 / diag[i - 1];
            diag[i] = 2.0 - w;
            rhs[i] += w * rhs[i - 1];
        }
        let mut u = vec![0.0; n];
        u[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            u[i] = (rhs[i] + u[i + 1]) / diag[i];
        }
        return Ok(u);
    }
    // Descent on the 1-D energy with the same structure as the 2-D solver.
    let delta2 = (DELTA_FACTOR * n as f64 * h).powi(2);
    let energy = |u: &[f64]| {
        let mut bulk = 0.0;
        for i in 0..=n {
            let a = if i < n { u[i] } else { 0.0 };
            let b = if i > 0 { u[i - 1] } else { 0.0 };
            let g = (a - b) / h;
            bulk += half_pow(g * g + delta2, p) - half_pow(delta2, p);
        }
        h * (bulk / p - u.iter().sum::<f64>())
    };
    let gradient = |u: &[f64], grad: &mut [f64]| {
        let mut flux = vec![0.0; n + 1];
        for i in 0..=n {
            let a = if i < n { u[i] } else { 0.0 };
            let b = if i > 0 { u[i - 1] } else { 0.0 };
            let g = (a - b) / h;
            flux[i] = weight_pow(g * g + delta2, p) * g;
        }
        let mut norm2 = 0.0;
        for i in 0..n {
            let g = flux[i] - flux[i + 1] - h;
            grad[i] = g;
            norm2 += g * g;
        }
        norm2
    };
    // Start from the exact p-torsion profile shape to cut iterations.
    let pp = p / (p - 1.0);
    let r = 0.5 * n as f64 * h;
    let mut u: Vec<f64> = (0..n)
        .map(|i| {
            let x = (i as f64 + 0.5) * h - r;
            (r.powf(pp) - x.abs().powf(pp)).max(0.0) / pp
        })
        .collect();
    let mut grad = vec![0.0; n];
    let mut trial = vec![0.0; n];
    let mut e = energy(&u);
    let mut step = h * h;
    let mut streak = 0;
    for _ in 0..200_000 {
        // Ray rescale: exact minimum along u -> lambda u.
        let s: f64 = h * u.iter().sum::<f64>();
        let mut d = 0.0;
        for i in 0..=n {
            let a = if i < n { u[i] } else { 0.0 };
            let b = if i > 0 { u[i - 1] } else { 0.0 };
            let g: f64 = (a - b) / h;
            d += h * half_pow(g * g, p);
        }
        if s > 0.0 && d > 0.0 {
            let lambda = (s / d).powf(1.0 / (p - 1.0));
            if lambda.is_finite() {
                for v in u.iter_mut() {
                    *v *= lambda;
                }
                e = energy(&u);
            }
        }
        let norm2 = gradient(&u, &mut grad);
        let mut alpha = step * 2.0;
        let mut accepted = None;
        for _ in 0..60 {
            for i in 0..n {
                trial[i] = u[i] - alpha * grad[i];
            }
            let et = energy(&trial);
            if et <= e - ARMIJO_SLOPE * alpha * norm2 {
                accepted = Some(et);
                break;
            }
            alpha *= ARMIJO_SHRINK;
        }
        step = alpha;
        if let Some(et) = accepted {
            std::mem::swap(&mut u, &mut trial);
            let decrease = e - et;
            e = et;
            if decrease <= 1e-12 * e.abs().max(f64::MIN_POSITIVE) {
                streak += 1;
            } else {
                streak = 0;
            }
        } else {
            streak += 1;
        }
        if streak >= STREAK_LENGTH {
            break;
        }
    }
    Ok(u)
}

/// Torsional rigidity `T_p = (int w)^{p-1}`.
pub fn torsional_rigidity(field: &TorsionField) -> Result<f64> {
    let h = field.field.grid().spacing();
    let s: f64 = field.field.values().iter().sum::<f64>() * h * h;
    if s <= 0.0 {
        return Err(Error::ZeroField);
    }
    Ok(s.powf(field.p - 1.0))
}

/// Rayleigh-quotient upper bound for the principal p-frequency, using the
/// torsion function itself as the test function:
/// `lambda_p <= int |grad w|^p / int w^p`.
pub fn lambda_p_upper(field: &TorsionField) -> Result<f64> {
    let mask = field.field.grid();
    let disc = Discretization::new(mask, field.p);
    let d = disc.dirichlet_sum(field.field.values());
    let h = mask.spacing();
    let wp: f64 = field
        .field
        .values()
        .iter()
        .map(|&v| half_pow(v * v, field.p))
        .sum::<f64>()
        * h
        * h;
    if wp <= 0.0 || d <= 0.0 {
        return Err(Error::ZeroField);
    }
    Ok(d / wp)
}

/// The scale-invariant combination `F_p = lambda_p * T_p / |domain|^{p-1}`,
/// evaluated with the Rayleigh upper bound, hence itself an upper bound.
pub fn f_p(field: &TorsionField, area: f64) -> Result<f64> {
    if !(area.is_finite() && area > 0.0) {
        return Err(Error::InvalidParameters(format!(
            "domain area must be positive, got {area}"
        )));
    }
    Ok(lambda_p_upper(field)? * torsional_rigidity(field)? / area.powf(field.p - 1.0))
}

/// All shape functionals of one solved field.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeFunctionals {
    pub phi_p: f64,
    pub psi_p: f64,
    pub t_p: f64,
    pub lambda_p_upper: f64,
    pub f_p: f64,
}

pub fn shape_functionals(field: &TorsionField, area: f64) -> Result<ShapeFunctionals> {
    Ok(ShapeFunctionals {
        phi_p: phi_p(field)?,
        psi_p: psi_p(field)?,
        t_p: torsional_rigidity(field)?,
        lambda_p_upper: lambda_p_upper(field)?,
        f_p: f_p(field, area)?,
    })
}

/// Smallest Dirichlet eigenvalue of the five-point Laplacian on the mask by
/// inverse power iteration (each step one conjugate-gradient solve). Only
/// meaningful for `p = 2`; serves as a cross-check of [`lambda_p_upper`].
pub fn lambda_2_power_iteration(mask: &GridMask, iterations: usize) -> Result<f64> {
    if mask.inside_count() == 0 {
        return Err(Error::EmptyDomain);
    }
    let disc = Discretization::new(mask, 2.0);
    let config = SolverConfig {
        p: 2.0,
        h: mask.spacing(),
        max_iterations: 100_000,
        tolerance: 1e-12,
        step_rule: StepRule::Backtracking,
    };
    let n = disc.len();
    let h2 = disc.h * disc.h;
    let apply = |u: &[f64], out: &mut [f64]| {
        for j in 0..disc.ny as isize {
            for i in 0..disc.nx as isize {
                let idx = j as usize * disc.nx + i as usize;
                if !disc.inside[idx] {
                    out[idx] = 0.0;
                    continue;
                }
                out[idx] = (4.0 * u[idx]
                    - disc.at(u, i - 1, j)
                    - disc.at(u, i + 1, j)
                    - disc.at(u, i, j - 1)
                    - disc.at(u, i, j + 1))
                    / h2;
            }
        }
    };
    // Inverse iteration: v <- A^{-1} v by CG with right-hand side v.
    let cg_solve = |rhs: &[f64]| -> Result<Vec<f64>> {
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let mut u = vec![0.0; n];
        let mut r = rhs.to_vec();
        for (idx, &m) in disc.inside.iter().enumerate() {
            if !m {
                r[idx] = 0.0;
            }
        }
        let b2 = dot(&r, &r);
        if b2 == 0.0 {
            return Ok(u);
        }
        let mut d = r.clone();
        let mut q = vec![0.0; n];
        let mut rho = b2;
        let mut it = 0;
        while rho > 1e-24 * b2 {
            if it >= config.max_iterations {
                return Err(Error::NotConverged(config.max_iterations));
            }
            apply(&d, &mut q);
            let alpha = rho / dot(&d, &q);
            for idx in 0..n {
                u[idx] += alpha * d[idx];
                r[idx] -= alpha * q[idx];
            }
            let rho_next = dot(&r, &r);
            let beta = rho_next / rho;
            for idx in 0..n {
                d[idx] = r[idx] + beta * d[idx];
            }
            rho = rho_next;
            it += 1;
        }
        Ok(u)
    };

    let mut v = vec![0.0; n];
    for (idx, &m) in disc.inside.iter().enumerate() {
        if m {
            v[idx] = 1.0;
        }
    }
    let mut lambda = 0.0;
    for _ in 0..iterations {
        let w = cg_solve(&v)?;
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroField);
        }
        for idx in 0..n {
            v[idx] = w[idx] / norm;
        }
        let mut av = vec![0.0; n];
        apply(&v, &mut av);
        lambda = v.iter().zip(&av).map(|(x, y)| x * y).sum::<f64>();
    }
    Ok(lambda)
}

/// Sharpened Jensen inequality for `p >= 2`: returns
/// `(mean(v^p), mean(v)^p + mean(|v - mean|^p)/(2^{p-1} - 1))`, with the
/// left side never below the right.
pub fn jensen_gap(values: &[f64], p: f64) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(Error::EmptyList);
    }
    if !(p.is_finite() && p >= 2.0) {
        return Err(Error::InvalidP(p));
    }
    if values.iter().any(|&v| !(v.is_finite() && v >= 0.0)) {
        return Err(Error::InvalidParameters(
            "jensen gap expects finite nonnegative values".to_string(),
        ));
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let lhs = values.iter().map(|&v| v.powf(p)).sum::<f64>() / n;
    let dev = values.iter().map(|&v| (v - mean).abs().powf(p)).sum::<f64>() / n;
    let rhs = mean.powf(p) + dev / (2f64.powf(p - 1.0) - 1.0);
    Ok((lhs, rhs))
}

/// Mask for the unit disc minus holes of radius `s^3` on an `s`-spaced
/// square lattice (only holes whose closure stays in the disc are removed).
pub fn perforated_disc_mask(s: f64, h: f64) -> Result<GridMask> {
    if !(s.is_finite() && s > 0.0 && s < 1.0) {
        return Err(Error::InvalidParameters(format!(
            "hole spacing must be in (0, 1), got {s}"
        )));
    }
    let hole_r = s * s * s;
    if hole_r < 2.0 * h {
        return Err(Error::ResolutionTooCoarse {
            h,
            feature: hole_r / 2.0,
        });
    }
    let mut centers = Vec::new();
    let span = (1.0 / s).ceil() as i64 + 1;
    for a in -span..=span {
        for b in -span..=span {
            let c = Point::new(a as f64 * s, b as f64 * s);
            if c.norm() + hole_r < 1.0 {
                centers.push(c);
            }
        }
    }
    let n = (2.0 / h).ceil() as usize;
    let origin = Point::new(-1.0, -1.0);
    GridMask::from_predicate(origin, h, n, n, |p| {
        p.norm() < 1.0 && centers.iter().all(|&c| p.dist(c) > hole_r)
    })
}

/// `Phi_p` of the perforated disc for each hole spacing.
pub fn perforated_sweep(spacings: &[f64], p: f64, h: f64) -> Result<Vec<(f64, f64)>> {
    if spacings.is_empty() {
        return Err(Error::EmptyList);
    }
    let mut out = Vec::with_capacity(spacings.len());
    for &s in spacings {
        let mask = perforated_disc_mask(s, h)?;
        let config = SolverConfig {
            max_iterations: 200_000,
            ..SolverConfig::new(p, h)?
        };
        let field = solve_torsion(&mask, &config)?;
        out.push((s, phi_p(&field)?));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domains::DomainDescriptor;
    use rand::Rng;

    fn disc_mask(h: f64) -> GridMask {
        DomainDescriptor::disc(1.0).unwrap().rasterize(h).unwrap()
    }

    fn center_value(field: &TorsionField) -> f64 {
        let grid = field.field().grid();
        let mut best = (f64::INFINITY, 0.0);
        for (i, j, p) in grid.inside_cells() {
            let d = p.norm();
            if d < best.0 {
                best = (d, field.field().value(i, j));
            }
        }
        best.1
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let mut rng = crate::sampling::rng(17);
        for &p in &[1.5, 2.0, 4.0] {
            for _ in 0..3 {
                let mask = GridMask::from_predicate(
                    Point::new(0.0, 0.0),
                    0.125,
                    8,
                    8,
                    |_| rng.gen_bool(0.7),
                );
                let mask = match mask {
                    Ok(m) if m.inside_count() > 0 => m,
                    _ => continue,
                };
                let disc = Discretization::new(&mask, p);
                let n = disc.len();
                let u: Vec<f64> = (0..n)
                    .map(|idx| {
                        if disc.inside[idx] {
                            rng.gen_range(-0.5..0.5)
                        } else {
                            0.0
                        }
                    })
                    .collect();
                let mut grad = vec![0.0; n];
                let mut nodes = NodeBuffers::new(disc.nx, disc.ny);
                disc.gradient(&u, &mut grad, &mut nodes);
                let scale = grad.iter().map(|g| g.abs()).fold(0.0f64, f64::max);
                let fd_h = 1e-6;
                for idx in 0..n {
                    if !disc.inside[idx] {
                        continue;
                    }
                    let mut up = u.clone();
                    let mut um = u.clone();
                    up[idx] += fd_h;
                    um[idx] -= fd_h;
                    let fd = (disc.energy(&up) - disc.energy(&um)) / (2.0 * fd_h);
                    assert!(
                        (fd - grad[idx]).abs() <= 1e-5 * scale.max(1e-12),
                        "p={p}: grad {} vs fd {}",
                        grad[idx],
                        fd
                    );
                }
            }
        }
    }

    #[test]
    fn ball_analytic_examples() {
        assert!((torsion_ball_analytic(1.0, 2, 2.0, 0.0).unwrap() - 0.25).abs() < 1e-15);
        assert!(torsion_ball_analytic(1.0, 2, 2.0, 1.0).unwrap().abs() < 1e-15);
        assert!(matches!(
            torsion_ball_analytic(1.0, 2, 2.0, 1.5),
            Err(Error::OutsideBall { .. })
        ));
        assert!(matches!(
            torsion_ball_analytic(1.0, 2, 0.9, 0.5),
            Err(Error::InvalidP(_))
        ));
    }

    #[test]
    fn ball_formula_solves_the_radial_equation() {
        // -(1/rho) d/drho (rho |w'|^{p-2} w') should be 1; checked by
        // central differences on the radial profile.
        for &p in &[1.5, 2.0, 3.0, 6.0] {
            let w = |rho: f64| torsion_ball_analytic(1.0, 2, p, rho).unwrap();
            let fd = 1e-5;
            for &rho in &[0.3, 0.5, 0.8] {
                let flux = |r: f64| {
                    let d = (w(r + fd) - w(r - fd)) / (2.0 * fd);
                    r * d.abs().powf(p - 2.0) * d
                };
                let lhs = -(flux(rho + fd) - flux(rho - fd)) / (2.0 * fd * rho);
                assert!(
                    (lhs - 1.0).abs() < 1e-3,
                    "p={p} rho={rho}: residual {lhs}"
                );
            }
        }
    }

    #[test]
    fn disc_p2_matches_the_ball_formula() {
        let h = 1.0 / 64.0;
        let mask = disc_mask(h);
        let field = solve_torsion(&mask, &SolverConfig::new(2.0, h).unwrap()).unwrap();
        let center = center_value(&field);
        assert!(
            (center - 0.25).abs() < 0.02 * 0.25,
            "w(0) = {center}, expected 0.25"
        );
        let phi = phi_p(&field).unwrap();
        assert!((phi - 0.5).abs() < 0.02 * 0.5, "phi {phi}");
    }

    #[test]
    fn disc_p6_matches_the_ball_formula() {
        let h = 1.0 / 64.0;
        let mask = disc_mask(h);
        let mut config = SolverConfig::new(6.0, h).unwrap();
        config.tolerance = 1e-11;
        let field = solve_torsion(&mask, &config).unwrap();
        let center = center_value(&field);
        let expected = torsion_ball_analytic(1.0, 2, 6.0, 0.0).unwrap();
        assert!(
            (center - expected).abs() < 0.03 * expected,
            "w(0) = {center}, expected {expected}"
        );
    }

    #[test]
    fn torsion_identity_holds() {
        let h = 1.0 / 48.0;
        let mask = disc_mask(h);
        for &p in &[2.0, 3.0] {
            let config = SolverConfig::new(p, h).unwrap();
            let field = solve_torsion(&mask, &config).unwrap();
            let disc = Discretization::new(&mask, p);
            let d = disc.dirichlet_sum(field.field().values());
            let s = disc.source_sum(field.field().values());
            assert!(
                (d - s).abs() / s < 10.0 * config.tolerance.max(1e-12),
                "p={p}: D={d} S={s}"
            );
        }
    }

    #[test]
    fn solution_is_nonnegative_and_bounded_by_the_ball() {
        let h = 1.0 / 64.0;
        let mask = DomainDescriptor::rectangle(1.0, 1.0)
            .unwrap()
            .rasterize(h)
            .unwrap();
        for &p in &[2.0, 4.0] {
            let field = solve_torsion(&mask, &SolverConfig::new(p, h).unwrap()).unwrap();
            let min = field
                .field()
                .values()
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min);
            assert!(min >= -1e-10, "negative value {min}");
            // circumradius of the unit square around its center
            let rho = 0.5f64.hypot(0.5);
            let cap = torsion_ball_analytic(rho, 2, p, 0.0).unwrap();
            let max = field.field().max().unwrap();
            assert!(max <= cap * 1.03, "max {max} vs ball cap {cap}");
        }
    }

    #[test]
    fn energy_trace_is_monotone() {
        let h = 1.0 / 32.0;
        let mask = disc_mask(h);
        let field = solve_torsion(&mask, &SolverConfig::new(4.0, h).unwrap()).unwrap();
        let trace = field.energy_trace();
        assert!(trace.len() > 1);
        for pair in trace.windows(2) {
            assert!(
                pair[1] <= pair[0] + 1e-12 * pair[0].abs(),
                "energy increased: {} -> {}",
                pair[0],
                pair[1]
            );
        }
    }

    #[test]
    fn grid_convergence_of_phi() {
        let exact = 0.5;
        let mut errors = Vec::new();
        for &h in &[1.0 / 32.0, 1.0 / 64.0] {
            let mask = disc_mask(h);
            let field = solve_torsion(&mask, &SolverConfig::new(2.0, h).unwrap()).unwrap();
            errors.push((phi_p(&field).unwrap() - exact).abs());
        }
        let ratio = errors[0] / errors[1];
        assert!(
            (1.4..=2.6).contains(&ratio),
            "error ratio {ratio} (errors {:?})",
            errors
        );
    }

    #[test]
    fn psi_dominates_phi() {
        let h = 1.0 / 48.0;
        let mask = disc_mask(h);
        for &p in &[2.0, 4.0] {
            let field = solve_torsion(&mask, &SolverConfig::new(p, h).unwrap()).unwrap();
            let phi = phi_p(&field).unwrap();
            let psi = psi_p(&field).unwrap();
            assert!(psi >= phi - 1e-12, "psi {psi} < phi {phi}");
        }
    }

    #[test]
    fn constant_field_has_unit_ratios() {
        let mask = GridMask::from_predicate(Point::new(0.0, 0.0), 0.1, 6, 6, |_| true).unwrap();
        let values = vec![2.5; mask.len()];
        let field = TorsionField {
            field: ScalarField::new(mask, values).unwrap(),
            p: 3.0,
            energy_value: 0.0,
            iterations: 0,
            residual: 0.0,
            energy_trace: Vec::new(),
        };
        assert!((phi_p(&field).unwrap() - 1.0).abs() < 1e-12);
        assert!((psi_p(&field).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn one_dimensional_formula_examples() {
        assert!((phi_p_1d(&[1.0, 1.0, 1.0], 2.0).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((phi_p_1d(&[1.0, 0.5], 2.0).unwrap() - 0.5).abs() < 1e-15);
        for &p in &[1.5, 2.0, 7.0] {
            let pp = p / (p - 1.0);
            assert!((phi_p_1d(&[0.7], p).unwrap() - pp / (pp + 1.0)).abs() < 1e-15);
        }
        assert!(matches!(phi_p_1d(&[], 2.0), Err(Error::EmptyList)));
    }

    #[test]
    fn one_dimensional_grid_agrees() {
        for &p in &[2.0, 3.0] {
            let exact = phi_p_1d(&[1.0, 0.5], p).unwrap();
            let grid = phi_p_1d_grid(&[1.0, 0.5], p, 1e-3).unwrap();
            assert!(
                (grid - exact).abs() < 0.01 * exact,
                "p={p}: grid {grid} exact {exact}"
            );
        }
    }

    #[test]
    fn lambda_bounds_on_the_disc() {
        let h = 1.0 / 64.0;
        let mask = disc_mask(h);
        let field = solve_torsion(&mask, &SolverConfig::new(2.0, h).unwrap()).unwrap();
        let upper = lambda_p_upper(&field).unwrap();
        assert!(
            (5.7832..=6.1).contains(&upper),
            "Rayleigh upper bound {upper}"
        );
        let power = lambda_2_power_iteration(&mask, 25).unwrap();
        // The staircase mask reaches about h/2 past the circle, so the
        // discrete eigenvalue sits a bit below the continuum 5.7832.
        assert!(
            (power - 5.7832).abs() < 0.1,
            "power iteration {power} vs Bessel 5.7832"
        );
        assert!(upper >= power - 1e-9);
    }

    #[test]
    fn lambda_is_scale_invariant() {
        let h = 1.0 / 32.0;
        let mask = disc_mask(h);
        let field = solve_torsion(&mask, &SolverConfig::new(3.0, h).unwrap()).unwrap();
        let lambda = lambda_p_upper(&field).unwrap();
        let mut scaled = field.clone();
        let values: Vec<f64> = scaled.field.values().iter().map(|v| 3.0 * v).collect();
        scaled.field = ScalarField::new(scaled.field.grid().clone(), values).unwrap();
        let lambda_scaled = lambda_p_upper(&scaled).unwrap();
        assert!(
            (lambda - lambda_scaled).abs() < 1e-9 * lambda,
            "{lambda} vs {lambda_scaled}"
        );
    }

    #[test]
    fn f_p_is_below_one_for_p_above_dimension() {
        let h = 1.0 / 48.0;
        let mask = disc_mask(h);
        let field = solve_torsion(&mask, &SolverConfig::new(6.0, h).unwrap()).unwrap();
        let value = f_p(&field, std::f64::consts::PI).unwrap();
        assert!(value < 1.0, "F_6(disc) = {value}");
        assert!(value > 0.0);
    }

    #[test]
    fn jensen_examples_and_random_lists() {
        let (lhs, rhs) = jensen_gap(&[1.0, 1.0, 1.0], 3.0).unwrap();
        assert!((lhs - rhs).abs() < 1e-15);
        let (lhs, rhs) = jensen_gap(&[0.0, 2.0], 2.0).unwrap();
        assert!((lhs - 2.0).abs() < 1e-15 && (rhs - 2.0).abs() < 1e-15);
        let mut rng = crate::sampling::rng(4);
        for &p in &[2.0, 3.0, 5.0] {
            for _ in 0..50 {
                let n = rng.gen_range(2..20);
                let values: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..10.0)).collect();
                let (lhs, rhs) = jensen_gap(&values, p).unwrap();
                assert!(lhs >= rhs - 1e-9 * lhs.abs().max(1.0), "p={p}: {lhs} < {rhs}");
            }
        }
        assert!(matches!(jensen_gap(&[1.0], 1.5), Err(Error::InvalidP(_))));
    }

    #[test]
    fn perforated_masks_and_sweep() {
        let h = 1.0 / 128.0;
        let mask = perforated_disc_mask(0.4, h).unwrap();
        let plain = disc_mask(h);
        assert!(mask.inside_count() < plain.inside_count());
        assert!(matches!(
            perforated_disc_mask(0.1, h),
            Err(Error::ResolutionTooCoarse { .. })
        ));
        let sweep = perforated_sweep(&[0.4, 0.3], 2.0, h).unwrap();
        assert_eq!(sweep.len(), 2);
        assert!(
            sweep[1].1 > sweep[0].1,
            "phi should increase as holes shrink: {:?}",
            sweep
        );
    }

    #[test]
    fn config_and_input_validation() {
        assert!(matches!(
            SolverConfig::new(1.0, 0.1),
            Err(Error::InvalidP(_))
        ));
        let mask = GridMask::from_predicate(Point::new(0.0, 0.0), 0.1, 4, 4, |_| false).unwrap();
        let config = SolverConfig::new(2.0, 0.1).unwrap();
        assert!(matches!(
            solve_torsion(&mask, &config),
            Err(Error::EmptyDomain)
        ));
        let mask = GridMask::from_predicate(Point::new(0.0, 0.0), 0.2, 4, 4, |_| true).unwrap();
        assert!(solve_torsion(&mask, &config).is_err());
    }

    #[test]
    fn fixed_step_rule_descends() {
        let h = 1.0 / 16.0;
        let mask = disc_mask(h);
        let mut config = SolverConfig::new(2.5, h).unwrap();
        config.step_rule = StepRule::Fixed;
        config.max_iterations = 20_000;
        config.tolerance = 1e-7;
        let field = solve_torsion(&mask, &config).unwrap();
        assert!(field.field().max().unwrap() > 0.1);
    }

    #[test]
    fn json_round_trip() {
        let h = 1.0 / 16.0;
        let mask = disc_mask(h);
        let field = solve_torsion(&mask, &SolverConfig::new(2.0, h).unwrap()).unwrap();
        let text = field.to_json().unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in ["origin", "spacing", "values", "mask", "p", "energy", "iterations"] {
            assert!(value.get(key).is_some(), "missing {key}");
        }
        let back = TorsionField::from_json(&text).unwrap();
        assert_eq!(back.p(), field.p());
        assert_eq!(back.iterations(), field.iterations());
        assert!((back.energy_value() - field.energy_value()).abs() < 1e-15);
        assert_eq!(back.field().values(), field.field().values());
    }
}
