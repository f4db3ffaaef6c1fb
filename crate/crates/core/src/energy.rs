//! The triangle energy E(Δ) = ∫_Δ d(x, V(Δ)) dx / (|Δ|·r(Δ)), where V(Δ)
//! is the vertex set and r(Δ) the circumradius.
//!
//! For triangles whose circumcenter lies in the closed triangle the integral
//! has a closed form; everything else goes through adaptive quadrature. The
//! energy is scale free and maximized by equilateral triangles, with value
//! 1/3 + ln(3)/4.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::predicates::orient2d;
use crate::geometry::{Point, Triangle};

/// 1/3 + ln(3)/4 ≈ 0.6079864055, the energy of every equilateral triangle.
pub fn equilateral_energy() -> f64 {
    1.0 / 3.0 + 3.0_f64.ln() / 4.0
}

/// Quadrature tolerance used by [`energy`] when the closed form does not
/// apply.
pub const ENERGY_QUAD_TOL: f64 = 1e-7;

const MAX_QUAD_DEPTH: u32 = 18;

/// Below this value of √(4−ℓ²) the ℓ³·ln((2+s)/(2−s)) term of the closed
/// form is taken at its ℓ→2 limit, which is zero.
const DIAMETER_CHORD_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergyMethod {
    ClosedForm,
    Quadrature,
}

impl fmt::Display for EnergyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnergyMethod::ClosedForm => "closed_form",
            EnergyMethod::Quadrature => "quadrature",
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EnergyReport {
    pub triangle: Triangle,
    pub vertex_integral: f64,
    pub area: f64,
    pub circumradius: f64,
    pub energy: f64,
    pub method: EnergyMethod,
}

impl EnergyReport {
    pub fn csv_header() -> &'static str {
        "l1,l2,l3,area,circumradius,energy,method"
    }

    pub fn csv_row(&self) -> String {
        let l = self.triangle.side_lengths();
        format!(
            "{},{},{},{},{},{},{}",
            crate::text::sig12(l[0]),
            crate::text::sig12(l[1]),
            crate::text::sig12(l[2]),
            crate::text::sig12(self.area),
            crate::text::sig12(self.circumradius),
            crate::text::sig12(self.energy),
            self.method,
        )
    }
}

fn unsigned_area(v: [Point; 3]) -> f64 {
    orient2d(v[0], v[1], v[2]).abs() / 2.0
}

fn centroid_rule<F: Fn(Point) -> f64>(v: [Point; 3], f: &F) -> f64 {
    let c = Point::new(
        (v[0].x() + v[1].x() + v[2].x()) / 3.0,
        (v[0].y() + v[1].y() + v[2].y()) / 3.0,
    );
    unsigned_area(v) * f(c)
}

fn midpoint_children(v: [Point; 3]) -> [[Point; 3]; 4] {
    let m01 = v[0].midpoint(v[1]);
    let m12 = v[1].midpoint(v[2]);
    let m20 = v[2].midpoint(v[0]);
    [
        [v[0], m01, m20],
        [m01, v[1], m12],
        [m20, m12, v[2]],
        [m01, m12, m20],
    ]
}

/// Adaptive integration of `f` over the triangle `v0 v1 v2`; `tol` is
/// relative to the integral.
///
/// Each node compares the centroid-rule sum over its four midpoint
/// subdivision children against the sum over the sixteen grandchildren and
/// accepts when the Richardson error estimate fits a budget that halves per
/// level. Looking two levels down keeps creases of `f` from slipping
/// through aligned one-level estimates.
pub fn integrate_triangle<F: Fn(Point) -> f64>(
    v0: Point,
    v1: Point,
    v2: Point,
    f: F,
    tol: f64,
) -> Result<f64> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidParameters(format!(
            "quadrature tolerance must be positive, got {tol}"
        )));
    }
    let v = [v0, v1, v2];
    let area = unsigned_area(v);
    if area <= 0.0 {
        return Err(Error::DegenerateTriangle {
            area,
            tolerance: 0.0,
        });
    }
    let coarse = centroid_rule(v, &f);
    let fine: f64 = midpoint_children(v)
        .iter()
        .map(|k| centroid_rule(*k, &f))
        .sum();
    let estimate = fine + (fine - coarse) / 3.0;
    let budget = tol * estimate.abs().max(f64::MIN_POSITIVE);
    quad_node(v, &f, fine, budget, 0, tol)
}

fn quad_node<F: Fn(Point) -> f64>(
    v: [Point; 3],
    f: &F,
    fine: f64,
    budget: f64,
    depth: u32,
    tol: f64,
) -> Result<f64> {
    let children = midpoint_children(v);
    let mut child_fine = [0.0; 4];
    for (slot, child) in child_fine.iter_mut().zip(children.iter()) {
        *slot = midpoint_children(*child)
            .iter()
            .map(|k| centroid_rule(*k, f))
            .sum();
    }
    let finer: f64 = child_fine.iter().sum();
    let err = (finer - fine) / 3.0;
    if err.abs() <= budget {
        return Ok(finer + err);
    }
    if depth >= MAX_QUAD_DEPTH {
        return Err(Error::ToleranceNotReached {
            tol,
            depth: MAX_QUAD_DEPTH as usize,
        });
    }
    let mut total = 0.0;
    for (child, fine) in children.into_iter().zip(child_fine) {
        total += quad_node(child, f, fine, budget / 2.0, depth + 1, tol)?;
    }
    Ok(total)
}

/// ∫_Δ d(x, V(Δ)) dx for a triangle containing its circumcenter.
///
/// The triangle is rescaled to circumradius 1, where the integral equals
/// (1/12)·Σᵢ [ℓᵢ√(4−ℓᵢ²) + (ℓᵢ³/4)·ln((2+√(4−ℓᵢ²))/(2−√(4−ℓᵢ²)))], and the
/// result is scaled back by r³.
pub fn vertex_distance_integral_closed(t: &Triangle) -> Result<f64> {
    if !t.contains_circumcenter() {
        return Err(Error::ObtuseTriangle);
    }
    let r = t.circumradius();
    let mut sum = 0.0;
    for side in t.side_lengths() {
        let l = side / r;
        let s = (4.0 - l * l).max(0.0).sqrt();
        sum += l * s;
        if s >= DIAMETER_CHORD_TOL {
            sum += (l.powi(3) / 4.0) * ((2.0 + s) / (2.0 - s)).ln();
        }
    }
    Ok(r.powi(3) * sum / 12.0)
}

/// ∫_Δ d(x, V(Δ)) dx by adaptive quadrature; works for any triangle.
pub fn vertex_distance_integral_quadrature(t: &Triangle, tol: f64) -> Result<f64> {
    let v = t.vertices();
    integrate_triangle(
        v[0],
        v[1],
        v[2],
        move |p| v.iter().map(|&q| p.dist(q)).fold(f64::INFINITY, f64::min),
        tol,
    )
}

/// Evaluates E(Δ), preferring the closed form whenever the circumcenter
/// lies in the closed triangle.
pub fn energy(t: &Triangle) -> Result<EnergyReport> {
    let (vertex_integral, method) = if t.contains_circumcenter() {
        (vertex_distance_integral_closed(t)?, EnergyMethod::ClosedForm)
    } else {
        (
            vertex_distance_integral_quadrature(t, ENERGY_QUAD_TOL)?,
            EnergyMethod::Quadrature,
        )
    };
    let area = t.area();
    let circumradius = t.circumradius();
    Ok(EnergyReport {
        triangle: t.clone(),
        vertex_integral,
        area,
        circumradius,
        energy: vertex_integral / (area * circumradius),
        method,
    })
}

/// Splits a strictly obtuse triangle into the two isosceles triangles
/// obtained by reflecting the obtuse vertex across its opposite side.
///
/// Both pieces have circumradius at most r(t); this drives the reduction of
/// the maximality question to isosceles triangles with the circumcenter
/// inside.
pub fn reflect_obtuse(t: &Triangle) -> Result<(Triangle, Triangle)> {
    if !t.is_obtuse() {
        return Err(Error::NotObtuse);
    }
    let sides = t.side_lengths();
    let apex = (0..3)
        .max_by(|&i, &j| sides[i].total_cmp(&sides[j]))
        .expect("three sides");
    let a = t.vertices()[apex];
    let b = t.vertices()[(apex + 1) % 3];
    let c = t.vertices()[(apex + 2) % 3];
    let mirrored = reflect_across(a, b, c);
    let t1 = Triangle::new(a, b, mirrored)?;
    let t2 = Triangle::new(a, c, mirrored)?;
    let bound = t.circumradius() * (1.0 + 1e-12);
    assert!(
        t1.circumradius() <= bound && t2.circumradius() <= bound,
        "reflected circumradius exceeds the original: {} / {} vs {}",
        t1.circumradius(),
        t2.circumradius(),
        t.circumradius()
    );
    Ok((t1, t2))
}

fn reflect_across(p: Point, b: Point, c: Point) -> Point {
    let (dx, dy) = (c.x() - b.x(), c.y() - b.y());
    let len2 = dx * dx + dy * dy;
    let dot = ((p.x() - b.x()) * dx + (p.y() - b.y()) * dy) / len2;
    let (fx, fy) = (b.x() + dot * dx, b.y() + dot * dy);
    Point::new(2.0 * fx - p.x(), 2.0 * fy - p.y())
}

/// L(t) = 2cos²t − (3ln3/2)cos2t − 3cos²t·sin t·ln((1+sin t)/(1−sin t)) on
/// (0, π/2); governs the stationarity analysis of the isosceles profile.
pub fn profile_l(t: f64) -> Result<f64> {
    if !(t > 0.0 && t < std::f64::consts::FRAC_PI_2) {
        return Err(Error::DomainError(t));
    }
    let (s, c) = t.sin_cos();
    let ln3 = 3.0_f64.ln();
    Ok(2.0 * c * c - 1.5 * ln3 * (2.0 * t).cos() - 3.0 * c * c * s * ((1.0 + s) / (1.0 - s)).ln())
}

/// L′(t) = (3ln3−5)sin2t − (9cos³t−6cos t)·ln((1+sin t)/(1−sin t)).
pub fn profile_l_derivative(t: f64) -> Result<f64> {
    if !(t > 0.0 && t < std::f64::consts::FRAC_PI_2) {
        return Err(Error::DomainError(t));
    }
    let (s, c) = t.sin_cos();
    let ln3 = 3.0_f64.ln();
    Ok((3.0 * ln3 - 5.0) * (2.0 * t).sin() - (9.0 * c * c * c - 6.0 * c) * ((1.0 + s) / (1.0 - s)).ln())
}

/// f(ξ) = (1/3)(1 − (ξ²/4)·ln(ξ²/(4−ξ²)) + ln((2+ξ)/(2−ξ))/(2ξ)) on (0, √2):
/// the energy along the inscribed isosceles family with equal sides
/// ℓ = √(4−ξ²) and base ℓξ. The maximum sits at ξ = 1, the equilateral.
pub fn profile_f(xi: f64) -> Result<f64> {
    if !(xi > 0.0 && xi < std::f64::consts::SQRT_2) {
        return Err(Error::DomainError(xi));
    }
    let x2 = xi * xi;
    Ok((1.0 - (x2 / 4.0) * (x2 / (4.0 - x2)).ln() + ((2.0 + xi) / (2.0 - xi)).ln() / (2.0 * xi))
        / 3.0)
}

/// E for side lengths of a triangle inscribed in the unit circle with the
/// circumcenter inside: E = 1/3 + (1/12)·Σℓᵢ³ln((2+sᵢ)/(2−sᵢ)) / Σℓᵢsᵢ with
/// sᵢ = √(4−ℓᵢ²).
pub fn energy_from_sides(l1: f64, l2: f64, l3: f64) -> Result<f64> {
    let not_inscribable = || Error::NotInscribable(l1, l2, l3);
    let ls = [l1, l2, l3];
    for &l in &ls {
        if !(l.is_finite() && l > 0.0 && l <= 2.0) {
            return Err(not_inscribable());
        }
    }
    let perimeter = l1 + l2 + l3;
    let lmax = ls.iter().copied().fold(0.0, f64::max);
    if 2.0 * lmax >= perimeter {
        return Err(not_inscribable());
    }
    let s = perimeter / 2.0;
    let area = (s * (s - l1) * (s - l2) * (s - l3)).sqrt();
    let circumradius = l1 * l2 * l3 / (4.0 * area);
    if (circumradius - 1.0).abs() > 1e-6 {
        return Err(not_inscribable());
    }
    let mut sorted = ls;
    sorted.sort_by(f64::total_cmp);
    if sorted[2] * sorted[2] > sorted[0] * sorted[0] + sorted[1] * sorted[1] + 1e-12 {
        return Err(not_inscribable());
    }
    let mut log_sum = 0.0;
    let mut chord_sum = 0.0;
    for &l in &ls {
        let sq = (4.0 - l * l).max(0.0).sqrt();
        chord_sum += l * sq;
        if sq >= DIAMETER_CHORD_TOL {
            log_sum += l.powi(3) * ((2.0 + sq) / (2.0 - sq)).ln();
        }
    }
    Ok(1.0 / 3.0 + log_sum / (12.0 * chord_sum))
}

/// Golden-section search for the maximum of `f` on [a, b]; returns the
/// abscissa and value.
pub fn golden_section_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    assert!(b > a && tol > 0.0);
    let inv_phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    let mid = (a + b) / 2.0;
    let fm = f(mid);
    (mid, fm)
}
