//! Period integrals `∫_{S_j} y^c γ` over the necklace spheres: the exact
//! cyclotomic closed form, a tensor-product quadrature of the pulled-back
//! form over the sphere charts, and the weight-2 subspace of `H^2` obtained
//! from them.
//!
//! Classes in `H^2` are written in sphere-dual coordinates: a class `ω` is
//! the vector `(∫_{S_1} ω, …, ∫_{S_b} ω)`, so `∫_Z` for the whole necklace
//! `Z = S_1 + … + S_b` is the all-ones functional.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::cluster::{sphere_chart, SphereChart};
use crate::error::{Error, Result};
use crate::exactlin::{rational_descent, CyclotomicElement, ExactMatrix, Field, FieldElement, Subspace};

/// Largest `b` whose field `Q(ζ_{2b})` fits the cyclotomic order cap.
pub const MAX_B: u32 = 64;

/// Bound on the integrated `i·dlog|x| ∧ dφ` part of the pullback, which
/// vanishes identically on the chart.
pub const REGULAR_TERM_TOL: f64 = 1e-9;

/// Exact and floating values of one period.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedPeriod {
    pub b: u32,
    pub c: u32,
    pub j: u32,
    /// `1/b` for `c = 0`; otherwise `2πic · ∫_{S_j} y^c γ = ζ^{(2j+1)c} - ζ^{(2j-1)c}` in `Q(ζ_{2b})`.
    pub value: FieldElement,
    /// `∫_{S_j} y^c γ` itself.
    pub complex: Complex64,
}

impl NormalizedPeriod {
    /// The factor `2πic` relating `value` to `complex` (1 when `c = 0`).
    pub fn normalization(&self) -> Complex64 {
        if self.c == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 2.0 * PI * self.c as f64)
        }
    }
}

pub fn period_field(b: u32) -> Result<Field> {
    check_b(b)?;
    Field::cyclotomic(2 * b)
}

fn check_b(b: u32) -> Result<()> {
    if b == 0 || b > MAX_B {
        return Err(Error::DomainError(format!("b = {b} outside the supported range 1..={MAX_B}")));
    }
    Ok(())
}

fn check_indices(b: u32, c: u32, j: u32) -> Result<()> {
    check_b(b)?;
    if j == 0 || j > b || c >= b {
        return Err(Error::IndexError(format!("(c, j) = ({c}, {j}) for b = {b}")));
    }
    Ok(())
}

pub fn closed_form_period(b: u32, c: u32, j: u32) -> Result<NormalizedPeriod> {
    check_indices(b, c, j)?;
    if c == 0 {
        let value = FieldElement::rational(1, b as i64);
        let complex = value.to_complex();
        return Ok(NormalizedPeriod { b, c, j, value, complex });
    }
    let Field::Cyclotomic(field) = period_field(b)? else {
        unreachable!("period fields are cyclotomic")
    };
    let (c64, j64) = (c as i64, j as i64);
    let upper = CyclotomicElement::generator_power(&field, (2 * j64 + 1) * c64);
    let lower = CyclotomicElement::generator_power(&field, (2 * j64 - 1) * c64);
    let value = FieldElement::Cyclotomic(upper.try_sub(&lower)?);
    let mut p = NormalizedPeriod { b, c, j, value, complex: Complex64::new(0.0, 0.0) };
    p.complex = p.value.to_complex() / p.normalization();
    Ok(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QuadratureGrid {
    pub n_theta: usize,
    pub n_phi: usize,
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self { n_theta: 512, n_phi: 512 }
    }
}

impl QuadratureGrid {
    pub fn validate(&self) -> Result<()> {
        if self.n_theta < 8 || self.n_phi < 8 || self.n_phi % 4 != 0 {
            return Err(Error::DomainError(format!(
                "grid {}x{} must have both sides >= 8 and n_phi divisible by 4",
                self.n_theta, self.n_phi
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureEstimate {
    pub value: Complex64,
    /// Difference between the last two Richardson levels.
    pub error_estimate: f64,
    /// Integral of the `i·dlog|x| ∧ dφ` part alone.
    pub regular_term: Complex64,
}

const FD_STEP: f64 = 1e-4;

/// `(∂θ log x, ∂φ log x, ∂θ log y, ∂φ log y)` by central differences of
/// logarithms of ratios, which avoids branch cuts.
fn log_jacobian(chart: &SphereChart, theta: f64, phi: f64) -> [Complex64; 4] {
    let h = FD_STEP;
    let t_plus = chart.point(theta + h, phi);
    let t_minus = chart.point(theta - h, phi);
    let p_plus = chart.point(theta, phi + h);
    let p_minus = chart.point(theta, phi - h);
    let d = |a: Complex64, b: Complex64| (a / b).ln() / (2.0 * h);
    [
        d(t_plus.x, t_minus.x),
        d(p_plus.x, p_minus.x),
        d(t_plus.y, t_minus.y),
        d(p_plus.y, p_minus.y),
    ]
}

/// Midpoint-in-φ, trapezoid-in-θ sums of the `dθ ∧ dφ` coefficients of the
/// pullback of `y^c γ`: returns (full form, regular part).
fn chart_sum(chart: &SphereChart, c: u32, n_theta: usize, n_phi: usize) -> (Complex64, Complex64) {
    let dtheta = (chart.theta.1 - chart.theta.0) / n_theta as f64;
    let dphi = chart.phi_width() / n_phi as f64;
    let norm = Complex64::new(0.0, 2.0 * PI).powu(2).inv();
    let mut full = Complex64::new(0.0, 0.0);
    let mut regular = Complex64::new(0.0, 0.0);
    for p in 0..n_phi {
        // half-cell offset keeps every node off the poles where x = x' = 0
        let phi = chart.phi.0 + (p as f64 + 0.5) * dphi;
        let yc = Complex64::from_polar(1.0, c as f64 * phi);
        let mut row_full = Complex64::new(0.0, 0.0);
        let mut row_regular = Complex64::new(0.0, 0.0);
        for t in 0..n_theta {
            let theta = chart.theta.0 + t as f64 * dtheta;
            let [xt, xp, yt, yp] = log_jacobian(chart, theta, phi);
            // dlog x ∧ dlog y = (d ln|x| + i d arg x) ∧ dlog y
            let reg = Complex64::new(xt.re, 0.0) * yp - Complex64::new(xp.re, 0.0) * yt;
            let ang = Complex64::new(0.0, xt.im) * yp - Complex64::new(0.0, xp.im) * yt;
            row_full += reg + ang;
            row_regular += reg;
        }
        full += yc * row_full;
        regular += yc * row_regular;
    }
    let w = norm * dtheta * dphi * chart.orientation as f64;
    (full * w, regular * w)
}

/// Integrates `y^c γ` over the chart of `S_j` with Richardson extrapolation
/// over `n_phi/4`, `n_phi/2` and `n_phi` midpoint levels.
pub fn quadrature_period(b: u32, c: u32, j: u32, grid: QuadratureGrid, tol: f64) -> Result<QuadratureEstimate> {
    check_indices(b, c, j)?;
    grid.validate()?;
    let chart = sphere_chart(b, j)?;
    let levels: Vec<(Complex64, Complex64)> = [grid.n_phi / 4, grid.n_phi / 2, grid.n_phi]
        .iter()
        .map(|&n| chart_sum(&chart, c, grid.n_theta, n))
        .collect();
    let r1_coarse = (levels[1].0 * 4.0 - levels[0].0) / 3.0;
    let r1_fine = (levels[2].0 * 4.0 - levels[1].0) / 3.0;
    let r2 = (r1_fine * 16.0 - r1_coarse) / 15.0;
    let error_estimate = (r2 - r1_fine).norm();
    let regular_term = levels[2].1;
    if !(error_estimate <= tol) {
        return Err(Error::QuadratureDiverged { estimate: error_estimate, tol });
    }
    Ok(QuadratureEstimate { value: r2, error_estimate, regular_term })
}

/// Quadrature cross-check of every period of a necklace against the closed form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureSummary {
    pub max_abs_deviation: f64,
    pub max_error_estimate: f64,
    pub max_regular_term: f64,
    pub grid: QuadratureGrid,
}

pub fn quadrature_cross_check(b: u32, grid: QuadratureGrid, tol: f64) -> Result<QuadratureSummary> {
    check_b(b)?;
    grid.validate()?;
    let pairs: Vec<(u32, u32)> = (0..b).flat_map(|c| (1..=b).map(move |j| (c, j))).collect();
    let results: Vec<(f64, f64, f64)> = pairs
        .par_iter()
        .map(|&(c, j)| {
            let q = quadrature_period(b, c, j, grid, tol)?;
            let exact = closed_form_period(b, c, j)?;
            Ok(((q.value - exact.complex).norm(), q.error_estimate, q.regular_term.norm()))
        })
        .collect::<Result<_>>()?;
    let max = |f: fn(&(f64, f64, f64)) -> f64| results.iter().map(f).fold(0.0, f64::max);
    Ok(QuadratureSummary {
        max_abs_deviation: max(|r| r.0),
        max_error_estimate: max(|r| r.1),
        max_regular_term: max(|r| r.2),
        grid,
    })
}

/// `∫ γ` over the real torus `|x| = |y| = 1` of `C* × C*` by the same
/// pullback machinery; the exact value is 1.
pub fn torus_pairing_quadrature(grid: QuadratureGrid) -> Result<f64> {
    grid.validate()?;
    let h = FD_STEP;
    let (n1, n2) = (grid.n_theta, grid.n_phi);
    let (d1, d2) = (2.0 * PI / n1 as f64, 2.0 * PI / n2 as f64);
    let point = |a: f64, b: f64| (Complex64::from_polar(1.0, a), Complex64::from_polar(1.0, b));
    let d = |a: Complex64, b: Complex64| (a / b).ln() / (2.0 * h);
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..n1 {
        for k in 0..n2 {
            let (a, b) = (i as f64 * d1, k as f64 * d2);
            let (x1p, y1p) = point(a + h, b);
            let (x1m, y1m) = point(a - h, b);
            let (x2p, y2p) = point(a, b + h);
            let (x2m, y2m) = point(a, b - h);
            sum += d(x1p, x1m) * d(y2p, y2m) - d(x2p, x2m) * d(y1p, y1m);
        }
    }
    let total = sum * d1 * d2 / Complex64::new(0.0, 2.0 * PI).powu(2);
    Ok(total.re)
}

/// `P[c][j-1]` for `c in 0..b`, `j in 1..=b`.
#[derive(Clone, Debug)]
pub struct PeriodMatrix {
    pub b: u32,
    pub field: Field,
    pub entries: Vec<Vec<NormalizedPeriod>>,
}

impl PeriodMatrix {
    /// Normalized rows `c in rows` as an exact matrix over `Q(ζ_{2b})`.
    pub fn exact_rows(&self, rows: std::ops::Range<u32>) -> Result<ExactMatrix> {
        let data = rows
            .map(|c| self.entries[c as usize].iter().map(|p| p.value.clone()).collect())
            .collect();
        ExactMatrix::from_rows(&self.field, self.b as usize, data)
    }

    pub fn row_sum(&self, c: u32) -> Result<FieldElement> {
        self.entries[c as usize]
            .iter()
            .try_fold(self.field.zero(), |acc, p| acc.checked_add(&p.value))
    }
}

pub fn period_matrix(b: u32) -> Result<PeriodMatrix> {
    let field = period_field(b)?;
    let entries = (0..b)
        .map(|c| (1..=b).map(|j| closed_form_period(b, c, j)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let m = PeriodMatrix { b, field, entries };
    if m.row_sum(0)? != m.field.one() {
        return Err(Error::InternalMismatch("periods of γ do not sum to 1".into()));
    }
    for c in 1..b {
        if !m.row_sum(c)?.is_zero() {
            return Err(Error::InternalMismatch(format!("period row {c} does not telescope")));
        }
    }
    Ok(m)
}

/// `ker(1, …, 1)` on `Q^n`.
pub fn total_class_kernel(n: usize) -> Subspace {
    let ones = vec![FieldElement::from(1); n];
    ExactMatrix::from_rows(&Field::Rational, n, vec![ones])
        .expect("rational row")
        .kernel()
}

/// The two independent routes to `W_2 H^2` of the type I surface.
#[derive(Clone, Debug, PartialEq)]
pub struct Weight2Routes {
    /// Rational descent of the span of the `c ≥ 1` period rows.
    pub via_periods: Subspace,
    /// Kernel of `∫_Z`.
    pub via_functional: Subspace,
}

pub fn weight2_routes(b: u32) -> Result<Weight2Routes> {
    let m = period_matrix(b)?;
    let rows = m.exact_rows(1..b)?;
    let span = Subspace::span(&m.field, b as usize, rows.row_vectors())?;
    Ok(Weight2Routes {
        via_periods: rational_descent(&span)?,
        via_functional: total_class_kernel(b as usize),
    })
}

pub fn weight2_subspace(b: u32) -> Result<Subspace> {
    let routes = weight2_routes(b)?;
    if routes.via_periods != routes.via_functional {
        return Err(Error::InternalMismatch(format!(
            "period span and ker ∫_Z disagree for b = {b}"
        )));
    }
    Ok(routes.via_functional)
}

/// `W_2 H^2` of the type II surface in the coordinates
/// `(∫_{S_1}, …, ∫_{S_b}, ∫_{T_1}, …, ∫_{T_{b-1}})`, assembled as
/// `W_2 H^2(U) ⊕ W_2 H^2(V)` for the two type I charts.
pub fn weight2_subspace_typeii(b: u32) -> Result<Subspace> {
    let piece = weight2_subspace(b)?;
    let n = b as usize;
    let ambient = 2 * n - 1;
    let zero = FieldElement::from(0);
    let mut vectors = Vec::with_capacity(2 * piece.dim());
    for v in piece.basis() {
        // classes from U pair with the S necklace only
        let mut w = v.clone();
        w.resize(ambient, zero.clone());
        vectors.push(w);
        // classes from V pair with the T necklace only; ∫_{T_b} is implied by the relation
        let mut w = vec![zero.clone(); n];
        w.extend(v[..n - 1].iter().cloned());
        vectors.push(w);
    }
    Subspace::span(&Field::Rational, ambient, vectors)
}

/// `∫_{S_1+…+S_b}` and `∫_{T_1+…+T_b}` in the type II coordinates; they
/// coincide because of the relation `ΣS = ΣT`.
pub fn typeii_total_functionals(b: u32) -> [Vec<FieldElement>; 2] {
    let n = b as usize;
    let s: Vec<FieldElement> = (0..2 * n - 1).map(|i| FieldElement::from(i64::from(i < n))).collect();
    // ∫_{T_b} = Σ ∫_{S_i} - Σ_{i<b} ∫_{T_i}, so Σ_i ∫_{T_i} = Σ ∫_{S_i}
    let t = s.clone();
    [s, t]
}
