//! Two-dimensional cluster varieties: classification from the exchange
//! matrix, Betti numbers, weight tables and the necklace geometry used to
//! parametrize integration charts.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::ExactMatrix;

/// Betti numbers `(b0, b1, b2)`.
pub type Betti = [usize; 3];

/// Extended exchange matrix of a rank-2 cluster variety: two rows (one per
/// cluster variable, mutable ones first) and one column per mutable variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeMatrix2D {
    mutable: usize,
    entries: [Vec<i64>; 2],
}

impl ExchangeMatrix2D {
    pub fn new(mutable: usize, entries: [Vec<i64>; 2]) -> Result<Self> {
        if mutable > 2 {
            return Err(Error::UnsupportedExchangeMatrix(format!(
                "{mutable} mutable variables in a 2-variable seed"
            )));
        }
        if entries.iter().any(|row| row.len() != mutable) {
            return Err(Error::UnsupportedExchangeMatrix(format!(
                "expected a 2x{mutable} matrix"
            )));
        }
        for i in 0..mutable {
            for j in 0..mutable {
                if entries[i][j] != -entries[j][i] {
                    return Err(Error::UnsupportedExchangeMatrix(
                        "principal part is not skew-symmetric".into(),
                    ));
                }
            }
        }
        Ok(Self { mutable, entries })
    }

    pub fn type0() -> Self {
        Self { mutable: 0, entries: [Vec::new(), Vec::new()] }
    }

    pub fn type1(b: i64) -> Self {
        Self { mutable: 1, entries: [vec![0], vec![b]] }
    }

    pub fn type2(b: i64) -> Self {
        Self { mutable: 2, entries: [vec![0, b], vec![-b, 0]] }
    }

    pub fn mutable_count(&self) -> usize {
        self.mutable
    }

    pub fn frozen_count(&self) -> usize {
        2 - self.mutable
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries[row][col]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClusterKind {
    Type0,
    TypeI(u32),
    TypeII(u32),
}

/// `lhs[0] * lhs[1] = base^exponent + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceEquation {
    pub lhs: [&'static str; 2],
    pub base: &'static str,
    pub exponent: u32,
}

/// `Σ lhs = Σ rhs` among sphere classes in `H_2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyRelation {
    pub lhs: Vec<String>,
    pub rhs: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClusterSurfaceSpec {
    pub kind: ClusterKind,
    pub equations: Vec<SurfaceEquation>,
    /// Coordinates required to be nonzero on the surface.
    pub nonvanishing: Vec<&'static str>,
    /// Sphere labels of each necklace (`S_1..S_b`, then `T_1..T_b`).
    pub necklaces: Vec<Vec<String>>,
    pub relations: Vec<HomologyRelation>,
}

fn labels(prefix: &str, b: u32) -> Vec<String> {
    (1..=b).map(|j| format!("{prefix}_{j}")).collect()
}

impl ClusterSurfaceSpec {
    pub fn new(kind: ClusterKind) -> Self {
        match kind {
            ClusterKind::Type0 => Self {
                kind,
                equations: Vec::new(),
                nonvanishing: vec!["x", "y"],
                necklaces: Vec::new(),
                relations: Vec::new(),
            },
            ClusterKind::TypeI(b) => Self {
                kind,
                equations: vec![SurfaceEquation { lhs: ["x", "x'"], base: "y", exponent: b }],
                nonvanishing: vec!["y"],
                necklaces: vec![labels("S", b)],
                relations: Vec::new(),
            },
            ClusterKind::TypeII(b) => Self {
                kind,
                equations: vec![
                    SurfaceEquation { lhs: ["x", "x'"], base: "y", exponent: b },
                    SurfaceEquation { lhs: ["y", "y'"], base: "x", exponent: b },
                ],
                nonvanishing: Vec::new(),
                necklaces: vec![labels("S", b), labels("T", b)],
                relations: vec![HomologyRelation { lhs: labels("S", b), rhs: labels("T", b) }],
            },
        }
    }

    pub fn sphere_count(&self) -> usize {
        self.necklaces.iter().map(Vec::len).sum()
    }

    /// Labels of the quotient basis of `H_2`: every sphere except the last
    /// of each necklace after the first (one dropped per relation).
    pub fn homology_basis(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, necklace) in self.necklaces.iter().enumerate() {
            let keep = if i < self.necklaces.len() - self.relations.len() {
                necklace.len()
            } else {
                necklace.len() - 1
            };
            out.extend(necklace[..keep].iter().cloned());
        }
        out
    }
}

/// Classifies a rank-2 cluster variety by its number of frozen variables.
pub fn classify(x: &ExchangeMatrix2D) -> Result<ClusterSurfaceSpec> {
    let kind = match x.mutable {
        0 => ClusterKind::Type0,
        1 => {
            let b = x.entries[1][0];
            if b <= 0 {
                return Err(Error::UnsupportedExchangeMatrix(format!(
                    "type I requires a positive frozen entry, got {b}"
                )));
            }
            ClusterKind::TypeI(to_param(b)?)
        }
        2 => {
            // relabeling x <-> y negates the principal part
            let b = x.entries[0][1].abs();
            if b == 0 {
                return Err(Error::UnsupportedExchangeMatrix(
                    "type II requires a nonzero principal part".into(),
                ));
            }
            ClusterKind::TypeII(to_param(b)?)
        }
        _ => unreachable!("validated on construction"),
    };
    Ok(ClusterSurfaceSpec::new(kind))
}

fn to_param(b: i64) -> Result<u32> {
    u32::try_from(b).map_err(|_| Error::UnsupportedExchangeMatrix(format!("parameter {b} too large")))
}

pub fn betti(spec: &ClusterSurfaceSpec) -> Betti {
    match spec.kind {
        ClusterKind::Type0 => [1, 2, 1],
        ClusterKind::TypeI(_) | ClusterKind::TypeII(_) => {
            let b1 = usize::from(spec.nonvanishing.len() == 1);
            [1, b1, spec.sphere_count() - spec.relations.len()]
        }
    }
}

/// Betti numbers of the type II surface assembled from the cover by two
/// type I charts `U = {y ≠ 0}`, `V = {x ≠ 0}` meeting in the torus.
///
/// The restriction maps `H^d(U) ⊕ H^d(V) → H^d(U ∩ V)` are written out
/// explicitly (difference convention) and
/// `b_d = dim coker r_{d-1} + dim ker r_d`.
pub fn betti_via_mayer_vietoris(b: u32) -> Result<Betti> {
    if b == 0 {
        return Err(Error::DomainError("b must be positive".into()));
    }
    let b = b as usize;
    let piece = betti(&ClusterSurfaceSpec::new(ClusterKind::TypeI(b as u32)));
    let overlap = betti(&ClusterSurfaceSpec::new(ClusterKind::Type0));

    // H^0: constants restrict to constants.
    let r0 = ExactMatrix::from_i64_rows(&[vec![1, -1]])?;
    // H^1: (dlog y on U, dlog x on V) -> torus basis (dlog x, dlog y).
    let r1 = ExactMatrix::from_i64_rows(&[vec![0, -1], vec![1, 0]])?;
    // H^2: γ_U ↦ γ, γ_V ↦ γ; the classes y^c γ, x^c γ (c ≥ 1) are exact on the torus.
    let mut row = vec![0i64; 2 * b];
    row[0] = 1;
    row[b] = -1;
    let r2 = ExactMatrix::from_i64_rows(&[row])?;

    let maps = [r0, r1, r2];
    for (d, m) in maps.iter().enumerate() {
        debug_assert_eq!(m.cols(), 2 * piece[d]);
        debug_assert_eq!(m.rows(), overlap[d]);
    }
    let mut out = [0usize; 3];
    for d in 0..3 {
        let ker = maps[d].cols() - maps[d].rank();
        let coker_prev = if d == 0 { 0 } else { maps[d - 1].rows() - maps[d - 1].rank() };
        out[d] = coker_prev + ker;
    }
    Ok(out)
}

/// Dimensions `dim Gr^W_w H^d` for `d in 0..3`, `w in 0..5`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct WeightTable(pub [[usize; 5]; 3]);

impl WeightTable {
    pub fn get(&self, degree: usize, weight: usize) -> usize {
        self.0[degree][weight]
    }

    pub fn row_sums(&self) -> Betti {
        self.0.map(|row| row.iter().sum())
    }

    /// `dim W_w H^d`, clamping `w` to the top weight.
    pub fn cumulative(&self, degree: usize, weight: usize) -> usize {
        self.0[degree][..=weight.min(4)].iter().sum()
    }
}

pub fn weight_table(spec: &ClusterSurfaceSpec) -> WeightTable {
    let w2 = match spec.kind {
        ClusterKind::Type0 => 0,
        _ => spec.sphere_count() - spec.relations.len() - 1,
    };
    let h1 = match spec.kind {
        ClusterKind::Type0 => [0, 0, 2, 0, 0],
        ClusterKind::TypeI(_) => [0, 0, 1, 0, 0],
        ClusterKind::TypeII(_) => [0; 5],
    };
    WeightTable([[1, 0, 0, 0, 0], h1, [0, 0, w2, 0, 1]])
}

/// Moduli `(|x|, |x'|)` on the fiber of `(|x|² - |x'|², log|y|)` over
/// `(s, t)` above the point `y`, so that `|x|² - |x'|² = s` and
/// `|x x'| = |y^b + 1|`.
pub fn fiber_radii(b: u32, s: f64, t: f64, y: Complex64) -> Result<(f64, f64)> {
    let expected = t.exp();
    if !s.is_finite() || !t.is_finite() || (y.norm() - expected).abs() > 1e-9 * expected.max(1.0) {
        return Err(Error::DomainError(format!(
            "|y| = {} is inconsistent with t = {t}",
            y.norm()
        )));
    }
    let a = (y.powu(b) + 1.0).norm();
    let q = s.hypot(2.0 * a);
    if q == 0.0 {
        return Ok((0.0, 0.0));
    }
    // Take the larger root from the cancellation-free branch, recover the other from the product.
    if s >= 0.0 {
        let big = ((s + q) / 2.0).sqrt();
        Ok((big, a / big))
    } else {
        let big = ((q - s) / 2.0).sqrt();
        Ok((a / big, big))
    }
}

/// Chart of the necklace sphere `S_j` on the central fiber: `θ` is the
/// angle of `x`, `φ` the angle of `y`, and the poles at the ends of the
/// `φ` range (where `y^b = -1`) are excluded.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SphereChart {
    pub b: u32,
    pub j: u32,
    pub theta: (f64, f64),
    pub phi: (f64, f64),
    /// +1 when `(θ, φ)` is positively oriented, i.e. `∫_{S_j} γ = +1/b`.
    pub orientation: i8,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartPoint {
    pub x: Complex64,
    pub x_prime: Complex64,
    pub y: Complex64,
}

impl SphereChart {
    pub fn point(&self, theta: f64, phi: f64) -> ChartPoint {
        let y = Complex64::from_polar(1.0, phi);
        let rhs = y.powu(self.b) + 1.0;
        let x = Complex64::from_polar(rhs.norm().sqrt(), theta);
        let x_prime = if x.norm() == 0.0 { Complex64::new(0.0, 0.0) } else { rhs / x };
        ChartPoint { x, x_prime, y }
    }

    pub fn phi_width(&self) -> f64 {
        self.phi.1 - self.phi.0
    }
}

pub fn sphere_chart(b: u32, j: u32) -> Result<SphereChart> {
    if b == 0 || j == 0 || j > b {
        return Err(Error::IndexError(format!("sphere {j} of a {b}-necklace")));
    }
    let bf = b as f64;
    let jf = j as f64;
    Ok(SphereChart {
        b,
        j,
        theta: (0.0, 2.0 * PI),
        phi: ((2.0 * jf - 1.0) * PI / bf, (2.0 * jf + 1.0) * PI / bf),
        orientation: 1,
    })
}
