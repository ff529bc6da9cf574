//! Runs both sides for one surface, compares the perverse filtration of the
//! fibration with the weight filtration of the cluster surface, and renders
//! the outcome as JSON or Markdown.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::cluster::{
    betti, betti_via_mayer_vietoris, classify, weight_table, ClusterSurfaceSpec, ExchangeMatrix2D, WeightTable,
};
use crate::error::{Error, Result};
use crate::exactlin::{FieldElement, Subspace};
use crate::fibration::{
    compact_support_image_dim, compact_support_image_rank, component_span, config_0, config_i, config_ii,
    fiber_pairing_kernel, fiber_pairing_kernel_flipped, perverse_table, relative_hl_symmetric, skyscraper_dim,
    transport, FibrationConfig, PerverseTable,
};
use crate::periods::{
    closed_form_period, period_matrix, quadrature_cross_check, torus_pairing_quadrature, typeii_total_functionals,
    weight2_routes, weight2_subspace_typeii, QuadratureGrid, REGULAR_TERM_TOL,
};

pub const MAX_B: u32 = crate::periods::MAX_B;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Family {
    #[serde(rename = "0")]
    Zero,
    I,
    II,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(Family::Zero),
            "I" | "i" | "1" => Ok(Family::I),
            "II" | "ii" | "2" => Ok(Family::II),
            other => Err(Error::InvalidConfig(format!("unknown family {other:?}; expected 0, I or II"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Zero => "0",
            Family::I => "I",
            Family::II => "II",
        })
    }
}

/// A single-entry corruption applied before the checks run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fault {
    Weight { degree: usize, weight: usize, delta: i64 },
    Perverse { degree: usize, k: usize, delta: i64 },
    Monodromy { fiber: usize, row: usize, col: usize, delta: i64 },
    Intersection { fiber: usize, row: usize, col: usize, delta: i64 },
}

impl FromStr for Fault {
    type Err = Error;

    /// `weight:d:w:δ`, `perverse:d:k:δ`, `monodromy:i:r:c:δ` or
    /// `intersection:i:r:c:δ`, with 0-based indices.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("malformed fault {s:?}"));
        let parts: Vec<&str> = s.trim().split(':').collect();
        let idx = |i: usize| parts.get(i).and_then(|p| p.parse::<usize>().ok()).ok_or_else(bad);
        let delta = |i: usize| {
            parts
                .get(i)
                .and_then(|p| p.trim_start_matches('+').parse::<i64>().ok())
                .filter(|&d| d != 0)
                .ok_or_else(bad)
        };
        let fault = match (parts.first().copied(), parts.len()) {
            (Some("weight"), 4) => Fault::Weight { degree: idx(1)?, weight: idx(2)?, delta: delta(3)? },
            (Some("perverse"), 4) => Fault::Perverse { degree: idx(1)?, k: idx(2)?, delta: delta(3)? },
            (Some("monodromy"), 5) => Fault::Monodromy { fiber: idx(1)?, row: idx(2)?, col: idx(3)?, delta: delta(4)? },
            (Some("intersection"), 5) => {
                Fault::Intersection { fiber: idx(1)?, row: idx(2)?, col: idx(3)?, delta: delta(4)? }
            }
            _ => return Err(bad()),
        };
        Ok(fault)
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Fault::Weight { degree, weight, delta } => write!(f, "weight:{degree}:{weight}:{delta:+}"),
            Fault::Perverse { degree, k, delta } => write!(f, "perverse:{degree}:{k}:{delta:+}"),
            Fault::Monodromy { fiber, row, col, delta } => write!(f, "monodromy:{fiber}:{row}:{col}:{delta:+}"),
            Fault::Intersection { fiber, row, col, delta } => {
                write!(f, "intersection:{fiber}:{row}:{col}:{delta:+}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub family: Family,
    /// Ignored for family 0.
    pub b: Option<u32>,
    pub grid: QuadratureGrid,
    pub tol: f64,
    pub faults: Vec<Fault>,
}

impl RunConfig {
    pub fn new(family: Family, b: Option<u32>) -> Self {
        Self { family, b, grid: QuadratureGrid::default(), tol: 1e-8, faults: Vec::new() }
    }

    /// The necklace size, validated against the supported range.
    pub fn necklace_size(&self) -> Result<u32> {
        match (self.family, self.b) {
            (Family::Zero, _) => Ok(0),
            (_, None) => Err(Error::InvalidConfig(format!("family {} needs --b", self.family))),
            (_, Some(b)) if (1..=MAX_B).contains(&b) => Ok(b),
            (_, Some(b)) => Err(Error::InvalidConfig(format!("b = {b} outside the supported range 1..={MAX_B}"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.necklace_size()?;
        self.grid.validate().map_err(|e| Error::InvalidConfig(e.to_string()))?;
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(Error::InvalidConfig(format!("tolerance {} must be positive", self.tol)));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputEcho {
    pub family: Family,
    pub b: Option<u32>,
    pub quad_theta: usize,
    pub quad_phi: usize,
    pub tol: f64,
    pub faults: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodCheck {
    pub max_abs_deviation: f64,
    pub grid: QuadratureGrid,
}

/// `P_1 H^2` against `W_2 H^2` in the sphere-dual coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceMatch {
    pub w2_dim: usize,
    pub p1_dim: usize,
    pub w2_basis: Vec<Vec<String>>,
    pub p1_basis: Vec<Vec<String>>,
    /// Signs `ε` for which the match holds under `Z ↦ εF`.
    pub signs: Vec<i8>,
}

impl SubspaceMatch {
    pub fn holds(&self) -> bool {
        self.signs == [1, -1]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PWReport {
    pub input: InputEcho,
    pub weight_table: WeightTable,
    pub perverse_table: PerverseTable,
    pub verdicts: BTreeMap<String, bool>,
    pub period_check: PeriodCheck,
    pub pass: bool,
    #[serde(skip)]
    pub subspace_match: SubspaceMatch,
}

impl PWReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn failed_verdicts(&self) -> Vec<&str> {
        self.verdicts.iter().filter(|(_, &v)| !v).map(|(k, _)| k.as_str()).collect()
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let b = self.input.b.map_or("-".to_string(), |b| b.to_string());
        let _ = writeln!(s, "# P=W check: family {}, b = {b}\n", self.input.family);
        if !self.input.faults.is_empty() {
            let _ = writeln!(s, "Injected faults: {}\n", self.input.faults.join(", "));
        }
        let _ = writeln!(s, "## Weight numbers dim Gr^W_w H^d\n");
        let _ = writeln!(s, "| d | w=0 | w=1 | w=2 | w=3 | w=4 |");
        let _ = writeln!(s, "|---|---|---|---|---|---|");
        for (d, row) in self.weight_table.0.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "| H^{d} | {} |", cells.join(" | "));
        }
        let _ = writeln!(s, "\n## Perverse numbers dim Gr^P_k H^d\n");
        let _ = writeln!(s, "| d | k=0 | k=1 | k=2 |");
        let _ = writeln!(s, "|---|---|---|---|");
        for (d, row) in self.perverse_table.0.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "| H^{d} | {} |", cells.join(" | "));
        }
        let m = &self.subspace_match;
        let _ = writeln!(s, "\n## P_1 H^2 vs W_2 H^2\n");
        let _ = writeln!(s, "- dim W_2 H^2 = {}, dim P_1 H^2 = {}", m.w2_dim, m.p1_dim);
        let _ = writeln!(s, "- W_2 basis: {}", format_basis(&m.w2_basis));
        let _ = writeln!(s, "- P_1 basis: {}", format_basis(&m.p1_basis));
        let signs: Vec<String> = m.signs.iter().map(|e| format!("{e:+}")).collect();
        let _ = writeln!(s, "- match holds for Z -> eF with e in {{{}}}", signs.join(", "));
        let _ = writeln!(s, "\n## Periods\n");
        let _ = writeln!(
            s,
            "- grid {}x{}, max |quadrature - closed form| = {:.3e}",
            self.period_check.grid.n_theta, self.period_check.grid.n_phi, self.period_check.max_abs_deviation
        );
        let _ = writeln!(s, "\n## Verdicts\n");
        for (name, ok) in &self.verdicts {
            let _ = writeln!(s, "- {} {name}", if *ok { "PASS" } else { "FAIL" });
        }
        let _ = writeln!(s, "\n**Overall: {}**", if self.pass { "PASS" } else { "FAIL" });
        s
    }
}

fn format_basis(basis: &[Vec<String>]) -> String {
    if basis.is_empty() {
        return "{}".into();
    }
    let vs: Vec<String> = basis.iter().map(|v| format!("({})", v.join(", "))).collect();
    vs.join(", ")
}

fn basis_strings(s: &Subspace) -> Vec<Vec<String>> {
    s.basis().iter().map(|v| v.iter().map(ToString::to_string).collect()).collect()
}

pub fn cluster_spec(family: Family, b: u32) -> Result<ClusterSurfaceSpec> {
    let x = match family {
        Family::Zero => ExchangeMatrix2D::type0(),
        Family::I => ExchangeMatrix2D::type1(b as i64),
        Family::II => ExchangeMatrix2D::type2(b as i64),
    };
    classify(&x)
}

pub fn fibration_config(family: Family, b: u32) -> Result<FibrationConfig> {
    match family {
        Family::Zero => Ok(config_0()),
        Family::I => config_i(b),
        Family::II => config_ii(b),
    }
}

/// `[k][d]`: `dim P_k H^d = dim W_{2k} H^d = dim W_{2k+1} H^d`.
pub fn compare_tables(w: &WeightTable, p: &PerverseTable) -> [[bool; 3]; 3] {
    let mut out = [[false; 3]; 3];
    for (k, row) in out.iter_mut().enumerate() {
        for (d, cell) in row.iter_mut().enumerate() {
            let pk = p.cumulative(d, k);
            *cell = pk == w.cumulative(d, 2 * k) && pk == w.cumulative(d, 2 * k + 1);
        }
    }
    out
}

pub fn check_pw_tables(family: Family, b: u32) -> Result<[[bool; 3]; 3]> {
    let b = if family == Family::Zero { 0 } else { b };
    let w = weight_table(&cluster_spec(family, b)?);
    let p = perverse_table(&fibration_config(family, b)?)?;
    Ok(compare_tables(&w, &p))
}

/// `W_2 H^2` in sphere-dual coordinates together with every total-class
/// functional it must be the kernel of.
fn weight2_side(family: Family, b: u32) -> Result<(Subspace, Vec<Vec<FieldElement>>)> {
    match family {
        Family::Zero => Ok((Subspace::zero(&crate::exactlin::Field::Rational, 1), vec![vec![1.into()]])),
        Family::I => {
            let routes = weight2_routes(b)?;
            if routes.via_periods != routes.via_functional {
                return Err(Error::InternalMismatch("weight-2 routes disagree".into()));
            }
            Ok((routes.via_functional, vec![vec![1.into(); b as usize]]))
        }
        Family::II => Ok((weight2_subspace_typeii(b)?, typeii_total_functionals(b).to_vec())),
    }
}

fn kernel_of(functional: &[FieldElement]) -> Subspace {
    crate::exactlin::ExactMatrix::from_rows(&crate::exactlin::Field::Rational, functional.len(), vec![functional.to_vec()])
        .expect("single row")
        .kernel()
}

fn subspace_match_for(family: Family, b: u32, cfg: &FibrationConfig) -> Result<SubspaceMatch> {
    let (w2, functionals) = weight2_side(family, b)?;
    let mut signs = Vec::new();
    let mut p1_image = None;
    for sign in [1i8, -1] {
        let p1 = if sign > 0 { fiber_pairing_kernel(cfg) } else { fiber_pairing_kernel_flipped(cfg) };
        let image = transport(cfg, &p1)?;
        let w2_is_kernel = functionals.iter().all(|f| {
            let f: Vec<FieldElement> = f.iter().map(|x| if sign > 0 { x.clone() } else { -x }).collect();
            w2.is_subspace_of(&kernel_of(&f)).unwrap_or(false)
        });
        if image == w2 && w2_is_kernel {
            signs.push(sign);
        }
        p1_image.get_or_insert(image);
    }
    let p1_image = p1_image.expect("two signs checked");
    Ok(SubspaceMatch {
        w2_dim: w2.dim(),
        p1_dim: p1_image.dim(),
        w2_basis: basis_strings(&w2),
        p1_basis: basis_strings(&p1_image),
        signs,
    })
}

pub fn check_subspace_match(family: Family, b: u32) -> Result<SubspaceMatch> {
    let cfg = fibration_config(family, b)?;
    subspace_match_for(family, b, &cfg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CuriousHl {
    /// Identity on every `Gr^W_2`.
    pub k0: bool,
    /// Cup with `γ` sends the unit of `Gr^W_0 H^0` onto `Gr^W_4 H^2`.
    pub k1: bool,
    /// `Σ_d dim Gr^W_{2-2k} H^d = Σ_d dim Gr^W_{2+2k} H^d` for `k = 0, 1`.
    pub dimension_symmetry: bool,
}

fn curious_hl_for(w: &WeightTable, pairing: &FieldElement) -> CuriousHl {
    let total = |weight: usize| -> usize { w.0.iter().map(|row| row[weight]).sum() };
    CuriousHl {
        k0: true,
        k1: w.get(0, 0) == 1 && w.get(2, 4) == 1 && !pairing.is_zero(),
        dimension_symmetry: total(0) == total(4) && total(1) == total(3),
    }
}

/// `∫_Z γ` exactly: the sum of the `c = 0` period row; for the torus of
/// family 0 it is the normalization of `γ`.
fn gamma_pairing(family: Family, b: u32) -> Result<FieldElement> {
    match family {
        Family::Zero => Ok(FieldElement::from(1)),
        Family::I | Family::II => (1..=b).try_fold(FieldElement::from(0), |acc, j| {
            acc.checked_add(&closed_form_period(b, 0, j)?.value)
        }),
    }
}

pub fn check_curious_hl(family: Family, b: u32) -> Result<CuriousHl> {
    let w = weight_table(&cluster_spec(family, b)?);
    Ok(curious_hl_for(&w, &gamma_pairing(family, b)?))
}

fn apply_table_fault(entry: &mut usize, delta: i64, nonnegative: &mut bool) {
    let v = *entry as i64 + delta;
    if v < 0 {
        *nonnegative = false;
    }
    *entry = v.max(0) as usize;
}

fn apply_matrix_fault(cfg: &mut FibrationConfig, fault: &Fault) -> Result<()> {
    let (fiber, row, col, delta, monodromy) = match *fault {
        Fault::Monodromy { fiber, row, col, delta } => (fiber, row, col, delta, true),
        Fault::Intersection { fiber, row, col, delta } => (fiber, row, col, delta, false),
        _ => return Ok(()),
    };
    let out_of_range = || Error::InvalidConfig(format!("fault {fault} does not address an entry"));
    let f = cfg.fibers.get_mut(fiber).ok_or_else(out_of_range)?;
    let m = if monodromy { &mut f.monodromy } else { &mut f.intersection };
    if row >= m.rows() || col >= m.cols() {
        return Err(out_of_range());
    }
    let v = m.get(row, col) + &FieldElement::from(delta);
    m.set(row, col, v).map_err(|_| out_of_range())
}

fn check_table_fault(fault: &Fault) -> Result<()> {
    let ok = match *fault {
        Fault::Weight { degree, weight, .. } => degree < 3 && weight < 5,
        Fault::Perverse { degree, k, .. } => degree < 3 && k < 3,
        _ => true,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!("fault {fault} does not address a table entry")))
    }
}

struct PeriodOutcome {
    deviation: f64,
    regular: f64,
}

fn period_outcome(family: Family, b: u32, grid: QuadratureGrid, tol: f64) -> Result<PeriodOutcome> {
    match family {
        Family::Zero => {
            let v = torus_pairing_quadrature(grid)?;
            Ok(PeriodOutcome { deviation: (v - 1.0).abs(), regular: 0.0 })
        }
        // the T necklace of family II is the S necklace with x and y exchanged
        Family::I | Family::II => {
            let s = quadrature_cross_check(b, grid, tol)?;
            Ok(PeriodOutcome { deviation: s.max_abs_deviation, regular: s.max_regular_term })
        }
    }
}

pub fn run(config: &RunConfig) -> Result<PWReport> {
    config.validate()?;
    let family = config.family;
    let b = config.necklace_size()?;
    for fault in &config.faults {
        check_table_fault(fault)?;
    }
    let mut verdicts = BTreeMap::new();
    let mut put = |name: &str, ok: bool| {
        verdicts.insert(name.to_string(), ok);
    };

    // weight side
    let spec = cluster_spec(family, b)?;
    let expected_betti = betti(&spec);
    let mut weights = weight_table(&spec);
    if family == Family::II {
        put("betti_mayer_vietoris", betti_via_mayer_vietoris(b)? == expected_betti);
    }
    let periods = period_outcome(family, b, config.grid, config.tol).map_err(|e| match e {
        Error::DomainError(m) => Error::InvalidConfig(m),
        other => other,
    })?;
    put("period_quadrature", periods.deviation <= config.tol);
    put("period_regular_term_vanishes", periods.regular < REGULAR_TERM_TOL);
    put("period_telescoping", family == Family::Zero || period_matrix(b).is_ok());
    let w2 = weight2_side(family, b);
    let w2_ok = matches!(&w2, Ok((s, _)) if s.dim() == weights.get(2, 2));
    put("w2_period_descent_matches_functional_kernel", w2_ok);

    // perverse side
    let mut cfg = fibration_config(family, b)?;
    for fault in &config.faults {
        apply_matrix_fault(&mut cfg, fault)?;
    }
    put("fibers_valid", cfg.validate().is_ok());
    let perverse = perverse_table(&cfg);
    put("pushforward_h2_vanishes", !matches!(perverse, Err(Error::NonVanishingH2(_))));
    put("perverse_table_computed", perverse.is_ok());
    let mut perverse = perverse.unwrap_or(PerverseTable([[0; 3]; 3]));

    let mut nonnegative = true;
    for fault in &config.faults {
        match *fault {
            Fault::Weight { degree, weight, delta } => {
                apply_table_fault(&mut weights.0[degree][weight], delta, &mut nonnegative)
            }
            Fault::Perverse { degree, k, delta } => {
                apply_table_fault(&mut perverse.0[degree][k], delta, &mut nonnegative)
            }
            _ => {}
        }
    }
    put("tables_nonnegative", nonnegative);
    put("weight_row_sums_are_betti", weights.row_sums() == expected_betti);
    put("perverse_row_sums_are_betti", perverse.row_sums() == expected_betti);

    for (k, row) in compare_tables(&weights, &perverse).iter().enumerate() {
        for (d, &ok) in row.iter().enumerate() {
            put(&format!("pw_k{k}_h{d}"), ok);
        }
    }

    let p1 = fiber_pairing_kernel(&cfg);
    let p1_three_way = p1 == component_span(&cfg)
        && p1.dim() == skyscraper_dim(&cfg)
        && compact_support_image_rank(&cfg) == compact_support_image_dim(&cfg)
        && perverse.get(2, 1) == p1.dim();
    put("p1_kernel_component_span_compact_image_agree", p1_three_way);

    let subspace_match = subspace_match_for(family, b, &cfg).unwrap_or(SubspaceMatch {
        w2_dim: 0,
        p1_dim: 0,
        w2_basis: Vec::new(),
        p1_basis: Vec::new(),
        signs: Vec::new(),
    });
    put("p1_equals_w2", subspace_match.signs.contains(&1));
    put("p1_equals_w2_under_sign_flip", subspace_match.signs.contains(&-1));

    let pairing = gamma_pairing(family, b).unwrap_or_else(|_| FieldElement::from(0));
    put("gamma_pairs_to_one", pairing == FieldElement::from(1));
    let chl = curious_hl_for(&weights, &pairing);
    put("curious_hl_k0", chl.k0);
    put("curious_hl_k1", chl.k1);
    put("curious_hl_dimension_symmetry", chl.dimension_symmetry);
    for k in 0..=cfg.defect {
        put(&format!("relative_hl_k{k}"), relative_hl_symmetric(&perverse, cfg.defect, k));
    }

    let pass = verdicts.values().all(|&v| v);
    Ok(PWReport {
        input: InputEcho {
            family,
            b: if family == Family::Zero { None } else { Some(b) },
            quad_theta: config.grid.n_theta,
            quad_phi: config.grid.n_phi,
            tol: config.tol,
            faults: config.faults.iter().map(ToString::to_string).collect(),
        },
        weight_table: weights,
        perverse_table: perverse,
        verdicts,
        period_check: PeriodCheck { max_abs_deviation: periods.deviation, grid: config.grid },
        pass,
        subspace_match,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub family: Family,
    pub b_max: Option<u32>,
    pub reports: Vec<PWReport>,
    pub pass: bool,
}

impl SweepReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# P=W sweep: family {}\n", self.family);
        let _ = writeln!(s, "| b | max period deviation | failed verdicts | result |");
        let _ = writeln!(s, "|---|---|---|---|");
        for r in &self.reports {
            let b = r.input.b.map_or("-".to_string(), |b| b.to_string());
            let failed = r.failed_verdicts();
            let failed = if failed.is_empty() { "-".to_string() } else { failed.join(", ") };
            let result = if r.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(s, "| {b} | {:.3e} | {failed} | {result} |", r.period_check.max_abs_deviation);
        }
        let _ = writeln!(s, "\n**Overall: {}**", if self.pass { "PASS" } else { "FAIL" });
        s
    }
}

/// Runs `b = 1..=b_max` (a single run for family 0) with the shared settings of `base`.
pub fn sweep(base: &RunConfig, b_max: Option<u32>) -> Result<SweepReport> {
    let bs: Vec<Option<u32>> = match (base.family, b_max) {
        (Family::Zero, _) => vec![None],
        (_, None) => return Err(Error::InvalidConfig("sweep needs --b-max".into())),
        (_, Some(0)) => return Err(Error::InvalidConfig("b-max must be at least 1".into())),
        (_, Some(m)) => (1..=m).map(Some).collect(),
    };
    let reports = bs
        .into_iter()
        .map(|b| run(&RunConfig { b, ..base.clone() }))
        .collect::<Result<Vec<_>>>()?;
    let pass = reports.iter().all(|r| r.pass);
    Ok(SweepReport { family: base.family, b_max: if base.family == Family::Zero { None } else { b_max }, reports, pass })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Tables {
    pub family: Family,
    pub b: Option<u32>,
    pub weight_table: [[usize; 5]; 3],
    pub perverse_table: [[usize; 3]; 3],
}

impl Tables {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tables are serializable")
    }
}

/// Weight and perverse tables only, without periods or subspace checks.
pub fn tables(family: Family, b: Option<u32>) -> Result<Tables> {
    let b = RunConfig::new(family, b).necklace_size()?;
    Ok(Tables {
        family,
        b: if family == Family::Zero { None } else { Some(b) },
        weight_table: weight_table(&cluster_spec(family, b)?).0,
        perverse_table: perverse_table(&fibration_config(family, b)?)?.0,
    })
}

/// Settings read from a `key = value` file; `#` starts a comment and
/// `fault` may repeat. Keys mirror the CLI flags.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FileConfig {
    pub family: Option<Family>,
    pub b: Option<u32>,
    pub b_max: Option<u32>,
    pub quad_theta: Option<usize>,
    pub quad_phi: Option<usize>,
    pub tol: Option<f64>,
    pub format: Option<String>,
    pub out: Option<String>,
    pub faults: Vec<Fault>,
}

pub fn parse_config_file(text: &str) -> Result<FileConfig> {
    let mut cfg = FileConfig::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |what: &str| Error::InvalidConfig(format!("line {}: {what}: {raw:?}", lineno + 1));
        let (key, value) = line.split_once('=').ok_or_else(|| err("expected key = value"))?;
        let (key, value) = (key.trim().replace('_', "-"), value.trim());
        let num = |what| value.parse().map_err(|_| err(what));
        match key.as_str() {
            "family" => cfg.family = Some(value.parse()?),
            "b" => cfg.b = Some(num("b must be a nonnegative integer")?),
            "b-max" => cfg.b_max = Some(num("b-max must be a nonnegative integer")?),
            "quad-theta" => cfg.quad_theta = Some(value.parse().map_err(|_| err("quad-theta must be an integer"))?),
            "quad-phi" => cfg.quad_phi = Some(value.parse().map_err(|_| err("quad-phi must be an integer"))?),
            "tol" => cfg.tol = Some(value.parse().map_err(|_| err("tol must be a number"))?),
            "format" => cfg.format = Some(value.to_string()),
            "out" => cfg.out = Some(value.to_string()),
            "fault" => cfg.faults.push(value.parse()?),
            _ => return Err(err("unknown key")),
        }
    }
    Ok(cfg)
}
