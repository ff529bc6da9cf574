//! Elliptic fibrations over the disk with `I_b` singular fibers: the
//! perverse side of the comparison.
//!
//! `H^2` of the total space is modeled on the basis
//! `{C^{(i)}_1, …, C^{(i)}_{b_i - 1}}` over all singular fibers `i`, followed
//! by a single section-dual class `σ` with `∫_F σ = 1`.

use num_integer::Integer;
use serde::Serialize;

use crate::cluster::Betti;
use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, Field, FieldElement, Subspace};
use crate::localsys::{monodromy_ib, pushforward_cohomology, pushforward_cohomology_unpunctured, MonodromyRep};

/// Defect `dim X ×_Y X - dim X` of a surface fibered in curves.
pub const DEFECT: usize = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct KodairaFiber {
    /// Number of irreducible components.
    pub b: u32,
    pub monodromy: ExactMatrix,
    pub intersection: ExactMatrix,
}

impl KodairaFiber {
    pub fn new(b: u32) -> Result<Self> {
        Self::with_monodromy(b, monodromy_ib(b))
    }

    pub fn with_monodromy(b: u32, monodromy: ExactMatrix) -> Result<Self> {
        if b == 0 {
            return Err(Error::InvalidFibration("I_b needs b >= 1".into()));
        }
        Ok(Self { b, monodromy, intersection: kodaira_intersection_matrix(b) })
    }

    pub fn validate(&self) -> Result<()> {
        validate_intersection(self.b, &self.intersection)?;
        let m = shear_invariant(&self.monodromy)?;
        if m != self.b as i64 {
            return Err(Error::InvalidMonodromy(format!(
                "shear of size {m} does not match I_{}",
                self.b
            )));
        }
        Ok(())
    }
}

/// `[0]`, `[[-2, 2], [2, -2]]`, or the `b`-cycle with `-2` on the diagonal.
pub fn kodaira_intersection_matrix(b: u32) -> ExactMatrix {
    let n = b as usize;
    let rows: Vec<Vec<i64>> = match n {
        1 => vec![vec![0]],
        2 => vec![vec![-2, 2], vec![2, -2]],
        _ => (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            -2
                        } else if (i + 1) % n == j || (j + 1) % n == i {
                            1
                        } else {
                            0
                        }
                    })
                    .collect()
            })
            .collect(),
    };
    ExactMatrix::from_i64_rows(&rows).expect("square literal")
}

fn validate_intersection(b: u32, q: &ExactMatrix) -> Result<()> {
    let n = b as usize;
    if q.rows() != n || q.cols() != n {
        return Err(Error::InvalidFibration(format!("intersection matrix is not {n}x{n}")));
    }
    if *q != q.transpose() {
        return Err(Error::InvalidFibration("intersection matrix is not symmetric".into()));
    }
    for r in 0..n {
        let sum = q.row(r).iter().fold(FieldElement::from(0), |acc, x| &acc + x);
        if !sum.is_zero() {
            return Err(Error::InvalidFibration(format!("component {} pairs nontrivially with F", r + 1)));
        }
    }
    if *q != kodaira_intersection_matrix(b) {
        return Err(Error::InvalidFibration(format!("intersection matrix is not of type I_{b}")));
    }
    Ok(())
}

/// Signed size `m` of a unipotent shear `T ≠ 1` in `SL_2(Z)`: the gcd of the
/// entries of `T - 1`, signed so that `[[1, m], [0, 1]]` and every
/// `SL_2(Z)`-conjugate of it give `m`.
pub fn shear_invariant(t: &ExactMatrix) -> Result<i64> {
    if t.rows() != 2 || t.cols() != 2 {
        return Err(Error::InvalidMonodromy("monodromy is not 2x2".into()));
    }
    let mut e = [[0i64; 2]; 2];
    for (r, row) in e.iter_mut().enumerate() {
        for (c, x) in row.iter_mut().enumerate() {
            let q = t.get(r, c).as_rational().ok_or_else(|| Error::InvalidMonodromy("non-rational entry".into()))?;
            if !q.is_integer() {
                return Err(Error::InvalidMonodromy("monodromy is not integral".into()));
            }
            *x = i64::try_from(q.to_integer()).map_err(|_| Error::InvalidMonodromy("entry out of range".into()))?;
        }
    }
    if e[0][0] * e[1][1] - e[0][1] * e[1][0] != 1 {
        return Err(Error::InvalidMonodromy("determinant is not 1".into()));
    }
    if e[0][0] + e[1][1] != 2 {
        return Err(Error::InvalidMonodromy("monodromy is not unipotent".into()));
    }
    let n = [e[0][0] - 1, e[0][1], e[1][0], e[1][1] - 1];
    let g = n.iter().fold(0i64, |acc, x| acc.gcd(x));
    if g == 0 {
        return Err(Error::InvalidMonodromy("trivial monodromy".into()));
    }
    // T - 1 = m (p, r)^T (-r, p), so N01 = m p^2 and -N10 = m r^2
    let sign = if n[1] != 0 { n[1].signum() } else { (-n[2]).signum() };
    Ok(sign * g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FibrationShape {
    /// `E × Δ` with no singular fibers.
    Trivial,
    Single,
    Pair,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FibrationConfig {
    pub fibers: Vec<KodairaFiber>,
    pub defect: usize,
}

impl FibrationConfig {
    pub fn shape(&self) -> Result<FibrationShape> {
        match self.fibers.len() {
            0 => Ok(FibrationShape::Trivial),
            1 => Ok(FibrationShape::Single),
            2 => Ok(FibrationShape::Pair),
            n => Err(Error::InvalidFibration(format!("{n} singular fibers are not supported"))),
        }
    }

    /// `None` for the unpunctured disk.
    pub fn monodromy_rep(&self) -> Result<Option<MonodromyRep>> {
        if self.fibers.is_empty() {
            return Ok(None);
        }
        let ms = self.fibers.iter().map(|f| f.monodromy.clone()).collect();
        MonodromyRep::from_matrices(ms).map(Some)
    }

    pub fn validate(&self) -> Result<()> {
        self.shape()?;
        if self.defect != DEFECT {
            return Err(Error::InvalidFibration(format!("defect {} for a fibered surface", self.defect)));
        }
        self.fibers.iter().try_for_each(KodairaFiber::validate)
    }

    /// `dim H^2` of the total space in the model basis.
    pub fn h2_dim(&self) -> usize {
        skyscraper_dim(self) + 1
    }
}

pub fn config_i(b: u32) -> Result<FibrationConfig> {
    Ok(FibrationConfig { fibers: vec![KodairaFiber::new(b)?], defect: DEFECT })
}

/// Two `I_b` fibers whose vanishing cycles span `H^1` of the general fiber.
pub fn config_ii(b: u32) -> Result<FibrationConfig> {
    let second = ExactMatrix::from_i64_rows(&[vec![1, 0], vec![-(b as i64), 1]])?;
    Ok(FibrationConfig {
        fibers: vec![KodairaFiber::new(b)?, KodairaFiber::with_monodromy(b, second)?],
        defect: DEFECT,
    })
}

pub fn config_0() -> FibrationConfig {
    FibrationConfig { fibers: Vec::new(), defect: DEFECT }
}

pub fn skyscraper_dim(cfg: &FibrationConfig) -> usize {
    cfg.fibers.iter().map(|f| f.b as usize - 1).sum()
}

/// `Gr^P_k H^d` at `[d][k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct PerverseTable(pub [[usize; 3]; 3]);

impl PerverseTable {
    pub fn get(&self, degree: usize, k: usize) -> usize {
        self.0[degree][k]
    }

    pub fn row_sums(&self) -> Betti {
        self.0.map(|row| row.iter().sum())
    }

    /// `dim P_k H^d`.
    pub fn cumulative(&self, degree: usize, k: usize) -> usize {
        self.0[degree][..=k.min(2)].iter().sum()
    }

    /// `Σ_d dim Gr^P_k H^d`.
    pub fn total(&self, k: usize) -> usize {
        self.0.iter().map(|row| row[k]).sum()
    }
}

pub fn perverse_table(cfg: &FibrationConfig) -> Result<PerverseTable> {
    let h = match cfg.monodromy_rep()? {
        Some(rep) => pushforward_cohomology(&rep)?,
        None => pushforward_cohomology_unpunctured(),
    };
    let h = [h.h0, h.h1, h.h2];
    let mut t = [[0usize; 3]; 3];
    // constant sheaf in perverse degree 0, (j_*L ⊕ skyscrapers)[-1] in 1, constant sheaf [-2] in 2
    t[0][0] = 1;
    for d in 1..3 {
        t[d][1] = h[d - 1];
    }
    t[2][1] += skyscraper_dim(cfg);
    t[2][2] = 1;
    Ok(PerverseTable(t))
}

/// `∫_F` on the model basis: `⟨C^{(i)}_m, F⟩` is the `m`-th row sum of the
/// `i`-th intersection matrix and `⟨σ, F⟩ = 1`.
pub fn fiber_functional(cfg: &FibrationConfig) -> Vec<FieldElement> {
    let mut f = Vec::with_capacity(cfg.h2_dim());
    for fiber in &cfg.fibers {
        let q = &fiber.intersection;
        for m in 0..fiber.b as usize - 1 {
            let row = if m < q.rows() { q.row(m) } else { &[] };
            f.push(row.iter().fold(FieldElement::from(0), |acc, x| &acc + x));
        }
    }
    f.push(FieldElement::from(1));
    f
}

fn functional_kernel(functional: Vec<FieldElement>) -> Subspace {
    let n = functional.len();
    ExactMatrix::from_rows(&Field::Rational, n, vec![functional])
        .expect("single rational row")
        .kernel()
}

/// `P_1 H^2 = ker ∫_F` in the model basis.
pub fn fiber_pairing_kernel(cfg: &FibrationConfig) -> Subspace {
    functional_kernel(fiber_functional(cfg))
}

/// `ker ∫_{-F}`, the same kernel under the opposite orientation of the fiber.
pub fn fiber_pairing_kernel_flipped(cfg: &FibrationConfig) -> Subspace {
    functional_kernel(fiber_functional(cfg).into_iter().map(|x| -&x).collect())
}

/// Span of the component classes `C^{(i)}_m` in the model basis.
pub fn component_span(cfg: &FibrationConfig) -> Subspace {
    let n = cfg.h2_dim();
    let vectors = (0..n - 1)
        .map(|i| (0..n).map(|j| FieldElement::from(i64::from(i == j))).collect())
        .collect();
    Subspace::span(&Field::Rational, n, vectors).expect("unit vectors")
}

/// The skyscraper summand maps identically, the other two summand maps vanish.
pub fn compact_support_image_dim(cfg: &FibrationConfig) -> usize {
    skyscraper_dim(cfg)
}

/// `Σ_i rank Q_i`: the image of the component classes under the pairing,
/// i.e. of `H_2 ≅ H^2_c → H^2` restricted to the fibers.
pub fn compact_support_image_rank(cfg: &FibrationConfig) -> usize {
    cfg.fibers.iter().map(|f| f.intersection.rank()).sum()
}

/// Rows: model basis. Columns: component-dual coordinates
/// `(∫_{D^{(1)}_1}, …, ∫_{D^{(1)}_b}, ∫_{D^{(2)}_1}, …, ∫_{D^{(2)}_{b-1}})`;
/// the last component of a later fiber is omitted because `Σ_m D^{(i)}_m = F`
/// for every `i`. `σ` meets the last component of each fiber once.
pub fn component_dual_transport(cfg: &FibrationConfig) -> Result<ExactMatrix> {
    let widths: Vec<usize> = cfg
        .fibers
        .iter()
        .enumerate()
        .map(|(i, f)| f.b as usize - usize::from(i > 0))
        .collect();
    let cols = widths.iter().sum::<usize>().max(1);
    let zero = || vec![FieldElement::from(0); cols];
    let mut rows = Vec::with_capacity(cfg.h2_dim());
    let mut offset = 0;
    for (fiber, &w) in cfg.fibers.iter().zip(&widths) {
        let q = &fiber.intersection;
        if q.rows() != fiber.b as usize || q.cols() != fiber.b as usize {
            return Err(Error::InvalidFibration("intersection matrix shape".into()));
        }
        for m in 0..fiber.b as usize - 1 {
            let mut row = zero();
            row[offset..offset + w].clone_from_slice(&q.row(m)[..w]);
            rows.push(row);
        }
        offset += w;
    }
    let mut sigma = zero();
    if let Some(first) = cfg.fibers.first() {
        sigma[first.b as usize - 1] = FieldElement::from(1);
    } else {
        sigma[0] = FieldElement::from(1);
    }
    rows.push(sigma);
    ExactMatrix::from_rows(&Field::Rational, cols, rows)
}

/// Image of a model-basis subspace in component-dual coordinates.
pub fn transport(cfg: &FibrationConfig, s: &Subspace) -> Result<Subspace> {
    let t = component_dual_transport(cfg)?;
    if s.ambient_dim() != t.rows() {
        return Err(Error::DimensionMismatch("subspace outside the model H^2".into()));
    }
    let vectors = s
        .basis()
        .iter()
        .map(|v| t.transpose().apply(v))
        .collect::<Result<Vec<_>>>()?;
    Subspace::span(&Field::Rational, t.cols(), vectors)
}

/// `Σ_d dim Gr^P_{r-k} H^d = Σ_d dim Gr^P_{r+k} H^d`.
pub fn relative_hl_symmetric(table: &PerverseTable, defect: usize, k: usize) -> bool {
    if k > defect || defect + k > 2 {
        return false;
    }
    table.total(defect - k) == table.total(defect + k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_matrices() {
        assert_eq!(kodaira_intersection_matrix(1), ExactMatrix::from_i64_rows(&[vec![0]]).unwrap());
        let q3 = kodaira_intersection_matrix(3);
        assert_eq!(
            q3,
            ExactMatrix::from_i64_rows(&[vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]]).unwrap()
        );
        for b in 1..=8 {
            let f = KodairaFiber::new(b).unwrap();
            f.validate().unwrap();
            assert_eq!(f.intersection.rank(), b as usize - 1);
        }
    }

    #[test]
    fn shear_invariants() {
        let m = |r: [[i64; 2]; 2]| ExactMatrix::from_i64_rows(&[r[0].to_vec(), r[1].to_vec()]).unwrap();
        assert_eq!(shear_invariant(&m([[1, 3], [0, 1]])).unwrap(), 3);
        assert_eq!(shear_invariant(&m([[1, 0], [-3, 1]])).unwrap(), 3);
        assert_eq!(shear_invariant(&m([[1, -3], [0, 1]])).unwrap(), -3);
        // [[1,2],[0,1]] conjugated by [[2,1],[1,1]]
        assert_eq!(shear_invariant(&m([[-3, 8], [-2, 5]])).unwrap(), 2);
        assert!(shear_invariant(&m([[1, 0], [0, 1]])).is_err());
        assert!(shear_invariant(&m([[2, 1], [1, 1]])).is_err());
        assert!(shear_invariant(&m([[1, 3], [1, 1]])).is_err());
    }

    #[test]
    fn configs() {
        assert_eq!(config_i(3).unwrap().fibers[0].monodromy, monodromy_ib(3));
        let ii = config_ii(2).unwrap();
        assert_eq!(ii.fibers[1].monodromy, ExactMatrix::from_i64_rows(&[vec![1, 0], vec![-2, 1]]).unwrap());
        ii.validate().unwrap();
        assert_eq!(config_0().monodromy_rep().unwrap(), None);
        assert_eq!(skyscraper_dim(&config_i(1).unwrap()), 0);
        assert_eq!(skyscraper_dim(&config_i(5).unwrap()), 4);
        assert_eq!(skyscraper_dim(&config_ii(3).unwrap()), 4);
    }

    #[test]
    fn perverse_tables() {
        for b in 1..=6 {
            let bu = b as usize;
            let t = perverse_table(&config_i(b).unwrap()).unwrap();
            assert_eq!(t.0, [[1, 0, 0], [0, 1, 0], [0, bu - 1, 1]]);
            assert_eq!(t.row_sums(), [1, 1, bu]);
            let t = perverse_table(&config_ii(b).unwrap()).unwrap();
            assert_eq!(t.0, [[1, 0, 0], [0, 0, 0], [0, 2 * bu - 2, 1]]);
            assert_eq!(t.row_sums(), [1, 0, 2 * bu - 1]);
            for k in 0..=1 {
                assert!(relative_hl_symmetric(&t, DEFECT, k));
            }
        }
        let t = perverse_table(&config_0()).unwrap();
        assert_eq!(t.0, [[1, 0, 0], [0, 2, 0], [0, 0, 1]]);
    }

    #[test]
    fn pairing_kernels() {
        assert_eq!(fiber_pairing_kernel(&config_i(1).unwrap()).dim(), 0);
        assert_eq!(fiber_pairing_kernel(&config_i(2).unwrap()).dim(), 1);
        for cfg in [config_i(3).unwrap(), config_ii(4).unwrap(), config_0()] {
            let k = fiber_pairing_kernel(&cfg);
            assert_eq!(k, component_span(&cfg));
            assert_eq!(k, fiber_pairing_kernel_flipped(&cfg));
            assert_eq!(k.dim(), compact_support_image_dim(&cfg));
            assert_eq!(compact_support_image_rank(&cfg), compact_support_image_dim(&cfg));
        }
        assert_eq!(compact_support_image_dim(&config_i(4).unwrap()), 3);
    }

    #[test]
    fn transport_lands_in_total_class_kernel() {
        for b in 1..=5 {
            let cfg = config_i(b).unwrap();
            let img = transport(&cfg, &fiber_pairing_kernel(&cfg)).unwrap();
            assert_eq!(img, crate::periods::total_class_kernel(b as usize));
            let cfg = config_ii(b).unwrap();
            let img = transport(&cfg, &fiber_pairing_kernel(&cfg)).unwrap();
            assert_eq!(img.dim(), 2 * b as usize - 2);
        }
    }

    #[test]
    fn corrupted_fibers_fail_validation() {
        let mut f = KodairaFiber::new(4).unwrap();
        f.intersection.set(0, 1, FieldElement::from(2)).unwrap();
        assert!(f.validate().is_err());
        let mut f = KodairaFiber::new(4).unwrap();
        f.monodromy.set(0, 1, FieldElement::from(5)).unwrap();
        assert!(matches!(f.validate(), Err(Error::InvalidMonodromy(_))));
    }
}
