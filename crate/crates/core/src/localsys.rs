//! Rank-2 rational local systems on a punctured disk, given by monodromy
//! around each puncture.
//!
//! Loops around the punctures, taken in label order, freely generate the
//! fundamental group, so a 1-cocycle is a tuple `(v_1, …, v_k) ∈ V^k` and the
//! coboundaries are `((T_1 - 1)v, …, (T_k - 1)v)`.

use crate::error::{Error, Result};
use crate::exactlin::{ExactMatrix, Field, FieldElement, Subspace};

const RANK: usize = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct MonodromyRep {
    labels: Vec<String>,
    matrices: Vec<ExactMatrix>,
}

impl MonodromyRep {
    pub fn new(labels: Vec<String>, matrices: Vec<ExactMatrix>) -> Result<Self> {
        if matrices.is_empty() {
            return Err(Error::InvalidMonodromy("at least one puncture is required".into()));
        }
        if labels.len() != matrices.len() {
            return Err(Error::InvalidMonodromy(format!(
                "{} labels for {} matrices",
                labels.len(),
                matrices.len()
            )));
        }
        for (label, t) in labels.iter().zip(&matrices) {
            if t.rows() != RANK || t.cols() != RANK || *t.field() != Field::Rational {
                return Err(Error::InvalidMonodromy(format!("monodromy at {label} is not a rational 2x2 matrix")));
            }
            if t.rank() != RANK {
                return Err(Error::InvalidMonodromy(format!("monodromy at {label} is singular")));
            }
        }
        Ok(Self { labels, matrices })
    }

    /// Labels `p_1, …, p_k`.
    pub fn from_matrices(matrices: Vec<ExactMatrix>) -> Result<Self> {
        let labels = (1..=matrices.len()).map(|i| format!("p_{i}")).collect();
        Self::new(labels, matrices)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrices(&self) -> &[ExactMatrix] {
        &self.matrices
    }

    pub fn puncture_count(&self) -> usize {
        self.matrices.len()
    }

    /// `T_i ↦ P T_i P^{-1}`.
    pub fn conjugate(&self, p: &ExactMatrix) -> Result<Self> {
        let p_inv = inverse(p)?;
        let matrices = self
            .matrices
            .iter()
            .map(|t| p.mul(t)?.mul(&p_inv))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.labels.clone(), matrices)
    }
}

fn inverse(p: &ExactMatrix) -> Result<ExactMatrix> {
    let n = p.rows();
    if n != p.cols() {
        return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
    }
    let mut aug = Vec::with_capacity(n);
    for r in 0..n {
        let mut row = p.row(r).to_vec();
        row.extend((0..n).map(|c| FieldElement::from(i64::from(r == c))));
        aug.push(row);
    }
    let rref = ExactMatrix::from_rows(p.field(), 2 * n, aug)?.rref();
    if rref.pivots.len() < n || rref.pivots[n - 1] != n - 1 {
        return Err(Error::DivisionByZero);
    }
    let rows = (0..n).map(|r| rref.matrix.row(r)[n..].to_vec()).collect();
    ExactMatrix::from_rows(p.field(), n, rows)
}

/// `[[1, b], [0, 1]]`.
pub fn monodromy_ib(b: u32) -> ExactMatrix {
    ExactMatrix::from_i64_rows(&[vec![1, b as i64], vec![0, 1]]).expect("2x2 literal")
}

fn minus_identity(t: &ExactMatrix) -> ExactMatrix {
    t.sub(&ExactMatrix::identity(t.field(), t.rows())).expect("square matrix")
}

pub fn invariants(rep: &MonodromyRep) -> Subspace {
    rep.matrices.iter().fold(Subspace::full(&Field::Rational, RANK), |acc, t| {
        acc.intersect(&minus_identity(t).kernel()).expect("rational subspaces of Q^2")
    })
}

/// `v ↦ ((T_1 - 1)v, …, (T_k - 1)v)` as a `2k × 2` matrix.
fn coboundary(rep: &MonodromyRep) -> ExactMatrix {
    let rows = rep
        .matrices
        .iter()
        .flat_map(|t| minus_identity(t).row_vectors())
        .collect();
    ExactMatrix::from_rows(&Field::Rational, RANK, rows).expect("blocks of width 2")
}

/// `dim V^k / B^1`, computed directly from the coboundary map.
pub fn h1_punctured_disk(rep: &MonodromyRep) -> usize {
    RANK * rep.puncture_count() - coboundary(rep).rank()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PushforwardCohomology {
    pub h0: usize,
    pub h1: usize,
    pub h2: usize,
}

/// The stalk map `H^1(Δ*, L) → ⊕_i coker(T_i - 1)` as a matrix on cocycles:
/// block `i` is a basis of functionals vanishing on `im(T_i - 1)`, so its
/// kernel on `V` is exactly `im(T_i - 1)`.
fn stalk_map(rep: &MonodromyRep) -> (ExactMatrix, usize) {
    let k = rep.puncture_count();
    let mut rows = Vec::new();
    for (i, t) in rep.matrices.iter().enumerate() {
        for functional in minus_identity(t).image().annihilator().basis() {
            let mut row = vec![FieldElement::from(0); RANK * k];
            row[RANK * i..RANK * (i + 1)].clone_from_slice(functional);
            rows.push(row);
        }
    }
    let target = rows.len();
    (ExactMatrix::from_rows(&Field::Rational, RANK * k, rows).expect("rows of width 2k"), target)
}

/// `H^i(Δ, j_*L)` from `0 → j_*L → Rj_*L → R^1 j_*L[-1] → 0`, where the
/// stalk of `R^1 j_*L` at `p_i` is `coker(T_i - 1)`.
pub fn pushforward_cohomology(rep: &MonodromyRep) -> Result<PushforwardCohomology> {
    let h0 = invariants(rep).dim();
    let b1 = coboundary(rep).rank();
    let (psi, target) = stalk_map(rep);
    let psi_rank = psi.rank();
    let cocycles_in_kernel = RANK * rep.puncture_count() - psi_rank;
    // coboundaries lie in ker Ψ by construction
    let h1 = cocycles_in_kernel - b1;
    let h2 = target - psi_rank;
    if h2 != 0 {
        return Err(Error::NonVanishingH2(h2));
    }
    Ok(PushforwardCohomology { h0, h1, h2 })
}

/// The trivial local system of rank 2 on the disk with no punctures.
pub fn pushforward_cohomology_unpunctured() -> PushforwardCohomology {
    PushforwardCohomology { h0: RANK, h1: 0, h2: 0 }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(ms: &[[[i64; 2]; 2]]) -> MonodromyRep {
        let ms = ms
            .iter()
            .map(|m| ExactMatrix::from_i64_rows(&[m[0].to_vec(), m[1].to_vec()]).unwrap())
            .collect();
        MonodromyRep::from_matrices(ms).unwrap()
    }

    #[test]
    fn ib_monodromy() {
        assert_eq!(monodromy_ib(1), ExactMatrix::from_i64_rows(&[vec![1, 1], vec![0, 1]]).unwrap());
        assert_eq!(monodromy_ib(4), ExactMatrix::from_i64_rows(&[vec![1, 4], vec![0, 1]]).unwrap());
    }

    #[test]
    fn invariant_examples() {
        let single = rep(&[[[1, 3], [0, 1]]]);
        let inv = invariants(&single);
        assert_eq!(inv.basis(), &[vec![FieldElement::from(1), FieldElement::from(0)]]);
        assert_eq!(invariants(&rep(&[[[1, 3], [0, 1]], [[1, 0], [-3, 1]]])).dim(), 0);
        assert_eq!(invariants(&rep(&[[[1, 0], [0, 1]]])).dim(), 2);
    }

    #[test]
    fn h1_examples() {
        assert_eq!(h1_punctured_disk(&rep(&[[[1, 5], [0, 1]]])), 1);
        assert_eq!(h1_punctured_disk(&rep(&[[[1, 2], [0, 1]], [[1, 0], [-2, 1]]])), 2);
        assert_eq!(h1_punctured_disk(&rep(&[[[1, 0], [0, 1]]])), 2);
    }

    #[test]
    fn pushforward_examples() {
        let p = |h0, h1, h2| PushforwardCohomology { h0, h1, h2 };
        for b in 1..=5 {
            assert_eq!(pushforward_cohomology(&rep(&[[[1, b], [0, 1]]])).unwrap(), p(1, 0, 0));
            let two = rep(&[[[1, b], [0, 1]], [[1, 0], [-b, 1]]]);
            assert_eq!(pushforward_cohomology(&two).unwrap(), p(0, 0, 0));
        }
        // trivial monodromy: j_*L is the constant sheaf, each stalk of R^1 j_*L is all of V
        assert_eq!(pushforward_cohomology(&rep(&[[[1, 0], [0, 1]]])).unwrap(), p(2, 0, 0));
        assert_eq!(pushforward_cohomology_unpunctured(), p(2, 0, 0));
    }

    #[test]
    fn rejects_bad_reps() {
        assert!(MonodromyRep::from_matrices(vec![]).is_err());
        let singular = ExactMatrix::from_i64_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(matches!(MonodromyRep::from_matrices(vec![singular]), Err(Error::InvalidMonodromy(_))));
        let wide = ExactMatrix::from_i64_rows(&[vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert!(MonodromyRep::from_matrices(vec![wide]).is_err());
    }

    #[test]
    fn conjugation_by_swap() {
        let s = ExactMatrix::from_i64_rows(&[vec![0, -1], vec![1, 0]]).unwrap();
        let r = rep(&[[[1, 3], [0, 1]]]).conjugate(&s).unwrap();
        assert_eq!(r.matrices()[0], ExactMatrix::from_i64_rows(&[vec![1, 0], vec![-3, 1]]).unwrap());
        assert!(inverse(&ExactMatrix::from_i64_rows(&[vec![1, 1], vec![1, 1]]).unwrap()).is_err());
    }
}
