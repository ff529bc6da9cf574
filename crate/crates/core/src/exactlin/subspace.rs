use super::matrix::ExactMatrix;
use super::scalar::{Field, FieldElement};
use crate::error::{Error, Result};

/// A subspace of `field^ambient`, stored by its reduced row echelon basis.
///
/// The echelon form is unique, so two `Subspace` values describe the same
/// space exactly when their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<FieldElement>>,
}

impl Subspace {
    pub fn span(field: &Field, ambient: usize, vectors: Vec<Vec<FieldElement>>) -> Result<Self> {
        let m = ExactMatrix::from_rows(field, ambient, vectors)?;
        let rref = m.rref();
        let basis = (0..rref.pivots.len()).map(|r| rref.matrix.row(r).to_vec()).collect();
        Ok(Self { field: field.clone(), ambient, basis })
    }

    pub fn zero(field: &Field, ambient: usize) -> Self {
        Self { field: field.clone(), ambient, basis: Vec::new() }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        Self {
            field: field.clone(),
            ambient,
            basis: ExactMatrix::identity(field, ambient).row_vectors(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn basis(&self) -> &[Vec<FieldElement>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_rows(&self.field, self.ambient, self.basis.clone())
            .expect("basis vectors are well formed")
    }

    pub fn contains(&self, v: &[FieldElement]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient
            )));
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Ok(ExactMatrix::from_rows(&self.field, self.ambient, rows)?.rank() == self.dim())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.sum(other)?.dim() == other.dim())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(&self.field, self.ambient, rows)
    }

    /// `{w : <w, v> = 0 for all v}` with respect to the coordinate pairing.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(&self.field, self.ambient);
        }
        self.basis_matrix().kernel()
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let constraints = self.annihilator().sum(&other.annihilator())?;
        if constraints.dim() == 0 {
            return Ok(Subspace::full(&self.field, self.ambient));
        }
        Ok(constraints.basis_matrix().kernel())
    }

    /// Re-expresses the subspace over a larger field (rational → cyclotomic).
    pub fn extend_scalars(&self, field: &Field) -> Result<Subspace> {
        let basis = self
            .basis
            .iter()
            .map(|v| v.iter().map(|x| field.embed(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace { field: field.clone(), ambient: self.ambient, basis })
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: format!("{:?}", self.field),
                right: format!("{:?}", other.field),
            });
        }
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }
}

pub fn kernel(m: &ExactMatrix) -> Subspace {
    m.kernel()
}

pub fn image(m: &ExactMatrix) -> Subspace {
    m.image()
}

pub fn rank(m: &ExactMatrix) -> usize {
    m.rank()
}

/// `dim(big / small)`; fails with [`Error::NotASubspace`] unless `small ⊆ big`.
pub fn quotient_dim(big: &Subspace, small: &Subspace) -> Result<usize> {
    if !small.is_subspace_of(big)? {
        return Err(Error::NotASubspace);
    }
    Ok(big.dim() - small.dim())
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn subspace_equal(a: &Subspace, b: &Subspace) -> bool {
    a == b
}

/// Descends a Galois-stable subspace over `Q(ζ_n)` to its rational form.
///
/// Every automorphism `ζ ↦ ζ^k` maps the canonical basis of `s` to the
/// canonical basis of its image, so `s` is stable exactly when all
/// conjugated bases coincide with the original; the entries are then fixed
/// by the whole Galois group and hence rational.
pub fn rational_descent(s: &Subspace) -> Result<Subspace> {
    if s.field == Field::Rational {
        return Ok(s.clone());
    }
    for k in s.field.galois_exponents() {
        for v in &s.basis {
            for x in v {
                if x.galois(k)? != *x {
                    return Err(Error::NotGaloisStable);
                }
            }
        }
    }
    let basis = s
        .basis
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| x.as_rational().map(FieldElement::Rational).ok_or(Error::NotGaloisStable))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Subspace { field: Field::Rational, ambient: s.ambient, basis })
}
