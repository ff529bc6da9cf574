use std::fmt;

use super::scalar::{Field, FieldElement};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense row-major matrix whose entries all live in one exact field.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<FieldElement>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl ExactMatrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            field: field.clone(),
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from rows, embedding every entry into `field`.
    /// `cols` is needed to describe matrices with zero rows.
    pub fn from_rows(field: &Field, cols: usize, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for x in &row {
                entries.push(field.embed(x)?);
            }
        }
        Ok(Self { rows: nrows, cols, field: field.clone(), entries })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| FieldElement::from(x)).collect())
            .collect();
        Self::from_rows(&Field::Rational, cols, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: FieldElement) -> Result<()> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::IndexError(format!(
                "({r}, {c}) outside a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        self.entries[r * self.cols + c] = self.field.embed(&value)?;
        Ok(())
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, field: self.field.clone(), entries }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: format!("{:?}", self.field),
                right: format!("{:?}", other.field),
            });
        }
        let mut out = Self::zeros(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    out.entries[idx] = out.entries[idx].checked_add(&a.checked_mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .try_fold(self.field.zero(), |acc, (a, x)| acc.checked_add(&a.checked_mul(x)?))
            })
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("shape mismatch in subtraction".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, field: self.field.clone(), entries })
    }

    pub fn scale(&self, s: &FieldElement) -> Result<Self> {
        let entries = self.entries.iter().map(|a| a.checked_mul(s)).collect::<Result<_>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, field: self.field.clone(), entries })
    }

    /// Entrywise image under the Galois automorphism `ζ ↦ ζ^k`.
    pub fn galois(&self, k: u32) -> Result<Self> {
        let entries = self.entries.iter().map(|a| a.galois(k)).collect::<Result<_>>()?;
        Ok(Self { rows: self.rows, cols: self.cols, field: self.field.clone(), entries })
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols || self.field != other.field {
            return Err(Error::DimensionMismatch("incompatible blocks in vstack".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Self { rows: self.rows + other.rows, cols: self.cols, field: self.field.clone(), entries })
    }

    /// Gauss-Jordan elimination to the unique reduced row echelon form
    /// with unit pivots.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(found, pivot_row);
            let inv = m
                .get(pivot_row, col)
                .inverse()
                .expect("pivot is nonzero");
            for c in col..m.cols {
                let idx = pivot_row * m.cols + c;
                if !m.entries[idx].is_zero() {
                    m.entries[idx] = &m.entries[idx] * &inv;
                }
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let p = m.get(pivot_row, c);
                    if p.is_zero() {
                        continue;
                    }
                    let delta = &factor * p;
                    let idx = r * m.cols + c;
                    m.entries[idx] = &m.entries[idx] - &delta;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Right null space `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let Rref { matrix, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -matrix.get(row, free);
            }
            basis.push(v);
        }
        Subspace::span(&self.field, self.cols, basis).expect("kernel vectors share the matrix field")
    }

    /// Column span.
    pub fn image(&self) -> Subspace {
        Subspace::span(&self.field, self.rows, self.transpose().row_vectors())
            .expect("columns share the matrix field")
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
