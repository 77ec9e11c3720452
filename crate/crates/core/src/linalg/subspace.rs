use crate::exactmath::Scalar;

use super::echelon::{null_space, reduce_against, row_reduce, Echelon};
use super::{LinalgError, Matrix};

/// A subspace of `S^n` held as its reduced row-echelon basis.
///
/// The basis is canonical, so two subspaces are equal exactly when their
/// representations are identical and derived `==` is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace<S> {
    ambient: usize,
    basis: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| (0..ambient).map(|j| if i == j { S::one() } else { S::zero() }).collect())
            .collect();
        Subspace {
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of `e_i` for each listed coordinate.
    pub fn coordinate(ambient: usize, coords: &[usize]) -> Self {
        Self::span_unchecked(
            ambient,
            coords
                .iter()
                .map(|&i| (0..ambient).map(|j| if i == j { S::one() } else { S::zero() }).collect())
                .collect(),
        )
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<S>>) -> Result<Self, LinalgError> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(LinalgError::AmbientMismatch {
                left: ambient,
                right: v.len(),
            });
        }
        Ok(Self::span_unchecked(ambient, vectors))
    }

    pub(crate) fn span_unchecked(ambient: usize, vectors: Vec<Vec<S>>) -> Self {
        Self::from_echelon(ambient, row_reduce(vectors, ambient))
    }

    pub(crate) fn from_echelon(ambient: usize, e: Echelon<S>) -> Self {
        Subspace {
            ambient,
            basis: e.rows,
            pivots: e.pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis vectors (rows of the reduced echelon form).
    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    pub fn basis_matrix(&self) -> Matrix<S> {
        Matrix::from_fn(self.dim(), self.ambient, |r, c| self.basis[r][c].clone())
    }

    pub fn contains(&self, v: &[S]) -> bool {
        v.len() == self.ambient
            && reduce_against(&self.basis, &self.pivots, v)
                .iter()
                .all(S::is_zero)
    }

    /// `self ⊆ other`, by reducing each basis vector against `other`.
    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, LinalgError> {
        self.check_ambient(other)?;
        Ok(self.basis.iter().all(|v| other.contains(v)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        if other.is_zero() || self.is_full() {
            return Ok(self.clone());
        }
        if self.is_zero() || other.is_full() {
            return Ok(other.clone());
        }
        let vectors = self.basis.iter().chain(&other.basis).cloned().collect();
        Ok(Self::span_unchecked(self.ambient, vectors))
    }

    /// Intersection by the Zassenhaus algorithm: row-reduce `[[A, A], [B, 0]]`;
    /// rows whose left half vanishes span `A ∩ B` in their right half.
    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        let n = self.ambient;
        let mut block = Vec::with_capacity(self.dim() + other.dim());
        for v in &self.basis {
            let mut row = v.clone();
            row.extend(v.iter().cloned());
            block.push(row);
        }
        for v in &other.basis {
            let mut row = v.clone();
            row.extend(std::iter::repeat_n(S::zero(), n));
            block.push(row);
        }
        let e = row_reduce(block, 2 * n);
        let vectors = e
            .rows
            .into_iter()
            .zip(e.pivots)
            .filter(|(_, p)| *p >= n)
            .map(|(row, _)| row[n..].to_vec())
            .collect();
        Ok(Self::span_unchecked(n, vectors))
    }

    /// Image `M(self)`.
    pub fn image(&self, m: &Matrix<S>) -> Result<Self, LinalgError> {
        if m.cols() != self.ambient {
            return Err(LinalgError::AmbientMismatch {
                left: m.cols(),
                right: self.ambient,
            });
        }
        Ok(Self::span_unchecked(
            m.rows(),
            self.basis.iter().map(|v| m.apply(v)).collect(),
        ))
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient != other.ambient {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient,
                right: other.ambient,
            });
        }
        Ok(())
    }
}

/// Null space `{v | Mv = 0}` in canonical form.
pub fn kernel<S: Scalar>(m: &Matrix<S>) -> Subspace<S> {
    let e = row_reduce(m.to_rows(), m.cols());
    Subspace::span_unchecked(m.cols(), null_space(&e, m.cols()))
}

/// `{v | Mv = λv}`; the zero subspace when `λ` is not an eigenvalue.
pub fn eigenspace<S: Scalar>(m: &Matrix<S>, lambda: &S) -> Result<Subspace<S>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.rows(), m.cols()));
    }
    Ok(kernel(&m.shifted(lambda)))
}

pub fn intersect<S: Scalar>(a: &Subspace<S>, b: &Subspace<S>) -> Result<Subspace<S>, LinalgError> {
    a.intersect(b)
}

/// Sum of a nonempty list of subspaces of a common ambient space.
pub fn subspace_sum<S: Scalar>(spaces: &[Subspace<S>]) -> Result<Subspace<S>, LinalgError> {
    let first = spaces.first().ok_or(LinalgError::Empty)?;
    let n = first.ambient();
    if let Some(bad) = spaces.iter().find(|s| s.ambient() != n) {
        return Err(LinalgError::AmbientMismatch {
            left: n,
            right: bad.ambient(),
        });
    }
    let vectors = spaces.iter().flat_map(|s| s.basis().iter().cloned()).collect();
    Ok(Subspace::span_unchecked(n, vectors))
}
