use std::collections::VecDeque;

use crate::exactmath::Scalar;

use super::{EchelonBasis, LinalgError, Matrix};

/// Dimension of the unital algebra generated by `gens`.
///
/// Starts from the span of `I` and the generators and keeps multiplying new
/// elements on the right by each generator until nothing new appears. The
/// family acts absolutely irreducibly on `S^n` iff the result is `n^2`.
pub fn algebra_closure_dim<S: Scalar>(gens: &[Matrix<S>]) -> Result<usize, LinalgError> {
    let first = gens.first().ok_or(LinalgError::Empty)?;
    let n = first.rows();
    for g in gens {
        if !g.is_square() {
            return Err(LinalgError::NotSquare(g.rows(), g.cols()));
        }
        if g.rows() != n {
            return Err(LinalgError::ShapeMismatch {
                left: (n, n),
                right: (g.rows(), g.cols()),
            });
        }
    }
    let full = n * n;
    let mut span = EchelonBasis::new(full);
    let mut queue = VecDeque::new();
    for m in std::iter::once(Matrix::identity(n)).chain(gens.iter().cloned()) {
        if span.insert(m.entries()) {
            queue.push_back(m);
        }
    }
    while let Some(m) = queue.pop_front() {
        if span.dim() == full {
            break;
        }
        for g in gens {
            let p = &m * g;
            if span.insert(p.entries()) {
                queue.push_back(p);
            }
        }
    }
    Ok(span.dim())
}
