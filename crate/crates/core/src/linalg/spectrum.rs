use thiserror::Error;

use crate::exactmath::{QParam, Scalar, Sign};

use super::{eigenspace, Decomposition, LinalgError, Matrix, Subspace};

/// A nonzero eigenspace for the eigenvalue `sign * q^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QEigenspace<S> {
    pub sign: Sign,
    pub exponent: i64,
    pub space: Subspace<S>,
}

/// All nonzero eigenspaces of `m` for eigenvalues `±q^k`, `|k| <= n - 1`.
///
/// Ordered by sign (`+` first), then by decreasing exponent. Eigenvalues
/// outside this alphabet are not detected.
pub fn q_eigenspaces<S: Scalar>(
    m: &Matrix<S>,
    q: &QParam<S>,
) -> Result<Vec<QEigenspace<S>>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare(m.rows(), m.cols()));
    }
    let bound = m.rows().saturating_sub(1) as i64;
    let mut found = Vec::new();
    let mut total = 0;
    for sign in [Sign::Plus, Sign::Minus] {
        for exponent in (-bound..=bound).rev() {
            if total == m.rows() {
                return Ok(found);
            }
            let lambda = sign.to_scalar::<S>() * q.power(exponent);
            let space = eigenspace(m, &lambda)?;
            if !space.is_zero() {
                total += space.dim();
                found.push(QEigenspace {
                    sign,
                    exponent,
                    space,
                });
            }
        }
    }
    Ok(found)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("eigenspaces for ±q^k span only {found} of {dim} dimensions (not semisimple, or eigenvalues outside the alphabet)")]
    NotSemisimple { found: usize, dim: usize },
    #[error("eigenvalues of both signs occur")]
    MixedSigns,
    #[error("exponents {0:?} are not of the form d, d-2, ..., -d")]
    BadExponents(Vec<i64>),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Spectrum `{ε q^{d-2i} | 0 <= i <= d}` with its eigenspace decomposition,
/// ordered from `ε q^d` down to `ε q^{-d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardSpectrum<S> {
    pub sign: Sign,
    pub diameter: usize,
    pub decomposition: Decomposition<S>,
}

/// Checks that `m` is semisimple with spectrum `{ε q^{d-2i}}` for some sign
/// and diameter and returns them with the ordered eigenspaces.
pub fn standard_spectrum<S: Scalar>(
    m: &Matrix<S>,
    q: &QParam<S>,
) -> Result<StandardSpectrum<S>, SpectrumError> {
    let spaces = q_eigenspaces(m, q)?;
    let found: usize = spaces.iter().map(|e| e.space.dim()).sum();
    if found != m.rows() || spaces.is_empty() {
        return Err(SpectrumError::NotSemisimple {
            found,
            dim: m.rows(),
        });
    }
    let sign = spaces[0].sign;
    if spaces.iter().any(|e| e.sign != sign) {
        return Err(SpectrumError::MixedSigns);
    }
    let exponents: Vec<i64> = spaces.iter().map(|e| e.exponent).collect();
    let d = exponents.len() as i64 - 1;
    if exponents.iter().enumerate().any(|(i, &k)| k != d - 2 * i as i64) {
        return Err(SpectrumError::BadExponents(exponents));
    }
    let decomposition = Decomposition::new(spaces.into_iter().map(|e| e.space).collect())?;
    Ok(StandardSpectrum {
        sign,
        diameter: d as usize,
        decomposition,
    })
}
