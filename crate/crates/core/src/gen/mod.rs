//! Example modules: trivial modules, diameter-`d` modules of dimension `d+1`
//! solved from a banded ansatz, basis changes and single-entry corruption.

use rand::Rng;
use thiserror::Error;

use crate::exactmath::{QParam, Scalar, Sign};
use crate::linalg::{row_reduce, Matrix};
use crate::modrep::{verify_module, ModuleRep};
use crate::report::Report;
use crate::tetra::{apply_rho, q_weyl_residual, GenAssignment, GenIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("diameter {0} is outside the supported range 1..=4")]
    DiameterOutOfRange(usize),
    #[error("ansatz stage {stage} is inconsistent at d={d}")]
    Inconsistent { d: usize, stage: &'static str },
    #[error("no candidate evaluation parameter certified at d={0}")]
    NoCandidate(usize),
    #[error("aligned generator {0} must be of the form x(r,r+1)")]
    BadAlignment(String),
    #[error("basis change is singular")]
    Singular,
    #[error("basis change has size {found}, module has dimension {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("entry ({row},{col}) is outside a {dim}x{dim} matrix")]
    OutOfRange { row: usize, col: usize, dim: usize },
    #[error("result failed certification: {0}")]
    Certification(Report),
}

/// The dimension-1 module on which every generator acts as `ε`.
pub fn trivial_module<S: Scalar>(sign: Sign, q: &QParam<S>) -> ModuleRep<S> {
    verify_module(GenAssignment::scalar(1, sign.to_scalar()), q).expect("scalar module certifies")
}

/// Parameters of the banded ansatz.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ansatz<S> {
    pub d: usize,
    /// Generator `x(r,r+1)` whose eigenspaces are the coordinate lines.
    pub aligned: GenIndex,
    /// Values tried in turn for the one-parameter freedom of `x23`; the first
    /// that yields a certified module is used.
    pub candidates: Vec<S>,
    /// Value given to any other free entry.
    pub gauge: S,
}

impl<S: Scalar> Ansatz<S> {
    pub fn new(d: usize) -> Self {
        Ansatz {
            d,
            aligned: GenIndex::ALL[1],
            candidates: (1..=8).map(S::from_i64).collect(),
            gauge: S::one(),
        }
    }
}

/// Solutions of an affine system `residual(x) = 0`, where `residual` is known
/// to be affine in `x`: a particular solution with every free coordinate set
/// to `free_value`. `None` when inconsistent.
fn solve_affine<S: Scalar>(unknowns: usize, free_value: &S, residual: impl Fn(&[S]) -> Vec<S>) -> Option<Vec<S>> {
    let zero = vec![S::zero(); unknowns];
    let r0 = residual(&zero);
    let columns: Vec<Vec<S>> = (0..unknowns)
        .map(|k| {
            let mut e = zero.clone();
            e[k] = S::one();
            residual(&e).into_iter().zip(&r0).map(|(a, b)| a - b.clone()).collect()
        })
        .collect();
    // augmented system [M | -r0]
    let rows: Vec<Vec<S>> = (0..r0.len())
        .map(|i| {
            let mut row: Vec<S> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(-r0[i].clone());
            row
        })
        .collect();
    let e = row_reduce(rows, unknowns + 1);
    if e.pivots.last() == Some(&unknowns) {
        return None;
    }
    let mut x = vec![free_value.clone(); unknowns];
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        let mut value = row[unknowns].clone();
        for (c, coeff) in row.iter().enumerate().take(unknowns) {
            if c != p && !e.pivots.contains(&c) {
                value = value - coeff.clone() * free_value.clone();
            }
        }
        x[p] = value;
    }
    residual(&x).iter().all(S::is_zero).then_some(x)
}

fn flatten<S: Scalar>(ms: &[Matrix<S>]) -> Vec<S> {
    ms.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

/// `diag(q^{2i-d})` plus unknowns on the sub- (`lower`) or superdiagonal.
fn banded<S: Scalar>(q: &QParam<S>, d: usize, lower: bool, xs: &[S]) -> Matrix<S> {
    let n = d + 1;
    Matrix::from_fn(n, n, |r, c| {
        if r == c {
            q.power(2 * r as i64 - d as i64)
        } else if lower && r == c + 1 {
            xs[c].clone()
        } else if !lower && c == r + 1 {
            xs[r].clone()
        } else {
            S::zero()
        }
    })
}

fn tridiagonal<S: Scalar>(n: usize, xs: &[S]) -> Matrix<S> {
    let mut k = 0;
    let mut m = Matrix::zeros(n, n);
    for r in 0..n {
        for c in r.saturating_sub(1)..(r + 2).min(n) {
            m[(r, c)] = xs[k].clone();
            k += 1;
        }
    }
    m
}

/// Solves the relations for all generators with `x12` diagonal, given the
/// value of the free parameter of `x23`.
fn solve_with_x12_aligned<S: Scalar>(
    q: &QParam<S>,
    d: usize,
    parameter: &S,
    gauge: &S,
) -> Result<GenAssignment<S>, GenError> {
    let n = d + 1;
    let inconsistent = |stage| GenError::Inconsistent { d, stage };
    let x12 = Matrix::diagonal(&(0..n).map(|i| q.power(d as i64 - 2 * i as i64)).collect::<Vec<_>>());
    let ones = vec![S::one(); d];
    let x20 = banded(q, d, true, &ones);
    let x02 = x20.inverse().expect("triangular with nonzero diagonal");

    let b = solve_affine(d, parameter, |xs| {
        flatten(&[q_weyl_residual(&x02, &banded(q, d, true, xs), q)])
    })
    .ok_or_else(|| inconsistent("x23"))?;
    let x23 = banded(q, d, true, &b);

    let c = solve_affine(d, gauge, |xs| flatten(&[q_weyl_residual(&x20, &banded(q, d, false, xs), q)]))
        .ok_or_else(|| inconsistent("x01"))?;
    let x01 = banded(q, d, false, &c);

    let e = solve_affine(d, gauge, |xs| flatten(&[q_weyl_residual(&x23, &banded(q, d, false, xs), q)]))
        .ok_or_else(|| inconsistent("x31"))?;
    let x31 = banded(q, d, false, &e);
    let x13 = x31.inverse().expect("triangular with nonzero diagonal");

    let unknowns = 3 * n - 2;
    let t = solve_affine(unknowns, gauge, |xs| {
        let x30 = tridiagonal(n, xs);
        flatten(&[
            q_weyl_residual(&x23, &x30, q),
            q_weyl_residual(&x30, &x01, q),
            q_weyl_residual(&x30, &x02, q),
            q_weyl_residual(&x13, &x30, q),
        ])
    })
    .ok_or_else(|| inconsistent("x30"))?;
    let x30 = tridiagonal(n, &t);

    Ok(GenAssignment::from_vec(vec![x01, x12, x23, x30, x02, x13, x20, x31]).expect("square of one size"))
}

/// Solves the banded ansatz described by `ansatz` and certifies the result.
pub fn solve_ansatz<S: Scalar>(ansatz: &Ansatz<S>, q: &QParam<S>) -> Result<ModuleRep<S>, GenError> {
    let d = ansatz.d;
    if !(1..=4).contains(&d) {
        return Err(GenError::DiameterOutOfRange(d));
    }
    if ansatz.aligned.step() != 1 {
        return Err(GenError::BadAlignment(ansatz.aligned.name()));
    }
    // each application of ρ moves the matrix of x(r,r+1) to x(r+1,r+2)
    let turns = (i64::from(ansatz.aligned.r().value()) - 1).rem_euclid(4);
    for parameter in &ansatz.candidates {
        let Ok(mut gens) = solve_with_x12_aligned(q, d, parameter, &ansatz.gauge) else {
            continue;
        };
        for _ in 0..turns {
            gens = apply_rho(&gens);
        }
        if let Ok(m) = verify_module(gens, q) {
            if m.diameter() == d && m.sign() == Sign::Plus {
                return Ok(m);
            }
        }
    }
    Err(GenError::NoCandidate(d))
}

/// The canonical diameter-`d` example (`1 <= d <= 4`), with `x12` diagonal.
pub fn evaluation_module<S: Scalar>(d: usize, q: &QParam<S>) -> Result<ModuleRep<S>, GenError> {
    solve_ansatz(&Ansatz::new(d), q)
}

/// Every generator replaced by `T X T^{-1}`, re-certified.
pub fn conjugate<S: Scalar>(m: &ModuleRep<S>, t: &Matrix<S>) -> Result<ModuleRep<S>, GenError> {
    if t.rows() != m.dim() || t.cols() != m.dim() {
        return Err(GenError::SizeMismatch {
            expected: m.dim(),
            found: t.rows(),
        });
    }
    let tinv = t.inverse().ok_or(GenError::Singular)?;
    let gens = m.generators().map(|_, x| &(t * x) * &tinv);
    verify_module(gens, m.q()).map_err(GenError::Certification)
}

/// Adds `delta` to entry `(row, col)` of generator `g`.
pub fn corrupt<S: Scalar>(
    m: &ModuleRep<S>,
    g: GenIndex,
    (row, col): (usize, usize),
    delta: &S,
) -> Result<GenAssignment<S>, GenError> {
    let dim = m.dim();
    if row >= dim || col >= dim {
        return Err(GenError::OutOfRange { row, col, dim });
    }
    let mut gens = m.generators().clone();
    let mut x = gens.get(g).clone();
    x[(row, col)] = x[(row, col)].clone() + delta.clone();
    gens.set(g, x).expect("same size");
    Ok(gens)
}

/// A random integer matrix of determinant `±1`: a product of unit lower and
/// upper triangular matrices with entries in `-2..=2`, rows permuted.
pub fn random_unimodular<S: Scalar, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix<S> {
    let lower = Matrix::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => S::one(),
        std::cmp::Ordering::Greater => S::from_i64(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Less => S::zero(),
    });
    let upper = Matrix::from_fn(n, n, |r, c| match r.cmp(&c) {
        std::cmp::Ordering::Equal => S::one(),
        std::cmp::Ordering::Less => S::from_i64(rng.gen_range(-2..=2)),
        std::cmp::Ordering::Greater => S::zero(),
    });
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let p = Matrix::from_fn(n, n, |r, c| if perm[r] == c { S::one() } else { S::zero() });
    &(&p * &lower) * &upper
}

/// Fixture file name encoding the diameter and `q`, e.g. `module_d2_q2.json`
/// or `module_d1_qm3_2.json` for `q = -3/2`.
pub fn fixture_file_name(d: usize, q: &str) -> String {
    let q = q.replace('-', "m").replace('/', "_");
    format!("module_d{d}_q{q}.json")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{RatFunc, Rational};
    use crate::modrep::{fixtures::d1_module, normalize_type, shape};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q() -> QParam<Rational> {
        QParam::default()
    }

    #[test]
    fn trivial_modules() {
        let plus = trivial_module(Sign::Plus, &q());
        assert_eq!(plus.x(GenIndex::ALL[0]), &Matrix::identity(1));
        let minus = trivial_module(Sign::Minus, &q());
        assert_eq!(minus.sign(), Sign::Minus);
        assert_eq!(normalize_type(&minus), plus);
    }

    #[test]
    fn affine_solver() {
        // x0 + x1 = 3, x1 free
        let x = solve_affine(2, &Rational::from_i64(5), |x| vec![x[0].clone() + x[1].clone() - Rational::from_i64(3)]).unwrap();
        assert_eq!(x, vec![Rational::from_i64(-2), Rational::from_i64(5)]);
        assert!(solve_affine(1, &Rational::one(), |_| vec![Rational::one()]).is_none());
    }

    #[test]
    fn d1_matches_hand_solution() {
        let m = evaluation_module(1, &q()).unwrap();
        assert_eq!(m.generators(), &d1_module());
        assert_eq!(m.x(GenIndex::ALL[1]), &Matrix::diagonal(&[q().power(1), q().power(-1)]));
    }

    #[test]
    fn small_diameters_certify() {
        for d in 1..=3 {
            let m = evaluation_module(d, &q()).unwrap();
            assert_eq!((m.diameter(), m.dim()), (d, d + 1));
            assert_eq!(shape(&m).unwrap(), vec![1; d + 1]);
            assert_eq!(evaluation_module(d, &q()).unwrap(), m);
        }
        assert_eq!(evaluation_module::<Rational>(0, &q()), Err(GenError::DiameterOutOfRange(0)));
        assert_eq!(evaluation_module::<Rational>(5, &q()), Err(GenError::DiameterOutOfRange(5)));
    }

    #[test]
    fn other_alignments() {
        for r in 0..4 {
            let mut ansatz = Ansatz::new(2);
            ansatz.aligned = GenIndex::new(r, r + 1).unwrap();
            let m = solve_ansatz(&ansatz, &q()).unwrap();
            assert!(m.x(ansatz.aligned).entries().iter().enumerate().all(|(k, x)| k % 4 == 0 || x.is_zero()));
        }
        let mut ansatz = Ansatz::new(2);
        ansatz.aligned = GenIndex::ALL[4];
        assert!(solve_ansatz(&ansatz, &q()).is_err());
    }

    #[test]
    fn other_rational_q() {
        let q = QParam::parse("-3/2").unwrap();
        let m = evaluation_module(2, &q).unwrap();
        assert_eq!(m.diameter(), 2);
    }

    #[test]
    fn symbolic_mode() {
        let q = QParam::<RatFunc>::indeterminate();
        for d in 1..=2 {
            let m = evaluation_module(d, &q).unwrap();
            assert_eq!(m.diameter(), d);
        }
    }

    #[test]
    fn conjugation_and_corruption() {
        let m = evaluation_module(2, &q()).unwrap();
        assert_eq!(conjugate(&m, &Matrix::identity(3)).unwrap(), m);
        assert_eq!(conjugate(&m, &Matrix::scalar(3, Rational::from_i64(2))).unwrap(), m);
        assert_eq!(conjugate(&m, &Matrix::zeros(3, 3)), Err(GenError::Singular));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let t: Matrix<Rational> = random_unimodular(3, &mut rng);
        let c = conjugate(&m, &t).unwrap();
        assert_eq!((c.diameter(), c.sign()), (2, Sign::Plus));
        assert_eq!(shape(&c).unwrap(), shape(&m).unwrap());

        let same = corrupt(&m, GenIndex::ALL[0], (0, 0), &Rational::zero()).unwrap();
        assert!(verify_module(same, &q()).is_ok());
        let bad = corrupt(&m, GenIndex::ALL[0], (0, 1), &Rational::one()).unwrap();
        assert!(verify_module(bad, &q()).is_err());
        assert!(corrupt(&m, GenIndex::ALL[0], (3, 0), &Rational::one()).is_err());
    }

    #[test]
    fn unimodular_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let t: Matrix<Rational> = random_unimodular(4, &mut rng);
            let inv = t.inverse().unwrap();
            assert!(inv.entries().iter().all(|x| x.is_integer()));
        }
    }

    #[test]
    fn fixture_names() {
        assert_eq!(fixture_file_name(2, "2"), "module_d2_q2.json");
        assert_eq!(fixture_file_name(1, "-3/2"), "module_d1_qm3_2.json");
    }
}
