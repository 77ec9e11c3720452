#![allow(dead_code)]

use qtet::exactmath::{QParam, Rational, Scalar, Sign};
use qtet::gen::{evaluation_module, trivial_module};
use qtet::io::{emit_module, parse_module};
use qtet::linalg::{eigenspace, Matrix, Subspace};
use qtet::modrep::{verify_module, ModuleRep};
use qtet::pairs::{extract_qinverting, QInvertingPair};

pub fn q() -> QParam<Rational> {
    QParam::default()
}

pub fn r(n: i64) -> Rational {
    Rational::from_i64(n)
}

/// Fixture modules for d = 0..=3 at q = 2, passed through the JSON format.
pub fn fixtures() -> Vec<ModuleRep<Rational>> {
    (0..=3)
        .map(|d| {
            let m = if d == 0 {
                trivial_module(Sign::Plus, &q())
            } else {
                evaluation_module(d, &q()).expect("example module")
            };
            let (q2, gens) = parse_module(&emit_module(m.generators(), m.q())).expect("fixture parses");
            verify_module(gens, &q2).expect("fixture certifies")
        })
        .collect()
}

pub fn extracted(m: &ModuleRep<Rational>) -> QInvertingPair<Rational> {
    extract_qinverting(m).expect("type-one fixture")
}

/// Eigenspace of `m` for `q^e`, computed directly as a kernel.
pub fn q_eigenspace(m: &Matrix<Rational>, e: i64) -> Subspace<Rational> {
    eigenspace(m, &q().power(e)).expect("square")
}

/// Block-diagonal sum of two copies of the d = 1 inverting pair.
pub fn reducible_pair() -> (Matrix<Rational>, Matrix<Rational>) {
    let p = extracted(&fixtures()[1]);
    (block_diag(p.k(), p.k()), block_diag(p.kstar(), p.kstar()))
}

pub fn block_diag(a: &Matrix<Rational>, b: &Matrix<Rational>) -> Matrix<Rational> {
    let (n, m) = (a.rows(), b.rows());
    Matrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
        (true, true) => a[(i, j)].clone(),
        (false, false) => b[(i - n, j - n)].clone(),
        _ => Rational::zero(),
    })
}
